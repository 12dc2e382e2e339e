#include "minmod/modulus_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "minmod/search.hpp"

namespace minmod {

namespace {

// enumerable zero positions at or below lr, for gap-wise refinement; empty
// when the set is too large or not enumerable
std::vector<double> zeros_below(const EntireProductFunction& f, double lr,
                                std::int64_t cap) {
  std::vector<double> out;
  std::visit(
      [&](const auto& z) {
        using T = std::decay_t<decltype(z)>;
        if constexpr (std::is_same_v<T, ExplicitZeros>) {
          for (double lt : z.log_t) {
            if (lt > lr) break;
            out.push_back(lt);
            if (static_cast<std::int64_t>(out.size()) > cap) {
              out.clear();
              return;
            }
          }
        } else if constexpr (std::is_same_v<T, BandedZeros>) {
          const std::vector<double>& atoms = z.atoms();
          for (std::size_t i = static_cast<std::size_t>(z.drop_first);
               i < atoms.size(); ++i) {
            if (atoms[i] > lr) return;
            out.push_back(atoms[i]);
            if (static_cast<std::int64_t>(out.size()) > cap) {
              out.clear();
              return;
            }
          }
        } else {
          if (!z.atomic) return;
          const double n = z.n_of_lr(lr);
          if (!(n >= 1.0) || n > static_cast<double>(cap)) return;
          for (double nu = 1.0; nu <= n; nu += 1.0) {
            const double lt = z.lt_of_index(nu);
            if (lt > lr) break;
            out.push_back(lt);
          }
        }
      },
      f.zeros);
  return out;
}

}  // namespace

double log_max_modulus(const EntireProductFunction& f, double lr,
                       const EvalSettings& settings) {
  return log_abs_at_angle(f, lr, 0.0, settings);
}

double log_min_modulus(const EntireProductFunction& f, double lr,
                       const EvalSettings& settings) {
  return log_abs_at_angle(f, lr, std::numbers::pi, settings);
}

MtildeResult m_tilde(const EntireProductFunction& f, double lr,
                     const ScanSettings& scan, const EvalSettings& settings) {
  // s -> 0+ limit: every factor tends to 1, so m(s) -> c
  MtildeResult best{f.log_c, kNegInf};

  auto eval_min = [&](double s_lr) -> double {
    return log_min_modulus(f, s_lr, settings);
  };
  auto consider = [&](double s_lr, double value) {
    if (std::isfinite(value) && value > best.log_value) {
      best.log_value = value;
      best.argmax_lr = s_lr;
    }
  };

  const double lt0 = first_zero_log_radius(f);
  // below the first zero every factor has modulus < 1, so m(s) < c there; the
  // scan only needs (first zero - margin, r]
  const double lo = std::min(lr, lt0 - 2.0);

  if (lo < lr) {
    const double decades = (lr - lo) / std::numbers::ln10;
    std::int64_t n_points = static_cast<std::int64_t>(
        std::ceil(decades * scan.points_per_decade)) + 1;
    n_points = std::clamp<std::int64_t>(n_points, 9, scan.max_points);
    const double step = (lr - lo) / static_cast<double>(n_points - 1);

    std::vector<double> xs(n_points), vs(n_points);
    for (std::int64_t i = 0; i < n_points; ++i) {
      double x = lo + step * static_cast<double>(i);
      if (i == n_points - 1) x = lr;
      double v = eval_min(x);
      if (is_neg_inf(v) && x < lr) {
        // deterministic jitter off an exact zero
        const double xj = x + 3.1 * settings.singularity_exclusion;
        const double vj = eval_min(xj);
        if (vj > v) {
          x = xj;
          v = vj;
        }
      }
      xs[i] = x;
      vs[i] = v;
      consider(x, v);
    }

    // golden refinement around interior grid maxima; only the highest few can
    // move the running maximum, so refinement is capped there
    std::vector<std::int64_t> maxima;
    for (std::int64_t i = 1; i + 1 < n_points; ++i) {
      if (!std::isfinite(vs[i])) continue;
      if (vs[i] >= vs[i - 1] && vs[i] >= vs[i + 1]) maxima.push_back(i);
    }
    std::sort(maxima.begin(), maxima.end(),
              [&](std::int64_t a, std::int64_t b) { return vs[a] > vs[b]; });
    if (maxima.size() > 32) maxima.resize(32);
    for (std::int64_t i : maxima) {
      auto [x_ref, v_ref] =
          golden_max(eval_min, xs[i - 1], xs[i + 1], scan.refine_depth);
      consider(x_ref, v_ref);
    }
  }

  // gap-wise refinement for enumerable zero sets (concave per gap)
  const std::vector<double> atoms = zeros_below(f, lr, 4096);
  if (!atoms.empty()) {
    for (std::size_t i = 0; i + 1 < atoms.size(); ++i) {
      if (atoms[i + 1] - atoms[i] < 8.0 * settings.singularity_exclusion) continue;
      auto [x_ref, v_ref] =
          golden_max(eval_min, atoms[i], std::min(atoms[i + 1], lr),
                     scan.refine_depth);
      consider(x_ref, v_ref);
    }
    if (atoms.back() < lr) {
      auto [x_ref, v_ref] =
          golden_max(eval_min, atoms.back(), lr, scan.refine_depth);
      consider(x_ref, v_ref);
    }
  }

  // the endpoint itself
  const double v_end = eval_min(lr);
  consider(lr, v_end);
  return best;
}

MtildeProfile m_tilde_profile(const EntireProductFunction& f, double lr_min,
                              double lr_max, int n_checkpoints,
                              const ScanSettings& scan,
                              const EvalSettings& settings) {
  if (!(lr_min < lr_max) || n_checkpoints < 2)
    throw SpecParseError("m_tilde_profile: need lr_min < lr_max and >= 2 points");
  MtildeProfile profile;
  double running = kNegInf;
  double running_arg = kNegInf;
  for (int i = 0; i < n_checkpoints; ++i) {
    const double lr = lr_min + (lr_max - lr_min) * i / (n_checkpoints - 1);
    MtildeResult r = m_tilde(f, lr, scan, settings);
    if (r.log_value > running) {
      running = r.log_value;
      running_arg = r.argmax_lr;
    }
    profile.checkpoints.push_back({lr, running, running_arg});
  }
  return profile;
}

std::pair<double, double> brute_force_extrema(const EntireProductFunction& f,
                                              double lr, int grid_points,
                                              const EvalSettings& settings) {
  if (grid_points < 16)
    throw SpecParseError("brute_force_extrema: need at least 16 grid points");
  double lo = 1e308, hi = -1e308;
  for (int j = 0; j < grid_points; ++j) {
    const double theta =
        std::numbers::pi * static_cast<double>(j) / (grid_points - 1);
    const double v = log_abs_at_angle(f, lr, theta, settings);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

}  // namespace minmod
