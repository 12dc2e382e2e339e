#include "minmod/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "minmod/search.hpp"

namespace minmod {

bool trap_check(const EntireProductFunction& f, double lr,
                const ScanSettings& scan, const EvalSettings& settings) {
  return m_tilde(f, lr, scan, settings).log_value <= lr;
}

OrbitRecord iterate_modulus(const EntireProductFunction& f, double start_lr,
                            MapKind map_kind, int max_iter,
                            double escape_log_threshold,
                            const EvalSettings& settings,
                            const ScanSettings& scan, bool trap_detection) {
  if (max_iter < 1)
    throw SpecParseError("iterate_modulus: max_iter must be positive");
  OrbitRecord rec;
  rec.start_lr = start_lr;
  rec.map_kind = map_kind;

  // orbits that fall below every zero can only contract toward c; that is
  // the cheap moment to ask for a trap certificate
  const double floor_lr = first_zero_log_radius(f);

  double lr = start_lr;
  int stagnant_steps = 0;
  for (int it = 0; it < max_iter; ++it) {
    const double v = map_kind == MapKind::Min
                         ? log_min_modulus(f, lr, settings)
                         : log_max_modulus(f, lr, settings);
    rec.steps.push_back(v);
    if (is_neg_inf(v)) {
      rec.verdict = OrbitVerdict::HitZero;
      return rec;
    }
    if (v >= escape_log_threshold) {
      rec.verdict = OrbitVerdict::Escaped;
      return rec;
    }
    if (trap_detection && v <= lr) {
      if (map_kind == MapKind::Max) {
        // M is strictly increasing: M(r) <= r pins the orbit below r forever
        rec.verdict = OrbitVerdict::Trapped;
        rec.trap_radius_lr = lr;
        return rec;
      }
      ++stagnant_steps;
      if (v < floor_lr || stagnant_steps >= 20) {
        stagnant_steps = 0;
        if (trap_check(f, lr, scan, settings)) {
          rec.verdict = OrbitVerdict::Trapped;
          rec.trap_radius_lr = lr;
          return rec;
        }
      }
    } else {
      stagnant_steps = 0;
    }
    lr = v;
  }
  rec.verdict = OrbitVerdict::Undecided;
  return rec;
}

std::vector<std::pair<double, OrbitRecord>> scan_escape_candidates(
    const EntireProductFunction& f, double lr_min, double lr_max,
    const ScanSettings& scan, const EvalSettings& settings, int max_iter,
    double escape_log_threshold, int max_candidates) {
  if (!(lr_min < lr_max))
    throw SpecParseError("scan_escape_candidates: need lr_min < lr_max");

  auto eval_min = [&](double s) { return log_min_modulus(f, s, settings); };

  const double decades = (lr_max - lr_min) / std::numbers::ln10;
  std::int64_t n = static_cast<std::int64_t>(
      std::ceil(decades * scan.points_per_decade)) + 1;
  n = std::clamp<std::int64_t>(n, 17, scan.max_points);

  std::vector<double> xs(n), vs(n);
  for (std::int64_t i = 0; i < n; ++i) {
    double x = lr_min + (lr_max - lr_min) * i / (n - 1);
    double v = eval_min(x);
    if (is_neg_inf(v)) {
      const double xj = x + 3.1 * settings.singularity_exclusion;
      const double vj = eval_min(xj);
      if (vj > v) {
        x = xj;
        v = vj;
      }
    }
    xs[i] = x;
    vs[i] = v;
  }

  // refined local maxima of log m, ranked by the map gain log m(s) - s;
  // refinement is limited to the most promising grid maxima
  std::vector<std::int64_t> maxima;
  for (std::int64_t i = 1; i + 1 < n; ++i) {
    if (!std::isfinite(vs[i])) continue;
    if (vs[i] >= vs[i - 1] && vs[i] >= vs[i + 1]) maxima.push_back(i);
  }
  std::sort(maxima.begin(), maxima.end(), [&](std::int64_t a, std::int64_t b) {
    if (vs[a] - xs[a] != vs[b] - xs[b]) return vs[a] - xs[a] > vs[b] - xs[b];
    return a < b;
  });
  if (static_cast<int>(maxima.size()) > 2 * max_candidates)
    maxima.resize(2 * max_candidates);
  struct Candidate {
    double x, gain;
  };
  std::vector<Candidate> cands;
  for (std::int64_t i : maxima) {
    auto [x_ref, v_ref] =
        golden_max(eval_min, xs[i - 1], xs[i + 1], scan.refine_depth);
    if (std::isfinite(v_ref)) cands.push_back({x_ref, v_ref - x_ref});
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.gain != b.gain) return a.gain > b.gain;
    return a.x < b.x;
  });
  if (static_cast<int>(cands.size()) > max_candidates)
    cands.resize(max_candidates);
  std::sort(cands.begin(), cands.end(),
            [](const Candidate& a, const Candidate& b) { return a.x < b.x; });

  std::vector<std::pair<double, OrbitRecord>> out;
  for (const Candidate& c : cands) {
    out.emplace_back(c.x, iterate_modulus(f, c.x, MapKind::Min, max_iter,
                                          escape_log_threshold, settings, scan,
                                          true));
  }
  return out;
}

}  // namespace minmod
