#include "minmod/growth_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "minmod/search.hpp"

namespace minmod {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// deterministic nudge off an exact zero for scan-type evaluations
double min_modulus_jittered(const EntireProductFunction& f, double* lr,
                            const EvalSettings& settings) {
  double v = log_min_modulus(f, *lr, settings);
  if (is_neg_inf(v)) {
    const double lr2 = *lr + 3.1 * settings.singularity_exclusion;
    const double v2 = log_min_modulus(f, lr2, settings);
    if (!is_neg_inf(v2)) {
      *lr = lr2;
      return v2;
    }
  }
  return v;
}

}  // namespace

std::pair<double, double> eps_k_from(double log_M, double lr) {
  if (!(log_M > 1.0))
    throw DomainTooSmall("eps/k transform needs log M(r) > 1");
  if (!(lr > 0.0))
    throw DomainTooSmall("eps/k transform needs r > 1");
  const double eps = 0.5 - std::log(log_M) / lr;
  return {eps, eps * lr};
}

std::pair<double, double> eps_k_at(const EntireProductFunction& f, double lr,
                                   const EvalSettings& settings) {
  return eps_k_from(log_max_modulus(f, lr, settings), lr);
}

GrowthProfile build_profile(const EntireProductFunction& f, double lr_min,
                            double lr_max, int points_per_decade,
                            const EvalSettings& settings) {
  if (!(lr_min < lr_max))
    throw SpecParseError("build_profile: lr_min must be below lr_max");
  if (points_per_decade < 1)
    throw SpecParseError("build_profile: points_per_decade must be positive");

  const double decades = (lr_max - lr_min) / std::numbers::ln10;
  int n = static_cast<int>(std::llround(decades * points_per_decade));
  n = std::clamp(n, 2, 2'000'000);

  GrowthProfile profile;
  profile.samples.reserve(n);
  for (int i = 0; i < n; ++i) {
    GrowthSample s;
    s.lr = lr_min + (lr_max - lr_min) * i / (n - 1);
    s.log_m = min_modulus_jittered(f, &s.lr, settings);
    s.log_M = log_max_modulus(f, s.lr, settings);
    if (s.log_M > 1.0 && s.lr > 0.0) {
      auto [eps, k] = eps_k_from(s.log_M, s.lr);
      s.eps = eps;
      s.k = k;
    } else {
      s.eps = kNaN;
      s.k = kNaN;
    }
    s.trend = s.log_M > 0.0 ? std::log(s.log_M) - 0.5 * s.lr : kNaN;
    profile.samples.push_back(s);
  }

  const double window_lo = lr_max - 0.30 * (lr_max - lr_min);
  double hi = -1e308, lo = 1e308;
  for (const GrowthSample& s : profile.samples) {
    if (s.lr < window_lo || !(s.log_M > 1.0) || !(s.lr > 0.0)) continue;
    const double ratio = std::log(s.log_M) / s.lr;
    hi = std::max(hi, ratio);
    lo = std::min(lo, ratio);
  }
  profile.rho_hat = hi > -1e308 ? hi : kNaN;
  profile.lambda_hat = lo < 1e308 ? lo : kNaN;
  return profile;
}

CountingData counting_data(const EntireProductFunction& f, double lr,
                           const EvalSettings& settings) {
  CountingData d;
  d.lr = lr;
  d.n_r = count_zeros_up_to(f, lr);
  d.N_r = counting_N(f, lr, settings);
  d.Q_r = counting_Q(f, lr, settings);
  return d;
}

SandwichReport sandwich_check(const EntireProductFunction& f, double lr,
                              const EvalSettings& settings) {
  SandwichReport rep;
  rep.lr = lr;
  rep.N_r = counting_N(f, lr, settings);
  rep.Q_r = counting_Q(f, lr, settings);
  rep.log_M_shifted = log_max_modulus(f, lr, settings) - f.log_c;
  rep.tolerance = 1e-9 * (1.0 + std::abs(rep.log_M_shifted));
  rep.ok = rep.N_r - rep.tolerance <= rep.log_M_shifted &&
           rep.log_M_shifted <= rep.N_r + rep.Q_r + rep.tolerance;
  return rep;
}

CriterionReport criterion_witness(const EntireProductFunction& f, double lr,
                                  const SearchSettings& search,
                                  const EvalSettings& settings) {
  CriterionReport rep;
  rep.lr = lr;

  const double log_M_r = log_max_modulus(f, lr, settings);
  const double target = 2.0 * lr;  // log M(s) >= 2 log r

  // smallest admissible s by monotonicity of log M
  const double scan_lo = std::min(first_zero_log_radius(f), lr) - 30.0;
  const double s_hi = lr - 1e-9 * std::max(1.0, std::abs(lr));
  if (!(s_hi > scan_lo) ||
      log_max_modulus(f, s_hi, settings) < target) {
    rep.side_condition_ok = false;
    rep.margin = 0.0;
    return rep;
  }
  double s_lo = scan_lo;
  if (log_max_modulus(f, scan_lo, settings) < target) {
    s_lo = bisect_rising(
        [&](double ls) { return log_max_modulus(f, ls, settings); }, scan_lo,
        s_hi, target, 120);
  }
  rep.side_condition_ok = true;

  // maximize the log-margin over the admissible grid
  const double phi_r = std::log(std::max(log_M_r, 1e-300)) - 0.5 * lr;
  auto log_margin_at = [&](double ls) {
    const double lm = log_max_modulus(f, ls, settings);
    if (!(lm >= target) || !(lm > 0.0)) return -1e308;
    return -std::log(4.0) + std::log(lm) - 0.5 * ls - phi_r;
  };

  const double span_decades = (s_hi - s_lo) / std::numbers::ln10;
  int n = static_cast<int>(std::ceil(span_decades * search.candidates_per_decade)) + 2;
  n = std::clamp(n, 4, 1'000'000);

  double best = -1e308, best_ls = s_lo;
  for (int i = 0; i < n; ++i) {
    const double ls = s_lo + (s_hi - s_lo) * i / (n - 1);
    const double m = log_margin_at(ls);
    if (m > best) {
      best = m;
      best_ls = ls;
    }
  }
  // local refinement around the best grid point
  {
    const double step = (s_hi - s_lo) / (n - 1);
    auto [ls_ref, m_ref] =
        golden_max(log_margin_at, std::max(s_lo, best_ls - step),
                   std::min(s_hi, best_ls + step), 60);
    if (m_ref > best) {
      best = m_ref;
      best_ls = ls_ref;
    }
  }

  rep.margin = best > -1e307 ? std::exp(std::min(best, 700.0)) : 0.0;
  if (rep.margin >= 1.0) rep.witness_lr_s = best_ls;
  return rep;
}

std::vector<std::pair<double, bool>> check_condition_A(
    const GrowthProfile& profile, double delta, double C) {
  if (!(delta > 0.0 && delta < 0.5))
    throw SpecParseError("check_condition_A: delta must lie in (0, 1/2)");
  if (!(C > 1.0)) throw SpecParseError("check_condition_A: C must exceed 1");
  std::vector<std::pair<double, bool>> out;
  for (const GrowthSample& s : profile.samples) {
    if (!(s.lr > 1.0) || std::isnan(s.k)) continue;
    const bool ok = delta * s.lr >= s.k &&
                    s.k >= C * delta / (0.5 - delta) * std::log(s.lr);
    out.emplace_back(s.lr, ok);
  }
  return out;
}

bool check_condition_B(const std::function<double(double)>& k_fn, double lr,
                       double C, double d) {
  if (!(C > 1.0) || !(d > 1.0))
    throw SpecParseError("check_condition_B: need C > 1 and d > 1");
  if (!(lr > 1.0))
    throw DomainTooSmall("check_condition_B: need log r > 1");
  const double lr_inner = 2.0 * d * std::log(lr);  // log of (log r)^{2d}
  return k_fn(lr) >= C * k_fn(lr_inner);
}

bool check_condition_B(const EntireProductFunction& f, double lr, double C,
                       double d, const EvalSettings& settings) {
  return check_condition_B(
      [&](double x) { return eps_k_at(f, x, settings).second; }, lr, C, d);
}

BeurlingReport beurling_verify(const EntireProductFunction& f, double lr1,
                               double lr2, double threshold_log_c,
                               const ScanSettings& scan,
                               const EvalSettings& settings) {
  if (!(lr1 < lr2))
    throw SpecParseError("beurling_verify: need lr1 < lr2");
  BeurlingReport rep;
  rep.lr1 = lr1;
  rep.lr2 = lr2;
  rep.threshold_log_c = threshold_log_c;

  const double b1 = log_max_modulus(f, lr1, settings) - threshold_log_c;
  if (!(b1 > 0.0))
    throw ThresholdTooHigh("beurling_verify: B(r1, u) <= 0 at the threshold");
  const double b2 = log_max_modulus(f, lr2, settings) - threshold_log_c;

  // membership in E = {t : m(t) <= c~}; -inf values (zeros of f) belong
  auto in_set = [&](double lt) {
    const double v = log_min_modulus(f, lt, settings);
    return !(v > threshold_log_c);
  };

  const double decades = (lr2 - lr1) / std::numbers::ln10;
  int n = static_cast<int>(std::ceil(decades * scan.points_per_decade)) + 1;
  n = std::clamp<int>(n, 17, static_cast<int>(scan.max_points));
  std::vector<double> xs(n);
  std::vector<char> member(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = lr1 + (lr2 - lr1) * i / (n - 1);
    member[i] = in_set(xs[i]) ? 1 : 0;
  }

  auto refine_boundary = [&](double inside, double outside) {
    for (int it = 0; it < 46; ++it) {
      const double mid = 0.5 * (inside + outside);
      if (mid == inside || mid == outside) break;
      if (in_set(mid))
        inside = mid;
      else
        outside = mid;
    }
    return 0.5 * (inside + outside);
  };

  double measure = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    if (member[i] && member[i + 1]) {
      measure += xs[i + 1] - xs[i];
    } else if (member[i] && !member[i + 1]) {
      measure += refine_boundary(xs[i], xs[i + 1]) - xs[i];
    } else if (!member[i] && member[i + 1]) {
      measure += xs[i + 1] - refine_boundary(xs[i + 1], xs[i]);
    }
  }
  rep.e_log_measure = std::min(measure, lr2 - lr1);

  rep.lhs = b2 > 0.0 ? std::log(b2) : kNegInf;
  rep.rhs = std::log(0.5) + 0.5 * rep.e_log_measure + std::log(b1);
  rep.holds = rep.lhs > rep.rhs;
  return rep;
}

}  // namespace minmod
