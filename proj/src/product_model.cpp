#include "minmod/product_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "minmod/quadrature.hpp"
#include "minmod/search.hpp"

namespace minmod {

// ---------------------------------------------------------------------------
// band quantiles
// ---------------------------------------------------------------------------

namespace {

// log(x (1-q) + y q) given log x <= log y, exact over extreme widths
double log_mix(double log_x, double log_y, double q) {
  const double lo = std::log1p(-q) + log_x;
  const double hi = std::log(q) + log_y;
  const double m = std::max(lo, hi);
  return m + std::log1p(std::exp(std::min(lo, hi) - m));
}

}  // namespace

double band_quantile(double log_a, double log_b, BandShape shape, double q) {
  q = std::clamp(q, 0.0, 1.0);
  if (shape == BandShape::UniformLog) return log_a + q * (log_b - log_a);
  if (q <= 0.0) return log_a;
  if (q >= 1.0) return log_b;
  if (shape == BandShape::SqrtRadius) {
    // cumulative mass ~ e^{lt/2}: e^{lt/2} = e^{la/2}(1-q) + e^{lb/2} q
    return 2.0 * log_mix(0.5 * log_a, 0.5 * log_b, q);
  }
  // Arcsine: t(q) = a + (b-a) sin^2(pi q / 2), i.e.
  //   t = a (1 - s^2) + b s^2 with s = sin(pi q / 2)
  const double s = std::sin(0.5 * std::numbers::pi * q);
  const double s2 = s * s;
  if (s2 >= 1.0) return log_b;
  const double lo = std::log1p(-s2) + log_a;
  const double hi = 2.0 * std::log(s) + log_b;
  const double m = std::max(lo, hi);
  return m + std::log1p(std::exp(std::min(lo, hi) - m));
}

double band_mass_fraction(double log_a, double log_b, BandShape shape,
                          double lr) {
  if (lr <= log_a) return 0.0;
  if (lr >= log_b) return 1.0;
  if (shape == BandShape::UniformLog) return (lr - log_a) / (log_b - log_a);
  const double wr = lr - log_a;
  const double wb = log_b - log_a;
  // (e^{c wr} - 1)/(e^{c wb} - 1) with c = 1/2 (sqrt) or 1 (arcsine argument)
  auto expm1_ratio = [](double x, double y) {
    if (y > 700.0) return std::exp(x - y) * (-std::expm1(-x)) / (-std::expm1(-y));
    return std::expm1(x) / std::expm1(y);
  };
  if (shape == BandShape::SqrtRadius)
    return expm1_ratio(0.5 * wr, 0.5 * wb);
  // Arcsine: q = (2/pi) asin sqrt((r-a)/(b-a))
  const double ratio = expm1_ratio(wr, wb);  // (r-a)/(b-a)
  return (2.0 / std::numbers::pi) *
         std::asin(std::sqrt(std::clamp(ratio, 0.0, 1.0)));
}

const std::vector<double>& BandedZeros::atoms() const {
  std::call_once(cache_->once, [this] {
    std::size_t total = 0;
    for (const auto& band : bands) total += static_cast<std::size_t>(band.count);
    cache_->atoms.reserve(total);
    for (const auto& band : bands)
      for (std::int64_t i = 0; i < band.count; ++i) {
        const double q =
            (static_cast<double>(i) + 0.5) / static_cast<double>(band.count);
        cache_->atoms.push_back(band_quantile(band.log_a, band.log_b, shape, q));
      }
  });
  return cache_->atoms;
}

// ---------------------------------------------------------------------------
// factories
// ---------------------------------------------------------------------------

EntireProductFunction make_explicit(const std::vector<double>& t,
                                    double log_c) {
  ExplicitZeros z;
  for (double ti : t) {
    if (!(ti > 0.0))
      throw SpecParseError("explicit zero radius must be positive");
    z.log_t.push_back(std::log(ti));
    z.mult.push_back(1);
  }
  std::sort(z.log_t.begin(), z.log_t.end());
  z.validate();
  return EntireProductFunction{log_c, std::move(z)};
}

EntireProductFunction power_law_zeros(double p, double log_c) {
  if (!(p > 1.0))
    throw SpecParseError("power_law_zeros: exponent must exceed 1");
  AnalyticCounting z;
  z.lr_first = 0.0;  // t_1 = 1
  z.order_bound = 1.0 / p;
  z.atomic = true;
  z.n_of_lr = [p](double lr) {
    if (lr < 0.0) return 0.0;
    return std::floor(std::exp(lr / p) * (1.0 + 1e-14));
  };
  z.lt_of_index = [p](double nu) { return p * std::log(nu); };
  return EntireProductFunction{log_c, std::move(z)};
}

EntireProductFunction atomic_from_target(std::function<double(double)> n_target,
                                         double lr_first, double order_bound,
                                         double log_c) {
  AnalyticCounting z;
  z.lr_first = lr_first;
  z.order_bound = order_bound;
  z.atomic = true;
  auto target = n_target;
  z.n_of_lr = [target, lr_first](double lr) {
    if (lr < lr_first) return 0.0;
    return std::floor(target(lr) * (1.0 + 1e-14));
  };
  struct Cache {
    std::mutex mu;
    std::map<long long, double> atoms;
  };
  auto cache = std::make_shared<Cache>();
  z.lt_of_index = [target, lr_first, cache](double nu) {
    const bool integral = nu == std::floor(nu);
    if (integral) {
      std::lock_guard<std::mutex> lock(cache->mu);
      auto it = cache->atoms.find(static_cast<long long>(nu));
      if (it != cache->atoms.end()) return it->second;
    }
    // bracket then bisect the smooth target
    double lo = lr_first;
    double hi = lr_first + 1.0;
    int guard = 0;
    while (target(hi) < nu && guard++ < 4000) hi += std::max(1.0, 0.5 * hi);
    double lt = bisect_rising(target, lo, hi, nu);
    if (integral) {
      std::lock_guard<std::mutex> lock(cache->mu);
      cache->atoms.emplace(static_cast<long long>(nu), lt);
    }
    return lt;
  };
  return EntireProductFunction{log_c, std::move(z)};
}

// ---------------------------------------------------------------------------
// evaluation internals
// ---------------------------------------------------------------------------

namespace {

constexpr double kEmCoeff = 7.0 / 5760.0;  // leading Euler-Maclaurin remainder

struct EvalContext {
  double lr = 0.0;
  Angle ang;
  EvalSettings settings;
  mutable EvalBudget budget;
  bool hit_zero = false;  // theta = pi landed on a zero

  EvalContext(double lr_, double theta, const EvalSettings& s)
      : lr(lr_), ang(Angle::make(theta)), settings(s), budget(s.max_terms) {}
};

// Kernels integrated against the counting measure dn(t), as functions of
// log t. The two flags state which side of lr carries support.
struct AngleKernel {
  const EvalContext* c;
  double operator()(double lt) const { return log_factor(c->lr - lt, c->ang); }
  static constexpr bool upper_tail = true;   // mass above lr contributes
  static constexpr bool lower_part = true;   // mass below lr contributes
};
struct NKernel {
  const EvalContext* c;
  double operator()(double lt) const { return c->lr - lt; }
  static constexpr bool upper_tail = false;
  static constexpr bool lower_part = true;
};
struct QTailKernel {
  const EvalContext* c;
  double operator()(double lt) const { return std::exp(c->lr - lt); }
  static constexpr bool upper_tail = true;
  static constexpr bool lower_part = false;
};

double tol_floor(const EvalContext& c, double scale) {
  return c.settings.rel_tolerance * std::max(std::abs(scale), 1.0);
}

// --- explicit zeros --------------------------------------------------------

template <class K>
double sum_explicit(const ExplicitZeros& z, const K& kernel, EvalContext& c,
                    bool check_zero_hit) {
  double sum = 0.0;
  c.budget.charge(static_cast<std::int64_t>(z.log_t.size()));
  for (std::size_t i = 0; i < z.log_t.size(); ++i) {
    const double lt = z.log_t[i];
    if (!K::lower_part && lt <= c.lr) continue;
    if (!K::upper_tail && lt > c.lr) break;
    if (check_zero_hit && std::abs(c.lr - lt) <= c.settings.singularity_exclusion) {
      c.hit_zero = true;
      return kNegInf;
    }
    sum += z.mult[i] * kernel(lt);
  }
  return sum;
}

// --- banded zeros (always enumerated) ---------------------------------------

template <class K>
double sum_banded(const BandedZeros& z, const K& kernel, EvalContext& c,
                  bool check_zero_hit) {
  const std::vector<double>& atoms = z.atoms();
  c.budget.charge(static_cast<std::int64_t>(atoms.size()));
  double sum = 0.0;
  for (std::size_t i = static_cast<std::size_t>(z.drop_first); i < atoms.size();
       ++i) {
    const double lt = atoms[i];
    if (!K::lower_part && lt <= c.lr) continue;
    if (!K::upper_tail && lt > c.lr) break;
    if (check_zero_hit &&
        std::abs(c.lr - lt) <= c.settings.singularity_exclusion) {
      c.hit_zero = true;
      return kNegInf;
    }
    sum += kernel(lt);
  }
  return sum;
}

// --- analytic counting ------------------------------------------------------

// Supremum cutoff: log-radius LT with certified bound on the dropped mass
//   sum_{t > LT} r/t  <=  e^{lr-LT} n(LT) ob/(1-ob)
double choose_cutoff(const AnalyticCounting& z, const EvalContext& c,
                     double tol_abs, double* tail_used) {
  if (std::isfinite(z.lr_saturated)) {
    // finite total mass: nothing beyond the saturation radius
    *tail_used = 0.0;
    return std::max({c.lr, z.lr_first, z.lr_saturated}) + 1.0;
  }
  const double ob = z.order_bound;
  if (!(ob < 1.0))
    throw UnboundedTail(
        "counting function declared with order bound >= 1: tail integrals diverge");
  if (!(ob > 0.0))
    throw SpecParseError("AnalyticCounting.order_bound must lie in (0,1)");
  const double base = std::max(c.lr, z.lr_first);
  const double log_factor_ob = std::log(ob / (1.0 - ob));
  double delta = 5.0;
  for (int i = 0; i < 64; ++i) {
    const double lt = base + delta;
    const double n = z.n_of_lr(lt);
    if (!std::isfinite(n))
      throw NonConvergent("counting function overflows before tail cutoff");
    const double ln_bound =
        (n > 0.0 ? std::log(n) : -745.0) + (c.lr - lt) + log_factor_ob;
    if (ln_bound <= std::log(tol_abs)) {
      *tail_used = std::exp(ln_bound);
      return lt;
    }
    delta *= 1.9;
    if (base + delta > 1.5e308) break;
  }
  throw NonConvergent("no tail cutoff meets the tolerance in range");
}

// midpoint Euler-Maclaurin over integer indices A..B (inclusive):
//   sum phi(nu) ~= int_{A-1/2}^{B+1/2} phi + [phi'(A-1/2) - phi'(B+1/2)]/24
// phi must be smooth on the closed range; remainder is O(phi''').
template <class Phi>
double em_index_sum(const Phi& phi, double a, double b, double abs_tol,
                    EvalBudget& budget) {
  if (b < a) return 0.0;
  // integrate in log(nu) for conditioning over wide ranges
  auto integrand = [&](double mu) {
    const double nu = std::exp(mu);
    return phi(nu) * nu;
  };
  std::vector<double> edges;
  const double mu_lo = std::log(a - 0.5);
  const double mu_hi = std::log(b + 0.5);
  const int seg = std::max(2, std::min(24, static_cast<int>((mu_hi - mu_lo))));
  for (int i = 0; i <= seg; ++i)
    edges.push_back(mu_lo + (mu_hi - mu_lo) * i / seg);
  double integral = integrate_adaptive(integrand, edges, abs_tol, budget);
  const double dlo = phi(a) - phi(a - 1.0);  // ~ phi'(a - 1/2)
  const double dhi = phi(b + 1.0) - phi(b);  // ~ phi'(b + 1/2)
  budget.charge(4);
  return integral + (dlo - dhi) / 24.0;
}

// Atomic staircase: explicit atoms while factors vary on the index scale,
// Euler-Maclaurin for the smooth remainder, certified super-tail cutoff.
template <class K>
double sum_atomic(const AnalyticCounting& z, const K& kernel, EvalContext& c,
                  bool check_zero_hit, double scale_hint) {
  const double tol = tol_floor(c, scale_hint);
  double tail_used = 0.0;
  double lt_hi = c.lr;  // no upper tail: support ends at lr
  if (K::upper_tail) lt_hi = choose_cutoff(z, c, 0.25 * tol, &tail_used);

  const double nu_total = std::floor(z.n_of_lr(lt_hi));
  if (nu_total < 1.0) return 0.0;

  const double nu_lo = K::lower_part ? 1.0 : std::floor(z.n_of_lr(c.lr)) + 1.0;
  if (nu_lo > nu_total) return 0.0;

  // enumerate through the region where factors vary on the index scale
  const double lt_dense_end = std::min(lt_hi, std::max(c.lr, z.lr_first) + 3.0);
  double k_enum = K::upper_tail ? std::max(nu_lo + 7.0, z.n_of_lr(lt_dense_end))
                                : nu_total;  // finite support: enumerate it
  k_enum = std::min(k_enum, nu_total);

  auto phi = [&](double nu) { return kernel(z.lt_of_index(nu)); };

  for (int attempt = 0;; ++attempt) {
    if (k_enum > static_cast<double>(c.settings.max_terms))
      throw NonConvergent("atomic zero enumeration exceeds max_terms");
    const double k_end = std::min(std::floor(k_enum), nu_total);

    double sum = 0.0;
    c.budget.charge(static_cast<std::int64_t>(std::max(0.0, k_end - nu_lo + 1.0)));
    for (double nu = nu_lo; nu <= k_end; nu += 1.0) {
      const double lt = z.lt_of_index(nu);
      if (!K::lower_part && lt <= c.lr) continue;
      if (!K::upper_tail && lt > c.lr) break;
      if (check_zero_hit &&
          std::abs(c.lr - lt) <= c.settings.singularity_exclusion) {
        c.hit_zero = true;
        return kNegInf;
      }
      sum += kernel(lt);
    }

    if (k_end >= nu_total) return sum;  // everything enumerated

    // smoothness check for the Euler-Maclaurin remainder beyond k_end
    const double p0 = phi(k_end);
    const double p1 = phi(k_end + 1.0);
    const double p2 = phi(k_end + 2.0);
    const double p3 = phi(k_end + 3.0);
    c.budget.charge(4);
    const double third = std::abs(p3 - 3.0 * p2 + 3.0 * p1 - p0);
    if (kEmCoeff * third * 8.0 > 0.25 * tol && attempt < 24) {
      k_enum = std::max(k_enum * 2.0, k_enum + 64.0);
      continue;
    }
    sum += em_index_sum(phi, k_end + 1.0, std::floor(nu_total), 0.25 * tol,
                        c.budget);
    return sum;
  }
}

// Continuum counting model: Lebesgue-Stieltjes integral through the inverse
// (quantile) of n, integrated adaptively in the mass coordinate.
template <class K>
double sum_continuum(const AnalyticCounting& z, const K& kernel, EvalContext& c,
                     double scale_hint) {
  const double tol = tol_floor(c, scale_hint);
  double tail_used = 0.0;
  double lt_hi = std::max(c.lr, z.lr_first) + 5.0;
  if (K::upper_tail) lt_hi = choose_cutoff(z, c, 0.25 * tol, &tail_used);

  const double nu_hi_all = z.n_of_lr(lt_hi);
  if (nu_hi_all <= 0.0) return 0.0;

  const double nu_at_lr = z.n_of_lr(std::min(c.lr, lt_hi));
  double nu_lo = K::lower_part ? 0.0 : nu_at_lr;
  double nu_hi = K::upper_tail ? nu_hi_all : std::min(nu_at_lr, nu_hi_all);
  if (nu_hi <= nu_lo) return 0.0;

  auto quantile = [&](double nu) {
    if (z.lt_of_mass) return z.lt_of_mass(nu);
    c.budget.charge(64);
    return bisect_rising(z.n_of_lr, z.lr_first - 1.0, lt_hi + 1.0, nu, 110);
  };

  std::vector<double> edges{nu_lo, nu_hi};
  for (double bp : z.breakpoints) {
    const double nb = z.n_of_lr(bp);
    if (nb > nu_lo && nb < nu_hi) edges.push_back(nb);
  }
  // split at the mass of lr itself: integrand kink (and log singularity at
  // theta = pi when lr lies inside the support)
  if (nu_at_lr > nu_lo && nu_at_lr < nu_hi) edges.push_back(nu_at_lr);

  auto integrand = [&](double nu) { return kernel(quantile(nu)); };
  return integrate_adaptive(integrand, edges, 0.25 * tol, c.budget, 16384);
}

template <class K>
double sum_distribution(const EntireProductFunction& f, const K& kernel,
                        EvalContext& c, bool check_zero_hit,
                        double scale_hint) {
  return std::visit(
      [&](const auto& z) -> double {
        using T = std::decay_t<decltype(z)>;
        if constexpr (std::is_same_v<T, ExplicitZeros>) {
          return sum_explicit(z, kernel, c, check_zero_hit);
        } else if constexpr (std::is_same_v<T, BandedZeros>) {
          return sum_banded(z, kernel, c, check_zero_hit);
        } else {
          if (z.atomic) return sum_atomic(z, kernel, c, check_zero_hit, scale_hint);
          return sum_continuum(z, kernel, c, scale_hint);
        }
      },
      f.zeros);
}

}  // namespace

// ---------------------------------------------------------------------------
// public operations
// ---------------------------------------------------------------------------

double log_abs_at_angle(const EntireProductFunction& f, double lr, double theta,
                        const EvalSettings& settings) {
  settings.validate();
  if (!std::isfinite(lr)) throw SpecParseError("log radius must be finite");
  if (!(theta >= 0.0) || theta > std::numbers::pi * (1.0 + 1e-14))
    throw InvalidAngle("theta must lie in [0, pi]");

  EvalContext c(lr, theta, settings);
  const bool check_hit = c.ang.at_pi;

  // first pass with a crude scale guess, refined once if badly off
  double scale = std::max(1.0, std::abs(f.log_c));
  AngleKernel kernel{&c};
  double sum = sum_distribution(f, kernel, c, check_hit, scale);
  if (c.hit_zero) return kNegInf;
  double result = f.log_c + sum;
  const double better = std::max(1.0, std::abs(result));
  if (better > 16.0 * scale || scale > 16.0 * better) {
    EvalContext c2(lr, theta, settings);
    AngleKernel kernel2{&c2};
    sum = sum_distribution(f, kernel2, c2, check_hit, better);
    if (c2.hit_zero) return kNegInf;
    result = f.log_c + sum;
  }
  return result;
}

double first_zero_log_radius(const EntireProductFunction& f) {
  return std::visit(
      [](const auto& z) -> double {
        using T = std::decay_t<decltype(z)>;
        if constexpr (std::is_same_v<T, ExplicitZeros>) {
          return z.log_t.empty() ? 1e308 : z.log_t.front();
        } else if constexpr (std::is_same_v<T, BandedZeros>) {
          return z.bands.empty() ? 1e308 : z.bands.front().log_a;
        } else {
          return z.lr_first;
        }
      },
      f.zeros);
}

double count_zeros_up_to(const EntireProductFunction& f, double lr) {
  if (!std::isfinite(lr)) throw SpecParseError("log radius must be finite");
  return std::visit(
      [&](const auto& z) -> double {
        using T = std::decay_t<decltype(z)>;
        if constexpr (std::is_same_v<T, ExplicitZeros>) {
          double n = 0.0;
          for (std::size_t i = 0; i < z.log_t.size() && z.log_t[i] <= lr; ++i)
            n += z.mult[i];
          return n;
        } else if constexpr (std::is_same_v<T, BandedZeros>) {
          double n = 0.0;
          std::int64_t global_start = 0;
          for (const auto& band : z.bands) {
            const double q = band_mass_fraction(band.log_a, band.log_b, z.shape, lr);
            // zeros sit at mass midpoints (i+1/2)/count
            const double exact = q * static_cast<double>(band.count) + 0.5;
            std::int64_t in_band = static_cast<std::int64_t>(std::floor(exact));
            in_band = std::clamp<std::int64_t>(in_band, 0, band.count);
            // account for globally dropped leading zeros
            const std::int64_t lo = std::max<std::int64_t>(
                0, std::min<std::int64_t>(z.drop_first - global_start, band.count));
            n += static_cast<double>(std::max<std::int64_t>(0, in_band - lo));
            global_start += band.count;
          }
          return n;
        } else {
          return z.n_of_lr(lr);
        }
      },
      f.zeros);
}

double tail_bound(const EntireProductFunction& f, double lr, double log_cutoff,
                  const EvalSettings& settings) {
  settings.validate();
  if (!(log_cutoff > lr))
    throw SpecParseError("tail_bound: cutoff must exceed the radius");
  return std::visit(
      [&](const auto& z) -> double {
        using T = std::decay_t<decltype(z)>;
        if constexpr (std::is_same_v<T, ExplicitZeros>) {
          double b = 0.0;
          for (std::size_t i = 0; i < z.log_t.size(); ++i)
            if (z.log_t[i] > log_cutoff) b += z.mult[i] * std::exp(lr - z.log_t[i]);
          return b;
        } else if constexpr (std::is_same_v<T, BandedZeros>) {
          double b = 0.0;
          const std::vector<double>& atoms = z.atoms();
          for (std::size_t i = static_cast<std::size_t>(z.drop_first);
               i < atoms.size(); ++i)
            if (atoms[i] > log_cutoff) b += std::exp(lr - atoms[i]);
          return b;
        } else {
          // r * int_{cutoff}^inf n(t)/t^2 dt = e^{lr - lc} Q(cutoff)
          EntireProductFunction shifted{0.0, f.zeros};
          const double q_at_cutoff = counting_Q(shifted, log_cutoff, settings);
          return std::exp(lr - log_cutoff) * q_at_cutoff;
        }
      },
      f.zeros);
}

double counting_N(const EntireProductFunction& f, double lr,
                  const EvalSettings& settings) {
  settings.validate();
  EvalContext c(lr, 0.0, settings);
  NKernel kernel{&c};
  const double n_r = count_zeros_up_to(f, lr);
  return sum_distribution(f, kernel, c, false, std::max(1.0, n_r));
}

double counting_Q(const EntireProductFunction& f, double lr,
                  const EvalSettings& settings) {
  settings.validate();
  EvalContext c(lr, 0.0, settings);
  QTailKernel kernel{&c};
  const double n_r = count_zeros_up_to(f, lr);
  const double tail =
      sum_distribution(f, kernel, c, false, std::max(1.0, n_r));
  return n_r + tail;
}

}  // namespace minmod
