#ifndef MINMOD_CONSTRUCTORS_HPP
#define MINMOD_CONSTRUCTORS_HPP

// Generators for the example families: regularly distributed zeros driven by
// an eps(r) profile, and the two band-sequence recurrences whose gaps keep
// the minimum modulus small over long stretches.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minmod/bands.hpp"
#include "minmod/zeros.hpp"

namespace minmod {

// eps(r) decreasing with k(r) = eps(r) log r increasing; zeros are targeted
// at n(r) ~ r^{1/2 - eps(r)}.
struct EpsSpec {
  enum class Kind { Constant, IteratedLog };
  Kind kind = Kind::Constant;
  double eps0 = 1.0 / 6.0;  // Constant
  double alpha = 1.0;       // IteratedLog: k(r) = alpha (log^depth r)^beta
  double beta = 1.0;
  int depth = 2;  // 2 = log log r

  double eps(double lr) const;       // clamped continuation below the domain
  double k(double lr) const;         // eps(lr) * lr
  double n_target(double lr) const;  // exp((1/2 - eps) lr)
  double domain_min_lr() const;      // smallest lr with the monotonicity intact
  // NonMonotoneSpec when eps fails to decrease or n_target fails to increase
  void validate(double lr_lo, double lr_hi) const;
};

// Explicit zeros t_n solving n_target(t_n) = n, up to radius exp(max_lr).
// The resulting counting function matches the target within +-1.
ZeroDistribution regular_zeros(const EpsSpec& spec, double max_lr);

// The same family as an unbounded atomic counting model (no truncation).
EntireProductFunction regular_family(const EpsSpec& spec, double log_c = 0.0);

// Band recurrence with slow tower growth:
//   log a_{n+1} = max(p log b_n, smallest value with
//                     delta(a_{n+1}/2) <= log b_n / (40 b_n))
//   log b_{n+1} = (b_n / log b_n) log a_{n+1}
// p is the moderation exponent (10 reproduces the reference recurrence; 2
// keeps more bands inside evaluable range). Construction stops early with
// hit_overflow_horizon when even the two-level log representation saturates.
BandSequence minimal_type_bands(const DeltaSpec& delta, double seed_log_a0,
                                double seed_log_b0, int n_bands, double p);

// Band recurrence with a_{n+1} = 2 b_n and gaps g_n = log(b_n/a_n) growing by
//   g_{n+1} = max(2 g_n, sqrt(2 b_n)),
// which forces b_n/a_n increasing to infinity while keeping the growth cap
// sqrt(a_{n+1}) <= log b_{n+1}.
BandSequence lower_order_half_bands(double seed_log_a0, double seed_log_b0,
                                    int n_bands);

// In-band zero placement rule.
struct DensityRule {
  BandShape shape = BandShape::Arcsine;
  // cumulative count target n(b_k) = b_k^{1/2 - delta(b_k)}; defaults to the
  // band sequence's own delta, then to 1/log r
  std::optional<DeltaSpec> count_delta;
  std::optional<std::vector<std::int64_t>> explicit_counts;  // per-band override
  std::int64_t enumeration_budget = 250'000;
  std::int64_t drop_first = 0;
};

// Places zeros inside the representable bands. Returns enumerated BandedZeros
// when the total count fits the budget, otherwise the equivalent continuum
// counting model (AnalyticCounting with the exact per-band masses).
ZeroDistribution realize_bands(const BandSequence& seq,
                               const DensityRule& rule = {});

// Re-derives the recurrence constraints from the stored fields. detail, when
// given, receives a description of the first violation.
bool verify_band_recurrences(const BandSequence& seq, double rel_tol = 1e-12,
                             std::string* detail = nullptr);

}  // namespace minmod

#endif
