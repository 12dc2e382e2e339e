#ifndef MINMOD_GROWTH_ANALYSIS_HPP
#define MINMOD_GROWTH_ANALYSIS_HPP

// Growth functionals of the maximum modulus: the eps/k transforms defined by
// log M(r) = r^{1/2 - eps(r)}, k(r) = eps(r) log r, finite-range order
// estimates, the N/Q counting integrals that sandwich log M, the witness
// search for the growth-regularity criterion, and the Beurling minimum
// modulus inequality as a numerical cross-check.

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "minmod/modulus_engine.hpp"
#include "minmod/product_model.hpp"

namespace minmod {

// eps and k from a known log M value; DomainTooSmall unless log_M > 1 and
// lr > 0 (log log M must be defined and the quotient meaningful)
std::pair<double, double> eps_k_from(double log_M, double lr);

std::pair<double, double> eps_k_at(const EntireProductFunction& f, double lr,
                                   const EvalSettings& settings = {});

struct GrowthSample {
  double lr = 0.0;
  double log_M = 0.0;
  double log_m = kNegInf;
  double eps = 0.0;   // NaN where log_M <= 1
  double k = 0.0;     // NaN where eps is NaN
  double trend = 0.0; // log(log M / sqrt r) = log log M - lr/2; NaN if log_M <= 0
};

struct GrowthProfile {
  std::vector<GrowthSample> samples;  // ascending lr
  // finite-range order estimates: max/min of log log M / log r over the top
  // 30% of the sampled range (windowed surrogates, not asymptotic values)
  double rho_hat = 0.0;
  double lambda_hat = 0.0;
};

GrowthProfile build_profile(const EntireProductFunction& f, double lr_min,
                            double lr_max, int points_per_decade,
                            const EvalSettings& settings = {});

struct CountingData {
  double lr = 0.0;
  double n_r = 0.0;
  double N_r = 0.0;
  double Q_r = 0.0;
};

CountingData counting_data(const EntireProductFunction& f, double lr,
                           const EvalSettings& settings = {});

struct SandwichReport {
  double lr = 0.0;
  double N_r = 0.0;
  double Q_r = 0.0;
  double log_M_shifted = 0.0;  // log M(r) - log c, i.e. normalized to f(0)=1
  double tolerance = 0.0;
  bool ok = false;
};

// N(r) <= log M(r) - log c <= N(r) + Q(r), slack 1e-9 (1 + |log M - log c|)
SandwichReport sandwich_check(const EntireProductFunction& f, double lr,
                              const EvalSettings& settings = {});

struct CriterionReport {
  double lr = 0.0;
  std::optional<double> witness_lr_s;  // log s of the best admissible witness
  // best value of (1/4)(log M(s)/sqrt s) / (log M(r)/sqrt r) over admissible
  // s, computed in the log domain; the criterion holds iff margin >= 1
  double margin = 0.0;
  bool side_condition_ok = false;  // some s < r with M(s) >= r^2 exists
};

// Searches s on a log grid over (0, r) for the criterion
//   log M(r)/sqrt(r) <= (1/4) log M(s)/sqrt(s)   with   M(s) >= r^2.
// witness_lr_s is set iff an admissible s with margin >= 1 was found.
CriterionReport criterion_witness(const EntireProductFunction& f, double lr,
                                  const SearchSettings& search = {},
                                  const EvalSettings& settings = {});

// Condition on the k transform: delta log r >= k(r) >= C delta/(1/2-delta)
// loglog r, evaluated per profile sample with defined k and lr > 1.
std::vector<std::pair<double, bool>> check_condition_A(
    const GrowthProfile& profile, double delta, double C);

// k(r) >= C k((log r)^{2d}); the k_fn overload permits synthetic growth maps
bool check_condition_B(const std::function<double(double)>& k_fn, double lr,
                       double C, double d);
bool check_condition_B(const EntireProductFunction& f, double lr, double C,
                       double d, const EvalSettings& settings = {});

struct BeurlingReport {
  double lr1 = 0.0;
  double lr2 = 0.0;
  double threshold_log_c = 0.0;
  double e_log_measure = 0.0;  // integral of dt/t over E = {m(t) <= c}
  double lhs = 0.0;            // log B(r2, u)
  double rhs = 0.0;            // log(1/2) + E/2 + log B(r1, u)
  bool holds = false;
};

// u = log(|f|/c~): checks B(r2,u) > (1/2) exp((1/2) int_E dt/t) B(r1,u)
// where E = {t in [r1,r2] : m(t) <= c~}. Throws ThresholdTooHigh when
// B(r1, u) <= 0. The inequality always holds for subharmonic u, so a reported
// failure indicates an evaluation bug.
BeurlingReport beurling_verify(const EntireProductFunction& f, double lr1,
                               double lr2, double threshold_log_c,
                               const ScanSettings& scan = {},
                               const EvalSettings& settings = {});

}  // namespace minmod

#endif
