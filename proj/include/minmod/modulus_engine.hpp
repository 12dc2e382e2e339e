#ifndef MINMOD_MODULUS_ENGINE_HPP
#define MINMOD_MODULUS_ENGINE_HPP

// Maximum and minimum modulus on circles, and the running maximum
// mtilde(r) = max{ m(s) : 0 <= s <= r } with its maximizing radius.
//
// For products over negative real zeros, log|f(r e^{i theta})| is
// nonincreasing in theta on [0, pi], so M(r) = f(r) and m(r) = |f(-r)|.
// Between consecutive zeros, s -> log|f(-s)| is strictly concave, which makes
// gap-wise golden-section refinement of the scan sound.

#include <utility>
#include <vector>

#include "minmod/product_model.hpp"
#include "minmod/settings.hpp"

namespace minmod {

double log_max_modulus(const EntireProductFunction& f, double lr,
                       const EvalSettings& settings = {});

// -inf when r coincides with a zero (within the singularity exclusion)
double log_min_modulus(const EntireProductFunction& f, double lr,
                       const EvalSettings& settings = {});

struct MtildeResult {
  double log_value = 0.0;
  double argmax_lr = kNegInf;  // -inf encodes the s -> 0+ limit (value log c)
};

// Grid scan of s -> log m(s) over (0, r] plus golden refinement around local
// maxima (one refinement per gap between consecutive zeros when the zero set
// is enumerable). The result is a grid-certified lower bound on the exact
// supremum; per-gap concavity makes it tight for explicit zero sets.
MtildeResult m_tilde(const EntireProductFunction& f, double lr,
                     const ScanSettings& scan = {},
                     const EvalSettings& settings = {});

struct MtildeCheckpoint {
  double lr = 0.0;
  double log_mtilde = 0.0;
  double argmax_lr = kNegInf;
};

struct MtildeProfile {
  std::vector<MtildeCheckpoint> checkpoints;  // ascending lr, nondecreasing value
};

MtildeProfile m_tilde_profile(const EntireProductFunction& f, double lr_min,
                              double lr_max, int n_checkpoints,
                              const ScanSettings& scan = {},
                              const EvalSettings& settings = {});

// Independent circle oracle: evaluates on a uniform theta grid over [0, pi]
// (endpoints included) and returns the observed (log_min, log_max). Test-side
// check of the theta = 0 / theta = pi shortcuts.
std::pair<double, double> brute_force_extrema(const EntireProductFunction& f,
                                              double lr, int grid_points,
                                              const EvalSettings& settings = {});

}  // namespace minmod

#endif
