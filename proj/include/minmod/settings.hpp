#ifndef MINMOD_SETTINGS_HPP
#define MINMOD_SETTINGS_HPP

#include <cmath>
#include <cstdint>

#include "minmod/errors.hpp"

namespace minmod {

// Controls one evaluation of log|f|.
//
// rel_tolerance      target relative error of the returned log-magnitude
// max_terms          budget on explicit factor evaluations + quadrature nodes
// singularity_exclusion  log-distance below which a point on the negative
//                        axis counts as sitting on a zero (result -inf)
struct EvalSettings {
  double rel_tolerance = 1e-9;
  std::int64_t max_terms = 10'000'000;
  double singularity_exclusion = 6.144212353328210e-6;  // exp(-12)

  void validate() const {
    if (!(rel_tolerance > 0.0 && rel_tolerance < 1.0))
      throw SpecParseError("EvalSettings.rel_tolerance must lie in (0,1)");
    if (max_terms <= 0)
      throw SpecParseError("EvalSettings.max_terms must be positive");
    if (!(singularity_exclusion > 0.0))
      throw SpecParseError("EvalSettings.singularity_exclusion must be positive");
  }
};

// Controls radius scans (running-maximum searches, escape-candidate scans).
struct ScanSettings {
  int points_per_decade = 64;
  int refine_depth = 48;       // golden-section iterations per local maximum
  std::int64_t max_points = 200'000;
};

// Controls the witness search of the growth criterion.
struct SearchSettings {
  int candidates_per_decade = 32;
};

// Tracks the per-call evaluation budget.
class EvalBudget {
 public:
  explicit EvalBudget(std::int64_t limit) : remaining_(limit) {}

  void charge(std::int64_t n) {
    remaining_ -= n;
    if (remaining_ < 0)
      throw NonConvergent("evaluation budget (max_terms) exhausted");
  }

  std::int64_t remaining() const { return remaining_; }

 private:
  std::int64_t remaining_;
};

}  // namespace minmod

#endif
