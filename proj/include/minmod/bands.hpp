#ifndef MINMOD_BANDS_HPP
#define MINMOD_BANDS_HPP

// Band-sequence data produced by the counterexample constructors. Endpoints
// grow doubly exponentially, so each endpoint carries a two-level
// representation: log x directly, or log log x once log x itself overflows.

#include <cmath>
#include <optional>
#include <vector>

#include "minmod/errors.hpp"

namespace minmod {

// A decreasing function delta(lr) -> (0, 1/4) with delta -> 0, given in
// closed form so the band recurrences can be inverted in the log domain.
struct DeltaSpec {
  enum class Kind { OneOverLog, PowerLaw };
  Kind kind = Kind::OneOverLog;
  double gamma = 1.0;   // PowerLaw: delta(r) = r^{-gamma}
  double cap = 0.2499;  // clamp keeping values inside (0, 1/4)

  // delta at log-radius lr
  double value(double lr) const {
    return std::exp(log_value(lr));
  }

  // log delta(lr); safe for lr up to ~1e308
  double log_value(double lr) const {
    double raw;
    switch (kind) {
      case Kind::OneOverLog:
        raw = lr > 1.0 ? -std::log(lr) : 0.0;
        break;
      case Kind::PowerLaw:
      default:
        raw = -gamma * lr;
        break;
    }
    return std::min(raw, std::log(cap));
  }

  // log of the smallest log-radius x with delta(x) <= exp(log_threshold).
  // Returned as log x so callers can stay in range when x itself overflows.
  double log_invert_threshold(double log_threshold) const {
    if (log_threshold >= std::log(cap)) return -745.0;  // no constraint
    switch (kind) {
      case Kind::OneOverLog:
        return -log_threshold;  // x = 1/threshold
      case Kind::PowerLaw:
      default:
        return std::log(-log_threshold) - std::log(gamma);  // x = -log(th)/gamma
    }
  }
};

struct Band {
  double log_a = 0.0;
  double log_b = 0.0;
  // two-level companions, meaningful when the matching flag is set; then the
  // primary field is saturated and log_log_* holds log(log endpoint)
  double log_log_a = 0.0;
  double log_log_b = 0.0;
  bool a_two_level = false;
  bool b_two_level = false;

  bool fully_representable() const { return !a_two_level && !b_two_level; }
};

enum class BandKind { MinimalType, LowerOrderHalf };

struct BandSequence {
  std::vector<Band> bands;
  BandKind kind = BandKind::MinimalType;
  double moderation_exponent = 10.0;
  std::optional<DeltaSpec> delta_spec;
  int requested_bands = 0;
  bool hit_overflow_horizon = false;  // construction stopped before requested_bands

  int representable_count() const {
    int n = 0;
    for (const Band& b : bands)
      if (b.fully_representable()) ++n;
    return n;
  }
};

}  // namespace minmod

#endif
