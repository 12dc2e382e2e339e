#ifndef MINMOD_DYNAMICS_HPP
#define MINMOD_DYNAMICS_HPP

// Iteration of the minimum and maximum modulus as real maps on log radii,
// with escape detection and certified trapping via the running maximum:
// if mtilde(r) <= r then no minimum-modulus orbit started at s <= r can
// ever exceed r.

#include <cstdint>
#include <utility>
#include <vector>

#include "minmod/modulus_engine.hpp"

namespace minmod {

enum class MapKind { Min, Max };

enum class OrbitVerdict { Escaped, Trapped, HitZero, Undecided };

// default escape threshold: radius 1e12
inline constexpr double kDefaultEscapeLogRadius = 27.631021115928547;

struct OrbitRecord {
  double start_lr = 0.0;
  MapKind map_kind = MapKind::Min;
  std::vector<double> steps;  // successive log m (or log M) values
  OrbitVerdict verdict = OrbitVerdict::Undecided;
  double trap_radius_lr = 0.0;  // certified trap radius when verdict == Trapped
};

// true iff mtilde(r) <= r at this radius: a certified trap for all
// minimum-modulus orbits started at or below r
bool trap_check(const EntireProductFunction& f, double lr,
                const ScanSettings& scan = {},
                const EvalSettings& settings = {});

// Applies log m (or log M) repeatedly starting from start_lr. Stops on
// escape past the threshold, on hitting a zero (m = 0 maps out of the
// domain: absorbing), on a certified trap (Min map: mtilde(r) <= r at a
// non-expanding step; Max map: M(r) <= r, absorbing by monotonicity), or
// when the iteration budget runs out. trap_detection = false disables the
// certificate checks so orbits run their full budget.
OrbitRecord iterate_modulus(const EntireProductFunction& f, double start_lr,
                            MapKind map_kind, int max_iter,
                            double escape_log_threshold = kDefaultEscapeLogRadius,
                            const EvalSettings& settings = {},
                            const ScanSettings& scan = {},
                            bool trap_detection = true);

// Launches Min-map orbits from candidate start radii: the refined local
// maxima of s -> log m(s) over [lr_min, lr_max] (the most escape-favourable
// points), capped at max_candidates. Returns (start, record) pairs.
std::vector<std::pair<double, OrbitRecord>> scan_escape_candidates(
    const EntireProductFunction& f, double lr_min, double lr_max,
    const ScanSettings& scan = {}, const EvalSettings& settings = {},
    int max_iter = 50, double escape_log_threshold = kDefaultEscapeLogRadius,
    int max_candidates = 24);

}  // namespace minmod

#endif
