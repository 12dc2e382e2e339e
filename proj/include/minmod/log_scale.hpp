#ifndef MINMOD_LOG_SCALE_HPP
#define MINMOD_LOG_SCALE_HPP

// Log-domain arithmetic for evaluating canonical products at extreme radii.
// Radii are carried as natural logs end to end; a log-magnitude of exactly
// -inf is the sentinel for "the point sits on a zero".

#include <cmath>
#include <limits>
#include <numbers>

namespace minmod {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline bool is_neg_inf(double v) { return std::isinf(v) && v < 0.0; }

// Precomputed trigonometry of the evaluation angle.
struct Angle {
  double theta = 0.0;
  double cos_theta = 1.0;
  double two_one_plus_cos = 4.0;  // 2(1+cos theta) = 4 cos^2(theta/2)
  bool at_pi = false;

  static Angle make(double theta) {
    Angle a;
    a.theta = theta;
    a.cos_theta = std::cos(theta);
    const double c_half = std::cos(0.5 * theta);
    a.two_one_plus_cos = 4.0 * c_half * c_half;
    a.at_pi = std::abs(theta - std::numbers::pi) <= 1e-14;
    if (a.at_pi) {
      a.cos_theta = -1.0;
      a.two_one_plus_cos = 0.0;
    }
    return a;
  }
};

// log|1 + (r/t) e^{i theta}| where d = log r - log t.
//
// |d| > 1: log1p forms, accurate relative to the (possibly tiny) value and
// overflow-free for |d| up to ~1e308. |d| <= 1: written as
// 0.5*log((rho-1)^2 + rho*2(1+cos theta)), rho = e^d, which stays exact
// through the cancellation at rho -> 1, theta -> pi.
inline double log_factor(double d, const Angle& a) {
  if (d > 1.0) {
    const double q = std::exp(-d);
    return d + 0.5 * std::log1p(q * (2.0 * a.cos_theta + q));
  }
  if (d < -1.0) {
    const double rho = std::exp(d);
    return 0.5 * std::log1p(rho * (2.0 * a.cos_theta + rho));
  }
  const double u = std::expm1(d);  // rho - 1
  const double rho = std::exp(d);
  const double sq = u * u + rho * a.two_one_plus_cos;
  if (sq == 0.0) return kNegInf;
  return 0.5 * std::log(sq);
}

// log|e^d - 1|, stable for all d (the theta = pi factor).
inline double log_abs_expm1(double d) {
  const double u = std::expm1(d);
  if (u == 0.0) return kNegInf;
  return std::log(std::abs(u));
}

}  // namespace minmod

#endif
