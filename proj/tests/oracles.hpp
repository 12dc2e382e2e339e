#ifndef MINMOD_TESTS_ORACLES_HPP
#define MINMOD_TESTS_ORACLES_HPP

// Independent closed-form and brute-force oracles used to freeze expected
// values. Nothing here touches the library's evaluation path.

#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

// zeros t_n = n^2: prod (1 + r/n^2) = sinh(pi sqrt r)/(pi sqrt r)
inline double log_max_square_zeros(double r) {
  const double x = std::numbers::pi * std::sqrt(r);
  // log(sinh x / x), stable for large x
  if (x > 30.0) return x - std::log(2.0) - std::log(x) + std::log1p(-std::exp(-2.0 * x));
  return std::log(std::sinh(x) / x);
}

// zeros t_n = n^2: prod |1 - r/n^2| = |sin(pi sqrt r)| / (pi sqrt r)
inline double log_min_square_zeros(double r) {
  const double x = std::numbers::pi * std::sqrt(r);
  return std::log(std::abs(std::sin(x))) - std::log(x);
}

// direct complex-arithmetic evaluation of log|c prod (1 + z/t_n)| for small
// explicit zero sets
inline double log_abs_direct(const std::vector<double>& t, double log_c,
                             double r, double theta) {
  const std::complex<double> z = std::polar(r, theta);
  double acc = log_c;
  for (double tn : t) acc += std::log(std::abs(1.0 + z / tn));
  return acc;
}

// zeros t_n = n^3 evaluated on the positive axis by direct summation
inline double log_max_cube_zeros(double r) {
  double s = 0.0;
  for (long long n = 1;; ++n) {
    const double x = r / (static_cast<double>(n) * n * n);
    if (x < 1e-14) {
      s += r * 0.5 / (static_cast<double>(n) * n);  // sum r/m^3 tail ~ r/(2n^2)
      break;
    }
    s += std::log1p(x);
  }
  return s;
}

}  // namespace oracle

#endif
