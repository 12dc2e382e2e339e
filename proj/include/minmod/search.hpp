#ifndef MINMOD_SEARCH_HPP
#define MINMOD_SEARCH_HPP

// Golden-section refinement and monotone bisection, shared by the scan and
// constructor modules.

#include <cmath>
#include <utility>

namespace minmod {

// Maximizes f on [a, b] by golden-section search. Intended for functions that
// are unimodal (here: concave between consecutive zeros); -inf values at the
// bracket ends are handled naturally by the comparisons.
template <class F>
std::pair<double, double> golden_max(const F& f, double a, double b,
                                     int iters) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < iters && b - a > 1e-15 * (1.0 + std::abs(a)); ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return f1 > f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

// Smallest x in [lo, hi] with g(x) >= target, for nondecreasing g.
// Caller guarantees g(lo) < target <= g(hi).
template <class F>
double bisect_rising(const F& g, double lo, double hi, double target,
                     int iters = 200) {
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) >= target)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

// Smallest x in [lo, hi] with g(x) <= target, for nonincreasing g.
template <class F>
double bisect_falling(const F& g, double lo, double hi, double target,
                      int iters = 200) {
  return bisect_rising([&](double x) { return -g(x); }, lo, hi, -target, iters);
}

}  // namespace minmod

#endif
