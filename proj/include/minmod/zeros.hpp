#ifndef MINMOD_ZEROS_HPP
#define MINMOD_ZEROS_HPP

// Zero distributions for canonical products f(z) = c prod (1 + z/t_n) with
// all t_n > 0 (zeros on the negative real axis). Three representations:
//
//   ExplicitZeros    finite ascending list with multiplicities
//   BandedZeros      finitely many zeros placed inside bands by a shape rule
//   AnalyticCounting zeros described by a counting function n(r); either a
//                    continuum model (dn integrated by quadrature) or an
//                    integer staircase with a smooth quantile ("atomic")
//
// All log radii are natural logs.

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <variant>
#include <vector>

#include "minmod/errors.hpp"
#include "minmod/log_scale.hpp"

namespace minmod {

struct ExplicitZeros {
  std::vector<double> log_t;  // ascending
  std::vector<int> mult;

  void validate() const {
    if (log_t.size() != mult.size())
      throw SpecParseError("ExplicitZeros: zeros/multiplicities length mismatch");
    for (std::size_t i = 0; i < log_t.size(); ++i) {
      if (!std::isfinite(log_t[i]))
        throw SpecParseError("ExplicitZeros: zero radius must be positive and finite");
      if (i > 0 && log_t[i] < log_t[i - 1])
        throw SpecParseError("ExplicitZeros: zeros must be nondecreasing");
      if (mult[i] < 1)
        throw SpecParseError("ExplicitZeros: multiplicity must be at least 1");
    }
  }
};

enum class BandShape {
  UniformLog,  // uniform spacing in log t
  SqrtRadius,  // density proportional to sqrt(t), the order-1/2 bulk profile
  // equilibrium-type density 1/sqrt((t-a)(b-t)): its own-band log-potential
  // is the constant log((sqrt b - sqrt a)/(sqrt b + sqrt a)) ~ -2 sqrt(a/b),
  // so the minimum modulus stays small across the whole band
  Arcsine
};

// Enumerable banded placement. Zero i of a band with count k sits at the
// mass midpoint (i+1/2)/k of the band's shape measure.
struct BandedZeros {
  struct Entry {
    double log_a = 0.0;
    double log_b = 0.0;
    std::int64_t count = 0;
  };
  std::vector<Entry> bands;  // ascending, disjoint
  BandShape shape = BandShape::UniformLog;
  std::int64_t drop_first = 0;  // skip the first k placed zeros

  // materialized positions including dropped leading zeros, shared by copies
  const std::vector<double>& atoms() const;

  void validate() const {
    double prev = -1e308;
    for (const Entry& e : bands) {
      if (!(e.log_a < e.log_b))
        throw SpecParseError("BandedZeros: band endpoints out of order");
      if (e.log_a < prev)
        throw SpecParseError("BandedZeros: bands must be disjoint ascending");
      if (e.count < 1) throw SpecParseError("BandedZeros: band count must be >= 1");
      prev = e.log_b;
    }
    if (drop_first < 0) throw SpecParseError("BandedZeros: drop_first negative");
  }

 private:
  // types are immutable after construction, so copies may share the cache
  struct AtomCache {
    std::once_flag once;
    std::vector<double> atoms;
  };
  std::shared_ptr<AtomCache> cache_ = std::make_shared<AtomCache>();
};

// log t at mass fraction q in [0,1] of a band, per shape. Stable for band
// widths far beyond exp-overflow.
double band_quantile(double log_a, double log_b, BandShape shape, double q);
// inverse: mass fraction at log-radius lr inside the band
double band_mass_fraction(double log_a, double log_b, BandShape shape, double lr);

struct AnalyticCounting {
  std::function<double(double)> n_of_lr;  // nondecreasing, 0 below lr_first
  double lr_first = 0.0;
  // declared growth: n(t) <= n(T) (t/T)^order_bound for t >= T >= first zero;
  // must be < 1 for the tail integrals to converge
  double order_bound = 0.75;
  // n is constant above this log radius (finite total mass); +inf when the
  // counting function keeps growing
  double lr_saturated = std::numeric_limits<double>::infinity();
  bool atomic = false;
  // atomic: smooth quantile, index nu >= 1 -> log t of the nu-th zero
  std::function<double(double)> lt_of_index;
  // continuum fast path: cumulative mass nu -> log t (otherwise bisection)
  std::function<double(double)> lt_of_mass;
  std::vector<double> breakpoints;  // log radii where n kinks (band edges)
};

using ZeroDistribution =
    std::variant<ExplicitZeros, BandedZeros, AnalyticCounting>;

// f(z) = c prod (1 + z/t_n), c = exp(log_c) > 0.
struct EntireProductFunction {
  double log_c = 0.0;
  ZeroDistribution zeros;
};

// convenience factories --------------------------------------------------

// explicit zeros from raw radii t > 0
EntireProductFunction make_explicit(const std::vector<double>& t,
                                    double log_c = 0.0);

// t_n = n^p for n >= 1 as an atomic counting model (infinite product)
EntireProductFunction power_law_zeros(double p, double log_c = 0.0);

// atomic counting model with zeros at the integer crossings of a smooth
// increasing target n_target(lr); quantiles resolved by bisection and cached
EntireProductFunction atomic_from_target(std::function<double(double)> n_target,
                                         double lr_first, double order_bound,
                                         double log_c = 0.0);

}  // namespace minmod

#endif
