#ifndef MINMOD_PRODUCT_MODEL_HPP
#define MINMOD_PRODUCT_MODEL_HPP

// Evaluation of log|f| for canonical products over negative real zeros.
//
// Hybrid scheme: zeros below a cutoff are summed factor by factor; the rest
// of the counting measure is integrated by adaptive quadrature, with a
// certified bound on the truncated tail. Everything runs on log radii, so
// radii up to exp(~1e308) stay in range.

#include "minmod/settings.hpp"
#include "minmod/zeros.hpp"

namespace minmod {

// log|f(r e^{i theta})| for theta in [0, pi]; conjugate symmetry covers the
// rest of the circle. Returns -inf exactly when theta = pi and the point
// sits within settings.singularity_exclusion (in log distance) of a zero.
//
// Throws InvalidAngle for theta outside [0, pi], NonConvergent when the
// tolerance cannot be met within settings.max_terms, UnboundedTail when the
// declared counting growth admits no convergent tail.
double log_abs_at_angle(const EntireProductFunction& f, double lr, double theta,
                        const EvalSettings& settings = {});

// n(r): zeros with |z| <= r, counted with multiplicity. Integer-valued for
// explicit and banded zeros; the counting-function value for analytic models.
double count_zeros_up_to(const EntireProductFunction& f, double lr);

// log radius of the smallest zero; 1e308 when f has none
double first_zero_log_radius(const EntireProductFunction& f);

// Certified upper bound on the |contribution| to log|f(z)|, |z| = r, of all
// zeros above the cutoff radius (log_cutoff > lr required). Uses
// log(1+x) <= x and the tail of the counting measure.
double tail_bound(const EntireProductFunction& f, double lr, double log_cutoff,
                  const EvalSettings& settings = {});

// N(r) = integral_0^r n(t)/t dt  (= sum log(r/t_n) over t_n <= r)
double counting_N(const EntireProductFunction& f, double lr,
                  const EvalSettings& settings = {});

// Q(r) = r integral_r^inf n(t)/t^2 dt  (= n(r) + r sum 1/t_n over t_n > r)
double counting_Q(const EntireProductFunction& f, double lr,
                  const EvalSettings& settings = {});

}  // namespace minmod

#endif
