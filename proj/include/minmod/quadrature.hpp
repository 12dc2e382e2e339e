#ifndef MINMOD_QUADRATURE_HPP
#define MINMOD_QUADRATURE_HPP

// Adaptive Gauss-Kronrod (G7/K15) integration with a global error target.
// Panels are refined worst-first; the final sum runs left to right so that
// results are reproducible bit for bit.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <vector>

#include "minmod/errors.hpp"
#include "minmod/settings.hpp"

namespace minmod {

namespace detail {

// K15 abscissae (positive half) and weights; rows 0..3 carry the G7 weights.
inline constexpr double kGK15Node[8] = {
    0.000000000000000000, 0.405845151377397167, 0.741531185599394440,
    0.949107912342758525, 0.207784955007898468, 0.586087235467691130,
    0.864864423359769073, 0.991455371120812639};
inline constexpr double kGK15WG[4] = {
    0.417959183673469388, 0.381830050505118945, 0.279705391489276668,
    0.129484966168869693};
inline constexpr double kGK15WK[8] = {
    0.209482141084727828, 0.190350578064785410, 0.140653259715525919,
    0.063092092629978553, 0.204432940075298892, 0.169004726639267903,
    0.104790010322250184, 0.022935322010529225};

template <class F>
double gk15_panel(const F& f, double a, double b, double* abs_err) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f0 = f(mid);
  double g7 = kGK15WG[0] * f0;
  double k15 = kGK15WK[0] * f0;
  for (int i = 1; i < 8; ++i) {
    const double dx = half * kGK15Node[i];
    const double fi = f(mid + dx) + f(mid - dx);
    k15 += kGK15WK[i] * fi;
    if (i < 4) g7 += kGK15WG[i] * fi;
  }
  g7 *= half;
  k15 *= half;
  // |G7-K15| is a conservative error estimate for K15; the epsilon term keeps
  // the refinement loop from chasing noise below machine precision.
  *abs_err = std::abs(g7 - k15) + 2.3e-16 * std::abs(k15);
  return k15;
}

}  // namespace detail

// Integrates f over consecutive [edges[i], edges[i+1]] panels, bisecting the
// worst panel until the summed error estimate drops below abs_tol.
template <class F>
double integrate_adaptive(const F& f, std::vector<double> edges, double abs_tol,
                          EvalBudget& budget, int max_panels = 8192) {
  struct Panel {
    double a, b, val, err;
    std::int64_t id;
  };
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (edges.size() < 2) return 0.0;

  auto worse = [](const Panel& x, const Panel& y) {
    if (x.err != y.err) return x.err < y.err;
    return x.id > y.id;  // deterministic tie-break
  };
  std::priority_queue<Panel, std::vector<Panel>, decltype(worse)> queue(worse);
  std::vector<Panel> done;
  std::int64_t next_id = 0;
  double total_err = 0.0;

  auto push = [&](double a, double b) {
    if (!(b > a)) return;
    budget.charge(15);
    Panel p{a, b, 0.0, 0.0, next_id++};
    p.val = detail::gk15_panel(f, a, b, &p.err);
    total_err += p.err;
    queue.push(p);
  };

  for (std::size_t i = 0; i + 1 < edges.size(); ++i) push(edges[i], edges[i + 1]);

  while (total_err > abs_tol && !queue.empty()) {
    if (next_id > max_panels)
      throw NonConvergent("adaptive quadrature: panel limit reached");
    Panel worst = queue.top();
    queue.pop();
    total_err -= worst.err;
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      done.push_back(worst);  // interval at floating-point resolution
      continue;
    }
    push(worst.a, mid);
    push(mid, worst.b);
  }

  while (!queue.empty()) {
    done.push_back(queue.top());
    queue.pop();
  }
  std::sort(done.begin(), done.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  double sum = 0.0;
  for (const Panel& p : done) sum += p.val;
  return sum;
}

template <class F>
double integrate_adaptive(const F& f, double a, double b, double abs_tol,
                          EvalBudget& budget, int max_panels = 8192) {
  return integrate_adaptive(f, std::vector<double>{a, b}, abs_tol, budget,
                            max_panels);
}

}  // namespace minmod

#endif
