#include "minmod/constructors.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "minmod/product_model.hpp"
#include "minmod/search.hpp"

namespace minmod {

// ---------------------------------------------------------------------------
// EpsSpec
// ---------------------------------------------------------------------------

double EpsSpec::eps(double lr) const {
  const double x = std::max(lr, domain_min_lr());
  switch (kind) {
    case Kind::Constant:
      return eps0;
    case Kind::IteratedLog:
    default: {
      // k(r) = alpha (log^depth r)^beta with log^1 r = log r
      double v = x;
      for (int i = 1; i < depth; ++i) v = std::log(v);
      return alpha * std::pow(v, beta) / x;
    }
  }
}

double EpsSpec::k(double lr) const { return eps(lr) * std::max(lr, domain_min_lr()); }

double EpsSpec::n_target(double lr) const {
  return std::exp((0.5 - eps(lr)) * lr);
}

double EpsSpec::domain_min_lr() const {
  switch (kind) {
    case Kind::Constant:
      return 1e-3;
    case Kind::IteratedLog:
    default: {
      // below this the iterated logs lose monotonicity
      double lo = std::exp(1.0);
      for (int i = 3; i < depth; ++i) lo = std::exp(lo);
      return lo + 0.5;
    }
  }
}

void EpsSpec::validate(double lr_lo, double lr_hi) const {
  if (kind == Kind::Constant) {
    if (!(eps0 > 0.0 && eps0 < 0.5))
      throw NonMonotoneSpec("EpsSpec: constant eps must lie in (0, 1/2)");
    return;
  }
  if (!(alpha > 0.0) || !(beta > 0.0) || depth < 2)
    throw NonMonotoneSpec("EpsSpec: iterated-log family needs alpha, beta > 0, depth >= 2");
  const double lo = std::max(lr_lo, domain_min_lr());
  if (!(lo < lr_hi))
    throw NonMonotoneSpec("EpsSpec: validation range below the family domain");
  double prev_eps = 1e308, prev_n = -1.0;
  for (int i = 0; i <= 256; ++i) {
    const double lr = lo + (lr_hi - lo) * i / 256.0;
    const double e = eps(lr);
    const double nt = n_target(lr);
    if (!(e > 0.0 && e < 0.5))
      throw NonMonotoneSpec("EpsSpec: eps escapes (0, 1/2) on the domain");
    if (e > prev_eps + 1e-12)
      throw NonMonotoneSpec("EpsSpec: eps fails to decrease");
    if (nt < prev_n)
      throw NonMonotoneSpec("EpsSpec: counting target fails to increase");
    prev_eps = e;
    prev_n = nt;
  }
}

// ---------------------------------------------------------------------------
// regular zeros
// ---------------------------------------------------------------------------

ZeroDistribution regular_zeros(const EpsSpec& spec, double max_lr) {
  spec.validate(spec.domain_min_lr(), max_lr);
  const double total = spec.n_target(max_lr);
  if (!(total >= 1.0)) return ExplicitZeros{};
  if (total > 5e6)
    throw NonMonotoneSpec("regular_zeros: target count too large to enumerate");

  ExplicitZeros out;
  const int n_total = static_cast<int>(std::floor(total * (1.0 + 1e-14)));
  out.log_t.reserve(n_total);
  out.mult.assign(n_total, 1);
  double lo = std::min(0.0, spec.domain_min_lr()) - 60.0;
  for (int n = 1; n <= n_total; ++n) {
    const double lt = bisect_rising(
        [&](double lr) { return spec.n_target(lr); }, lo, max_lr,
        static_cast<double>(n), 160);
    out.log_t.push_back(lt);
    lo = lt;  // targets are increasing
  }
  out.validate();
  return out;
}

EntireProductFunction regular_family(const EpsSpec& spec, double log_c) {
  spec.validate(spec.domain_min_lr(), spec.domain_min_lr() + 60.0);
  auto f = atomic_from_target([spec](double lr) { return spec.n_target(lr); },
                              std::min(0.0, spec.domain_min_lr()) - 60.0,
                              0.5, log_c);
  return f;
}

// ---------------------------------------------------------------------------
// band recurrences
// ---------------------------------------------------------------------------

BandSequence minimal_type_bands(const DeltaSpec& delta, double seed_log_a0,
                                double seed_log_b0, int n_bands, double p) {
  if (!(seed_log_a0 >= 0.0 && seed_log_a0 < seed_log_b0))
    throw SpecParseError("minimal_type_bands: need 0 <= log_a0 < log_b0");
  if (n_bands < 1) throw SpecParseError("minimal_type_bands: n_bands >= 1");
  if (!(p >= 2.0)) throw SpecParseError("minimal_type_bands: p >= 2 required");
  if (delta.kind == DeltaSpec::Kind::PowerLaw && !(delta.gamma > 0.0))
    throw NonMonotoneSpec("minimal_type_bands: delta must strictly decrease");

  BandSequence seq;
  seq.kind = BandKind::MinimalType;
  seq.moderation_exponent = p;
  seq.delta_spec = delta;
  seq.requested_bands = n_bands;
  seq.bands.push_back(Band{seed_log_a0, seed_log_b0, 0, 0, false, false});

  while (static_cast<int>(seq.bands.size()) < n_bands) {
    const Band& prev = seq.bands.back();
    if (prev.b_two_level) {
      seq.hit_overflow_horizon = true;
      break;
    }
    const double lb = prev.log_b;

    // delta(a/2) <= log b / (40 b), solved for log a in log space
    const double log_thresh = std::log(lb) - lb - std::log(40.0);
    const double log_lr_bound = delta.log_invert_threshold(log_thresh);

    Band next;
    const double cand_p = p * lb;
    if (log_lr_bound <= 700.0) {
      next.log_a = std::max(cand_p, std::log(2.0) + std::exp(log_lr_bound));
    } else {
      // the delta-driven bound itself exceeds double range
      next.log_log_a = std::max(std::log(cand_p), log_lr_bound);
      next.a_two_level = true;
      next.log_a = 1e308;
    }

    const double log_la = next.a_two_level ? next.log_log_a : std::log(next.log_a);
    const double log_lb_next = lb - std::log(lb) + log_la;
    if (log_lb_next <= 700.0) {
      next.log_b = std::exp(log_lb_next);
      if (next.a_two_level) {
        // cannot happen for p >= 2 (log b' >= log a'), guard anyway
        seq.hit_overflow_horizon = true;
        break;
      }
    } else {
      next.log_log_b = log_lb_next;
      next.b_two_level = true;
      next.log_b = 1e308;
    }
    seq.bands.push_back(next);
  }
  if (static_cast<int>(seq.bands.size()) < n_bands)
    seq.hit_overflow_horizon = true;
  return seq;
}

BandSequence lower_order_half_bands(double seed_log_a0, double seed_log_b0,
                                    int n_bands) {
  if (!(seed_log_a0 >= 0.0 && seed_log_a0 < seed_log_b0))
    throw SpecParseError("lower_order_half_bands: need 0 <= log_a0 < log_b0");
  if (n_bands < 1) throw SpecParseError("lower_order_half_bands: n_bands >= 1");

  BandSequence seq;
  seq.kind = BandKind::LowerOrderHalf;
  seq.moderation_exponent = 2.0;  // a_{n+1}/b_n ratio
  seq.requested_bands = n_bands;
  seq.bands.push_back(Band{seed_log_a0, seed_log_b0, 0, 0, false, false});

  while (static_cast<int>(seq.bands.size()) < n_bands) {
    const Band& prev = seq.bands.back();
    if (prev.b_two_level) {
      seq.hit_overflow_horizon = true;
      break;
    }
    const double lb = prev.log_b;
    const double gap = lb - prev.log_a;

    Band next;
    next.log_a = std::log(2.0) + lb;
    // gap rule: doubles, but at least sqrt(2 b_n) = e^{(log 2 + lb)/2}
    const double half_exponent = 0.5 * (std::log(2.0) + lb);
    double g_next;
    if (half_exponent <= 700.0) {
      g_next = std::max(2.0 * gap, std::exp(half_exponent));
    } else {
      next.log_log_b = half_exponent;  // gap dominates everything else
      next.b_two_level = true;
      next.log_b = 1e308;
      seq.bands.push_back(next);
      continue;
    }
    if (next.log_a + g_next > 1.5e308) {
      next.log_log_b = std::log(g_next);
      next.b_two_level = true;
      next.log_b = 1e308;
    } else {
      next.log_b = next.log_a + g_next;
    }
    seq.bands.push_back(next);
  }
  if (static_cast<int>(seq.bands.size()) < n_bands)
    seq.hit_overflow_horizon = true;
  return seq;
}

// ---------------------------------------------------------------------------
// realization
// ---------------------------------------------------------------------------

namespace {

DeltaSpec effective_count_delta(const BandSequence& seq,
                                const DensityRule& rule) {
  if (rule.count_delta) return *rule.count_delta;
  if (seq.delta_spec) return *seq.delta_spec;
  return DeltaSpec{};  // 1/log r
}

}  // namespace

ZeroDistribution realize_bands(const BandSequence& seq,
                               const DensityRule& rule) {
  if (rule.drop_first < 0)
    throw SpecParseError("realize_bands: drop_first must be nonnegative");

  // representable prefix: level-1 endpoints and in-range cumulative targets
  std::vector<Band> usable;
  for (const Band& b : seq.bands) {
    if (!b.fully_representable()) break;
    usable.push_back(b);
  }
  if (usable.empty())
    throw SpecParseError("realize_bands: no representable bands");

  const DeltaSpec cd = effective_count_delta(seq, rule);
  std::vector<double> counts;
  if (rule.explicit_counts) {
    if (rule.explicit_counts->size() < usable.size())
      usable.resize(rule.explicit_counts->size());
    for (std::size_t i = 0; i < usable.size(); ++i) {
      const auto c = (*rule.explicit_counts)[i];
      if (c < 1) throw SpecParseError("realize_bands: band count must be >= 1");
      counts.push_back(static_cast<double>(c));
    }
  } else {
    double cum_prev = 0.0;
    for (std::size_t i = 0; i < usable.size(); ++i) {
      const double lb = usable[i].log_b;
      const double log_target = (0.5 - cd.value(lb)) * lb;
      if (log_target > 700.0) {
        usable.resize(i);  // counts beyond double range: evaluable horizon
        break;
      }
      const double target = std::exp(log_target);
      const double c = std::max(1.0, std::round(target - cum_prev));
      counts.push_back(c);
      cum_prev = std::max(cum_prev, target);
    }
    if (usable.empty())
      throw SpecParseError("realize_bands: first band count not representable");
  }

  double total = 0.0;
  for (double c : counts) total += c;

  if (total <= static_cast<double>(rule.enumeration_budget)) {
    BandedZeros out;
    out.shape = rule.shape;
    out.drop_first = rule.drop_first;
    for (std::size_t i = 0; i < usable.size(); ++i)
      out.bands.push_back({usable[i].log_a, usable[i].log_b,
                           static_cast<std::int64_t>(counts[i])});
    out.validate();
    return out;
  }

  if (rule.drop_first > 0)
    throw SpecParseError(
        "realize_bands: drop_first requires an enumerable realization");

  // continuum counting model with the same per-band masses
  struct Seg {
    double log_a, log_b, count, cum_before;
  };
  auto segs = std::make_shared<std::vector<Seg>>();
  double cum = 0.0;
  for (std::size_t i = 0; i < usable.size(); ++i) {
    segs->push_back({usable[i].log_a, usable[i].log_b, counts[i], cum});
    cum += counts[i];
  }
  const double cum_total = cum;
  const BandShape shape = rule.shape;

  AnalyticCounting ac;
  ac.lr_first = usable.front().log_a;
  ac.lr_saturated = usable.back().log_b;
  ac.order_bound = 0.9;  // unused: the saturation radius bounds the tail
  ac.atomic = false;
  for (const Band& b : usable) {
    ac.breakpoints.push_back(b.log_a);
    ac.breakpoints.push_back(b.log_b);
  }
  ac.n_of_lr = [segs, cum_total, shape](double lr) {
    double n = 0.0;
    for (const Seg& s : *segs) {
      if (lr < s.log_a) return n;
      if (lr >= s.log_b) {
        n = s.cum_before + s.count;
        continue;
      }
      return s.cum_before +
             s.count * band_mass_fraction(s.log_a, s.log_b, shape, lr);
    }
    (void)cum_total;
    return n;
  };
  ac.lt_of_mass = [segs, shape](double nu) {
    for (const Seg& s : *segs) {
      if (nu <= s.cum_before + s.count || &s == &segs->back()) {
        const double q = std::clamp((nu - s.cum_before) / s.count, 0.0, 1.0);
        return band_quantile(s.log_a, s.log_b, shape, q);
      }
    }
    return segs->back().log_b;
  };
  return ac;
}

// ---------------------------------------------------------------------------
// verification
// ---------------------------------------------------------------------------

namespace {

bool fail(std::string* detail, const std::string& msg) {
  if (detail) *detail = msg;
  return false;
}

}  // namespace

bool verify_band_recurrences(const BandSequence& seq, double rel_tol,
                             std::string* detail) {
  if (seq.bands.empty()) return fail(detail, "empty band sequence");
  // interlacing on the representable prefix
  for (std::size_t i = 0; i < seq.bands.size(); ++i) {
    const Band& b = seq.bands[i];
    if (!b.fully_representable()) break;
    if (!(b.log_a < b.log_b)) return fail(detail, "band endpoints out of order");
    if (i > 0 && seq.bands[i - 1].fully_representable() &&
        !(seq.bands[i - 1].log_b < b.log_a))
      return fail(detail, "bands overlap");
  }

  const double p = seq.moderation_exponent;
  for (std::size_t i = 0; i + 1 < seq.bands.size(); ++i) {
    const Band& cur = seq.bands[i];
    const Band& nxt = seq.bands[i + 1];
    if (!cur.fully_representable() || nxt.a_two_level || nxt.b_two_level)
      break;  // two-level entries carry only the log-log value
    const double lb = cur.log_b;

    if (seq.kind == BandKind::MinimalType) {
      if (nxt.log_a + rel_tol * std::abs(nxt.log_a) < p * lb)
        return fail(detail, "log a_{n+1} >= p log b_n violated");
      if (seq.delta_spec) {
        const double lhs = seq.delta_spec->log_value(nxt.log_a - std::log(2.0));
        const double rhs = std::log(lb) - lb - std::log(40.0);
        if (lhs > rhs + 1e-9)
          return fail(detail, "delta(a_{n+1}/2) <= log b_n/(40 b_n) violated");
      }
      const double expect = lb - std::log(lb) + std::log(nxt.log_a);
      const double got = std::log(nxt.log_b);
      if (std::abs(got - expect) > rel_tol * std::max(1.0, std::abs(expect)))
        return fail(detail, "log b_{n+1} = (b_n/log b_n) log a_{n+1} violated");
    } else {
      if (std::abs(nxt.log_a - (std::log(2.0) + lb)) >
          rel_tol * std::max(1.0, std::abs(nxt.log_a)))
        return fail(detail, "a_{n+1} = 2 b_n violated");
      const double gap_cur = lb - cur.log_a;
      const double gap_next = nxt.log_b - nxt.log_a;
      if (!(gap_next > gap_cur))
        return fail(detail, "b_n/a_n fails to increase");
      // sqrt(2 b_n) <= log b_{n+1}
      if (0.5 * (std::log(2.0) + lb) > std::log(nxt.log_b) + 1e-12)
        return fail(detail, "sqrt(2 b_n) <= log b_{n+1} violated");
    }
  }
  return true;
}

}  // namespace minmod
