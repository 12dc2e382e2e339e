#include "doctest.h"

#include <cmath>
#include <random>

#include "minmod/constructors.hpp"
#include "minmod/product_model.hpp"

using namespace minmod;

TEST_CASE("regular zeros: constant eps = 1/6 gives cubes") {
  EpsSpec spec;
  spec.kind = EpsSpec::Kind::Constant;
  spec.eps0 = 1.0 / 6.0;
  auto dist = regular_zeros(spec, std::log(2e4));
  const auto& z = std::get<ExplicitZeros>(dist);
  REQUIRE(z.log_t.size() >= 25);
  for (int n = 1; n <= 25; ++n)
    CHECK(z.log_t[n - 1] == doctest::Approx(3.0 * std::log(n)).epsilon(1e-9));
}

TEST_CASE("regular zeros: eps = 0.01 gives the 1/0.49 power") {
  EpsSpec spec;
  spec.kind = EpsSpec::Kind::Constant;
  spec.eps0 = 0.01;
  auto dist = regular_zeros(spec, 4.0);
  const auto& z = std::get<ExplicitZeros>(dist);
  REQUIRE(z.log_t.size() >= 2);
  CHECK(z.log_t[1] == doctest::Approx(std::log(2.0) / 0.49).epsilon(1e-9));
}

TEST_CASE("regular zeros: iterated-log family counting") {
  EpsSpec spec;
  spec.kind = EpsSpec::Kind::IteratedLog;
  spec.alpha = 1.0;
  spec.beta = 1.0;
  spec.depth = 2;
  // n(r) = r^{1/2}/log r; at lr = 10 the target is e^5/10 = 14.84
  CHECK(spec.n_target(10.0) == doctest::Approx(14.84).epsilon(1e-3));
  auto dist = regular_zeros(spec, 10.0);
  EntireProductFunction f{0.0, dist};
  const double count = count_zeros_up_to(f, 10.0);
  CHECK(count >= 14.0);
  CHECK(count <= 15.0);
}

TEST_CASE("regular zeros: counting matches the target within 1") {
  EpsSpec spec;
  spec.kind = EpsSpec::Kind::IteratedLog;
  auto dist = regular_zeros(spec, 18.0);
  EntireProductFunction f{0.0, dist};
  std::mt19937 rng(51);
  std::uniform_real_distribution<double> ur(spec.domain_min_lr(), 18.0);
  for (int i = 0; i < 100; ++i) {
    const double lr = ur(rng);
    CHECK(std::abs(count_zeros_up_to(f, lr) - spec.n_target(lr)) <= 1.0);
  }
}

TEST_CASE("minimal-type bands reproduce the reference recurrence") {
  DeltaSpec delta;  // 1/log r
  auto seq = minimal_type_bands(delta, 1.0, 2.0, 3, 10.0);
  REQUIRE(seq.bands.size() >= 2);

  // independent recompute: delta(a1/2) <= log b0/(40 b0) inverts to
  // log(a1/2) >= 40 b0 / log b0
  const double la1_ind = std::log(2.0) + 40.0 * std::exp(2.0) / 2.0;
  const double lb1_ind = (std::exp(2.0) / 2.0) * la1_ind;
  CHECK(seq.bands[1].log_a == doctest::Approx(la1_ind).epsilon(1e-9));
  CHECK(seq.bands[1].log_b == doctest::Approx(lb1_ind).epsilon(1e-9));
  CHECK(seq.bands[1].log_a == doctest::Approx(148.474).epsilon(1e-4));

  std::string why;
  CHECK(verify_band_recurrences(seq, 1e-12, &why));

  // interlacing is forced by p >= 2
  auto seq2 = minimal_type_bands(delta, 1.0, 2.0, 3, 2.0);
  for (std::size_t i = 0; i + 1 < seq2.bands.size(); ++i) {
    if (!seq2.bands[i + 1].fully_representable()) break;
    CHECK(seq2.bands[i].log_b < seq2.bands[i + 1].log_a);
  }
}

TEST_CASE("constant delta is rejected") {
  DeltaSpec delta;
  delta.kind = DeltaSpec::Kind::PowerLaw;
  delta.gamma = 0.0;  // r^0: not decreasing
  CHECK_THROWS_AS(minimal_type_bands(delta, 1.0, 2.0, 3, 10.0),
                  NonMonotoneSpec);
}

TEST_CASE("minimal-type bands hit the overflow horizon") {
  DeltaSpec delta;
  auto seq = minimal_type_bands(delta, 1.0, 2.0, 8, 10.0);
  CHECK(seq.hit_overflow_horizon);
  CHECK(static_cast<int>(seq.bands.size()) < 8);
  CHECK(seq.representable_count() >= 2);
  // the first non-representable entry still records log log b
  bool saw_two_level = false;
  for (const auto& b : seq.bands) saw_two_level |= b.b_two_level;
  CHECK(saw_two_level);
}

TEST_CASE("lower-order-half bands") {
  auto seq = lower_order_half_bands(0.0, 1.0, 6);
  REQUIRE(seq.bands.size() >= 3);
  CHECK(seq.bands[1].log_a == doctest::Approx(1.0 + std::log(2.0)).epsilon(1e-12));
  const double g1 = std::max(2.0, std::sqrt(2.0 * std::exp(1.0)));
  CHECK(seq.bands[1].log_b ==
        doctest::Approx(1.0 + std::log(2.0) + g1).epsilon(1e-12));
  CHECK(seq.bands[1].log_b == doctest::Approx(4.0248).epsilon(1e-4));

  // gaps strictly increase; a_{n+1} = 2 b_n exactly
  for (std::size_t i = 0; i + 1 < seq.bands.size(); ++i) {
    const auto& cur = seq.bands[i];
    const auto& nxt = seq.bands[i + 1];
    if (!nxt.fully_representable()) break;
    CHECK(nxt.log_a == doctest::Approx(cur.log_b + std::log(2.0)).epsilon(1e-12));
    CHECK(nxt.log_b - nxt.log_a > cur.log_b - cur.log_a);
    // sufficient growth-cap condition sqrt(2 b_n) <= log b_{n+1}
    CHECK(0.5 * (std::log(2.0) + cur.log_b) <= std::log(nxt.log_b) + 1e-12);
  }
  std::string why;
  CHECK(verify_band_recurrences(seq, 1e-12, &why));
}

TEST_CASE("realize_bands: uniform-log midpoints") {
  BandSequence seq;
  seq.bands.push_back(Band{0.0, 1.0, 0, 0, false, false});
  DensityRule rule;
  rule.shape = BandShape::UniformLog;
  rule.explicit_counts = std::vector<std::int64_t>{3};
  auto dist = realize_bands(seq, rule);
  const auto& bz = std::get<BandedZeros>(dist);
  REQUIRE(bz.bands.size() == 1);
  CHECK(bz.bands[0].count == 3);
  // zeros at e^{1/6}, e^{1/2}, e^{5/6}
  CHECK(band_quantile(0.0, 1.0, BandShape::UniformLog, 0.5 / 3.0) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(band_quantile(0.0, 1.0, BandShape::UniformLog, 1.5 / 3.0) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(band_quantile(0.0, 1.0, BandShape::UniformLog, 2.5 / 3.0) ==
        doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  EntireProductFunction f{0.0, dist};
  CHECK(count_zeros_up_to(f, 1.0 / 6.0 + 1e-9) == 1.0);
  CHECK(count_zeros_up_to(f, 0.5 + 1e-9) == 2.0);
  CHECK(count_zeros_up_to(f, 5.0 / 6.0 + 1e-9) == 3.0);
}

TEST_CASE("realize_bands: counts step band by band") {
  BandSequence seq;
  seq.bands.push_back(Band{0.0, 1.0, 0, 0, false, false});
  seq.bands.push_back(Band{2.0, 3.0, 0, 0, false, false});
  DensityRule rule;
  rule.explicit_counts = std::vector<std::int64_t>{2, 4};
  auto dist = realize_bands(seq, rule);
  EntireProductFunction f{0.0, dist};
  CHECK(count_zeros_up_to(f, -0.5) == 0.0);
  CHECK(count_zeros_up_to(f, 1.5) == 2.0);
  CHECK(count_zeros_up_to(f, 3.5) == 6.0);
}

TEST_CASE("realize_bands: zeros stay inside bands") {
  DeltaSpec delta;
  delta.kind = DeltaSpec::Kind::PowerLaw;
  delta.gamma = 1.0;
  auto seq = minimal_type_bands(delta, 1.0, 2.0, 3, 2.0);
  DensityRule rule;
  rule.enumeration_budget = 100000;
  auto dist = realize_bands(seq, rule);
  if (const auto* bz = std::get_if<BandedZeros>(&dist)) {
    std::int64_t idx = 0;
    for (const auto& band : bz->bands)
      for (std::int64_t i = 0; i < band.count; ++i, ++idx) {
        const double q = (i + 0.5) / static_cast<double>(band.count);
        const double lt = band_quantile(band.log_a, band.log_b, bz->shape, q);
        CHECK(lt >= band.log_a);
        CHECK(lt <= band.log_b);
      }
  }
  // counting is flat in the gaps
  EntireProductFunction f{0.0, dist};
  const auto& bands = seq.bands;
  for (std::size_t i = 0; i + 1 < bands.size(); ++i) {
    if (!bands[i + 1].fully_representable()) break;
    const double gap_lo = bands[i].log_b + 1e-9;
    const double gap_hi = bands[i + 1].log_a - 1e-9;
    CHECK(count_zeros_up_to(f, gap_lo) ==
          doctest::Approx(count_zeros_up_to(f, gap_hi)).epsilon(1e-12));
  }
}

TEST_CASE("realize_bands: over-budget switches to a counting model") {
  DeltaSpec delta;  // 1/log r: band-1 target count is e^{272}
  auto seq = minimal_type_bands(delta, 1.0, 2.0, 2, 2.0);
  DensityRule rule;
  auto dist = realize_bands(seq, rule);
  CHECK(std::holds_alternative<AnalyticCounting>(dist));
  const auto& ac = std::get<AnalyticCounting>(dist);
  // cumulative count at band-1 end matches the target
  const double lb1 = seq.bands[1].log_b;
  const double want = std::exp((0.5 - 1.0 / lb1) * lb1);
  CHECK(ac.n_of_lr(lb1 + 0.1) == doctest::Approx(want).epsilon(1e-6));
  CHECK(std::isfinite(ac.lr_saturated));
}

TEST_CASE("bad seeds and counts are rejected") {
  DeltaSpec delta;
  CHECK_THROWS_AS(minimal_type_bands(delta, 2.0, 1.0, 3, 10.0), SpecParseError);
  CHECK_THROWS_AS(minimal_type_bands(delta, -1.0, 1.0, 3, 10.0), SpecParseError);
  CHECK_THROWS_AS(lower_order_half_bands(1.0, 0.5, 3), SpecParseError);
  BandSequence seq;
  seq.bands.push_back(Band{0.0, 1.0, 0, 0, false, false});
  DensityRule rule;
  rule.explicit_counts = std::vector<std::int64_t>{0};
  CHECK_THROWS_AS(realize_bands(seq, rule), SpecParseError);
}

TEST_CASE("eps spec validation") {
  EpsSpec bad;
  bad.kind = EpsSpec::Kind::Constant;
  bad.eps0 = 0.6;  // outside (0, 1/2)
  CHECK_THROWS_AS(regular_zeros(bad, 10.0), NonMonotoneSpec);
  EpsSpec bad2;
  bad2.kind = EpsSpec::Kind::IteratedLog;
  bad2.alpha = -1.0;
  CHECK_THROWS_AS(regular_zeros(bad2, 10.0), NonMonotoneSpec);
}
