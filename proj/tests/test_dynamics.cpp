#include "doctest.h"

#include <cmath>
#include <random>

#include "minmod/dynamics.hpp"
#include "oracles.hpp"

using namespace minmod;

TEST_CASE("trap_check basics") {
  auto fsq = power_law_zeros(2.0);
  CHECK(trap_check(fsq, std::log(2.0)));  // mtilde = 1 <= 2

  auto poly = make_explicit({1.0});
  CHECK(trap_check(poly, std::log(10.0)));  // mtilde(10) = 9 <= 10

  auto fcb = power_law_zeros(3.0);
  CHECK(!trap_check(fcb, std::log(1e6)));  // mtilde(1e6) >> 1e6
}

TEST_CASE("square-zero orbits are trapped") {
  auto fsq = power_law_zeros(2.0);
  auto rec = iterate_modulus(fsq, std::log(2.0), MapKind::Min, 100);
  CHECK(rec.verdict == OrbitVerdict::Trapped);
  for (double v : rec.steps) CHECK(v <= std::log(2.0));
}

TEST_CASE("single-factor orbit walks into the zero") {
  auto poly = make_explicit({1.0});
  auto rec = iterate_modulus(poly, std::log(3.0), MapKind::Min, 100);
  REQUIRE(rec.verdict == OrbitVerdict::HitZero);
  REQUIRE(rec.steps.size() == 3);
  CHECK(rec.steps[0] == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(rec.steps[1] == doctest::Approx(0.0));
  CHECK(is_neg_inf(rec.steps[2]));
}

TEST_CASE("cube-zero orbit escapes from a good start") {
  auto fcb = power_law_zeros(3.0);
  // start at the running-max argmax near r = 1e3
  auto mt = m_tilde(fcb, std::log(1000.0));
  REQUIRE(std::isfinite(mt.argmax_lr));
  auto rec = iterate_modulus(fcb, mt.argmax_lr, MapKind::Min, 50);
  CHECK(rec.verdict == OrbitVerdict::Escaped);
  CHECK(rec.steps.back() >= kDefaultEscapeLogRadius);
  CHECK(rec.steps.size() <= 50);
}

TEST_CASE("max-modulus orbits escape for growing functions") {
  auto fcb = power_law_zeros(3.0);
  auto rec = iterate_modulus(fcb, std::log(1000.0), MapKind::Max, 50);
  CHECK(rec.verdict == OrbitVerdict::Escaped);

  auto poly = make_explicit({1.0});
  auto rec2 =
      iterate_modulus(poly, std::log(2.0), MapKind::Max, 200, std::log(100.0));
  CHECK(rec2.verdict == OrbitVerdict::Escaped);
  // M map on (1+z): r -> 1+r, strictly expanding
  for (std::size_t i = 1; i < rec2.steps.size(); ++i)
    CHECK(rec2.steps[i] > rec2.steps[i - 1]);
}

TEST_CASE("trap soundness: orbits below a certified trap never cross it") {
  auto fsq = power_law_zeros(2.0);
  const double trap_lr = std::log(2.0);
  REQUIRE(trap_check(fsq, trap_lr));
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> ur(std::log(0.01), trap_lr);
  for (int i = 0; i < 60; ++i) {
    const double start = ur(rng);
    auto rec = iterate_modulus(fsq, start, MapKind::Min, 60,
                               kDefaultEscapeLogRadius, EvalSettings{},
                               ScanSettings{}, /*trap_detection=*/false);
    for (double v : rec.steps) {
      if (is_neg_inf(v)) break;
      CHECK(v <= trap_lr + 1e-12);
    }
  }
}

TEST_CASE("orbits are deterministic") {
  auto fcb = power_law_zeros(3.0);
  auto a = iterate_modulus(fcb, std::log(500.0), MapKind::Min, 40);
  auto b = iterate_modulus(fcb, std::log(500.0), MapKind::Min, 40);
  CHECK(a.verdict == b.verdict);
  REQUIRE(a.steps.size() == b.steps.size());
  for (std::size_t i = 0; i < a.steps.size(); ++i)
    CHECK(a.steps[i] == b.steps[i]);
}

TEST_CASE("escape candidate scan") {
  auto fcb = power_law_zeros(3.0);
  auto runs = scan_escape_candidates(fcb, std::log(100.0), std::log(2000.0));
  REQUIRE(!runs.empty());
  bool any_escaped = false;
  for (const auto& [start, rec] : runs)
    any_escaped = any_escaped || rec.verdict == OrbitVerdict::Escaped;
  CHECK(any_escaped);

  auto fsq = power_law_zeros(2.0);
  auto runs2 = scan_escape_candidates(fsq, std::log(2.0), std::log(1000.0));
  for (const auto& [start, rec] : runs2)
    CHECK(rec.verdict != OrbitVerdict::Escaped);
}
