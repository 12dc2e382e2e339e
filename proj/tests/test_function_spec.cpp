#include "doctest.h"

#include "minmod/function_spec.hpp"
#include "minmod/modulus_engine.hpp"

using namespace minmod;
using nlohmann::json;

TEST_CASE("spec round-trips losslessly") {
  FunctionSpec s;
  s.kind = "bands-minimal-type";
  s.delta_spec.kind = DeltaSpec::Kind::PowerLaw;
  s.delta_spec.gamma = 1.5;
  s.seed_log_a0 = 1.0;
  s.seed_log_b0 = 2.0;
  s.n_bands = 4;
  s.moderation_p = 2.0;
  s.density.shape = BandShape::UniformLog;
  s.density.enumeration_budget = 1234;
  s.log_c = 0.75;
  EvalSettings es;
  es.rel_tolerance = 1e-8;
  s.eval_overrides = es;

  const json j = s.to_json();
  FunctionSpec back = FunctionSpec::from_json(j);
  CHECK(back.to_json().dump() == j.dump());
  CHECK(back.digest() == s.digest());
  CHECK(back.settings().rel_tolerance == 1e-8);
}

TEST_CASE("explicit spec builds and evaluates") {
  const json j = {{"schema", kSpecSchema},
                  {"kind", "explicit"},
                  {"zeros", {1.0, 4.0, 9.0}}};
  FunctionSpec s = FunctionSpec::from_json(j);
  auto f = s.build();
  CHECK(count_zeros_up_to(f, std::log(10.0)) == 3.0);
  // digest is stable across identical parses
  CHECK(s.digest() == FunctionSpec::from_json(j).digest());
}

TEST_CASE("regular spec builds both representations") {
  json j = {{"kind", "regular"},
            {"eps", {{"kind", "constant"}, {"eps", 1.0 / 6.0}}},
            {"max_log_r", 12.0}};
  auto s = FunctionSpec::from_json(j);
  auto f_analytic = s.build();
  CHECK(std::holds_alternative<AnalyticCounting>(f_analytic.zeros));
  j["representation"] = "explicit";
  auto f_explicit = FunctionSpec::from_json(j).build();
  CHECK(std::holds_alternative<ExplicitZeros>(f_explicit.zeros));
  const double a = log_max_modulus(f_analytic, std::log(50.0));
  const double b = log_max_modulus(f_explicit, std::log(50.0));
  // truncation at e^12 costs ~r Q-tail; both near the same value
  CHECK(a == doctest::Approx(b).epsilon(2e-2));
}

TEST_CASE("parse errors name the offending field") {
  const json bad1 = {{"kind", "explicit"}, {"zeros", {-2.0}}};
  CHECK_THROWS_WITH_AS(FunctionSpec::from_json(bad1),
                       doctest::Contains("zeros"), SpecParseError);

  const json bad2 = {{"kind", "nope"}};
  CHECK_THROWS_WITH_AS(FunctionSpec::from_json(bad2),
                       doctest::Contains("kind"), SpecParseError);

  const json bad3 = {{"kind", "regular"}};
  CHECK_THROWS_WITH_AS(FunctionSpec::from_json(bad3),
                       doctest::Contains("eps"), SpecParseError);

  const json bad4 = {{"kind", "bands-minimal-type"},
                     {"delta", {{"kind", "power"}, {"gamma", -1.0}}}};
  CHECK_THROWS_WITH_AS(FunctionSpec::from_json(bad4),
                       doctest::Contains("gamma"), SpecParseError);
}

TEST_CASE("bundle envelope separates the reproducible part") {
  ResultBundle b;
  b.spec_digest = "abc";
  b.command = "profile";
  b.args = {{"from", 0.0}};
  b.outputs = {{"rows", 3}};
  b.timestamp = "2020-01-01T00:00:00Z";
  ResultBundle c = b;
  c.timestamp = "2021-09-09T09:09:09Z";
  CHECK(b.reproducible_dump() == c.reproducible_dump());
  CHECK(b.to_json().dump() != c.to_json().dump());
}
