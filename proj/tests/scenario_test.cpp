#include <string>

#include "doctest.h"
#include "eol/scenario.hpp"

using namespace eol;

namespace {

const char* kValid = R"({
  "schema": "eol/1",
  "group": {"kind": "cyclic", "order": 2},
  "orbifold": {
    "lambda": 3.0,
    "w_plus": [[0.2, 0, 0], [0, -0.1, 0], [0, 0, -0.1]],
    "w_minus": [[0, 0, 0], [0, 0, 0], [0, 0, 0]]
  },
  "bubble": {
    "h_plus": [[-0.5, 0, 0], [0, 0, 0], [0, 0, 0]],
    "h_minus": [[0, 0, 0], [0, 0, 0], [0, 0, 0]],
    "gauge": "volume"
  }
})";

std::string patched(const std::string& from, const std::string& to) {
  std::string s = kValid;
  auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  s.replace(pos, from.size(), to);
  return s;
}

}  // namespace

TEST_CASE("valid scenario parses with defaults") {
  Scenario s = parse_scenario(kValid);
  CHECK(s.group_order == 2);
  CHECK(s.orbifold.lambda == 3.0);
  CHECK(s.orbifold.w_plus[0][0] == 0.2);
  CHECK(s.bubble.h_plus[0][0] == -0.5);
  CHECK(s.bubble.gauge == Gauge::Volume);
  CHECK(s.quadrature_order == 24);
  CHECK(s.tolerance == 1e-8);
}

TEST_CASE("scenario json round trip") {
  Scenario s = parse_scenario(kValid);
  s.quadrature_order = 10;
  s.tolerance = 1e-6;
  Scenario t = parse_scenario(scenario_to_json(s));
  CHECK(t.group_order == s.group_order);
  CHECK(t.orbifold.lambda == s.orbifold.lambda);
  CHECK(t.quadrature_order == 10);
  CHECK(t.tolerance == 1e-6);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(t.orbifold.w_plus[i][j] == s.orbifold.w_plus[i][j]);
      CHECK(t.bubble.h_plus[i][j] == s.bubble.h_plus[i][j]);
    }
}

TEST_CASE("malformed input is rejected with a scenario error") {
  CHECK_THROWS_AS((void)parse_scenario("not json"), ScenarioError);
  CHECK_THROWS_AS((void)parse_scenario("[1,2,3]"), ScenarioError);
  CHECK_THROWS_AS((void)parse_scenario(patched("\"eol/1\"", "\"eol/2\"")),
                  ScenarioError);
  CHECK_THROWS_AS((void)parse_scenario(patched("\"cyclic\"", "\"dihedral\"")),
                  ScenarioError);
  CHECK_THROWS_AS((void)parse_scenario(patched("\"volume\"", "\"harmonic\"")),
                  ScenarioError);
  CHECK_THROWS_AS((void)parse_scenario(patched("\"order\": 2", "\"order\": 2.5")),
                  ScenarioError);
  // unknown keys anywhere are rejected
  CHECK_THROWS_AS(
      (void)parse_scenario(patched("\"schema\"", "\"extra\": 1, \"schema\"")),
      ScenarioError);
  CHECK_THROWS_AS(
      (void)parse_scenario(patched("\"lambda\"", "\"lam\": 0, \"lambda\"")),
      ScenarioError);
  // missing required block
  CHECK_THROWS_AS(
      (void)parse_scenario(
          R"({"schema": "eol/1", "group": {"kind": "cyclic", "order": 2}})"),
      ScenarioError);
}

TEST_CASE("scenario data invariants are enforced at parse time") {
  // w_plus with a trace violates the orbifold invariant
  CHECK_THROWS_AS((void)parse_scenario(patched("-0.1, 0], [0, 0, -0.1]",
                                               "0.1, 0], [0, 0, -0.1]")),
                  ScenarioError);
  // positive volume-gauge trace sum violates the bubble invariant
  CHECK_THROWS_AS((void)parse_scenario(patched("[[-0.5, 0, 0]", "[[0.5, 0, 0]")),
                  ScenarioError);
}

TEST_CASE("missing scenario file reports the path") {
  try {
    (void)load_scenario("/nonexistent/path/scenario.json");
    FAIL("expected ScenarioError");
  } catch (const ScenarioError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/path/scenario.json") !=
          std::string::npos);
  }
}

TEST_CASE("report serialization carries schema and verdict") {
  Scenario s = parse_scenario(kValid);
  ObstructionReport rep;
  rep.radial = -1.25;
  rep.verdict = Verdict::Obstructed;
  std::string out = report_to_json(s, rep, 0.5);
  CHECK(out.find("\"schema\": \"eol/1\"") != std::string::npos);
  CHECK(out.find("OBSTRUCTED") != std::string::npos);
  CHECK(out.find("radial") != std::string::npos);
  CHECK(out.find("closed_form") != std::string::npos);
}
