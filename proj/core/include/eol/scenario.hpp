#pragma once

#include <stdexcept>
#include <string>

#include "eol/deformations.hpp"
#include "eol/flat_model.hpp"
#include "eol/obstructions.hpp"

namespace eol {

// malformed or schema-violating scenario input
struct ScenarioError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Scenario {
  int group_order = 2;  // cyclic Z_k
  OrbifoldPointData orbifold{};
  BubbleAsymptotics bubble{};
  int quadrature_order = 24;
  double tolerance = 1e-8;
};

// strict parse: unknown keys rejected, "schema" must be "eol/1"
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

std::string scenario_to_json(const Scenario& s);

// full report serialization: scenario echo, values, verdict, diagnostics
std::string report_to_json(const Scenario& s, const ObstructionReport& rep,
                           double seconds);

}  // namespace eol
