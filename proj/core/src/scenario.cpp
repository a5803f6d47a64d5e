#include "eol/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace eol {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw ScenarioError("unknown key \"" + it.key() + "\" in " + where);
}

double require_number(const json& obj, const std::string& key,
                      const std::string& where) {
  if (!obj.contains(key))
    throw ScenarioError("missing key \"" + key + "\" in " + where);
  if (!obj[key].is_number())
    throw ScenarioError("key \"" + key + "\" in " + where +
                        " must be a number");
  return obj[key].get<double>();
}

Mat3d require_matrix3(const json& obj, const std::string& key,
                      const std::string& where) {
  if (!obj.contains(key))
    throw ScenarioError("missing key \"" + key + "\" in " + where);
  const json& m = obj[key];
  if (!m.is_array() || m.size() != 3)
    throw ScenarioError("key \"" + key + "\" in " + where +
                        " must be a 3x3 array");
  Mat3d out{};
  for (int i = 0; i < 3; ++i) {
    if (!m[i].is_array() || m[i].size() != 3)
      throw ScenarioError("key \"" + key + "\" in " + where +
                          " must be a 3x3 array");
    for (int j = 0; j < 3; ++j) {
      if (!m[i][j].is_number())
        throw ScenarioError("key \"" + key + "\" in " + where +
                            " must contain numbers");
      out[i][j] = m[i][j].get<double>();
    }
  }
  return out;
}

json matrix3_to_json(const Mat3d& m) {
  json out = json::array();
  for (int i = 0; i < 3; ++i) {
    json row = json::array();
    for (int j = 0; j < 3; ++j) row.push_back(m[i][j]);
    out.push_back(row);
  }
  return out;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ScenarioError("top level must be an object");
  reject_unknown(root,
                 {"schema", "group", "orbifold", "bubble", "quadrature_order",
                  "tolerance"},
                 "top level");
  if (!root.contains("schema") || root["schema"] != "eol/1")
    throw ScenarioError("key \"schema\" must be \"eol/1\"");
  if (!root.contains("group") || !root["group"].is_object())
    throw ScenarioError("missing object key \"group\"");
  if (!root.contains("orbifold") || !root["orbifold"].is_object())
    throw ScenarioError("missing object key \"orbifold\"");
  if (!root.contains("bubble") || !root["bubble"].is_object())
    throw ScenarioError("missing object key \"bubble\"");

  Scenario s;

  const json& grp = root["group"];
  reject_unknown(grp, {"kind", "order"}, "group");
  if (!grp.contains("kind") || grp["kind"] != "cyclic")
    throw ScenarioError("key \"kind\" in group must be \"cyclic\"");
  double go = require_number(grp, "order", "group");
  if (go < 1 || go != static_cast<int>(go))
    throw ScenarioError("key \"order\" in group must be a positive integer");
  s.group_order = static_cast<int>(go);

  const json& orb = root["orbifold"];
  reject_unknown(orb, {"lambda", "w_plus", "w_minus"}, "orbifold");
  s.orbifold.lambda = require_number(orb, "lambda", "orbifold");
  s.orbifold.w_plus = require_matrix3(orb, "w_plus", "orbifold");
  s.orbifold.w_minus = require_matrix3(orb, "w_minus", "orbifold");

  const json& bub = root["bubble"];
  reject_unknown(bub, {"h_plus", "h_minus", "gauge"}, "bubble");
  s.bubble.h_plus = require_matrix3(bub, "h_plus", "bubble");
  s.bubble.h_minus = require_matrix3(bub, "h_minus", "bubble");
  if (!bub.contains("gauge") || !bub["gauge"].is_string())
    throw ScenarioError("missing string key \"gauge\" in bubble");
  std::string gauge = bub["gauge"].get<std::string>();
  if (gauge == "cmc")
    s.bubble.gauge = Gauge::CMC;
  else if (gauge == "volume")
    s.bubble.gauge = Gauge::Volume;
  else
    throw ScenarioError("key \"gauge\" in bubble must be \"cmc\" or \"volume\"");

  if (root.contains("quadrature_order")) {
    double qo = require_number(root, "quadrature_order", "top level");
    if (qo < 1 || qo != static_cast<int>(qo))
      throw ScenarioError("key \"quadrature_order\" must be a positive integer");
    s.quadrature_order = static_cast<int>(qo);
  }
  if (root.contains("tolerance")) {
    s.tolerance = require_number(root, "tolerance", "top level");
    if (!(s.tolerance > 0)) throw ScenarioError("key \"tolerance\" must be > 0");
  }

  try {
    validate(s.orbifold);
    validate(s.bubble);
  } catch (const PreconditionViolated& e) {
    throw ScenarioError(std::string("invalid scenario data: ") + e.what());
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

namespace {

json scenario_json(const Scenario& s) {
  json root;
  root["schema"] = "eol/1";
  root["group"] = {{"kind", "cyclic"}, {"order", s.group_order}};
  root["orbifold"] = {{"lambda", s.orbifold.lambda},
                      {"w_plus", matrix3_to_json(s.orbifold.w_plus)},
                      {"w_minus", matrix3_to_json(s.orbifold.w_minus)}};
  root["bubble"] = {
      {"h_plus", matrix3_to_json(s.bubble.h_plus)},
      {"h_minus", matrix3_to_json(s.bubble.h_minus)},
      {"gauge", s.bubble.gauge == Gauge::CMC ? "cmc" : "volume"}};
  root["quadrature_order"] = s.quadrature_order;
  root["tolerance"] = s.tolerance;
  return root;
}

}  // namespace

std::string scenario_to_json(const Scenario& s) {
  return scenario_json(s).dump(2);
}

std::string report_to_json(const Scenario& s, const ObstructionReport& rep,
                           double seconds) {
  json root;
  root["schema"] = "eol/1";
  root["scenario"] = scenario_json(s);
  root["obstructions"] = {
      {"radial", rep.radial},
      {"killing_plus", {rep.killing_plus[0], rep.killing_plus[1],
                        rep.killing_plus[2]}},
      {"killing_minus", {rep.killing_minus[0], rep.killing_minus[1],
                         rep.killing_minus[2]}},
      {"closed_form", rep.closed_form}};
  root["verdict"] = to_string(rep.verdict);
  root["tolerance"] = rep.tolerance;
  root["max_precondition_residual"] = rep.max_precondition_residual;
  root["seconds"] = seconds;
  return root.dump(2);
}

}  // namespace eol
