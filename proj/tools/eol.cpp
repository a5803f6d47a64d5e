// Command-line front end: identity verification, obstruction reports,
// curvature block displays, and single Taub-type flux evaluations.

#include <chrono>
#include <cstdio>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "eol/curvature.hpp"
#include "eol/deformations.hpp"
#include "eol/errors.hpp"
#include "eol/obstructions.hpp"
#include "eol/scenario.hpp"
#include "eol/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitPrecondition = 3;

using nlohmann::json;

int run_verify(const std::string& filter, int order, bool as_json) {
  std::vector<eol::CheckResult> results = eol::run_verification(filter, order);
  bool all = true;
  for (const auto& r : results) all = all && r.passed;
  if (as_json) {
    json out;
    out["schema"] = "eol/1";
    out["order"] = order;
    out["filter"] = filter;
    json checks = json::array();
    for (const auto& r : results)
      checks.push_back({{"name", r.name},
                        {"residual", r.residual},
                        {"tolerance", r.tolerance},
                        {"passed", r.passed}});
    out["checks"] = checks;
    out["passed"] = all;
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    std::printf("%-42s %12s %10s  %s\n", "check", "residual", "tolerance",
                "status");
    for (const auto& r : results)
      std::printf("%-42s %12.3e %10.1e  %s\n", r.name.c_str(), r.residual,
                  r.tolerance, r.passed ? "pass" : "FAIL");
    std::printf("%zu checks, %s\n", results.size(),
                all ? "all passed" : "FAILURES PRESENT");
  }
  if (results.empty()) {
    std::fprintf(stderr, "no check matches filter \"%s\"\n", filter.c_str());
    return kExitInput;
  }
  return all ? kExitOk : kExitVerifyFail;
}

int run_obstruct(const std::string& path, bool as_json) {
  eol::Scenario sc = eol::load_scenario(path);
  auto t0 = std::chrono::steady_clock::now();
  eol::ObstructionReport rep = eol::desingularization_check(
      sc.orbifold, sc.bubble, eol::group_cyclic(sc.group_order), sc.tolerance,
      sc.quadrature_order);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t0)
                    .count();
  if (as_json) {
    std::printf("%s\n", eol::report_to_json(sc, rep, secs).c_str());
  } else {
    std::printf("%-18s %22.15e\n", "radial", rep.radial);
    for (int i = 0; i < 3; ++i)
      std::printf("killing y%d+        %22.15e\n", i + 1, rep.killing_plus[i]);
    for (int i = 0; i < 3; ++i)
      std::printf("killing y%d-        %22.15e\n", i + 1, rep.killing_minus[i]);
    std::printf("%-18s %22.15e\n", "closed_form", rep.closed_form);
    std::printf("%-18s %22.15e\n", "max_precondition", rep.max_precondition_residual);
    std::printf("%-18s %.3f s\n", "elapsed", secs);
    std::printf("%s\n", eol::to_string(rep.verdict));
  }
  return kExitOk;
}

int run_curvature(const std::string& path, bool as_json) {
  eol::Scenario sc = eol::load_scenario(path);
  eol::SymTensorField e = eol::euclidean_metric();
  eol::SymTensorField h2 = eol::h2_from_curvature(sc.orbifold);
  eol::SymTensorField h4 = eol::h4_from_asymptotics(sc.bubble);
  // sample away from the unit sphere to expose the r^-6 scaling
  eol::Point p{0.9, 0.4, -0.3, 0.6};
  double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
  double r6 = r2 * r2 * r2;
  eol::SelfdualBlockVariation vb = eol::block_variation(e, h4, p);
  eol::SelfdualBlockVariation vo = eol::block_variation(e, h2, p);
  auto scale3 = [](eol::Mat3 m, double s) {
    for (auto& row : m)
      for (auto& v : row) v *= s;
    return m;
  };
  // bubble blocks carry the r^-6 normalization; orbifold blocks are constant
  eol::Mat3 bp = scale3(vb.plus, r6), bm = scale3(vb.minus, r6);
  eol::Mat3 op = vo.plus_omega, om = vo.minus_omega;
  if (as_json) {
    json out;
    out["schema"] = "eol/1";
    auto mat = [](const eol::Mat3& m) {
      json r = json::array();
      for (const auto& row : m) r.push_back({row[0], row[1], row[2]});
      return r;
    };
    out["bubble"] = {{"normalization", "r6"},
                     {"r_plus", mat(bp)},
                     {"r_minus", mat(bm)}};
    out["orbifold"] = {{"normalization", "constant"},
                       {"r_plus", mat(op)},
                       {"r_minus", mat(om)}};
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    auto print3 = [](const char* title, const eol::Mat3& m) {
      std::printf("%s\n", title);
      for (const auto& row : m)
        std::printf("  %14.8f %14.8f %14.8f\n", row[0], row[1], row[2]);
    };
    print3("bubble r^6 * R+(1):", bp);
    print3("bubble r^6 * R-(1):", bm);
    print3("orbifold R+(1):", op);
    print3("orbifold R-(1):", om);
  }
  return kExitOk;
}

int run_taub(const std::string& path, const std::string& field, double radius) {
  eol::Scenario sc = eol::load_scenario(path);
  eol::VectorField x;
  if (field == "radial") {
    x = eol::radial_field();
  } else if (field.size() == 3 && field[0] == 'y' && field[1] >= '1' &&
             field[1] <= '3' && (field[2] == '+' || field[2] == '-')) {
    x = eol::killing_field(field[2] == '+' ? eol::Sign::Plus : eol::Sign::Minus,
                           field[1] - '1');
  } else {
    throw eol::ScenarioError("unknown field \"" + field +
                             "\"; expected radial or y{1,2,3}{+,-}");
  }
  eol::SymTensorField h = eol::add(eol::h2_from_curvature(sc.orbifold),
                                   eol::h4_from_asymptotics(sc.bubble));
  eol::TaubInput in{h, h, x, radius, eol::group_cyclic(sc.group_order),
                    sc.quadrature_order};
  std::printf("%.15e\n", eol::taub_quantity(in));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Einstein-orbifold desingularization obstruction toolkit"};
  app.require_subcommand(1);

  std::string filter, scenario, field = "radial";
  int order = 24;
  double radius = 1.0;
  bool as_json = false;

  CLI::App* verify = app.add_subcommand("verify", "run the identity suite");
  verify->add_option("--filter", filter, "only checks whose name contains this");
  verify->add_option("--order", order, "quadrature order");
  verify->add_flag("--json", as_json, "machine-readable output");

  CLI::App* obstruct =
      app.add_subcommand("obstruct", "evaluate the obstruction integrals");
  obstruct->add_option("--scenario", scenario, "scenario JSON path")->required();
  obstruct->add_flag("--json", as_json, "machine-readable output");

  CLI::App* curv =
      app.add_subcommand("curvature", "display curvature blocks");
  curv->add_option("--scenario", scenario, "scenario JSON path")->required();
  curv->add_flag("--json", as_json, "machine-readable output");

  CLI::App* taub = app.add_subcommand("taub", "one Taub-type flux");
  taub->add_option("--scenario", scenario, "scenario JSON path")->required();
  taub->add_option("--field", field, "radial or y{1,2,3}{+,-}")->required();
  taub->add_option("--radius", radius, "sphere radius");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }

  try {
    if (verify->parsed()) return run_verify(filter, order, as_json);
    if (obstruct->parsed()) return run_obstruct(scenario, as_json);
    if (curv->parsed()) return run_curvature(scenario, as_json);
    if (taub->parsed()) return run_taub(scenario, field, radius);
  } catch (const eol::ScenarioError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kExitInput;
  } catch (const eol::PreconditionViolated& e) {
    std::fprintf(stderr, "precondition violated: %s\n", e.what());
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  }
  return kExitInput;
}
