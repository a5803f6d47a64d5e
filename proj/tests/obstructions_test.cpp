#include <cmath>
#include <string>

#include "doctest.h"
#include "eol/obstructions.hpp"
#include "eol/verify.hpp"

using namespace eol;

TEST_CASE("calabi scalar obstruction formula") {
  CHECK(calabi_obstruction({{0.0, 0.0}, {0.0, 0.0}}, {1.0, 1.0}, 0.0, 4) == 0.0);
  // curvature operator of the unit round 4-sphere on 2-forms: scal/12 * Id
  double scal = 12.0;
  std::vector<std::vector<double>> rop(6, std::vector<double>(6, 0.0));
  for (int i = 0; i < 6; ++i) rop[i][i] = scal / 12.0;
  std::vector<double> om = {0.3, -0.4, 0.5, 0.1, -0.2, 0.6};
  double n2 = 0.0;
  for (double v : om) n2 += v * v;
  double got = calabi_obstruction(rop, om, scal, 4);
  CHECK(got == doctest::Approx(4.0 * (scal / 12.0) * n2 + 4.0 * scal).epsilon(1e-14));
  CHECK(got > 0.0);
}

TEST_CASE("verdict names") {
  CHECK(std::string(to_string(Verdict::Obstructed)) == "OBSTRUCTED");
  CHECK(std::string(to_string(Verdict::NotObstructedAtFirstOrder)) ==
        "NOT OBSTRUCTED AT FIRST ORDER");
}

TEST_CASE("second-variation flux requires an asymptotic-type argument") {
  OrbifoldPointData d;
  d.lambda = 0.5;
  d.w_plus[0][1] = d.w_plus[1][0] = 0.3;
  SymTensorField a = h2_from_curvature(d);
  d.lambda = -0.2;
  SymTensorField b = h2_from_curvature(d);
  CHECK_THROWS_AS((void)ric2_flux(a, b, radial_field(), 1.0, group_trivial(), 6),
                  PreconditionViolated);
}

TEST_CASE("second-variation tensor validates its coefficients") {
  BubbleAsymptotics bad;
  bad.gauge = Gauge::CMC;
  bad.h_plus[0][0] = 1.0;  // not traceless
  OrbifoldPointData d;
  d.lambda = 1.0;
  SymTensorField h2 = h2_from_curvature(d);
  CHECK_THROWS_AS((void)ric2_tensor(bad, h2, Point{1, 0, 0, 0}),
                  PreconditionViolated);
  BubbleAsymptotics ok = eguchi_hanson_bubble();
  CHECK_THROWS_AS((void)ric2_tensor(ok, h2, Point{0, 0, 0, 0}),
                  OriginEvaluation);
}

TEST_CASE("conformal quantities require a linearized einstein input") {
  SymTensorField bad = SymTensorField([](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    Mat4T<S> h{};
    h[0][0] = x[1] * x[1] * x[1];
    return h;
  });
  CHECK_THROWS_AS((void)conformal_second(bad, 1.0, group_trivial(), 6),
                  PreconditionViolated);
}

TEST_CASE("polarized flux is symmetric in its two arguments") {
  OrbifoldPointData d;
  d.lambda = 0.4;
  d.w_plus[0][0] = 0.5;
  d.w_plus[1][1] = -0.25;
  d.w_plus[2][2] = -0.25;
  SymTensorField h2 = h2_from_curvature(d);
  SymTensorField h4 = h4_from_asymptotics(eguchi_hanson_bubble());
  TaubInput ab{h2, h4, killing_field(Sign::Plus, 0), 1.0, group_cyclic(2), 10};
  TaubInput ba{h4, h2, killing_field(Sign::Plus, 0), 1.0, group_cyclic(2), 10};
  double vab = taub_quantity(ab);
  double vba = taub_quantity(ba);
  CHECK(vab == doctest::Approx(vba).epsilon(1e-10));
}

TEST_CASE("spherical orbifold data obstructs the eguchi-hanson bubble") {
  OrbifoldPointData d;
  d.lambda = 3.0;
  ObstructionReport rep = desingularization_check(d, eguchi_hanson_bubble(),
                                                  group_cyclic(2), 1e-8, 8);
  CHECK(rep.verdict == Verdict::Obstructed);
  CHECK(rep.radial < -1e-3);
  CHECK(rep.closed_form < 0.0);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::fabs(rep.killing_plus[i]) < 1e-8);
    CHECK(std::fabs(rep.killing_minus[i]) < 1e-8);
  }
  CHECK(rep.max_precondition_residual < 1e-8);
}

TEST_CASE("verification checks are filterable and deterministic") {
  auto r1 = run_verification("quadrature.moments", 8);
  REQUIRE(r1.size() == 1);
  CHECK(r1[0].name == "quadrature.moments");
  CHECK(r1[0].passed);
  auto r2 = run_verification("quadrature.moments", 8);
  CHECK(r1[0].residual == r2[0].residual);
  CHECK(run_verification("no.such.check", 8).empty());
}
