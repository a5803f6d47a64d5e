#include <cmath>

#include "doctest.h"
#include "eol/curvature.hpp"
#include "eol/deformations.hpp"

using namespace eol;

namespace {
const Point kP{0.5, -0.7, 0.4, 0.6};
}

TEST_CASE("orbifold data validation") {
  OrbifoldPointData d;
  d.lambda = 1.0;
  CHECK_NOTHROW(validate(d));
  d.w_plus[0][0] = 0.3;  // breaks tracelessness
  CHECK_THROWS_AS(validate(d), PreconditionViolated);
  d.w_plus[0][0] = 0.0;
  d.w_plus[0][1] = 0.2;  // breaks symmetry
  CHECK_THROWS_AS(validate(d), PreconditionViolated);
}

TEST_CASE("bubble data validation per gauge") {
  BubbleAsymptotics b;
  b.gauge = Gauge::CMC;
  b.h_plus[0][0] = 0.4;
  b.h_plus[1][1] = -0.4;
  CHECK_NOTHROW(validate(b));
  b.h_plus[1][1] = 0.0;  // CMC requires traceless coefficients
  CHECK_THROWS_AS(validate(b), PreconditionViolated);
  b.gauge = Gauge::Volume;
  CHECK_THROWS_AS(validate(b), PreconditionViolated);  // positive trace sum
  b.h_plus[0][0] = -0.4;
  CHECK_NOTHROW(validate(b));
  CHECK(reduced_volume(b).value == doctest::Approx(-0.4).epsilon(1e-15));
}

TEST_CASE("kronheimer data from frame vectors") {
  BubbleAsymptotics b = kronheimer_bubble({1, 0, 0}, {0, 1, 0}, {0, 0, 1});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(b.h_plus[i][j] == doctest::Approx(i == j ? -0.5 : 0.0));
  CHECK(b.gauge == Gauge::Volume);
  CHECK_THROWS_AS((void)kronheimer_bubble({1, 0}, {0, 1, 0}, {0, 0, 1}),
                  PreconditionViolated);
  BubbleAsymptotics eh = eguchi_hanson_bubble();
  CHECK(eh.h_plus[0][0] == -0.5);
  CHECK(eh.h_plus[1][1] == 0.0);
  CHECK(reduced_volume(eh).value == doctest::Approx(-0.5));
}

TEST_CASE("deformation fields solve the linearized equation") {
  SymTensorField e = euclidean_metric();
  OrbifoldPointData d;
  d.lambda = 0.7;
  d.w_plus[0][0] = 0.3;
  d.w_plus[1][1] = -0.1;
  d.w_plus[2][2] = -0.2;
  d.w_minus[0][1] = d.w_minus[1][0] = 0.4;
  SymTensorField h2 = h2_from_curvature(d);
  Mat4 r1 = ricci_variations(e, h2, SymTensorField(), kP).first_h;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(r1[i][j] == doctest::Approx(i == j ? d.lambda : 0.0).epsilon(1e-12));

  BubbleAsymptotics b = eguchi_hanson_bubble();
  SymTensorField h4 = h4_from_asymptotics(b);
  Mat4 r4 = ricci_variations(e, h4, SymTensorField(), kP).first_h;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(std::fabs(r4[i][j]) < 1e-11);
}

TEST_CASE("pure gauge r^-4 term is a lie derivative of the flat metric") {
  // (1/2) Hess(r^-2) = L_X e with X = (1/4) grad(r^-2)
  VectorField x = VectorField([](const auto& xs) {
    using S = std::decay_t<decltype(xs[0])>;
    S ir4 = inv(dot4(xs, xs));
    ir4 = ir4 * ir4;
    Vec4T<S> v;
    for (int i = 0; i < 4; ++i) v[i] = -0.5 * (xs[i] * ir4);
    return v;
  });
  Mat4 got = pure_gauge_h4().values(kP);
  Mat4 want = gauge_field(x).values(kP);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(got[i][j] == doctest::Approx(want[i][j]).epsilon(1e-12));
}

TEST_CASE("singular fields reject the origin") {
  CHECK_THROWS_AS((void)eguchi_hanson().values({0, 0, 0, 0}), OriginEvaluation);
  CHECK_THROWS_AS((void)h4_from_asymptotics(eguchi_hanson_bubble())
                      .values({0, 0, 0, 0}),
                  OriginEvaluation);
  CHECK_THROWS_AS((void)pure_gauge_h4().values({0, 0, 0, 0}), OriginEvaluation);
}

TEST_CASE("lie-derivative fields only support order-2 jets") {
  SymTensorField t = lie_field(radial_field(), euclidean_metric());
  CHECK_NOTHROW((void)t.eval2(kP));
  CHECK_THROWS_AS((void)t.eval3(kP), PreconditionViolated);
  // L_{r dr} e = 2e
  Mat4 v = t.values(kP);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(v[i][j] == doctest::Approx(i == j ? 2.0 : 0.0).epsilon(1e-14));
}

TEST_CASE("eguchi-hanson potential value") {
  double r2 = kP[0] * kP[0] + kP[1] * kP[1] + kP[2] * kP[2] + kP[3] * kP[3];
  CHECK(eh_potential(kP).v == doctest::Approx(std::sqrt(1.0 + r2 * r2)).epsilon(1e-15));
}
