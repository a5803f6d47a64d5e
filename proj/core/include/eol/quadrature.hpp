#pragma once

// Quadrature over round spheres S^3(s) and their cyclic quotients.
// Hopf-type parametrization with a Gauss-Legendre rule in the polar
// variable and trapezoid rules in the two periodic angles; exact for
// restrictions of polynomials of degree up to roughly twice the order.

#include <functional>
#include <vector>

#include "eol/fields.hpp"
#include "eol/flat_model.hpp"

namespace eol {

struct SphereRule {
  double radius = 1.0;
  int order = 24;
  std::vector<std::pair<Point, double>> nodes;
};

SphereRule sphere_rule(double radius, int order = 24);

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

using ScalarIntegrand = std::function<double(const Point&)>;
using TensorIntegrand = std::function<Mat4(const Point&)>;

// (1/|G|) * quadrature sum; asserts sampled G-invariance when |G| > 1.
double integrate_scalar(const ScalarIntegrand& f, const SphereRule& rule,
                        const FiniteGroup& g);

// Exact moment of x1^a1 x2^a2 x3^a3 x4^a4 over the unit S^3.
double moment_oracle(const std::array<int, 4>& exponents);

// Boundary flux of T against X with outward normal p/|p|.
double flux(const TensorIntegrand& t, const VectorField& x,
            const SphereRule& rule, const FiniteGroup& g);

// Volume integral over the annulus r0 <= r <= r1 (32-node radial rule).
double annulus_integral(const ScalarIntegrand& f, double r0, double r1,
                        int sphere_order, const FiniteGroup& g);

}  // namespace eol
