#pragma once

// The flat orbifold model: self-dual / anti-self-dual constant 2-forms,
// the associated Killing fields and dual covectors, position-dependent
// rotation 2-forms, and finite subgroups acting on R^4.

#include <array>
#include <vector>

#include "eol/fields.hpp"

namespace eol {

enum class Sign { Plus, Minus };

// Constant 2-form stored as the matrix of the endomorphism v -> M v,
// i.e. (dx^i ^ dx^j)(e_i) = e_j.
using ConstantTwoForm = Mat4;

// omega_basis(Plus, i), i in {0,1,2}: the self-dual basis starting with
// dx1^dx2 + dx3^dx4; Minus flips the sign of the second plane.
ConstantTwoForm omega_basis(Sign s, int i);

// Endomorphism composition A o B with a symmetry check on the result.
Mat4 compose(const ConstantTwoForm& a, const ConstantTwoForm& b);

// Linear Killing field Y_i^s (x) = omega_i^s x.
VectorField killing_field(Sign s, int i);
// Radial field r d/dr, i.e. x itself.
VectorField radial_field();
// Dual covector alpha_i^s = (omega_i^s x) / |x|^2, as a vector of values.
Vec4 alpha_covector(Sign s, int i, const Point& p);

// Coefficients of the rotation 2-form theta_i^{-s} in the omega^{-s}
// basis: theta_i^{-s}(x) = sum_j (<omega_i^s x, omega_j^{-s} x> / |x|^2)
// omega_j^{-s}. The rows are orthonormal in j. The template form keeps
// the coefficients as jets so the forms can enter metric constructions.
template <class S>
std::array<S, 3> theta_coefficients(Sign source, int i, const Vec4T<S>& x);

// Value of theta_i^{-source} at a point, as an antisymmetric matrix.
Mat4 theta_form(Sign source, int i, const Point& p);

struct FiniteGroup {
  std::vector<Mat4> elements;  // orthogonal matrices, identity included
  int order() const { return static_cast<int>(elements.size()); }
};

FiniteGroup group_trivial();
// Cyclic group Z_k acting by the same rotation angle 2*pi/k in the
// (x1,x2) and (x3,x4) planes; k = 2 gives {I, -I}.
FiniteGroup group_cyclic(int k);

// Max deviation |gamma^T T(gamma p) gamma - T(p)| over sample points.
double group_invariance_residual(const SymTensorField& t,
                                 const FiniteGroup& g, int samples = 6);
double group_invariance_residual(const VectorField& y, const FiniteGroup& g,
                                 int samples = 6);

// --- implementation of the templated pieces ---

namespace detail {
// Constant matrices for both families, indexed [sign][i] with sign 0 = Plus.
const std::array<std::array<Mat4, 3>, 2>& omega_tables();
}  // namespace detail

template <class S>
std::array<S, 3> theta_coefficients(Sign source, int i, const Vec4T<S>& x) {
  const auto& tabs = detail::omega_tables();
  const Mat4& mi = tabs[source == Sign::Plus ? 0 : 1][i];
  const auto& opp = tabs[source == Sign::Plus ? 1 : 0];
  S r2 = dot4(x, x);
  S ir2 = inv(r2);
  std::array<S, 3> c;
  for (int j = 0; j < 3; ++j) {
    // <mi x, opp[j] x> = -x^T (mi * opp[j]) x since mi is antisymmetric
    S acc = S{};
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        double m = 0.0;
        for (int k = 0; k < 4; ++k) m += mi[a][k] * opp[j][k][b];
        if (m != 0.0) acc = acc + m * (x[a] * x[b]);
      }
    }
    c[j] = -(acc * ir2);
  }
  return c;
}

}  // namespace eol
