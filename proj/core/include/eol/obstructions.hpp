#pragma once

// Integral obstruction quantities: first-order and Taub fluxes, the
// conformal preserved quantity with boundary corrections, the
// desingularization obstruction integrals and their closed forms.

#include <optional>
#include <string>

#include "eol/curvature.hpp"
#include "eol/deformations.hpp"
#include "eol/quadrature.hpp"

namespace eol {

enum class Verdict { Obstructed, NotObstructedAtFirstOrder };

struct ObstructionReport {
  double radial = 0.0;
  std::array<double, 3> killing_plus{};
  std::array<double, 3> killing_minus{};
  double closed_form = 0.0;
  Verdict verdict = Verdict::NotObstructedAtFirstOrder;
  double tolerance = 1e-8;
  double max_precondition_residual = 0.0;
};

struct TaubInput {
  SymTensorField h, k;
  VectorField x;
  double radius = 1.0;
  FiniteGroup group = group_trivial();
  int order = 16;
};

// B^S_X(h) = flux of E^(1)(h) against X over the sphere of given radius.
double first_order_flux(const SymTensorField& h, const VectorField& x,
                        double radius, const FiniteGroup& g, int order = 16);

// T^S_X(h,k) = flux of the polarized E^(2)(h,k) against X.
double taub_quantity(const TaubInput& in);

// Bare conformal flux and its mass-type corrected version; the corrected
// sum vanishes identically for any h smooth on the enclosed ball.
double conformal_first(const SymTensorField& h, double radius,
                       const FiniteGroup& g, int order = 16);
double conformal_first_corrected(const SymTensorField& h, double radius,
                                 const FiniteGroup& g, int order = 16);

// Second-order conformal quantity with its boundary corrections; requires
// sampled E^(1)(h) = 0.
double conformal_second(const SymTensorField& h, double radius,
                        const FiniteGroup& g, int order = 16);

// Ric°^(2)(H4(b), k) at p: the bubble coefficients of b paired with the
// selfdual curvature-block variation of k (computed with jets).
Mat4 ric2_tensor(const BubbleAsymptotics& b, const SymTensorField& k,
                 const Point& p);

// Flux of Ric°^(2)(h,k) against X; one argument must be a bubble-type
// r^-4 field (its coefficients are recovered by sampling).
double ric2_flux(const SymTensorField& h, const SymTensorField& k,
                 const VectorField& x, double radius, const FiniteGroup& g,
                 int order = 16);

// Closed form of Ric°^(2)(H4, H2) for H4 = theta_l^- o omega_k^+ / r^4:
// sum_j R+_{kj} theta_l^- o omega_j^+ / r^4 with R+ = (Lambda/3) Id + W+.
Mat4 ric2_closed_form(int k_index, int l_index, const OrbifoldPointData& data,
                      const Point& p);

// Pairing integral 3<H2,H4> + H4(B_e H2, dr) over the unit sphere; the
// Killing variants replace H4 by L_Y H4.
double biq_pairing(const SymTensorField& h2, const SymTensorField& h4,
                   const std::optional<VectorField>& y, const FiniteGroup& g,
                   int order = 16);

ObstructionReport desingularization_check(const OrbifoldPointData& o,
                                          const BubbleAsymptotics& b,
                                          const FiniteGroup& g, double tol,
                                          int order = 16);

// d <R omega, omega> + 2(d-2) scal for an N x N curvature operator.
double calabi_obstruction(const std::vector<std::vector<double>>& curv_op,
                          const std::vector<double>& omega, double scal,
                          int dim);

const char* to_string(Verdict v);

}  // namespace eol
