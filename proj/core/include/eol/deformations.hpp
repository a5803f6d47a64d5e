#pragma once

// Concrete perturbation fields: the orbifold quadratic term built from
// (Lambda, W+, W-), the ALE r^-4 asymptotic term, the Eguchi-Hanson
// metric with its potential, and Lie-derivative (gauge) fields.

#include <array>
#include <vector>

#include "eol/fields.hpp"
#include "eol/flat_model.hpp"

namespace eol {

using Mat3d = std::array<std::array<double, 3>, 3>;

struct OrbifoldPointData {
  double lambda = 0.0;
  Mat3d w_plus{};   // symmetric traceless
  Mat3d w_minus{};  // symmetric traceless
};

enum class Gauge { CMC, Volume };

struct BubbleAsymptotics {
  Mat3d h_plus{};
  Mat3d h_minus{};
  Gauge gauge = Gauge::Volume;
};

struct ReducedVolumeSurrogate {
  double value = 0.0;  // tr(h_plus) + tr(h_minus), <= 0 in volume gauge
};

// Throws PreconditionViolated when the type invariants fail.
void validate(const OrbifoldPointData& data, double tol = 1e-12);
void validate(const BubbleAsymptotics& b, double tol = 1e-12);
ReducedVolumeSurrogate reduced_volume(const BubbleAsymptotics& b);

// H2 = -(Lambda/9) r^4 g_{S^3}
//      + (r^2/6)(sum W+_{ij} theta_i^- o omega_j^+ + sum W-_{kl} theta_k^+ o omega_l^-)
// with r^4 g_{S^3} realized globally as r^2 e - (x.dx) (x) (x.dx).
SymTensorField h2_from_curvature(const OrbifoldPointData& data);

// H4 = (sum h+_{ij} theta_i^- o omega_j^+ + sum h-_{kl} theta_k^+ o omega_l^-)/r^4.
SymTensorField h4_from_asymptotics(const BubbleAsymptotics& b);

// Volume-gauge data of a Kronheimer-type bubble: h+_{ij} = -<z_i, z_j>/2.
BubbleAsymptotics kronheimer_bubble(const std::vector<double>& z1,
                                    const std::vector<double>& z2,
                                    const std::vector<double>& z3);
BubbleAsymptotics eguchi_hanson_bubble();

// The Eguchi-Hanson metric in the flat chart and its potential sqrt(1+r^4).
SymTensorField eguchi_hanson();
Jet<2> eh_potential(const Point& p);

// (1/2) Hess(r^-2) = (3 dr^2 - r^2 g_{S^3}) / r^4, the pure-gauge r^-4 term.
SymTensorField pure_gauge_h4();

// Lie derivative of a tensor field along y. The result supports order-2
// jets only (evaluated internally at order 3); eval3 throws.
SymTensorField lie_field(const VectorField& y, const SymTensorField& t);

// L_V e. Supports order-2 jets only (evaluated internally at order 3).
SymTensorField gauge_field(const VectorField& v);

}  // namespace eol
