#include "eol/deformations.hpp"

#include <cmath>

#include "eol/curvature.hpp"
#include "eol/errors.hpp"

namespace eol {

namespace {

struct ProductTables {
  // comp_pm[l][j] = omega_l^- o omega_j^+ (symmetric), and the quadratic
  // forms quad_pm[i][l] = omega_i^+ o omega_l^- entering the theta
  // coefficients x^T (omega_i^+ omega_l^-) x; mirrored for the other family.
  Mat4 comp_pm[3][3], comp_mp[3][3];
  Mat4 quad_pm[3][3], quad_mp[3][3];
};

Mat4 matmul(const Mat4& a, const Mat4& b) {
  Mat4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

const ProductTables& tables() {
  static const ProductTables t = [] {
    ProductTables t;
    const auto& w = detail::omega_tables();
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        t.comp_pm[a][b] = matmul(w[1][a], w[0][b]);
        t.comp_mp[a][b] = matmul(w[0][a], w[1][b]);
        t.quad_pm[a][b] = matmul(w[0][a], w[1][b]);
        t.quad_mp[a][b] = matmul(w[1][a], w[0][b]);
      }
    return t;
  }();
  return t;
}

template <class S>
S quad_form(const Mat4& m, const Vec4T<S>& x) {
  S acc{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (m[a][b] != 0.0) acc = acc + m[a][b] * (x[a] * x[b]);
  return acc;
}

// sum_{ij} c_ij (r^2 theta_i^- o omega_j^+) and its minus-family mirror,
// as polynomial (quartic) tensors.
template <class S>
Mat4T<S> theta_combination(const Mat3d& cp, const Mat3d& cm,
                           const Vec4T<S>& x) {
  const ProductTables& t = tables();
  Mat4T<S> r{};
  for (int i = 0; i < 3; ++i)
    for (int l = 0; l < 3; ++l) {
      S qp = quad_form(t.quad_pm[i][l], x);
      S qm = quad_form(t.quad_mp[i][l], x);
      for (int j = 0; j < 3; ++j) {
        if (cp[i][j] != 0.0) {
          const Mat4& m = t.comp_pm[l][j];
          for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
              if (m[a][b] != 0.0) r[a][b] = r[a][b] + (cp[i][j] * m[a][b]) * qp;
        }
        if (cm[i][j] != 0.0) {
          const Mat4& m = t.comp_mp[l][j];
          for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
              if (m[a][b] != 0.0) r[a][b] = r[a][b] + (cm[i][j] * m[a][b]) * qm;
        }
      }
    }
  return r;
}

double trace3(const Mat3d& m) { return m[0][0] + m[1][1] + m[2][2]; }

}  // namespace

void validate(const OrbifoldPointData& data, double tol) {
  if (std::fabs(trace3(data.w_plus)) > tol ||
      std::fabs(trace3(data.w_minus)) > tol)
    throw PreconditionViolated("Weyl blocks must be traceless");
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (std::fabs(data.w_plus[i][j] - data.w_plus[j][i]) > tol ||
          std::fabs(data.w_minus[i][j] - data.w_minus[j][i]) > tol)
        throw PreconditionViolated("Weyl blocks must be symmetric");
}

void validate(const BubbleAsymptotics& b, double tol) {
  if (b.gauge == Gauge::CMC) {
    if (std::fabs(trace3(b.h_plus)) > tol || std::fabs(trace3(b.h_minus)) > tol)
      throw PreconditionViolated("CMC gauge requires traceless coefficients");
  } else {
    if (trace3(b.h_plus) + trace3(b.h_minus) > tol)
      throw PreconditionViolated(
          "volume gauge requires trace sum <= 0 (reduced volume)");
  }
}

ReducedVolumeSurrogate reduced_volume(const BubbleAsymptotics& b) {
  return {trace3(b.h_plus) + trace3(b.h_minus)};
}

SymTensorField h2_from_curvature(const OrbifoldPointData& data) {
  const double lam = data.lambda;
  const Mat3d wp = data.w_plus, wm = data.w_minus;
  return SymTensorField([lam, wp, wm](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    S r2 = dot4(x, x);
    Mat4T<S> h = theta_combination(wp, wm, x);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        h[a][b] = (1.0 / 6.0) * h[a][b] + (lam / 9.0) * (x[a] * x[b]);
        if (a == b) h[a][b] = h[a][b] - (lam / 9.0) * r2;
      }
    return h;
  });
}

SymTensorField h4_from_asymptotics(const BubbleAsymptotics& b) {
  validate(b);
  const Mat3d hp = b.h_plus, hm = b.h_minus;
  return SymTensorField([hp, hm](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    S r2 = dot4(x, x);
    if (value_of(r2) < 1e-20)
      throw OriginEvaluation("r^-4 asymptotic term is singular at the origin");
    S ir2 = inv(r2);
    S ir6 = ir2 * ir2 * ir2;
    Mat4T<S> h = theta_combination(hp, hm, x);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) h[a][b] = h[a][b] * ir6;
    return h;
  });
}

BubbleAsymptotics kronheimer_bubble(const std::vector<double>& z1,
                                    const std::vector<double>& z2,
                                    const std::vector<double>& z3) {
  const std::vector<double>* z[3] = {&z1, &z2, &z3};
  BubbleAsymptotics b;
  b.gauge = Gauge::Volume;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (z[i]->size() != z[j]->size())
        throw PreconditionViolated("zeta vectors must share one dimension");
      double dot = 0.0;
      for (size_t a = 0; a < z[i]->size(); ++a) dot += (*z[i])[a] * (*z[j])[a];
      b.h_plus[i][j] = -0.5 * dot;
    }
  return b;
}

BubbleAsymptotics eguchi_hanson_bubble() {
  BubbleAsymptotics b;
  b.gauge = Gauge::Volume;
  b.h_plus[0][0] = -0.5;
  return b;
}

SymTensorField eguchi_hanson() {
  return SymTensorField([](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    S r2 = dot4(x, x);
    if (value_of(r2) < 1e-20)
      throw OriginEvaluation("Eguchi-Hanson chart excludes the origin");
    const auto& w = detail::omega_tables();
    Vec4T<S> v[4];
    v[0] = x;
    for (int i = 0; i < 3; ++i) {
      for (int a = 0; a < 4; ++a) {
        S acc{};
        for (int bb = 0; bb < 4; ++bb)
          if (w[0][i][a][bb] != 0.0) acc = acc + w[0][i][a][bb] * x[bb];
        v[i + 1][a] = acc;
      }
    }
    S r4 = r2 * r2;
    S ir2 = inv(r2);
    S coefa = sqrt(r4 * inv(1.0 + r4)) * ir2;         // dr^2 + r^2 a1^2 part
    S coefb = sqrt(1.0 + r4) * (ir2 * ir2);           // a2^2 + a3^2 part
    Mat4T<S> g;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        g[a][b] = coefa * (v[0][a] * v[0][b] + v[1][a] * v[1][b]) +
                  coefb * (v[2][a] * v[2][b] + v[3][a] * v[3][b]);
    return g;
  });
}

Jet<2> eh_potential(const Point& p) {
  auto x = coordinate_jets<2>(p);
  Jet<2> r2 = dot4(x, x);
  return sqrt(1.0 + r2 * r2);
}

SymTensorField pure_gauge_h4() {
  return SymTensorField([](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    S r2 = dot4(x, x);
    if (value_of(r2) < 1e-20)
      throw OriginEvaluation("Hess(r^-2) is singular at the origin");
    S ir2 = inv(r2);
    S ir4 = ir2 * ir2;
    S ir6 = ir4 * ir2;
    Mat4T<S> h;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        h[a][b] = (4.0 * ir6) * (x[a] * x[b]);
        if (a == b) h[a][b] = h[a][b] - ir4;
      }
    return h;
  });
}

SymTensorField lie_field(const VectorField& y, const SymTensorField& t) {
  return SymTensorField::from_evaluators(
      [y, t](const Point& p) {
        auto lt = lie_derivative(y.eval3(p), t.eval3(p));
        Mat4T<Jet<2>> r;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) r[i][j] = truncate2(lt[i][j]);
        return r;
      },
      [](const Point&) -> Mat4T<Jet<3>> {
        throw PreconditionViolated(
            "Lie-derivative fields carry 2-jets only; build the derivative "
            "analytically if 3-jets are required");
      });
}

SymTensorField gauge_field(const VectorField& v) {
  return lie_field(v, euclidean_metric());
}

}  // namespace eol
