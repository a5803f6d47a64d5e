#pragma once

// Curvature of a metric given by jets at a point. Everything is templated
// on the scalar ring S: Jet<N> for plain curvature, BiJet<N> when first
// and second metric variations ride along in the nilpotent slots.
//
// Conventions: Ric_{sn} = d_m Gamma^m_{ns} - d_n Gamma^m_{ms} + GG - GG,
// so the unit round metric has positive Ricci curvature. All traces are
// taken with the full (possibly perturbed) metric.

#include <array>

#include "eol/fields.hpp"
#include "eol/flat_model.hpp"

namespace eol {

template <class S>
S det4(const Mat4T<S>& m) {
  auto m3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
    return m[r0][c0] * (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) -
           m[r0][c1] * (m[r1][c0] * m[r2][c2] - m[r1][c2] * m[r2][c0]) +
           m[r0][c2] * (m[r1][c0] * m[r2][c1] - m[r1][c1] * m[r2][c0]);
  };
  return m[0][0] * m3(1, 2, 3, 1, 2, 3) - m[0][1] * m3(1, 2, 3, 0, 2, 3) +
         m[0][2] * m3(1, 2, 3, 0, 1, 3) - m[0][3] * m3(1, 2, 3, 0, 1, 2);
}

// Inverse by the adjugate; avoids pivoting, which jets cannot order.
template <class S>
Mat4T<S> inverse4(const Mat4T<S>& m) {
  S det = det4(m);
  if (std::abs(value_of(det)) < 1e-12)
    throw DegenerateMetric("metric determinant vanishes at evaluation point");
  S idet = inv(det);
  Mat4T<S> r;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      int r0 = (i + 1) % 4, r1 = (i + 2) % 4, r2 = (i + 3) % 4;
      int c0 = (j + 1) % 4, c1 = (j + 2) % 4, c2 = (j + 3) % 4;
      // cofactor expansion keeps the permutation sign of the cyclic shifts
      S minor = m[r0][c0] * (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) -
                m[r0][c1] * (m[r1][c0] * m[r2][c2] - m[r1][c2] * m[r2][c0]) +
                m[r0][c2] * (m[r1][c0] * m[r2][c1] - m[r1][c1] * m[r2][c0]);
      double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      // adjugate transposes: entry (i,j) from the (j,i) cofactor
      r[j][i] = sign * (minor * idet);
    }
  }
  return r;
}

// Core pipeline; also exposes the lowered Riemann tensor on demand.
template <class S>
class Curvature {
 public:
  explicit Curvature(const Mat4T<S>& g) : g_(g) {
    ginv_ = inverse4(g);
    Mat4T<S> dg[4];
    for (int d = 0; d < 4; ++d)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) dg[d][i][j] = deriv(g[i][j], d);
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          S acc{};
          for (int l = 0; l < 4; ++l)
            acc = acc + ginv_[k][l] * (dg[i][l][j] + dg[j][l][i] - dg[l][i][j]);
          gamma_[k][i][j] = 0.5 * acc;
        }
  }

  const Mat4T<S>& metric() const { return g_; }
  const Mat4T<S>& metric_inverse() const { return ginv_; }
  const std::array<Mat4T<S>, 4>& christoffel() const { return gamma_; }

  Mat4T<S> ricci() const {
    Mat4T<S> ric;
    for (int s = 0; s < 4; ++s)
      for (int n = 0; n < 4; ++n) {
        S acc{};
        for (int m = 0; m < 4; ++m)
          acc = acc + deriv(gamma_[m][n][s], m) - deriv(gamma_[m][m][s], n);
        for (int m = 0; m < 4; ++m)
          for (int l = 0; l < 4; ++l)
            acc = acc + gamma_[m][m][l] * gamma_[l][n][s] -
                  gamma_[m][n][l] * gamma_[l][m][s];
        ric[s][n] = acc;
      }
    return ric;
  }

  S scalar(const Mat4T<S>& ric) const {
    S acc{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) acc = acc + ginv_[i][j] * ric[i][j];
    return acc;
  }

  Mat4T<S> einstein(const Mat4T<S>& ric, const S& scal) const {
    Mat4T<S> e;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        e[i][j] = ric[i][j] - 0.5 * (scal * g_[i][j]);
    return e;
  }

  Mat4T<S> traceless_ricci(const Mat4T<S>& ric, const S& scal) const {
    Mat4T<S> e;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        e[i][j] = ric[i][j] - 0.25 * (scal * g_[i][j]);
    return e;
  }

  // Lowered Riemann tensor R_{ijkl} = g_{im} R^m_{jkl} with
  // R^m_{jkl} = d_k Gamma^m_{lj} - d_l Gamma^m_{kj} + G^m_{ka}G^a_{lj}
  //           - G^m_{la}G^a_{kj}.
  std::array<std::array<Mat4T<S>, 4>, 4> riemann_lowered() const {
    std::array<std::array<Mat4T<S>, 4>, 4> up;
    for (int m = 0; m < 4; ++m)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            S acc = deriv(gamma_[m][l][j], k) - deriv(gamma_[m][k][j], l);
            for (int a = 0; a < 4; ++a)
              acc = acc + gamma_[m][k][a] * gamma_[a][l][j] -
                    gamma_[m][l][a] * gamma_[a][k][j];
            up[m][j][k][l] = acc;
          }
    std::array<std::array<Mat4T<S>, 4>, 4> low;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            S acc{};
            for (int m = 0; m < 4; ++m)
              acc = acc + g_[i][m] * up[m][j][k][l];
            low[i][j][k][l] = acc;
          }
    return low;
  }

  // Divergence (delta T)_k = -g^{ij} (nabla_i T)_{jk} of a symmetric
  // 2-tensor given by jets in the same chart.
  Vec4T<S> divergence(const Mat4T<S>& t) const {
    Vec4T<S> r{};
    for (int k = 0; k < 4; ++k) {
      S acc{};
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          S cov = deriv(t[j][k], i);
          for (int l = 0; l < 4; ++l)
            cov = cov - gamma_[l][i][j] * t[l][k] - gamma_[l][i][k] * t[j][l];
          acc = acc + ginv_[i][j] * cov;
        }
      r[k] = -acc;
    }
    return r;
  }

  S trace(const Mat4T<S>& t) const {
    S acc{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) acc = acc + ginv_[i][j] * t[i][j];
    return acc;
  }

  // Bianchi operator B(T) = delta T + (1/2) d tr T.
  Vec4T<S> bianchi(const Mat4T<S>& t) const {
    Vec4T<S> r = divergence(t);
    S tr = trace(t);
    // d tr as jets: only valid when the jets of t and g carry one more
    // order than the values requested; deriv shifts the slots.
    for (int k = 0; k < 4; ++k) r[k] = r[k] + 0.5 * deriv(tr, k);
    return r;
  }

 private:
  Mat4T<S> g_;
  Mat4T<S> ginv_;
  std::array<Mat4T<S>, 4> gamma_;
};

// Lie derivative (L_X T)_{ij} = X^k d_k T_{ij} + T_{kj} d_i X^k
// + T_{ik} d_j X^k, all jets in the flat chart; costs one jet order.
template <class S>
Mat4T<S> lie_derivative(const Vec4T<S>& x, const Mat4T<S>& t) {
  Mat4T<S> r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      S acc{};
      for (int k = 0; k < 4; ++k)
        acc = acc + x[k] * deriv(t[i][j], k) + t[k][j] * deriv(x[k], i) +
              t[i][k] * deriv(x[k], j);
      r[i][j] = acc;
    }
  return r;
}

// --- variation plumbing -------------------------------------------------

// Metric jets e(+perturbations) assembled into BiJet slots.
template <int N>
Mat4T<BiJet<N>> bijet_metric(const SymTensorField& background,
                             const SymTensorField& h, const SymTensorField& k,
                             const Point& p) {
  Mat4T<Jet<N>> g0, jh{}, jk{};
  if constexpr (N == 2) {
    g0 = background.eval2(p);
    if (h) jh = h.eval2(p);
    if (k) jk = k.eval2(p);
  } else {
    g0 = background.eval3(p);
    if (h) jh = h.eval3(p);
    if (k) jk = k.eval3(p);
  }
  Mat4T<BiJet<N>> g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      g[i][j].c00 = g0[i][j];
      g[i][j].c10 = jh[i][j];
      g[i][j].c01 = jk[i][j];
    }
  return g;
}

SymTensorField euclidean_metric();

struct TensorVariations {
  Mat4 order0;      // value on the background
  Mat4 first_h;     // first variation in the h direction
  Mat4 first_k;     // first variation in the k direction
  Mat4 second_hk;   // polarized second variation: half the mixed slot
};

struct ScalarVariations {
  double order0, first_h, first_k, second_hk;
};

template <int N>
TensorVariations split_variations(const Mat4T<BiJet<N>>& t) {
  TensorVariations r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      r.order0[i][j] = t[i][j].c00.v;
      r.first_h[i][j] = t[i][j].c10.v;
      r.first_k[i][j] = t[i][j].c01.v;
      r.second_hk[i][j] = 0.5 * t[i][j].c11.v;
    }
  return r;
}

TensorVariations ricci_variations(const SymTensorField& background,
                                  const SymTensorField& h,
                                  const SymTensorField& k, const Point& p);
TensorVariations einstein_tensor_variations(const SymTensorField& background,
                                            const SymTensorField& h,
                                            const SymTensorField& k,
                                            const Point& p);
TensorVariations traceless_ricci_variations(const SymTensorField& background,
                                            const SymTensorField& h,
                                            const SymTensorField& k,
                                            const Point& p);
ScalarVariations scalar_variations(const SymTensorField& background,
                                   const SymTensorField& h,
                                   const SymTensorField& k, const Point& p);

// Flat-background divergence/Bianchi values straight from jet slots.
template <class S>
Vec4 flat_divergence_values(const Mat4T<S>& t) {
  Vec4 r{};
  for (int k = 0; k < 4; ++k)
    for (int j = 0; j < 4; ++j) r[k] -= t[j][k].g[j];
  return r;
}
template <class S>
Vec4 flat_bianchi_values(const Mat4T<S>& t) {
  Vec4 r = flat_divergence_values(t);
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i) r[k] += 0.5 * t[i][i].g[k];
  return r;
}

// First derivatives of variation tensors (order-3 jets inside): the
// flat-background Bianchi operator of Ric^(1)(h) and divergence of the
// polarized E^(2)(h,k), as values at p.
Vec4 bianchi_flat_of_ricci1(const SymTensorField& h, const Point& p);
Vec4 divergence_flat_of_einstein2(const SymTensorField& h,
                                  const SymTensorField& k, const Point& p);

// Value-level wrappers for curved backgrounds.
Vec4 divergence_at(const SymTensorField& t, const SymTensorField& g,
                   const Point& p);
Vec4 bianchi_at(const SymTensorField& t, const SymTensorField& g,
                const Point& p);
Mat4 lie_derivative_at(const SymTensorField& g, const VectorField& x,
                       const Point& p);
// Laplace-Beltrami of a scalar with the sign fixed by Lap(r^2) = 8 on e.
double laplacian(const SymTensorField& g,
                 const std::function<Jet<2>(const Point&)>& u, const Point& p);

// Curvature operator on 2-forms in the basis
// (omega_1^+, omega_2^+, omega_3^+, omega_1^-, omega_2^-, omega_3^-):
// entry [a][b] = <R omega_b, omega_a> / 4 with (R w)_{ij} = 1/2 R_{ijkl} w_{kl}.
using Block6 = std::array<std::array<double, 6>, 6>;
using Mat3 = std::array<std::array<double, 3>, 3>;

Block6 curvature_block6(const SymTensorField& g, const Point& p);

struct CurvatureBlocks {
  Mat3 r_plus, r_minus;  // diagonal blocks in the omega^+/omega^- bases
  Mat4 ric0;             // traceless Ricci values
  double scal;
};
CurvatureBlocks curvature_blocks(const SymTensorField& g, const Point& p);

// First variation of the diagonal blocks under g = background + eps*h,
// expressed in the rotating bases (theta_i^+), (theta_i^-) at p.
struct SelfdualBlockVariation {
  Mat3 plus, minus;            // in the theta bases
  Mat3 plus_omega, minus_omega;  // same operators in the constant bases
};
SelfdualBlockVariation block_variation(const SymTensorField& background,
                                       const SymTensorField& h,
                                       const Point& p);

// Decomposition of a symmetric 2-tensor value at p as
// h = lambda * e + sum_i phi_i o omega_i^+ with phi_i anti-self-dual.
struct SelfdualDecomposition {
  double lambda;
  std::array<Mat4, 3> phi;  // antisymmetric matrices
};
SelfdualDecomposition selfdual_decomposition(const Mat4& h);
SelfdualDecomposition selfdual_decomposition(const SymTensorField& h,
                                             const Point& p);

// Residual of the reconstruction of h from its decomposition.
double selfdual_roundtrip_residual(const Mat4& h);

// Gauge residual d(lambda) + star(omega_i^+ ^ star d phi_i^-) summed over i,
// for a symmetric tensor field; returns the covector values at p.
Vec4 bianchi_gauge_residual(const SymTensorField& h, const Point& p);

}  // namespace eol
