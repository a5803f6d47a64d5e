#include "eol/curvature.hpp"

#include <cmath>

#include "eol/forms.hpp"

namespace eol {

SymTensorField euclidean_metric() {
  return SymTensorField([](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    Mat4T<S> g{};
    for (int i = 0; i < 4; ++i) g[i][i] = S{} + 1.0;
    return g;
  });
}

namespace {

template <int N>
Curvature<BiJet<N>> make_curvature(const SymTensorField& background,
                                   const SymTensorField& h,
                                   const SymTensorField& k, const Point& p) {
  return Curvature<BiJet<N>>(bijet_metric<N>(background, h, k, p));
}

}  // namespace

TensorVariations ricci_variations(const SymTensorField& background,
                                  const SymTensorField& h,
                                  const SymTensorField& k, const Point& p) {
  auto curv = make_curvature<2>(background, h, k, p);
  return split_variations(curv.ricci());
}

TensorVariations einstein_tensor_variations(const SymTensorField& background,
                                            const SymTensorField& h,
                                            const SymTensorField& k,
                                            const Point& p) {
  auto curv = make_curvature<2>(background, h, k, p);
  auto ric = curv.ricci();
  auto scal = curv.scalar(ric);
  return split_variations(curv.einstein(ric, scal));
}

TensorVariations traceless_ricci_variations(const SymTensorField& background,
                                            const SymTensorField& h,
                                            const SymTensorField& k,
                                            const Point& p) {
  auto curv = make_curvature<2>(background, h, k, p);
  auto ric = curv.ricci();
  auto scal = curv.scalar(ric);
  return split_variations(curv.traceless_ricci(ric, scal));
}

ScalarVariations scalar_variations(const SymTensorField& background,
                                   const SymTensorField& h,
                                   const SymTensorField& k, const Point& p) {
  auto curv = make_curvature<2>(background, h, k, p);
  auto scal = curv.scalar(curv.ricci());
  return {scal.c00.v, scal.c10.v, scal.c01.v, 0.5 * scal.c11.v};
}

Vec4 bianchi_flat_of_ricci1(const SymTensorField& h, const Point& p) {
  auto curv = make_curvature<3>(euclidean_metric(), h, SymTensorField(), p);
  auto ric = curv.ricci();
  Mat4T<Jet<3>> ric1;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) ric1[i][j] = ric[i][j].c10;
  return flat_bianchi_values(ric1);
}

Vec4 divergence_flat_of_einstein2(const SymTensorField& h,
                                  const SymTensorField& k, const Point& p) {
  auto curv = make_curvature<3>(euclidean_metric(), h, k, p);
  auto ric = curv.ricci();
  auto scal = curv.scalar(ric);
  auto ein = curv.einstein(ric, scal);
  Mat4T<Jet<3>> e2;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) e2[i][j] = 0.5 * ein[i][j].c11;
  return flat_divergence_values(e2);
}

Vec4 divergence_at(const SymTensorField& t, const SymTensorField& g,
                   const Point& p) {
  Curvature<Jet<2>> curv(g.eval2(p));
  auto d = curv.divergence(t.eval2(p));
  return {d[0].v, d[1].v, d[2].v, d[3].v};
}

Vec4 bianchi_at(const SymTensorField& t, const SymTensorField& g,
                const Point& p) {
  Curvature<Jet<2>> curv(g.eval2(p));
  auto b = curv.bianchi(t.eval2(p));
  return {b[0].v, b[1].v, b[2].v, b[3].v};
}

Mat4 lie_derivative_at(const SymTensorField& g, const VectorField& x,
                       const Point& p) {
  auto lt = lie_derivative(x.eval2(p), g.eval2(p));
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = lt[i][j].v;
  return r;
}

double laplacian(const SymTensorField& g,
                 const std::function<Jet<2>(const Point&)>& u, const Point& p) {
  Curvature<Jet<2>> curv(g.eval2(p));
  Jet<2> f = u(p);
  double acc = 0.0;
  const auto& ginv = curv.metric_inverse();
  const auto& gamma = curv.christoffel();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double hij = f.hess(i, j);
      for (int k = 0; k < 4; ++k) hij -= gamma[k][i][j].v * f.g[k];
      acc += ginv[i][j].v * hij;
    }
  return acc;
}

// --- curvature operator on 2-forms -------------------------------------

namespace {

// <R w_b, w_a>/4 from lowered Riemann jets; all six basis forms.
template <class S>
std::array<std::array<S, 6>, 6> block6_from(
    const std::array<std::array<Mat4T<S>, 4>, 4>& rm) {
  const auto& tabs = detail::omega_tables();
  std::array<Mat4, 6> w;
  for (int i = 0; i < 3; ++i) {
    w[i] = tabs[0][i];
    w[3 + i] = tabs[1][i];
  }
  std::array<std::array<S, 6>, 6> blk{};
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      S acc{};
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          if (w[a][i][j] == 0.0) continue;
          for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l) {
              if (w[b][k][l] == 0.0) continue;
              acc = acc + (w[a][i][j] * w[b][k][l] / 8.0) * rm[i][j][k][l];
            }
        }
      blk[a][b] = acc;
    }
  return blk;
}

}  // namespace

Block6 curvature_block6(const SymTensorField& g, const Point& p) {
  Curvature<Jet<2>> curv(g.eval2(p));
  auto blk = block6_from(curv.riemann_lowered());
  Block6 r{};
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) r[a][b] = blk[a][b].v;
  return r;
}

CurvatureBlocks curvature_blocks(const SymTensorField& g, const Point& p) {
  Curvature<Jet<2>> curv(g.eval2(p));
  auto ric = curv.ricci();
  auto scal = curv.scalar(ric);
  auto ric0 = curv.traceless_ricci(ric, scal);
  auto blk = block6_from(curv.riemann_lowered());
  CurvatureBlocks out;
  out.scal = scal.v;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.ric0[i][j] = ric0[i][j].v;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      out.r_plus[a][b] = blk[a][b].v;
      out.r_minus[a][b] = blk[3 + a][3 + b].v;
    }
  return out;
}

SelfdualBlockVariation block_variation(const SymTensorField& background,
                                       const SymTensorField& h,
                                       const Point& p) {
  auto curv = make_curvature<2>(background, h, SymTensorField(), p);
  auto blk = block6_from(curv.riemann_lowered());
  Mat3 bp{}, bm{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      bp[a][b] = blk[a][b].c10.v;
      bm[a][b] = blk[3 + a][3 + b].c10.v;
    }
  // rotate to the position-dependent theta bases:
  // theta_a^- = sum_c cm[a][c] omega_c^-, cm orthogonal.
  Vec4 x{p[0], p[1], p[2], p[3]};
  Mat3 cm, cp;
  for (int a = 0; a < 3; ++a) {
    cm[a] = theta_coefficients(Sign::Plus, a, x);   // theta_a^-
    cp[a] = theta_coefficients(Sign::Minus, a, x);  // theta_a^+
  }
  auto conj = [](const Mat3& c, const Mat3& b) {
    Mat3 r{};
    for (int a = 0; a < 3; ++a)
      for (int d = 0; d < 3; ++d)
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) r[a][d] += c[a][i] * b[i][j] * c[d][j];
    return r;
  };
  SelfdualBlockVariation out;
  out.plus_omega = bp;
  out.minus_omega = bm;
  out.plus = conj(cp, bp);
  out.minus = conj(cm, bm);
  return out;
}

// --- selfdual decomposition ---------------------------------------------

SelfdualDecomposition selfdual_decomposition(const Mat4& h) {
  SelfdualDecomposition out;
  out.lambda = (h[0][0] + h[1][1] + h[2][2] + h[3][3]) / 4.0;
  Mat4 h0 = h;
  for (int i = 0; i < 4; ++i) h0[i][i] -= out.lambda;
  // From {omega_i^+, omega_j^+} = -2 delta_ij Id: if h0 = sum_k A_k omega_k^+
  // (endomorphism composition) with A_k anti-self-dual, then
  // A_i = -(1/2)(h0 omega_i^+ + omega_i^+ h0).
  const auto& tabs = detail::omega_tables();
  for (int i = 0; i < 3; ++i) {
    const Mat4& w = tabs[0][i];
    Mat4 a{};
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        double acc = 0.0;
        for (int k = 0; k < 4; ++k)
          acc += h0[r][k] * w[k][c] + w[r][k] * h0[k][c];
        a[r][c] = -0.5 * acc;
      }
    out.phi[i] = a;
  }
  return out;
}

SelfdualDecomposition selfdual_decomposition(const SymTensorField& h,
                                             const Point& p) {
  return selfdual_decomposition(h.values(p));
}

double selfdual_roundtrip_residual(const Mat4& h) {
  auto dec = selfdual_decomposition(h);
  const auto& tabs = detail::omega_tables();
  Mat4 rec{};
  for (int i = 0; i < 4; ++i) rec[i][i] = dec.lambda;
  for (int k = 0; k < 3; ++k)
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        for (int m = 0; m < 4; ++m)
          rec[r][c] += dec.phi[k][r][m] * tabs[0][k][m][c];
  double worst = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      worst = std::max(worst, std::fabs(rec[r][c] - h[r][c]));
  return worst;
}

Vec4 bianchi_gauge_residual(const SymTensorField& h, const Point& p) {
  Mat4T<Jet<2>> hj = h.eval2(p);
  Jet<2> lambda = 0.25 * (hj[0][0] + hj[1][1] + hj[2][2] + hj[3][3]);
  Mat4T<Jet<2>> h0 = hj;
  for (int i = 0; i < 4; ++i) h0[i][i] = h0[i][i] - lambda;
  const auto& tabs = detail::omega_tables();
  Vec4 res{lambda.g[0], lambda.g[1], lambda.g[2], lambda.g[3]};
  for (int i = 0; i < 3; ++i) {
    const Mat4& w = tabs[0][i];
    // phi_i as an endomorphism, then as form coefficients F = M^T
    Mat4T<Jet<2>> m{};
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        Jet<2> acc{};
        for (int k = 0; k < 4; ++k)
          acc = acc + h0[r][k] * w[k][c] + w[r][k] * h0[k][c];
        m[r][c] = -0.5 * acc;
      }
    Form2T<Jet<2>> f{};
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) f[r][c] = m[c][r];
    auto sdf = star_form3(d_form2(f));
    // omega_i^+ as form coefficients
    Form2T<Jet<2>> wf{};
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) wf[r][c] = Jet<2>::constant(w[c][r]);
    auto term = star_form3(wedge_21(wf, sdf));
    for (int a = 0; a < 4; ++a) res[a] += term[a].v;
  }
  return res;
}

}  // namespace eol
