#include "eol/flat_model.hpp"

#include <cmath>
#include <random>

#include "eol/errors.hpp"

namespace eol {

namespace {

// Matrix of dx^i ^ dx^j acting as e_i -> e_j, e_j -> -e_i.
Mat4 wedge(int i, int j) {
  Mat4 m{};
  m[j][i] = 1.0;
  m[i][j] = -1.0;
  return m;
}

Mat4 mat_add(const Mat4& a, const Mat4& b, double sb) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = a[i][j] + sb * b[i][j];
  return r;
}

}  // namespace

namespace detail {

const std::array<std::array<Mat4, 3>, 2>& omega_tables() {
  static const std::array<std::array<Mat4, 3>, 2> tabs = [] {
    std::array<std::array<Mat4, 3>, 2> t;
    const Mat4 w12 = wedge(0, 1), w34 = wedge(2, 3);
    const Mat4 w13 = wedge(0, 2), w42 = wedge(3, 1);
    const Mat4 w14 = wedge(0, 3), w23 = wedge(1, 2);
    t[0][0] = mat_add(w12, w34, 1.0);
    t[0][1] = mat_add(w13, w42, 1.0);
    t[0][2] = mat_add(w14, w23, 1.0);
    t[1][0] = mat_add(w12, w34, -1.0);
    t[1][1] = mat_add(w13, w42, -1.0);
    t[1][2] = mat_add(w14, w23, -1.0);
    return t;
  }();
  return tabs;
}

}  // namespace detail

ConstantTwoForm omega_basis(Sign s, int i) {
  return detail::omega_tables()[s == Sign::Plus ? 0 : 1][i];
}

Mat4 compose(const ConstantTwoForm& a, const ConstantTwoForm& b) {
  Mat4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 4; ++k) acc += a[i][k] * b[k][j];
      r[i][j] = acc;
    }
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (std::fabs(r[i][j] - r[j][i]) > 1e-12)
        throw NonSymmetricResult("composition of 2-forms is not symmetric");
  return r;
}

VectorField killing_field(Sign s, int i) {
  Mat4 m = omega_basis(s, i);
  return VectorField([m](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    Vec4T<S> y{};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        if (m[a][b] != 0.0) y[a] = y[a] + m[a][b] * x[b];
    return y;
  });
}

VectorField radial_field() {
  return VectorField([](const auto& x) { return x; });
}

Vec4 alpha_covector(Sign s, int i, const Point& p) {
  double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
  if (r2 < 1e-28)
    throw OriginEvaluation("alpha covector is singular at the origin");
  Mat4 m = omega_basis(s, i);
  Vec4 a{};
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) a[k] += m[k][l] * p[l] / r2;
  return a;
}

Mat4 theta_form(Sign source, int i, const Point& p) {
  double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
  if (r2 < 1e-28)
    throw OriginEvaluation("rotation 2-form is singular at the origin");
  Vec4 x{p[0], p[1], p[2], p[3]};
  std::array<double, 3> c = theta_coefficients(source, i, x);
  Sign target = source == Sign::Plus ? Sign::Minus : Sign::Plus;
  Mat4 r{};
  for (int j = 0; j < 3; ++j) {
    Mat4 w = omega_basis(target, j);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) r[a][b] += c[j] * w[a][b];
  }
  return r;
}

FiniteGroup group_trivial() {
  Mat4 id{};
  for (int i = 0; i < 4; ++i) id[i][i] = 1.0;
  return FiniteGroup{{id}};
}

FiniteGroup group_cyclic(int k) {
  if (k < 1) throw PreconditionViolated("cyclic group order must be >= 1");
  FiniteGroup g;
  for (int j = 0; j < k; ++j) {
    double a = 2.0 * M_PI * j / k;
    double c = std::cos(a), s = std::sin(a);
    Mat4 m{};
    m[0][0] = c; m[0][1] = -s; m[1][0] = s; m[1][1] = c;
    m[2][2] = c; m[2][3] = -s; m[3][2] = s; m[3][3] = c;
    g.elements.push_back(m);
  }
  return g;
}

namespace {

std::vector<Point> sample_points(int n) {
  std::mt19937 rng(20240915u);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) {
    Point p;
    double r2 = 0.0;
    do {
      for (auto& c : p) c = u(rng);
      r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
    } while (r2 < 0.25);
    pts.push_back(p);
  }
  return pts;
}

Point apply(const Mat4& g, const Point& p) {
  Point q{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) q[i] += g[i][j] * p[j];
  return q;
}

}  // namespace

double group_invariance_residual(const SymTensorField& t,
                                 const FiniteGroup& g, int samples) {
  double worst = 0.0;
  for (const Point& p : sample_points(samples)) {
    Mat4 tp = t.values(p);
    for (const Mat4& gamma : g.elements) {
      Mat4 tq = t.values(apply(gamma, p));
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          // (gamma^* T)_{ij}(p) = T_{kl}(gamma p) gamma_{ki} gamma_{lj}
          double pulled = 0.0;
          for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l)
              pulled += tq[k][l] * gamma[k][i] * gamma[l][j];
          worst = std::max(worst, std::fabs(pulled - tp[i][j]));
        }
    }
  }
  return worst;
}

double group_invariance_residual(const VectorField& y, const FiniteGroup& g,
                                 int samples) {
  double worst = 0.0;
  for (const Point& p : sample_points(samples)) {
    Vec4 yp = y.values(p);
    for (const Mat4& gamma : g.elements) {
      Vec4 yq = y.values(apply(gamma, p));
      // (gamma^* Y)(p) = gamma^{-1} Y(gamma p); gamma orthogonal.
      for (int i = 0; i < 4; ++i) {
        double pulled = 0.0;
        for (int k = 0; k < 4; ++k) pulled += gamma[k][i] * yq[k];
        worst = std::max(worst, std::fabs(pulled - yp[i]));
      }
    }
  }
  return worst;
}

}  // namespace eol
