#include "eol/quadrature.hpp"

#include <cmath>

#include "eol/errors.hpp"

namespace eol {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

SphereRule sphere_rule(double radius, int order) {
  if (radius <= 0.0 || order < 1)
    throw PreconditionViolated("sphere rule requires radius > 0, order >= 1");
  SphereRule rule;
  rule.radius = radius;
  rule.order = order;
  std::vector<double> t, wt;
  gauss_legendre(order, t, wt);
  const int m = 2 * order;  // equispaced nodes per periodic angle
  const double wxi = 2.0 * M_PI / m;
  const double s3 = radius * radius * radius;
  rule.nodes.reserve(static_cast<size_t>(order) * m * m);
  for (int a = 0; a < order; ++a) {
    // x = s(c cos x1, c sin x1, q cos x2, q sin x2), c^2 = (1+t)/2,
    // q^2 = (1-t)/2; dv = (s^3/4) dt dx1 dx2.
    double c = std::sqrt(0.5 * (1.0 + t[a]));
    double q = std::sqrt(0.5 * (1.0 - t[a]));
    double wa = s3 * wt[a] * 0.25 * wxi * wxi;
    for (int b = 0; b < m; ++b) {
      double x1 = wxi * b;
      double c1 = std::cos(x1), s1 = std::sin(x1);
      for (int d = 0; d < m; ++d) {
        double x2 = wxi * d;
        Point p{radius * c * c1, radius * c * s1,
                radius * q * std::cos(x2), radius * q * std::sin(x2)};
        rule.nodes.emplace_back(p, wa);
      }
    }
  }
  return rule;
}

namespace {

double pairwise_sum(const std::vector<double>& v, size_t lo, size_t hi) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

void check_invariance(const ScalarIntegrand& f, const SphereRule& rule,
                      const FiniteGroup& g) {
  if (g.order() <= 1) return;
  size_t stride = std::max<size_t>(1, rule.nodes.size() / 7);
  int checked = 0;
  for (size_t i = 0; i < rule.nodes.size() && checked < 8; i += stride) {
    const Point& p = rule.nodes[i].first;
    double fp = f(p);
    for (const Mat4& gamma : g.elements) {
      Point q{};
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) q[a] += gamma[a][b] * p[b];
      if (std::fabs(f(q) - fp) > 1e-8)
        throw NonInvariantIntegrand(
            "integrand is not invariant under the quotient group");
    }
    ++checked;
  }
}

}  // namespace

double integrate_scalar(const ScalarIntegrand& f, const SphereRule& rule,
                        const FiniteGroup& g) {
  check_invariance(f, rule, g);
  std::vector<double> terms;
  terms.reserve(rule.nodes.size());
  for (const auto& [p, w] : rule.nodes) terms.push_back(w * f(p));
  return pairwise_sum(terms, 0, terms.size()) / g.order();
}

double moment_oracle(const std::array<int, 4>& e) {
  for (int a : e)
    if (a % 2 == 1) return 0.0;
  double b[4], sum = 0.0, prod = 1.0;
  for (int i = 0; i < 4; ++i) {
    b[i] = 0.5 * (e[i] + 1);
    sum += b[i];
    prod *= std::tgamma(b[i]);
  }
  return 2.0 * prod / std::tgamma(sum);
}

double flux(const TensorIntegrand& t, const VectorField& x,
            const SphereRule& rule, const FiniteGroup& g) {
  double s = rule.radius;
  return integrate_scalar(
      [&](const Point& p) {
        Mat4 tv = t(p);
        Vec4 xv = x.values(p);
        double acc = 0.0;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) acc += tv[i][j] * xv[i] * p[j] / s;
        return acc;
      },
      rule, g);
}

double annulus_integral(const ScalarIntegrand& f, double r0, double r1,
                        int sphere_order, const FiniteGroup& g) {
  std::vector<double> x, w;
  gauss_legendre(32, x, w);
  double acc = 0.0;
  for (int i = 0; i < 32; ++i) {
    double r = 0.5 * (r0 + r1) + 0.5 * (r1 - r0) * x[i];
    SphereRule rule = sphere_rule(r, sphere_order);
    acc += 0.5 * (r1 - r0) * w[i] * integrate_scalar(f, rule, g);
  }
  return acc;
}

}  // namespace eol
