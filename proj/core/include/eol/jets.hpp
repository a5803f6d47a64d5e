#pragma once

// Truncated Taylor ("jet") arithmetic in four flat coordinates, together
// with a two-parameter nilpotent extension used to read off first and
// second variations of nonlinear expressions in a single evaluation.

#include <array>
#include <cmath>
#include <cstddef>

#include "eol/errors.hpp"

namespace eol {

inline constexpr int kDim = 4;

// Plain-double overloads so generic field code can run on raw values.
inline double inv(double x) {
  if (x == 0.0) throw DivisionByZero("reciprocal of zero");
  return 1.0 / x;
}
inline double sqrt(double x) {
  if (x <= 0.0) throw NonPositiveBase("square root of non-positive value");
  return std::sqrt(x);
}

namespace detail {

template <int N>
struct ThirdOrderSlot {
  // flat [i][j][k] -> 16*i + 4*j + k
  std::array<double, 64> t{};
};
template <>
struct ThirdOrderSlot<2> {};

}  // namespace detail

// Jet<N>: value + derivatives up to spatial order N (N = 2 or 3) at a point.
// Order 2 is the workhorse; order 3 exists so that first derivatives of
// curvature-level quantities (divergences, Bianchi operators) can be formed
// without finite differencing.
template <int N>
struct Jet : detail::ThirdOrderSlot<N> {
  static_assert(N == 2 || N == 3, "only spatial orders 2 and 3 are supported");

  double v = 0.0;
  std::array<double, 4> g{};   // gradient
  std::array<double, 16> h{};  // hessian, flat [i][j] -> 4*i + j

  double& hess(int i, int j) { return h[4 * i + j]; }
  double hess(int i, int j) const { return h[4 * i + j]; }

  double third(int i, int j, int k) const {
    if constexpr (N == 3) {
      return this->t[16 * i + 4 * j + k];
    } else {
      return 0.0;
    }
  }
  double& third_ref(int i, int j, int k)
    requires(N == 3)
  {
    return this->t[16 * i + 4 * j + k];
  }

  static Jet constant(double c) {
    Jet r;
    r.v = c;
    return r;
  }

  // Jet of the coordinate function x_i at a point with i-th coordinate xi.
  static Jet coordinate(int i, double xi) {
    Jet r;
    r.v = xi;
    r.g[i] = 1.0;
    return r;
  }
};

using SpatialJet2 = Jet<2>;

template <int N>
Jet<N> operator+(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r;
  r.v = a.v + b.v;
  for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] + b.g[i];
  for (int i = 0; i < 16; ++i) r.h[i] = a.h[i] + b.h[i];
  if constexpr (N == 3)
    for (int i = 0; i < 64; ++i) r.t[i] = a.t[i] + b.t[i];
  return r;
}

template <int N>
Jet<N> operator-(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r;
  r.v = a.v - b.v;
  for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] - b.g[i];
  for (int i = 0; i < 16; ++i) r.h[i] = a.h[i] - b.h[i];
  if constexpr (N == 3)
    for (int i = 0; i < 64; ++i) r.t[i] = a.t[i] - b.t[i];
  return r;
}

template <int N>
Jet<N> operator-(const Jet<N>& a) {
  Jet<N> r;
  r.v = -a.v;
  for (int i = 0; i < 4; ++i) r.g[i] = -a.g[i];
  for (int i = 0; i < 16; ++i) r.h[i] = -a.h[i];
  if constexpr (N == 3)
    for (int i = 0; i < 64; ++i) r.t[i] = -a.t[i];
  return r;
}

template <int N>
Jet<N> operator*(const Jet<N>& a, double s) {
  Jet<N> r;
  r.v = a.v * s;
  for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] * s;
  for (int i = 0; i < 16; ++i) r.h[i] = a.h[i] * s;
  if constexpr (N == 3)
    for (int i = 0; i < 64; ++i) r.t[i] = a.t[i] * s;
  return r;
}
template <int N>
Jet<N> operator*(double s, const Jet<N>& a) {
  return a * s;
}
template <int N>
Jet<N> operator+(const Jet<N>& a, double s) {
  Jet<N> r = a;
  r.v += s;
  return r;
}
template <int N>
Jet<N> operator+(double s, const Jet<N>& a) {
  return a + s;
}
template <int N>
Jet<N> operator-(const Jet<N>& a, double s) {
  Jet<N> r = a;
  r.v -= s;
  return r;
}
template <int N>
Jet<N> operator-(double s, const Jet<N>& a) {
  return (-a) + s;
}

// Leibniz product through order N.
template <int N>
Jet<N> operator*(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r;
  r.v = a.v * b.v;
  for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      r.h[4 * i + j] = a.hess(i, j) * b.v + a.g[i] * b.g[j] +
                       a.g[j] * b.g[i] + a.v * b.hess(i, j);
  if constexpr (N == 3) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          r.t[16 * i + 4 * j + k] =
              a.third(i, j, k) * b.v + a.v * b.third(i, j, k) +
              a.hess(i, j) * b.g[k] + a.hess(i, k) * b.g[j] +
              a.hess(j, k) * b.g[i] + a.g[k] * b.hess(i, j) +
              a.g[j] * b.hess(i, k) + a.g[i] * b.hess(j, k);
  }
  return r;
}

// Derivative of a jet in direction d: drops the spatial order by one.
// The top-order slot of the result is zero; callers that need exact
// top-order data must start from a Jet<3>.
template <int N>
Jet<N> deriv(const Jet<N>& a, int d) {
  Jet<N> r;
  r.v = a.g[d];
  for (int i = 0; i < 4; ++i) r.g[i] = a.hess(d, i);
  if constexpr (N == 3) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) r.h[4 * i + j] = a.third(d, i, j);
  }
  return r;
}

template <int N>
Jet<2> truncate2(const Jet<N>& a) {
  Jet<2> r;
  r.v = a.v;
  r.g = a.g;
  r.h = a.h;
  return r;
}

// Reciprocal. With a0 = a.v, u = a/a0 - 1 has vanishing value slot, so
// u^(N+1) = 0 in the truncated algebra and the geometric series is finite.
template <int N>
Jet<N> inv(const Jet<N>& a) {
  if (a.v == 0.0)
    throw DivisionByZero("jet reciprocal: value slot is zero");
  const double ia = 1.0 / a.v;
  Jet<N> u = a * ia;
  u.v = 0.0;
  Jet<N> u2 = u * u;
  Jet<N> acc = Jet<N>::constant(1.0) - u + u2;
  if constexpr (N == 3) acc = acc - u2 * u;
  return acc * ia;
}

// Square root via the binomial series in the same nilpotent variable.
template <int N>
Jet<N> sqrt(const Jet<N>& a) {
  if (a.v <= 0.0)
    throw NonPositiveBase("jet square root: value slot is not positive");
  const double s0 = std::sqrt(a.v);
  Jet<N> u = a * (1.0 / a.v);
  u.v = 0.0;
  Jet<N> u2 = u * u;
  Jet<N> acc = Jet<N>::constant(1.0) + 0.5 * u - 0.125 * u2;
  if constexpr (N == 3) acc = acc + 0.0625 * (u2 * u);
  return acc * s0;
}

inline double value_of(double x) { return x; }
template <int N>
double value_of(const Jet<N>& a) {
  return a.v;
}

// Two-parameter extension: value + eps1, eps2, eps1*eps2 slots with
// eps1^2 = eps2^2 = 0. Encodes g + eps1*h + eps2*k, so that the c10/c01
// slots of any expression are its first variations and half the c11 slot
// is the polarized second variation.
template <int N>
struct BiJet {
  Jet<N> c00, c10, c01, c11;

  static BiJet embed(const Jet<N>& a) {
    BiJet r;
    r.c00 = a;
    return r;
  }
  static BiJet constant(double c) { return embed(Jet<N>::constant(c)); }
};

using BiJetScalar = BiJet<2>;

template <int N>
BiJet<N> operator+(const BiJet<N>& a, const BiJet<N>& b) {
  return {a.c00 + b.c00, a.c10 + b.c10, a.c01 + b.c01, a.c11 + b.c11};
}
template <int N>
BiJet<N> operator-(const BiJet<N>& a, const BiJet<N>& b) {
  return {a.c00 - b.c00, a.c10 - b.c10, a.c01 - b.c01, a.c11 - b.c11};
}
template <int N>
BiJet<N> operator-(const BiJet<N>& a) {
  return {-a.c00, -a.c10, -a.c01, -a.c11};
}
template <int N>
BiJet<N> operator*(const BiJet<N>& a, double s) {
  return {a.c00 * s, a.c10 * s, a.c01 * s, a.c11 * s};
}
template <int N>
BiJet<N> operator*(double s, const BiJet<N>& a) {
  return a * s;
}
template <int N>
BiJet<N> operator+(const BiJet<N>& a, double s) {
  BiJet<N> r = a;
  r.c00 = r.c00 + s;
  return r;
}
template <int N>
BiJet<N> operator+(double s, const BiJet<N>& a) {
  return a + s;
}
template <int N>
BiJet<N> operator-(const BiJet<N>& a, double s) {
  BiJet<N> r = a;
  r.c00 = r.c00 - s;
  return r;
}
template <int N>
BiJet<N> operator-(double s, const BiJet<N>& a) {
  return (-a) + s;
}

template <int N>
BiJet<N> operator*(const BiJet<N>& a, const BiJet<N>& b) {
  BiJet<N> r;
  r.c00 = a.c00 * b.c00;
  r.c10 = a.c10 * b.c00 + a.c00 * b.c10;
  r.c01 = a.c01 * b.c00 + a.c00 * b.c01;
  r.c11 = a.c11 * b.c00 + a.c00 * b.c11 + a.c10 * b.c01 + a.c01 * b.c10;
  return r;
}

template <int N>
BiJet<N> deriv(const BiJet<N>& a, int d) {
  return {deriv(a.c00, d), deriv(a.c10, d), deriv(a.c01, d), deriv(a.c11, d)};
}

// Reciprocal: u = (a - c00)/c00 lives in the (eps1, eps2) ideal, so u^3 = 0
// and only 1 - u + u^2 survives; the spatial reciprocal of c00 is then the
// finite jet series above.
template <int N>
BiJet<N> inv(const BiJet<N>& a) {
  Jet<N> i0 = inv(a.c00);
  BiJet<N> u;
  u.c10 = a.c10 * i0;
  u.c01 = a.c01 * i0;
  u.c11 = a.c11 * i0;
  BiJet<N> acc = BiJet<N>::constant(1.0) - u + u * u;
  return acc * BiJet<N>::embed(i0);
}

template <int N>
BiJet<N> sqrt(const BiJet<N>& a) {
  Jet<N> s0 = sqrt(a.c00);
  Jet<N> i0 = inv(a.c00);
  BiJet<N> u;
  u.c10 = a.c10 * i0;
  u.c01 = a.c01 * i0;
  u.c11 = a.c11 * i0;
  BiJet<N> acc =
      BiJet<N>::constant(1.0) + 0.5 * u - 0.125 * (u * u);
  return acc * BiJet<N>::embed(s0);
}

template <int N>
double value_of(const BiJet<N>& a) {
  return a.c00.v;
}

}  // namespace eol
