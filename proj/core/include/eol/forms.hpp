#pragma once

// Minimal exterior calculus on flat R^4 with jet-valued coefficients.
// 2-forms are stored by their coefficients F[i][j] (antisymmetric), so
// that the form sum_{i<j} F_ij dx^i ^ dx^j has F = M^T for the action
// matrix M used elsewhere ((M v)_a = M[a][b] v_b with M[j][i] = +1 for
// dx^i ^ dx^j). Hodge star uses the orientation dx1^dx2^dx3^dx4 > 0.

#include <array>

#include "eol/fields.hpp"

namespace eol {

constexpr int levi_civita(int a, int b, int c, int d) {
  int p[4] = {a, b, c, d};
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (p[i] == p[j]) return 0;
      if (p[i] > p[j]) {
        int t = p[i];
        p[i] = p[j];
        p[j] = t;
        sign = -sign;
      }
    }
  return sign;
}

template <class S>
using Form1T = std::array<S, 4>;
template <class S>
using Form2T = std::array<std::array<S, 4>, 4>;
template <class S>
using Form3T = std::array<std::array<std::array<S, 4>, 4>, 4>;

// Exterior derivative of a 1-form, normalized as the antisymmetrized
// average (1/2)(d_a u_b - d_b u_a) so that d(r^2 alpha_i^s) = omega_i^s
// in the F = M^T coefficient convention used for the constant bases.
template <class S>
Form2T<S> d_form1(const Form1T<S>& u) {
  Form2T<S> r{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      r[a][b] = 0.5 * (deriv(u[b], a) - deriv(u[a], b));
  return r;
}

template <class S>
Form3T<S> d_form2(const Form2T<S>& f) {
  Form3T<S> r{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        r[a][b][c] = deriv(f[b][c], a) - deriv(f[a][c], b) + deriv(f[a][b], c);
  return r;
}

template <class S>
Form2T<S> star_form2(const Form2T<S>& f) {
  Form2T<S> r{};
  for (int c = 0; c < 4; ++c)
    for (int d = 0; d < 4; ++d) {
      S acc{};
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          int e = levi_civita(a, b, c, d);
          if (e != 0) acc = acc + (0.5 * e) * f[a][b];
        }
      r[c][d] = acc;
    }
  return r;
}

template <class S>
Form1T<S> star_form3(const Form3T<S>& t) {
  Form1T<S> r{};
  for (int d = 0; d < 4; ++d) {
    S acc{};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c) {
          int e = levi_civita(a, b, c, d);
          if (e != 0) acc = acc + (e / 6.0) * t[a][b][c];
        }
    r[d] = acc;
  }
  return r;
}

template <class S>
Form3T<S> wedge_21(const Form2T<S>& f, const Form1T<S>& u) {
  Form3T<S> r{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        r[a][b][c] = f[a][b] * u[c] + f[b][c] * u[a] + f[c][a] * u[b];
  return r;
}

}  // namespace eol
