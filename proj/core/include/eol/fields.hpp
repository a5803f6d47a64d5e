#pragma once

// Coordinate fields on flat R^4 evaluated through jet arithmetic.
//
// A field is defined once as a generic callable acting on the four
// coordinate jets; the wrappers below type-erase it at spatial orders 2
// and 3. Order 2 carries everything needed for curvature values, order 3
// additionally feeds first derivatives of curvature-level quantities.

#include <array>
#include <functional>
#include <utility>

#include "eol/jets.hpp"

namespace eol {

using Point = std::array<double, 4>;

template <class S>
using Vec4T = std::array<S, 4>;
template <class S>
using Mat4T = std::array<std::array<S, 4>, 4>;

using Vec4 = Vec4T<double>;
using Mat4 = Mat4T<double>;

template <int N>
Vec4T<Jet<N>> coordinate_jets(const Point& p) {
  Vec4T<Jet<N>> x;
  for (int i = 0; i < 4; ++i) x[i] = Jet<N>::coordinate(i, p[i]);
  return x;
}

template <class S>
S dot4(const Vec4T<S>& a, const Vec4T<S>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

class SymTensorField {
 public:
  SymTensorField() = default;

  template <class F>
  explicit SymTensorField(F f)
      : f2_([f](const Point& p) { return f(coordinate_jets<2>(p)); }),
        f3_([f](const Point& p) { return f(coordinate_jets<3>(p)); }) {}

  static SymTensorField from_evaluators(
      std::function<Mat4T<Jet<2>>(const Point&)> f2,
      std::function<Mat4T<Jet<3>>(const Point&)> f3) {
    SymTensorField r;
    r.f2_ = std::move(f2);
    r.f3_ = std::move(f3);
    return r;
  }

  Mat4T<Jet<2>> eval2(const Point& p) const { return f2_(p); }
  Mat4T<Jet<3>> eval3(const Point& p) const { return f3_(p); }

  Mat4 values(const Point& p) const {
    Mat4T<Jet<2>> j = eval2(p);
    Mat4 r;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) r[i][k] = j[i][k].v;
    return r;
  }

  explicit operator bool() const { return static_cast<bool>(f2_); }

 private:
  std::function<Mat4T<Jet<2>>(const Point&)> f2_;
  std::function<Mat4T<Jet<3>>(const Point&)> f3_;
};

class VectorField {
 public:
  VectorField() = default;

  template <class F>
  explicit VectorField(F f)
      : f2_([f](const Point& p) { return f(coordinate_jets<2>(p)); }),
        f3_([f](const Point& p) { return f(coordinate_jets<3>(p)); }) {}

  Vec4T<Jet<2>> eval2(const Point& p) const { return f2_(p); }
  Vec4T<Jet<3>> eval3(const Point& p) const { return f3_(p); }

  Vec4 values(const Point& p) const {
    Vec4T<Jet<2>> j = eval2(p);
    return {j[0].v, j[1].v, j[2].v, j[3].v};
  }

  explicit operator bool() const { return static_cast<bool>(f2_); }

 private:
  std::function<Vec4T<Jet<2>>(const Point&)> f2_;
  std::function<Vec4T<Jet<3>>(const Point&)> f3_;
};

inline SymTensorField add(const SymTensorField& a, const SymTensorField& b) {
  return SymTensorField::from_evaluators(
      [a, b](const Point& p) {
        Mat4T<Jet<2>> ja = a.eval2(p), jb = b.eval2(p), r;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) r[i][j] = ja[i][j] + jb[i][j];
        return r;
      },
      [a, b](const Point& p) {
        Mat4T<Jet<3>> ja = a.eval3(p), jb = b.eval3(p), r;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) r[i][j] = ja[i][j] + jb[i][j];
        return r;
      });
}

inline SymTensorField scale(double s, const SymTensorField& a) {
  return SymTensorField::from_evaluators(
      [s, a](const Point& p) {
        Mat4T<Jet<2>> ja = a.eval2(p);
        for (auto& row : ja)
          for (auto& e : row) e = e * s;
        return ja;
      },
      [s, a](const Point& p) {
        Mat4T<Jet<3>> ja = a.eval3(p);
        for (auto& row : ja)
          for (auto& e : row) e = e * s;
        return ja;
      });
}

}  // namespace eol
