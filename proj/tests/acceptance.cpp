// Acceptance gate: twelve end-to-end criteria, one pass/fail line each.
// Exits nonzero when any criterion fails.

#include <cmath>
#include <cstdio>
#include <optional>
#include <random>
#include <vector>

#include "eol/curvature.hpp"
#include "eol/deformations.hpp"
#include "eol/forms.hpp"
#include "eol/obstructions.hpp"
#include "eol/quadrature.hpp"

using namespace eol;

namespace {

constexpr double kPi = 3.14159265358979323846;

double max_abs(const Mat4& m) {
  double r = 0.0;
  for (const auto& row : m)
    for (double e : row) r = std::max(r, std::fabs(e));
  return r;
}

double rel(double got, double want) {
  return std::fabs(got - want) / std::max(1.0, std::fabs(want));
}

Point random_point(std::mt19937& rng, double rmin, double rmax) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    Point p{u(rng), u(rng), u(rng), u(rng)};
    double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3]);
    if (r < 0.05) continue;
    double s = (rmin + (rmax - rmin) * (0.5 + 0.5 * u(rng))) / r;
    for (double& c : p) c *= s;
    return p;
  }
}

Mat3d random_sym3(std::mt19937& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Mat3d m{};
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) m[i][j] = m[j][i] = u(rng);
  return m;
}

Mat3d make_traceless(Mat3d m) {
  double t = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
  for (int i = 0; i < 3; ++i) m[i][i] -= t;
  return m;
}

OrbifoldPointData random_orbifold(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  OrbifoldPointData d;
  d.lambda = u(rng);
  d.w_plus = make_traceless(random_sym3(rng, 1.0));
  d.w_minus = make_traceless(random_sym3(rng, 1.0));
  return d;
}

BubbleAsymptotics random_volume_bubble(std::mt19937& rng) {
  BubbleAsymptotics b;
  b.gauge = Gauge::Volume;
  b.h_plus = random_sym3(rng, 1.0);
  b.h_minus = random_sym3(rng, 1.0);
  double ts = 0.0;
  for (int i = 0; i < 3; ++i) ts += b.h_plus[i][i] + b.h_minus[i][i];
  double shift = (ts + 1.0) / 6.0;  // move the trace sum to -1
  for (int i = 0; i < 3; ++i) {
    b.h_plus[i][i] -= shift;
    b.h_minus[i][i] -= shift;
  }
  return b;
}

SymTensorField random_poly_tensor(std::mt19937& rng, double scale = 0.3) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::array<double, 16> a{};
  std::array<double, 64> b{};
  std::array<double, 256> c{};
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      double v = u(rng);
      a[4 * i + j] = a[4 * j + i] = v;
      for (int k = 0; k < 4; ++k) {
        double w = u(rng);
        b[16 * i + 4 * j + k] = b[16 * j + 4 * i + k] = w;
        for (int l = 0; l < 4; ++l) {
          double q = u(rng);
          c[64 * i + 16 * j + 4 * k + l] = c[64 * j + 16 * i + 4 * k + l] = q;
        }
      }
    }
  return SymTensorField([a, b, c](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    Mat4T<S> h;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        S acc = S{} + a[4 * i + j];
        for (int k = 0; k < 4; ++k) {
          acc = acc + b[16 * i + 4 * j + k] * x[k];
          for (int l = 0; l < 4; ++l)
            acc = acc + c[64 * i + 16 * j + 4 * k + l] * (x[k] * x[l]);
        }
        h[i][j] = acc;
      }
    return h;
  });
}

// vector field supported in r < 0.8, C^2 at the cutoff
VectorField bump_vector(const Vec4& cv) {
  return VectorField([cv](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    S r2 = dot4(x, x);
    Vec4T<S> v{};
    if (value_of(r2) < 0.64) {
      S t = 0.64 - r2;
      S b = t * t * t;
      for (int i = 0; i < 4; ++i) v[i] = b * cv[i];
    }
    return v;
  });
}

Mat4 ricci_values(const SymTensorField& g, const Point& p) {
  Curvature<Jet<2>> c(g.eval2(p));
  Mat4T<Jet<2>> r = c.ricci();
  Mat4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = r[i][j].v;
  return out;
}

// 2-form coefficients of r^2 theta_i^- at order-2 jets.
Form2T<Jet<2>> r2_theta_minus_form(int i, const Point& p) {
  auto x = coordinate_jets<2>(p);
  Jet<2> r2 = dot4(x, x);
  std::array<Jet<2>, 3> c = theta_coefficients(Sign::Plus, i, x);
  Form2T<Jet<2>> f{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      Jet<2> acc{};
      for (int j = 0; j < 3; ++j) {
        double m = omega_basis(Sign::Minus, j)[b][a];  // F = M^T
        if (m != 0.0) acc = acc + m * c[j];
      }
      f[a][b] = r2 * acc;
    }
  return f;
}

struct Gate {
  int failures = 0;
  template <class F>
  void criterion(int id, const char* text, F f) {
    double worst;
    bool pass;
    try {
      worst = f();
      pass = worst <= 1.0;
    } catch (const std::exception& e) {
      std::printf("criterion %2d: FAIL  %s (exception: %s)\n", id, text,
                  e.what());
      ++failures;
      return;
    }
    std::printf("criterion %2d: %s  %s (worst margin %.3e)\n", id,
                pass ? "PASS" : "FAIL", text, worst);
    if (!pass) ++failures;
  }
};

}  // namespace

int main() {
  const SymTensorField e = euclidean_metric();
  const FiniteGroup g1 = group_trivial();
  const FiniteGroup g2 = group_cyclic(2);
  const int heavy = 8;
  Gate gate;

  // Every criterion returns its worst residual divided by the criterion's
  // tolerance, so any value <= 1 passes.

  gate.criterion(1, "flat and gravitational-instanton curvature anchors", [&] {
    double worst = 0.0;
    Mat4 re = ricci_values(e, {0.7, -0.2, 0.4, 0.9});
    if (max_abs(re) != 0.0) worst = 2.0;  // flat curvature must vanish exactly
    std::mt19937 rng(201u);
    SymTensorField eh = eguchi_hanson();
    for (int t = 0; t < 50; ++t) {
      Point p = random_point(rng, 0.3, 5.0);
      worst = std::max(worst, max_abs(ricci_values(eh, p)) / 1e-9);
    }
    for (int t = 0; t < 10; ++t) {
      Point p = random_point(rng, 0.4, 3.0);
      worst = std::max(worst,
                       std::fabs(laplacian(eh, eh_potential, p) - 8.0) / 1e-9);
    }
    return worst;
  });

  gate.criterion(2, "first- and second-order gauge identities", [&] {
    std::mt19937 rng(202u);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      SymTensorField h = random_poly_tensor(rng, 0.2);
      Point p = random_point(rng, 0.3, 1.2);
      Vec4 b = bianchi_flat_of_ricci1(h, p);
      for (double c : b) worst = std::max(worst, std::fabs(c) / 1e-10);
    }
    // divergence of the quadratic term for linearized-einstein inputs
    for (int t = 0; t < 10; ++t) {
      OrbifoldPointData d = random_orbifold(rng);
      d.lambda = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          d.w_plus[i][j] *= 0.5;
          d.w_minus[i][j] *= 0.5;
        }
      BubbleAsymptotics b = random_volume_bubble(rng);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          b.h_plus[i][j] *= 0.5;
          b.h_minus[i][j] *= 0.5;
        }
      SymTensorField h = (t % 2 == 0) ? h2_from_curvature(d)
                                      : h4_from_asymptotics(b);
      Point p = random_point(rng, 0.5, 1.4);
      Vec4 dv = divergence_flat_of_einstein2(h, h, p);
      for (double c : dv) worst = std::max(worst, std::fabs(c) / 1e-9);
    }
    return worst;
  });

  gate.criterion(3, "jet variations against finite-difference oracle", [&] {
    std::mt19937 rng(203u);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      SymTensorField h = random_poly_tensor(rng, 0.2);
      SymTensorField k = random_poly_tensor(rng, 0.2);
      Point p = random_point(rng, 0.3, 1.4);
      Mat4 got1 = ricci_variations(e, h, SymTensorField(), p).first_h;
      double st = 1e-4;
      Mat4 rp = ricci_values(add(e, scale(st, h)), p);
      Mat4 rm = ricci_values(add(e, scale(-st, h)), p);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          worst = std::max(
              worst, rel(got1[i][j], (rp[i][j] - rm[i][j]) / (2 * st)) / 1e-5);
      // mixed slot = 2 * polarized second variation
      Mat4 got2 = ricci_variations(e, h, k, p).second_hk;
      st = 1e-3;
      Mat4 pp = ricci_values(add(e, add(scale(st, h), scale(st, k))), p);
      Mat4 pm = ricci_values(add(e, add(scale(st, h), scale(-st, k))), p);
      Mat4 mp = ricci_values(add(e, add(scale(-st, h), scale(st, k))), p);
      Mat4 mm = ricci_values(add(e, add(scale(-st, h), scale(-st, k))), p);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          double fd =
              (pp[i][j] - pm[i][j] - mp[i][j] + mm[i][j]) / (4 * st * st);
          worst = std::max(worst, rel(2.0 * got2[i][j], fd) / 1e-5);
        }
    }
    return worst;
  });

  gate.criterion(4, "flux radius independence and gauge invariance", [&] {
    std::mt19937 rng(204u);
    const int order = 24;
    double worst = 0.0;
    SymTensorField h2s = h2_from_curvature(random_orbifold(rng));
    SymTensorField h4s = h4_from_asymptotics(random_volume_bubble(rng));
    SymTensorField samples[3] = {h2s, h4s, add(h2s, h4s)};
    const double radii[3] = {0.8, 1.0, 1.25};
    for (const SymTensorField& h : samples) {
      double v[3];
      for (int i = 0; i < 3; ++i) {
        TaubInput in{h, h, killing_field(Sign::Plus, 0), radii[i], g1, order};
        v[i] = taub_quantity(in);
      }
      double sc = std::max({1.0, std::fabs(v[0]), std::fabs(v[1])});
      worst = std::max({worst, std::fabs(v[1] - v[0]) / sc / 1e-9,
                        std::fabs(v[2] - v[1]) / sc / 1e-9});
      VectorField y = bump_vector({0.3, -0.2, 0.15, 0.25});
      SymTensorField hg = add(h, gauge_field(y));
      TaubInput base{h, h, killing_field(Sign::Plus, 0), 1.0, g1, order};
      TaubInput gauged{hg, hg, killing_field(Sign::Plus, 0), 1.0, g1, order};
      double a = taub_quantity(base);
      double b = taub_quantity(gauged);
      worst = std::max(worst,
                       std::fabs(a - b) / std::max(1.0, std::fabs(a)) / 1e-9);
    }
    return worst;
  });

  gate.criterion(5, "conformal boundary identities", [&] {
    std::mt19937 rng(205u);
    const int order = 24;
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
      SymTensorField h = h2_from_curvature(random_orbifold(rng));
      worst = std::max(
          worst, std::fabs(conformal_first_corrected(h, 1.0, g1, order)) / 1e-9);
    }
    // bare flux for inputs with vanishing first curvature variation
    for (int t = 0; t < 3; ++t) {
      BubbleAsymptotics b;
      if (t == 2) {
        b = eguchi_hanson_bubble();
      } else if (t == 1) {
        b.gauge = Gauge::CMC;
        b.h_plus = make_traceless(random_sym3(rng, 1.0));
        b.h_minus = make_traceless(random_sym3(rng, 1.0));
      } else {
        b = random_volume_bubble(rng);
      }
      SymTensorField h4 = h4_from_asymptotics(b);
      worst =
          std::max(worst, std::fabs(conformal_first(h4, 1.0, g1, order)) / 1e-10);
    }
    return worst;
  });

  gate.criterion(6, "asymptotic curvature block patterns", [&] {
    std::mt19937 rng(206u);
    double worst = 0.0;
    auto check_minus = [&](const BubbleAsymptotics& b, const Mat3d& want_r6) {
      SymTensorField h4 = h4_from_asymptotics(b);
      for (int t = 0; t < 4; ++t) {
        Point p = random_point(rng, 0.6, 1.8);
        double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
        double r6 = r2 * r2 * r2;
        SelfdualBlockVariation bv = block_variation(e, h4, p);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            worst = std::max(
                worst, rel(bv.minus[i][j] * r6, want_r6[i][j]) / 1e-9);
      }
    };
    {
      Mat3d want{};
      want[0][0] = 8.0;
      want[1][1] = -4.0;
      want[2][2] = -4.0;  // (4/r^6) diag(2,-1,-1)
      check_minus(eguchi_hanson_bubble(), want);
    }
    {
      BubbleAsymptotics b;
      b.gauge = Gauge::CMC;
      double h[3] = {0.7, -0.5, -0.2};
      for (int i = 0; i < 3; ++i) b.h_plus[i][i] = h[i];
      Mat3d want{};
      for (int i = 0; i < 3; ++i) want[i][i] = -24.0 * h[i];
      check_minus(b, want);
    }
    {
      BubbleAsymptotics b;
      b.gauge = Gauge::Volume;
      double h[3] = {-0.6, -0.3, 0.1};
      for (int i = 0; i < 3; ++i) b.h_plus[i][i] = h[i];
      Mat3d want{};
      for (int i = 0; i < 3; ++i)
        want[i][i] = -8.0 * (2.0 * h[i] - h[(i + 1) % 3] - h[(i + 2) % 3]);
      check_minus(b, want);
    }
    return worst;
  });

  gate.criterion(7, "quadratic-term closed form, pointwise and integrated", [&] {
    std::mt19937 rng(207u);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      OrbifoldPointData d = random_orbifold(rng);
      // pointwise: one bubble coefficient at a time
      int ti = t % 3, oj = (t / 3) % 3;
      double sgn = (ti == oj) ? -1.0 : 1.0;  // keep the volume trace <= 0
      BubbleAsymptotics unit;
      unit.gauge = Gauge::Volume;
      unit.h_plus[ti][oj] = sgn;
      unit.h_plus[oj][ti] = sgn;
      SymTensorField h2 = h2_from_curvature(d);
      Point p = random_point(rng, 0.5, 1.6);
      Mat4 got = ric2_tensor(unit, h2, p);
      Mat4 want = ric2_closed_form(oj + 1, ti + 1, d, p);
      Mat4 want2 = ric2_closed_form(ti + 1, oj + 1, d, p);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          double w = sgn * (want[i][j] + (ti == oj ? 0.0 : want2[i][j]));
          worst = std::max(worst, std::fabs(got[i][j] - w) / 1e-9);
        }
      // integrated: random coefficients against the analytic radial flux
      BubbleAsymptotics b = random_volume_bubble(rng);
      double got_flux = ric2_flux(h4_from_asymptotics(b), h2, radial_field(),
                                  1.0, g2, heavy);
      double trsum = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          double rp = d.w_plus[j][i] + (i == j ? d.lambda / 3.0 : 0.0);
          double rm = d.w_minus[j][i] + (i == j ? d.lambda / 3.0 : 0.0);
          trsum += b.h_plus[i][j] * rp + b.h_minus[i][j] * rm;
        }
      double want_flux = (2.0 * kPi * kPi / g2.order()) * trsum;
      worst = std::max(worst, std::fabs(got_flux - want_flux) / 1e-9);
    }
    return worst;
  });

  gate.criterion(8, "vanishing for trace-free pairs and anti-selfdual terms", [&] {
    std::mt19937 rng(208u);
    double worst = 0.0;
    BubbleAsymptotics bp, bm;
    bp.gauge = bm.gauge = Gauge::CMC;
    bp.h_plus = make_traceless(random_sym3(rng, 1.0));
    bm.h_minus = make_traceless(random_sym3(rng, 1.0));
    SymTensorField hp = h4_from_asymptotics(bp);
    SymTensorField hm = h4_from_asymptotics(bm);
    // the seven obstruction integrals of the pair
    worst = std::max(
        worst, std::fabs(ric2_flux(hp, hm, radial_field(), 1.0, g2, heavy)) / 1e-9);
    for (Sign sg : {Sign::Plus, Sign::Minus})
      for (int i = 0; i < 3; ++i)
        worst = std::max(
            worst,
            std::fabs(ric2_flux(hp, hm, killing_field(sg, i), 1.0, g2, heavy)) /
                1e-9);
    // anti-selfdual term alone: polarized fluxes and the conformal quantity
    for (Sign sg : {Sign::Plus, Sign::Minus})
      for (int i = 0; i < 3; ++i) {
        TaubInput in{hp, hp, killing_field(sg, i), 1.0, g2, heavy};
        worst = std::max(worst, std::fabs(taub_quantity(in)) / 1e-9);
      }
    worst = std::max(worst, std::fabs(conformal_second(hp, 1.0, g2, 24)) / 1e-9);
    return worst;
  });

  gate.criterion(9, "strictly negative radial obstruction on spherical data", [&] {
    std::mt19937 rng(209u);
    OrbifoldPointData d;
    d.lambda = 3.0;
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      BubbleAsymptotics b = random_volume_bubble(rng);
      ObstructionReport rep = desingularization_check(d, b, g2, 1e-8, heavy);
      if (rep.verdict != Verdict::Obstructed) worst = std::max(worst, 2.0);
      // normalized radial value must sit below -1e-3
      if (rep.radial > -1e-3) worst = std::max(worst, 2.0);
    }
    return worst;
  });

  gate.criterion(10, "three equivalent tests of the block condition", [&] {
    std::mt19937 rng(210u);
    BubbleAsymptotics eh = eguchi_hanson_bubble();
    SymTensorField h4 = h4_from_asymptotics(eh);
    VectorField y2 = killing_field(Sign::Plus, 1);
    VectorField y3 = killing_field(Sign::Plus, 2);
    double c_flux[3] = {0.0, 0.0, 0.0};
    double c_biq[3] = {0.0, 0.0, 0.0};
    bool fitted[3] = {false, false, false};
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      OrbifoldPointData d = random_orbifold(rng);
      d.lambda = 0.0;  // divergence-free quadratic data
      if (t % 5 == 4) {
        for (int j = 0; j < 3; ++j) d.w_plus[0][j] = d.w_plus[j][0] = 0.0;
        double half = (d.w_plus[1][1] + d.w_plus[2][2]) / 2.0;
        d.w_plus[1][1] -= half;
        d.w_plus[2][2] -= half;
      }
      SymTensorField h2 = h2_from_curvature(d);
      double fluxes[3] = {ric2_flux(h4, h2, radial_field(), 1.0, g2, heavy),
                          ric2_flux(h4, h2, y2, 1.0, g2, heavy),
                          ric2_flux(h4, h2, y3, 1.0, g2, heavy)};
      double biqs[3] = {biq_pairing(h2, h4, std::nullopt, g2, heavy),
                        biq_pairing(h2, h4, y2, g2, heavy),
                        biq_pairing(h2, h4, y3, g2, heavy)};
      double ent_f[3] = {d.w_plus[0][0], d.w_plus[0][2], -d.w_plus[0][1]};
      double ent_b[3] = {d.w_plus[0][0], -d.w_plus[0][2], d.w_plus[0][1]};
      bool z_row = std::max({std::fabs(d.w_plus[0][0]),
                             std::fabs(d.w_plus[0][1]),
                             std::fabs(d.w_plus[0][2])}) < 1e-8;
      bool z_flux = std::max({std::fabs(fluxes[0]), std::fabs(fluxes[1]),
                              std::fabs(fluxes[2])}) < 1e-8;
      bool z_biq = std::max({std::fabs(biqs[0]), std::fabs(biqs[1]),
                             std::fabs(biqs[2])}) < 1e-8;
      if (z_row != z_flux || z_row != z_biq) worst = std::max(worst, 2.0);
      for (int c = 0; c < 3; ++c) {
        if (std::fabs(ent_f[c]) < 0.05) continue;
        double rf = fluxes[c] / ent_f[c];
        double rb = biqs[c] / ent_b[c];
        if (!fitted[c]) {
          c_flux[c] = rf;
          c_biq[c] = rb;
          fitted[c] = true;
          if (std::fabs(rf) < 1e-10 || std::fabs(rb) < 1e-10)
            worst = std::max(worst, 2.0);
          continue;
        }
        worst = std::max(worst, std::fabs(rf - c_flux[c]) /
                                    std::max(1.0, std::fabs(c_flux[c])) / 1e-6);
        worst = std::max(worst, std::fabs(rb - c_biq[c]) /
                                    std::max(1.0, std::fabs(c_biq[c])) / 1e-6);
      }
    }
    return worst;
  });

  gate.criterion(11, "rotation-form identities and the spherical quadratic term", [&] {
    std::mt19937 rng(211u);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      Point p = random_point(rng, 0.4, 1.8);
      double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
      for (int i = 0; i < 3; ++i) {
        Form2T<Jet<2>> f = r2_theta_minus_form(i, p);
        Form1T<Jet<2>> sd = star_form3(d_form2(f));
        Vec4 al = alpha_covector(Sign::Plus, i, p);
        for (int a = 0; a < 4; ++a)
          worst = std::max(worst,
                           std::fabs(sd[a].v + 6.0 * r2 * al[a]) / 1e-10);
        Form2T<Jet<2>> dd = d_form1(sd);
        Mat4 w = omega_basis(Sign::Plus, i);
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b)
            worst = std::max(worst,
                             std::fabs(-dd[a][b].v - 6.0 * w[b][a]) / 1e-10);
      }
    }
    OrbifoldPointData d;
    d.lambda = 3.0;
    SymTensorField h2 = h2_from_curvature(d);
    for (int t = 0; t < 20; ++t) {
      Point p = random_point(rng, 0.3, 1.8);
      double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
      Mat4 v = h2.values(p);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          double sphere = (i == j ? r2 : 0.0) - p[i] * p[j];
          worst = std::max(worst, std::fabs(v[i][j] + sphere / 3.0) / 1e-14);
        }
    }
    return worst;
  });

  gate.criterion(12, "quadrature exactness and order stability", [&] {
    double worst = 0.0;
    SphereRule rule = sphere_rule(1.0, 12);
    for (int a = 0; a <= 8; ++a)
      for (int b = 0; a + b <= 8; ++b)
        for (int c = 0; a + b + c <= 8; ++c)
          for (int d = 0; a + b + c + d <= 8; ++d) {
            double got = integrate_scalar(
                [&](const Point& p) {
                  return std::pow(p[0], a) * std::pow(p[1], b) *
                         std::pow(p[2], c) * std::pow(p[3], d);
                },
                rule, g1);
            worst = std::max(
                worst, std::fabs(got - moment_oracle({a, b, c, d})) / 1e-12);
          }
    std::mt19937 rng(212u);
    OrbifoldPointData d = random_orbifold(rng);
    BubbleAsymptotics b = random_volume_bubble(rng);
    ObstructionReport r1 = desingularization_check(d, b, g2, 1e-8, 10);
    ObstructionReport r2 = desingularization_check(d, b, g2, 1e-8, 20);
    auto stable = [&](double v1, double v2) {
      worst = std::max(
          worst, std::fabs(v2 - v1) / std::max(1.0, std::fabs(v2)) / 1e-10);
    };
    stable(r1.radial, r2.radial);
    stable(r1.closed_form, r2.closed_form);
    for (int i = 0; i < 3; ++i) {
      stable(r1.killing_plus[i], r2.killing_plus[i]);
      stable(r1.killing_minus[i], r2.killing_minus[i]);
    }
    return worst;
  });

  if (gate.failures == 0) {
    std::printf("all 12 criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", gate.failures);
  return 1;
}
