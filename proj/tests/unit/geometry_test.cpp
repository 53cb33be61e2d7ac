#include <doctest.h>

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "spintrng/errors.hpp"
#include "spintrng/geometry.hpp"
#include "spintrng/vec3.hpp"

using namespace spintrng;

namespace {

constexpr double pi = std::numbers::pi;

// Long-axis demagnetization factor of a prolate spheroid with semi-axes
// (c, s, s), c > s (standard closed form in terms of the eccentricity).
double prolate_long_axis_factor(double c, double s) {
  const double e = std::sqrt(1.0 - (s * s) / (c * c));
  return (1.0 - e * e) / (e * e) *
         (std::log((1.0 + e) / (1.0 - e)) / (2.0 * e) - 1.0);
}

// ---------------------------------------------------------------------------
// Independent oracle: magnetometric demag factor of the *actual* elliptic
// cylinder from the magnetostatic self-energy in surface-charge form,
//
//   N_axis = 1/(4 pi V) * SS dA dA' (n.axis)(n'.axis) / |r - r'| ,
//
// evaluated by panel quadrature.  Singular (self/near) panel pairs are
// subdivided 3x3 in parameter space; each exactly-coincident subpair is
// evaluated with the closed-form self-potential of a flat uniformly charged
// rectangle, which keeps the quadrature bias well under the comparison
// tolerance even for the thin-plate geometry.  The closed form in the
// library uses the inscribed ellipsoid, so agreement is expected only to
// the per-test shape-approximation tolerance.

struct Panel {
  double u0, u1, v0, v1;
  int face;  // 0 lateral, +1 top cap, -1 bottom cap
};

struct PanelGeometry {
  std::function<Vec3(double, double, int)> point;
  std::function<double(double, double, int)> charge_density;  // per du dv
  // {length per unit du, length per unit dv, area jacobian dA/(du dv)}.
  std::function<std::array<double, 3>(double, double, int)> metric;
};

// SS dA dA' / |r - r'| over a w x h rectangle with unit charge density.
double rect_self_integral(double w, double h) {
  const double d = std::hypot(w, h);
  return 2.0 * (w * w * h * std::log((h + d) / w) +
                w * h * h * std::log((w + d) / h)) +
         (2.0 / 3.0) * (w * w * w + h * h * h - d * d * d);
}

double pair_sum(const Panel& p, const Panel& q, const PanelGeometry& g, int nsub) {
  double s = 0.0;
  const double du_p = (p.u1 - p.u0) / nsub, dv_p = (p.v1 - p.v0) / nsub;
  const double du_q = (q.u1 - q.u0) / nsub, dv_q = (q.v1 - q.v0) / nsub;
  for (int i = 0; i < nsub; ++i) {
    for (int j = 0; j < nsub; ++j) {
      const double up = p.u0 + (i + 0.5) * du_p, vp = p.v0 + (j + 0.5) * dv_p;
      const Vec3 rp = g.point(up, vp, p.face);
      const double qp = g.charge_density(up, vp, p.face) * du_p * dv_p;
      for (int k = 0; k < nsub; ++k) {
        for (int l = 0; l < nsub; ++l) {
          const double uq = q.u0 + (k + 0.5) * du_q, vq = q.v0 + (l + 0.5) * dv_q;
          const Vec3 rq = g.point(uq, vq, q.face);
          const double d = norm(rp - rq);
          if (d < 1e-15) {
            // Coincident subpair of a self-panel: use the exact flat-rectangle
            // self-potential with the local surface charge density.
            const std::array<double, 3> m = g.metric(up, vp, p.face);
            const double sigma = g.charge_density(up, vp, p.face) / m[2];
            s += sigma * sigma * rect_self_integral(m[0] * du_p, m[1] * dv_p);
            continue;
          }
          s += qp * g.charge_density(uq, vq, q.face) * du_q * dv_q / d;
        }
      }
    }
  }
  return s;
}

double charge_energy(const std::vector<Panel>& panels, const PanelGeometry& g,
                     double near_distance) {
  double s = 0.0;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    for (std::size_t j = i; j < panels.size(); ++j) {
      const Panel &p = panels[i], &q = panels[j];
      const Vec3 cp = g.point(0.5 * (p.u0 + p.u1), 0.5 * (p.v0 + p.v1), p.face);
      const Vec3 cq = g.point(0.5 * (q.u0 + q.u1), 0.5 * (q.v0 + q.v1), q.face);
      const double d = norm(cp - cq);
      const double mult = (i == j) ? 1.0 : 2.0;  // symmetric off-diagonal pairs
      if (i == j || d < near_distance) {
        s += mult * pair_sum(p, q, g, 3);
      } else {
        const double qp = g.charge_density(0.5 * (p.u0 + p.u1), 0.5 * (p.v0 + p.v1),
                                           p.face) *
                          (p.u1 - p.u0) * (p.v1 - p.v0);
        const double qq = g.charge_density(0.5 * (q.u0 + q.u1), 0.5 * (q.v0 + q.v1),
                                           q.face) *
                          (q.u1 - q.u0) * (q.v1 - q.v0);
        s += mult * qp * qq / d;
      }
    }
  }
  return s;
}

// axis: 0 = x (easy), 1 = y, 2 = z (out of plane).
double demag_factor_oracle(const MtjGeometry& geom, int axis) {
  const double a = geom.major_axis / 2.0;
  const double b = geom.minor_axis / 2.0;
  const double t = geom.free_layer_thickness;

  std::vector<Panel> panels;
  PanelGeometry g;
  double near = 0.0;
  if (axis == 0 || axis == 1) {
    // Charge lives on the lateral wall only.  Parameters: u = ellipse angle,
    // v = height.  (n.x) dA = b cos u du dv, (n.y) dA = a sin u du dv.
    const int nu = 96, nv = 16;
    for (int i = 0; i < nu; ++i) {
      for (int j = 0; j < nv; ++j) {
        panels.push_back({2.0 * pi * i / nu, 2.0 * pi * (i + 1) / nu,
                          -t / 2 + t * j / nv, -t / 2 + t * (j + 1) / nv, 0});
      }
    }
    g.point = [=](double u, double v, int) {
      return Vec3{a * std::cos(u), b * std::sin(u), v};
    };
    g.charge_density = [=](double u, double, int) {
      return axis == 0 ? b * std::cos(u) : a * std::sin(u);
    };
    g.metric = [=](double u, double, int) {
      const double lu = std::hypot(a * std::sin(u), b * std::cos(u));
      return std::array<double, 3>{lu, 1.0, lu};
    };
    near = 2.5 * std::max(2.0 * pi * std::max(a, b) / nu, t / nv);
  } else {
    // Charge on the caps: u = scaled radius in [0,1], v = angle.
    // dA = a b u du dv; density +-1.
    const int nr = 14, nphi = 56;
    for (int sgn : {+1, -1}) {
      for (int i = 0; i < nr; ++i) {
        for (int j = 0; j < nphi; ++j) {
          panels.push_back({static_cast<double>(i) / nr,
                            static_cast<double>(i + 1) / nr,
                            2.0 * pi * j / nphi, 2.0 * pi * (j + 1) / nphi, sgn});
        }
      }
    }
    g.point = [=](double u, double v, int face) {
      return Vec3{a * u * std::cos(v), b * u * std::sin(v), face * t / 2.0};
    };
    g.charge_density = [=](double u, double, int face) {
      return face * a * b * u;
    };
    g.metric = [=](double u, double v, int) {
      return std::array<double, 3>{std::hypot(a * std::cos(v), b * std::sin(v)),
                                   u * std::hypot(a * std::sin(v), b * std::cos(v)),
                                   a * b * u};
    };
    near = 2.5 * std::max(a / nr, 2.0 * pi * std::max(a, b) / nphi);
  }
  const double volume = ellipse_volume(geom);
  return charge_energy(panels, g, near) / (4.0 * pi * volume);
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("validation rejects degenerate shapes") {
  CHECK_THROWS_AS(validate(MtjGeometry{0.0, 1e-9, 1e-9}), ConfigError);
  CHECK_THROWS_AS(validate(MtjGeometry{1e-9, 2e-9, 1e-9}), ConfigError);  // minor > major
  CHECK_THROWS_AS(validate(MtjGeometry{2e-9, 1e-9, 0.0}), ConfigError);
  CHECK_NOTHROW(validate(MtjGeometry{2e-9, 1e-9, 1e-9}));
}

TEST_CASE("area and volume closed forms") {
  const MtjGeometry g{60e-9, 20e-9, 3e-9};
  CHECK(ellipse_area(g) == doctest::Approx(pi / 4 * 60e-9 * 20e-9).epsilon(1e-14));
  CHECK(ellipse_volume(g) ==
        doctest::Approx(pi / 4 * 60e-9 * 20e-9 * 3e-9).epsilon(1e-14));
}

TEST_CASE("carlson R_D identities") {
  // R_D(x,x,x) = x^{-3/2}; degree -3/2 homogeneity.
  CHECK(detail::carlson_rd(1, 1, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(detail::carlson_rd(4, 4, 4) == doctest::Approx(0.125).epsilon(1e-12));
  const double r = detail::carlson_rd(0.5, 2.0, 1.25);
  CHECK(detail::carlson_rd(2 * 0.5, 2 * 2.0, 2 * 1.25) ==
        doctest::Approx(r / (2 * std::sqrt(2.0))).epsilon(1e-12));
}

TEST_CASE("sphere limit: equal axes give 1/3 each") {
  const DemagFactors n = demag_factors(MtjGeometry{10e-9, 10e-9, 10e-9});
  CHECK(n.nx == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  CHECK(n.ny == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  CHECK(n.nz == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("factors sum to one") {
  for (const auto& g : {MtjGeometry{55e-9, 18e-9, 2.5e-9},
                        MtjGeometry{21e-9, 10.5e-9, 10.5e-9},
                        MtjGeometry{100e-9, 99e-9, 1e-9}}) {
    const DemagFactors n = demag_factors(g);
    CHECK(n.nx + n.ny + n.nz == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(n.nx > 0.0);
    CHECK(n.ny > 0.0);
    CHECK(n.nz > 0.0);
  }
}

TEST_CASE("prolate 2:1 spheroid against the textbook closed form") {
  // Circular cross-section element: the inscribed ellipsoid is an exact
  // prolate spheroid, so the general Carlson-integral route must reproduce
  // the classical eccentricity formula.
  const MtjGeometry g{21e-9, 10.5e-9, 10.5e-9};
  const DemagFactors n = demag_factors(g);
  const double n_long = prolate_long_axis_factor(10.5e-9, 5.25e-9);
  CHECK(n.nx == doctest::Approx(n_long).epsilon(1e-10));
  CHECK(n.ny == doctest::Approx((1.0 - n_long) / 2.0).epsilon(1e-10));
  CHECK(n.nz == doctest::Approx(n.ny).epsilon(1e-12));
  CHECK(n.nx == doctest::Approx(0.173563).epsilon(1e-5));
}

TEST_CASE("thin-film limit pushes the factor onto the normal axis") {
  const DemagFactors n = demag_factors(MtjGeometry{80e-9, 80e-9, 1e-9});
  CHECK(n.nz > 0.95);
  CHECK(n.nx == doctest::Approx(n.ny).epsilon(1e-12));
  CHECK(n.nx < 0.03);
}

TEST_CASE("surface-charge oracle on an extreme flat plate (shape tolerance 0.07)") {
  // The library's closed form inscribes an ellipsoid in the elliptic
  // cylinder.  The energy-quadrature oracle evaluates the cylinder itself,
  // so the comparison bounds the shape-approximation error, not roundoff.
  // For this 22:7:1 plate the converged cylinder factors are about
  // (0.035, 0.163, 0.807) against the ellipsoid's (0.022, 0.113, 0.865):
  // the approximation genuinely drifts to ~0.05-0.06 on the short axes as
  // the element flattens, so the plate case is bounded at 0.07 while the
  // near-nominal needle below holds the tighter 0.05.
  const MtjGeometry g{55e-9, 18e-9, 2.5e-9};
  const DemagFactors n = demag_factors(g);
  const double ox = demag_factor_oracle(g, 0);
  const double oy = demag_factor_oracle(g, 1);
  const double oz = demag_factor_oracle(g, 2);
  CHECK(std::abs(n.nx - ox) < 0.07);
  CHECK(std::abs(n.ny - oy) < 0.07);
  CHECK(std::abs(n.nz - oz) < 0.07);
  // The oracle's own consistency: magnetometric factors sum to one.
  CHECK(ox + oy + oz == doctest::Approx(1.0).epsilon(0.03));
  // Axis ordering is shape-independent: long axis smallest, normal largest.
  CHECK(ox < oy);
  CHECK(oy < oz);
}

TEST_CASE("surface-charge oracle on the nominal needle element") {
  const MtjGeometry g{21e-9, 10.5e-9, 10.5e-9};
  const DemagFactors n = demag_factors(g);
  const double ox = demag_factor_oracle(g, 0);
  const double oy = demag_factor_oracle(g, 1);
  CHECK(std::abs(n.nx - ox) < 0.05);
  CHECK(std::abs(n.ny - oy) < 0.05);
}

}  // TEST_SUITE
