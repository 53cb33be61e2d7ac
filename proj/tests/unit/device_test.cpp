#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "spintrng/device.hpp"
#include "spintrng/errors.hpp"
#include "spintrng/geometry.hpp"

using namespace spintrng;

namespace {

MtjElectricalParams table_electrical() { return {1000.0, 2500.0}; }

DeviceInstance nominal_device() {
  DeviceInstance d;
  d.geometry = MtjGeometry{21e-9, 10.5e-9, 10.5e-9};
  d.material = make_material(d.geometry, 8.43e5, 0.0245, 0.95);
  d.electrical = table_electrical();
  return d;
}

}  // namespace

TEST_SUITE("device") {

TEST_CASE("make_material derives volume and demag from the shape") {
  const DeviceInstance d = nominal_device();
  CHECK(d.material.volume ==
        doctest::Approx(ellipse_volume(d.geometry)).epsilon(1e-14));
  const DemagFactors n = demag_factors(d.geometry);
  CHECK(d.material.demag.nx == doctest::Approx(n.nx).epsilon(1e-14));
  CHECK(d.material.demag.ny == doctest::Approx(n.ny).epsilon(1e-14));
  CHECK(d.material.demag.nz == doctest::Approx(n.nz).epsilon(1e-14));
}

TEST_CASE("tmr ratio from the resistance pair") {
  CHECK(table_electrical().tmr() == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(MtjElectricalParams{120.0, 300.0}.tmr() == doctest::Approx(1.5));
}

TEST_CASE("resistance endpoints are exact") {
  const auto e = table_electrical();
  CHECK(mtj_resistance({1, 0, 0}, e) == doctest::Approx(1000.0).epsilon(1e-14));
  CHECK(mtj_resistance({-1, 0, 0}, e) == doctest::Approx(2500.0).epsilon(1e-14));
}

TEST_CASE("resistance at mid-angle is the conductance average") {
  // G(0) = (G_P + G_AP)/2 -> R = 2 / (1/r_on + 1/r_off).
  const auto e = table_electrical();
  const double expected = 2.0 / (1.0 / 1000.0 + 1.0 / 2500.0);
  CHECK(mtj_resistance({0, 1, 0}, e) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(mtj_resistance({0, 0, 1}, e) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("resistance decreases monotonically from AP to P") {
  const auto e = table_electrical();
  double prev = mtj_resistance({-1, 0, 0}, e);
  for (int i = 1; i <= 40; ++i) {
    const double mx = -1.0 + 2.0 * i / 40.0;
    const double my = std::sqrt(std::max(0.0, 1.0 - mx * mx));
    const double r = mtj_resistance({mx, my, 0}, e);
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("validation rejects out-of-range material constants") {
  const MtjGeometry g{21e-9, 10.5e-9, 10.5e-9};
  CHECK_THROWS_AS(make_material(g, -1.0, 0.01, 0.5), ConfigError);
  CHECK_THROWS_AS(make_material(g, 8e5, -0.01, 0.5), ConfigError);
  CHECK_THROWS_AS(make_material(g, 8e5, 0.01, 0.0), ConfigError);
  CHECK_THROWS_AS(make_material(g, 8e5, 0.01, 1.0), ConfigError);
  CHECK_NOTHROW(make_material(g, 8e5, 0.01, 0.5));
}

TEST_CASE("validation rejects inverted resistance pair") {
  DeviceInstance d = nominal_device();
  d.electrical = {2500.0, 1000.0};  // r_off < r_on
  CHECK_THROWS_AS(validate(d), ConfigError);
  d.electrical = {0.0, 2500.0};
  CHECK_THROWS_AS(validate(d), ConfigError);
}

}  // TEST_SUITE
