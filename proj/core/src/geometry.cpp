#include "spintrng/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spintrng/errors.hpp"

namespace spintrng {

void validate(const MtjGeometry& g) {
  if (!(g.minor_axis > 0.0) || !(g.free_layer_thickness > 0.0)) {
    throw ConfigError("geometry: axes and thickness must be positive");
  }
  if (g.major_axis < g.minor_axis) {
    throw ConfigError("geometry: major axis must be >= minor axis");
  }
}

double ellipse_area(const MtjGeometry& g) {
  return std::numbers::pi / 4.0 * g.major_axis * g.minor_axis;
}

double ellipse_volume(const MtjGeometry& g) {
  return ellipse_area(g) * g.free_layer_thickness;
}

namespace detail {

double carlson_rd(double x, double y, double z) {
  // Duplication theorem iteration; error of the truncated series is
  // O(errtol^6), so 1e-3 gives ~1e-18 relative accuracy.
  constexpr double errtol = 1e-3;
  double sum = 0.0;
  double fac = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double sx = std::sqrt(x);
    const double sy = std::sqrt(y);
    const double sz = std::sqrt(z);
    const double lam = sx * (sy + sz) + sy * sz;
    sum += fac / (sz * (z + lam));
    fac *= 0.25;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    const double ave = 0.2 * (x + y + 3.0 * z);
    const double delx = (ave - x) / ave;
    const double dely = (ave - y) / ave;
    const double delz = (ave - z) / ave;
    if (std::max({std::fabs(delx), std::fabs(dely), std::fabs(delz)}) < errtol) {
      const double ea = delx * dely;
      const double eb = delz * delz;
      const double ec = ea - eb;
      const double ed = ea - 6.0 * eb;
      const double ee = ed + ec + ec;
      const double series =
          1.0 +
          ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 9.0 / 52.0 * delz * ee) +
          delz * (1.0 / 6.0 * ee +
                  delz * (-9.0 / 22.0 * ec + delz * 3.0 / 26.0 * ea));
      return 3.0 * sum + fac * series / (ave * std::sqrt(ave));
    }
  }
  throw NumericalError("carlson_rd: duplication iteration failed to converge");
}

}  // namespace detail

DemagFactors demag_factors(const MtjGeometry& g) {
  validate(g);
  const double a = 0.5 * g.major_axis;          // semi-axis along x
  const double b = 0.5 * g.minor_axis;          // along y
  const double c = 0.5 * g.free_layer_thickness;  // along z
  const double k = a * b * c / 3.0;
  // N_i = (abc/3) R_D with the i-th squared semi-axis in the last slot.
  DemagFactors n{k * detail::carlson_rd(b * b, c * c, a * a),
                 k * detail::carlson_rd(a * a, c * c, b * b),
                 k * detail::carlson_rd(a * a, b * b, c * c)};
  // The integrals satisfy Nx+Ny+Nz = 1 analytically; renormalize the last
  // digit so downstream sum-to-one invariants hold exactly.
  const double s = n.nx + n.ny + n.nz;
  n.nx /= s;
  n.ny /= s;
  n.nz /= s;
  return n;
}

}  // namespace spintrng
