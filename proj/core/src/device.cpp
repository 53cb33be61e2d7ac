#include "spintrng/device.hpp"

#include <cmath>

#include "spintrng/errors.hpp"

namespace spintrng {

void validate(const MtjMaterialParams& m) {
  if (!(m.ms > 0.0)) throw ConfigError("material: Ms must be positive");
  if (!(m.alpha > 0.0)) throw ConfigError("material: damping must be positive");
  if (!(m.polarization > 0.0) || !(m.polarization < 1.0)) {
    throw ConfigError("material: polarization must be in (0,1)");
  }
  if (!(m.volume > 0.0)) throw ConfigError("material: volume must be positive");
  const double sum = m.demag.nx + m.demag.ny + m.demag.nz;
  if (std::fabs(sum - 1.0) > 1e-12) {
    throw ConfigError("material: demag factors must sum to 1");
  }
  for (double n : {m.demag.nx, m.demag.ny, m.demag.nz}) {
    if (n < 0.0 || n > 1.0) {
      throw ConfigError("material: demag factors must lie in [0,1]");
    }
  }
}

void validate(const MtjElectricalParams& e) {
  if (!(e.r_on > 0.0) || !(e.r_off > e.r_on)) {
    throw ConfigError("electrical: need 0 < r_on < r_off");
  }
}

void validate(const DeviceInstance& d) {
  validate(d.geometry);
  validate(d.material);
  validate(d.electrical);
}

MtjMaterialParams make_material(const MtjGeometry& g, double ms, double alpha,
                                double polarization) {
  MtjMaterialParams m;
  m.ms = ms;
  m.alpha = alpha;
  m.polarization = polarization;
  m.demag = demag_factors(g);
  m.volume = ellipse_volume(g);
  validate(m);
  return m;
}

double mtj_resistance(const Vec3& m, const MtjElectricalParams& e) {
  const double c = m.x;  // cos(theta) against the fixed layer (+x)
  const double g = 0.5 * ((1.0 + c) / e.r_on + (1.0 - c) / e.r_off);
  return 1.0 / g;
}

}  // namespace spintrng
