#pragma once

#include <cstdint>

#include "spintrng/geometry.hpp"
#include "spintrng/vec3.hpp"

namespace spintrng {

// Free-layer material constants plus the shape-derived quantities the
// dynamics need (demag factors, volume).
struct MtjMaterialParams {
  double ms = 0.0;            // saturation magnetization [A/m]
  double alpha = 0.0;         // Gilbert damping
  double polarization = 0.0;  // spin polarization in (0,1)
  DemagFactors demag;
  double volume = 0.0;  // [m^3]

  friend constexpr bool operator==(const MtjMaterialParams&,
                                   const MtjMaterialParams&) = default;
};

struct MtjElectricalParams {
  double r_on = 0.0;   // parallel-state resistance [ohm]
  double r_off = 0.0;  // antiparallel-state resistance [ohm]

  // Tunnel magnetoresistance ratio, derived so it can never drift out of
  // sync with the resistances.
  constexpr double tmr() const { return (r_off - r_on) / r_on; }

  friend constexpr bool operator==(const MtjElectricalParams&,
                                   const MtjElectricalParams&) = default;
};

struct Provenance {
  enum class Kind { nominal, sampled };
  Kind kind = Kind::nominal;
  std::uint64_t seed = 0;  // meaningful only for sampled instances

  friend constexpr bool operator==(const Provenance&, const Provenance&) = default;
};

// One MTJ as wired into the circuit: geometry, material, electrical values,
// either nominal or drawn from the process-variation model.
struct DeviceInstance {
  MtjGeometry geometry;
  MtjMaterialParams material;
  MtjElectricalParams electrical;
  Provenance provenance;

  friend constexpr bool operator==(const DeviceInstance&, const DeviceInstance&) = default;
};

void validate(const MtjMaterialParams& m);
void validate(const MtjElectricalParams& e);
void validate(const DeviceInstance& d);

// Builds material params from geometry + raw constants (computes demag
// factors and volume).
MtjMaterialParams make_material(const MtjGeometry& g, double ms, double alpha,
                                double polarization);

// Angular resistance from the conductance interpolation
//   G(theta) = 1/2 [G_P (1 + cos) + G_AP (1 - cos)],  cos = m.x,
// so R(m.x=+1) = r_on, R(m.x=-1) = r_off, monotone in between.
double mtj_resistance(const Vec3& m, const MtjElectricalParams& e);

}  // namespace spintrng
