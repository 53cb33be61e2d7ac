#pragma once

#include "spintrng/vec3.hpp"

namespace spintrng {

// External applied-field program.  Direction in spherical convention:
// phi is measured from the out-of-plane axis (z), theta is the in-plane
// angle from the fixed-layer direction (x), so the unit direction is
// (sin(phi)cos(theta), sin(phi)sin(theta), cos(phi)).
struct FieldSpec {
  enum class Kind { none, constant, alternating };
  Kind kind = Kind::none;
  double magnitude = 0.0;  // [A/m]
  double theta_deg = 0.0;
  double phi_deg = 90.0;   // default: in-plane
  double frequency = 0.0;  // [Hz], alternating only

  friend constexpr bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

// Thermal and field environment shared by all devices of a TRNG.
struct Environment {
  double temperature = 300.0;  // [K]
  FieldSpec external_field;

  friend constexpr bool operator==(const Environment&, const Environment&) = default;
};

void validate(const FieldSpec& spec);
void validate(const Environment& env);

// Field vector at time t.  Constant fields ignore t; alternating fields
// oscillate as magnitude * sin(2 pi f t) along the fixed direction.
Vec3 external_field_at(const FieldSpec& spec, double t);

}  // namespace spintrng
