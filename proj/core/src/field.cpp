#include "spintrng/field.hpp"

#include <cmath>
#include <numbers>

#include "spintrng/errors.hpp"

namespace spintrng {

void validate(const FieldSpec& spec) {
  if (spec.magnitude < 0.0) {
    throw ConfigError("field: magnitude must be non-negative");
  }
  if (spec.kind == FieldSpec::Kind::alternating && !(spec.frequency > 0.0)) {
    throw ConfigError("field: alternating field needs a positive frequency");
  }
}

void validate(const Environment& env) {
  // T = 0 is allowed as the documented noiseless degenerate mode used by
  // deterministic regression tests.
  if (env.temperature < 0.0) {
    throw ConfigError("environment: temperature must be non-negative");
  }
  validate(env.external_field);
}

Vec3 external_field_at(const FieldSpec& spec, double t) {
  if (spec.kind == FieldSpec::Kind::none || spec.magnitude == 0.0) {
    return {};
  }
  constexpr double deg = std::numbers::pi / 180.0;
  const double th = spec.theta_deg * deg;
  const double ph = spec.phi_deg * deg;
  const Vec3 dir{std::sin(ph) * std::cos(th), std::sin(ph) * std::sin(th),
                 std::cos(ph)};
  double mag = spec.magnitude;
  if (spec.kind == FieldSpec::Kind::alternating) {
    mag *= std::sin(2.0 * std::numbers::pi * spec.frequency * t);
  }
  return mag * dir;
}

}  // namespace spintrng
