#include "spintrng/config.hpp"

#include "spintrng/errors.hpp"

namespace spintrng {

void validate(const TrngConfig& cfg) {
  if (cfg.n_devices < 1) throw ConfigError("config: need at least one device");
  if (cfg.devices.size() != cfg.n_devices) {
    throw ConfigError("config: device list length does not match n_devices");
  }
  if (!(cfg.circuit.capacitance > 0.0) || !(cfg.circuit.v_init > 0.0) ||
      !(cfg.circuit.r_series > 0.0) || !(cfg.circuit.passgate_resistance > 0.0)) {
    throw ConfigError("config: circuit values must be positive");
  }
  if (!(cfg.t_enable > 0.0)) throw ConfigError("config: t_enable must be positive");
  if (!(cfg.dt > 0.0)) throw ConfigError("config: dt must be positive");
  if (cfg.reset_burn_in < 0.0) {
    throw ConfigError("config: reset burn-in must be non-negative");
  }
  if (!(cfg.read_threshold > -1.0) || !(cfg.read_threshold < 1.0)) {
    throw ConfigError("config: read threshold must lie in (-1, 1)");
  }
  validate(cfg.environment);
  for (const auto& d : cfg.devices) validate(d);
}

bool homogeneous_devices(const TrngConfig& cfg) {
  for (std::size_t i = 1; i < cfg.devices.size(); ++i) {
    if (!(cfg.devices[i].geometry == cfg.devices[0].geometry) ||
        !(cfg.devices[i].material == cfg.devices[0].material) ||
        !(cfg.devices[i].electrical == cfg.devices[0].electrical)) {
      return false;
    }
  }
  return true;
}

}  // namespace spintrng
