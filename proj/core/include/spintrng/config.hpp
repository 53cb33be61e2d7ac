#pragma once

#include <cstddef>
#include <vector>

#include "spintrng/device.hpp"
#include "spintrng/field.hpp"

namespace spintrng {

// Discharge-path circuit values.  r_series lumps the switch transistors
// between the capacitor and the common node of the parallel MTJ bank;
// passgate_resistance models the recharge path used only for timing/energy
// accounting.
struct CircuitParams {
  double capacitance = 10e-12;        // [F]
  double v_init = 0.8;                // [V]
  double r_series = 0.0;              // [ohm]
  double passgate_resistance = 1500;  // [ohm]

  friend constexpr bool operator==(const CircuitParams&, const CircuitParams&) = default;
};

// Full experiment configuration for one TRNG topology.
struct TrngConfig {
  std::size_t n_devices = 0;
  CircuitParams circuit;
  std::vector<DeviceInstance> devices;  // length n_devices
  double t_enable = 10e-9;              // [s]
  Environment environment;
  double dt = 1e-12;             // integrator step [s]
  double reset_burn_in = 1e-9;   // zero-current thermalization before Enable [s]
  double read_threshold = 0.0;   // on m.x; strict inequality, tie reads 0

  friend bool operator==(const TrngConfig&, const TrngConfig&) = default;
};

void validate(const TrngConfig& cfg);

// True when every device is exactly the nominal instance (prerequisite for
// Hamming-weight symmetrized estimation).
bool homogeneous_devices(const TrngConfig& cfg);

}  // namespace spintrng
