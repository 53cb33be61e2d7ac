#pragma once

#include <optional>
#include <span>
#include <vector>

#include "spintrng/config.hpp"
#include "spintrng/rng.hpp"
#include "spintrng/vec3.hpp"

// Coupled capacitor + N-MTJ bank dynamics for the Enable step.
//
// Topology: the capacitor discharges through a single lumped series
// resistance into the common node of the parallel MTJ bank, so with
// R_par = (sum 1/R_i)^-1:
//
//   V_node = v_cap * R_par / (r_series + R_par),   I_i = V_node / R_i,
//   dv_cap/dt = -v_cap / (C (r_series + R_par)).
//
// Circuit and magnetization advance together in one implicit-midpoint pass
// (no operator splitting): the fixed-point iteration solves for
// (v_cap', m_1'..m_N') jointly, with resistances, currents, and fields all
// evaluated at the midpoint state.

namespace spintrng {

struct CircuitState {
  double v_cap = 0.0;
  std::vector<Vec3> devices;  // magnetization per device
  double t = 0.0;
};

// Kirchhoff reduction of the parallel bank.  Throws ConfigError on empty or
// non-positive input.
double parallel_resistance(std::span<const double> resistances);

// Per-device currents for the given state (diagnostic path; the integrator
// evaluates the same expressions at midpoint states internally).
std::vector<double> device_currents(const CircuitState& state,
                                    std::span<const DeviceInstance> devices,
                                    const CircuitParams& circuit);

// Advances state by one joint midpoint step.  noise holds one *raw* standard
// normal 3-vector per device; the step scales it by each device's
// thermal_field_std.  Throws NumericalError on fixed-point non-convergence.
void step_circuit(CircuitState& state, std::span<const DeviceInstance> devices,
                  const CircuitParams& circuit, const Environment& env,
                  double dt, std::span<const Vec3> noise);

// Sampled diagnostics of an Enable run; row j holds time, capacitor voltage,
// then per-device current and m.x.  Rows always include the initial and
// final states.
struct EnableTrace {
  std::vector<double> t;
  std::vector<double> v_cap;
  std::vector<std::vector<double>> currents;  // [row][device]
  std::vector<std::vector<double>> mx;        // [row][device]
};

struct TraceOptions {
  std::size_t decimation = 10;  // record every k-th step
};

struct EnableResult {
  CircuitState state;
  std::optional<EnableTrace> trace;
};

// Integrates the Enable step (round(t_enable/dt) steps) from the given
// initial state; the overload without a state starts every device at exact
// AP with v_cap = v_init.  One normal 3-vector per device per step is drawn
// from rng in device order.
EnableResult simulate_enable(const TrngConfig& cfg, TrialRng& rng,
                             CircuitState initial,
                             const TraceOptions* trace = nullptr);
EnableResult simulate_enable(const TrngConfig& cfg, TrialRng& rng,
                             const TraceOptions* trace = nullptr);

namespace detail {

// Workspace-reusing joint stepper; exists so per-step work allocates
// nothing.  Both step_circuit and simulate_enable delegate here.
class CoupledStepper {
 public:
  CoupledStepper(std::span<const DeviceInstance> devices,
                 const CircuitParams& circuit, const Environment& env,
                 double dt);

  // noise = raw standard normal triples, one per device.
  void step(CircuitState& state, std::span<const Vec3> noise);

  // Currents consistent with the given state (used for traces).
  void currents_at(const CircuitState& state, std::vector<double>& out) const;

 private:
  std::span<const DeviceInstance> devices_;
  const CircuitParams& circuit_;
  const Environment& env_;
  double dt_;
  std::vector<double> sigma_;  // thermal std per device at this dt
  std::vector<Vec3> next_;
  std::vector<Vec3> scaled_noise_;
  std::vector<double> conductance_;
};

}  // namespace detail

}  // namespace spintrng
