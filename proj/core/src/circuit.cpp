#include "spintrng/circuit.hpp"

#include <cmath>
#include <string>

#include "spintrng/errors.hpp"
#include "spintrng/llg.hpp"

namespace spintrng {

double parallel_resistance(std::span<const double> resistances) {
  if (resistances.empty()) {
    throw ConfigError("parallel_resistance: empty resistance list");
  }
  double g = 0.0;
  for (double r : resistances) {
    if (!(r > 0.0)) {
      throw ConfigError("parallel_resistance: resistances must be positive");
    }
    g += 1.0 / r;
  }
  return 1.0 / g;
}

namespace {

void compute_currents(const CircuitState& state,
                      std::span<const DeviceInstance> devices,
                      const CircuitParams& circuit, std::vector<double>& out) {
  const std::size_t n = devices.size();
  out.resize(n);
  double gsum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = 1.0 / mtj_resistance(state.devices[i], devices[i].electrical);
    gsum += out[i];
  }
  const double r_par = 1.0 / gsum;
  const double v_node = state.v_cap * r_par / (circuit.r_series + r_par);
  for (std::size_t i = 0; i < n; ++i) out[i] *= v_node;
}

}  // namespace

std::vector<double> device_currents(const CircuitState& state,
                                    std::span<const DeviceInstance> devices,
                                    const CircuitParams& circuit) {
  if (state.devices.size() != devices.size()) {
    throw ConfigError("device_currents: state/device count mismatch");
  }
  std::vector<double> out;
  compute_currents(state, devices, circuit, out);
  return out;
}

namespace detail {

CoupledStepper::CoupledStepper(std::span<const DeviceInstance> devices,
                               const CircuitParams& circuit,
                               const Environment& env, double dt)
    : devices_(devices), circuit_(circuit), env_(env), dt_(dt) {
  const std::size_t n = devices.size();
  sigma_.reserve(n);
  for (const auto& d : devices) {
    sigma_.push_back(env.temperature > 0.0
                         ? thermal_field_std(d.material, env, dt)
                         : 0.0);
  }
  next_.resize(n);
  scaled_noise_.resize(n);
  conductance_.resize(n);
}

void CoupledStepper::currents_at(const CircuitState& state,
                                 std::vector<double>& out) const {
  compute_currents(state, devices_, circuit_, out);
}

void CoupledStepper::step(CircuitState& state, std::span<const Vec3> noise) {
  const std::size_t n = devices_.size();
  const double t_mid = state.t + 0.5 * dt_;
  for (std::size_t i = 0; i < n; ++i) {
    scaled_noise_[i] = sigma_[i] * noise[i];
  }
  // External field is uniform across devices and fixed within the step.
  const Vec3 h_ext = external_field_at(env_.external_field, t_mid);

  const double v0 = state.v_cap;
  double v1 = v0;
  next_.assign(state.devices.begin(), state.devices.end());

  bool converged = false;
  for (int it = 0; it < spintrng::detail::fixed_point_max_iters; ++it) {
    // Midpoint conductances -> shared node voltage.
    double gsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double c = 0.5 * (state.devices[i].x + next_[i].x);
      const auto& e = devices_[i].electrical;
      conductance_[i] = 0.5 * ((1.0 + c) / e.r_on + (1.0 - c) / e.r_off);
      gsum += conductance_[i];
    }
    const double r_par = 1.0 / gsum;
    const double r_total = circuit_.r_series + r_par;
    const double v_bar = 0.5 * (v0 + v1);
    const double v_node = v_bar * r_par / r_total;

    double max_delta =
        std::fabs(v0 - dt_ * v_bar / (circuit_.capacitance * r_total) - v1);
    v1 = v0 - dt_ * v_bar / (circuit_.capacitance * r_total);

    for (std::size_t i = 0; i < n; ++i) {
      const Vec3 mid = 0.5 * (state.devices[i] + next_[i]);
      const double current = v_node * conductance_[i];
      const Vec3 h{-devices_[i].material.ms * devices_[i].material.demag.nx * mid.x +
                       h_ext.x + scaled_noise_[i].x,
                   -devices_[i].material.ms * devices_[i].material.demag.ny * mid.y +
                       h_ext.y + scaled_noise_[i].y,
                   -devices_[i].material.ms * devices_[i].material.demag.nz * mid.z +
                       h_ext.z + scaled_noise_[i].z};
      const Vec3 proposal =
          state.devices[i] + dt_ * llg_rhs(mid, h, current, devices_[i].material);
      max_delta = std::max({max_delta, std::fabs(proposal.x - next_[i].x),
                            std::fabs(proposal.y - next_[i].y),
                            std::fabs(proposal.z - next_[i].z)});
      next_[i] = proposal;
    }
    if (max_delta < spintrng::detail::fixed_point_tol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NumericalError(
        "step_circuit: joint fixed-point iteration did not converge; reduce dt");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double nn = norm(next_[i]);
    if (std::fabs(nn - 1.0) > spintrng::detail::norm_drift_limit) {
      throw NumericalError("step_circuit: norm drift exceeded tolerance");
    }
    state.devices[i] = {next_[i].x / nn, next_[i].y / nn, next_[i].z / nn};
  }
  state.v_cap = v1;
  state.t += dt_;
}

}  // namespace detail

void step_circuit(CircuitState& state, std::span<const DeviceInstance> devices,
                  const CircuitParams& circuit, const Environment& env,
                  double dt, std::span<const Vec3> noise) {
  if (!(dt > 0.0)) throw ConfigError("step_circuit: dt must be positive");
  if (noise.size() != devices.size()) {
    throw ConfigError("step_circuit: need one noise 3-vector per device");
  }
  detail::CoupledStepper stepper(devices, circuit, env, dt);
  stepper.step(state, noise);
}

namespace {

void record_row(detail::CoupledStepper& stepper, const CircuitState& state,
                EnableTrace& trace, std::vector<double>& scratch) {
  stepper.currents_at(state, scratch);
  trace.t.push_back(state.t);
  trace.v_cap.push_back(state.v_cap);
  trace.currents.push_back(scratch);
  std::vector<double> mx(state.devices.size());
  for (std::size_t i = 0; i < state.devices.size(); ++i) {
    mx[i] = state.devices[i].x;
  }
  trace.mx.push_back(std::move(mx));
}

}  // namespace

EnableResult simulate_enable(const TrngConfig& cfg, TrialRng& rng,
                             CircuitState initial,
                             const TraceOptions* trace_opts) {
  validate(cfg);
  const auto steps = static_cast<long>(std::llround(cfg.t_enable / cfg.dt));
  if (steps < 1) {
    throw ConfigError("simulate_enable: t_enable shorter than one step");
  }
  detail::CoupledStepper stepper(cfg.devices, cfg.circuit, cfg.environment,
                                 cfg.dt);
  EnableResult result{std::move(initial), std::nullopt};
  std::vector<Vec3> noise(cfg.n_devices);
  std::vector<double> scratch;
  const std::size_t decimation =
      trace_opts ? std::max<std::size_t>(1, trace_opts->decimation) : 0;
  if (trace_opts) {
    result.trace.emplace();
    record_row(stepper, result.state, *result.trace, scratch);
  }
  for (long k = 0; k < steps; ++k) {
    for (std::size_t i = 0; i < cfg.n_devices; ++i) noise[i] = rng.normal3();
    stepper.step(result.state, noise);
    if (trace_opts && (static_cast<std::size_t>(k + 1) % decimation == 0 ||
                       k + 1 == steps)) {
      record_row(stepper, result.state, *result.trace, scratch);
    }
  }
  return result;
}

EnableResult simulate_enable(const TrngConfig& cfg, TrialRng& rng,
                             const TraceOptions* trace_opts) {
  CircuitState initial{cfg.circuit.v_init,
                       std::vector<Vec3>(cfg.n_devices, Vec3{-1.0, 0.0, 0.0}),
                       0.0};
  return simulate_enable(cfg, rng, std::move(initial), trace_opts);
}

}  // namespace spintrng
