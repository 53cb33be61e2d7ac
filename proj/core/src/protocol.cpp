#include "spintrng/protocol.hpp"

#include <cmath>

#include "spintrng/errors.hpp"
#include "spintrng/llg.hpp"

namespace spintrng {

CircuitState reset_step(const TrngConfig& cfg, TrialRng& rng) {
  validate(cfg);
  CircuitState state{cfg.circuit.v_init,
                     std::vector<Vec3>(cfg.n_devices, Vec3{-1.0, 0.0, 0.0}),
                     0.0};
  if (cfg.reset_burn_in <= 0.0) return state;

  const auto steps =
      static_cast<long>(std::llround(cfg.reset_burn_in / cfg.dt));
  std::vector<double> sigma(cfg.n_devices);
  for (std::size_t i = 0; i < cfg.n_devices; ++i) {
    sigma[i] = cfg.environment.temperature > 0.0
                   ? thermal_field_std(cfg.devices[i].material,
                                      cfg.environment, cfg.dt)
                   : 0.0;
  }
  double t = -static_cast<double>(steps) * cfg.dt;
  for (long k = 0; k < steps; ++k) {
    for (std::size_t i = 0; i < cfg.n_devices; ++i) {
      const Vec3 h_th = sigma[i] * rng.normal3();
      state.devices[i] =
          llg_step_midpoint(state.devices[i], 0.0, cfg.devices[i].material,
                            cfg.environment, t, cfg.dt, h_th);
    }
    t += cfg.dt;
  }
  state.t = 0.0;
  return state;
}

TrngWord read_step(const CircuitState& state, double read_threshold) {
  TrngWord word;
  word.n_bits = static_cast<std::uint32_t>(state.devices.size());
  for (const Vec3& m : state.devices) {
    word.bits = (word.bits << 1) | (m.x > read_threshold ? 1u : 0u);
  }
  return word;
}

TrngWord generate_word(const TrngConfig& cfg, std::uint64_t trial_seed) {
  TrialRng rng(trial_seed);
  CircuitState state = reset_step(cfg, rng);
  EnableResult enable = simulate_enable(cfg, rng, std::move(state));
  return read_step(enable.state, cfg.read_threshold);
}

TimingEnergyReport timing_report(const TrngConfig& cfg, double v_target,
                                 double t_read) {
  if (v_target < 0.0 || v_target >= cfg.circuit.v_init) {
    throw ConfigError("timing_report: v_target must lie in [0, v_init)");
  }
  TimingEnergyReport rep;
  const double rc = cfg.circuit.passgate_resistance * cfg.circuit.capacitance;
  rep.t_reset =
      rc * std::log(cfg.circuit.v_init / (cfg.circuit.v_init - v_target));
  rep.t_enable = cfg.t_enable;
  rep.t_read = t_read;
  rep.t_cycle = rep.t_reset + rep.t_enable + rep.t_read;
  return rep;
}

TimingEnergyReport energy_report(const TrngConfig& cfg, double entropy_per_word,
                                 const ReportOptions& opts) {
  if (entropy_per_word < 0.0) {
    throw ConfigError("energy_report: entropy per word must be non-negative");
  }
  TimingEnergyReport rep = timing_report(cfg, opts.v_target, opts.t_read);

  rep.e_cap_stored =
      0.5 * cfg.circuit.capacitance * cfg.circuit.v_init * cfg.circuit.v_init;
  rep.e_passgate = rep.e_cap_stored;
  rep.e_write_total = opts.write_energy_per_word;
  rep.e_read_total = opts.read_energy_per_word;
  rep.e_cycle =
      rep.e_cap_stored + rep.e_passgate + rep.e_write_total + rep.e_read_total;

  rep.entropy_per_word = entropy_per_word;
  rep.per_bit_defined = entropy_per_word > 0.0;
  rep.entropy_rate =
      rep.per_bit_defined ? entropy_per_word / rep.t_cycle : 0.0;
  rep.energy_per_entropy_bit =
      rep.per_bit_defined ? rep.e_cycle / entropy_per_word : 0.0;

  // Improved accounting: recharge from the measured end-of-Enable voltage
  // rather than 0 V, optionally with a shortened Enable window.
  const double v_start = opts.recharge_start_v.value_or(0.0);
  if (v_start < 0.0 || v_start >= cfg.circuit.v_init) {
    throw ConfigError("energy_report: recharge start must lie in [0, v_init)");
  }
  const double rc = cfg.circuit.passgate_resistance * cfg.circuit.capacitance;
  const double v_end = cfg.circuit.v_init - opts.v_target;
  const double gap = cfg.circuit.v_init - v_start;
  rep.t_reset_improved = v_start >= opts.v_target
                             ? 0.0
                             : rc * std::log(gap / v_end);
  rep.t_cycle_improved = rep.t_reset_improved +
                         opts.t_enable_effective.value_or(cfg.t_enable) +
                         rep.t_read;
  rep.entropy_rate_improved =
      rep.per_bit_defined ? entropy_per_word / rep.t_cycle_improved : 0.0;
  return rep;
}

}  // namespace spintrng
