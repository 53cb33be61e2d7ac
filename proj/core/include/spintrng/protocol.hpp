#pragma once

#include <cstdint>
#include <optional>

#include "spintrng/circuit.hpp"
#include "spintrng/config.hpp"
#include "spintrng/rng.hpp"

// The three-step generation cycle:
//   Reset  - recharge C to v_init and write all devices to AP; modeled as
//            exact AP followed by a zero-current thermal burn-in so Enable
//            starts from the equilibrium spread around AP.  Burn-in runs
//            over t in [-reset_burn_in, 0], so Enable always starts at t=0
//            (an alternating applied field crosses zero at Enable onset).
//   Enable - coupled capacitor discharge (see circuit.hpp).
//   Read   - threshold m.x; P reads as 1, AP as 0.
// Timing and energy are accounted analytically, not simulated.

namespace spintrng {

// N-bit output word; device 0 occupies the most significant bit.
struct TrngWord {
  std::uint32_t bits = 0;
  std::uint32_t n_bits = 0;

  constexpr int bit(std::uint32_t device_index) const {
    return static_cast<int>((bits >> (n_bits - 1 - device_index)) & 1u);
  }
  friend constexpr bool operator==(const TrngWord&, const TrngWord&) = default;
};

// State at the start of Enable: v_cap = v_init, devices thermalized near AP.
CircuitState reset_step(const TrngConfig& cfg, TrialRng& rng);

// bit i = 1 iff m_i.x > threshold (strict; a tie reads 0).
TrngWord read_step(const CircuitState& state, double read_threshold);

// Full cycle; a pure function of (cfg, trial_seed).
TrngWord generate_word(const TrngConfig& cfg, std::uint64_t trial_seed);

// Analytic timing/energy accounting.
struct ReportOptions {
  double v_target = 0.79;             // recharge endpoint [V]
  double t_read = 2.8e-9;             // sense latency [s]
  double write_energy_per_word = 4.5e-12;  // Reset AP-write cost [J]
  double read_energy_per_word = 0.7e-12;   // [J]
  // Improved-cycle accounting: recharge starts from a measured end-of-Enable
  // capacitor voltage instead of 0 V, optionally with a shortened Enable.
  std::optional<double> recharge_start_v;
  std::optional<double> t_enable_effective;
};

struct TimingEnergyReport {
  // Baseline cycle (recharge from 0 V, full t_enable).
  double t_reset = 0.0;
  double t_enable = 0.0;
  double t_read = 0.0;
  double t_cycle = 0.0;
  // Energy per cycle.
  double e_cap_stored = 0.0;
  double e_passgate = 0.0;
  double e_write_total = 0.0;
  double e_read_total = 0.0;
  double e_cycle = 0.0;
  // Rates for a given entropy per word.
  double entropy_per_word = 0.0;
  double entropy_rate = 0.0;           // bits/s
  double energy_per_entropy_bit = 0.0;  // J/bit
  bool per_bit_defined = false;
  // Improved-cycle accounting (see ReportOptions).
  double t_reset_improved = 0.0;
  double t_cycle_improved = 0.0;
  double entropy_rate_improved = 0.0;
};

// Timing fields only: t_reset is the closed-form RC charge time
// passgate_resistance * C * ln(v_init / (v_init - v_target)).
// Rejects v_target outside [0, v_init).
TimingEnergyReport timing_report(const TrngConfig& cfg, double v_target,
                                 double t_read = 2.8e-9);

// Timing plus energy and rate accounting.  e_cap_stored = 1/2 C v_init^2;
// the passgate dissipates the same amount during a full-swing recharge.
TimingEnergyReport energy_report(const TrngConfig& cfg, double entropy_per_word,
                                 const ReportOptions& opts = {});

}  // namespace spintrng
