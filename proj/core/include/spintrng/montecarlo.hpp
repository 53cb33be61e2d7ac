#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spintrng/config.hpp"
#include "spintrng/distribution.hpp"
#include "spintrng/entropy.hpp"
#include "spintrng/protocol.hpp"
#include "spintrng/rng.hpp"

// Trial ensembles, process variation, and the parameter/environment sweep
// engine.  All parallelism is schedule-independent: trial i always uses the
// stream derive_seed(base_seed, trial, i) and aggregation is an ordered
// reduction over trial indices, so any thread count produces identical
// results.

namespace spintrng {

// ---------------------------------------------------------------------------
// Trial ensembles

struct TrialEnsemble {
  EmpiricalDistribution distribution;  // raw counts/probabilities
  std::vector<std::uint32_t> words;    // per-trial outputs in trial order
};

// n_trials independent generate_word calls (worker pool of n_threads; 0
// means hardware concurrency).  Trial failures rethrow as NumericalError
// with the trial index attached.
TrialEnsemble run_trials(const TrngConfig& cfg, std::uint64_t n_trials,
                         std::uint64_t base_seed, unsigned n_threads = 1);

// ---------------------------------------------------------------------------
// Process variation

struct VariationSpec {
  // Gaussian sigma as a fraction of nominal for major axis, minor axis and
  // free-layer thickness.
  double sigma_fraction = 0.05;
  // Extra joint resistance factor N(1, sigma^2) modeling oxide-thickness
  // variation on top of the 1/area scaling.
  double resistance_sigma_fraction = 0.05;
};

// Draws one device: axes/thickness ~ N(nominal, (sigma*nominal)^2), demag
// factors and volume recomputed, resistances scaled by nominal_area/area and
// the joint extra factor.  Non-physical draws (non-positive sizes, inverted
// axes) are resampled up to 100 times.  instance_seed is recorded as
// provenance only.
DeviceInstance sample_variation(const DeviceInstance& nominal,
                                const VariationSpec& spec, TrialRng& rng,
                                std::uint64_t instance_seed = 0);

// TMR temperature model: TMR(T) = TMR(300K) * (1 + rate/100 * (T - 300));
// r_on is unchanged, r_off follows the new TMR.  Throws NumericalError when
// the model leaves its validity range (TMR <= 0).
MtjElectricalParams temperature_adjust(const MtjElectricalParams& e, double t_kelvin,
                                       double tmr_rate_pct_per_kelvin);

// ---------------------------------------------------------------------------
// Sweeps

enum class SweepAxis {
  t_enable,
  v_init,
  capacitance,
  r_series_offset,   // additive offset on the topology's series resistance
  field_magnitude,   // along the base config's field direction
  field_theta,
  field_phi,
  field_frequency,
  temperature,       // adjusts both thermal noise and TMR(T)
};

std::string_view sweep_axis_name(SweepAxis axis);

struct SweepPlan {
  TrngConfig base;
  SweepAxis axis{};
  std::vector<double> values;
  std::uint64_t trials = 2000;
  std::uint64_t base_seed = 1;
  unsigned n_threads = 1;
  bool symmetrize = true;
  int bootstrap_resamples = 200;
  double tmr_rate_pct_per_kelvin = -0.4;  // temperature axis only
};

struct SweepPoint {
  double value = 0.0;
  bool ok = false;
  std::string error;  // set when ok is false
  EntropyReport entropy;
  double mean_switch_probability = 0.0;  // per-device average of P(bit = 1)
};

struct SweepResult {
  SweepAxis axis{};
  std::vector<SweepPoint> points;
};

// Applies one axis value per point; per-point failures are recorded and the
// sweep continues.
SweepResult sweep(const SweepPlan& plan);

// Config with one axis value applied (exposed for tests and the grid/
// assistance drivers).
TrngConfig apply_axis(const TrngConfig& base, SweepAxis axis, double value,
                      double tmr_rate_pct_per_kelvin = -0.4);

// Fixed-magnitude field-direction grid (theta x phi), one SweepPoint per
// cell in row-major (theta-outer) order.
struct RotateGridPlan {
  TrngConfig base;
  double magnitude = 10e3;  // A/m
  std::vector<double> theta_deg;
  std::vector<double> phi_deg;
  std::uint64_t trials = 2000;
  std::uint64_t base_seed = 1;
  unsigned n_threads = 1;
  bool symmetrize = true;
  int bootstrap_resamples = 200;
};

struct RotateGridPoint {
  double theta_deg = 0.0;
  double phi_deg = 0.0;
  bool ok = false;
  std::string error;
  EntropyReport entropy;
};

std::vector<RotateGridPoint> rotate_grid(const RotateGridPlan& plan);

// Assistance-field study: for each field magnitude (applied along the base
// config's field direction), bisect the smallest capacitance whose Shannon
// entropy per bit reaches the target.  The series resistance is left at the
// topology's calibrated value, preserving the initial per-device current
// operating point.
struct AssistanceFieldPlan {
  TrngConfig base;
  std::vector<double> magnitudes;  // A/m
  double target_entropy_per_bit = 0.95;
  std::uint64_t trials = 2000;
  std::uint64_t base_seed = 1;
  unsigned n_threads = 1;
  double c_min = 0.5e-12;
  double c_max = 20e-12;
  double c_rel_tol = 0.02;  // bisection interval tolerance (relative)
};

struct AssistanceFieldPoint {
  double magnitude = 0.0;
  bool ok = false;
  std::string error;
  bool feasible = false;       // target reachable within [c_min, c_max]
  double capacitance = 0.0;    // smallest C meeting the target
  double entropy_per_bit = 0.0;  // measured at that capacitance
};

std::vector<AssistanceFieldPoint> assistance_field_study(
    const AssistanceFieldPlan& plan);

// Entropy-maximizing series resistance among the candidates (>= 2 trials
// each at the given budget); ties break toward the larger resistance.
double calibrate_series_resistance(const TrngConfig& cfg_template,
                                   std::span<const double> candidates,
                                   std::uint64_t trials,
                                   std::uint64_t base_seed = 1,
                                   unsigned n_threads = 1);

// ---------------------------------------------------------------------------
// Variation ensembles

struct SummaryStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
  double median = 0.0;
  double p10 = 0.0;  // 10th percentile = ceil(n/10)-th order statistic
};

SummaryStats summarize(std::vector<double> values);

struct VariationInstanceResult {
  std::uint64_t instance_seed = 0;
  bool ok = false;
  std::string error;
  EntropyReport entropy;  // raw (non-symmetrized) estimation
};

struct VariationEnsembleResult {
  std::vector<VariationInstanceResult> instances;
  SummaryStats shannon_per_bit;
  SummaryStats min_per_bit;
};

// n_instances TRNGs with independently sampled devices, trials_per_instance
// runs each, raw probability estimation, summary statistics over instances.
VariationEnsembleResult variation_ensemble(const TrngConfig& nominal,
                                           std::uint64_t n_instances,
                                           const VariationSpec& spec,
                                           std::uint64_t trials_per_instance,
                                           std::uint64_t base_seed,
                                           unsigned n_threads = 1,
                                           int bootstrap_resamples = 0);

}  // namespace spintrng
