#include "spintrng/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "spintrng/errors.hpp"

namespace spintrng {

namespace {

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

void validate_spec(const VariationSpec& spec) {
  if (spec.sigma_fraction < 0.0 || spec.resistance_sigma_fraction < 0.0) {
    throw ConfigError("variation sigma fractions must be non-negative");
  }
}

}  // namespace

TrialEnsemble run_trials(const TrngConfig& cfg, std::uint64_t n_trials,
                         std::uint64_t base_seed, unsigned n_threads) {
  validate(cfg);
  if (n_trials == 0) throw ConfigError("run_trials: need at least one trial");

  std::vector<std::uint32_t> words(n_trials, 0u);
  // One slot per trial keeps failure reporting deterministic under any
  // schedule: the lowest failing trial index always wins.
  std::vector<std::string> failures(n_trials);

  auto worker_body = [&](std::atomic<std::uint64_t>& counter) {
    for (;;) {
      const std::uint64_t i = counter.fetch_add(1, std::memory_order_relaxed);
      if (i >= n_trials) return;
      const std::uint64_t trial_seed = derive_seed(base_seed, SeedDomain::trial, i);
      try {
        words[i] = generate_word(cfg, trial_seed).bits;
      } catch (const std::exception& ex) {
        failures[i] = ex.what();
      }
    }
  };

  std::atomic<std::uint64_t> counter{0};
  const unsigned threads = std::min<std::uint64_t>(resolve_threads(n_threads), n_trials);
  if (threads <= 1) {
    worker_body(counter);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] { worker_body(counter); });
    }
    for (auto& t : pool) t.join();
  }

  for (std::uint64_t i = 0; i < n_trials; ++i) {
    if (!failures[i].empty()) {
      throw NumericalError("trial " + std::to_string(i) + " failed: " + failures[i]);
    }
  }

  TrialEnsemble out;
  out.distribution = tally_words(static_cast<std::uint32_t>(cfg.n_devices), words,
                                 homogeneous_devices(cfg));
  out.words = std::move(words);
  return out;
}

DeviceInstance sample_variation(const DeviceInstance& nominal,
                                const VariationSpec& spec, TrialRng& rng,
                                std::uint64_t instance_seed) {
  validate_spec(spec);
  validate(nominal);

  const double nominal_area = ellipse_area(nominal.geometry);
  for (int attempt = 0; attempt < 100; ++attempt) {
    // Draw the full tuple every attempt so the stream position after a
    // rejection does not depend on which draw was invalid.
    const double major =
        nominal.geometry.major_axis * (1.0 + spec.sigma_fraction * rng.normal());
    const double minor =
        nominal.geometry.minor_axis * (1.0 + spec.sigma_fraction * rng.normal());
    const double thickness = nominal.geometry.free_layer_thickness *
                             (1.0 + spec.sigma_fraction * rng.normal());
    const double oxide_factor = 1.0 + spec.resistance_sigma_fraction * rng.normal();

    if (major <= 0.0 || minor <= 0.0 || thickness <= 0.0 || major < minor ||
        oxide_factor <= 0.0) {
      continue;
    }

    DeviceInstance out;
    out.geometry = MtjGeometry{major, minor, thickness};
    out.material = make_material(out.geometry, nominal.material.ms,
                                 nominal.material.alpha,
                                 nominal.material.polarization);
    // Junction resistance scales inversely with area; the oxide factor models
    // the residual (barrier-thickness) spread.  TMR is preserved.
    const double scale = (nominal_area / ellipse_area(out.geometry)) * oxide_factor;
    out.electrical = MtjElectricalParams{nominal.electrical.r_on * scale,
                                         nominal.electrical.r_off * scale};
    out.provenance = Provenance{Provenance::Kind::sampled, instance_seed};
    validate(out);
    return out;
  }
  throw NumericalError(
      "sample_variation: no physical device after 100 draws; sigma too large");
}

MtjElectricalParams temperature_adjust(const MtjElectricalParams& e, double t_kelvin,
                                       double tmr_rate_pct_per_kelvin) {
  validate(e);
  const double factor = 1.0 + tmr_rate_pct_per_kelvin / 100.0 * (t_kelvin - 300.0);
  const double tmr_t = e.tmr() * factor;
  if (tmr_t <= 0.0) {
    throw NumericalError("temperature_adjust: TMR model leaves validity range (TMR <= 0) at " +
                         std::to_string(t_kelvin) + " K");
  }
  return MtjElectricalParams{e.r_on, e.r_on * (1.0 + tmr_t)};
}

std::string_view sweep_axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::t_enable: return "t_enable";
    case SweepAxis::v_init: return "v_init";
    case SweepAxis::capacitance: return "capacitance";
    case SweepAxis::r_series_offset: return "r_series_offset";
    case SweepAxis::field_magnitude: return "field_magnitude";
    case SweepAxis::field_theta: return "field_theta";
    case SweepAxis::field_phi: return "field_phi";
    case SweepAxis::field_frequency: return "field_frequency";
    case SweepAxis::temperature: return "temperature";
  }
  throw ConfigError("unknown sweep axis");
}

TrngConfig apply_axis(const TrngConfig& base, SweepAxis axis, double value,
                      double tmr_rate_pct_per_kelvin) {
  TrngConfig cfg = base;
  switch (axis) {
    case SweepAxis::t_enable:
      cfg.t_enable = value;
      break;
    case SweepAxis::v_init:
      cfg.circuit.v_init = value;
      break;
    case SweepAxis::capacitance:
      cfg.circuit.capacitance = value;
      break;
    case SweepAxis::r_series_offset:
      cfg.circuit.r_series = base.circuit.r_series + value;
      break;
    case SweepAxis::field_magnitude:
      if (cfg.environment.external_field.kind == FieldSpec::Kind::none) {
        cfg.environment.external_field.kind = FieldSpec::Kind::constant;
      }
      cfg.environment.external_field.magnitude = value;
      break;
    case SweepAxis::field_theta:
      cfg.environment.external_field.theta_deg = value;
      break;
    case SweepAxis::field_phi:
      cfg.environment.external_field.phi_deg = value;
      break;
    case SweepAxis::field_frequency:
      cfg.environment.external_field.kind = FieldSpec::Kind::alternating;
      cfg.environment.external_field.frequency = value;
      break;
    case SweepAxis::temperature:
      cfg.environment.temperature = value;
      for (auto& dev : cfg.devices) {
        dev.electrical =
            temperature_adjust(dev.electrical, value, tmr_rate_pct_per_kelvin);
      }
      break;
  }
  return cfg;
}

namespace {

// Shared per-point evaluation: trials, entropy report, mean bit probability.
SweepPoint evaluate_point(const TrngConfig& cfg, double value,
                          std::uint64_t trials, std::uint64_t point_seed,
                          unsigned n_threads, bool symmetrize, int resamples) {
  SweepPoint pt;
  pt.value = value;
  try {
    validate(cfg);
    const TrialEnsemble ens = run_trials(cfg, trials, point_seed, n_threads);
    const bool sym = symmetrize && homogeneous_devices(cfg);
    pt.entropy = make_entropy_report(ens.distribution, sym, resamples, point_seed);
    std::uint64_t ones = 0;
    for (const std::uint32_t w : ens.words) ones += std::popcount(w);
    pt.mean_switch_probability =
        static_cast<double>(ones) /
        (static_cast<double>(trials) * static_cast<double>(cfg.n_devices));
    pt.ok = true;
  } catch (const std::exception& ex) {
    pt.ok = false;
    pt.error = ex.what();
  }
  return pt;
}

}  // namespace

SweepResult sweep(const SweepPlan& plan) {
  if (plan.values.empty()) throw ConfigError("sweep: no axis values");
  if (plan.trials == 0) throw ConfigError("sweep: need at least one trial per point");

  SweepResult result;
  result.axis = plan.axis;
  result.points.reserve(plan.values.size());
  for (std::size_t i = 0; i < plan.values.size(); ++i) {
    const std::uint64_t point_seed =
        derive_seed(plan.base_seed, SeedDomain::calibration, i);
    TrngConfig cfg;
    try {
      cfg = apply_axis(plan.base, plan.axis, plan.values[i],
                       plan.tmr_rate_pct_per_kelvin);
    } catch (const std::exception& ex) {
      SweepPoint pt;
      pt.value = plan.values[i];
      pt.ok = false;
      pt.error = ex.what();
      result.points.push_back(std::move(pt));
      continue;
    }
    result.points.push_back(evaluate_point(cfg, plan.values[i], plan.trials,
                                           point_seed, plan.n_threads,
                                           plan.symmetrize,
                                           plan.bootstrap_resamples));
  }
  return result;
}

std::vector<RotateGridPoint> rotate_grid(const RotateGridPlan& plan) {
  if (plan.theta_deg.empty() || plan.phi_deg.empty()) {
    throw ConfigError("rotate_grid: empty angle grid");
  }
  if (plan.magnitude < 0.0) throw ConfigError("rotate_grid: negative magnitude");
  if (plan.trials == 0) throw ConfigError("rotate_grid: need at least one trial");

  std::vector<RotateGridPoint> out;
  out.reserve(plan.theta_deg.size() * plan.phi_deg.size());
  std::size_t cell = 0;
  for (const double theta : plan.theta_deg) {
    for (const double phi : plan.phi_deg) {
      TrngConfig cfg = plan.base;
      cfg.environment.external_field =
          FieldSpec{FieldSpec::Kind::constant, plan.magnitude, theta, phi, 0.0};
      const std::uint64_t point_seed =
          derive_seed(plan.base_seed, SeedDomain::calibration, cell);
      const SweepPoint pt =
          evaluate_point(cfg, plan.magnitude, plan.trials, point_seed,
                         plan.n_threads, plan.symmetrize, plan.bootstrap_resamples);
      RotateGridPoint g;
      g.theta_deg = theta;
      g.phi_deg = phi;
      g.ok = pt.ok;
      g.error = pt.error;
      g.entropy = pt.entropy;
      out.push_back(std::move(g));
      ++cell;
    }
  }
  return out;
}

std::vector<AssistanceFieldPoint> assistance_field_study(
    const AssistanceFieldPlan& plan) {
  if (plan.magnitudes.empty()) throw ConfigError("assistance study: no magnitudes");
  if (plan.c_min <= 0.0 || plan.c_max <= plan.c_min) {
    throw ConfigError("assistance study: need 0 < c_min < c_max");
  }
  if (plan.target_entropy_per_bit <= 0.0 || plan.target_entropy_per_bit > 1.0) {
    throw ConfigError("assistance study: target entropy per bit must be in (0, 1]");
  }
  if (plan.c_rel_tol <= 0.0 || plan.c_rel_tol >= 1.0) {
    throw ConfigError("assistance study: relative tolerance must be in (0, 1)");
  }
  if (plan.trials == 0) throw ConfigError("assistance study: need at least one trial");

  std::vector<AssistanceFieldPoint> out;
  out.reserve(plan.magnitudes.size());

  for (std::size_t mi = 0; mi < plan.magnitudes.size(); ++mi) {
    AssistanceFieldPoint pt;
    pt.magnitude = plan.magnitudes[mi];

    TrngConfig cfg_m = plan.base;
    cfg_m.environment.external_field.kind = FieldSpec::Kind::constant;
    cfg_m.environment.external_field.magnitude = plan.magnitudes[mi];
    cfg_m.environment.external_field.frequency = 0.0;

    const std::uint64_t point_base =
        derive_seed(plan.base_seed, SeedDomain::calibration, mi);
    std::uint64_t eval_counter = 0;
    auto entropy_at = [&](double capacitance) {
      TrngConfig cfg = cfg_m;
      cfg.circuit.capacitance = capacitance;
      validate(cfg);
      const std::uint64_t seed =
          derive_seed(point_base, SeedDomain::calibration, eval_counter++);
      const TrialEnsemble ens = run_trials(cfg, plan.trials, seed, plan.n_threads);
      const bool sym = homogeneous_devices(cfg);
      return make_entropy_report(ens.distribution, sym, 0, seed).shannon_per_bit;
    };

    try {
      // Entropy vs. capacitance can rise and fall (the bit probability keeps
      // climbing through 1/2), so locate a bracket by coarse geometric scan
      // before bisecting toward the smallest qualifying capacitance.
      constexpr int kScanPoints = 8;
      const double ratio = plan.c_max / plan.c_min;
      double lo = 0.0;       // below target (0 means "no lower edge yet")
      double hi = 0.0;       // first scan point at/above target
      double hi_entropy = 0.0;
      double prev = 0.0;
      for (int k = 0; k < kScanPoints; ++k) {
        const double c = plan.c_min *
                         std::pow(ratio, static_cast<double>(k) / (kScanPoints - 1));
        const double h = entropy_at(c);
        if (h >= plan.target_entropy_per_bit) {
          hi = c;
          hi_entropy = h;
          lo = prev;  // 0 when already met at c_min
          break;
        }
        prev = c;
      }

      if (hi == 0.0) {
        pt.ok = true;
        pt.feasible = false;
        out.push_back(std::move(pt));
        continue;
      }
      if (lo > 0.0) {
        while ((hi - lo) / hi > plan.c_rel_tol) {
          const double mid = std::sqrt(lo * hi);
          const double h = entropy_at(mid);
          if (h >= plan.target_entropy_per_bit) {
            hi = mid;
            hi_entropy = h;
          } else {
            lo = mid;
          }
        }
      }
      pt.ok = true;
      pt.feasible = true;
      pt.capacitance = hi;
      pt.entropy_per_bit = hi_entropy;
    } catch (const std::exception& ex) {
      pt.ok = false;
      pt.error = ex.what();
    }
    out.push_back(std::move(pt));
  }
  return out;
}

double calibrate_series_resistance(const TrngConfig& cfg_template,
                                   std::span<const double> candidates,
                                   std::uint64_t trials, std::uint64_t base_seed,
                                   unsigned n_threads) {
  if (candidates.empty()) throw ConfigError("calibration: no resistance candidates");
  if (trials < 2) throw ConfigError("calibration: need at least two trials per candidate");

  double best_r = 0.0;
  double best_entropy = -1.0;
  for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
    TrngConfig cfg = cfg_template;
    cfg.circuit.r_series = candidates[ci];
    validate(cfg);
    const std::uint64_t seed = derive_seed(base_seed, SeedDomain::calibration, ci);
    const TrialEnsemble ens = run_trials(cfg, trials, seed, n_threads);
    const double h =
        make_entropy_report(ens.distribution, homogeneous_devices(cfg), 0, seed)
            .shannon_per_bit;
    // Ties go to the larger resistance: it draws less current for the same
    // entropy.
    if (h > best_entropy || (h == best_entropy && candidates[ci] > best_r)) {
      best_entropy = h;
      best_r = candidates[ci];
    }
  }
  return best_r;
}

SummaryStats summarize(std::vector<double> values) {
  SummaryStats s;
  const std::size_t n = values.size();
  if (n == 0) return s;
  std::sort(values.begin(), values.end());

  double sum = 0.0;
  for (const double v : values) sum += v;
  s.mean = sum / static_cast<double>(n);

  if (n >= 2) {
    double ss = 0.0;
    for (const double v : values) {
      const double d = v - s.mean;
      ss += d * d;
    }
    s.stddev = std::sqrt(ss / static_cast<double>(n - 1));
  }

  s.median = (n % 2 == 1) ? values[n / 2]
                          : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  const std::size_t rank = (n + 9) / 10;  // ceil(n/10), 1-based
  s.p10 = values[rank - 1];
  return s;
}

VariationEnsembleResult variation_ensemble(const TrngConfig& nominal,
                                           std::uint64_t n_instances,
                                           const VariationSpec& spec,
                                           std::uint64_t trials_per_instance,
                                           std::uint64_t base_seed,
                                           unsigned n_threads,
                                           int bootstrap_resamples) {
  validate(nominal);
  validate_spec(spec);
  if (n_instances == 0) throw ConfigError("variation ensemble: need at least one instance");
  if (trials_per_instance == 0) {
    throw ConfigError("variation ensemble: need at least one trial per instance");
  }

  VariationEnsembleResult result;
  result.instances.reserve(n_instances);
  std::vector<double> shannon;
  std::vector<double> min_e;

  for (std::uint64_t i = 0; i < n_instances; ++i) {
    const std::uint64_t iseed = derive_seed(base_seed, SeedDomain::instance, i);
    VariationInstanceResult inst;
    inst.instance_seed = iseed;
    try {
      TrialRng device_rng(iseed);
      TrngConfig cfg = nominal;
      for (auto& dev : cfg.devices) {
        dev = sample_variation(dev, spec, device_rng, iseed);
      }
      const TrialEnsemble ens =
          run_trials(cfg, trials_per_instance, iseed, n_threads);
      // Mismatched devices are not exchangeable; estimate raw.
      inst.entropy =
          make_entropy_report(ens.distribution, false, bootstrap_resamples, iseed);
      inst.ok = true;
      shannon.push_back(inst.entropy.shannon_per_bit);
      min_e.push_back(inst.entropy.min_per_bit);
    } catch (const std::exception& ex) {
      inst.ok = false;
      inst.error = ex.what();
    }
    result.instances.push_back(std::move(inst));
  }

  result.shannon_per_bit = summarize(std::move(shannon));
  result.min_per_bit = summarize(std::move(min_e));
  return result;
}

}  // namespace spintrng
