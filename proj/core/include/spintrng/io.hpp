#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spintrng/circuit.hpp"
#include "spintrng/config.hpp"
#include "spintrng/entropy.hpp"
#include "spintrng/montecarlo.hpp"
#include "spintrng/nist.hpp"
#include "spintrng/protocol.hpp"
#include "spintrng/whitening.hpp"

// File formats:
//   - device profiles and experiment configs: JSON
//   - generated words: raw little-endian uint32 .bin plus a JSON sidecar
//     (<file>.json) carrying width, seed, trial count and config digest
//   - bit streams: raw bytes plus the same sidecar scheme
//   - sweep/grid/ensemble results: CSV
//   - reports: JSON
// Outputs carry no timestamps, so identical runs produce identical bytes.

namespace spintrng {

// ---------------------------------------------------------------------------
// Device profiles

// JSON schema: {"geometry": {"major_axis", "minor_axis",
// "free_layer_thickness"}, "ms", "alpha", "polarization", "r_on", "r_off"}
// with an optional {"demag": {"nx","ny","nz"}} override of the shape-derived
// factors.
DeviceInstance parse_device_profile(const std::string& json_text);
DeviceInstance load_device_profile(const std::filesystem::path& path);
std::string device_profile_to_json(const DeviceInstance& device);

// ---------------------------------------------------------------------------
// Experiment configs

// JSON schema: {"n_devices", "circuit": {"capacitance","v_init","r_series",
// "passgate_resistance"}, "t_enable", "dt", "reset_burn_in",
// "read_threshold", "environment": {"temperature", "field": {"kind",
// "magnitude","theta_deg","phi_deg","frequency"}}, and either
// "device": {inline profile} or "device_profile": "name.json"}.
//
// Profile references resolve against, in order: the path as given, the
// config file's own directory, then $SPINTRNG_PROFILE_DIR.
TrngConfig parse_config(const std::string& json_text,
                        const std::filesystem::path& base_dir = {});
TrngConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const TrngConfig& cfg);

// FNV-1a 64 over the canonical JSON serialization, as a 16-digit hex string.
// Ties output files to the exact configuration that produced them.
std::string config_digest(const TrngConfig& cfg);

// ---------------------------------------------------------------------------
// Word streams and bit streams

struct WordStreamMeta {
  std::uint32_t n_bits = 0;
  std::uint64_t n_words = 0;
  std::uint64_t base_seed = 0;
  std::string config_digest;
  bool whitened = false;
};

// words.bin (little-endian uint32) + words.bin.json sidecar.
void save_words(const std::filesystem::path& bin_path,
                std::span<const std::uint32_t> words, const WordStreamMeta& meta);
std::pair<std::vector<std::uint32_t>, WordStreamMeta> load_words(
    const std::filesystem::path& bin_path);

// Raw packed bytes + sidecar (n_bits, config_digest, whitened).
void save_bitstream(const std::filesystem::path& bin_path, const Bitstream& stream);
Bitstream load_bitstream(const std::filesystem::path& bin_path);

// ---------------------------------------------------------------------------
// CSV writers
//
// Every CSV starts with a `# config_digest=<hex>` comment line tying the
// table to the configuration that produced it; read_csv_digest recovers it.

// Columns: t, v_cap, i_0..i_{n-1}, mx_0..mx_{n-1}.
void write_trace_csv(const std::filesystem::path& path, const EnableTrace& trace,
                     const std::string& config_digest = {});

// Columns: <axis>, ok, shannon_per_word, shannon_per_bit, min_per_bit,
// bootstrap_stderr, mean_switch_probability, error.
void write_sweep_csv(const std::filesystem::path& path, const SweepResult& result,
                     const std::string& config_digest = {});

// Columns: theta_deg, phi_deg, ok, shannon_per_bit, min_per_bit, error.
void write_grid_csv(const std::filesystem::path& path,
                    std::span<const RotateGridPoint> points,
                    const std::string& config_digest = {});

// Columns: magnitude, ok, feasible, capacitance, entropy_per_bit, error.
void write_assistance_csv(const std::filesystem::path& path,
                          std::span<const AssistanceFieldPoint> points,
                          const std::string& config_digest = {});

// Columns: instance_seed, ok, shannon_per_bit, min_per_bit, error.
void write_variation_csv(const std::filesystem::path& path,
                         const VariationEnsembleResult& result,
                         const std::string& config_digest = {});

// Digest from the leading comment line; empty if absent.
std::string read_csv_digest(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// JSON reports (each embeds the config digest it was produced under)

std::string entropy_report_to_json(const EntropyReport& report,
                                   const std::string& config_digest = {});
std::string timing_energy_report_to_json(const TimingEnergyReport& report,
                                         const std::string& config_digest = {});
std::string nist_suite_to_json(const NistSuiteResult& result,
                               bool include_p_values = false,
                               const std::string& config_digest = {});
std::string variation_ensemble_to_json(const VariationEnsembleResult& result,
                                       const std::string& config_digest = {});

// Overwrites atomically enough for our purposes (write + rename is not
// needed; tests only require the final content).
void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace spintrng
