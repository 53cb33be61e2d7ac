#include "spintrng/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "spintrng/errors.hpp"

namespace spintrng {

namespace {

using nlohmann::json;

[[noreturn]] void fail_parse(const char* what_kind, const std::exception& ex) {
  throw ConfigError(std::string(what_kind) + ": " + ex.what());
}

std::string field_kind_name(FieldSpec::Kind k) {
  switch (k) {
    case FieldSpec::Kind::none: return "none";
    case FieldSpec::Kind::constant: return "constant";
    case FieldSpec::Kind::alternating: return "alternating";
  }
  throw ConfigError("unknown field kind");
}

FieldSpec::Kind field_kind_from_name(const std::string& name) {
  if (name == "none") return FieldSpec::Kind::none;
  if (name == "constant") return FieldSpec::Kind::constant;
  if (name == "alternating") return FieldSpec::Kind::alternating;
  throw ConfigError("unknown field kind '" + name +
                    "' (expected none, constant or alternating)");
}

json field_to_json(const FieldSpec& f) {
  return json{{"kind", field_kind_name(f.kind)},
              {"magnitude", f.magnitude},
              {"theta_deg", f.theta_deg},
              {"phi_deg", f.phi_deg},
              {"frequency", f.frequency}};
}

FieldSpec field_from_json(const json& j) {
  FieldSpec f;
  f.kind = field_kind_from_name(j.value("kind", std::string("none")));
  f.magnitude = j.value("magnitude", f.magnitude);
  f.theta_deg = j.value("theta_deg", f.theta_deg);
  f.phi_deg = j.value("phi_deg", f.phi_deg);
  f.frequency = j.value("frequency", f.frequency);
  return f;
}

json device_to_json(const DeviceInstance& d) {
  // The shape-derived demag factors are emitted so a round trip reproduces
  // the instance bit-for-bit instead of to recomputation accuracy.
  return json{
      {"geometry",
       {{"major_axis", d.geometry.major_axis},
        {"minor_axis", d.geometry.minor_axis},
        {"free_layer_thickness", d.geometry.free_layer_thickness}}},
      {"ms", d.material.ms},
      {"alpha", d.material.alpha},
      {"polarization", d.material.polarization},
      {"demag", {{"nx", d.material.demag.nx},
                 {"ny", d.material.demag.ny},
                 {"nz", d.material.demag.nz}}},
      {"r_on", d.electrical.r_on},
      {"r_off", d.electrical.r_off},
  };
}

DeviceInstance device_from_json(const json& j) {
  DeviceInstance d;
  const json& g = j.at("geometry");
  d.geometry = MtjGeometry{g.at("major_axis").get<double>(),
                           g.at("minor_axis").get<double>(),
                           g.at("free_layer_thickness").get<double>()};
  d.material = make_material(d.geometry, j.at("ms").get<double>(),
                             j.at("alpha").get<double>(),
                             j.at("polarization").get<double>());
  if (j.contains("demag")) {
    const json& n = j.at("demag");
    d.material.demag = DemagFactors{n.at("nx").get<double>(),
                                    n.at("ny").get<double>(),
                                    n.at("nz").get<double>()};
  }
  d.electrical =
      MtjElectricalParams{j.at("r_on").get<double>(), j.at("r_off").get<double>()};
  validate(d);
  return d;
}

json config_to_json_obj(const TrngConfig& cfg) {
  json devices = json::array();
  for (const auto& d : cfg.devices) devices.push_back(device_to_json(d));
  return json{
      {"n_devices", cfg.n_devices},
      {"circuit",
       {{"capacitance", cfg.circuit.capacitance},
        {"v_init", cfg.circuit.v_init},
        {"r_series", cfg.circuit.r_series},
        {"passgate_resistance", cfg.circuit.passgate_resistance}}},
      {"t_enable", cfg.t_enable},
      {"dt", cfg.dt},
      {"reset_burn_in", cfg.reset_burn_in},
      {"read_threshold", cfg.read_threshold},
      {"environment",
       {{"temperature", cfg.environment.temperature},
        {"field", field_to_json(cfg.environment.external_field)}}},
      {"devices", devices},
  };
}

std::filesystem::path resolve_profile(const std::string& name,
                                      const std::filesystem::path& base_dir) {
  namespace fs = std::filesystem;
  const fs::path as_given(name);
  if (fs::exists(as_given)) return as_given;
  if (!base_dir.empty() && fs::exists(base_dir / as_given)) {
    return base_dir / as_given;
  }
  if (const char* env = std::getenv("SPINTRNG_PROFILE_DIR")) {
    if (fs::exists(fs::path(env) / as_given)) return fs::path(env) / as_given;
  }
  throw ConfigError("device profile '" + name +
                    "' not found (searched the path itself, the config "
                    "directory, and $SPINTRNG_PROFILE_DIR)");
}

TrngConfig config_from_json(const json& j, const std::filesystem::path& base_dir) {
  TrngConfig cfg;
  cfg.n_devices = j.at("n_devices").get<std::size_t>();
  if (j.contains("circuit")) {
    const json& c = j.at("circuit");
    cfg.circuit.capacitance = c.value("capacitance", cfg.circuit.capacitance);
    cfg.circuit.v_init = c.value("v_init", cfg.circuit.v_init);
    cfg.circuit.r_series = c.value("r_series", cfg.circuit.r_series);
    cfg.circuit.passgate_resistance =
        c.value("passgate_resistance", cfg.circuit.passgate_resistance);
  }
  cfg.t_enable = j.value("t_enable", cfg.t_enable);
  cfg.dt = j.value("dt", cfg.dt);
  cfg.reset_burn_in = j.value("reset_burn_in", cfg.reset_burn_in);
  cfg.read_threshold = j.value("read_threshold", cfg.read_threshold);
  if (j.contains("environment")) {
    const json& e = j.at("environment");
    cfg.environment.temperature = e.value("temperature", cfg.environment.temperature);
    if (e.contains("field")) {
      cfg.environment.external_field = field_from_json(e.at("field"));
    }
  }

  if (j.contains("devices")) {
    for (const json& dj : j.at("devices")) {
      cfg.devices.push_back(device_from_json(dj));
    }
  } else if (j.contains("device")) {
    cfg.devices.assign(cfg.n_devices, device_from_json(j.at("device")));
  } else if (j.contains("device_profile")) {
    const auto path =
        resolve_profile(j.at("device_profile").get<std::string>(), base_dir);
    cfg.devices.assign(cfg.n_devices, load_device_profile(path));
  } else {
    throw ConfigError("config needs one of: devices, device, device_profile");
  }
  validate(cfg);
  return cfg;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& ex) {
    throw ConfigError(path.string() + ": " + ex.what());
  }
}

std::ofstream open_out(const std::filesystem::path& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  return out;
}

std::filesystem::path sidecar_path(const std::filesystem::path& bin_path) {
  return std::filesystem::path(bin_path.string() + ".json");
}

json summary_to_json(const SummaryStats& s) {
  return json{{"mean", s.mean}, {"stddev", s.stddev}, {"median", s.median},
              {"p10", s.p10}};
}

}  // namespace

DeviceInstance parse_device_profile(const std::string& json_text) {
  try {
    return device_from_json(json::parse(json_text));
  } catch (const json::exception& ex) {
    fail_parse("device profile", ex);
  }
}

DeviceInstance load_device_profile(const std::filesystem::path& path) {
  try {
    return device_from_json(read_json_file(path));
  } catch (const json::exception& ex) {
    fail_parse(path.string().c_str(), ex);
  }
}

std::string device_profile_to_json(const DeviceInstance& device) {
  return device_to_json(device).dump(2) + "\n";
}

TrngConfig parse_config(const std::string& json_text,
                        const std::filesystem::path& base_dir) {
  try {
    return config_from_json(json::parse(json_text), base_dir);
  } catch (const json::exception& ex) {
    fail_parse("config", ex);
  }
}

TrngConfig load_config(const std::filesystem::path& path) {
  try {
    return config_from_json(read_json_file(path), path.parent_path());
  } catch (const json::exception& ex) {
    fail_parse(path.string().c_str(), ex);
  }
}

std::string config_to_json(const TrngConfig& cfg) {
  return config_to_json_obj(cfg).dump(2) + "\n";
}

std::string config_digest(const TrngConfig& cfg) {
  const std::string text = config_to_json(cfg);
  std::uint64_t h = 14695981039346656037ull;  // FNV-1a 64 offset basis
  for (const unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;  // FNV prime
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

void save_words(const std::filesystem::path& bin_path,
                std::span<const std::uint32_t> words, const WordStreamMeta& meta) {
  if (meta.n_words != words.size()) {
    throw ConfigError("word stream metadata count mismatch");
  }
  auto out = open_out(bin_path, /*binary=*/true);
  for (const std::uint32_t w : words) {
    const unsigned char bytes[4] = {
        static_cast<unsigned char>(w & 0xff),
        static_cast<unsigned char>((w >> 8) & 0xff),
        static_cast<unsigned char>((w >> 16) & 0xff),
        static_cast<unsigned char>((w >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(bytes), 4);
  }
  const json side{{"format", "spintrng-words"},
                  {"n_bits", meta.n_bits},
                  {"n_words", meta.n_words},
                  {"base_seed", meta.base_seed},
                  {"config_digest", meta.config_digest},
                  {"whitened", meta.whitened}};
  write_text_file(sidecar_path(bin_path), side.dump(2) + "\n");
}

std::pair<std::vector<std::uint32_t>, WordStreamMeta> load_words(
    const std::filesystem::path& bin_path) {
  std::ifstream in(bin_path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + bin_path.string());
  std::vector<char> raw((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
  if (raw.size() % 4 != 0) {
    throw ConfigError(bin_path.string() + ": size is not a multiple of 4 bytes");
  }

  const json side = read_json_file(sidecar_path(bin_path));
  WordStreamMeta meta;
  try {
    if (side.at("format").get<std::string>() != "spintrng-words") {
      throw ConfigError(bin_path.string() + ": sidecar is not a word-stream record");
    }
    meta.n_bits = side.at("n_bits").get<std::uint32_t>();
    meta.n_words = side.at("n_words").get<std::uint64_t>();
    meta.base_seed = side.at("base_seed").get<std::uint64_t>();
    meta.config_digest = side.value("config_digest", std::string());
    meta.whitened = side.value("whitened", false);
  } catch (const json::exception& ex) {
    fail_parse(bin_path.string().c_str(), ex);
  }
  if (meta.n_words != raw.size() / 4) {
    throw ConfigError(bin_path.string() + ": sidecar word count disagrees with file size");
  }

  std::vector<std::uint32_t> words(meta.n_words);
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto b = reinterpret_cast<const unsigned char*>(raw.data() + 4 * i);
    words[i] = static_cast<std::uint32_t>(b[0]) |
               (static_cast<std::uint32_t>(b[1]) << 8) |
               (static_cast<std::uint32_t>(b[2]) << 16) |
               (static_cast<std::uint32_t>(b[3]) << 24);
  }
  return {std::move(words), meta};
}

void save_bitstream(const std::filesystem::path& bin_path, const Bitstream& stream) {
  auto out = open_out(bin_path, /*binary=*/true);
  out.write(reinterpret_cast<const char*>(stream.bytes.data()),
            static_cast<std::streamsize>(stream.bytes.size()));
  const json side{{"format", "spintrng-bits"},
                  {"n_bits", stream.n_bits},
                  {"config_digest", stream.config_digest},
                  {"whitened", stream.whitened}};
  write_text_file(sidecar_path(bin_path), side.dump(2) + "\n");
}

Bitstream load_bitstream(const std::filesystem::path& bin_path) {
  std::ifstream in(bin_path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + bin_path.string());
  Bitstream stream;
  std::vector<char> raw((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
  stream.bytes.assign(raw.begin(), raw.end());

  const json side = read_json_file(sidecar_path(bin_path));
  try {
    if (side.at("format").get<std::string>() != "spintrng-bits") {
      throw ConfigError(bin_path.string() + ": sidecar is not a bit-stream record");
    }
    stream.n_bits = side.at("n_bits").get<std::uint64_t>();
    stream.config_digest = side.value("config_digest", std::string());
    stream.whitened = side.value("whitened", false);
  } catch (const json::exception& ex) {
    fail_parse(bin_path.string().c_str(), ex);
  }
  if (stream.bytes.size() != (stream.n_bits + 7) / 8) {
    throw ConfigError(bin_path.string() + ": sidecar bit count disagrees with file size");
  }
  return stream;
}

namespace {

void write_digest_comment(std::ofstream& out, const std::string& digest) {
  if (!digest.empty()) out << "# config_digest=" << digest << "\n";
}

}  // namespace

void write_trace_csv(const std::filesystem::path& path, const EnableTrace& trace,
                     const std::string& config_digest) {
  auto out = open_out(path);
  out << std::setprecision(12);
  write_digest_comment(out, config_digest);
  const std::size_t n = trace.currents.empty() ? 0 : trace.currents.front().size();
  out << "t,v_cap";
  for (std::size_t d = 0; d < n; ++d) out << ",i_" << d;
  for (std::size_t d = 0; d < n; ++d) out << ",mx_" << d;
  out << "\n";
  for (std::size_t r = 0; r < trace.t.size(); ++r) {
    out << trace.t[r] << "," << trace.v_cap[r];
    for (std::size_t d = 0; d < n; ++d) out << "," << trace.currents[r][d];
    for (std::size_t d = 0; d < n; ++d) out << "," << trace.mx[r][d];
    out << "\n";
  }
}

namespace {

// CSV fields never contain commas except free-form error strings; quote those.
std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (const char c : s) {
    if (c == '"') q += "\"\"";
    else q += c;
  }
  q += "\"";
  return q;
}

}  // namespace

void write_sweep_csv(const std::filesystem::path& path, const SweepResult& result,
                     const std::string& config_digest) {
  auto out = open_out(path);
  out << std::setprecision(12);
  write_digest_comment(out, config_digest);
  out << sweep_axis_name(result.axis)
      << ",ok,shannon_per_word,shannon_per_bit,min_per_bit,bootstrap_stderr,"
         "mean_switch_probability,error\n";
  for (const auto& p : result.points) {
    out << p.value << "," << (p.ok ? 1 : 0) << "," << p.entropy.shannon_per_word
        << "," << p.entropy.shannon_per_bit << "," << p.entropy.min_per_bit << ","
        << p.entropy.bootstrap_stderr << "," << p.mean_switch_probability << ","
        << csv_escape(p.error) << "\n";
  }
}

void write_grid_csv(const std::filesystem::path& path,
                    std::span<const RotateGridPoint> points,
                    const std::string& config_digest) {
  auto out = open_out(path);
  out << std::setprecision(12);
  write_digest_comment(out, config_digest);
  out << "theta_deg,phi_deg,ok,shannon_per_bit,min_per_bit,error\n";
  for (const auto& p : points) {
    out << p.theta_deg << "," << p.phi_deg << "," << (p.ok ? 1 : 0) << ","
        << p.entropy.shannon_per_bit << "," << p.entropy.min_per_bit << ","
        << csv_escape(p.error) << "\n";
  }
}

void write_assistance_csv(const std::filesystem::path& path,
                          std::span<const AssistanceFieldPoint> points,
                          const std::string& config_digest) {
  auto out = open_out(path);
  out << std::setprecision(12);
  write_digest_comment(out, config_digest);
  out << "magnitude,ok,feasible,capacitance,entropy_per_bit,error\n";
  for (const auto& p : points) {
    out << p.magnitude << "," << (p.ok ? 1 : 0) << "," << (p.feasible ? 1 : 0)
        << "," << p.capacitance << "," << p.entropy_per_bit << ","
        << csv_escape(p.error) << "\n";
  }
}

void write_variation_csv(const std::filesystem::path& path,
                         const VariationEnsembleResult& result,
                         const std::string& config_digest) {
  auto out = open_out(path);
  out << std::setprecision(12);
  write_digest_comment(out, config_digest);
  out << "instance_seed,ok,shannon_per_bit,min_per_bit,error\n";
  for (const auto& inst : result.instances) {
    out << inst.instance_seed << "," << (inst.ok ? 1 : 0) << ","
        << inst.entropy.shannon_per_bit << "," << inst.entropy.min_per_bit << ","
        << csv_escape(inst.error) << "\n";
  }
}

std::string read_csv_digest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  const std::string prefix = "# config_digest=";
  if (line.rfind(prefix, 0) != 0) return {};
  return line.substr(prefix.size());
}

std::string entropy_report_to_json(const EntropyReport& report,
                                   const std::string& config_digest) {
  const json j{{"shannon_per_word", report.shannon_per_word},
               {"min_entropy_per_word", report.min_entropy_per_word},
               {"shannon_per_bit", report.shannon_per_bit},
               {"min_per_bit", report.min_per_bit},
               {"bootstrap_stderr", report.bootstrap_stderr},
               {"config_digest", config_digest}};
  return j.dump(2) + "\n";
}

std::string timing_energy_report_to_json(const TimingEnergyReport& report,
                                         const std::string& config_digest) {
  const json j{{"config_digest", config_digest},
               {"t_reset", report.t_reset},
               {"t_enable", report.t_enable},
               {"t_read", report.t_read},
               {"t_cycle", report.t_cycle},
               {"e_cap_stored", report.e_cap_stored},
               {"e_passgate", report.e_passgate},
               {"e_write_total", report.e_write_total},
               {"e_read_total", report.e_read_total},
               {"e_cycle", report.e_cycle},
               {"entropy_per_word", report.entropy_per_word},
               {"entropy_rate", report.entropy_rate},
               {"energy_per_entropy_bit", report.energy_per_entropy_bit},
               {"per_bit_defined", report.per_bit_defined},
               {"t_reset_improved", report.t_reset_improved},
               {"t_cycle_improved", report.t_cycle_improved},
               {"entropy_rate_improved", report.entropy_rate_improved}};
  return j.dump(2) + "\n";
}

std::string nist_suite_to_json(const NistSuiteResult& result, bool include_p_values,
                               const std::string& config_digest) {
  json tests = json::array();
  for (const auto& t : result.tests) {
    json tj{{"name", t.name},
            {"uniformity_p", t.uniformity_p},
            {"success_rate", t.success_rate},
            {"pass", t.pass}};
    if (include_p_values) tj["p_values"] = t.p_values;
    tests.push_back(std::move(tj));
  }
  const json j{{"pass", result.pass},
               {"n_sequences", result.n_sequences},
               {"sequence_length", result.sequence_length},
               {"config_digest", config_digest},
               {"thresholds",
                {{"per_sequence_alpha", result.thresholds.per_sequence_alpha},
                 {"uniformity_p_min", result.thresholds.uniformity_p_min},
                 {"success_rate_min", result.thresholds.success_rate_min}}},
               {"tests", tests}};
  return j.dump(2) + "\n";
}

std::string variation_ensemble_to_json(const VariationEnsembleResult& result,
                                       const std::string& config_digest) {
  json instances = json::array();
  for (const auto& inst : result.instances) {
    instances.push_back(json{{"instance_seed", inst.instance_seed},
                             {"ok", inst.ok},
                             {"shannon_per_bit", inst.entropy.shannon_per_bit},
                             {"min_per_bit", inst.entropy.min_per_bit},
                             {"error", inst.error}});
  }
  const json j{{"instances", instances},
               {"config_digest", config_digest},
               {"shannon_per_bit", summary_to_json(result.shannon_per_bit)},
               {"min_per_bit", summary_to_json(result.min_per_bit)}};
  return j.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  auto out = open_out(path);
  out << content;
  if (!out) throw ConfigError("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace spintrng
