#include "maccfd/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace maccfd {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw std::invalid_argument(message); }

/// Wraps one JSON object and tracks which keys were consumed, so unknown or
/// misspelled keys are reported by their full dotted path instead of being
/// silently ignored.
class ObjectReader {
 public:
  ObjectReader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) fail(path_ + " must be an object");
  }

  ~ObjectReader() = default;

  bool has(const std::string& key) const { return node_.contains(key); }

  const json& at(const std::string& key) {
    consumed_.push_back(key);
    return node_.at(key);
  }

  template <typename T>
  void get_to(const std::string& key, T& out) {
    if (!has(key)) return;
    read(at(key), key, out);
  }

  void finish() {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      bool known = false;
      for (const auto& k : consumed_) {
        if (k == it.key()) {
          known = true;
          break;
        }
      }
      if (!known) fail("unknown key: " + path_ + "." + it.key());
    }
  }

  const std::string& path() const { return path_; }

 private:
  template <typename T>
  void read(const json& value, const std::string& key, T& out) {
    try {
      value.get_to(out);
    } catch (const json::exception&) {
      fail("bad value for " + path_ + "." + key);
    }
  }

  const json& node_;
  std::string path_;
  std::vector<std::string> consumed_;
};

void read_system(const json& node, SystemParams& out) {
  ObjectReader r(node, "system");
  if (r.has("transmit_power_mw") && r.has("transmit_power_dbm"))
    fail("system: give transmit power as mw or dbm, not both");
  if (r.has("noise_power_mw") && r.has("noise_power_dbm"))
    fail("system: give noise power as mw or dbm, not both");
  if (r.has("si_loss_rho") && r.has("si_loss_db"))
    fail("system: give SI loss as rho or db, not both");
  if (r.has("soi_pathloss_beta") && r.has("soi_pathloss_db"))
    fail("system: give SoI path loss as beta or db, not both");

  r.get_to("transmit_power_mw", out.transmit_power);
  if (r.has("transmit_power_dbm")) out.transmit_power = dbm_to_mw(r.at("transmit_power_dbm").get<double>());
  r.get_to("noise_power_mw", out.noise_power);
  if (r.has("noise_power_dbm")) out.noise_power = dbm_to_mw(r.at("noise_power_dbm").get<double>());
  r.get_to("region_size_d", out.region_size_d);
  r.get_to("si_loss_rho", out.si_loss_rho);
  if (r.has("si_loss_db")) out.si_loss_rho = db_to_linear(r.at("si_loss_db").get<double>());
  r.get_to("soi_pathloss_beta", out.soi_pathloss_beta);
  if (r.has("soi_pathloss_db")) out.soi_pathloss_beta = db_to_linear(r.at("soi_pathloss_db").get<double>());
  r.get_to("pathloss_exponent_alpha", out.pathloss_exponent_alpha);
  r.get_to("distance_d_pq", out.distance_d_pq);
  r.get_to("num_si_paths", out.num_si_paths);
  r.get_to("num_soi_paths", out.num_soi_paths);
  r.finish();
}

void read_ppso(const json& node, PpsoConfig& out) {
  ObjectReader r(node, "ppso");
  r.get_to("num_particles", out.num_particles);
  r.get_to("num_iterations", out.num_iterations);
  r.get_to("c1", out.c1);
  r.get_to("c2", out.c2);
  r.get_to("omega_min", out.omega_min);
  r.get_to("omega_max", out.omega_max);
  r.finish();
}

void read_apo(const json& node, ApoConfig& out) {
  ObjectReader r(node, "apo");
  r.get_to("grid_spacing", out.grid_spacing);
  r.get_to("max_rounds", out.max_rounds);
  r.get_to("tol", out.tol);
  r.finish();
}

void read_as(const json& node, AntennaSelectionConfig& out) {
  ObjectReader r(node, "antenna_selection");
  r.get_to("spacing", out.spacing);
  r.get_to("max_rounds", out.max_rounds);
  r.get_to("tol", out.tol);
  r.finish();
}

void read_brute(const json& node, BruteConfig& out) {
  ObjectReader r(node, "brute");
  r.get_to("points_per_axis", out.points_per_axis);
  r.finish();
}

void read_sweep(const json& node, SweepConfig& out) {
  ObjectReader r(node, "sweep");
  if (r.has("variable")) out.variable = sweep_variable_from_string(r.at("variable").get<std::string>());
  r.get_to("values", out.values);
  r.finish();
}

void read_normalized_error(const json& node, NormalizedErrorConfig& out) {
  ObjectReader r(node, "normalized_error");
  r.get_to("enabled", out.enabled);
  r.get_to("reference_runs", out.reference_runs);
  r.finish();
}

void read_schemes(const json& node, std::vector<SchemeMode>& out) {
  if (!node.is_array()) fail("schemes must be an array");
  out.clear();
  for (std::size_t i = 0; i < node.size(); ++i) {
    ObjectReader r(node[i], "schemes[" + std::to_string(i) + "]");
    SchemeMode sm;
    if (!r.has("scheme")) fail(r.path() + ": missing scheme");
    sm.scheme = scheme_from_string(r.at("scheme").get<std::string>());
    if (r.has("mode")) sm.mode = mode_from_string(r.at("mode").get<std::string>());
    r.finish();
    out.push_back(sm);
  }
}

}  // namespace

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::MaPpso: return "MA-PPSO";
    case Scheme::MaApo: return "MA-APO";
    case Scheme::As: return "AS";
    case Scheme::Fpa: return "FPA";
    case Scheme::Brute: return "BRUTE";
  }
  throw std::invalid_argument("unknown scheme");
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "MA-PPSO") return Scheme::MaPpso;
  if (s == "MA-APO") return Scheme::MaApo;
  if (s == "AS") return Scheme::As;
  if (s == "FPA") return Scheme::Fpa;
  if (s == "BRUTE") return Scheme::Brute;
  throw std::invalid_argument("unknown scheme: " + s);
}

const char* to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::None: return "none";
    case SweepVariable::RegionSize: return "region_size";
    case SweepVariable::NumSiPaths: return "num_si_paths";
    case SweepVariable::NumSoiPaths: return "num_soi_paths";
  }
  throw std::invalid_argument("unknown sweep variable");
}

SweepVariable sweep_variable_from_string(const std::string& s) {
  if (s == "none") return SweepVariable::None;
  if (s == "region_size") return SweepVariable::RegionSize;
  if (s == "num_si_paths") return SweepVariable::NumSiPaths;
  if (s == "num_soi_paths") return SweepVariable::NumSoiPaths;
  throw std::invalid_argument("unknown sweep variable: " + s);
}

void ScenarioConfig::validate() const {
  system.validate();
  PpsoConfig effective_ppso = ppso;
  effective_ppso.region_size_d = system.region_size_d;  // harness override point
  effective_ppso.validate();
  if (!(apo.grid_spacing > 0.0)) fail("apo.grid_spacing must be positive");
  if (apo.max_rounds < 1) fail("apo.max_rounds must be at least 1");
  if (!(apo.tol >= 0.0)) fail("apo.tol must be non-negative");
  if (!(antenna_selection.spacing > 0.0)) fail("antenna_selection.spacing must be positive");
  if (antenna_selection.max_rounds < 1) fail("antenna_selection.max_rounds must be at least 1");
  if (!(antenna_selection.tol >= 0.0)) fail("antenna_selection.tol must be non-negative");
  if (brute.points_per_axis < 1) fail("brute.points_per_axis must be at least 1");
  if (schemes.empty()) fail("schemes must be non-empty");
  if (num_realizations < 1) fail("num_realizations must be at least 1");
  if (output_dir.empty()) fail("output_dir must be non-empty");
  if (normalized_error.reference_runs < 1) fail("normalized_error.reference_runs must be at least 1");

  if (sweep.variable == SweepVariable::None) {
    if (!sweep.values.empty()) fail("sweep.values must be empty when sweep.variable is none");
  } else {
    if (sweep.values.empty()) fail("sweep.values must be non-empty for an active sweep");
    for (std::size_t i = 0; i + 1 < sweep.values.size(); ++i) {
      if (!(sweep.values[i] < sweep.values[i + 1])) fail("sweep.values must be strictly increasing");
    }
    for (double v : sweep.values) {
      if (sweep.variable == SweepVariable::RegionSize) {
        if (!(v > 0.0)) fail("region_size sweep values must be positive");
      } else {
        if (!(v >= 1.0) || v != std::floor(v)) fail("path-count sweep values must be positive integers");
      }
    }
  }
}

ScenarioConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }

  ScenarioConfig config;
  ObjectReader r(doc, "config");
  if (r.has("system")) read_system(r.at("system"), config.system);
  if (r.has("ppso")) read_ppso(r.at("ppso"), config.ppso);
  if (r.has("apo")) read_apo(r.at("apo"), config.apo);
  if (r.has("antenna_selection")) read_as(r.at("antenna_selection"), config.antenna_selection);
  if (r.has("brute")) read_brute(r.at("brute"), config.brute);
  if (r.has("schemes")) read_schemes(r.at("schemes"), config.schemes);
  if (r.has("sweep")) read_sweep(r.at("sweep"), config.sweep);
  r.get_to("num_realizations", config.num_realizations);
  if (r.has("master_seed")) {
    const json& seed = r.at("master_seed");
    if (!seed.is_number_unsigned()) fail("master_seed must be a non-negative integer");
    config.master_seed = seed.get<std::uint64_t>();
  }
  r.get_to("output_dir", config.output_dir);
  r.get_to("record_trace", config.record_trace);
  if (r.has("normalized_error")) read_normalized_error(r.at("normalized_error"), config.normalized_error);
  r.finish();

  config.validate();
  return config;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_config(buffer.str());
  } catch (const std::invalid_argument& e) {
    fail(path + ": " + e.what());
  }
}

std::string serialize_config(const ScenarioConfig& config) {
  json doc;
  doc["system"] = {
      {"transmit_power_mw", config.system.transmit_power},
      {"noise_power_mw", config.system.noise_power},
      {"region_size_d", config.system.region_size_d},
      {"si_loss_rho", config.system.si_loss_rho},
      {"soi_pathloss_beta", config.system.soi_pathloss_beta},
      {"pathloss_exponent_alpha", config.system.pathloss_exponent_alpha},
      {"distance_d_pq", config.system.distance_d_pq},
      {"num_si_paths", config.system.num_si_paths},
      {"num_soi_paths", config.system.num_soi_paths},
  };
  doc["ppso"] = {
      {"num_particles", config.ppso.num_particles},
      {"num_iterations", config.ppso.num_iterations},
      {"c1", config.ppso.c1},
      {"c2", config.ppso.c2},
      {"omega_min", config.ppso.omega_min},
      {"omega_max", config.ppso.omega_max},
  };
  doc["apo"] = {
      {"grid_spacing", config.apo.grid_spacing},
      {"max_rounds", config.apo.max_rounds},
      {"tol", config.apo.tol},
  };
  doc["antenna_selection"] = {
      {"spacing", config.antenna_selection.spacing},
      {"max_rounds", config.antenna_selection.max_rounds},
      {"tol", config.antenna_selection.tol},
  };
  doc["brute"] = {{"points_per_axis", config.brute.points_per_axis}};
  doc["schemes"] = json::array();
  for (const SchemeMode& sm : config.schemes) {
    doc["schemes"].push_back({{"scheme", to_string(sm.scheme)}, {"mode", to_string(sm.mode)}});
  }
  doc["sweep"] = {{"variable", to_string(config.sweep.variable)}, {"values", config.sweep.values}};
  doc["num_realizations"] = config.num_realizations;
  doc["master_seed"] = config.master_seed;
  doc["output_dir"] = config.output_dir;
  doc["record_trace"] = config.record_trace;
  doc["normalized_error"] = {
      {"enabled", config.normalized_error.enabled},
      {"reference_runs", config.normalized_error.reference_runs},
  };
  return doc.dump(2) + "\n";
}

void save_config(const ScenarioConfig& config, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write config file: " + path);
  out << serialize_config(config);
  if (!out) fail("failed writing config file: " + path);
}

}  // namespace maccfd
