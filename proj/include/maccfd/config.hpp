#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "maccfd/baselines.hpp"
#include "maccfd/channel.hpp"
#include "maccfd/ppso.hpp"

namespace maccfd {

enum class Scheme : int { MaPpso = 0, MaApo = 1, As = 2, Fpa = 3, Brute = 4 };

const char* to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

struct SchemeMode {
  Scheme scheme = Scheme::MaPpso;
  Mode mode = Mode::Ccfd;
  bool operator==(const SchemeMode&) const = default;
};

enum class SweepVariable : int { None = 0, RegionSize = 1, NumSiPaths = 2, NumSoiPaths = 3 };

const char* to_string(SweepVariable v);
SweepVariable sweep_variable_from_string(const std::string& s);

struct SweepConfig {
  SweepVariable variable = SweepVariable::None;
  std::vector<double> values;  // strictly increasing; empty iff variable == None
  bool operator==(const SweepConfig&) const = default;
};

struct ApoConfig {
  double grid_spacing = 0.01;  // lambda/100
  int max_rounds = 20;
  double tol = 1e-6;
  bool operator==(const ApoConfig&) const = default;
};

struct AntennaSelectionConfig {
  double spacing = 0.5;  // lambda/2 lattice
  int max_rounds = 20;
  double tol = 1e-6;
  bool operator==(const AntennaSelectionConfig&) const = default;
};

struct BruteConfig {
  int points_per_axis = 5;
  bool operator==(const BruteConfig&) const = default;
};

struct NormalizedErrorConfig {
  bool enabled = false;
  int reference_runs = 10;  // bundle size R used to pin the reference value
  bool operator==(const NormalizedErrorConfig&) const = default;
};

/// Full description of one experiment: physical parameters, optimizer
/// settings, the scheme/mode grid, the sweep axis, and Monte-Carlo scope.
struct ScenarioConfig {
  SystemParams system;
  PpsoConfig ppso;  // region_size_d and seed are overwritten per cell by the harness
  ApoConfig apo;
  AntennaSelectionConfig antenna_selection;
  BruteConfig brute;
  std::vector<SchemeMode> schemes;
  SweepConfig sweep;
  int num_realizations = 50;
  std::uint64_t master_seed = 1;
  std::string output_dir = "out";
  bool record_trace = false;
  NormalizedErrorConfig normalized_error;

  void validate() const;  // throws std::invalid_argument with the offending field
  bool operator==(const ScenarioConfig&) const = default;
};

/// Parse a JSON config document. Unknown keys are rejected by name; linear
/// power/loss fields accept decibel spellings (`transmit_power_dbm`,
/// `noise_power_dbm`, `si_loss_db`, `soi_pathloss_db`) as alternatives.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

/// Serialize to the canonical JSON form (linear spellings only). Guarantees
/// parse_config(serialize_config(c)) == c bit-for-bit.
std::string serialize_config(const ScenarioConfig& config);
void save_config(const ScenarioConfig& config, const std::string& path);

}  // namespace maccfd
