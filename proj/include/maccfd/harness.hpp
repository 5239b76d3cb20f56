#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "maccfd/config.hpp"
#include "maccfd/csv.hpp"
#include "maccfd/system.hpp"

namespace maccfd {

/// Seed for the channel realization of one (sweep-point, realization) cell.
/// Two-stage mixed counter stream: injective over any practical index range
/// and independent of scheme, so every scheme in a cell shares one channel.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t sweep_index,
                          std::uint64_t realization_index);

struct ResultRow {
  double sweep_value = 0.0;
  Scheme scheme = Scheme::MaPpso;
  Mode mode = Mode::Ccfd;
  int realization = 0;
  double fitness = 0.0;
  LinkGains gains;  // at the optimized layout
  std::uint64_t evaluations = 0;
  std::uint64_t seed = 0;       // channel seed of the cell
  double wall_time_s = 0.0;     // informational only; excluded from all outputs
};

struct TraceRow {
  double sweep_value = 0.0;
  Mode mode = Mode::Ccfd;
  int realization = 0;
  std::vector<double> global_best;  // K+1 entries
};

struct ErrorRow {
  double sweep_value = 0.0;
  Mode mode = Mode::Ccfd;
  int realization = 0;
  double f_star = 0.0;                // reference-bundle optimum
  std::vector<double> running_error;  // cumulative metric after 0..K iterations
};

struct AggregateRow {
  double sweep_value = 0.0;
  Scheme scheme = Scheme::MaPpso;
  Mode mode = Mode::Ccfd;
  int n = 0;
  double mean_fitness = 0.0;
  double stderr_fitness = 0.0;  // sample standard error; 0 when n == 1
  LinkGains mean_gains;
  double mean_evaluations = 0.0;
};

struct ExperimentResult {
  ScenarioConfig config;
  std::string sweep_var;  // sweep-variable label used in every CSV row
  std::vector<ResultRow> rows;              // sorted by (sweep_value, scheme, mode, realization)
  std::vector<AggregateRow> aggregates;     // same order, collapsed over realizations
  std::vector<TraceRow> traces;             // MA-PPSO only, when record_trace
  std::vector<ErrorRow> errors;             // MA-PPSO only, when normalized_error.enabled
};

struct MeanStderr {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  int n = 0;
};
MeanStderr mean_stderr(const std::vector<double>& values);

/// Execute the scenario: every (sweep-point, realization) cell samples one
/// channel realization and runs every configured scheme/mode on it. Cells
/// may run concurrently (`workers`; 0 = hardware concurrency); outputs are
/// deterministically ordered and byte-identical for any worker count.
ExperimentResult run_experiment(const ScenarioConfig& config, int workers = 0);

CsvTable results_table(const ExperimentResult& result);
CsvTable aggregates_table(const ExperimentResult& result);
CsvTable trace_table(const ExperimentResult& result);
CsvTable trace_aggregates_table(const ExperimentResult& result);
CsvTable error_table(const ExperimentResult& result);
CsvTable error_aggregates_table(const ExperimentResult& result);

/// Write the long-format CSV to `path` and the aggregates to the sibling
/// `<stem>_agg.csv`.
void emit_csv(const ExperimentResult& result, const std::string& path);

/// Write the full output set under `output_dir`: results.csv,
/// results_agg.csv, the resolved config.json, and (when recorded)
/// trace[_agg].csv and error[_agg].csv.
void write_outputs(const ExperimentResult& result, const std::string& output_dir);

}  // namespace maccfd
