#include "maccfd/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "maccfd/baselines.hpp"
#include "maccfd/channel.hpp"
#include "maccfd/ppso.hpp"
#include "maccfd/rng.hpp"

namespace maccfd {

namespace {

// Substream tags 0..3 are claimed by sample_geometry (one per link); the
// harness derives its optimizer streams from disjoint tags.
constexpr std::uint64_t kPpsoSeedTag = 16;
constexpr std::uint64_t kBundleSeedBase = 32;

struct CellOutput {
  std::vector<ResultRow> rows;
  std::vector<TraceRow> traces;
  std::vector<ErrorRow> errors;
};

SystemParams cell_params(const ScenarioConfig& config, double sweep_value) {
  SystemParams p = config.system;
  switch (config.sweep.variable) {
    case SweepVariable::None: break;
    case SweepVariable::RegionSize: p.region_size_d = sweep_value; break;
    case SweepVariable::NumSiPaths: p.num_si_paths = static_cast<int>(sweep_value); break;
    case SweepVariable::NumSoiPaths: p.num_soi_paths = static_cast<int>(sweep_value); break;
  }
  return p;
}

GridSpec brute_grid(double region_size_d, int points_per_axis) {
  if (points_per_axis <= 1) {
    return GridSpec{2.0 * region_size_d + 1.0, region_size_d};  // degenerates to the origin
  }
  return GridSpec{region_size_d / (points_per_axis - 1), region_size_d};
}

CellOutput run_cell(const ScenarioConfig& config, double sweep_value, int realization_index) {
  const SystemParams params = cell_params(config, sweep_value);
  // The channel depends only on the realization index: every sweep point
  // reuses the same draws (common random numbers), so cross-sweep contrasts
  // carry no sampling noise. The sweep slot of derive_seed stays at 0 here;
  // the mixing over both indices remains available to callers.
  const std::uint64_t channel_seed = derive_seed(config.master_seed, 0,
                                                 static_cast<std::uint64_t>(realization_index));
  const ChannelRealization chan = sample_geometry(channel_seed, params);
  RateEvaluator evaluator(chan, params);

  CellOutput out;
  for (const SchemeMode& sm : config.schemes) {
    evaluator.reset_counters();
    const FitnessFn fitness = mode_adapter(evaluator, sm.mode);

    ResultRow row;
    row.sweep_value = sweep_value;
    row.scheme = sm.scheme;
    row.mode = sm.mode;
    row.realization = realization_index;
    row.seed = channel_seed;

    const auto t0 = std::chrono::steady_clock::now();
    AntennaLayout layout;
    switch (sm.scheme) {
      case Scheme::MaPpso: {
        PpsoConfig pc = config.ppso;
        pc.region_size_d = params.region_size_d;
        pc.seed = substream_seed(channel_seed, kPpsoSeedTag);
        const PpsoResult res = run_ppso(fitness, pc);
        layout = res.best_layout;
        row.fitness = res.best_fitness;
        row.evaluations = res.trace.evaluation_count;
        if (config.record_trace) {
          out.traces.push_back(
              TraceRow{sweep_value, sm.mode, realization_index, res.trace.global_best});
        }
        if (config.normalized_error.enabled) {
          // Reference optimum: best final value over an independent bundle
          // of reruns on this same channel realization.
          double f_star = -std::numeric_limits<double>::infinity();
          for (int j = 0; j < config.normalized_error.reference_runs; ++j) {
            PpsoConfig bc = pc;
            bc.seed = substream_seed(channel_seed, kBundleSeedBase + static_cast<std::uint64_t>(j));
            f_star = std::max(f_star, run_ppso(fitness, bc).best_fitness);
          }
          if (!(f_star > 0.0)) {
            throw std::runtime_error("reference bundle produced a nonpositive optimum");
          }
          ErrorRow er{sweep_value, sm.mode, realization_index, f_star, {}};
          er.running_error.reserve(res.trace.global_best.size());
          double acc = 0.0;
          for (std::size_t k = 0; k < res.trace.global_best.size(); ++k) {
            acc += std::abs(f_star - res.trace.global_best[k]);
            er.running_error.push_back(acc / (static_cast<double>(k + 1) * f_star));
          }
          out.errors.push_back(std::move(er));
        }
        break;
      }
      case Scheme::MaApo: {
        const BaselineResult res = run_apo(fitness, GridSpec{config.apo.grid_spacing, params.region_size_d},
                                           config.apo.max_rounds, config.apo.tol);
        layout = res.layout;
        row.fitness = res.fitness;
        row.evaluations = res.evaluations;
        break;
      }
      case Scheme::As: {
        const BaselineResult res =
            run_antenna_selection(fitness, config.antenna_selection.spacing, params.region_size_d,
                                  config.antenna_selection.max_rounds, config.antenna_selection.tol);
        layout = res.layout;
        row.fitness = res.fitness;
        row.evaluations = res.evaluations;
        break;
      }
      case Scheme::Fpa: {
        const BaselineResult res = run_fpa(fitness);
        layout = res.layout;
        row.fitness = res.fitness;
        row.evaluations = res.evaluations;
        break;
      }
      case Scheme::Brute: {
        const BaselineResult res =
            brute_force(fitness, brute_grid(params.region_size_d, config.brute.points_per_axis));
        layout = res.layout;
        row.fitness = res.fitness;
        row.evaluations = res.evaluations;
        break;
      }
    }
    row.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    row.gains = evaluator.gains(layout);
    out.rows.push_back(row);
  }
  return out;
}

std::tuple<double, std::string, std::string, int> row_key(const ResultRow& r) {
  return {r.sweep_value, to_string(r.scheme), to_string(r.mode), r.realization};
}

std::tuple<double, std::string, int> series_key(double sweep_value, Mode mode, int realization) {
  return {sweep_value, to_string(mode), realization};
}

/// Aggregate per-iteration series (traces or running errors) over
/// realizations, grouped by (sweep_value, mode).
CsvTable series_aggregates(const std::string& sweep_var,
                           const std::vector<std::tuple<double, Mode, std::vector<double>>>& series,
                           const std::vector<std::string>& value_columns) {
  CsvTable t;
  t.columns = {"sweep_var", "sweep_value", "mode", "iteration", "n"};
  for (const auto& c : value_columns) t.columns.push_back(c);

  std::size_t i = 0;
  while (i < series.size()) {
    const double sweep_value = std::get<0>(series[i]);
    const Mode mode = std::get<1>(series[i]);
    std::size_t j = i;
    while (j < series.size() && std::get<0>(series[j]) == sweep_value && std::get<1>(series[j]) == mode) {
      ++j;
    }
    const std::size_t len = std::get<2>(series[i]).size();
    for (std::size_t g = i; g < j; ++g) {
      if (std::get<2>(series[g]).size() != len) {
        throw std::runtime_error("per-iteration series lengths differ within one group");
      }
    }
    std::vector<double> column(j - i);
    for (std::size_t k = 0; k < len; ++k) {
      for (std::size_t g = i; g < j; ++g) column[g - i] = std::get<2>(series[g])[k];
      const MeanStderr ms = mean_stderr(column);
      t.rows.push_back({sweep_var, format_double(sweep_value), to_string(mode), std::to_string(k),
                        std::to_string(ms.n), format_double(ms.mean), format_double(ms.stderr_of_mean)});
    }
    i = j;
  }
  return t;
}

void write_table(const CsvTable& table, const std::filesystem::path& path) {
  write_csv(table, path.string());
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t sweep_index,
                          std::uint64_t realization_index) {
  // Two chained Weyl-increment mixes: equivalent to seeding a substream with
  // the sweep index, then drawing the realization substream from it.
  return mix64(mix64(master_seed + kGolden64 * (sweep_index + 1)) +
               kGolden64 * (realization_index + 1));
}

MeanStderr mean_stderr(const std::vector<double>& values) {
  MeanStderr out;
  out.n = static_cast<int>(values.size());
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    const double sample_var = ss / static_cast<double>(values.size() - 1);
    out.stderr_of_mean = std::sqrt(sample_var / static_cast<double>(values.size()));
  }
  return out;
}

ExperimentResult run_experiment(const ScenarioConfig& config, int workers) {
  config.validate();

  ExperimentResult result;
  result.config = config;
  result.sweep_var = to_string(config.sweep.variable);

  std::vector<double> sweep_values = config.sweep.values;
  if (config.sweep.variable == SweepVariable::None) sweep_values = {0.0};
  const std::size_t num_realizations = static_cast<std::size_t>(config.num_realizations);
  const std::size_t num_cells = sweep_values.size() * num_realizations;

  std::vector<CellOutput> cells(num_cells);

  std::size_t num_workers = workers > 0 ? static_cast<std::size_t>(workers)
                                        : std::max(1u, std::thread::hardware_concurrency());
  num_workers = std::min(num_workers, num_cells);

  std::atomic<std::size_t> next_cell{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&]() {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t i = next_cell.fetch_add(1);
      if (i >= num_cells) break;
      try {
        const std::size_t s = i / num_realizations;
        const std::size_t r = i % num_realizations;
        cells[i] = run_cell(config, sweep_values[s], static_cast<int>(r));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };

  if (num_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(num_workers);
    for (std::size_t w = 0; w < num_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  // Deterministic reduction: gather in cell order, then normalize by sorting.
  for (const CellOutput& cell : cells) {
    result.rows.insert(result.rows.end(), cell.rows.begin(), cell.rows.end());
    result.traces.insert(result.traces.end(), cell.traces.begin(), cell.traces.end());
    result.errors.insert(result.errors.end(), cell.errors.begin(), cell.errors.end());
  }
  std::stable_sort(result.rows.begin(), result.rows.end(),
                   [](const ResultRow& a, const ResultRow& b) { return row_key(a) < row_key(b); });
  std::stable_sort(result.traces.begin(), result.traces.end(), [](const TraceRow& a, const TraceRow& b) {
    return series_key(a.sweep_value, a.mode, a.realization) <
           series_key(b.sweep_value, b.mode, b.realization);
  });
  std::stable_sort(result.errors.begin(), result.errors.end(), [](const ErrorRow& a, const ErrorRow& b) {
    return series_key(a.sweep_value, a.mode, a.realization) <
           series_key(b.sweep_value, b.mode, b.realization);
  });

  // Aggregates over realizations per (sweep_value, scheme, mode) group.
  std::size_t i = 0;
  while (i < result.rows.size()) {
    std::size_t j = i;
    while (j < result.rows.size() && result.rows[j].sweep_value == result.rows[i].sweep_value &&
           result.rows[j].scheme == result.rows[i].scheme && result.rows[j].mode == result.rows[i].mode) {
      ++j;
    }
    std::vector<double> fitness, aa, bb, ab, ba, evals;
    for (std::size_t g = i; g < j; ++g) {
      const ResultRow& r = result.rows[g];
      fitness.push_back(r.fitness);
      aa.push_back(r.gains.si_aa);
      bb.push_back(r.gains.si_bb);
      ab.push_back(r.gains.soi_ab);
      ba.push_back(r.gains.soi_ba);
      evals.push_back(static_cast<double>(r.evaluations));
    }
    AggregateRow agg;
    agg.sweep_value = result.rows[i].sweep_value;
    agg.scheme = result.rows[i].scheme;
    agg.mode = result.rows[i].mode;
    const MeanStderr f = mean_stderr(fitness);
    agg.n = f.n;
    agg.mean_fitness = f.mean;
    agg.stderr_fitness = f.stderr_of_mean;
    agg.mean_gains = LinkGains{mean_stderr(aa).mean, mean_stderr(bb).mean, mean_stderr(ab).mean,
                               mean_stderr(ba).mean};
    agg.mean_evaluations = mean_stderr(evals).mean;
    result.aggregates.push_back(agg);
    i = j;
  }
  return result;
}

CsvTable results_table(const ExperimentResult& result) {
  CsvTable t;
  t.columns = {"sweep_var", "sweep_value", "scheme",     "mode",        "realization", "fitness",
               "si_gain_aa", "si_gain_bb",  "soi_gain_ab", "soi_gain_ba", "evaluations", "seed"};
  for (const ResultRow& r : result.rows) {
    t.rows.push_back({result.sweep_var, format_double(r.sweep_value), to_string(r.scheme),
                      to_string(r.mode), std::to_string(r.realization), format_double(r.fitness),
                      format_double(r.gains.si_aa), format_double(r.gains.si_bb),
                      format_double(r.gains.soi_ab), format_double(r.gains.soi_ba),
                      std::to_string(r.evaluations), std::to_string(r.seed)});
  }
  return t;
}

CsvTable aggregates_table(const ExperimentResult& result) {
  CsvTable t;
  t.columns = {"sweep_var",       "sweep_value",      "scheme",           "mode",
               "n",               "mean_fitness",     "stderr_fitness",   "mean_si_gain_aa",
               "mean_si_gain_bb", "mean_soi_gain_ab", "mean_soi_gain_ba", "mean_evaluations"};
  for (const AggregateRow& a : result.aggregates) {
    t.rows.push_back({result.sweep_var, format_double(a.sweep_value), to_string(a.scheme),
                      to_string(a.mode), std::to_string(a.n), format_double(a.mean_fitness),
                      format_double(a.stderr_fitness), format_double(a.mean_gains.si_aa),
                      format_double(a.mean_gains.si_bb), format_double(a.mean_gains.soi_ab),
                      format_double(a.mean_gains.soi_ba), format_double(a.mean_evaluations)});
  }
  return t;
}

CsvTable trace_table(const ExperimentResult& result) {
  CsvTable t;
  t.columns = {"sweep_var", "sweep_value", "mode", "realization", "iteration", "global_best"};
  for (const TraceRow& r : result.traces) {
    for (std::size_t k = 0; k < r.global_best.size(); ++k) {
      t.rows.push_back({result.sweep_var, format_double(r.sweep_value), to_string(r.mode),
                        std::to_string(r.realization), std::to_string(k),
                        format_double(r.global_best[k])});
    }
  }
  return t;
}

CsvTable trace_aggregates_table(const ExperimentResult& result) {
  std::vector<std::tuple<double, Mode, std::vector<double>>> series;
  series.reserve(result.traces.size());
  for (const TraceRow& r : result.traces) series.emplace_back(r.sweep_value, r.mode, r.global_best);
  return series_aggregates(result.sweep_var, series, {"mean_global_best", "stderr_global_best"});
}

CsvTable error_table(const ExperimentResult& result) {
  CsvTable t;
  t.columns = {"sweep_var", "sweep_value", "mode", "realization", "iteration", "f_star", "error"};
  for (const ErrorRow& r : result.errors) {
    for (std::size_t k = 0; k < r.running_error.size(); ++k) {
      t.rows.push_back({result.sweep_var, format_double(r.sweep_value), to_string(r.mode),
                        std::to_string(r.realization), std::to_string(k), format_double(r.f_star),
                        format_double(r.running_error[k])});
    }
  }
  return t;
}

CsvTable error_aggregates_table(const ExperimentResult& result) {
  std::vector<std::tuple<double, Mode, std::vector<double>>> series;
  series.reserve(result.errors.size());
  for (const ErrorRow& r : result.errors) series.emplace_back(r.sweep_value, r.mode, r.running_error);
  return series_aggregates(result.sweep_var, series, {"mean_error", "stderr_error"});
}

void emit_csv(const ExperimentResult& result, const std::string& path) {
  std::filesystem::path p(path);
  std::filesystem::path agg = p;
  agg.replace_filename(p.stem().string() + "_agg" + p.extension().string());
  write_table(results_table(result), p);
  write_table(aggregates_table(result), agg);
}

void write_outputs(const ExperimentResult& result, const std::string& output_dir) {
  const std::filesystem::path dir(output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory: " + output_dir);

  emit_csv(result, (dir / "results.csv").string());
  std::ofstream cfg(dir / "config.json", std::ios::binary);
  if (!cfg) throw std::runtime_error("cannot write " + (dir / "config.json").string());
  cfg << serialize_config(result.config);

  if (!result.traces.empty()) {
    write_table(trace_table(result), dir / "trace.csv");
    write_table(trace_aggregates_table(result), dir / "trace_agg.csv");
  }
  if (!result.errors.empty()) {
    write_table(error_table(result), dir / "error.csv");
    write_table(error_aggregates_table(result), dir / "error_agg.csv");
  }
}

}  // namespace maccfd
