#include "maccfd/cli.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "maccfd/config.hpp"
#include "maccfd/harness.hpp"
#include "maccfd/plot.hpp"

namespace maccfd {

namespace {

struct RunFlags {
  std::string config_path;
  std::uint64_t seed = 0;
  int realizations = 0;
  int workers = 0;  // 0 = hardware concurrency
  std::string output_dir;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* realizations_opt = nullptr;
  CLI::Option* output_opt = nullptr;
};

void add_run_flags(CLI::App* cmd, RunFlags& flags) {
  cmd->add_option("config", flags.config_path, "Scenario config file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  flags.seed_opt = cmd->add_option("--seed", flags.seed, "Override master_seed");
  flags.realizations_opt =
      cmd->add_option("--realizations", flags.realizations, "Override num_realizations")
          ->check(CLI::PositiveNumber);
  cmd->add_option("--workers", flags.workers, "Worker threads (0 = hardware concurrency)")
      ->check(CLI::NonNegativeNumber);
  flags.output_opt = cmd->add_option("--output-dir", flags.output_dir, "Override output_dir");
}

ScenarioConfig load_with_overrides(const RunFlags& flags) {
  ScenarioConfig config = load_config(flags.config_path);
  if (flags.seed_opt->count() > 0) config.master_seed = flags.seed;
  if (flags.realizations_opt->count() > 0) config.num_realizations = flags.realizations;
  if (flags.output_opt->count() > 0) config.output_dir = flags.output_dir;
  config.validate();
  return config;
}

int do_run(const RunFlags& flags) {
  const ScenarioConfig config = load_with_overrides(flags);
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentResult result = run_experiment(config, flags.workers);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_outputs(result, config.output_dir);
  std::cout << "wrote " << result.rows.size() << " result rows ("
            << config.schemes.size() << " scheme/mode pairs x " << config.num_realizations
            << " realizations) to " << config.output_dir << "\n";
  std::cerr << "elapsed: " << elapsed << " s\n";
  return 0;
}

int do_validate(const std::string& path) {
  const ScenarioConfig config = load_config(path);
  std::cout << path << ": ok (" << config.schemes.size() << " scheme/mode pairs, "
            << config.num_realizations << " realizations, sweep "
            << to_string(config.sweep.variable) << ")\n";
  return 0;
}

int do_oracle(const RunFlags& flags) {
  ScenarioConfig config = load_with_overrides(flags);
  config.schemes = {SchemeMode{Scheme::Brute, Mode::Ccfd}};
  config.record_trace = false;
  config.normalized_error.enabled = false;
  const ExperimentResult result = run_experiment(config, flags.workers);
  const std::filesystem::path dir(config.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory: " + config.output_dir);
  emit_csv(result, (dir / "oracle.csv").string());
  std::cout << "wrote " << result.rows.size() << " exhaustive-search rows to "
            << (dir / "oracle.csv").string() << "\n";
  return 0;
}

int do_plot(const std::string& csv_path, const std::string& kind, const std::string& out_path) {
  emit_plot(csv_path, plot_kind_from_string(kind), out_path);
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"movable-antenna full-duplex link simulator"};
  app.require_subcommand(1);

  RunFlags run_flags;
  CLI::App* run_cmd = app.add_subcommand("run", "Execute a scenario and write its outputs");
  add_run_flags(run_cmd, run_flags);

  std::string validate_path;
  CLI::App* validate_cmd = app.add_subcommand("validate", "Parse and schema-check a config");
  validate_cmd->add_option("config", validate_path, "Scenario config file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);

  RunFlags oracle_flags;
  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "Exhaustive-search reference run on the config's grid");
  add_run_flags(oracle_cmd, oracle_flags);

  std::string plot_csv, plot_kind, plot_out;
  CLI::App* plot_cmd = app.add_subcommand("plot", "Render an aggregate CSV to SVG");
  plot_cmd->add_option("agg-csv", plot_csv, "Aggregate CSV file")
      ->required()
      ->check(CLI::ExistingFile);
  plot_cmd->add_option("--kind", plot_kind, "convergence|error|gain_vs_d|rate_vs_d|rate_vs_paths")
      ->required()
      ->check(CLI::IsMember(
          {"convergence", "error", "gain_vs_d", "rate_vs_d", "rate_vs_paths"}));
  plot_cmd->add_option("-o,--output", plot_out, "Output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    std::cerr << "run '" << (argc > 0 ? argv[0] : "maccfd") << " --help' for usage\n";
    return 2;
  }

  try {
    if (run_cmd->parsed()) return do_run(run_flags);
    if (validate_cmd->parsed()) return do_validate(validate_path);
    if (oracle_cmd->parsed()) return do_oracle(oracle_flags);
    if (plot_cmd->parsed()) return do_plot(plot_csv, plot_kind, plot_out);
    std::cerr << "usage error: missing subcommand\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace maccfd
