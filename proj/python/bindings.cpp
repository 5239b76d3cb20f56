#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <memory>
#include <string>

#include "maccfd/baselines.hpp"
#include "maccfd/channel.hpp"
#include "maccfd/config.hpp"
#include "maccfd/csv.hpp"
#include "maccfd/harness.hpp"
#include "maccfd/plot.hpp"
#include "maccfd/ppso.hpp"
#include "maccfd/rng.hpp"
#include "maccfd/system.hpp"

namespace py = pybind11;

namespace {

using namespace maccfd;

PpsoConfig resolved_ppso(const ChannelRealization&, const SystemParams& params, PpsoConfig cfg) {
  cfg.region_size_d = params.region_size_d;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Simulator and optimizer for a movable-antenna full-duplex link";
  m.attr("__version__") = "1.0.0";

  py::class_<Position>(m, "Position")
      .def(py::init<>())
      .def(py::init([](double x, double y) { return Position{x, y}; }), py::arg("x"), py::arg("y"))
      .def_readwrite("x", &Position::x)
      .def_readwrite("y", &Position::y)
      .def("__repr__", [](const Position& p) {
        return "Position(x=" + format_double(p.x) + ", y=" + format_double(p.y) + ")";
      });

  py::class_<AntennaLayout>(m, "AntennaLayout")
      .def(py::init<>())
      .def_readwrite("t_a", &AntennaLayout::t_a)
      .def_readwrite("r_a", &AntennaLayout::r_a)
      .def_readwrite("t_b", &AntennaLayout::t_b)
      .def_readwrite("r_b", &AntennaLayout::r_b)
      .def("to_vector", &AntennaLayout::to_vector)
      .def_static("from_vector", &AntennaLayout::from_vector, py::arg("u"));

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init<>())
      .def_readwrite("transmit_power", &SystemParams::transmit_power)
      .def_readwrite("noise_power", &SystemParams::noise_power)
      .def_readwrite("region_size_d", &SystemParams::region_size_d)
      .def_readwrite("si_loss_rho", &SystemParams::si_loss_rho)
      .def_readwrite("soi_pathloss_beta", &SystemParams::soi_pathloss_beta)
      .def_readwrite("pathloss_exponent_alpha", &SystemParams::pathloss_exponent_alpha)
      .def_readwrite("distance_d_pq", &SystemParams::distance_d_pq)
      .def_readwrite("num_si_paths", &SystemParams::num_si_paths)
      .def_readwrite("num_soi_paths", &SystemParams::num_soi_paths)
      .def("si_path_variance", &SystemParams::si_path_variance)
      .def("soi_path_variance", &SystemParams::soi_path_variance)
      .def("validate", &SystemParams::validate);

  py::class_<PpsoConfig>(m, "PpsoConfig")
      .def(py::init<>())
      .def_readwrite("num_particles", &PpsoConfig::num_particles)
      .def_readwrite("num_iterations", &PpsoConfig::num_iterations)
      .def_readwrite("c1", &PpsoConfig::c1)
      .def_readwrite("c2", &PpsoConfig::c2)
      .def_readwrite("omega_min", &PpsoConfig::omega_min)
      .def_readwrite("omega_max", &PpsoConfig::omega_max)
      .def_readwrite("region_size_d", &PpsoConfig::region_size_d)
      .def_readwrite("seed", &PpsoConfig::seed)
      .def("validate", &PpsoConfig::validate);

  py::class_<LinkGains>(m, "LinkGains")
      .def_readonly("si_aa", &LinkGains::si_aa)
      .def_readonly("si_bb", &LinkGains::si_bb)
      .def_readonly("soi_ab", &LinkGains::soi_ab)
      .def_readonly("soi_ba", &LinkGains::soi_ba);

  py::class_<ChannelRealization>(m, "ChannelRealization")
      .def_readonly("seed", &ChannelRealization::seed)
      .def("__eq__", [](const ChannelRealization& a, const ChannelRealization& b) { return a == b; });

  py::class_<FitnessTrace>(m, "FitnessTrace")
      .def_readonly("global_best", &FitnessTrace::global_best)
      .def_readonly("evaluation_count", &FitnessTrace::evaluation_count);

  py::class_<PpsoResult>(m, "PpsoResult")
      .def_readonly("best_layout", &PpsoResult::best_layout)
      .def_readonly("best_fitness", &PpsoResult::best_fitness)
      .def_readonly("trace", &PpsoResult::trace);

  py::enum_<Mode>(m, "Mode").value("CCFD", Mode::Ccfd).value("HD", Mode::Hd);

  py::class_<BaselineResult>(m, "BaselineResult")
      .def_readonly("layout", &BaselineResult::layout)
      .def_readonly("fitness", &BaselineResult::fitness)
      .def_readonly("iterations_used", &BaselineResult::iterations_used)
      .def_readonly("evaluations", &BaselineResult::evaluations)
      .def_readonly("round_fitness", &BaselineResult::round_fitness);

  m.def("sample_geometry", &sample_geometry, py::arg("seed"), py::arg("params"),
        "Draw one channel realization from a 64-bit seed.");
  m.def("min_rate_fitness", &min_rate_fitness, py::arg("layout"), py::arg("chan"), py::arg("params"),
        "Full-duplex min achievable rate at a layout.");
  m.def("hd_min_rate_fitness", &hd_min_rate_fitness, py::arg("layout"), py::arg("chan"),
        py::arg("params"), "Half-duplex min achievable rate at a layout.");
  m.def(
      "link_gains",
      [](const AntennaLayout& layout, const ChannelRealization& chan) {
        return link_gains(layout, chan);
      },
      py::arg("layout"), py::arg("chan"), "Squared channel magnitudes of the four links.");
  m.def("derive_seed", &derive_seed, py::arg("master_seed"), py::arg("sweep_index"),
        py::arg("realization_index"));
  m.def(
      "substream_seed", [](std::uint64_t seed, std::uint64_t tag) { return substream_seed(seed, tag); },
      py::arg("seed"), py::arg("tag"));

  m.def(
      "run_ppso",
      [](const ChannelRealization& chan, const SystemParams& params, const PpsoConfig& cfg,
         Mode mode) {
        RateEvaluator evaluator(chan, params);
        return run_ppso(mode_adapter(evaluator, mode), resolved_ppso(chan, params, cfg));
      },
      py::arg("chan"), py::arg("params"), py::arg("config"), py::arg("mode") = Mode::Ccfd,
      "Swarm-optimize the four antenna positions on one realization.");

  m.def(
      "run_apo",
      [](const ChannelRealization& chan, const SystemParams& params, double grid_spacing,
         int max_rounds, double tol, Mode mode) {
        RateEvaluator evaluator(chan, params);
        return run_apo(mode_adapter(evaluator, mode), GridSpec{grid_spacing, params.region_size_d},
                       max_rounds, tol);
      },
      py::arg("chan"), py::arg("params"), py::arg("grid_spacing") = 0.01, py::arg("max_rounds") = 20,
      py::arg("tol") = 1e-6, py::arg("mode") = Mode::Ccfd,
      "Alternating per-antenna grid search on one realization.");

  m.def(
      "run_antenna_selection",
      [](const ChannelRealization& chan, const SystemParams& params, double spacing, int max_rounds,
         double tol, Mode mode) {
        RateEvaluator evaluator(chan, params);
        return run_antenna_selection(mode_adapter(evaluator, mode), spacing, params.region_size_d,
                                     max_rounds, tol);
      },
      py::arg("chan"), py::arg("params"), py::arg("spacing") = 0.5, py::arg("max_rounds") = 20,
      py::arg("tol") = 1e-6, py::arg("mode") = Mode::Ccfd,
      "Lattice antenna selection on one realization.");

  m.def(
      "run_fpa",
      [](const ChannelRealization& chan, const SystemParams& params, Mode mode) {
        RateEvaluator evaluator(chan, params);
        return run_fpa(mode_adapter(evaluator, mode));
      },
      py::arg("chan"), py::arg("params"), py::arg("mode") = Mode::Ccfd,
      "Fixed-position reference point.");

  m.def(
      "brute_force",
      [](const ChannelRealization& chan, const SystemParams& params, int points_per_axis, Mode mode) {
        RateEvaluator evaluator(chan, params);
        const double d = params.region_size_d;
        const GridSpec grid = points_per_axis <= 1
                                  ? GridSpec{2.0 * d + 1.0, d}
                                  : GridSpec{d / (points_per_axis - 1), d};
        return brute_force(mode_adapter(evaluator, mode), grid);
      },
      py::arg("chan"), py::arg("params"), py::arg("points_per_axis") = 5, py::arg("mode") = Mode::Ccfd,
      "Exhaustive joint grid search (guarded against blow-up).");

  m.def("normalized_cumulative_error", &normalized_cumulative_error, py::arg("trace"),
        py::arg("f_star"));

  m.def(
      "canonical_config",
      [](const std::string& text) { return serialize_config(parse_config(text)); }, py::arg("text"),
      "Parse a JSON scenario config and return its canonical serialized form.");

  m.def(
      "run_experiment_json",
      [](const std::string& config_text, int workers) {
        const ScenarioConfig config = parse_config(config_text);
        const ExperimentResult result = run_experiment(config, workers);
        py::dict out;
        out["results_csv"] = serialize_csv(results_table(result));
        out["aggregates_csv"] = serialize_csv(aggregates_table(result));
        if (!result.traces.empty()) {
          out["trace_csv"] = serialize_csv(trace_table(result));
          out["trace_aggregates_csv"] = serialize_csv(trace_aggregates_table(result));
        }
        if (!result.errors.empty()) {
          out["error_csv"] = serialize_csv(error_table(result));
          out["error_aggregates_csv"] = serialize_csv(error_aggregates_table(result));
        }
        return out;
      },
      py::arg("config_text"), py::arg("workers") = 0,
      "Run a scenario from JSON text and return its CSV outputs as strings.");

  m.def(
      "render_plot_svg",
      [](const std::string& csv_text, const std::string& kind) {
        return render_plot(parse_csv(csv_text), plot_kind_from_string(kind));
      },
      py::arg("csv_text"), py::arg("kind"), "Render an aggregate CSV (as text) to SVG markup.");
}
