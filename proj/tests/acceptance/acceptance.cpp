// Acceptance gate for the movable-antenna CCFD link optimizer.
//
// Runs ten end-to-end criteria against the library and the shipped CLI and
// prints exactly one [PASS]/[FAIL] line per criterion with the measured
// numbers. Exits nonzero if any criterion fails. Statistical criteria use
// common-random-number pairing (all schemes and sweep points of one
// realization share one channel), so gaps are compared against the standard
// error of the paired differences.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "maccfd/baselines.hpp"
#include "maccfd/channel.hpp"
#include "maccfd/config.hpp"
#include "maccfd/harness.hpp"
#include "maccfd/ppso.hpp"
#include "maccfd/rng.hpp"
#include "maccfd/system.hpp"

#ifndef MACCFD_CLI_PATH
#error "MACCFD_CLI_PATH must point at the command-line binary"
#endif
#ifndef MACCFD_CONFIG_DIR
#error "MACCFD_CONFIG_DIR must point at the shipped config directory"
#endif

namespace {

using namespace maccfd;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// Per-realization values of one (sweep value, scheme, mode) series, ordered
// by realization index.
std::vector<double> series(const ExperimentResult& res, double sweep_value, Scheme scheme, Mode mode,
                           const std::function<double(const ResultRow&)>& get) {
  std::vector<std::pair<int, double>> picked;
  for (const ResultRow& row : res.rows) {
    if (row.scheme == scheme && row.mode == mode && row.sweep_value == sweep_value) {
      picked.emplace_back(row.realization, get(row));
    }
  }
  std::sort(picked.begin(), picked.end());
  std::vector<double> out;
  out.reserve(picked.size());
  for (const auto& [r, v] : picked) out.push_back(v);
  if (out.empty()) throw std::runtime_error("empty series requested from experiment result");
  return out;
}

std::vector<double> fitness_series(const ExperimentResult& res, double sweep_value, Scheme scheme,
                                   Mode mode) {
  return series(res, sweep_value, scheme, mode, [](const ResultRow& r) { return r.fitness; });
}

// Mean and standard error of the element-wise differences a[i] - b[i].
MeanStderr paired_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty()) throw std::runtime_error("paired series length mismatch");
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return mean_stderr(d);
}

double mean_of(const std::vector<double>& v) { return mean_stderr(v).mean; }

ScenarioConfig base_config() {
  ScenarioConfig cfg;           // library defaults mirror the shipped scenario
  cfg.master_seed = 1;
  cfg.num_realizations = 50;
  return cfg;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// Criterion 1: core invariants and properties of the building blocks.
// ---------------------------------------------------------------------------
Outcome criterion1() {
  constexpr double kRelTol = 1e-10;
  int passed = 0, total = 0;
  std::vector<std::string> failures;
  auto record = [&](const char* name, bool ok) {
    ++total;
    if (ok) ++passed;
    else failures.push_back(name);
  };
  SplitMix64 rng(20260819);

  {  // Field-response entries lie on the unit circle.
    bool ok = true;
    for (int trial = 0; trial < 50 && ok; ++trial) {
      Position pos{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
      std::vector<PathAngles> angles;
      const int n = 1 + static_cast<int>(rng.next() % 8);
      for (int l = 0; l < n; ++l) {
        angles.push_back({rng.uniform(-1.57, 1.57), rng.uniform(-1.57, 1.57)});
      }
      for (const cplx& e : field_response(pos, angles)) {
        if (std::abs(std::abs(e) - 1.0) > kRelTol) ok = false;
      }
    }
    record("unit-modulus field response", ok);
  }
  {  // Single-path coefficient magnitude is position-invariant.
    bool ok = true;
    for (int trial = 0; trial < 50 && ok; ++trial) {
      LinkGeometry link;
      link.aods = {{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)}};
      link.aoas = {{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)}};
      const cplx sigma{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
      link.sigma = CMatrix::diagonal({sigma});
      const Position t{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
      const Position r{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
      const double mag = std::abs(channel_coefficient(t, r, link));
      if (std::abs(mag - std::abs(sigma)) > kRelTol * std::max(1.0, std::abs(sigma))) ok = false;
    }
    record("single-path magnitude invariance", ok);
  }
  {  // Projection is idempotent and non-expansive.
    bool ok = true;
    for (int trial = 0; trial < 200 && ok; ++trial) {
      Vec8 v, w;
      for (int i = 0; i < 8; ++i) {
        v[i] = rng.uniform(-3.0, 3.0);
        w[i] = rng.uniform(-3.0, 3.0);
      }
      const Vec8 pv = project(v, 1.0);
      const Vec8 pw = project(w, 1.0);
      if (project(pv, 1.0) != pv) ok = false;
      double d_in = 0.0, d_out = 0.0;
      for (int i = 0; i < 8; ++i) {
        d_in += (v[i] - w[i]) * (v[i] - w[i]);
        d_out += (pv[i] - pw[i]) * (pv[i] - pw[i]);
      }
      if (std::sqrt(d_out) > std::sqrt(d_in) + 1e-12) ok = false;
    }
    record("projection idempotent and non-expansive", ok);
  }
  {  // SINR is invariant under joint scaling of transmit and noise power.
    SystemParams params;
    const ChannelRealization chan = sample_geometry(derive_seed(1, 0, 5), params);
    bool ok = true;
    for (int trial = 0; trial < 20 && ok; ++trial) {
      AntennaLayout layout;
      Vec8 u;
      for (int i = 0; i < 8; ++i) u[i] = rng.uniform(-0.5, 0.5);
      layout = AntennaLayout::from_vector(u);
      const SinrPair g0 = sinr(layout, chan, params);
      for (double c : {1e-3, 1e3}) {
        SystemParams scaled = params;
        scaled.transmit_power *= c;
        scaled.noise_power *= c;
        const SinrPair g1 = sinr(layout, chan, scaled);
        if (std::abs(g1.gamma_a - g0.gamma_a) > kRelTol * g0.gamma_a) ok = false;
        if (std::abs(g1.gamma_b - g0.gamma_b) > kRelTol * g0.gamma_b) ok = false;
      }
    }
    record("sinr joint power/noise scaling invariance", ok);
  }
  SystemParams params;
  const ChannelRealization chan = sample_geometry(derive_seed(1, 0, 7), params);
  RateEvaluator evaluator(chan, params);
  const FitnessFn ccfd = mode_adapter(evaluator, Mode::Ccfd);
  {  // Global-best trace of the swarm never decreases.
    PpsoConfig pc;
    pc.num_particles = 30;
    pc.num_iterations = 40;
    pc.region_size_d = 1.0;
    pc.seed = 123;
    const PpsoResult res = run_ppso(ccfd, pc);
    bool ok = res.trace.global_best.size() == 41;
    for (std::size_t k = 1; k < res.trace.global_best.size(); ++k) {
      if (res.trace.global_best[k] < res.trace.global_best[k - 1]) ok = false;
    }
    record("monotone swarm global-best trace", ok);
  }
  {  // Alternating per-antenna grid descent never worsens between rounds.
    const BaselineResult res = run_apo(ccfd, GridSpec{0.1, 1.0});
    bool ok = !res.round_fitness.empty();
    for (std::size_t k = 1; k < res.round_fitness.size(); ++k) {
      if (res.round_fitness[k] < res.round_fitness[k - 1]) ok = false;
    }
    record("alternating-optimization round monotonicity", ok);
  }
  {  // Half-wavelength selection degenerates to the fixed layout for D < 1/2.
    SystemParams small = params;
    small.region_size_d = 0.4;
    RateEvaluator ev(chan, small);
    const FitnessFn f = mode_adapter(ev, Mode::Ccfd);
    const BaselineResult as = run_antenna_selection(f, 0.5, small.region_size_d);
    const BaselineResult fpa = run_fpa(f);
    record("antenna selection equals fixed layout for D < lambda/2",
           as.fitness == fpa.fitness && as.layout == fpa.layout);
  }
  {  // With the self-interference links zeroed out, full duplex doubles HD.
    ChannelRealization clean = sample_geometry(derive_seed(1, 0, 9), params);
    for (Link l : {Link::AA, Link::BB}) {
      LinkGeometry& geom = clean.links[static_cast<int>(l)];
      geom.sigma = CMatrix::diagonal(std::vector<cplx>(geom.aods.size(), cplx{0.0, 0.0}));
    }
    RateEvaluator ev(clean, params);
    bool ok = true;
    for (int trial = 0; trial < 20 && ok; ++trial) {
      Vec8 u;
      for (int i = 0; i < 8; ++i) u[i] = rng.uniform(-0.5, 0.5);
      const AntennaLayout layout = AntennaLayout::from_vector(u);
      if (ev.ccfd_min_rate(layout) != 2.0 * ev.hd_min_rate(layout)) ok = false;
    }
    record("zero-SI full duplex doubles half duplex exactly", ok);
  }

  Outcome out;
  out.pass = passed == total;
  std::ostringstream ss;
  ss << passed << "/" << total << " property groups hold";
  if (!failures.empty()) {
    ss << "; failing:";
    for (const auto& f : failures) ss << " [" << f << "]";
  }
  out.detail = ss.str();
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 2: swarm optimum vs an exhaustive 5-points-per-axis grid.
// ---------------------------------------------------------------------------
Outcome criterion2() {
  ScenarioConfig cfg = base_config();
  cfg.schemes = {{Scheme::MaPpso, Mode::Ccfd}, {Scheme::Brute, Mode::Ccfd}};
  cfg.brute.points_per_axis = 5;
  cfg.num_realizations = 20;
  const ExperimentResult res = run_experiment(cfg);
  const std::vector<double> swarm = fitness_series(res, 0.0, Scheme::MaPpso, Mode::Ccfd);
  const std::vector<double> grid = fitness_series(res, 0.0, Scheme::Brute, Mode::Ccfd);

  int successes = 0;
  double worst_gap = 0.0;  // positive = swarm below the grid optimum
  for (std::size_t i = 0; i < swarm.size(); ++i) {
    const double gap = grid[i] - swarm[i];
    worst_gap = std::max(worst_gap, gap);
    if (swarm[i] >= grid[i] - 0.05) ++successes;
  }
  Outcome out;
  out.pass = successes >= 18;
  std::ostringstream ss;
  ss << successes << "/20 realizations within 0.05 bits/s/Hz of the exhaustive grid optimum"
     << " (need >= 18); worst shortfall " << fmt(worst_gap);
  out.detail = ss.str();
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 3: convergence shape of the mean global-best trace.
// ---------------------------------------------------------------------------
Outcome criterion3() {
  ScenarioConfig cfg = base_config();
  cfg.schemes = {{Scheme::MaPpso, Mode::Ccfd}};
  cfg.record_trace = true;
  const ExperimentResult res = run_experiment(cfg);
  if (res.traces.size() != 50) throw std::runtime_error("expected one trace per realization");

  double m30 = 0.0, m100 = 0.0;
  for (const TraceRow& t : res.traces) {
    if (t.global_best.size() != 101) throw std::runtime_error("trace must hold K+1 entries");
    m30 += t.global_best[30];
    m100 += t.global_best[100];
  }
  m30 /= static_cast<double>(res.traces.size());
  m100 /= static_cast<double>(res.traces.size());

  Outcome out;
  out.pass = std::abs(m100 - m30) <= 0.02 * m100;
  std::ostringstream ss;
  ss << "mean global best " << fmt(m30) << " at iteration 30 vs " << fmt(m100)
     << " at iteration 100 (deficit " << fmt(100.0 * (m100 - m30) / m100) << "%, allowed 2%)";
  out.detail = ss.str();
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 4: normalized cumulative error against the reference bundle.
// ---------------------------------------------------------------------------
Outcome criterion4() {
  ScenarioConfig cfg = base_config();
  cfg.schemes = {{Scheme::MaPpso, Mode::Ccfd}};
  cfg.num_realizations = 20;
  cfg.record_trace = true;
  cfg.normalized_error.enabled = true;
  cfg.normalized_error.reference_runs = 10;
  const ExperimentResult res = run_experiment(cfg);
  if (res.errors.size() != 20) throw std::runtime_error("expected one error series per realization");

  double mean_final = 0.0;
  for (const ErrorRow& e : res.errors) mean_final += e.running_error.back();
  mean_final /= static_cast<double>(res.errors.size());

  Outcome out;
  out.pass = mean_final >= 0.001 && mean_final <= 0.05;
  std::ostringstream ss;
  ss << "mean normalized cumulative error at the final iteration " << fmt(mean_final)
     << " (required within [0.001, 0.05])";
  out.detail = ss.str();
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 5: optimized SI gain falls and SoI gain rises with region size.
// ---------------------------------------------------------------------------
Outcome criterion5() {
  ScenarioConfig cfg = base_config();
  cfg.schemes = {{Scheme::MaPpso, Mode::Ccfd}};
  cfg.sweep.variable = SweepVariable::RegionSize;
  cfg.sweep.values = {0.25, 0.5, 1.0, 2.0};
  const ExperimentResult res = run_experiment(cfg);

  const auto si_of = [](const ResultRow& r) { return 0.5 * (r.gains.si_aa + r.gains.si_bb); };
  const auto soi_of = [](const ResultRow& r) { return 0.5 * (r.gains.soi_ab + r.gains.soi_ba); };

  std::vector<std::vector<double>> si, soi;
  for (double d : cfg.sweep.values) {
    si.push_back(series(res, d, Scheme::MaPpso, Mode::Ccfd, si_of));
    soi.push_back(series(res, d, Scheme::MaPpso, Mode::Ccfd, soi_of));
  }

  int violations = 0, severe = 0;
  std::ostringstream ss;
  ss << "mean SI gain per D:";
  for (const auto& v : si) ss << " " << fmt(mean_of(v));
  ss << "; mean SoI gain per D:";
  for (const auto& v : soi) ss << " " << fmt(mean_of(v));
  for (std::size_t i = 0; i + 1 < si.size(); ++i) {
    const MeanStderr d_si = paired_diff(si[i + 1], si[i]);    // want <= 0
    const MeanStderr d_soi = paired_diff(soi[i + 1], soi[i]); // want >= 0
    if (d_si.mean > 0.0) {
      ++violations;
      if (d_si.mean > d_si.stderr_of_mean) ++severe;
    }
    if (d_soi.mean < 0.0) {
      ++violations;
      if (-d_soi.mean > d_soi.stderr_of_mean) ++severe;
    }
  }
  ss << "; adjacent-pair violations " << violations << " (allowed <= 1, none beyond one stderr)";

  Outcome out;
  out.pass = severe == 0 && violations <= 1;
  out.detail = ss.str();
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 6: scheme ordering at D = 1 and the selection staircase.
// ---------------------------------------------------------------------------
Outcome criterion6() {
  ScenarioConfig cfg = base_config();
  cfg.schemes = {{Scheme::MaPpso, Mode::Ccfd},
                 {Scheme::MaApo, Mode::Ccfd},
                 {Scheme::As, Mode::Ccfd},
                 {Scheme::Fpa, Mode::Ccfd}};
  cfg.sweep.variable = SweepVariable::RegionSize;
  cfg.sweep.values = {0.25, 0.5, 0.75, 1.0, 1.5, 2.0};
  const ExperimentResult res = run_experiment(cfg);

  const std::vector<double> ppso = fitness_series(res, 1.0, Scheme::MaPpso, Mode::Ccfd);
  const std::vector<double> apo = fitness_series(res, 1.0, Scheme::MaApo, Mode::Ccfd);
  const std::vector<double> as = fitness_series(res, 1.0, Scheme::As, Mode::Ccfd);
  const std::vector<double> fpa = fitness_series(res, 1.0, Scheme::Fpa, Mode::Ccfd);

  const MeanStderr g1 = paired_diff(ppso, apo);
  const MeanStderr g2 = paired_diff(apo, as);
  const MeanStderr g3 = paired_diff(as, fpa);
  const MeanStderr span = paired_diff(ppso, fpa);
  const bool chain_ok = g1.mean >= -g1.stderr_of_mean && g2.mean >= -g2.stderr_of_mean &&
                        g3.mean >= -g3.stderr_of_mean;
  const bool span_ok = span.mean >= 3.0 * span.stderr_of_mean;

  // Mean of the half-wavelength selection scheme may move between adjacent
  // region sizes only when its candidate lattice actually gains points.
  bool staircase_ok = true;
  std::vector<double> as_means;
  std::vector<std::size_t> lattice;
  for (double d : cfg.sweep.values) {
    as_means.push_back(mean_of(fitness_series(res, d, Scheme::As, Mode::Ccfd)));
    lattice.push_back(lattice_axis_points(0.5, d).size());
  }
  for (std::size_t i = 0; i + 1 < as_means.size(); ++i) {
    if (lattice[i + 1] == lattice[i]) {
      if (as_means[i + 1] != as_means[i]) staircase_ok = false;
    } else {
      if (!(as_means[i + 1] >= as_means[i])) staircase_ok = false;
    }
  }

  Outcome out;
  out.pass = chain_ok && span_ok && staircase_ok;
  std::ostringstream ss;
  ss << "means at D=1: swarm " << fmt(mean_of(ppso)) << " >= alternating " << fmt(mean_of(apo))
     << " >= selection " << fmt(mean_of(as)) << " >= fixed " << fmt(mean_of(fpa))
     << (chain_ok ? " (chain ok)" : " (CHAIN BROKEN)") << "; swarm-fixed gap " << fmt(span.mean)
     << " vs 3*stderr " << fmt(3.0 * span.stderr_of_mean) << (span_ok ? " (ok)" : " (TOO SMALL)")
     << "; selection staircase " << (staircase_ok ? "ok" : "BROKEN") << " (lattice sizes";
  for (std::size_t n : lattice) ss << " " << n;
  ss << ")";
  out.detail = ss.str();
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 7: half duplex beats naive full duplex for a tiny region.
// ---------------------------------------------------------------------------
Outcome criterion7() {
  ScenarioConfig cfg = base_config();
  cfg.system.region_size_d = 0.4;
  cfg.schemes = {{Scheme::As, Mode::Ccfd}, {Scheme::As, Mode::Hd}};
  const ExperimentResult res = run_experiment(cfg);
  const double hd = mean_of(fitness_series(res, 0.0, Scheme::As, Mode::Hd));
  const double fd = mean_of(fitness_series(res, 0.0, Scheme::As, Mode::Ccfd));

  Outcome out;
  out.pass = hd >= fd;
  std::ostringstream ss;
  ss << "selection scheme at D=0.4: half-duplex mean " << fmt(hd) << " vs full-duplex mean "
     << fmt(fd);
  out.detail = ss.str();
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 8: more propagation paths never hurt the optimized link.
// ---------------------------------------------------------------------------
Outcome criterion8() {
  // Sweep the number of self-interference paths with both duplex modes.
  ScenarioConfig cfg = base_config();
  cfg.schemes = {{Scheme::MaPpso, Mode::Ccfd}, {Scheme::MaPpso, Mode::Hd}};
  cfg.sweep.variable = SweepVariable::NumSiPaths;
  cfg.sweep.values = {1.0, 5.0, 10.0, 15.0};
  const ExperimentResult res_si = run_experiment(cfg);

  bool ccfd_ok = true;
  std::vector<std::vector<double>> ccfd_si;
  for (double v : cfg.sweep.values) {
    ccfd_si.push_back(fitness_series(res_si, v, Scheme::MaPpso, Mode::Ccfd));
  }
  for (std::size_t i = 0; i + 1 < ccfd_si.size(); ++i) {
    const MeanStderr d = paired_diff(ccfd_si[i + 1], ccfd_si[i]);
    if (d.mean < -d.stderr_of_mean) ccfd_ok = false;
  }

  // Half duplex ignores the self-interference links, and every sweep point
  // reuses the same channel draws, so its fitness must be exactly flat.
  bool hd_flat = true;
  double hd_spread = 0.0;
  const std::vector<double> hd_ref = fitness_series(res_si, cfg.sweep.values[0], Scheme::MaPpso, Mode::Hd);
  for (std::size_t i = 1; i < cfg.sweep.values.size(); ++i) {
    const std::vector<double> hd_i = fitness_series(res_si, cfg.sweep.values[i], Scheme::MaPpso, Mode::Hd);
    const MeanStderr d = paired_diff(hd_i, hd_ref);
    hd_spread = std::max(hd_spread, std::abs(d.mean));
    if (!(std::abs(d.mean) <= d.stderr_of_mean || d.mean == 0.0)) hd_flat = false;
  }

  // Sweep the number of signal-of-interest paths (full duplex only).
  ScenarioConfig cfg2 = base_config();
  cfg2.schemes = {{Scheme::MaPpso, Mode::Ccfd}};
  cfg2.sweep.variable = SweepVariable::NumSoiPaths;
  cfg2.sweep.values = {2.0, 10.0, 20.0};
  const ExperimentResult res_soi = run_experiment(cfg2);

  bool soi_ok = true;
  std::vector<std::vector<double>> ccfd_soi;
  for (double v : cfg2.sweep.values) {
    ccfd_soi.push_back(fitness_series(res_soi, v, Scheme::MaPpso, Mode::Ccfd));
  }
  for (std::size_t i = 0; i + 1 < ccfd_soi.size(); ++i) {
    const MeanStderr d = paired_diff(ccfd_soi[i + 1], ccfd_soi[i]);
    if (d.mean < -d.stderr_of_mean) soi_ok = false;
  }

  Outcome out;
  out.pass = ccfd_ok && hd_flat && soi_ok;
  std::ostringstream ss;
  ss << "full-duplex means over SI paths {1,5,10,15}:";
  for (const auto& v : ccfd_si) ss << " " << fmt(mean_of(v));
  ss << (ccfd_ok ? " (non-decreasing ok)" : " (DECREASING)");
  ss << "; half-duplex flat across SI paths (max |mean diff| " << fmt(hd_spread) << ")"
     << (hd_flat ? "" : " NOT FLAT");
  ss << "; means over SoI paths {2,10,20}:";
  for (const auto& v : ccfd_soi) ss << " " << fmt(mean_of(v));
  ss << (soi_ok ? " (non-decreasing ok)" : " (DECREASING)");
  out.detail = ss.str();
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 9: byte-identical outputs from the CLI at 1 and 8 workers.
// ---------------------------------------------------------------------------
Outcome criterion9() {
  namespace fs = std::filesystem;
  const fs::path tmp = fs::temp_directory_path() / "maccfd_acceptance_c9";
  std::error_code ec;
  fs::remove_all(tmp, ec);
  fs::create_directories(tmp);

  const std::string cli = MACCFD_CLI_PATH;
  const std::string config = std::string(MACCFD_CONFIG_DIR) + "/default.cfg";
  auto run = [&](int workers, const fs::path& out_dir, const fs::path& log) {
    std::ostringstream cmd;
    cmd << "\"" << cli << "\" run \"" << config << "\" --workers " << workers << " --output-dir \""
        << out_dir.string() << "\" > \"" << log.string() << "\" 2>&1";
    return std::system(cmd.str().c_str());
  };
  const int rc1 = run(1, tmp / "w1", tmp / "log1.txt");
  const int rc8 = run(8, tmp / "w8", tmp / "log8.txt");

  Outcome out;
  if (rc1 != 0 || rc8 != 0) {
    std::string log = slurp(tmp / (rc1 != 0 ? "log1.txt" : "log8.txt"));
    if (log.size() > 200) log.resize(200);
    for (char& c : log) {
      if (c == '\n') c = ' ';
    }
    out.pass = false;
    out.detail = "CLI run failed (exit " + std::to_string(rc1 != 0 ? rc1 : rc8) + "): " + log;
    return out;
  }
  const std::string rows1 = slurp(tmp / "w1" / "results.csv");
  const std::string rows8 = slurp(tmp / "w8" / "results.csv");
  const std::string agg1 = slurp(tmp / "w1" / "results_agg.csv");
  const std::string agg8 = slurp(tmp / "w8" / "results_agg.csv");
  const bool rows_ok = !rows1.empty() && rows1 == rows8;
  const bool agg_ok = !agg1.empty() && agg1 == agg8;

  out.pass = rows_ok && agg_ok;
  std::ostringstream ss;
  ss << "default scenario, workers 1 vs 8: results.csv "
     << (rows_ok ? "byte-identical" : "DIFFERS") << " (" << rows1.size()
     << " bytes), results_agg.csv " << (agg_ok ? "byte-identical" : "DIFFERS");
  out.detail = ss.str();
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 10: exact evaluation accounting of both optimizers.
// ---------------------------------------------------------------------------
Outcome criterion10() {
  SystemParams params;
  const ChannelRealization chan = sample_geometry(derive_seed(1, 0, 0), params);
  RateEvaluator evaluator(chan, params);
  const FitnessFn fitness = mode_adapter(evaluator, Mode::Ccfd);

  PpsoConfig pc;  // defaults: N = 200, K = 100
  pc.region_size_d = params.region_size_d;
  pc.seed = 42;
  evaluator.reset_counters();
  const PpsoResult swarm = run_ppso(fitness, pc);
  const std::uint64_t swarm_expected =
      static_cast<std::uint64_t>(pc.num_particles) * (static_cast<std::uint64_t>(pc.num_iterations) + 1);
  const std::uint64_t swarm_counted = evaluator.fitness_evaluations();
  const bool swarm_ok =
      swarm_counted == swarm_expected && swarm.trace.evaluation_count == swarm_expected;

  evaluator.reset_counters();
  const GridSpec grid{0.01, params.region_size_d};
  const BaselineResult alt = run_apo(fitness, grid);
  const std::size_t axis = grid_axis_points(grid).size();
  const std::uint64_t positions = static_cast<std::uint64_t>(axis) * axis;
  const std::uint64_t alt_expected = static_cast<std::uint64_t>(alt.iterations_used) * 4 * positions;
  const std::uint64_t alt_counted = evaluator.fitness_evaluations();
  const bool alt_ok = alt_counted == alt_expected && alt.evaluations == alt_expected;

  Outcome out;
  out.pass = swarm_ok && alt_ok;
  std::ostringstream ss;
  ss << "swarm evaluations " << swarm_counted << " == N*(K+1) = " << swarm_expected
     << (swarm_ok ? " (ok)" : " (MISMATCH)") << "; alternating evaluations " << alt_counted
     << " == rounds*4*G = " << alt.iterations_used << "*4*" << positions << " = " << alt_expected
     << (alt_ok ? " (ok)" : " (MISMATCH)");
  out.detail = ss.str();
  return out;
}

}  // namespace

int main() {
  using CriterionFn = Outcome (*)();
  const CriterionFn criteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                  criterion6, criterion7, criterion8, criterion9, criterion10};
  bool all_pass = true;
  for (std::size_t i = 0; i < std::size(criteria); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %zu: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
