#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "maccfd/system.hpp"

namespace maccfd {

using FitnessFn = std::function<double(const AntennaLayout&)>;

struct PpsoConfig {
  int num_particles = 200;   // N
  int num_iterations = 100;  // K
  double c1 = 1.4;
  double c2 = 1.4;
  double omega_min = 0.4;
  double omega_max = 0.9;
  double region_size_d = 1.0;  // D, multiples of lambda
  std::uint64_t seed = 0;

  void validate() const;
  bool operator==(const PpsoConfig&) const = default;
};

/// Per-iteration global-best fitness, including the post-initialization
/// value at k = 0, plus the number of fitness evaluations consumed.
/// The sequence is non-decreasing.
struct FitnessTrace {
  std::vector<double> global_best;  // length K + 1
  std::uint64_t evaluation_count = 0;
};

struct Swarm {
  std::vector<Vec8> positions;   // U^(k), N entries
  std::vector<Vec8> velocities;  // V^(k)
  std::vector<Vec8> local_best;
  std::vector<double> local_best_fitness;
  Vec8 global_best{};
  double global_best_fitness = 0.0;
  int iteration = 0;
};

struct PpsoResult {
  AntennaLayout best_layout;
  double best_fitness = 0.0;
  FitnessTrace trace;
};

/// Componentwise projection onto the box [-d/2, +d/2]^8. Idempotent and
/// non-expansive in the max norm.
Vec8 project(const Vec8& v, double region_size_d);

/// Linearly decreasing inertia: omega_max - (omega_max - omega_min) * k / K.
/// Throws std::invalid_argument for k outside [0, K].
double inertia_weight(int k, const PpsoConfig& config);

/// Velocity rule with the random vectors supplied explicitly:
/// omega*v_prev + c1*e1.(local - u_prev) + c2*e2.(global - u_prev).
Vec8 velocity_update(const Vec8& v_prev, const Vec8& u_prev, const Vec8& u_local_best,
                     const Vec8& u_global_best, double omega, double c1, double c2,
                     const Vec8& e1, const Vec8& e2);

/// Velocity rule for particle n, drawing fresh e1 then e2 (8 uniforms each,
/// in that order) from the stream.
Vec8 velocity_update(const Swarm& swarm, int n, double omega, const PpsoConfig& config, SplitMix64& rng);

/// Random swarm: positions then velocities drawn i.i.d. uniform over the box
/// in particle-index order, 8 coordinates each; local bests start at the
/// initial positions and the global best is the fittest of them (strict
/// comparison, first index wins ties). Injected layouts overwrite the
/// positions of the leading particles after all draws, so the random stream
/// is unaffected.
Swarm initialize_swarm(const FitnessFn& fitness, const PpsoConfig& config, SplitMix64& rng,
                       std::span<const AntennaLayout> injected = {});

/// Projected particle swarm over the 8-dimensional joint position vector.
/// Per iteration k = 1..K: one inertia weight, then per particle in index
/// order a velocity update, the projected position update, one fitness
/// evaluation, and strict local/global best updates. Deterministic in
/// config.seed; consumes exactly N*(K+1) fitness evaluations.
PpsoResult run_ppso(const FitnessFn& fitness, const PpsoConfig& config,
                    std::span<const AntennaLayout> injected = {});

/// (1/((K+1) F*)) * sum_k |F* - F^(k)| over the trace. Throws
/// std::invalid_argument unless f_star > 0 and the trace is non-empty.
double normalized_cumulative_error(const FitnessTrace& trace, double f_star);

}  // namespace maccfd
