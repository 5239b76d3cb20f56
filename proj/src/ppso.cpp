#include "maccfd/ppso.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maccfd {

void PpsoConfig::validate() const {
  if (num_particles < 1) throw std::invalid_argument("num_particles must be >= 1");
  if (num_iterations < 1) throw std::invalid_argument("num_iterations must be >= 1");
  if (c1 < 0.0 || c2 < 0.0) throw std::invalid_argument("learning factors must be >= 0");
  if (!(0.0 <= omega_min && omega_min <= omega_max)) {
    throw std::invalid_argument("require 0 <= omega_min <= omega_max");
  }
  if (!(region_size_d >= 0.0)) throw std::invalid_argument("region_size_d must be >= 0");
}

Vec8 project(const Vec8& v, double region_size_d) {
  const double half = region_size_d / 2.0;
  Vec8 out;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::clamp(v[i], -half, half);
  return out;
}

double inertia_weight(int k, const PpsoConfig& config) {
  if (k < 0 || k > config.num_iterations) {
    throw std::invalid_argument("inertia_weight: iteration outside [0, K]");
  }
  return config.omega_max -
         (config.omega_max - config.omega_min) * static_cast<double>(k) / config.num_iterations;
}

Vec8 velocity_update(const Vec8& v_prev, const Vec8& u_prev, const Vec8& u_local_best,
                     const Vec8& u_global_best, double omega, double c1, double c2,
                     const Vec8& e1, const Vec8& e2) {
  Vec8 v;
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = omega * v_prev[i] + c1 * e1[i] * (u_local_best[i] - u_prev[i]) +
           c2 * e2[i] * (u_global_best[i] - u_prev[i]);
  }
  return v;
}

Vec8 velocity_update(const Swarm& swarm, int n, double omega, const PpsoConfig& config, SplitMix64& rng) {
  Vec8 e1;
  for (double& e : e1) e = rng.uniform01();
  Vec8 e2;
  for (double& e : e2) e = rng.uniform01();
  return velocity_update(swarm.velocities[n], swarm.positions[n], swarm.local_best[n],
                         swarm.global_best, omega, config.c1, config.c2, e1, e2);
}

Swarm initialize_swarm(const FitnessFn& fitness, const PpsoConfig& config, SplitMix64& rng,
                       std::span<const AntennaLayout> injected) {
  config.validate();
  const int n = config.num_particles;
  const double half = config.region_size_d / 2.0;

  Swarm swarm;
  swarm.positions.resize(n);
  for (Vec8& u : swarm.positions) {
    for (double& x : u) x = rng.uniform(-half, half);
  }
  swarm.velocities.resize(n);
  for (Vec8& v : swarm.velocities) {
    for (double& x : v) x = rng.uniform(-half, half);
  }
  for (std::size_t i = 0; i < injected.size() && i < swarm.positions.size(); ++i) {
    swarm.positions[i] = project(injected[i].to_vector(), config.region_size_d);
  }

  swarm.local_best = swarm.positions;
  swarm.local_best_fitness.resize(n);
  for (int i = 0; i < n; ++i) {
    swarm.local_best_fitness[i] = fitness(AntennaLayout::from_vector(swarm.positions[i]));
  }
  int best = 0;
  for (int i = 1; i < n; ++i) {
    if (swarm.local_best_fitness[i] > swarm.local_best_fitness[best]) best = i;
  }
  swarm.global_best = swarm.positions[best];
  swarm.global_best_fitness = swarm.local_best_fitness[best];
  swarm.iteration = 0;
  return swarm;
}

PpsoResult run_ppso(const FitnessFn& fitness, const PpsoConfig& config,
                    std::span<const AntennaLayout> injected) {
  config.validate();
  SplitMix64 rng(config.seed);

  std::uint64_t evaluations = 0;
  const auto counted = [&](const AntennaLayout& layout) {
    ++evaluations;
    return fitness(layout);
  };

  Swarm swarm = initialize_swarm(counted, config, rng, injected);

  FitnessTrace trace;
  trace.global_best.reserve(config.num_iterations + 1);
  trace.global_best.push_back(swarm.global_best_fitness);

  for (int k = 1; k <= config.num_iterations; ++k) {
    const double omega = inertia_weight(k, config);
    for (int n = 0; n < config.num_particles; ++n) {
      const Vec8 v = velocity_update(swarm, n, omega, config, rng);
      Vec8 u;
      for (std::size_t i = 0; i < u.size(); ++i) u[i] = swarm.positions[n][i] + v[i];
      u = project(u, config.region_size_d);
      swarm.velocities[n] = v;
      swarm.positions[n] = u;

      const double f = counted(AntennaLayout::from_vector(u));
      if (f > swarm.local_best_fitness[n]) {
        swarm.local_best[n] = u;
        swarm.local_best_fitness[n] = f;
      }
      if (f > swarm.global_best_fitness) {
        swarm.global_best = u;
        swarm.global_best_fitness = f;
      }
    }
    swarm.iteration = k;
    trace.global_best.push_back(swarm.global_best_fitness);
  }

  trace.evaluation_count = evaluations;
  return {AntennaLayout::from_vector(swarm.global_best), swarm.global_best_fitness, trace};
}

double normalized_cumulative_error(const FitnessTrace& trace, double f_star) {
  if (!(f_star > 0.0)) throw std::invalid_argument("normalized_cumulative_error: f_star must be > 0");
  if (trace.global_best.empty()) {
    throw std::invalid_argument("normalized_cumulative_error: empty trace");
  }
  double sum = 0.0;
  for (double f : trace.global_best) sum += std::abs(f_star - f);
  return sum / (static_cast<double>(trace.global_best.size()) * f_star);
}

}  // namespace maccfd
