#include "maccfd/baselines.hpp"

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

namespace maccfd {

namespace {

constexpr double kCountTol = 1e-9;  // absorbs representation error in extent/spacing

Position antenna_position(const AntennaLayout& layout, int antenna) {
  switch (antenna) {
    case 0: return layout.t_a;
    case 1: return layout.r_a;
    case 2: return layout.t_b;
    case 3: return layout.r_b;
    default: throw std::invalid_argument("antenna index must be in [0, 3]");
  }
}

void set_antenna_position(AntennaLayout& layout, int antenna, Position pos) {
  switch (antenna) {
    case 0: layout.t_a = pos; return;
    case 1: layout.r_a = pos; return;
    case 2: layout.t_b = pos; return;
    case 3: layout.r_b = pos; return;
    default: throw std::invalid_argument("antenna index must be in [0, 3]");
  }
}

/// Shared control flow of APO and antenna selection: they differ only in the
/// candidate axis handed in. Keeping one implementation guarantees the two
/// schemes stay bit-identical whenever their candidate sets coincide.
BaselineResult alternating_search(const FitnessFn& fitness, const std::vector<double>& axis,
                                  int max_rounds, double tol) {
  if (max_rounds < 1) {
    throw std::invalid_argument("max_rounds must be at least 1");
  }
  if (!(tol >= 0.0)) {
    throw std::invalid_argument("tol must be non-negative");
  }
  if (axis.empty()) {
    throw std::invalid_argument("candidate axis must be non-empty");
  }

  BaselineResult result;
  result.layout = AntennaLayout{};  // all antennas at the region origin
  // Unset incumbent: the starting layout is never evaluated, so the first
  // per-antenna sweep always moves onto a candidate point and the total
  // evaluation count stays exactly rounds * 4 * G.
  result.fitness = -std::numeric_limits<double>::infinity();

  for (int round = 1; round <= max_rounds; ++round) {
    const double round_start = result.fitness;
    for (int antenna = 0; antenna < 4; ++antenna) {
      AntennaLayout candidate = result.layout;
      Position best_pos = antenna_position(result.layout, antenna);
      double best_fitness = -std::numeric_limits<double>::infinity();
      bool have_candidate = false;
      for (double x : axis) {
        for (double y : axis) {
          set_antenna_position(candidate, antenna, Position{x, y});
          const double value = fitness(candidate);
          ++result.evaluations;
          // Strict comparison keeps the lexicographically first maximizer.
          if (!have_candidate || value > best_fitness) {
            best_fitness = value;
            best_pos = Position{x, y};
            have_candidate = true;
          }
        }
      }
      // Move only on strict improvement over the incumbent layout.
      if (best_fitness > result.fitness) {
        set_antenna_position(result.layout, antenna, best_pos);
        result.fitness = best_fitness;
      }
    }
    result.iterations_used = round;
    result.round_fitness.push_back(result.fitness);
    if (!(result.fitness - round_start > tol)) {
      break;
    }
  }
  return result;
}

}  // namespace

const char* to_string(Mode m) {
  switch (m) {
    case Mode::Ccfd: return "CCFD";
    case Mode::Hd: return "HD";
  }
  throw std::invalid_argument("unknown mode");
}

Mode mode_from_string(const std::string& s) {
  if (s == "CCFD") return Mode::Ccfd;
  if (s == "HD") return Mode::Hd;
  throw std::invalid_argument("unknown mode: " + s);
}

void GridSpec::validate() const {
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw std::invalid_argument("grid spacing must be positive and finite");
  }
  if (!(extent >= 0.0) || !std::isfinite(extent)) {
    throw std::invalid_argument("grid extent must be non-negative and finite");
  }
}

std::vector<double> grid_axis_points(const GridSpec& grid) {
  grid.validate();
  if (grid.spacing > grid.extent) {
    return {0.0};  // degenerate grid: only the region origin
  }
  const auto steps = static_cast<std::size_t>(
      std::floor(grid.extent / grid.spacing + kCountTol));
  std::vector<double> points;
  points.reserve(steps + 1);
  const double lo = -0.5 * grid.extent;
  for (std::size_t i = 0; i <= steps; ++i) {
    points.push_back(lo + static_cast<double>(i) * grid.spacing);
  }
  return points;
}

std::vector<double> lattice_axis_points(double spacing, double extent) {
  GridSpec{spacing, extent}.validate();
  const auto half_steps = static_cast<std::int64_t>(
      std::floor(0.5 * extent / spacing + kCountTol));
  std::vector<double> points;
  points.reserve(static_cast<std::size_t>(2 * half_steps + 1));
  for (std::int64_t k = -half_steps; k <= half_steps; ++k) {
    points.push_back(static_cast<double>(k) * spacing);
  }
  return points;
}

BaselineResult run_apo(const FitnessFn& fitness, const GridSpec& grid, int max_rounds,
                       double tol) {
  return alternating_search(fitness, grid_axis_points(grid), max_rounds, tol);
}

BaselineResult run_antenna_selection(const FitnessFn& fitness, double spacing, double extent,
                                     int max_rounds, double tol) {
  return alternating_search(fitness, lattice_axis_points(spacing, extent), max_rounds, tol);
}

BaselineResult run_fpa(const FitnessFn& fitness) {
  BaselineResult result;
  result.layout = AntennaLayout{};
  result.fitness = fitness(result.layout);
  result.iterations_used = 0;
  result.evaluations = 1;
  return result;
}

BaselineResult brute_force(const FitnessFn& fitness, const GridSpec& grid) {
  const std::vector<double> axis = grid_axis_points(grid);
  const double g_region = static_cast<double>(axis.size()) * static_cast<double>(axis.size());
  constexpr std::uint64_t kMaxEvaluations = 10'000'000;
  // Count in double before looping: G^4 overflows uint64 long before the
  // guard threshold is interesting, and the comparison only needs magnitude.
  const double total = g_region * g_region * g_region * g_region;
  if (total > static_cast<double>(kMaxEvaluations)) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.0f", total);
    throw std::invalid_argument("brute_force: refusing " + std::string(buf) +
                                " evaluations (limit " + std::to_string(kMaxEvaluations) + ")");
  }

  BaselineResult result;
  result.fitness = -std::numeric_limits<double>::infinity();
  bool have = false;
  AntennaLayout candidate;
  // Nested loops in antenna order (t_A, r_A, t_B, r_B), each region swept in
  // lexicographic (x, y) order, so the overall enumeration is lexicographic
  // over layout vectors and strict '>' keeps the first maximizer.
  for (double tax : axis) {
    for (double tay : axis) {
      candidate.t_a = Position{tax, tay};
      for (double rax : axis) {
        for (double ray : axis) {
          candidate.r_a = Position{rax, ray};
          for (double tbx : axis) {
            for (double tby : axis) {
              candidate.t_b = Position{tbx, tby};
              for (double rbx : axis) {
                for (double rby : axis) {
                  candidate.r_b = Position{rbx, rby};
                  const double value = fitness(candidate);
                  ++result.evaluations;
                  if (!have || value > result.fitness) {
                    result.fitness = value;
                    result.layout = candidate;
                    have = true;
                  }
                }
              }
            }
          }
        }
      }
    }
  }
  result.iterations_used = 1;
  return result;
}

FitnessFn mode_adapter(const RateEvaluator& evaluator, Mode mode) {
  if (mode == Mode::Ccfd) {
    return [&evaluator](const AntennaLayout& layout) { return evaluator.ccfd_min_rate(layout); };
  }
  return [&evaluator](const AntennaLayout& layout) { return evaluator.hd_min_rate(layout); };
}

}  // namespace maccfd
