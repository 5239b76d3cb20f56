#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "maccfd/ppso.hpp"
#include "maccfd/system.hpp"

namespace maccfd {

enum class Mode : int { Ccfd = 0, Hd = 1 };

const char* to_string(Mode m);
Mode mode_from_string(const std::string& s);

/// Per-axis search grid of one moving region: points -D/2 + i*spacing inside
/// [-D/2, +D/2], anchored at -D/2. A grid whose spacing exceeds the extent
/// degenerates to the single point at the region origin.
struct GridSpec {
  double spacing = 0.01;  // in lambda
  double extent = 1.0;    // D, in lambda
  void validate() const;
};

std::vector<double> grid_axis_points(const GridSpec& grid);

/// Antenna-selection lattice axis: multiples of `spacing` truncated to
/// [-extent/2, +extent/2], centered so the origin is always a candidate.
/// For extent < spacing this is the single origin point.
std::vector<double> lattice_axis_points(double spacing, double extent);

struct BaselineResult {
  AntennaLayout layout;
  double fitness = 0.0;
  int iterations_used = 0;
  std::uint64_t evaluations = 0;
  Mode mode = Mode::Ccfd;
  std::vector<double> round_fitness;  // incumbent after each full round
};

/// Alternating position optimization: sweep the four antennas in the fixed
/// order t_A, r_A, t_B, r_B; for each, exhaustively search its 2-D grid with
/// the others held fixed and move only on strict improvement (lexicographic
/// first among ties). Starts from the all-origin layout with an unset
/// incumbent, so round one always lands on a grid layout. Stops when a full
/// round improves the incumbent by at most `tol`, or after `max_rounds`.
/// Consumes exactly rounds * 4 * G evaluations, G = grid points per region.
BaselineResult run_apo(const FitnessFn& fitness, const GridSpec& grid, int max_rounds = 20,
                       double tol = 1e-6);

/// Antenna selection: the APO control flow on the spacing-lattice (lambda/2
/// in the standard setup). For extent < spacing every region offers only the
/// origin, which reproduces the fixed-position result exactly.
BaselineResult run_antenna_selection(const FitnessFn& fitness, double spacing, double extent,
                                     int max_rounds = 20, double tol = 1e-6);

/// Fixed-position antennas: one evaluation at the all-origin layout.
BaselineResult run_fpa(const FitnessFn& fitness);

/// Exhaustive search over the product grid (G points per region, G^4 joint
/// layouts), in lexicographic layout order with first-wins tie-breaking.
/// Refuses with the computed count when G^4 would exceed 1e7 evaluations.
BaselineResult brute_force(const FitnessFn& fitness, const GridSpec& grid);

/// Objective for the requested duplex mode, bound to `evaluator`. The
/// evaluator must outlive the returned function.
FitnessFn mode_adapter(const RateEvaluator& evaluator, Mode mode);

}  // namespace maccfd
