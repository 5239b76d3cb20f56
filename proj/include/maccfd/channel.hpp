#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "maccfd/rng.hpp"

namespace maccfd {

using cplx = std::complex<double>;

enum class Terminal : int { A = 0, B = 1 };

/// Ordered (transmit terminal, receive terminal) pair naming one of the four
/// links. AA and BB are self-interference links, AB and BA carry the signal
/// of interest.
enum class Link : int { AA = 0, AB = 1, BA = 2, BB = 3 };

constexpr Link link_between(Terminal tx, Terminal rx) {
  return static_cast<Link>(2 * static_cast<int>(tx) + static_cast<int>(rx));
}

constexpr bool is_self_interference(Link l) { return l == Link::AA || l == Link::BB; }

const char* to_string(Link l);

/// Antenna coordinates inside a moving region, in wavelengths. Storing
/// positions pre-divided by the wavelength absorbs the 2*pi/lambda phase
/// factor of the field response.
struct Position {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Position&) const = default;
};

/// Elevation and azimuth of one propagation path, radians, both in
/// [-pi/2, pi/2]. Serves departure (AoD) and arrival (AoA) sides alike.
struct PathAngles {
  double elevation = 0.0;
  double azimuth = 0.0;
  bool operator==(const PathAngles&) const = default;
};

/// Small dense complex matrix, row-major. Holds the path-response matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static CMatrix diagonal(const std::vector<cplx>& d);

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool operator==(const CMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> a_;
};

/// Per-link path geometry: angles of departure/arrival and the path-response
/// matrix from the transmit-region origin to the receive-region origin.
/// Under the geometry channel model sigma is diagonal with L_t = L_r.
struct LinkGeometry {
  std::vector<PathAngles> aods;  // length L_t
  std::vector<PathAngles> aoas;  // length L_r
  CMatrix sigma;                 // L_r x L_t
  bool operator==(const LinkGeometry&) const = default;
};

/// One quasi-static fading block: the four links plus the seed that
/// generated them. Pure value; safe to share across threads.
struct ChannelRealization {
  std::array<LinkGeometry, 4> links;
  std::uint64_t seed = 0;

  const LinkGeometry& link(Link l) const { return links[static_cast<int>(l)]; }
  const LinkGeometry& link(Terminal tx, Terminal rx) const { return link(link_between(tx, rx)); }

  bool operator==(const ChannelRealization&) const = default;
};

/// Link-level constants. Powers are linear milliwatts, loss factors linear
/// ratios; all dB/dBm conversion happens at the config boundary.
struct SystemParams {
  double transmit_power = 100.0;        // P_t, mW (20 dBm)
  double noise_power = 1e-8;            // sigma^2, mW (-80 dBm)
  double region_size_d = 1.0;           // D, multiples of lambda
  double si_loss_rho = 1e-9;            // rho, linear (-90 dB)
  double soi_pathloss_beta = 1e-3;      // beta, linear (-30 dB)
  double pathloss_exponent_alpha = 2.8; // alpha
  double distance_d_pq = 100.0;         // d, meters
  int num_si_paths = 5;                 // L for AA/BB
  int num_soi_paths = 10;               // L for AB/BA

  /// Per-path gain variance of a self-interference link: rho / L.
  double si_path_variance() const { return si_loss_rho / num_si_paths; }

  /// Per-path gain variance of a signal-of-interest link: beta * d^-alpha / L.
  double soi_path_variance() const {
    return soi_pathloss_beta * std::pow(distance_d_pq, -pathloss_exponent_alpha) / num_soi_paths;
  }

  /// Throws std::invalid_argument when a field is outside its domain.
  void validate() const;

  bool operator==(const SystemParams&) const = default;
};

double db_to_linear(double value_db);
double linear_to_db(double value_linear);
double dbm_to_mw(double value_dbm);
double mw_to_dbm(double value_mw);

/// Direction coefficients (cos(el)*sin(az), sin(el)) of one path. The
/// propagation-distance difference at position (x, y) is x*a + y*b;
/// every phase computation goes through this one helper so cached and
/// uncached evaluation paths agree bit for bit.
struct DirectionCoeffs {
  double a;
  double b;
};

inline DirectionCoeffs direction_coeffs(const PathAngles& angles) {
  return {std::cos(angles.elevation) * std::sin(angles.azimuth), std::sin(angles.elevation)};
}

/// Difference of propagation distance relative to the region origin, in
/// wavelengths: x*cos(el)*sin(az) + y*sin(el).
double propagation_distance_diff(const Position& pos, const PathAngles& angles);

/// Field-response vector: entry l is exp(j*2*pi*rho_l(pos)). Every entry has
/// unit modulus. Throws std::invalid_argument on an empty angle list.
std::vector<cplx> field_response(const Position& pos, const std::vector<PathAngles>& angles_list);

/// Channel coefficient h = f(r)^H * Sigma * g(t). Throws
/// std::invalid_argument when Sigma's shape does not match the angle lists.
cplx channel_coefficient(const Position& t, const Position& r, const LinkGeometry& link);

/// Draws one fading block under the geometry channel model: i.i.d. uniform
/// angles on [-pi/2, pi/2] and a diagonal Sigma with CSCG entries of per-path
/// variance rho/L (SI links) or beta*d^-alpha/L (SoI links).
///
/// Deterministic in (seed, params). Each link consumes its own sub-stream
/// derived from (seed, link index), in the draw order: AoD pairs
/// (elevation, azimuth) for l = 1..L, then AoA pairs, then one Box-Muller
/// pair per diagonal entry.
ChannelRealization sample_geometry(std::uint64_t seed, const SystemParams& params);

}  // namespace maccfd
