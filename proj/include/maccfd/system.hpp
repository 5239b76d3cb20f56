#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "maccfd/channel.hpp"

namespace maccfd {

using Vec8 = std::array<double, 8>;

/// The four antenna coordinates, interconvertible with the 8-vector
/// [t_A; r_A; t_B; r_B] used by the particle swarm.
struct AntennaLayout {
  Position t_a;
  Position r_a;
  Position t_b;
  Position r_b;

  Vec8 to_vector() const {
    return {t_a.x, t_a.y, r_a.x, r_a.y, t_b.x, t_b.y, r_b.x, r_b.y};
  }
  static AntennaLayout from_vector(const Vec8& u) {
    return {{u[0], u[1]}, {u[2], u[3]}, {u[4], u[5]}, {u[6], u[7]}};
  }

  bool operator==(const AntennaLayout&) const = default;
};

struct SinrPair {
  double gamma_a;
  double gamma_b;
};

struct RatePair {
  double rate_a;  // bits/s/Hz
  double rate_b;
};

/// Squared channel magnitudes |h|^2 of the four links at one layout.
struct LinkGains {
  double si_aa;
  double si_bb;
  double soi_ab;
  double soi_ba;
};

/// SINR at both terminals: gamma_q = |h_pq|^2 P_t / (|h_qq|^2 P_t + sigma^2),
/// with the SoI link evaluated at (t_p, r_q) and the SI link at (t_q, r_q).
SinrPair sinr(const AntennaLayout& layout, const ChannelRealization& chan, const SystemParams& params);

/// log2(1 + gamma). Throws std::invalid_argument for gamma < 0.
double achievable_rate(double gamma);

RatePair ccfd_rates(const AntennaLayout& layout, const ChannelRealization& chan, const SystemParams& params);

/// Half-duplex rates: R_q = (1/2) log2(1 + |h_pq|^2 P_t / sigma^2). The SI
/// links do not enter.
RatePair hd_rate(const AntennaLayout& layout, const ChannelRealization& chan, const SystemParams& params);

/// Max-min objective: min{R_A, R_B} of the full-duplex rates.
double min_rate_fitness(const AntennaLayout& layout, const ChannelRealization& chan, const SystemParams& params);

/// min{R_A, R_B} of the half-duplex rates.
double hd_min_rate_fitness(const AntennaLayout& layout, const ChannelRealization& chan, const SystemParams& params);

LinkGains link_gains(const AntennaLayout& layout, const ChannelRealization& chan);

/// Rate evaluation bound to one (realization, params) pair. Caches the
/// per-path direction coefficients so repeated evaluations skip the angle
/// trigonometry, and counts work for the complexity accounting. Produces
/// bit-identical values to the free functions above.
///
/// Counters make instances single-owner; share the underlying realization
/// across threads and give each thread its own evaluator.
class RateEvaluator {
 public:
  RateEvaluator(const ChannelRealization& chan, const SystemParams& params);

  // The direction-coefficient cache points into this instance's own channel
  // copy, so instances are pinned in place.
  RateEvaluator(const RateEvaluator&) = delete;
  RateEvaluator& operator=(const RateEvaluator&) = delete;

  double ccfd_min_rate(const AntennaLayout& layout) const;
  double hd_min_rate(const AntennaLayout& layout) const;
  RatePair ccfd_rate_pair(const AntennaLayout& layout) const;
  RatePair hd_rate_pair(const AntennaLayout& layout) const;

  /// Link gains at a layout; not counted as a fitness evaluation.
  LinkGains gains(const AntennaLayout& layout) const;

  /// Fitness evaluations since construction or the last reset.
  std::uint64_t fitness_evaluations() const { return fitness_evaluations_; }

  /// Nominal channel operations consumed so far: each coefficient
  /// evaluation of a link costs L_r*L_t + L_t.
  std::uint64_t channel_ops() const { return channel_ops_; }

  /// Channel operations of one full-duplex fitness evaluation,
  /// L_sum = sum over links of (L_r*L_t + L_t).
  std::uint64_t ops_per_ccfd_fitness() const;

  void reset_counters() {
    fitness_evaluations_ = 0;
    channel_ops_ = 0;
  }

  const ChannelRealization& realization() const { return chan_; }
  const SystemParams& params() const { return params_; }

 private:
  struct CachedLink {
    std::vector<DirectionCoeffs> tx;  // per AoD
    std::vector<DirectionCoeffs> rx;  // per AoA
    const CMatrix* sigma;
  };

  cplx coefficient(Link l, const Position& t, const Position& r) const;
  double gain(Link l, const Position& t, const Position& r) const;

  ChannelRealization chan_;
  SystemParams params_;
  std::array<CachedLink, 4> cache_;
  mutable std::uint64_t fitness_evaluations_ = 0;
  mutable std::uint64_t channel_ops_ = 0;
  mutable std::vector<cplx> scratch_g_;
  mutable std::vector<cplx> scratch_f_;
};

}  // namespace maccfd
