#include "maccfd/system.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maccfd {

namespace {
constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

double gamma_of(double soi_gain, double si_gain, const SystemParams& p) {
  return soi_gain * p.transmit_power / (si_gain * p.transmit_power + p.noise_power);
}
}  // namespace

SinrPair sinr(const AntennaLayout& layout, const ChannelRealization& chan, const SystemParams& params) {
  const LinkGains g = link_gains(layout, chan);
  return {gamma_of(g.soi_ba, g.si_aa, params), gamma_of(g.soi_ab, g.si_bb, params)};
}

double achievable_rate(double gamma) {
  if (gamma < 0.0) throw std::invalid_argument("achievable_rate: negative SINR");
  return std::log2(1.0 + gamma);
}

RatePair ccfd_rates(const AntennaLayout& layout, const ChannelRealization& chan, const SystemParams& params) {
  const SinrPair s = sinr(layout, chan, params);
  return {achievable_rate(s.gamma_a), achievable_rate(s.gamma_b)};
}

RatePair hd_rate(const AntennaLayout& layout, const ChannelRealization& chan, const SystemParams& params) {
  const double gain_ab = std::norm(channel_coefficient(layout.t_a, layout.r_b, chan.link(Link::AB)));
  const double gain_ba = std::norm(channel_coefficient(layout.t_b, layout.r_a, chan.link(Link::BA)));
  const double gamma_a = gain_ba * params.transmit_power / params.noise_power;
  const double gamma_b = gain_ab * params.transmit_power / params.noise_power;
  return {0.5 * std::log2(1.0 + gamma_a), 0.5 * std::log2(1.0 + gamma_b)};
}

double min_rate_fitness(const AntennaLayout& layout, const ChannelRealization& chan, const SystemParams& params) {
  const RatePair r = ccfd_rates(layout, chan, params);
  return std::min(r.rate_a, r.rate_b);
}

double hd_min_rate_fitness(const AntennaLayout& layout, const ChannelRealization& chan, const SystemParams& params) {
  const RatePair r = hd_rate(layout, chan, params);
  return std::min(r.rate_a, r.rate_b);
}

LinkGains link_gains(const AntennaLayout& layout, const ChannelRealization& chan) {
  return {std::norm(channel_coefficient(layout.t_a, layout.r_a, chan.link(Link::AA))),
          std::norm(channel_coefficient(layout.t_b, layout.r_b, chan.link(Link::BB))),
          std::norm(channel_coefficient(layout.t_a, layout.r_b, chan.link(Link::AB))),
          std::norm(channel_coefficient(layout.t_b, layout.r_a, chan.link(Link::BA)))};
}

RateEvaluator::RateEvaluator(const ChannelRealization& chan, const SystemParams& params)
    : chan_(chan), params_(params) {
  params_.validate();
  std::size_t max_paths = 1;
  for (int i = 0; i < 4; ++i) {
    const LinkGeometry& link = chan_.links[i];
    if (link.sigma.rows() != link.aoas.size() || link.sigma.cols() != link.aods.size()) {
      throw std::invalid_argument("RateEvaluator: sigma shape does not match angle lists");
    }
    CachedLink& c = cache_[i];
    c.tx.reserve(link.aods.size());
    for (const PathAngles& a : link.aods) c.tx.push_back(direction_coeffs(a));
    c.rx.reserve(link.aoas.size());
    for (const PathAngles& a : link.aoas) c.rx.push_back(direction_coeffs(a));
    c.sigma = &chan_.links[i].sigma;
    max_paths = std::max({max_paths, link.aods.size(), link.aoas.size()});
  }
  scratch_g_.resize(max_paths);
  scratch_f_.resize(max_paths);
}

// Mirrors channel_coefficient() operation for operation so both paths agree
// bit for bit; only the angle trigonometry is cached.
cplx RateEvaluator::coefficient(Link l, const Position& t, const Position& r) const {
  const CachedLink& c = cache_[static_cast<int>(l)];
  const std::size_t lt_count = c.tx.size();
  const std::size_t lr_count = c.rx.size();
  for (std::size_t lt = 0; lt < lt_count; ++lt) {
    const double phase = kTwoPi * (t.x * c.tx[lt].a + t.y * c.tx[lt].b);
    scratch_g_[lt] = {std::cos(phase), std::sin(phase)};
  }
  for (std::size_t lr = 0; lr < lr_count; ++lr) {
    const double phase = kTwoPi * (r.x * c.rx[lr].a + r.y * c.rx[lr].b);
    scratch_f_[lr] = {std::cos(phase), std::sin(phase)};
  }
  cplx h = 0.0;
  for (std::size_t lr = 0; lr < lr_count; ++lr) {
    cplx row = 0.0;
    for (std::size_t lt = 0; lt < lt_count; ++lt) row += (*c.sigma)(lr, lt) * scratch_g_[lt];
    h += std::conj(scratch_f_[lr]) * row;
  }
  channel_ops_ += lr_count * lt_count + lt_count;
  return h;
}

double RateEvaluator::gain(Link l, const Position& t, const Position& r) const {
  return std::norm(coefficient(l, t, r));
}

RatePair RateEvaluator::ccfd_rate_pair(const AntennaLayout& layout) const {
  const double gamma_a =
      gamma_of(gain(Link::BA, layout.t_b, layout.r_a), gain(Link::AA, layout.t_a, layout.r_a), params_);
  const double gamma_b =
      gamma_of(gain(Link::AB, layout.t_a, layout.r_b), gain(Link::BB, layout.t_b, layout.r_b), params_);
  return {std::log2(1.0 + gamma_a), std::log2(1.0 + gamma_b)};
}

RatePair RateEvaluator::hd_rate_pair(const AntennaLayout& layout) const {
  const double gamma_a = gain(Link::BA, layout.t_b, layout.r_a) * params_.transmit_power / params_.noise_power;
  const double gamma_b = gain(Link::AB, layout.t_a, layout.r_b) * params_.transmit_power / params_.noise_power;
  return {0.5 * std::log2(1.0 + gamma_a), 0.5 * std::log2(1.0 + gamma_b)};
}

double RateEvaluator::ccfd_min_rate(const AntennaLayout& layout) const {
  ++fitness_evaluations_;
  const RatePair r = ccfd_rate_pair(layout);
  return std::min(r.rate_a, r.rate_b);
}

double RateEvaluator::hd_min_rate(const AntennaLayout& layout) const {
  ++fitness_evaluations_;
  const RatePair r = hd_rate_pair(layout);
  return std::min(r.rate_a, r.rate_b);
}

LinkGains RateEvaluator::gains(const AntennaLayout& layout) const {
  return {gain(Link::AA, layout.t_a, layout.r_a), gain(Link::BB, layout.t_b, layout.r_b),
          gain(Link::AB, layout.t_a, layout.r_b), gain(Link::BA, layout.t_b, layout.r_a)};
}

std::uint64_t RateEvaluator::ops_per_ccfd_fitness() const {
  std::uint64_t ops = 0;
  for (const CachedLink& c : cache_) ops += c.rx.size() * c.tx.size() + c.tx.size();
  return ops;
}

}  // namespace maccfd
