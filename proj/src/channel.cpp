#include "maccfd/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace maccfd {

namespace {
constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
constexpr double kHalfPi = 0.5 * 3.14159265358979323846;
}  // namespace

const char* to_string(Link l) {
  switch (l) {
    case Link::AA: return "AA";
    case Link::AB: return "AB";
    case Link::BA: return "BA";
    case Link::BB: return "BB";
  }
  return "?";
}

CMatrix CMatrix::diagonal(const std::vector<cplx>& d) {
  CMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

void SystemParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string(name) + " must be a positive finite number");
    }
  };
  positive(transmit_power, "transmit_power");
  positive(noise_power, "noise_power");
  positive(si_loss_rho, "si_loss_rho");
  positive(soi_pathloss_beta, "soi_pathloss_beta");
  positive(distance_d_pq, "distance_d_pq");
  if (!std::isfinite(pathloss_exponent_alpha)) {
    throw std::invalid_argument("pathloss_exponent_alpha must be finite");
  }
  if (!(region_size_d >= 0.0) || !std::isfinite(region_size_d)) {
    throw std::invalid_argument("region_size_d must be >= 0");
  }
  if (num_si_paths < 1) throw std::invalid_argument("num_si_paths must be >= 1");
  if (num_soi_paths < 1) throw std::invalid_argument("num_soi_paths must be >= 1");
}

double db_to_linear(double value_db) { return std::pow(10.0, value_db / 10.0); }
double linear_to_db(double value_linear) { return 10.0 * std::log10(value_linear); }
double dbm_to_mw(double value_dbm) { return db_to_linear(value_dbm); }
double mw_to_dbm(double value_mw) { return linear_to_db(value_mw); }

double propagation_distance_diff(const Position& pos, const PathAngles& angles) {
  const DirectionCoeffs c = direction_coeffs(angles);
  return pos.x * c.a + pos.y * c.b;
}

std::vector<cplx> field_response(const Position& pos, const std::vector<PathAngles>& angles_list) {
  if (angles_list.empty()) throw std::invalid_argument("field_response: empty angle list");
  std::vector<cplx> v(angles_list.size());
  for (std::size_t l = 0; l < angles_list.size(); ++l) {
    const double phase = kTwoPi * propagation_distance_diff(pos, angles_list[l]);
    v[l] = {std::cos(phase), std::sin(phase)};
  }
  return v;
}

cplx channel_coefficient(const Position& t, const Position& r, const LinkGeometry& link) {
  if (link.sigma.rows() != link.aoas.size() || link.sigma.cols() != link.aods.size()) {
    throw std::invalid_argument("channel_coefficient: sigma shape does not match angle lists");
  }
  const std::vector<cplx> g = field_response(t, link.aods);
  const std::vector<cplx> f = field_response(r, link.aoas);
  cplx h = 0.0;
  for (std::size_t lr = 0; lr < f.size(); ++lr) {
    cplx row = 0.0;
    for (std::size_t lt = 0; lt < g.size(); ++lt) row += link.sigma(lr, lt) * g[lt];
    h += std::conj(f[lr]) * row;
  }
  return h;
}

namespace {

LinkGeometry sample_link(SplitMix64& rng, int num_paths, double path_variance) {
  LinkGeometry link;
  link.aods.resize(num_paths);
  link.aoas.resize(num_paths);
  for (auto& a : link.aods) {
    a.elevation = rng.uniform(-kHalfPi, kHalfPi);
    a.azimuth = rng.uniform(-kHalfPi, kHalfPi);
  }
  for (auto& a : link.aoas) {
    a.elevation = rng.uniform(-kHalfPi, kHalfPi);
    a.azimuth = rng.uniform(-kHalfPi, kHalfPi);
  }
  // CSCG entry: independent zero-mean normals of variance v/2 per component.
  const double scale = std::sqrt(path_variance / 2.0);
  std::vector<cplx> diag(num_paths);
  for (auto& d : diag) d = scale * rng.standard_normal_pair();
  link.sigma = CMatrix::diagonal(diag);
  return link;
}

}  // namespace

ChannelRealization sample_geometry(std::uint64_t seed, const SystemParams& params) {
  params.validate();
  ChannelRealization chan;
  chan.seed = seed;
  for (int i = 0; i < 4; ++i) {
    const Link l = static_cast<Link>(i);
    SplitMix64 rng(substream_seed(seed, static_cast<std::uint64_t>(i)));
    const bool si = is_self_interference(l);
    chan.links[i] = sample_link(rng, si ? params.num_si_paths : params.num_soi_paths,
                                si ? params.si_path_variance() : params.soi_path_variance());
  }
  return chan;
}

}  // namespace maccfd
