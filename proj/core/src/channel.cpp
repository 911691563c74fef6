#include "noma/channel.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "noma/format.hpp"

namespace noma {

void SystemConfig::validate() const {
  if (M < 1) throw std::domain_error("system config: M must be >= 1, got " + std::to_string(M));
  if (K < 1) throw std::domain_error("system config: K must be >= 1, got " + std::to_string(K));
  if (!(R_D > 0.0)) throw std::domain_error("system config: R_D must be positive, got " + fmt_g17(R_D));
  if (!(alpha > 0.0)) throw std::domain_error("system config: alpha must be positive, got " + fmt_g17(alpha));
  if (!(rho > 0.0)) throw std::domain_error("system config: rho must be positive, got " + fmt_g17(rho));
}

double path_loss(double d, double alpha) {
  if (!(d >= 0.0)) throw std::domain_error("path_loss: distance must be >= 0, got " + fmt_g17(d));
  if (!(alpha > 0.0)) throw std::domain_error("path_loss: alpha must be positive, got " + fmt_g17(alpha));
  return 1.0 / (1.0 + std::pow(d, alpha));
}

std::vector<double> sample_placement(const SystemConfig& config, Rng& rng) {
  config.validate();
  std::vector<double> distances(static_cast<std::size_t>(config.K));
  for (auto& d : distances) {
    const double u = rng.uniform01();
    d = config.placement == PlacementModel::UniformArea ? config.R_D * std::sqrt(u)
                                                        : config.R_D * u;
  }
  return distances;
}

ChannelRealization sample_channel(const SystemConfig& config,
                                  const std::vector<double>& distances, Rng& rng) {
  config.validate();
  if (distances.size() != static_cast<std::size_t>(config.K)) {
    throw std::domain_error("sample_channel: expected " + std::to_string(config.K) +
                            " distances, got " + std::to_string(distances.size()));
  }
  ChannelRealization out;
  out.M = config.M;
  out.K = config.K;
  out.distances = distances;
  out.beta.resize(distances.size());
  out.fading.resize(static_cast<std::size_t>(config.M) * config.K);
  out.gains.resize(out.fading.size());
  for (int k = 0; k < config.K; ++k) {
    out.beta[k] = path_loss(distances[k], config.alpha);
    for (int m = 0; m < config.M; ++m) {
      const auto a = rng.complex_gaussian();
      const std::size_t idx = static_cast<std::size_t>(k) * config.M + m;
      out.fading[idx] = a;
      out.gains[idx] = std::norm(a) * out.beta[k];
    }
  }
  return out;
}

void write_channel_csv(const ChannelRealization& realization, std::ostream& os) {
  os << "k,d,beta,m,re_a,im_a,gain\n";
  for (int k = 0; k < realization.K; ++k) {
    for (int m = 0; m < realization.M; ++m) {
      const auto a = realization.a(m, k);
      os << k << ',' << fmt_g17(realization.distances[k]) << ',' << fmt_g17(realization.beta[k])
         << ',' << m << ',' << fmt_g17(a.real()) << ',' << fmt_g17(a.imag()) << ','
         << fmt_g17(realization.gain(m, k)) << '\n';
    }
  }
}

}  // namespace noma
