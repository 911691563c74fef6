#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "noma/rng.hpp"

namespace noma {

enum class PlacementModel {
  UniformArea,    // uniform over the disk: radius density 2r/R_D^2
  UniformRadius,  // radius uniform on [0, R_D]
};

// Single-cell downlink description: a base station with M antennas serves K
// single-antenna users dropped in a disk of radius R_D. rho is the transmit
// SNR in linear units.
struct SystemConfig {
  int M = 1;
  int K = 1;
  double R_D = 1.0;
  double alpha = 2.0;  // path-loss exponent
  double rho = 1.0;
  std::uint64_t seed = 1;
  PlacementModel placement = PlacementModel::UniformArea;

  // Throws std::domain_error naming the first field out of range.
  void validate() const;
};

// One sampled channel: per-user distances and path losses plus the M x K
// fast-fading matrix and per-link power gains |a|^2 * beta. Entries are laid
// out user-major: index(m, k) = k*M + m, matching the draw order.
struct ChannelRealization {
  int M = 0;
  int K = 0;
  std::vector<double> distances;             // size K
  std::vector<double> beta;                  // size K
  std::vector<std::complex<double>> fading;  // size M*K
  std::vector<double> gains;                 // size M*K

  std::complex<double> a(int m, int k) const { return fading[static_cast<std::size_t>(k) * M + m]; }
  double gain(int m, int k) const { return gains[static_cast<std::size_t>(k) * M + m]; }
};

// 1 / (1 + d^alpha). Throws std::domain_error for d < 0 or alpha <= 0.
double path_loss(double d, double alpha);

// K distances drawn according to config.placement. One uniform draw per user.
std::vector<double> sample_placement(const SystemConfig& config, Rng& rng);

// Fading and gains for given distances. Draw order is fixed: for each user,
// one complex Gaussian per antenna (power then phase), users in index order.
ChannelRealization sample_channel(const SystemConfig& config,
                                  const std::vector<double>& distances, Rng& rng);

// Debug dump, one row per (user, antenna): k,d,beta,m,re_a,im_a,gain.
void write_channel_csv(const ChannelRealization& realization, std::ostream& os);

}  // namespace noma
