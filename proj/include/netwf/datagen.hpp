#pragma once

#include "netwf/filter.hpp"
#include "netwf/network.hpp"

#include <cstdint>
#include <vector>

namespace netwf {

struct SyntheticInstance {
  WeightedNetwork truth;
  WeightedNetwork noisy;
  NoiseModel noise_model;
  std::uint64_t seed = 0;
};

// Undirected two-community toy: off-diagonal weight w_in within each
// half, w_out across, zero diagonal. v must be even and >= 4.
WeightedNetwork two_community_network(Eigen::Index v, double w_in, double w_out);

// Adds i.i.d. Normal(0, sigma^2) to every profile-relevant entry; one
// draw per unordered pair for undirected networks (applied to both
// orientations). Deterministic in (net, sigma, seed).
SyntheticInstance add_gaussian_noise(const WeightedNetwork& net, double sigma,
                                     std::uint64_t seed);

// U diag(s) V^T with seeded random orthonormal factors (QR of Gaussian
// matrices) and the exact requested singular values. Empty list yields
// the zero matrix.
WeightedNetwork planted_lowrank(Eigen::Index v, const std::vector<double>& singular_values,
                                std::uint64_t seed);

}  // namespace netwf
