#include "netwf/datagen.hpp"

#include "netwf/errors.hpp"
#include "netwf/rng.hpp"

#include <Eigen/QR>

namespace netwf {

WeightedNetwork two_community_network(Eigen::Index v, double w_in, double w_out) {
  if (v < 4 || v % 2 != 0)
    throw ArgumentError("two_community_network: v must be even and >= 4");
  Matrix w(v, v);
  const Eigen::Index half = v / 2;
  for (Eigen::Index i = 0; i < v; ++i)
    for (Eigen::Index j = 0; j < v; ++j)
      w(i, j) = (i / half == j / half) ? w_in : w_out;
  w.diagonal().setZero();
  return WeightedNetwork::dense(default_node_ids(v), std::move(w), /*dir=*/false);
}

SyntheticInstance add_gaussian_noise(const WeightedNetwork& net, double sigma,
                                     std::uint64_t seed) {
  if (sigma < 0.0) throw ArgumentError("add_gaussian_noise: sigma must be non-negative");
  net.validate();
  SeededRng rng(seed);
  WeightedNetwork noisy = net;
  const Eigen::Index v = net.size();
  if (net.directed) {
    for (Eigen::Index i = 0; i < v; ++i)
      for (Eigen::Index j = 0; j < v; ++j)
        if (i != j) noisy.weights(i, j) += sigma * rng.next_normal();
  } else {
    for (Eigen::Index i = 0; i < v; ++i)
      for (Eigen::Index j = i + 1; j < v; ++j) {
        const double draw = sigma * rng.next_normal();
        noisy.weights(i, j) += draw;
        noisy.weights(j, i) = noisy.weights(i, j);
      }
  }
  return SyntheticInstance{net, std::move(noisy), HomogeneousNoise{sigma * sigma}, seed};
}

WeightedNetwork planted_lowrank(Eigen::Index v, const std::vector<double>& singular_values,
                                std::uint64_t seed) {
  const Eigen::Index r = static_cast<Eigen::Index>(singular_values.size());
  if (v <= 0) throw ArgumentError("planted_lowrank: v must be positive");
  if (r > v) throw ArgumentError("planted_lowrank: rank exceeds dimension");
  for (std::size_t i = 1; i < singular_values.size(); ++i)
    if (singular_values[i] > singular_values[i - 1])
      throw ArgumentError("planted_lowrank: singular values must be descending");
  for (double s : singular_values)
    if (s <= 0.0) throw ArgumentError("planted_lowrank: singular values must be positive");

  Matrix w = Matrix::Zero(v, v);
  if (r > 0) {
    SeededRng rng(seed);
    Matrix gu(v, r), gv(v, r);
    for (Eigen::Index j = 0; j < r; ++j)
      for (Eigen::Index i = 0; i < v; ++i) gu(i, j) = rng.next_normal();
    for (Eigen::Index j = 0; j < r; ++j)
      for (Eigen::Index i = 0; i < v; ++i) gv(i, j) = rng.next_normal();
    const Matrix qu = Eigen::HouseholderQR<Matrix>(gu).householderQ() *
                      Matrix::Identity(v, r);
    const Matrix qv = Eigen::HouseholderQR<Matrix>(gv).householderQ() *
                      Matrix::Identity(v, r);
    Vector s(r);
    for (Eigen::Index i = 0; i < r; ++i)
      s(i) = singular_values[static_cast<std::size_t>(i)];
    w = qu * s.asDiagonal() * qv.transpose();
  }
  return WeightedNetwork::dense(default_node_ids(v), std::move(w), /*dir=*/true);
}

}  // namespace netwf
