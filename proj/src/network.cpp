#include "netwf/network.hpp"

#include "netwf/errors.hpp"

#include <cmath>
#include <set>
#include <utility>

namespace netwf {

WeightedNetwork::WeightedNetwork(std::vector<std::string> ids, Matrix w, BoolMatrix mask,
                                 bool dir)
    : node_ids(std::move(ids)),
      weights(std::move(w)),
      observed(std::move(mask)),
      directed(dir) {}

WeightedNetwork WeightedNetwork::dense(std::vector<std::string> ids, Matrix w, bool dir) {
  const Eigen::Index v = w.rows();
  return WeightedNetwork(std::move(ids), std::move(w), BoolMatrix::Constant(v, v, true),
                         dir);
}

bool WeightedNetwork::fully_observed() const { return observed.all(); }

Eigen::Index WeightedNetwork::index_of(const std::string& label) const {
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(node_ids.size()); ++i) {
    if (node_ids[static_cast<std::size_t>(i)] == label) return i;
  }
  throw ArgumentError("unknown node label: " + label);
}

void WeightedNetwork::validate() const {
  const Eigen::Index v = weights.rows();
  if (weights.cols() != v) throw ArgumentError("weight matrix must be square");
  if (observed.rows() != v || observed.cols() != v)
    throw ArgumentError("observed mask shape must match weights");
  if (static_cast<Eigen::Index>(node_ids.size()) != v)
    throw ArgumentError("node_ids length must match matrix dimension");
  std::set<std::string> seen(node_ids.begin(), node_ids.end());
  if (static_cast<Eigen::Index>(seen.size()) != v)
    throw ArgumentError("duplicate node labels");
  for (Eigen::Index i = 0; i < v; ++i) {
    for (Eigen::Index j = 0; j < v; ++j) {
      if (observed(i, j) && !std::isfinite(weights(i, j)))
        throw ArgumentError("observed weight is not finite");
      if (!directed) {
        if (observed(i, j) != observed(j, i))
          throw ArgumentError("undirected network has asymmetric observed mask");
        if (observed(i, j) && weights(i, j) != weights(j, i))
          throw ArgumentError("undirected network has asymmetric weights");
      }
    }
  }
}

std::vector<std::string> default_node_ids(Eigen::Index v) {
  std::vector<std::string> ids;
  ids.reserve(static_cast<std::size_t>(v));
  for (Eigen::Index i = 0; i < v; ++i) ids.push_back("n" + std::to_string(i));
  return ids;
}

std::vector<std::pair<Eigen::Index, Eigen::Index>> profile_relevant_cells(
    const WeightedNetwork& net) {
  const Eigen::Index v = net.size();
  std::vector<std::pair<Eigen::Index, Eigen::Index>> cells;
  if (net.directed) {
    cells.reserve(static_cast<std::size_t>(v * (v - 1)));
    for (Eigen::Index i = 0; i < v; ++i)
      for (Eigen::Index j = 0; j < v; ++j)
        if (i != j) cells.emplace_back(i, j);
  } else {
    cells.reserve(static_cast<std::size_t>(v * (v - 1) / 2));
    for (Eigen::Index i = 0; i < v; ++i)
      for (Eigen::Index j = i + 1; j < v; ++j) cells.emplace_back(i, j);
  }
  return cells;
}

std::pair<double, double> observed_offdiag_mean_variance(const WeightedNetwork& net) {
  double sum = 0.0;
  std::int64_t n = 0;
  for (const auto& [i, j] : profile_relevant_cells(net)) {
    if (!net.observed(i, j)) continue;
    sum += net.weights(i, j);
    ++n;
  }
  if (n == 0) throw DataError("network has no observed off-diagonal entries");
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (const auto& [i, j] : profile_relevant_cells(net)) {
    if (!net.observed(i, j)) continue;
    const double d = net.weights(i, j) - mean;
    ss += d * d;
  }
  return {mean, ss / static_cast<double>(n)};
}

}  // namespace netwf
