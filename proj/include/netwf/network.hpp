#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

namespace netwf {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

// Node-labeled weighted network. Weights may be signed; entries whose
// observed flag is false are treated as missing (their stored value is
// meaningless). Undirected networks keep both weights and mask symmetric.
struct WeightedNetwork {
  std::vector<std::string> node_ids;
  Matrix weights;
  BoolMatrix observed;
  bool directed = false;

  WeightedNetwork() = default;
  WeightedNetwork(std::vector<std::string> ids, Matrix w, BoolMatrix mask, bool dir);

  // Convenience: fully observed network from a weight matrix.
  static WeightedNetwork dense(std::vector<std::string> ids, Matrix w, bool dir);

  Eigen::Index size() const { return weights.rows(); }
  bool fully_observed() const;

  // Index of a node label; throws ArgumentError if unknown.
  Eigen::Index index_of(const std::string& label) const;

  // Checks structural invariants (shapes, symmetry for undirected,
  // finite observed weights); throws ArgumentError on violation.
  void validate() const;
};

// Default labels "n0", "n1", ... for synthetic networks.
std::vector<std::string> default_node_ids(Eigen::Index v);

// The entry set over which means/variances/prefactors are computed:
// all off-diagonal entries, with unordered pairs counted once for
// undirected networks. Returns the list of (row, col) cells.
std::vector<std::pair<Eigen::Index, Eigen::Index>> profile_relevant_cells(
    const WeightedNetwork& net);

// Mean and population variance of the weights over the profile-relevant
// entries restricted to observed cells. Throws DataError when no
// observed entry exists.
std::pair<double, double> observed_offdiag_mean_variance(const WeightedNetwork& net);

}  // namespace netwf
