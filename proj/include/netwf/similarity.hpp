#pragma once

#include "netwf/network.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace netwf {

enum class SimilarityKind { Undirected, Source, Target };

// Node-pair profile similarity network (PSN). Symmetric by construction,
// entries in [-1, 1], diagonal fixed at 1.
struct ProfileSimilarity {
  Matrix matrix;
  SimilarityKind kind = SimilarityKind::Undirected;
  std::vector<std::string> node_ids;

  Eigen::Index size() const { return matrix.rows(); }
  static ProfileSimilarity identity(std::vector<std::string> ids, SimilarityKind kind);
};

// Options shared by the PSN builders. exclude_mutual_pair drops the
// (i,j)/(j,i) weights from the profiles when correlating nodes i and j,
// in addition to the always-dropped self-weights.
struct SimilarityOptions {
  bool exclude_mutual_pair = true;
};

// Pearson correlation; constant input on either side yields 0.
double pearson(std::span<const double> x, std::span<const double> y);

// Correlates outgoing connection profiles (rows). Directed input only.
ProfileSimilarity source_profile_similarity(const WeightedNetwork& net,
                                            const SimilarityOptions& opts = {});

// Correlates incoming connection profiles (columns). Directed input only.
ProfileSimilarity target_profile_similarity(const WeightedNetwork& net,
                                            const SimilarityOptions& opts = {});

// Correlates attached-edge profiles of a symmetric network.
ProfileSimilarity undirected_profile_similarity(const WeightedNetwork& net,
                                                const SimilarityOptions& opts = {});

// Similarity between directed edges (A->B) and (C->D):
// s_source(A,C) * s_target(B,D).
double directed_edge_similarity(const ProfileSimilarity& s_src,
                                const ProfileSimilarity& s_tgt,
                                const std::pair<std::string, std::string>& e1,
                                const std::pair<std::string, std::string>& e2);

// Similarity between undirected edges {A,B} and {C,D}: the average over
// both endpoint matchings, (s(A,C)s(B,D) + s(A,D)s(B,C)) / 2.
double undirected_edge_similarity(const ProfileSimilarity& s,
                                  const std::pair<std::string, std::string>& e1,
                                  const std::pair<std::string, std::string>& e2);

// Off-diagonal unordered pairs (i < j) with similarity strictly above cutoff.
std::vector<std::pair<Eigen::Index, Eigen::Index>> psn_threshold(
    const ProfileSimilarity& s, double cutoff);

}  // namespace netwf
