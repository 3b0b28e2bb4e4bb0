#include "netwf/similarity.hpp"

#include "netwf/errors.hpp"

#include <algorithm>
#include <cmath>

namespace netwf {

namespace {

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

bool is_constant(const double* x, Eigen::Index n) {
  for (Eigen::Index t = 1; t < n; ++t)
    if (x[t] != x[0]) return false;
  return true;
}

// Pearson over two pre-extracted profiles, two-pass. Constant profiles
// (zero variance) correlate as 0.
double pearson_two_pass(const double* x, const double* y, Eigen::Index n) {
  if (is_constant(x, n) || is_constant(y, n)) return 0.0;
  double mx = 0.0, my = 0.0;
  for (Eigen::Index t = 0; t < n; ++t) {
    mx += x[t];
    my += y[t];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (Eigen::Index t = 0; t < n; ++t) {
    const double dx = x[t] - mx;
    const double dy = y[t] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return clamp_unit(sxy / std::sqrt(sxx * syy));
}

// PSN over row profiles of W: entry (i,j) correlates rows i and j with
// columns {i, j} excluded (only the self-columns when the mutual pair is
// kept). Diagonal is fixed at 1, degenerate off-diagonal entries at 0.
ProfileSimilarity profile_psn(const Matrix& W, std::vector<std::string> ids,
                              SimilarityKind kind, const SimilarityOptions& opts) {
  const Eigen::Index v = W.rows();
  Matrix S = Matrix::Zero(v, v);
  S.diagonal().setOnes();

  std::vector<double> xi(static_cast<std::size_t>(v));
  std::vector<double> yj(static_cast<std::size_t>(v));
  for (Eigen::Index i = 0; i < v; ++i) {
    for (Eigen::Index j = i + 1; j < v; ++j) {
      Eigen::Index n = 0;
      for (Eigen::Index t = 0; t < v; ++t) {
        if (t == i || t == j) continue;
        xi[static_cast<std::size_t>(n)] = W(i, t);
        yj[static_cast<std::size_t>(n)] = W(j, t);
        ++n;
      }
      if (!opts.exclude_mutual_pair) {
        xi[static_cast<std::size_t>(n)] = W(i, j);
        yj[static_cast<std::size_t>(n)] = W(j, i);
        ++n;
      }
      const double r = n >= 2 ? pearson_two_pass(xi.data(), yj.data(), n) : 0.0;
      S(i, j) = r;
      S(j, i) = r;
    }
  }
  return ProfileSimilarity{std::move(S), kind, std::move(ids)};
}

double lookup(const ProfileSimilarity& s, const std::string& a, const std::string& b) {
  Eigen::Index ia = -1, ib = -1;
  for (Eigen::Index t = 0; t < s.size(); ++t) {
    const auto& id = s.node_ids[static_cast<std::size_t>(t)];
    if (id == a) ia = t;
    if (id == b) ib = t;
  }
  if (ia < 0) throw ArgumentError("unknown node label: " + a);
  if (ib < 0) throw ArgumentError("unknown node label: " + b);
  return s.matrix(ia, ib);
}

}  // namespace

ProfileSimilarity ProfileSimilarity::identity(std::vector<std::string> ids,
                                              SimilarityKind kind) {
  const Eigen::Index v = static_cast<Eigen::Index>(ids.size());
  return ProfileSimilarity{Matrix::Identity(v, v), kind, std::move(ids)};
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ArgumentError("pearson: length mismatch");
  if (x.size() < 2) throw ArgumentError("pearson: need at least two samples");
  return pearson_two_pass(x.data(), y.data(), static_cast<Eigen::Index>(x.size()));
}

ProfileSimilarity source_profile_similarity(const WeightedNetwork& net,
                                            const SimilarityOptions& opts) {
  if (!net.directed)
    throw ArgumentError("source_profile_similarity: network must be directed");
  if (!net.fully_observed())
    throw ArgumentError("source_profile_similarity: impute missing entries first");
  return profile_psn(net.weights, net.node_ids, SimilarityKind::Source, opts);
}

ProfileSimilarity target_profile_similarity(const WeightedNetwork& net,
                                            const SimilarityOptions& opts) {
  if (!net.directed)
    throw ArgumentError("target_profile_similarity: network must be directed");
  if (!net.fully_observed())
    throw ArgumentError("target_profile_similarity: impute missing entries first");
  const Matrix wt = net.weights.transpose();
  return profile_psn(wt, net.node_ids, SimilarityKind::Target, opts);
}

ProfileSimilarity undirected_profile_similarity(const WeightedNetwork& net,
                                                const SimilarityOptions& opts) {
  if (net.directed)
    throw ArgumentError("undirected_profile_similarity: network must be undirected");
  if (!net.fully_observed())
    throw ArgumentError("undirected_profile_similarity: impute missing entries first");
  return profile_psn(net.weights, net.node_ids, SimilarityKind::Undirected, opts);
}

double directed_edge_similarity(const ProfileSimilarity& s_src,
                                const ProfileSimilarity& s_tgt,
                                const std::pair<std::string, std::string>& e1,
                                const std::pair<std::string, std::string>& e2) {
  if (s_src.kind != SimilarityKind::Source || s_tgt.kind != SimilarityKind::Target)
    throw ArgumentError("directed_edge_similarity: expects source and target PSNs");
  if (s_src.node_ids != s_tgt.node_ids)
    throw ArgumentError("directed_edge_similarity: PSN node sets differ");
  return lookup(s_src, e1.first, e2.first) * lookup(s_tgt, e1.second, e2.second);
}

double undirected_edge_similarity(const ProfileSimilarity& s,
                                  const std::pair<std::string, std::string>& e1,
                                  const std::pair<std::string, std::string>& e2) {
  if (s.kind != SimilarityKind::Undirected)
    throw ArgumentError("undirected_edge_similarity: expects an undirected PSN");
  const double ac = lookup(s, e1.first, e2.first);
  const double bd = lookup(s, e1.second, e2.second);
  const double ad = lookup(s, e1.first, e2.second);
  const double bc = lookup(s, e1.second, e2.first);
  return 0.5 * (ac * bd + ad * bc);
}

std::vector<std::pair<Eigen::Index, Eigen::Index>> psn_threshold(
    const ProfileSimilarity& s, double cutoff) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> edges;
  const Eigen::Index v = s.size();
  for (Eigen::Index i = 0; i < v; ++i)
    for (Eigen::Index j = i + 1; j < v; ++j)
      if (s.matrix(i, j) > cutoff) edges.emplace_back(i, j);
  return edges;
}

}  // namespace netwf
