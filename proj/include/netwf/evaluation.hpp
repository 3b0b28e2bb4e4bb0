#pragma once

#include "netwf/filter.hpp"
#include "netwf/network.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace netwf {

// Unordered node-label pairs from an external benchmark (PPI,
// co-complex, GO co-annotation, ...).
struct BenchmarkPairs {
  std::set<std::pair<std::string, std::string>> pairs;  // stored sorted within pair
  std::string name;

  void insert(const std::string& a, const std::string& b);
};

struct BenchmarkResolution {
  std::set<std::pair<Eigen::Index, Eigen::Index>> pairs;  // i < j
  std::size_t input_count = 0;
  std::size_t dropped_unresolved = 0;
  std::size_t dropped_self = 0;
};

BenchmarkResolution resolve_benchmark(const BenchmarkPairs& benchmark,
                                      const std::vector<std::string>& node_ids);

struct FoldAssignment {
  int k = 0;
  std::uint64_t seed = 0;
  std::map<std::pair<Eigen::Index, Eigen::Index>, int> assignment;  // pair -> fold

  std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs_in_fold(int fold) const;
};

struct EvaluationReport {
  std::map<std::string, double> metrics;
  std::map<std::string, std::vector<double>> breakdown;
  std::map<std::string, double> standard_error;  // sample std / sqrt(n)
};

struct TTestResult {
  double t = 0.0;
  double p_two_sided = 1.0;
  bool defined = true;  // false when differences have zero variance and nonzero mean
};

// Mean squared difference over masked cells. For a symmetric mask this
// equals the unordered-pair mean; empty mask is an argument error.
double mse(const Matrix& X, const Matrix& Y, const BoolMatrix& mask);

// 1 - SS_res/SS_tot over masked cells; nullopt when the reference is
// constant there.
std::optional<double> r_squared(const Matrix& predictions, const Matrix& reference,
                                const BoolMatrix& mask);

// Average precision of recovering benchmark pairs when ranking evaluated
// pairs from the most negative score upward.
double auprc(const WeightedNetwork& scores, const BenchmarkPairs& benchmark);

// Benchmark prevalence among the top_k most negative pairs over its
// background prevalence; nullopt when the background prevalence is zero.
std::optional<double> fold_enrichment(const WeightedNetwork& scores,
                                      const BenchmarkPairs& benchmark,
                                      std::size_t top_k = 1000);

// Seeded uniform partition of the observed unordered pairs into k folds
// of sizes differing by at most one.
FoldAssignment kfold_mask(const WeightedNetwork& net, int k, std::uint64_t seed);

// Baseline prediction for a masked pair: the average of its endpoints'
// mean observed weights (masked entries excluded), falling back to the
// global mean for nodes without any remaining observation.
std::map<std::pair<Eigen::Index, Eigen::Index>, double> mean_impute_baseline(
    const WeightedNetwork& net,
    const std::set<std::pair<Eigen::Index, Eigen::Index>>& masked_pairs);

enum class CvMethod { NetWF, OptimalShrink, MeanImpute };

std::string cv_method_name(CvMethod method);

// K-fold cross validation: per fold, mask the fold's pairs, re-impute,
// run each method, and score MSE on the held-out observed values.
EvaluationReport cross_validate(const WeightedNetwork& net,
                                const std::optional<Matrix>& variances, int k,
                                std::uint64_t seed, const std::vector<CvMethod>& methods,
                                const FilterConfig& cfg = {});

// Classical paired t test with a two-sided p-value from the t
// distribution (regularized incomplete beta).
TTestResult paired_t_test(const std::vector<double>& x, const std::vector<double>& y);

// (count strictly below neg_thresh, count strictly above pos_thresh)
// over the observed profile-relevant entries.
std::pair<std::int64_t, std::int64_t> threshold_counts(const WeightedNetwork& net,
                                                       double neg_thresh,
                                                       double pos_thresh);

// Regularized incomplete beta function I_x(a, b), continued-fraction
// evaluation, absolute error ~1e-14. Exposed for the t-distribution and
// its tests.
double regularized_incomplete_beta(double a, double b, double x);

}  // namespace netwf
