#include "netwf/evaluation.hpp"

#include "netwf/errors.hpp"
#include "netwf/rng.hpp"
#include "netwf/shrinker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace netwf {

namespace {

struct RankedItem {
  Eigen::Index i = 0;
  Eigen::Index j = 0;
  double score = 0.0;
  // Canonical label pair for deterministic tie-breaking.
  const std::string* label_a = nullptr;
  const std::string* label_b = nullptr;
};

// Evaluated pairs ranked ascending by score (most negative first), ties
// broken lexicographically by node labels. Unordered observed pairs for
// undirected networks, ordered for directed.
std::vector<RankedItem> build_ranking(const WeightedNetwork& net) {
  std::vector<RankedItem> items;
  const Eigen::Index v = net.size();
  auto push = [&](Eigen::Index i, Eigen::Index j) {
    if (!net.observed(i, j)) return;
    RankedItem it;
    it.i = i;
    it.j = j;
    it.score = net.weights(i, j);
    const std::string& li = net.node_ids[static_cast<std::size_t>(i)];
    const std::string& lj = net.node_ids[static_cast<std::size_t>(j)];
    it.label_a = li <= lj ? &li : &lj;
    it.label_b = li <= lj ? &lj : &li;
    items.push_back(it);
  };
  if (net.directed) {
    for (Eigen::Index i = 0; i < v; ++i)
      for (Eigen::Index j = 0; j < v; ++j)
        if (i != j) push(i, j);
  } else {
    for (Eigen::Index i = 0; i < v; ++i)
      for (Eigen::Index j = i + 1; j < v; ++j) push(i, j);
  }
  std::sort(items.begin(), items.end(), [](const RankedItem& a, const RankedItem& b) {
    if (a.score != b.score) return a.score < b.score;
    if (*a.label_a != *b.label_a) return *a.label_a < *b.label_a;
    return *a.label_b < *b.label_b;
  });
  return items;
}

bool is_positive(const RankedItem& item, const BenchmarkResolution& res) {
  const auto lo = std::min(item.i, item.j);
  const auto hi = std::max(item.i, item.j);
  return res.pairs.count({lo, hi}) > 0;
}

double sample_std(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(n - 1));
}

// Continued fraction for the incomplete beta function (modified Lentz).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw NumericError("incomplete beta continued fraction did not converge");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw ArgumentError("regularized_incomplete_beta: a, b must be positive");
  if (x < 0.0 || x > 1.0)
    throw ArgumentError("regularized_incomplete_beta: x outside [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                        b * std::log1p(-x) + a * std::log(x)) *
                   betacf(b, a, 1.0 - x) / b;
}

void BenchmarkPairs::insert(const std::string& a, const std::string& b) {
  if (a <= b)
    pairs.emplace(a, b);
  else
    pairs.emplace(b, a);
}

BenchmarkResolution resolve_benchmark(const BenchmarkPairs& benchmark,
                                      const std::vector<std::string>& node_ids) {
  std::map<std::string, Eigen::Index> index;
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(node_ids.size()); ++i)
    index[node_ids[static_cast<std::size_t>(i)]] = i;

  BenchmarkResolution res;
  res.input_count = benchmark.pairs.size();
  for (const auto& [a, b] : benchmark.pairs) {
    if (a == b) {
      ++res.dropped_self;
      continue;
    }
    const auto ia = index.find(a);
    const auto ib = index.find(b);
    if (ia == index.end() || ib == index.end()) {
      ++res.dropped_unresolved;
      continue;
    }
    res.pairs.emplace(std::min(ia->second, ib->second), std::max(ia->second, ib->second));
  }
  return res;
}

std::vector<std::pair<Eigen::Index, Eigen::Index>> FoldAssignment::pairs_in_fold(
    int fold) const {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
  for (const auto& [pair, f] : assignment)
    if (f == fold) out.push_back(pair);
  return out;
}

double mse(const Matrix& X, const Matrix& Y, const BoolMatrix& mask) {
  if (X.rows() != Y.rows() || X.cols() != Y.cols() || mask.rows() != X.rows() ||
      mask.cols() != X.cols())
    throw ArgumentError("mse: shape mismatch");
  double ss = 0.0;
  std::int64_t n = 0;
  for (Eigen::Index j = 0; j < X.cols(); ++j)
    for (Eigen::Index i = 0; i < X.rows(); ++i)
      if (mask(i, j)) {
        const double d = X(i, j) - Y(i, j);
        ss += d * d;
        ++n;
      }
  if (n == 0) throw ArgumentError("mse: empty mask");
  return ss / static_cast<double>(n);
}

std::optional<double> r_squared(const Matrix& predictions, const Matrix& reference,
                                const BoolMatrix& mask) {
  if (predictions.rows() != reference.rows() || predictions.cols() != reference.cols() ||
      mask.rows() != predictions.rows() || mask.cols() != predictions.cols())
    throw ArgumentError("r_squared: shape mismatch");
  double sum = 0.0;
  std::int64_t n = 0;
  for (Eigen::Index j = 0; j < mask.cols(); ++j)
    for (Eigen::Index i = 0; i < mask.rows(); ++i)
      if (mask(i, j)) {
        sum += reference(i, j);
        ++n;
      }
  if (n < 2) throw ArgumentError("r_squared: need at least two masked entries");
  const double mean = sum / static_cast<double>(n);
  double ss_res = 0.0, ss_tot = 0.0;
  for (Eigen::Index j = 0; j < mask.cols(); ++j)
    for (Eigen::Index i = 0; i < mask.rows(); ++i)
      if (mask(i, j)) {
        const double r = predictions(i, j) - reference(i, j);
        const double t = reference(i, j) - mean;
        ss_res += r * r;
        ss_tot += t * t;
      }
  if (ss_tot == 0.0) return std::nullopt;
  return 1.0 - ss_res / ss_tot;
}

double auprc(const WeightedNetwork& scores, const BenchmarkPairs& benchmark) {
  const auto res = resolve_benchmark(benchmark, scores.node_ids);
  const auto ranking = build_ranking(scores);
  std::int64_t n_pos = 0;
  for (const auto& item : ranking)
    if (is_positive(item, res)) ++n_pos;
  if (n_pos == 0)
    throw ArgumentError("auprc: benchmark is empty after resolution against the network");

  double ap = 0.0;
  std::int64_t hits = 0;
  for (std::size_t rank = 0; rank < ranking.size(); ++rank) {
    if (is_positive(ranking[rank], res)) {
      ++hits;
      ap += static_cast<double>(hits) / static_cast<double>(rank + 1);
    }
  }
  return ap / static_cast<double>(n_pos);
}

std::optional<double> fold_enrichment(const WeightedNetwork& scores,
                                      const BenchmarkPairs& benchmark,
                                      std::size_t top_k) {
  if (top_k == 0) throw ArgumentError("fold_enrichment: top_k must be positive");
  const auto res = resolve_benchmark(benchmark, scores.node_ids);
  const auto ranking = build_ranking(scores);
  if (ranking.size() < top_k)
    throw ArgumentError("fold_enrichment: fewer ranked pairs than top_k");

  std::int64_t n_pos = 0;
  for (const auto& item : ranking)
    if (is_positive(item, res)) ++n_pos;
  if (n_pos == 0) return std::nullopt;

  std::int64_t hits_top = 0;
  for (std::size_t rank = 0; rank < top_k; ++rank)
    if (is_positive(ranking[rank], res)) ++hits_top;

  const double top_fraction =
      static_cast<double>(hits_top) / static_cast<double>(top_k);
  const double background =
      static_cast<double>(n_pos) / static_cast<double>(ranking.size());
  return top_fraction / background;
}

FoldAssignment kfold_mask(const WeightedNetwork& net, int k, std::uint64_t seed) {
  if (k <= 0) throw ArgumentError("kfold_mask: k must be positive");
  std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
  const Eigen::Index v = net.size();
  for (Eigen::Index i = 0; i < v; ++i)
    for (Eigen::Index j = i + 1; j < v; ++j)
      if (net.observed(i, j) || net.observed(j, i)) pairs.emplace_back(i, j);
  if (pairs.empty()) throw ArgumentError("kfold_mask: no observed pairs");
  if (static_cast<std::size_t>(k) > pairs.size())
    throw ArgumentError("kfold_mask: k exceeds the observed pair count");

  SeededRng rng(seed);
  for (std::size_t i = pairs.size() - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next_below(i + 1));
    std::swap(pairs[i], pairs[j]);
  }

  FoldAssignment folds;
  folds.k = k;
  folds.seed = seed;
  for (std::size_t p = 0; p < pairs.size(); ++p)
    folds.assignment[pairs[p]] = static_cast<int>(p % static_cast<std::size_t>(k));
  return folds;
}

std::map<std::pair<Eigen::Index, Eigen::Index>, double> mean_impute_baseline(
    const WeightedNetwork& net,
    const std::set<std::pair<Eigen::Index, Eigen::Index>>& masked_pairs) {
  const Eigen::Index v = net.size();
  auto is_masked = [&](Eigen::Index i, Eigen::Index j) {
    return masked_pairs.count({std::min(i, j), std::max(i, j)}) > 0;
  };

  Vector node_sum = Vector::Zero(v);
  Eigen::VectorXi node_count = Eigen::VectorXi::Zero(v);
  double global_sum = 0.0;
  std::int64_t global_count = 0;
  for (Eigen::Index i = 0; i < v; ++i) {
    for (Eigen::Index j = 0; j < v; ++j) {
      if (i == j || !net.observed(i, j) || is_masked(i, j)) continue;
      node_sum(i) += net.weights(i, j);
      node_count(i) += 1;
      global_sum += net.weights(i, j);
      ++global_count;
    }
  }
  const double global_mean =
      global_count > 0 ? global_sum / static_cast<double>(global_count) : 0.0;
  auto node_mean = [&](Eigen::Index i) {
    return node_count(i) > 0 ? node_sum(i) / node_count(i) : global_mean;
  };

  std::map<std::pair<Eigen::Index, Eigen::Index>, double> predictions;
  for (const auto& [i, j] : masked_pairs)
    predictions[{i, j}] = 0.5 * (node_mean(i) + node_mean(j));
  return predictions;
}

std::string cv_method_name(CvMethod method) {
  switch (method) {
    case CvMethod::NetWF: return "netwf";
    case CvMethod::OptimalShrink: return "os";
    case CvMethod::MeanImpute: return "mean_impute";
  }
  return "unknown";
}

EvaluationReport cross_validate(const WeightedNetwork& net,
                                const std::optional<Matrix>& variances, int k,
                                std::uint64_t seed, const std::vector<CvMethod>& methods,
                                const FilterConfig& cfg) {
  net.validate();
  if (methods.empty()) throw ArgumentError("cross_validate: no methods requested");
  const FoldAssignment folds = kfold_mask(net, k, seed);

  EvaluationReport report;
  for (const auto method : methods) report.breakdown[cv_method_name(method) + "_mse"];

  for (int fold = 0; fold < k; ++fold) {
    const auto fold_pairs = folds.pairs_in_fold(fold);
    std::set<std::pair<Eigen::Index, Eigen::Index>> masked(fold_pairs.begin(),
                                                           fold_pairs.end());
    WeightedNetwork masked_net = net;
    for (const auto& [i, j] : fold_pairs) {
      masked_net.observed(i, j) = false;
      masked_net.observed(j, i) = false;
    }

    // Methods that need a complete matrix run on the re-imputed network.
    WeightedNetwork filled;
    std::optional<Matrix> filled_var;
    const bool needs_imputation =
        std::any_of(methods.begin(), methods.end(),
                    [](CvMethod m) { return m != CvMethod::MeanImpute; });
    if (needs_imputation) {
      std::optional<BoolMatrix> var_obs;
      if (variances) {
        BoolMatrix vm(net.size(), net.size());
        for (Eigen::Index j = 0; j < net.size(); ++j)
          for (Eigen::Index i = 0; i < net.size(); ++i)
            vm(i, j) = std::isfinite((*variances)(i, j));
        for (const auto& [i, j] : fold_pairs) {
          vm(i, j) = false;
          vm(j, i) = false;
        }
        var_obs = std::move(vm);
      }
      auto imputed = impute_missing(masked_net, variances, var_obs);
      filled = std::move(imputed.first);
      filled_var = std::move(imputed.second);
    }

    auto held_out_mse = [&](auto&& predict) {
      double ss = 0.0;
      for (const auto& [i, j] : fold_pairs) {
        const double truth =
            net.observed(i, j) ? net.weights(i, j) : net.weights(j, i);
        const double d = predict(i, j) - truth;
        ss += d * d;
      }
      return ss / static_cast<double>(fold_pairs.size());
    };

    for (const auto method : methods) {
      double fold_mse = 0.0;
      if (method == CvMethod::NetWF) {
        const NoiseModel noise = filled_var
                                     ? NoiseModel{DiagonalNoise{*filled_var}}
                                     : NoiseModel{naive_noise_guess(filled)};
        const DenoiseResult result = netwf(filled, noise, cfg);
        fold_mse = held_out_mse(
            [&](Eigen::Index i, Eigen::Index j) { return result.denoised(i, j); });
      } else if (method == CvMethod::OptimalShrink) {
        const NoiseModel noise = filled_var
                                     ? NoiseModel{DiagonalNoise{*filled_var}}
                                     : NoiseModel{naive_noise_guess(filled)};
        const double sigma2 = homogenize_noise(noise).sigma2;
        const auto [denoised, shrink_report] = optimal_shrink(filled, sigma2);
        fold_mse = held_out_mse(
            [&](Eigen::Index i, Eigen::Index j) { return denoised.weights(i, j); });
      } else {
        const auto predictions = mean_impute_baseline(masked_net, masked);
        fold_mse = held_out_mse(
            [&](Eigen::Index i, Eigen::Index j) { return predictions.at({i, j}); });
      }
      report.breakdown[cv_method_name(method) + "_mse"].push_back(fold_mse);
    }
  }

  for (const auto method : methods) {
    const std::string key = cv_method_name(method) + "_mse";
    const auto& per_fold = report.breakdown[key];
    double mean = 0.0;
    for (double x : per_fold) mean += x;
    mean /= static_cast<double>(per_fold.size());
    report.metrics[key + "_mean"] = mean;
    report.standard_error[key] =
        sample_std(per_fold) / std::sqrt(static_cast<double>(per_fold.size()));
  }
  return report;
}

TTestResult paired_t_test(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw ArgumentError("paired_t_test: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw ArgumentError("paired_t_test: need at least two pairs");

  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = x[i] - y[i];
  double mean = 0.0;
  for (double v : d) mean += v;
  mean /= static_cast<double>(n);
  const double sd = sample_std(d);

  TTestResult result;
  if (sd == 0.0) {
    if (mean == 0.0) {
      result.t = 0.0;
      result.p_two_sided = 1.0;
      result.defined = true;
    } else {
      result.t = mean > 0 ? std::numeric_limits<double>::infinity()
                          : -std::numeric_limits<double>::infinity();
      result.p_two_sided = 0.0;
      result.defined = false;
    }
    return result;
  }

  const double t = mean / (sd / std::sqrt(static_cast<double>(n)));
  const double dof = static_cast<double>(n - 1);
  result.t = t;
  result.p_two_sided = regularized_incomplete_beta(dof / 2.0, 0.5, dof / (dof + t * t));
  return result;
}

std::pair<std::int64_t, std::int64_t> threshold_counts(const WeightedNetwork& net,
                                                       double neg_thresh,
                                                       double pos_thresh) {
  std::int64_t negatives = 0, positives = 0;
  for (const auto& [i, j] : profile_relevant_cells(net)) {
    if (!net.observed(i, j)) continue;
    if (net.weights(i, j) < neg_thresh) ++negatives;
    if (net.weights(i, j) > pos_thresh) ++positives;
  }
  return {negatives, positives};
}

}  // namespace netwf
