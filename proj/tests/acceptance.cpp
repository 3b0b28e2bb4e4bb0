// Acceptance suite. Criteria 1-7 are self-contained properties and gate
// the exit status. Criteria 8-12 reproduce published-scale numbers and
// need externally prepared yeast/Enron exports; they are skipped when
// NETWF_DATA_DIR (default ./data) does not hold the files.

#include "netwf/datagen.hpp"
#include "netwf/evaluation.hpp"
#include "netwf/filter.hpp"
#include "netwf/io.hpp"
#include "netwf/rng.hpp"
#include "netwf/shrinker.hpp"

#include "test_support.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

using namespace netwf;
using namespace netwf::testing;

namespace {

struct Outcome {
  bool passed = false;
  bool skipped = false;
  std::string detail;
};

Outcome pass(std::string detail) { return {true, false, std::move(detail)}; }
Outcome fail(std::string detail) { return {false, false, std::move(detail)}; }
Outcome skip(std::string detail) { return {false, true, std::move(detail)}; }

BoolMatrix offdiag_mask(Eigen::Index v) {
  BoolMatrix m = BoolMatrix::Constant(v, v, true);
  m.diagonal().setConstant(false);
  return m;
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

// --- Criterion 1: scalar Wiener limit ----------------------------------

Outcome criterion_scalar_wiener() {
  double worst = 0.0;
  for (const std::uint64_t seed : {1u, 2u, 3u}) {
    SeededRng rng(seed);
    const auto net = random_undirected_network(6, rng);
    const auto cov = build_signal_covariance(
        {ProfileSimilarity::identity(net.node_ids, SimilarityKind::Undirected)}, net);
    const double sigma_u2 = cov.prefactor;
    for (const double sigma_n2 : {0.25, 1.0}) {
      FilterConfig cfg;
      cfg.epsilon = 1e-14;
      cfg.cg_tol = 1e-12;
      const double gain = sigma_u2 / (sigma_u2 + sigma_n2);
      const auto [centered, mean] = demean(net);
      const Matrix expected = (gain * centered.weights).array() + mean;
      const double scale = expected.cwiseAbs().maxCoeff();
      for (const FilterMode mode : {FilterMode::Direct, FilterMode::Cg}) {
        const auto result =
            denoise_with_covariance(cov, net, HomogeneousNoise{sigma_n2}, cfg, mode);
        worst = std::max(worst,
                         (result.denoised - expected).cwiseAbs().maxCoeff() / scale);
      }
    }
  }
  std::ostringstream os;
  os << "max relative error " << worst << " (limit 1e-8)";
  return worst <= 1e-8 ? pass(os.str()) : fail(os.str());
}

// --- Criterion 2: direct/CG equivalence --------------------------------

NoiseModel acceptance_noise(int kind, const WeightedNetwork& net, SeededRng& rng) {
  const Eigen::Index v = net.size();
  if (kind == 0) return HomogeneousNoise{0.1 + rng.next_uniform()};
  if (kind == 1) {
    Matrix variances(v, v);
    for (Eigen::Index i = 0; i < v; ++i)
      for (Eigen::Index j = i; j < v; ++j) {
        variances(i, j) = 0.05 + rng.next_uniform();
        variances(j, i) = variances(i, j);
      }
    return DiagonalNoise{variances};
  }
  std::vector<WeightedNetwork> snaps;
  for (int t = 0; t < 4; ++t) {
    auto s = random_undirected_network(v, rng);
    s.node_ids = net.node_ids;
    snaps.push_back(std::move(s));
  }
  return estimate_ensemble_noise(snaps).ensemble;
}

Outcome criterion_direct_cg_equivalence() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SeededRng rng(9000 + seed);
    const Eigen::Index v = 5 + static_cast<Eigen::Index>(seed % 6);  // 5..10
    const auto net = random_undirected_network(v, rng);
    for (int kind = 0; kind < 3; ++kind) {
      const NoiseModel noise = acceptance_noise(kind, net, rng);
      FilterConfig cfg;
      cfg.cg_tol = 1e-10;
      const auto direct = netwf_direct(net, noise, cfg);
      const auto cg = netwf_cg(net, noise, cfg);
      if (!cg.cg_report || !cg.cg_report->converged)
        return fail("CG failed to converge at seed " + std::to_string(seed));
      worst = std::max(worst, (direct.denoised - cg.denoised).cwiseAbs().maxCoeff());
    }
  }
  std::ostringstream os;
  os << "20 instances x 3 noise kinds, max |direct - cg| = " << worst
     << " (limit 1e-6)";
  return worst <= 1e-6 ? pass(os.str()) : fail(os.str());
}

// --- Criterion 3: Kronecker-oracle equivalence --------------------------

Outcome criterion_kronecker_oracle() {
  double worst = 0.0;
  for (Eigen::Index v = 2; v <= 6; ++v) {
    SeededRng rng(static_cast<std::uint64_t>(300 + v));

    const auto undirected = random_undirected_network(v, rng);
    const auto psn = undirected_profile_similarity(undirected);
    const auto cov_u = build_signal_covariance({psn}, undirected);
    const Matrix oracle_u =
        explicit_undirected_covariance(cov_u.left_action, cov_u.prefactor);
    const Matrix general = random_matrix(v, v, rng);
    const Matrix symmetric = (0.5 * (general + general.transpose())).eval();
    for (const Matrix& x : {symmetric, general}) {
      const Vector diff = vec(cov_u.apply(x)) - oracle_u * vec(x);
      worst = std::max(worst, diff.cwiseAbs().maxCoeff());
    }

    const auto directed = random_directed_network(v, rng);
    const auto src = source_profile_similarity(directed);
    const auto tgt = target_profile_similarity(directed);
    const auto cov_d = build_signal_covariance({src, tgt}, directed);
    const Matrix oracle_d =
        explicit_directed_covariance(cov_d.left_action, cov_d.right_action,
                                     cov_d.prefactor);
    const Matrix x = random_matrix(v, v, rng);
    const Vector diff = vec(cov_d.apply(x)) - oracle_d * vec(x);
    worst = std::max(worst, diff.cwiseAbs().maxCoeff());
  }
  std::ostringstream os;
  os << "v <= 6, max |matrix-free - explicit| = " << worst << " (limit 1e-12)";
  return worst <= 1e-12 ? pass(os.str()) : fail(os.str());
}

// --- Criterion 4: toy-community denoising --------------------------------

Outcome criterion_toy_community() {
  const auto truth = two_community_network(40, 1.0, 0.1);
  const BoolMatrix mask = offdiag_mask(40);
  std::ostringstream os;
  for (const double sigma : {0.3, 0.5}) {
    int improved = 0;
    std::vector<double> reductions;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto instance = add_gaussian_noise(truth, sigma, 4000 + seed);
      const auto result = netwf_cg(instance.noisy, instance.noise_model);
      const double mse_noisy = mse(instance.noisy.weights, truth.weights, mask);
      const double mse_denoised = mse(result.denoised, truth.weights, mask);
      if (mse_denoised < mse_noisy) ++improved;
      reductions.push_back(1.0 - mse_denoised / mse_noisy);
    }
    const double med = median(reductions);
    os << "sigma=" << sigma << ": improved " << improved << "/20, median reduction "
       << med * 100.0 << "%; ";
    if (improved < 19 || med < 0.30) return fail(os.str());
  }
  return pass(os.str());
}

// --- Criterion 5: optimal shrinker ---------------------------------------

Outcome criterion_optimal_shrinker() {
  if (shrink_singular_value(5.0, 4, 1.0) != 3.0 ||
      shrink_singular_value(4.0, 4, 1.0) != 0.0 ||
      shrink_singular_value(3.9, 4, 1.0) != 0.0)
    return fail("shrink rule arithmetic cases (v=4, sigma=1) incorrect");

  const BoolMatrix mask = offdiag_mask(20);
  int improved = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto truth = planted_lowrank(20, {6.0, 4.0}, 5000 + seed);
    const auto instance = add_gaussian_noise(truth, 0.3, 6000 + seed);
    const auto [denoised, report] = optimal_shrink(instance.noisy, 0.09);
    const double mse_raw = mse(instance.noisy.weights, truth.weights, mask);
    const double mse_shrunk = mse(denoised.weights, truth.weights, mask);
    if (mse_shrunk < mse_raw) ++improved;
  }
  std::ostringstream os;
  os << "rule arithmetic exact; planted rank-2 improved " << improved << "/20";
  return improved >= 19 ? pass(os.str()) : fail(os.str());
}

// --- Criterion 6: Wiener local optimality --------------------------------

Outcome criterion_local_optimality() {
  const Eigen::Index k = 36;  // v = 6
  SeededRng rng(777);

  const Matrix b = random_matrix(k, k, rng);
  const Matrix c_u = b * b.transpose() / static_cast<double>(k) +
                     0.1 * Matrix::Identity(k, k);
  Matrix c_n = Matrix::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) c_n(i, i) = 0.05 + 0.1 * rng.next_uniform();

  const Matrix g = (c_u + c_n).ldlt().solve(c_u).transpose();  // C_u (C_u + C_n)^-1
  const Matrix l_u = Eigen::LLT<Matrix>(c_u).matrixL();
  Vector noise_std(k);
  for (Eigen::Index i = 0; i < k; ++i) noise_std(i) = std::sqrt(c_n(i, i));

  constexpr int kDraws = 2000;
  Matrix signals(k, kDraws), observations(k, kDraws);
  for (int t = 0; t < kDraws; ++t) {
    Vector z(k), w(k);
    for (Eigen::Index i = 0; i < k; ++i) z(i) = rng.next_normal();
    for (Eigen::Index i = 0; i < k; ++i) w(i) = rng.next_normal();
    signals.col(t) = l_u * z;
    observations.col(t) = signals.col(t) + noise_std.cwiseProduct(w);
  }
  const auto empirical_mse = [&](const Matrix& op) {
    return (op * observations - signals).squaredNorm() / kDraws;
  };
  const double mse_wiener = empirical_mse(g);

  double smallest_gap = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix r = random_matrix(k, k, rng);
    const Matrix perturbed = g + 0.05 * (g.norm() / r.norm()) * r;
    smallest_gap = std::min(smallest_gap, empirical_mse(perturbed) - mse_wiener);
  }
  std::ostringstream os;
  os << "Wiener MSE " << mse_wiener << ", smallest perturbed-minus-Wiener gap "
     << smallest_gap << " over 50 trials";
  return smallest_gap > 0.0 ? pass(os.str()) : fail(os.str());
}

// --- Criterion 7: evaluation oracles -------------------------------------

double auprc_pr_curve_oracle(const WeightedNetwork& net, const BenchmarkPairs& bench) {
  // Exhaustive PR curve: walk every prefix of the ranking, record
  // (recall, precision) points, and integrate with the step rule.
  struct Item {
    double score;
    std::string a, b;
    bool positive;
  };
  std::vector<Item> items;
  for (Eigen::Index i = 0; i < net.size(); ++i)
    for (Eigen::Index j = i + 1; j < net.size(); ++j) {
      if (!net.observed(i, j)) continue;
      Item it;
      it.score = net.weights(i, j);
      it.a = std::min(net.node_ids[static_cast<std::size_t>(i)],
                      net.node_ids[static_cast<std::size_t>(j)]);
      it.b = std::max(net.node_ids[static_cast<std::size_t>(i)],
                      net.node_ids[static_cast<std::size_t>(j)]);
      it.positive = bench.pairs.count({it.a, it.b}) > 0;
      items.push_back(std::move(it));
    }
  std::stable_sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
    return std::tie(x.score, x.a, x.b) < std::tie(y.score, y.a, y.b);
  });
  int total_positives = 0;
  for (const auto& it : items) total_positives += it.positive ? 1 : 0;

  double area = 0.0;
  int hits = 0;
  double prev_recall = 0.0;
  for (std::size_t prefix = 1; prefix <= items.size(); ++prefix) {
    if (items[prefix - 1].positive) ++hits;
    const double precision = static_cast<double>(hits) / static_cast<double>(prefix);
    const double recall = static_cast<double>(hits) / total_positives;
    area += (recall - prev_recall) * precision;
    prev_recall = recall;
  }
  return area;
}

Outcome criterion_evaluation_oracles() {
  std::ostringstream os;

  // AUPRC against the exhaustive PR-curve oracle.
  SeededRng rng(321);
  const auto net = random_undirected_network(9, rng);
  BenchmarkPairs bench;
  bench.insert("n0", "n4");
  bench.insert("n2", "n7");
  bench.insert("n1", "n8");
  bench.insert("n3", "n5");
  const double auprc_diff = std::abs(auprc(net, bench) - auprc_pr_curve_oracle(net, bench));
  if (auprc_diff > 1e-10) return fail("auprc vs PR-curve oracle differs by " +
                                      std::to_string(auprc_diff));

  // Fold enrichment against a recount oracle.
  const std::size_t top_k = 10;
  const auto enrichment = fold_enrichment(net, bench, top_k);
  if (!enrichment) return fail("fold enrichment unexpectedly undefined");
  {
    struct Item {
      double score;
      std::string a, b;
    };
    std::vector<Item> items;
    for (Eigen::Index i = 0; i < 9; ++i)
      for (Eigen::Index j = i + 1; j < 9; ++j) {
        Item it;
        it.score = net.weights(i, j);
        it.a = std::min(net.node_ids[static_cast<std::size_t>(i)],
                        net.node_ids[static_cast<std::size_t>(j)]);
        it.b = std::max(net.node_ids[static_cast<std::size_t>(i)],
                        net.node_ids[static_cast<std::size_t>(j)]);
        items.push_back(std::move(it));
      }
    std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
      return std::tie(x.score, x.a, x.b) < std::tie(y.score, y.a, y.b);
    });
    int in_top = 0, in_all = 0;
    for (std::size_t r = 0; r < items.size(); ++r) {
      const bool positive = bench.pairs.count({items[r].a, items[r].b}) > 0;
      if (positive) ++in_all;
      if (positive && r < top_k) ++in_top;
    }
    const double oracle = (static_cast<double>(in_top) / top_k) /
                          (static_cast<double>(in_all) / items.size());
    if (std::abs(*enrichment - oracle) > 1e-10)
      return fail("fold enrichment vs recount oracle differs");
  }

  // CV loop against an independently orchestrated loop.
  {
    const auto truth = two_community_network(12, 1.0, 0.2);
    const auto instance = add_gaussian_noise(truth, 0.3, 505);
    const int k = 3;
    const std::uint64_t seed = 17;
    const auto report = cross_validate(instance.noisy, {}, k, seed,
                                       {CvMethod::NetWF, CvMethod::MeanImpute});
    const auto folds = kfold_mask(instance.noisy, k, seed);
    for (int fold = 0; fold < k; ++fold) {
      std::set<std::pair<Eigen::Index, Eigen::Index>> masked;
      for (const auto& [pair, f] : folds.assignment)
        if (f == fold) masked.insert(pair);
      WeightedNetwork masked_net = instance.noisy;
      for (const auto& [i, j] : masked) {
        masked_net.observed(i, j) = masked_net.observed(j, i) = false;
      }
      const auto [filled, no_vars] = impute_missing(masked_net);
      const auto netwf_result = ::netwf::netwf(filled, naive_noise_guess(filled));
      const auto mi = mean_impute_baseline(masked_net, masked);
      double ss_netwf = 0.0, ss_mi = 0.0;
      for (const auto& [i, j] : masked) {
        ss_netwf += std::pow(netwf_result.denoised(i, j) - instance.noisy.weights(i, j), 2);
        ss_mi += std::pow(mi.at({i, j}) - instance.noisy.weights(i, j), 2);
      }
      const double n = static_cast<double>(masked.size());
      if (std::abs(report.breakdown.at("netwf_mse")[static_cast<std::size_t>(fold)] -
                   ss_netwf / n) > 1e-10 ||
          std::abs(report.breakdown.at("mean_impute_mse")[static_cast<std::size_t>(fold)] -
                   ss_mi / n) > 1e-10)
        return fail("cross-validation loop differs from independent oracle");
    }
  }

  // Paired t-test p-value against adaptive quadrature.
  {
    const std::vector<double> x{0.21, 0.14, 0.25, 0.18, 0.12, 0.30,
                                0.22, 0.16, 0.19, 0.27, 0.15, 0.24};
    const std::vector<double> y{0.11, 0.13, 0.15, 0.12, 0.14, 0.18,
                                0.12, 0.17, 0.10, 0.16, 0.13, 0.15};
    const auto result = paired_t_test(x, y);
    const double oracle = t_test_p_oracle(result.t, 11.0);
    if (std::abs(result.p_two_sided - oracle) > 1e-6)
      return fail("paired t-test p-value vs quadrature oracle differs");
  }

  os << "auprc, fold enrichment, CV loop, and t-test all match their oracles";
  return pass(os.str());
}

// --- Criteria 8-12: data-contingent --------------------------------------

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("NETWF_DATA_DIR")) return env;
  return "data";
}

bool have(const std::filesystem::path& p) { return std::filesystem::exists(p); }

struct YeastArtifacts {
  WeightedNetwork filled;          // imputed GI network
  Matrix filled_variances;
  DenoiseResult full;              // heterogeneous-noise NetWF
  DenoiseResult restricted;        // homogenized-noise NetWF
  WeightedNetwork os_denoised;
  bool ready = false;
};

YeastArtifacts& yeast_artifacts() {
  static YeastArtifacts cache;
  if (cache.ready) return cache;
  const auto gi_path = data_dir() / "yeast_gi.csv";
  const auto var_path = data_dir() / "yeast_variances.csv";
  const auto raw = read_matrix_csv(gi_path.string(), false);
  const auto vars = read_matrix_csv(var_path.string(), false);
  Matrix var_matrix = vars.weights;
  for (Eigen::Index j = 0; j < var_matrix.cols(); ++j)
    for (Eigen::Index i = 0; i < var_matrix.rows(); ++i)
      if (!vars.observed(i, j))
        var_matrix(i, j) = std::numeric_limits<double>::quiet_NaN();

  auto [filled, filled_var] = impute_missing(raw, var_matrix);
  cache.filled = std::move(filled);
  cache.filled_variances = std::move(*filled_var);

  FilterConfig cfg;
  const DiagonalNoise noise{cache.filled_variances};
  cache.full = netwf_cg(cache.filled, noise, cfg);
  cache.restricted = netwf_cg(cache.filled, homogenize_noise(noise), cfg);
  cache.os_denoised =
      optimal_shrink(cache.filled, homogenize_noise(noise).sigma2).first;
  cache.ready = true;
  return cache;
}

WeightedNetwork as_network(const WeightedNetwork& like, const Matrix& weights) {
  WeightedNetwork out = like;
  out.weights = weights;
  if (!out.directed)
    out.weights = (0.5 * (out.weights + out.weights.transpose())).eval();
  return out;
}

Outcome criterion_yeast_thresholds() {
  const auto raw_path = data_dir() / "yeast_gi.csv";
  if (!have(raw_path)) return skip("yeast_gi.csv not found under " + data_dir().string());
  const auto raw = read_matrix_csv(raw_path.string(), false);
  const auto [raw_neg, raw_pos] = threshold_counts(raw, -0.12, 0.16);
  std::ostringstream os;
  os << "raw (neg, pos) = (" << raw_neg << ", " << raw_pos << ") vs (26268, 3516); ";
  if (raw_neg != 26268 || raw_pos != 3516) return fail(os.str());

  const auto& artifacts = yeast_artifacts();
  const auto filtered = as_network(artifacts.filled, artifacts.full.denoised);
  const auto [neg, pos] = threshold_counts(filtered, -0.12, 0.16);
  os << "filtered (neg, pos) = (" << neg << ", " << pos << ") vs (17558, 620) +-2%";
  const auto within = [](std::int64_t got, double want) {
    return std::abs(got - want) <= 0.02 * want;
  };
  return within(neg, 17558) && within(pos, 620) ? pass(os.str()) : fail(os.str());
}

Outcome criterion_yeast_psn() {
  if (!have(data_dir() / "yeast_gi.csv")) return skip("yeast data not found");
  const auto& artifacts = yeast_artifacts();
  const auto raw_psn = undirected_profile_similarity(artifacts.filled);
  const auto raw_edges = psn_threshold(raw_psn, 0.2).size();
  const auto filtered = as_network(artifacts.filled, artifacts.full.denoised);
  const auto filtered_psn = undirected_profile_similarity(filtered);
  const auto filtered_edges = psn_threshold(filtered_psn, 0.2).size();
  std::ostringstream os;
  os << "PSN edges raw " << raw_edges << " vs 7563 +-2%, filtered " << filtered_edges
     << " vs 22685 +-2%";
  const auto within = [](std::size_t got, double want) {
    return std::abs(static_cast<double>(got) - want) <= 0.02 * want;
  };
  return within(raw_edges, 7563) && within(filtered_edges, 22685) ? pass(os.str())
                                                                  : fail(os.str());
}

Outcome criterion_sec15_sec6() {
  if (!have(data_dir() / "yeast_gi.csv")) return skip("yeast data not found");
  const auto& artifacts = yeast_artifacts();
  Eigen::Index sec15 = -1, sec6 = -1;
  for (Eigen::Index i = 0; i < artifacts.filled.size(); ++i) {
    const auto& id = artifacts.filled.node_ids[static_cast<std::size_t>(i)];
    if (id == "SEC15") sec15 = i;
    if (id == "SEC6") sec6 = i;
  }
  if (sec15 < 0 || sec6 < 0)
    return skip("SEC15/SEC6 labels not present in the gene-id export");
  const double netwf_value = artifacts.full.denoised(sec15, sec6);
  const double os_value = artifacts.os_denoised.weights(sec15, sec6);
  std::ostringstream os;
  os << "SEC15-SEC6 NetWF " << netwf_value << " vs -0.21 +-0.03, OS " << os_value
     << " vs -0.15 +-0.03";
  return std::abs(netwf_value + 0.21) <= 0.03 && std::abs(os_value + 0.15) <= 0.03
             ? pass(os.str())
             : fail(os.str());
}

Outcome criterion_enron_mse() {
  std::vector<std::string> month_paths;
  for (int m = 1; m <= 12; ++m) {
    char name[32];
    std::snprintf(name, sizeof(name), "enron_month_%02d.tsv", m);
    const auto p = data_dir() / name;
    if (!have(p)) return skip(std::string(name) + " not found");
    month_paths.push_back(p.string());
  }

  // Shared node universe: the union across months, in first-appearance order.
  std::vector<std::string> universe;
  {
    std::set<std::string> seen;
    for (const auto& p : month_paths) {
      const auto result = read_edge_list(p);
      for (const auto& id : result.net.node_ids)
        if (seen.insert(id).second) universe.push_back(id);
    }
  }
  std::vector<WeightedNetwork> months;
  for (const auto& p : month_paths) months.push_back(read_edge_list(p, universe).net);
  const auto monthly = build_monthly_frequency(months);
  const auto& reference = monthly.aggregate;
  const auto est = estimate_ensemble_noise(monthly.months);

  const BoolMatrix mask = offdiag_mask(reference.size());
  const auto month_mse = [&](const Matrix& weights) {
    return mse(weights, reference.weights, mask);
  };

  std::vector<double> raw_mse, full_mse, ss_mse, os_mse, naive_mse, naive_os_mse;
  FilterConfig cfg;
  FilterConfig cfg_ss;
  cfg_ss.directed_variant = DirectedVariant::SourceSource;
  for (const auto& month : monthly.months) {
    raw_mse.push_back(month_mse(month.weights));

    auto run = [&](const NoiseModel& noise, const FilterConfig& c) {
      auto result = netwf_cg(month, noise, c);
      result = postprocess(std::move(result), true, true);
      return month_mse(result.denoised);
    };
    full_mse.push_back(run(est.ensemble, cfg));
    ss_mse.push_back(run(est.ensemble, cfg_ss));
    naive_mse.push_back(run(naive_noise_guess(month), cfg));

    auto run_os = [&](double sigma2) {
      auto [denoised, report] = optimal_shrink(month, sigma2);
      denoised.weights.diagonal().setZero();
      denoised.weights = denoised.weights.cwiseMax(0.0);
      return month_mse(denoised.weights);
    };
    os_mse.push_back(run_os(homogenize_noise(est.ensemble).sigma2));
    naive_os_mse.push_back(run_os(naive_noise_guess(month).sigma2));
  }

  const auto mean_of = [](const std::vector<double>& xs) {
    double s = 0;
    for (double x : xs) s += x;
    return s / xs.size();
  };
  std::ostringstream os;
  os << "mean MSE: netwf " << mean_of(full_mse) << " (0.11+-0.01), raw "
     << mean_of(raw_mse) << " (0.21+-0.04), os " << mean_of(os_mse)
     << " (0.17+-0.03), source-source " << mean_of(ss_mse) << " (0.07+-0.01), naive "
     << mean_of(naive_mse) << " (0.14+-0.01), naive-os " << mean_of(naive_os_mse)
     << " (0.18+-0.03)";
  const bool ok = std::abs(mean_of(full_mse) - 0.11) <= 0.01 &&
                  std::abs(mean_of(raw_mse) - 0.21) <= 0.04 &&
                  std::abs(mean_of(os_mse) - 0.17) <= 0.03 &&
                  std::abs(mean_of(ss_mse) - 0.07) <= 0.01 &&
                  std::abs(mean_of(naive_mse) - 0.14) <= 0.01 &&
                  std::abs(mean_of(naive_os_mse) - 0.18) <= 0.03;
  return ok ? pass(os.str()) : fail(os.str());
}

Outcome criterion_restricted_overlap() {
  if (!have(data_dir() / "yeast_gi.csv")) return skip("yeast data not found");
  const auto& artifacts = yeast_artifacts();
  const auto negatives = [&](const DenoiseResult& result) {
    std::set<std::pair<Eigen::Index, Eigen::Index>> pairs;
    const auto net = as_network(artifacts.filled, result.denoised);
    for (Eigen::Index i = 0; i < net.size(); ++i)
      for (Eigen::Index j = i + 1; j < net.size(); ++j)
        if (net.weights(i, j) < -0.12) pairs.insert({i, j});
    return pairs;
  };
  const auto full = negatives(artifacts.full);
  const auto restricted = negatives(artifacts.restricted);
  std::size_t shared = 0;
  for (const auto& pair : full) shared += restricted.count(pair);
  const double overlap = full.empty() ? 0.0 : static_cast<double>(shared) / full.size();
  std::ostringstream os;
  os << "negative-GI overlap " << overlap * 100.0 << "% (needs >= 98%)";
  return overlap >= 0.98 ? pass(os.str()) : fail(os.str());
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<Outcome()> run;
    bool binding;
  };
  const std::vector<Criterion> criteria{
      {"criterion-1 scalar-Wiener limit", criterion_scalar_wiener, true},
      {"criterion-2 direct/CG equivalence", criterion_direct_cg_equivalence, true},
      {"criterion-3 Kronecker-oracle equivalence", criterion_kronecker_oracle, true},
      {"criterion-4 toy-community denoising", criterion_toy_community, true},
      {"criterion-5 optimal shrinker", criterion_optimal_shrinker, true},
      {"criterion-6 Wiener local optimality", criterion_local_optimality, true},
      {"criterion-7 evaluation oracles", criterion_evaluation_oracles, true},
      {"criterion-8 yeast thresholds", criterion_yeast_thresholds, false},
      {"criterion-9 yeast PSN edges", criterion_yeast_psn, false},
      {"criterion-10 SEC15-SEC6 inference", criterion_sec15_sec6, false},
      {"criterion-11 Enron monthly MSE", criterion_enron_mse, false},
      {"criterion-12 restricted-NetWF overlap", criterion_restricted_overlap, false},
  };

  bool binding_failure = false;
  for (const auto& criterion : criteria) {
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = fail(std::string("exception: ") + e.what());
    }
    const char* status = outcome.skipped ? "SKIP" : outcome.passed ? "PASS" : "FAIL";
    std::cout << status << ' ' << criterion.name << ": " << outcome.detail << '\n';
    if (criterion.binding && !outcome.passed && !outcome.skipped) binding_failure = true;
  }
  return binding_failure ? 1 : 0;
}
