#pragma once

#include "netwf/linalg.hpp"
#include "netwf/network.hpp"
#include "netwf/similarity.hpp"

#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace netwf {

// --- Noise models -----------------------------------------------------

struct HomogeneousNoise {
  double sigma2 = 0.0;
};

struct DiagonalNoise {
  Matrix variances;  // v x v, non-negative per-edge variances
};

// Sample covariance across snapshots, kept in low-rank form: the implied
// covariance is scale * sum_t vec(D_t) vec(D_t)^T with deviations
// D_t = W_t - mean(W). Matrix-vector action costs O(m k).
struct EnsembleNoise {
  std::vector<Matrix> deviations;
  double scale = 0.0;  // 1/(m-1)
};

using NoiseModel = std::variant<HomogeneousNoise, DiagonalNoise, EnsembleNoise>;

// C_n action at matrix level.
Matrix apply_noise(const NoiseModel& noise, const Matrix& X);

// Per-edge variance matrix implied by the model (Ensemble reduces to its
// diagonal, i.e. per-edge sample variances).
Matrix noise_variance_matrix(const NoiseModel& noise, Eigen::Index v);

// Mean noise variance over the off-diagonal entries.
double mean_noise_variance(const NoiseModel& noise, Eigen::Index v);

// Explicit k x k covariance (direct mode and test oracles only).
Matrix noise_covariance_dense(const NoiseModel& noise, Eigen::Index v);

// --- Signal covariance -------------------------------------------------

// Implicit signal covariance C_u defined by PSNs and a variance
// prefactor. Directed action: X -> prefactor * S_left X S_right^T.
// Undirected action symmetrizes input and output, which equals the
// two-term endpoint-matching average for any X and reduces to
// prefactor * S X S on symmetric X.
//
// The action matrices are PSD projections of the PSNs by default:
// profile correlations assembled with per-pair column exclusion need not
// be PSD, and a C_u eigenvalue near -sigma_n^2 turns the Wiener gain
// into an amplifier. Clipping negative PSN eigenvalues restores the
// premise the filter is derived under. The raw PSNs are kept alongside.
struct SignalCovarianceOperator {
  ProfileSimilarity psn_left;
  ProfileSimilarity psn_right;  // equals psn_left for undirected
  Matrix left_action;           // effective matrices used by apply()
  Matrix right_action;
  double prefactor = 0.0;
  bool undirected = true;

  Eigen::Index nodes() const { return psn_left.size(); }
  Matrix apply(const Matrix& X) const;
  Matrix dense() const;  // explicit k x k form
};

// Clips negative eigenvalues of a symmetric matrix to zero.
Matrix psd_project(const Matrix& symmetric);

// Assembles C_u from one (undirected) or two (directed) PSNs; the
// prefactor is the variance of the demeaned weights over the
// profile-relevant entries.
SignalCovarianceOperator build_signal_covariance(const std::vector<ProfileSimilarity>& psns,
                                                 const WeightedNetwork& net,
                                                 bool project_psd = true);

// --- Filter configuration and results ----------------------------------

enum class FilterMode { Direct, Cg };
enum class DirectedVariant { SourceTarget, SourceSource };

struct FilterConfig {
  // Ridge shift; values <= 0 select the default
  // 1e-6 * (prefactor + mean noise variance).
  double epsilon = 0.0;
  double cg_tol = 1e-8;
  int cg_max_iter = 0;  // <= 0 selects the default 10*k
  FilterMode mode = FilterMode::Cg;
  bool demean = true;
  DirectedVariant directed_variant = DirectedVariant::SourceTarget;
  Eigen::Index direct_k_cap = 5000;
  SimilarityOptions similarity;
  bool project_psd = true;  // clip negative PSN eigenvalues in C_u
};

struct DenoiseResult {
  Matrix denoised;
  double global_mean_restored = 0.0;
  std::optional<CgReport> cg_report;
  double prefactor_used = 0.0;
  double epsilon_used = 0.0;
};

// --- Operations ---------------------------------------------------------

// Subtracts the mean over profile-relevant entries from every entry.
// Requires a fully observed network.
std::pair<WeightedNetwork, double> demean(const WeightedNetwork& net);

// Fills missing entries per a two-step rule: missing variances get
// mean(observed variances) + var(observed weights), then missing weights
// get mean(observed weights). Statistics are over the profile-relevant
// observed entries.
std::pair<WeightedNetwork, std::optional<Matrix>> impute_missing(
    const WeightedNetwork& net, const std::optional<Matrix>& variances = {},
    const std::optional<BoolMatrix>& variance_observed = {});

// Dense two-step solve: x from (C_u + C_n + eps I) x = a by a symmetric
// factorization, then u = C_u x. Refuses when k = v^2 exceeds the
// configured cap.
DenoiseResult netwf_direct(const WeightedNetwork& net, const NoiseModel& noise,
                           const FilterConfig& cfg = {});

// Matrix-free solve with conjugate gradient; O(v^2) auxiliary memory
// (plus the m deviation matrices for Ensemble noise).
DenoiseResult netwf_cg(const WeightedNetwork& net, const NoiseModel& noise,
                       const FilterConfig& cfg = {});

// Runs the mode selected in cfg.mode.
DenoiseResult netwf(const WeightedNetwork& net, const NoiseModel& noise,
                    const FilterConfig& cfg = {});

// Core solve against a caller-supplied signal covariance (PSN
// construction skipped). Used by the standard entry points above.
DenoiseResult denoise_with_covariance(const SignalCovarianceOperator& cov,
                                      const WeightedNetwork& net, const NoiseModel& noise,
                                      const FilterConfig& cfg, FilterMode mode);

struct EnsembleEstimate {
  EnsembleNoise ensemble;
  DiagonalNoise diagonal;  // per-edge sample variances
};

// Sample noise statistics from m >= 2 snapshots over a shared node set.
EnsembleEstimate estimate_ensemble_noise(const std::vector<WeightedNetwork>& snapshots);

// Replaces any model by the homogeneous one with sigma2 equal to the
// mean of its per-edge variances (off-diagonal entries).
HomogeneousNoise homogenize_noise(const NoiseModel& noise);

// Homogeneous guess from a single snapshot: the variance across its
// profile-relevant edge weights.
HomogeneousNoise naive_noise_guess(const WeightedNetwork& net);

// Optional cleanup of filter output: zero the diagonal and/or clip
// negative weights to zero.
DenoiseResult postprocess(DenoiseResult result, bool remove_self_links,
                          bool truncate_negative);

}  // namespace netwf
