#include "netwf/filter.hpp"

#include "netwf/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <utility>

namespace netwf {

namespace {

Eigen::Index vec_index(Eigen::Index i, Eigen::Index j, Eigen::Index v) {
  return j * v + i;  // column-major, matches vec()/unvec()
}

// Bitwise-symmetric symmetrization: (i,j) and (j,i) run the same
// floating-point additions, so the result is exactly symmetric.
Matrix symmetrize(const Matrix& X) { return 0.5 * (X + X.transpose()); }

double offdiag_mean(const Matrix& M, bool directed) {
  const Eigen::Index v = M.rows();
  double sum = 0.0;
  std::int64_t n = 0;
  for (Eigen::Index i = 0; i < v; ++i) {
    for (Eigen::Index j = directed ? 0 : i + 1; j < v; ++j) {
      if (i == j) continue;
      sum += M(i, j);
      ++n;
    }
  }
  if (n == 0) throw ArgumentError("matrix has no off-diagonal entries");
  return sum / static_cast<double>(n);
}

void validate_variances(const Matrix& V, Eigen::Index v) {
  if (V.rows() != v || V.cols() != v)
    throw ArgumentError("noise variance matrix shape mismatch");
  for (Eigen::Index i = 0; i < v; ++i)
    for (Eigen::Index j = 0; j < v; ++j)
      if (!(V(i, j) >= 0.0) || !std::isfinite(V(i, j)))
        throw ArgumentError("noise variances must be finite and non-negative");
}

void validate_noise(const NoiseModel& noise, const WeightedNetwork& net) {
  const Eigen::Index v = net.size();
  if (const auto* h = std::get_if<HomogeneousNoise>(&noise)) {
    if (!(h->sigma2 >= 0.0)) throw ArgumentError("sigma2 must be non-negative");
  } else if (const auto* d = std::get_if<DiagonalNoise>(&noise)) {
    validate_variances(d->variances, v);
    if (!net.directed && d->variances != d->variances.transpose())
      throw ArgumentError("diagonal noise for an undirected network must be symmetric");
  } else if (const auto* e = std::get_if<EnsembleNoise>(&noise)) {
    if (e->scale < 0.0) throw ArgumentError("ensemble scale must be non-negative");
    for (const auto& d : e->deviations)
      if (d.rows() != v || d.cols() != v)
        throw ArgumentError("ensemble deviation shape mismatch");
  }
}

}  // namespace

// --- Noise models -----------------------------------------------------

Matrix apply_noise(const NoiseModel& noise, const Matrix& X) {
  if (const auto* h = std::get_if<HomogeneousNoise>(&noise)) {
    return h->sigma2 * X;
  }
  if (const auto* d = std::get_if<DiagonalNoise>(&noise)) {
    if (d->variances.rows() != X.rows() || d->variances.cols() != X.cols())
      throw ArgumentError("apply_noise: variance shape mismatch");
    return d->variances.cwiseProduct(X);
  }
  const auto& e = std::get<EnsembleNoise>(noise);
  Matrix out = Matrix::Zero(X.rows(), X.cols());
  for (const auto& dev : e.deviations) {
    const double inner = dev.cwiseProduct(X).sum();  // <vec(D), vec(X)>
    out += inner * dev;
  }
  return e.scale * out;
}

Matrix noise_variance_matrix(const NoiseModel& noise, Eigen::Index v) {
  if (const auto* h = std::get_if<HomogeneousNoise>(&noise))
    return Matrix::Constant(v, v, h->sigma2);
  if (const auto* d = std::get_if<DiagonalNoise>(&noise)) return d->variances;
  const auto& e = std::get<EnsembleNoise>(noise);
  Matrix var = Matrix::Zero(v, v);
  for (const auto& dev : e.deviations) var += dev.cwiseProduct(dev);
  return e.scale * var;
}

double mean_noise_variance(const NoiseModel& noise, Eigen::Index v) {
  if (const auto* h = std::get_if<HomogeneousNoise>(&noise)) return h->sigma2;
  return offdiag_mean(noise_variance_matrix(noise, v), /*directed=*/true);
}

Matrix noise_covariance_dense(const NoiseModel& noise, Eigen::Index v) {
  const Eigen::Index k = v * v;
  if (const auto* h = std::get_if<HomogeneousNoise>(&noise))
    return h->sigma2 * Matrix::Identity(k, k);
  if (const auto* d = std::get_if<DiagonalNoise>(&noise)) {
    Matrix cn = Matrix::Zero(k, k);
    cn.diagonal() = vec(d->variances);
    return cn;
  }
  const auto& e = std::get<EnsembleNoise>(noise);
  Matrix cn = Matrix::Zero(k, k);
  for (const auto& dev : e.deviations) {
    const Vector d = vec(dev);
    cn.noalias() += d * d.transpose();
  }
  return e.scale * cn;
}

// --- Signal covariance -------------------------------------------------

Matrix psd_project(const Matrix& symmetric) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric);
  if (solver.info() != Eigen::Success)
    throw NumericError("psd_project: eigendecomposition failed");
  if (solver.eigenvalues()(0) >= 0.0) return symmetric;
  const Vector clipped = solver.eigenvalues().cwiseMax(0.0);
  const Matrix rebuilt =
      solver.eigenvectors() * clipped.asDiagonal() * solver.eigenvectors().transpose();
  return symmetrize(rebuilt);
}

Matrix SignalCovarianceOperator::apply(const Matrix& X) const {
  const Eigen::Index v = nodes();
  if (X.rows() != v || X.cols() != v)
    throw ArgumentError("signal covariance: input shape mismatch");
  if (!undirected) return prefactor * sandwich_apply(left_action, X, right_action);
  // Average over both endpoint matchings; on exactly symmetric X this is
  // plain S X S with the same values.
  const Matrix inner = symmetrize(X);
  const Matrix raw = sandwich_apply(left_action, inner, left_action);
  return prefactor * symmetrize(raw);
}

Matrix SignalCovarianceOperator::dense() const {
  const Eigen::Index v = nodes();
  const Eigen::Index k = v * v;
  if (!undirected) {
    // vec(L X R^T) = (R (x) L) vec(X)
    Matrix cu = Eigen::kroneckerProduct(right_action, left_action);
    return prefactor * cu;
  }
  const Matrix& s = left_action;
  Matrix cu(k, k);
  for (Eigen::Index d = 0; d < v; ++d)
    for (Eigen::Index c = 0; c < v; ++c)
      for (Eigen::Index b = 0; b < v; ++b)
        for (Eigen::Index a = 0; a < v; ++a)
          cu(vec_index(a, b, v), vec_index(c, d, v)) =
              prefactor * 0.5 * (s(a, c) * s(b, d) + s(a, d) * s(b, c));
  return cu;
}

SignalCovarianceOperator build_signal_covariance(
    const std::vector<ProfileSimilarity>& psns, const WeightedNetwork& net,
    bool project_psd) {
  if (psns.empty() || psns.size() > 2)
    throw ArgumentError("build_signal_covariance: expects one or two PSNs");
  for (const auto& p : psns)
    if (p.node_ids != net.node_ids)
      throw ArgumentError("build_signal_covariance: PSN node set mismatch");

  const double prefactor = observed_offdiag_mean_variance(net).second;
  SignalCovarianceOperator cov;
  cov.prefactor = prefactor;
  if (psns.size() == 1) {
    if (psns[0].kind != SimilarityKind::Undirected)
      throw ArgumentError("single-PSN covariance expects an undirected PSN");
    cov.psn_left = psns[0];
    cov.psn_right = psns[0];
    cov.undirected = true;
    cov.left_action = project_psd ? psd_project(psns[0].matrix) : psns[0].matrix;
    cov.right_action = cov.left_action;
  } else {
    if (psns[0].kind != SimilarityKind::Source)
      throw ArgumentError("directed covariance expects a source PSN first");
    cov.psn_left = psns[0];
    cov.psn_right = psns[1];
    cov.undirected = false;
    cov.left_action = project_psd ? psd_project(psns[0].matrix) : psns[0].matrix;
    cov.right_action = project_psd ? psd_project(psns[1].matrix) : psns[1].matrix;
  }
  return cov;
}

// --- Operations ---------------------------------------------------------

std::pair<WeightedNetwork, double> demean(const WeightedNetwork& net) {
  if (!net.fully_observed())
    throw ArgumentError("demean: unobserved entries present; impute first");
  const double mean = observed_offdiag_mean_variance(net).first;
  WeightedNetwork centered = net;
  centered.weights.array() -= mean;
  return {std::move(centered), mean};
}

std::pair<WeightedNetwork, std::optional<Matrix>> impute_missing(
    const WeightedNetwork& net, const std::optional<Matrix>& variances,
    const std::optional<BoolMatrix>& variance_observed) {
  const Eigen::Index v = net.size();
  const auto [mean_w, var_w] = observed_offdiag_mean_variance(net);

  std::optional<Matrix> filled_var;
  if (variances) {
    if (variances->rows() != v || variances->cols() != v)
      throw ArgumentError("impute_missing: variance matrix shape mismatch");
    BoolMatrix var_mask(v, v);
    if (variance_observed) {
      var_mask = *variance_observed;
    } else {
      for (Eigen::Index i = 0; i < v; ++i)
        for (Eigen::Index j = 0; j < v; ++j)
          var_mask(i, j) = std::isfinite((*variances)(i, j));
    }
    double sum = 0.0;
    std::int64_t n = 0;
    for (const auto& [i, j] : profile_relevant_cells(net)) {
      if (!var_mask(i, j)) continue;
      sum += (*variances)(i, j);
      ++n;
    }
    if (n == 0) throw DataError("impute_missing: no observed noise variances");
    const double fill = sum / static_cast<double>(n) + var_w;
    Matrix fv = *variances;
    for (Eigen::Index i = 0; i < v; ++i)
      for (Eigen::Index j = 0; j < v; ++j)
        if (!var_mask(i, j)) fv(i, j) = fill;
    filled_var = std::move(fv);
  }

  WeightedNetwork filled = net;
  for (Eigen::Index i = 0; i < v; ++i)
    for (Eigen::Index j = 0; j < v; ++j)
      if (!filled.observed(i, j)) filled.weights(i, j) = mean_w;
  filled.observed.setConstant(true);
  return {std::move(filled), std::move(filled_var)};
}

DenoiseResult denoise_with_covariance(const SignalCovarianceOperator& cov,
                                      const WeightedNetwork& net, const NoiseModel& noise,
                                      const FilterConfig& cfg, FilterMode mode) {
  net.validate();
  if (!net.fully_observed())
    throw ArgumentError("denoise: unobserved entries present; impute first");
  validate_noise(noise, net);
  if (cov.nodes() != net.size())
    throw ArgumentError("denoise: covariance/network size mismatch");

  const Eigen::Index v = net.size();
  const Eigen::Index k = v * v;

  double mean = 0.0;
  Matrix centered = net.weights;
  if (cfg.demean) {
    auto [cnet, m] = demean(net);
    centered = std::move(cnet.weights);
    mean = m;
  }

  const double mean_nv = mean_noise_variance(noise, v);
  double eps = cfg.epsilon;
  if (eps <= 0.0) {
    eps = 1e-6 * (cov.prefactor + mean_nv);
    if (eps <= 0.0) eps = 1e-12;
  }

  const Vector a = vec(centered);
  Vector x(k);
  DenoiseResult result;
  result.prefactor_used = cov.prefactor;
  result.epsilon_used = eps;

  if (mode == FilterMode::Direct) {
    if (k > cfg.direct_k_cap)
      throw ArgumentError("netwf_direct: k = v^2 exceeds the memory cap (" +
                          std::to_string(k) + " > " + std::to_string(cfg.direct_k_cap) +
                          "); use mode=cg");
    Matrix system = cov.dense() + noise_covariance_dense(noise, v);
    system.diagonal().array() += eps;
    Eigen::LDLT<Matrix> ldlt(system);
    if (ldlt.info() != Eigen::Success)
      throw NumericError("netwf_direct: factorization failed");
    x = ldlt.solve(a);
    if (!x.allFinite()) throw NumericError("netwf_direct: non-finite solution");
  } else {
    LinearOperator op(k, [&](const Vector& in, Vector& out) {
      const Matrix X = unvec(in, v);
      Matrix y = cov.apply(X) + apply_noise(noise, X);
      y += eps * X;
      out = vec(y);
    });
    const int max_iter = cfg.cg_max_iter > 0 ? cfg.cg_max_iter
                                             : static_cast<int>(10 * k);
    auto [solution, report] = conjugate_gradient(op, a, cfg.cg_tol, max_iter);
    x = std::move(solution);
    result.cg_report = report;
  }

  const Matrix estimate = cov.apply(unvec(x, v));
  result.denoised = estimate.array() + mean;
  result.global_mean_restored = mean;
  return result;
}

namespace {

std::vector<ProfileSimilarity> build_psns(const WeightedNetwork& net,
                                          const FilterConfig& cfg) {
  if (!net.directed) return {undirected_profile_similarity(net, cfg.similarity)};
  ProfileSimilarity src = source_profile_similarity(net, cfg.similarity);
  if (cfg.directed_variant == DirectedVariant::SourceSource) {
    ProfileSimilarity right = src;
    return {std::move(src), std::move(right)};
  }
  return {std::move(src), target_profile_similarity(net, cfg.similarity)};
}

DenoiseResult run_netwf(const WeightedNetwork& net, const NoiseModel& noise,
                        const FilterConfig& cfg, FilterMode mode) {
  net.validate();
  if (!net.fully_observed())
    throw ArgumentError("netwf: unobserved entries present; impute first");
  const auto psns = build_psns(net, cfg);
  const auto cov = build_signal_covariance(psns, net, cfg.project_psd);
  return denoise_with_covariance(cov, net, noise, cfg, mode);
}

}  // namespace

DenoiseResult netwf_direct(const WeightedNetwork& net, const NoiseModel& noise,
                           const FilterConfig& cfg) {
  return run_netwf(net, noise, cfg, FilterMode::Direct);
}

DenoiseResult netwf_cg(const WeightedNetwork& net, const NoiseModel& noise,
                       const FilterConfig& cfg) {
  return run_netwf(net, noise, cfg, FilterMode::Cg);
}

DenoiseResult netwf(const WeightedNetwork& net, const NoiseModel& noise,
                    const FilterConfig& cfg) {
  return run_netwf(net, noise, cfg, cfg.mode);
}

EnsembleEstimate estimate_ensemble_noise(const std::vector<WeightedNetwork>& snapshots) {
  if (snapshots.size() < 2)
    throw ArgumentError("estimate_ensemble_noise: need at least two snapshots");
  const Eigen::Index v = snapshots.front().size();
  for (const auto& s : snapshots)
    if (s.size() != v || s.node_ids != snapshots.front().node_ids)
      throw ArgumentError("estimate_ensemble_noise: snapshot node sets differ");

  const double m = static_cast<double>(snapshots.size());
  Matrix mean = Matrix::Zero(v, v);
  for (const auto& s : snapshots) mean += s.weights;
  mean /= m;

  EnsembleEstimate est;
  est.ensemble.scale = 1.0 / (m - 1.0);
  Matrix var = Matrix::Zero(v, v);
  for (const auto& s : snapshots) {
    Matrix dev = s.weights - mean;
    var += dev.cwiseProduct(dev);
    est.ensemble.deviations.push_back(std::move(dev));
  }
  est.diagonal.variances = est.ensemble.scale * var;
  return est;
}

HomogeneousNoise homogenize_noise(const NoiseModel& noise) {
  if (const auto* h = std::get_if<HomogeneousNoise>(&noise)) return *h;
  Eigen::Index v = 0;
  if (const auto* d = std::get_if<DiagonalNoise>(&noise)) {
    v = d->variances.rows();
  } else {
    const auto& e = std::get<EnsembleNoise>(noise);
    if (e.deviations.empty())
      throw ArgumentError("homogenize_noise: empty ensemble");
    v = e.deviations.front().rows();
  }
  return HomogeneousNoise{offdiag_mean(noise_variance_matrix(noise, v), true)};
}

HomogeneousNoise naive_noise_guess(const WeightedNetwork& net) {
  return HomogeneousNoise{observed_offdiag_mean_variance(net).second};
}

DenoiseResult postprocess(DenoiseResult result, bool remove_self_links,
                          bool truncate_negative) {
  if (remove_self_links) result.denoised.diagonal().setZero();
  if (truncate_negative) result.denoised = result.denoised.cwiseMax(0.0);
  return result;
}

}  // namespace netwf
