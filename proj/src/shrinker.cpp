#include "netwf/shrinker.hpp"

#include "netwf/errors.hpp"
#include "netwf/filter.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace netwf {

double shrink_singular_value(double y, Eigen::Index v, double sigma2) {
  const double threshold2 = 4.0 * static_cast<double>(v) * sigma2;
  const double y2 = y * y;
  if (y2 < threshold2) return 0.0;
  return std::sqrt(y2 - threshold2);
}

std::pair<WeightedNetwork, ShrinkReport> optimal_shrink(const WeightedNetwork& net,
                                                        double sigma2,
                                                        bool demean_first) {
  net.validate();
  if (!net.fully_observed())
    throw ArgumentError("optimal_shrink: unobserved entries present; impute first");
  if (sigma2 < 0.0) throw ArgumentError("optimal_shrink: sigma2 must be non-negative");

  const Eigen::Index v = net.size();
  double mean = 0.0;
  Matrix centered = net.weights;
  if (demean_first) {
    auto [cnet, m] = demean(net);
    centered = std::move(cnet.weights);
    mean = m;
  }

  Eigen::BDCSVD<Matrix> svd(centered, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success)
    throw NumericError("optimal_shrink: SVD failed to converge");

  ShrinkReport report;
  report.sigma2_used = sigma2;
  const Vector& values = svd.singularValues();
  Vector shrunk(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    report.original_singular_values.push_back(values(i));
    shrunk(i) = shrink_singular_value(values(i), v, sigma2);
    report.shrunk_singular_values.push_back(shrunk(i));
    if (shrunk(i) > 0.0) ++report.retained_rank;
  }

  WeightedNetwork out = net;
  if (sigma2 == 0.0) {
    // All values pass the zero threshold unchanged; keep the input
    // bit-exact instead of round-tripping through the factors.
    return {std::move(out), std::move(report)};
  }

  Matrix reconstructed =
      svd.matrixU() * shrunk.asDiagonal() * svd.matrixV().transpose();
  out.weights = reconstructed.array() + mean;
  if (!net.directed)
    out.weights = (0.5 * (out.weights + out.weights.transpose())).eval();
  return {std::move(out), std::move(report)};
}

}  // namespace netwf
