#pragma once

#include "netwf/network.hpp"

#include <utility>
#include <vector>

namespace netwf {

struct ShrinkReport {
  std::vector<double> original_singular_values;  // descending
  std::vector<double> shrunk_singular_values;
  int retained_rank = 0;
  double sigma2_used = 0.0;
};

// Hard shrinkage rule for one singular value of a v x v matrix observed
// in homogeneous noise of variance sigma2:
// y* = sqrt(y^2 - 4 v sigma2) for y >= 2 sqrt(v sigma2), else 0.
double shrink_singular_value(double y, Eigen::Index v, double sigma2);

// Optimal-shrinker denoising: demean, SVD, shrink each singular value,
// reconstruct with the original singular vectors, restore the mean.
// Heterogeneous noise must be reduced to a scalar first (homogenize_noise).
std::pair<WeightedNetwork, ShrinkReport> optimal_shrink(const WeightedNetwork& net,
                                                        double sigma2,
                                                        bool demean_first = true);

}  // namespace netwf
