#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dclar/core.hpp"
#include "dclar/kernels.hpp"

namespace dclar {

/// Localization weights of a block at one query point.
struct WeightVector {
  std::vector<double> weights;
  bool degenerate = false;  // every raw kernel weight was zero
};

/// Result of a single pass of the Nadaraya-Watson estimator over a block.
struct NwkEstimate {
  double value = 0.0;
  bool degenerate = false;   // zero denominator; value is 0 by the 0/0 = 0 rule
  bool ball_occupied = false;  // some sample lies in the closed ball of radius h
};

struct KnnEstimate {
  double value = 0.0;
  double radius = 0.0;  // distance to the k-th nearest sample
};

WeightVector nwk_weights(const Dataset& block, KernelKind kind, double h,
                         std::span<const double> x);

NwkEstimate nwk_estimate(const Dataset& block, KernelKind kind, double h,
                         std::span<const double> x);

inline double nwk_predict(const Dataset& block, KernelKind kind, double h,
                          std::span<const double> x) {
  return nwk_estimate(block, kind, h, x).value;
}

/// Mean response of the k nearest samples. Equidistant samples rank by
/// lower index.
KnnEstimate knn_estimate(const Dataset& block, std::size_t k, std::span<const double> x);

inline double knn_predict(const Dataset& block, std::size_t k, std::span<const double> x) {
  return knn_estimate(block, k, x).value;
}

inline double knn_effective_radius(const Dataset& block, std::size_t k,
                                   std::span<const double> x) {
  return knn_estimate(block, k, x).radius;
}

/// True iff some sample X of the block satisfies |x - X| <= h. Uses the same
/// arithmetic as the naive kernel, so it agrees with a nonzero naive-kernel
/// denominator exactly.
bool ball_occupied(const Dataset& block, double h, std::span<const double> x);

}  // namespace dclar
