#include "dclar/lar.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace dclar {
namespace {

void check_query(const Dataset& block, std::span<const double> x) {
  if (x.size() != block.dim()) {
    throw InvalidArgument("query dimension " + std::to_string(x.size()) +
                          " does not match block dimension " + std::to_string(block.dim()));
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw InvalidArgument("query point is not finite");
  }
}

void check_bandwidth(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("bandwidth must be positive and finite");
}

// Squared distance from x to sample i; the d = 1 case avoids the inner loop.
inline double sq_dist(const double* inputs, std::size_t dim, std::size_t i,
                      std::span<const double> x) {
  const double* xi = inputs + i * dim;
  if (dim == 1) {
    const double diff = x[0] - xi[0];
    return diff * diff;
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    const double diff = x[k] - xi[k];
    sum += diff * diff;
  }
  return sum;
}

}  // namespace

WeightVector nwk_weights(const Dataset& block, KernelKind kind, double h,
                         std::span<const double> x) {
  check_query(block, x);
  check_bandwidth(h);
  const double h_sq = h * h;
  const double* inputs = block.inputs().data();
  WeightVector out;
  out.weights.resize(block.size());
  double denominator = 0.0;
  for (std::size_t i = 0; i < block.size(); ++i) {
    const double w = kernel_from_squared_norm(kind, sq_dist(inputs, block.dim(), i, x) / h_sq);
    out.weights[i] = w;
    denominator += w;
  }
  if (denominator == 0.0) {
    out.degenerate = true;
    return out;
  }
  for (double& w : out.weights) w /= denominator;
  return out;
}

NwkEstimate nwk_estimate(const Dataset& block, KernelKind kind, double h,
                         std::span<const double> x) {
  check_query(block, x);
  check_bandwidth(h);
  const double h_sq = h * h;
  const double* inputs = block.inputs().data();
  const auto responses = block.responses();
  const std::size_t dim = block.dim();

  double numerator = 0.0;
  double denominator = 0.0;
  bool occupied = false;
  if (kind == KernelKind::kNaive) {
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (sq_dist(inputs, dim, i, x) / h_sq <= 1.0) {
        numerator += responses[i];
        denominator += 1.0;
      }
    }
    occupied = denominator > 0.0;
  } else {
    for (std::size_t i = 0; i < block.size(); ++i) {
      const double norm_sq = sq_dist(inputs, dim, i, x) / h_sq;
      occupied = occupied || norm_sq <= 1.0;
      const double w = std::exp(-norm_sq);
      numerator += w * responses[i];
      denominator += w;
    }
  }
  NwkEstimate est;
  est.ball_occupied = occupied;
  if (denominator == 0.0) {
    est.degenerate = true;
    return est;
  }
  est.value = numerator / denominator;
  return est;
}

KnnEstimate knn_estimate(const Dataset& block, std::size_t k, std::span<const double> x) {
  check_query(block, x);
  if (k < 1 || k > block.size()) {
    throw InvalidArgument("k = " + std::to_string(k) + " out of range [1, " +
                          std::to_string(block.size()) + "]");
  }
  thread_local std::vector<std::pair<double, std::size_t>> ranked;
  ranked.resize(block.size());
  const double* inputs = block.inputs().data();
  for (std::size_t i = 0; i < block.size(); ++i) {
    ranked[i] = {sq_dist(inputs, block.dim(), i, x), i};
  }
  // Lexicographic (distance, index) order is the tie rule.
  const auto head = ranked.begin() + static_cast<std::ptrdiff_t>(k);
  if (k < ranked.size()) std::nth_element(ranked.begin(), head - 1, ranked.end());
  std::sort(ranked.begin(), head);

  double sum = 0.0;
  for (auto it = ranked.begin(); it != head; ++it) sum += block.y(it->second);
  return KnnEstimate{sum / static_cast<double>(k), std::sqrt((head - 1)->first)};
}

bool ball_occupied(const Dataset& block, double h, std::span<const double> x) {
  check_query(block, x);
  check_bandwidth(h);
  const double h_sq = h * h;
  const double* inputs = block.inputs().data();
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (sq_dist(inputs, block.dim(), i, x) / h_sq <= 1.0) return true;
  }
  return false;
}

}  // namespace dclar
