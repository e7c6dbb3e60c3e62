#include "dclar/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dclar {

Dataset::Dataset(std::size_t dim, std::vector<double> inputs,
                 std::vector<double> responses, std::vector<Interval> bounds,
                 BoundsPolicy policy)
    : dim_(dim),
      inputs_(std::move(inputs)),
      responses_(std::move(responses)),
      bounds_(std::move(bounds)) {
  if (dim_ == 0) throw InvalidArgument("dataset dimension must be positive");
  if (responses_.empty()) throw InvalidArgument("dataset must hold at least one sample");
  if (inputs_.size() != responses_.size() * dim_) {
    throw InvalidArgument("dataset inputs do not match size * dim");
  }
  if (bounds_.size() != dim_) {
    throw InvalidArgument("dataset bounds must have one interval per coordinate");
  }
  for (const auto& b : bounds_) {
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || b.lo > b.hi) {
      throw InvalidArgument("dataset bounds must be finite closed intervals");
    }
  }
  for (double v : inputs_) {
    if (!std::isfinite(v)) throw InvalidArgument("dataset input is not finite");
  }
  for (double v : responses_) {
    if (!std::isfinite(v)) throw InvalidArgument("dataset response is not finite");
  }
  if (policy == BoundsPolicy::kEnforce) {
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
      if (!bounds_[i % dim_].contains(inputs_[i])) {
        throw InvalidArgument("dataset input lies outside the domain bounds");
      }
    }
  }
}

Dataset Dataset::from_samples(std::span<const Sample> samples,
                              std::vector<Interval> bounds, BoundsPolicy policy) {
  if (samples.empty()) throw InvalidArgument("dataset must hold at least one sample");
  const std::size_t dim = samples.front().x.size();
  std::vector<double> inputs;
  std::vector<double> responses;
  inputs.reserve(samples.size() * dim);
  responses.reserve(samples.size());
  for (const auto& s : samples) {
    if (s.x.size() != dim) throw InvalidArgument("samples have mixed dimensions");
    inputs.insert(inputs.end(), s.x.begin(), s.x.end());
    responses.push_back(s.y);
  }
  return Dataset(dim, std::move(inputs), std::move(responses), std::move(bounds), policy);
}

Dataset Dataset::with_observed_bounds(std::size_t dim, std::vector<double> inputs,
                                      std::vector<double> responses) {
  if (dim == 0) throw InvalidArgument("dataset dimension must be positive");
  std::vector<Interval> bounds(dim, Interval{std::numeric_limits<double>::infinity(),
                                             -std::numeric_limits<double>::infinity()});
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    auto& b = bounds[i % dim];
    b.lo = std::min(b.lo, inputs[i]);
    b.hi = std::max(b.hi, inputs[i]);
  }
  return Dataset(dim, std::move(inputs), std::move(responses), std::move(bounds),
                 BoundsPolicy::kAdvisory);
}

Sample Dataset::sample(std::size_t i) const {
  auto xi = x(i);
  return Sample{{xi.begin(), xi.end()}, y(i)};
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  std::vector<double> inputs;
  std::vector<double> responses;
  inputs.reserve(indices.size() * dim_);
  responses.reserve(indices.size());
  for (std::size_t idx : indices) {
    if (idx >= size()) throw InvalidArgument("subset index out of range");
    auto xi = x(idx);
    inputs.insert(inputs.end(), xi.begin(), xi.end());
    responses.push_back(responses_[idx]);
  }
  return Dataset(dim_, std::move(inputs), std::move(responses), bounds_,
                 BoundsPolicy::kAdvisory);
}

Dataset Dataset::with_responses(std::vector<double> responses) const {
  if (responses.size() != size()) throw InvalidArgument("response count mismatch");
  return Dataset(dim_, inputs_, std::move(responses), bounds_, BoundsPolicy::kAdvisory);
}

std::vector<Interval> unit_cube(std::size_t dim) {
  return std::vector<Interval>(dim, Interval{0.0, 1.0});
}

std::string to_string(EstimatorFamily family) {
  switch (family) {
    case EstimatorFamily::kNwkNaive: return "naive";
    case EstimatorFamily::kNwkGaussian: return "gaussian";
    case EstimatorFamily::kKnn: return "knn";
  }
  return "unknown";
}

EstimatorFamily parse_family(const std::string& name) {
  if (name == "naive") return EstimatorFamily::kNwkNaive;
  if (name == "gaussian") return EstimatorFamily::kNwkGaussian;
  if (name == "knn") return EstimatorFamily::kKnn;
  throw InvalidArgument("unknown estimator family: " + name);
}

void EstimatorConfig::validate() const {
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("smoothness r must be positive");
  if (!(constant_c > 0.0) || !std::isfinite(constant_c)) {
    throw InvalidArgument("rule constant must be positive");
  }
  if (d == 0) throw InvalidArgument("dimension must be positive");
  if (!(noise_bound_M > 0.0)) throw InvalidArgument("response bound must be positive");
}

double mse(std::span<const double> predictions, std::span<const double> targets) {
  if (predictions.size() != targets.size()) throw InvalidArgument("mse: length mismatch");
  if (predictions.empty()) throw InvalidArgument("mse: empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double diff = predictions[i] - targets[i];
    sum += diff * diff;
  }
  return sum / static_cast<double>(predictions.size());
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    sum += diff * diff;
  }
  return sum;
}

}  // namespace dclar
