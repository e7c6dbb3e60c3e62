#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dclar {

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double width() const { return hi - lo; }
  bool contains(double v) const { return v >= lo && v <= hi; }
};

/// A single (input, response) pair.
struct Sample {
  std::vector<double> x;
  double y = 0.0;
};

/// Whether domain bounds are enforced on construction. Synthetic data is
/// enforced; ingested data only records its bounds.
enum class BoundsPolicy { kEnforce, kAdvisory };

/// Ordered, immutable collection of samples of a common dimension.
///
/// Inputs are stored row-major in one contiguous buffer so that the hot
/// distance loops in the estimators walk memory linearly.
class Dataset {
 public:
  Dataset(std::size_t dim, std::vector<double> inputs,
          std::vector<double> responses, std::vector<Interval> bounds,
          BoundsPolicy policy = BoundsPolicy::kEnforce);

  static Dataset from_samples(std::span<const Sample> samples,
                              std::vector<Interval> bounds,
                              BoundsPolicy policy = BoundsPolicy::kEnforce);

  /// Dataset whose bounds are the observed bounding box of the inputs.
  static Dataset with_observed_bounds(std::size_t dim,
                                      std::vector<double> inputs,
                                      std::vector<double> responses);

  std::size_t size() const { return responses_.size(); }
  std::size_t dim() const { return dim_; }

  std::span<const double> x(std::size_t i) const {
    return {inputs_.data() + i * dim_, dim_};
  }
  double y(std::size_t i) const { return responses_[i]; }
  Sample sample(std::size_t i) const;

  std::span<const double> inputs() const { return inputs_; }
  std::span<const double> responses() const { return responses_; }
  const std::vector<Interval>& bounds() const { return bounds_; }

  /// Samples at the given indices, in that order, with this dataset's bounds.
  Dataset subset(std::span<const std::size_t> indices) const;

  /// Same inputs and bounds with responses replaced.
  Dataset with_responses(std::vector<double> responses) const;

 private:
  std::size_t dim_;
  std::vector<double> inputs_;
  std::vector<double> responses_;
  std::vector<Interval> bounds_;
};

/// Unit hypercube [0,1]^d.
std::vector<Interval> unit_cube(std::size_t dim);

enum class EstimatorFamily { kNwkNaive, kNwkGaussian, kKnn };

std::string to_string(EstimatorFamily family);
EstimatorFamily parse_family(const std::string& name);

struct EstimatorConfig {
  EstimatorFamily family = EstimatorFamily::kNwkNaive;
  double r = 1.0;              // assumed smoothness
  std::size_t d = 1;
  double constant_c = 1.0;     // multiplier in the parameter rules
  double noise_bound_M = 1.0;  // advisory response bound

  bool is_nwk() const { return family != EstimatorFamily::kKnn; }
  void validate() const;
};

/// Mean of squared componentwise differences.
double mse(std::span<const double> predictions, std::span<const double> targets);

double squared_distance(std::span<const double> a, std::span<const double> b);

}  // namespace dclar
