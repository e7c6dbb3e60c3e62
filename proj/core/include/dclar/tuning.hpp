#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dclar/avm.hpp"
#include "dclar/core.hpp"

namespace dclar {

struct CvConfig {
  std::size_t folds = 5;
  std::vector<double> grid;  // strictly increasing candidate constants
  std::uint64_t seed = 0;

  void validate() const;
};

/// n logarithmically spaced values from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

/// 5 folds over 20 log-spaced constants in [0.05, 5].
CvConfig default_cv_config(std::uint64_t seed);

struct CvResult {
  double constant = 0.0;
  std::size_t best_index = 0;
  std::vector<double> scores;  // mean fold MSE per grid entry
};

/// Localization parameter for a training set of size n under rule constant c:
/// the bandwidth rule for kernels, the neighbor rule with m = 1 (clamped to
/// [1, n]) for nearest neighbors.
Localization rule_localization(const EstimatorConfig& config, std::size_t n, double c);

/// K-fold cross-validation of the single-machine estimator over the grid.
/// Ties go to the smaller constant.
CvResult cv_select_constant(const Dataset& dataset, const EstimatorConfig& config,
                            const CvConfig& cv);

}  // namespace dclar
