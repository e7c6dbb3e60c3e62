#include "dclar/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dclar/partition.hpp"
#include "dclar/rng.hpp"

namespace dclar {

void CvConfig::validate() const {
  if (folds < 2) throw InvalidArgument("cross-validation needs at least 2 folds");
  if (grid.empty()) throw InvalidArgument("cross-validation grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i])) {
      throw InvalidArgument("grid constants must be positive");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw InvalidArgument("grid must be strictly increasing");
    }
  }
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi >= lo) || n == 0) throw InvalidArgument("invalid log grid");
  if (n == 1) return {lo};
  std::vector<double> out(n);
  const double step = std::log(hi / lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo * std::exp(step * static_cast<double>(i));
  out.front() = lo;
  out.back() = hi;
  return out;
}

CvConfig default_cv_config(std::uint64_t seed) {
  return CvConfig{5, log_grid(0.05, 5.0, 20), seed};
}

Localization rule_localization(const EstimatorConfig& config, std::size_t n, double c) {
  if (config.is_nwk()) return Bandwidth{nwk_bandwidth_rule(n, config.r, config.d, c)};
  const NeighborRule rule = knn_k_rule(n, 1, config.r, config.d, c);
  return NeighborCount{std::min(rule.k, n)};
}

CvResult cv_select_constant(const Dataset& dataset, const EstimatorConfig& config,
                            const CvConfig& cv) {
  cv.validate();
  config.validate();
  if (dataset.size() < cv.folds) {
    throw InvalidArgument("dataset has " + std::to_string(dataset.size()) +
                          " samples, fewer than " + std::to_string(cv.folds) + " folds");
  }
  if (dataset.dim() != config.d) throw InvalidArgument("config dimension does not match data");

  const auto folds = random_partition(dataset, cv.folds, cv.seed).index_blocks();
  std::vector<Dataset> train_sets;
  std::vector<Dataset> held_out;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    std::vector<std::size_t> train_idx;
    for (std::size_t g = 0; g < folds.size(); ++g) {
      if (g != f) train_idx.insert(train_idx.end(), folds[g].begin(), folds[g].end());
    }
    train_sets.push_back(dataset.subset(train_idx));
    held_out.push_back(dataset.subset(folds[f]));
  }

  CvResult result;
  result.scores.resize(cv.grid.size());
  for (std::size_t c = 0; c < cv.grid.size(); ++c) {
    double total = 0.0;
    for (std::size_t f = 0; f < folds.size(); ++f) {
      const auto loc = rule_localization(config, train_sets[f].size(), cv.grid[c]);
      const auto pred = lar_predict_values(train_sets[f], config, loc, held_out[f]);
      total += mse(pred, held_out[f].responses());
    }
    result.scores[c] = total / static_cast<double>(folds.size());
  }
  for (std::size_t c = 1; c < cv.grid.size(); ++c) {
    if (result.scores[c] < result.scores[result.best_index]) result.best_index = c;
  }
  result.constant = cv.grid[result.best_index];
  return result;
}

}  // namespace dclar
