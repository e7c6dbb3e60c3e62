#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dclar/avm.hpp"
#include "dclar/core.hpp"
#include "dclar/datagen.hpp"
#include "dclar/partition.hpp"
#include "dclar/tuning.hpp"

namespace dclar {

enum class Scenario { kSim1Nwk, kSim1Knn, kSim1Variants, kSim2, kRoad };

std::string to_string(Scenario scenario);
Scenario parse_scenario(const std::string& name);

struct VariantSet {
  bool a1 = true;
  bool a2 = false;
  bool a3 = false;
};

/// Parses "lo:hi:step" (arithmetic), "lo:hi:*factor" (geometric) or a
/// comma-separated list.
std::vector<std::size_t> parse_m_grid(const std::string& text);
std::string format_m_grid(const std::vector<std::size_t>& grid);

struct ExperimentConfig {
  Scenario scenario = Scenario::kSim1Nwk;
  std::size_t n = 10000;
  std::size_t test_size = 1000;
  std::vector<std::size_t> m_grid;
  std::size_t trials = 20;
  std::uint64_t base_seed = 0;
  EstimatorConfig estimator;
  TargetModel target;
  VariantSet variants;
  /// Rule constant; cross-validated once on the first trial's training set
  /// when absent.
  std::optional<double> fixed_constant;
  std::size_t cv_folds = 5;
  double cv_grid_lo = 0.05;
  double cv_grid_hi = 5.0;
  std::size_t cv_grid_n = 20;
  std::size_t mesh_grid = kDefaultMeshGrid;
  std::optional<std::string> data_path;  // road network input

  void validate() const;
};

/// Defaults for each scenario (targets, noise, grids, variants, family).
ExperimentConfig scenario_defaults(Scenario scenario);

struct ResultRow {
  std::size_t trial = 0;
  std::size_t m = 0;
  bool skipped = false;
  double ge = 0.0;
  double le = 0.0;
  std::optional<double> ae_a1;
  std::optional<double> ae_a2;
  std::optional<double> ae_a3;
  std::optional<std::size_t> inactive;  // blocks whose mesh norm exceeds h
  double parameter = 0.0;               // h, or k for nearest neighbors
  std::optional<double> tilde_h;
};

/// Test MSE of the single-machine estimator on all of `train`, with the
/// parameter rule evaluated at |train|.
double global_error(const Dataset& train, const Dataset& test, const EstimatorConfig& estimator);

/// One row: GE, LE (block 1 alone, rule at its size) and the requested AE
/// columns for m blocks. `ge` may carry a precomputed global error.
ResultRow compute_ge_le_ae(const Dataset& train, const Dataset& test,
                           const EstimatorConfig& estimator, std::size_t m, std::uint64_t seed,
                           const VariantSet& variants, std::size_t mesh_grid = kDefaultMeshGrid,
                           std::optional<double> ge = std::nullopt);

struct ExperimentResult {
  ExperimentConfig config;
  double constant = 0.0;
  bool constant_from_cv = false;
  std::size_t train_size = 0;  // actual sizes, which may differ from the
  std::size_t test_size = 0;   // request for ingested data
  std::size_t rows_skipped_on_load = 0;
  std::vector<ResultRow> rows;  // (trial, m) order
};

ExperimentResult run_experiment(const ExperimentConfig& config);

struct ColumnStat {
  double mean = 0.0;
  double sd = 0.0;  // population form
};

struct SummaryRow {
  std::size_t m = 0;
  std::size_t trials = 0;
  bool skipped = false;
  std::optional<ColumnStat> ge, le, ae_a1, ae_a2, ae_a3, inactive;
};

std::vector<SummaryRow> summarize(const ExperimentResult& result);

/// One-line description of the config, seeds and rule constant; written as the
/// leading comment of every output file.
std::string describe(const ExperimentResult& result);

void write_summary_csv(std::ostream& out, const ExperimentResult& result,
                       const std::vector<SummaryRow>& summary);
void write_trials_csv(std::ostream& out, const ExperimentResult& result);
void write_summary_table(std::ostream& out, const std::vector<SummaryRow>& summary);

}  // namespace dclar
