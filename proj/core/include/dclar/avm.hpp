#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dclar/core.hpp"
#include "dclar/kernels.hpp"
#include "dclar/partition.hpp"

namespace dclar {

struct Bandwidth {
  double value = 0.0;
};

struct NeighborCount {
  std::size_t value = 1;
};

/// h for the kernel estimators, k for nearest neighbors.
using Localization = std::variant<Bandwidth, NeighborCount>;

/// A1: plain averaging. A2: common bandwidth chosen from the block mesh
/// norms. A3: averaging restricted to blocks with a sample within h of the
/// query.
enum class AvmVariant { kPlain, kDataDependent, kQualified };

std::string to_string(AvmVariant variant);
AvmVariant parse_variant(const std::string& name);

/// c * N^(-1/(2r+d)).
double nwk_bandwidth_rule(std::size_t n, double r, std::size_t d, double c);

struct NeighborRule {
  std::size_t k = 1;
  bool clamped = false;  // raw rule rounded below 1
};

/// round(c * N^(2r/(2r+d)) / m), clamped below at 1.
NeighborRule knn_k_rule(std::size_t n, std::size_t m, double r, std::size_t d, double c);

/// max(m^(-1/(2r+d)) * (max_j h_j)^(d/(2r+d)), max_j h_j). Zero entries do
/// not affect the maxima; an all-zero report is rejected.
double data_dependent_bandwidth(const MeshNormReport& mesh, std::size_t m, double r, std::size_t d);

struct PredictionReport {
  double value = 0.0;
  std::size_t active_blocks = 0;      // blocks with a sample within the bandwidth of x
  std::size_t degenerate_blocks = 0;  // blocks whose kernel denominator vanished
};

/// A fitted divide-and-conquer estimator. Immutable; prediction is a pure
/// read and the block sum is always taken in block-index order.
class AvmModel {
 public:
  AvmModel(PartitionedDataset partition, EstimatorConfig config, Localization localization,
           AvmVariant variant, std::optional<double> tilde_h = std::nullopt);

  static AvmModel plain(PartitionedDataset partition, EstimatorConfig config,
                        Localization localization);
  static AvmModel qualified(PartitionedDataset partition, EstimatorConfig config,
                            Localization localization);
  /// A2 for the kernel family with the bandwidth rule applied to the mesh norms.
  static AvmModel data_dependent(PartitionedDataset partition, EstimatorConfig config,
                                 const MeshNormReport& mesh);
  /// A2 with an explicit common bandwidth.
  static AvmModel data_dependent(PartitionedDataset partition, EstimatorConfig config,
                                 double tilde_h);

  PredictionReport predict(std::span<const double> x) const;
  std::vector<PredictionReport> predict(const Dataset& queries) const;
  /// Prediction values only, one per query.
  std::vector<double> predict_values(const Dataset& queries) const;

  const PartitionedDataset& partition() const { return partition_; }
  const EstimatorConfig& config() const { return config_; }
  const Localization& localization() const { return localization_; }
  AvmVariant variant() const { return variant_; }
  std::optional<double> tilde_h() const { return tilde_h_; }
  /// Bandwidth used by every block (tilde_h for A2); empty for KNN.
  std::optional<double> effective_bandwidth() const;

 private:
  PartitionedDataset partition_;
  EstimatorConfig config_;
  Localization localization_;
  AvmVariant variant_;
  std::optional<double> tilde_h_;
};

PredictionReport avm_predict_a1(const AvmModel& model, std::span<const double> x);
PredictionReport avm_predict_a2(const AvmModel& model, std::span<const double> x);
PredictionReport avm_predict_a3(const AvmModel& model, std::span<const double> x);

/// Single-machine estimate on a whole dataset (the m = 1 case).
double lar_predict(const Dataset& data, const EstimatorConfig& config,
                   const Localization& localization, std::span<const double> x);
std::vector<double> lar_predict_values(const Dataset& data, const EstimatorConfig& config,
                                       const Localization& localization, const Dataset& queries);

KernelKind kernel_of(EstimatorFamily family);

}  // namespace dclar
