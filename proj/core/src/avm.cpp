#include "dclar/avm.hpp"

#include <algorithm>
#include <cmath>

#include "dclar/lar.hpp"

namespace dclar {

std::string to_string(AvmVariant variant) {
  switch (variant) {
    case AvmVariant::kPlain: return "a1";
    case AvmVariant::kDataDependent: return "a2";
    case AvmVariant::kQualified: return "a3";
  }
  return "unknown";
}

AvmVariant parse_variant(const std::string& name) {
  if (name == "a1") return AvmVariant::kPlain;
  if (name == "a2") return AvmVariant::kDataDependent;
  if (name == "a3") return AvmVariant::kQualified;
  throw InvalidArgument("unknown variant: " + name);
}

KernelKind kernel_of(EstimatorFamily family) {
  if (family == EstimatorFamily::kNwkGaussian) return KernelKind::kGaussian;
  if (family == EstimatorFamily::kNwkNaive) return KernelKind::kNaive;
  throw InvalidArgument("knn has no kernel");
}

double nwk_bandwidth_rule(std::size_t n, double r, std::size_t d, double c) {
  if (n == 0 || !(r > 0.0) || d == 0 || !(c > 0.0)) {
    throw InvalidArgument("bandwidth rule arguments must be positive");
  }
  return c * std::pow(static_cast<double>(n), -1.0 / (2.0 * r + static_cast<double>(d)));
}

NeighborRule knn_k_rule(std::size_t n, std::size_t m, double r, std::size_t d, double c) {
  if (n == 0 || m == 0 || !(r > 0.0) || d == 0 || !(c > 0.0)) {
    throw InvalidArgument("neighbor rule arguments must be positive");
  }
  const double exponent = 2.0 * r / (2.0 * r + static_cast<double>(d));
  const double raw = c * std::pow(static_cast<double>(n), exponent) / static_cast<double>(m);
  const long rounded = std::lround(raw);
  if (rounded < 1) return NeighborRule{1, true};
  return NeighborRule{static_cast<std::size_t>(rounded), false};
}

double data_dependent_bandwidth(const MeshNormReport& mesh, std::size_t m, double r,
                                std::size_t d) {
  if (mesh.per_block.empty()) throw InvalidArgument("mesh norm report is empty");
  if (m == 0 || !(r > 0.0) || d == 0) throw InvalidArgument("bandwidth arguments must be positive");
  const double largest = mesh.max();
  if (!(largest > 0.0)) {
    throw InvalidArgument("every block mesh norm is zero; data-dependent bandwidth undefined");
  }
  const double denom = 2.0 * r + static_cast<double>(d);
  const double scaled = std::pow(static_cast<double>(m), -1.0 / denom) *
                        std::pow(largest, static_cast<double>(d) / denom);
  return std::max(scaled, largest);
}

AvmModel::AvmModel(PartitionedDataset partition, EstimatorConfig config,
                   Localization localization, AvmVariant variant, std::optional<double> tilde_h)
    : partition_(std::move(partition)),
      config_(config),
      localization_(localization),
      variant_(variant),
      tilde_h_(tilde_h) {
  config_.validate();
  if (config_.d != partition_.dim()) throw InvalidArgument("config dimension does not match data");
  if (config_.is_nwk()) {
    const auto* h = std::get_if<Bandwidth>(&localization_);
    if (h == nullptr) throw InvalidArgument("kernel estimators need a bandwidth");
    if (!(h->value > 0.0) || !std::isfinite(h->value)) {
      throw InvalidArgument("bandwidth must be positive and finite");
    }
    if (variant_ == AvmVariant::kDataDependent) {
      if (!tilde_h_ || !(*tilde_h_ > 0.0) || !std::isfinite(*tilde_h_)) {
        throw InvalidArgument("data-dependent variant needs a positive common bandwidth");
      }
    } else if (tilde_h_) {
      throw InvalidArgument("common bandwidth is only meaningful for the data-dependent variant");
    }
  } else {
    const auto* k = std::get_if<NeighborCount>(&localization_);
    if (k == nullptr) throw InvalidArgument("nearest neighbors need a neighbor count");
    if (k->value < 1 || k->value > partition_.min_block_size()) {
      throw InvalidArgument("k must lie in [1, smallest block size]");
    }
    if (tilde_h_) throw InvalidArgument("nearest neighbors take no common bandwidth");
  }
}

AvmModel AvmModel::plain(PartitionedDataset partition, EstimatorConfig config,
                         Localization localization) {
  return AvmModel(std::move(partition), config, localization, AvmVariant::kPlain);
}

AvmModel AvmModel::qualified(PartitionedDataset partition, EstimatorConfig config,
                             Localization localization) {
  return AvmModel(std::move(partition), config, localization, AvmVariant::kQualified);
}

AvmModel AvmModel::data_dependent(PartitionedDataset partition, EstimatorConfig config,
                                  const MeshNormReport& mesh) {
  if (mesh.per_block.size() != partition.block_count()) {
    throw InvalidArgument("mesh norm report does not match the partition");
  }
  const std::size_t m = partition.block_count();
  const double tilde_h = data_dependent_bandwidth(mesh, m, config.r, config.d);
  return AvmModel(std::move(partition), config, Bandwidth{tilde_h}, AvmVariant::kDataDependent,
                  tilde_h);
}

AvmModel AvmModel::data_dependent(PartitionedDataset partition, EstimatorConfig config,
                                  double tilde_h) {
  return AvmModel(std::move(partition), config, Bandwidth{tilde_h}, AvmVariant::kDataDependent,
                  tilde_h);
}

std::optional<double> AvmModel::effective_bandwidth() const {
  if (!config_.is_nwk()) return std::nullopt;
  if (variant_ == AvmVariant::kDataDependent) return tilde_h_;
  return std::get<Bandwidth>(localization_).value;
}

PredictionReport AvmModel::predict(std::span<const double> x) const {
  if (x.size() != partition_.dim()) throw InvalidArgument("query dimension mismatch");
  const std::size_t m = partition_.block_count();
  PredictionReport report;

  if (!config_.is_nwk()) {
    // Every block carries its own data-adaptive radius, so all variants
    // reduce to plain averaging.
    const std::size_t k = std::get<NeighborCount>(localization_).value;
    double sum = 0.0;
    for (const auto& block : partition_.blocks()) sum += knn_predict(block, k, x);
    report.value = sum / static_cast<double>(m);
    report.active_blocks = m;
    return report;
  }

  const KernelKind kind = kernel_of(config_.family);
  const double h = *effective_bandwidth();
  double sum_all = 0.0;
  double sum_active = 0.0;
  for (const auto& block : partition_.blocks()) {
    const NwkEstimate est = nwk_estimate(block, kind, h, x);
    sum_all += est.value;
    if (est.degenerate) ++report.degenerate_blocks;
    if (est.ball_occupied) {
      ++report.active_blocks;
      sum_active += est.value;
    }
  }
  if (variant_ == AvmVariant::kQualified) {
    report.value =
        report.active_blocks == 0 ? 0.0 : sum_active / static_cast<double>(report.active_blocks);
  } else {
    report.value = sum_all / static_cast<double>(m);
  }
  return report;
}

std::vector<PredictionReport> AvmModel::predict(const Dataset& queries) const {
  std::vector<PredictionReport> out;
  out.reserve(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) out.push_back(predict(queries.x(i)));
  return out;
}

std::vector<double> AvmModel::predict_values(const Dataset& queries) const {
  std::vector<double> out;
  out.reserve(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) out.push_back(predict(queries.x(i)).value);
  return out;
}

namespace {

void require_variant(const AvmModel& model, AvmVariant expected) {
  if (model.variant() != expected) {
    throw InvalidArgument("model variant is " + to_string(model.variant()) + ", expected " +
                          to_string(expected));
  }
}

}  // namespace

PredictionReport avm_predict_a1(const AvmModel& model, std::span<const double> x) {
  require_variant(model, AvmVariant::kPlain);
  return model.predict(x);
}

PredictionReport avm_predict_a2(const AvmModel& model, std::span<const double> x) {
  require_variant(model, AvmVariant::kDataDependent);
  return model.predict(x);
}

PredictionReport avm_predict_a3(const AvmModel& model, std::span<const double> x) {
  require_variant(model, AvmVariant::kQualified);
  return model.predict(x);
}

double lar_predict(const Dataset& data, const EstimatorConfig& config,
                   const Localization& localization, std::span<const double> x) {
  if (config.is_nwk()) {
    const auto* h = std::get_if<Bandwidth>(&localization);
    if (h == nullptr) throw InvalidArgument("kernel estimators need a bandwidth");
    return nwk_predict(data, kernel_of(config.family), h->value, x);
  }
  const auto* k = std::get_if<NeighborCount>(&localization);
  if (k == nullptr) throw InvalidArgument("nearest neighbors need a neighbor count");
  return knn_predict(data, k->value, x);
}

std::vector<double> lar_predict_values(const Dataset& data, const EstimatorConfig& config,
                                       const Localization& localization, const Dataset& queries) {
  std::vector<double> out;
  out.reserve(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    out.push_back(lar_predict(data, config, localization, queries.x(i)));
  }
  return out;
}

}  // namespace dclar
