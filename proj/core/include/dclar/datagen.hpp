#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "dclar/core.hpp"

namespace dclar {

enum class TargetKind { kG1, kG2, kG3 };

std::string to_string(TargetKind kind);
TargetKind parse_target(const std::string& name);

/// Regression target plus additive Gaussian noise level.
struct TargetModel {
  TargetKind kind = TargetKind::kG1;
  double noise_sd = 0.0;

  /// Input dimension fixed by the target: 1 for G1 and G3, 5 for G2.
  std::size_t dim() const { return kind == TargetKind::kG2 ? 5 : 1; }
};

/// Noise of variance 0.1, the level used with G1 and G2.
inline constexpr double kSim1NoiseVariance = 0.1;
/// Noise of variance 1/5, the level used with G3.
inline constexpr double kSim2NoiseVariance = 0.2;

/// Target model with its conventional noise level.
TargetModel standard_model(TargetKind kind);

/// g1(x) = (1-2x)_+^3 (1+6x) on [0, 0.5], 0 beyond.
/// g2(x) = (1-|x|)_+^5 (1+5|x|) + |x|^2/5 in R^5.
/// g3(x) = min(x, 1-x).
double eval_target(const TargetModel& model, std::span<const double> x);

/// N samples, x uniform on [0,1]^d, y = g(x) + N(0, sd^2).
Dataset generate_dataset(const TargetModel& model, std::size_t n, std::uint64_t seed);

/// T noiseless samples, x uniform on [0,1]^d, y = g(x).
Dataset generate_test_set(const TargetModel& model, std::size_t t, std::uint64_t seed);

struct RoadNetworkLoad {
  Dataset data;
  std::size_t rows_read = 0;
  std::size_t rows_skipped = 0;
};

/// Reads lines "OSMID,longitude,latitude,elevation" (no header). Inputs are
/// (longitude, latitude), responses the elevation; malformed rows are skipped
/// and counted. Bounds are the observed bounding box.
RoadNetworkLoad load_road_network(const std::string& path);

}  // namespace dclar
