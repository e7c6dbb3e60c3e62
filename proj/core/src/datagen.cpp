#include "dclar/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "dclar/csv.hpp"
#include "dclar/rng.hpp"

namespace dclar {

std::string to_string(TargetKind kind) {
  switch (kind) {
    case TargetKind::kG1: return "g1";
    case TargetKind::kG2: return "g2";
    case TargetKind::kG3: return "g3";
  }
  return "unknown";
}

TargetKind parse_target(const std::string& name) {
  if (name == "g1") return TargetKind::kG1;
  if (name == "g2") return TargetKind::kG2;
  if (name == "g3") return TargetKind::kG3;
  throw InvalidArgument("unknown target: " + name);
}

TargetModel standard_model(TargetKind kind) {
  const double variance = kind == TargetKind::kG3 ? kSim2NoiseVariance : kSim1NoiseVariance;
  return TargetModel{kind, std::sqrt(variance)};
}

double eval_target(const TargetModel& model, std::span<const double> x) {
  if (x.size() != model.dim()) {
    throw InvalidArgument(to_string(model.kind) + " expects dimension " +
                          std::to_string(model.dim()) + ", got " + std::to_string(x.size()));
  }
  switch (model.kind) {
    case TargetKind::kG1: {
      const double t = x[0];
      if (t > 0.5) return 0.0;
      const double base = std::max(1.0 - 2.0 * t, 0.0);
      return base * base * base * (1.0 + 6.0 * t);
    }
    case TargetKind::kG2: {
      double norm_sq = 0.0;
      for (double v : x) norm_sq += v * v;
      const double norm = std::sqrt(norm_sq);
      const double base = std::max(1.0 - norm, 0.0);
      const double b2 = base * base;
      return b2 * b2 * base * (1.0 + 5.0 * norm) + norm_sq / 5.0;
    }
    case TargetKind::kG3:
      return std::min(x[0], 1.0 - x[0]);
  }
  return 0.0;
}

namespace {

Dataset generate(const TargetModel& model, std::size_t n, std::uint64_t seed, double noise_sd) {
  if (n == 0) throw InvalidArgument("sample count must be positive");
  if (!(noise_sd >= 0.0)) throw InvalidArgument("noise sd must be nonnegative");
  const std::size_t dim = model.dim();
  Rng rng(seed);
  std::vector<double> inputs(n * dim);
  std::vector<double> responses(n);
  // Per sample: d uniforms for x, then (if noisy) two uniforms for the noise.
  for (std::size_t i = 0; i < n; ++i) {
    std::span<double> xi(inputs.data() + i * dim, dim);
    for (double& v : xi) v = rng.uniform01();
    const double g = eval_target(model, xi);
    responses[i] = noise_sd > 0.0 ? g + rng.normal(0.0, noise_sd) : g;
  }
  return Dataset(dim, std::move(inputs), std::move(responses), unit_cube(dim));
}

}  // namespace

Dataset generate_dataset(const TargetModel& model, std::size_t n, std::uint64_t seed) {
  return generate(model, n, seed, model.noise_sd);
}

Dataset generate_test_set(const TargetModel& model, std::size_t t, std::uint64_t seed) {
  return generate(model, t, seed, 0.0);
}

RoadNetworkLoad load_road_network(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open road network file: " + path);
  std::vector<double> inputs;
  std::vector<double> responses;
  std::size_t rows = 0;
  std::size_t skipped = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++rows;
    const auto fields = split_fields(line);
    if (fields.size() != 4) {
      ++skipped;
      continue;
    }
    const auto osm = parse_double(fields[0]);
    const auto lon = parse_double(fields[1]);
    const auto lat = parse_double(fields[2]);
    const auto elev = parse_double(fields[3]);
    if (!osm || !lon || !lat || !elev) {
      ++skipped;
      continue;
    }
    inputs.push_back(*lon);
    inputs.push_back(*lat);
    responses.push_back(*elev);
  }
  if (in.bad()) throw IoError("read failed: " + path);
  if (responses.empty()) throw InvalidData(path + ": no valid road network rows");
  return RoadNetworkLoad{Dataset::with_observed_bounds(2, std::move(inputs), std::move(responses)),
                         rows, skipped};
}

}  // namespace dclar
