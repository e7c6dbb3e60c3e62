#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dclar/core.hpp"

namespace dclar {

/// Flat list of points of a common dimension.
struct PointSet {
  std::size_t dim = 1;
  std::vector<double> coords;

  std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
  std::span<const double> point(std::size_t i) const { return {coords.data() + i * dim, dim}; }
  void push_back(std::span<const double> p) { coords.insert(coords.end(), p.begin(), p.end()); }
};

/// Disjoint blocks D_1..D_m covering a parent dataset.
class PartitionedDataset {
 public:
  /// Blocks from explicit index sets. The sets must be disjoint and cover
  /// 0..N-1; sizes are not constrained here so that hand-built (e.g. nested)
  /// partitions can be expressed.
  PartitionedDataset(const Dataset& parent, std::vector<std::vector<std::size_t>> index_blocks,
                     std::uint64_t seed = 0);

  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<Dataset>& blocks() const { return blocks_; }
  const Dataset& block(std::size_t j) const { return blocks_[j]; }
  const std::vector<std::vector<std::size_t>>& index_blocks() const { return index_blocks_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t parent_size() const { return parent_size_; }
  std::size_t dim() const { return blocks_.front().dim(); }
  std::size_t min_block_size() const;

 private:
  std::vector<Dataset> blocks_;
  std::vector<std::vector<std::size_t>> index_blocks_;
  std::uint64_t seed_;
  std::size_t parent_size_;
};

/// Seeded uniform permutation followed by contiguous slicing; the first
/// N mod m blocks receive one extra sample. Each block lists its samples in
/// parent order, so m = 1 reproduces the parent exactly.
PartitionedDataset random_partition(const Dataset& dataset, std::size_t m, std::uint64_t seed);

/// Block sizes produced by random_partition for (N, m).
std::vector<std::size_t> partition_sizes(std::size_t n, std::size_t m);

/// max over candidates of the distance to the nearest block sample.
double mesh_norm(const Dataset& block, const PointSet& candidates);

struct MeshNormReport {
  std::vector<double> per_block;
  std::size_t candidate_count = 0;

  double max() const;
  /// Smallest strictly positive entry, or 0 when none exists.
  double min_positive() const;
  /// Number of blocks whose mesh norm strictly exceeds h.
  std::size_t count_exceeding(double h) const;
};

MeshNormReport mesh_norms(const PartitionedDataset& partition, const PointSet& candidates);

inline constexpr std::size_t kDefaultMeshGrid = 1001;
inline constexpr std::size_t kMaxCornerDim = 10;

/// d = 1: a uniform grid of `grid_points` points over the domain bounds.
/// d > 1: every dataset input plus the 2^d corners of the bounds (corners
/// omitted beyond d = 10).
PointSet default_candidates(const Dataset& dataset, std::size_t grid_points = kDefaultMeshGrid);

}  // namespace dclar
