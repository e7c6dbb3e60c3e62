#include "dclar/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dclar/rng.hpp"

namespace dclar {

PartitionedDataset::PartitionedDataset(const Dataset& parent,
                                       std::vector<std::vector<std::size_t>> index_blocks,
                                       std::uint64_t seed)
    : index_blocks_(std::move(index_blocks)), seed_(seed), parent_size_(parent.size()) {
  if (index_blocks_.empty()) throw InvalidArgument("partition needs at least one block");
  std::vector<bool> seen(parent.size(), false);
  std::size_t total = 0;
  for (const auto& indices : index_blocks_) {
    if (indices.empty()) throw InvalidArgument("partition blocks must be nonempty");
    for (std::size_t idx : indices) {
      if (idx >= parent.size()) throw InvalidArgument("partition index out of range");
      if (seen[idx]) throw InvalidArgument("partition blocks overlap");
      seen[idx] = true;
    }
    total += indices.size();
  }
  if (total != parent.size()) throw InvalidArgument("partition blocks do not cover the dataset");
  blocks_.reserve(index_blocks_.size());
  for (const auto& indices : index_blocks_) blocks_.push_back(parent.subset(indices));
}

std::size_t PartitionedDataset::min_block_size() const {
  std::size_t smallest = std::numeric_limits<std::size_t>::max();
  for (const auto& b : blocks_) smallest = std::min(smallest, b.size());
  return smallest;
}

std::vector<std::size_t> partition_sizes(std::size_t n, std::size_t m) {
  if (m == 0 || m > n) {
    throw InvalidArgument("block count m = " + std::to_string(m) + " must lie in [1, " +
                          std::to_string(n) + "]");
  }
  std::vector<std::size_t> sizes(m, n / m);
  for (std::size_t j = 0; j < n % m; ++j) ++sizes[j];
  return sizes;
}

PartitionedDataset random_partition(const Dataset& dataset, std::size_t m, std::uint64_t seed) {
  const auto sizes = partition_sizes(dataset.size(), m);
  Rng rng(seed);
  const auto perm = rng.permutation(dataset.size());
  std::vector<std::vector<std::size_t>> index_blocks(m);
  std::size_t offset = 0;
  for (std::size_t j = 0; j < m; ++j) {
    index_blocks[j].assign(perm.begin() + static_cast<std::ptrdiff_t>(offset),
                           perm.begin() + static_cast<std::ptrdiff_t>(offset + sizes[j]));
    // Within a block samples keep parent order.
    std::sort(index_blocks[j].begin(), index_blocks[j].end());
    offset += sizes[j];
  }
  return PartitionedDataset(dataset, std::move(index_blocks), seed);
}

namespace {

// Exhaustive scan. A candidate whose partial minimum has already fallen to
// the running max cannot raise it, so its scan stops early; the result
// equals the exhaustive max-min.
double mesh_norm_sq_direct(const Dataset& block, const PointSet& candidates) {
  const std::size_t dim = block.dim();
  const double* inputs = block.inputs().data();
  double best = 0.0;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const double* p = candidates.coords.data() + c * dim;
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < block.size(); ++i) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double diff = p[k] - inputs[i * dim + k];
        d2 += diff * diff;
      }
      if (d2 < nearest) {
        nearest = d2;
        if (nearest <= best) break;
      }
    }
    best = std::max(best, nearest);
  }
  return best;
}

// Same result for large blocks: samples sorted by the first coordinate are
// visited in order of increasing first-coordinate gap, and the walk ends once
// that gap alone reaches the nearest squared distance found so far.
double mesh_norm_sq_sorted(const Dataset& block, const PointSet& candidates) {
  const std::size_t dim = block.dim();
  const std::size_t n = block.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const double* inputs = block.inputs().data();
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return inputs[a * dim] < inputs[b * dim]; });
  std::vector<double> sorted(n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy_n(inputs + order[i] * dim, dim, sorted.begin() + static_cast<std::ptrdiff_t>(i * dim));
  }
  auto sq_dist = [&](const double* p, std::size_t i) {
    double d2 = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double diff = p[k] - sorted[i * dim + k];
      d2 += diff * diff;
    }
    return d2;
  };
  auto gap_sq = [&](const double* p, std::size_t i) {
    const double diff = p[0] - sorted[i * dim];
    return diff * diff;
  };

  double best = 0.0;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const double* p = candidates.coords.data() + c * dim;
    // First sample whose leading coordinate is not below the candidate's.
    std::size_t lo_count = 0;
    std::size_t len = n;
    while (len > 0) {
      const std::size_t half = len / 2;
      if (sorted[(lo_count + half) * dim] < p[0]) {
        lo_count += half + 1;
        len -= half + 1;
      } else {
        len = half;
      }
    }
    std::size_t up = lo_count;    // next index to visit going right
    std::size_t down = lo_count;  // one past the next index going left
    double nearest = std::numeric_limits<double>::infinity();
    while (up < n || down > 0) {
      const double gap_up = up < n ? gap_sq(p, up) : std::numeric_limits<double>::infinity();
      const double gap_down = down > 0 ? gap_sq(p, down - 1) : std::numeric_limits<double>::infinity();
      std::size_t i;
      if (gap_up <= gap_down) {
        if (gap_up >= nearest) break;
        i = up++;
      } else {
        if (gap_down >= nearest) break;
        i = --down;
      }
      const double d2 = sq_dist(p, i);
      if (d2 < nearest) {
        nearest = d2;
        if (nearest <= best) break;
      }
    }
    best = std::max(best, nearest);
  }
  return best;
}

constexpr std::size_t kSortedScanMinBlock = 256;

}  // namespace

double mesh_norm(const Dataset& block, const PointSet& candidates) {
  if (candidates.size() == 0) throw InvalidArgument("mesh norm needs at least one candidate");
  if (candidates.dim != block.dim()) throw InvalidArgument("candidate dimension mismatch");
  const double best = block.size() >= kSortedScanMinBlock ? mesh_norm_sq_sorted(block, candidates)
                                                          : mesh_norm_sq_direct(block, candidates);
  return std::sqrt(best);
}

double MeshNormReport::max() const {
  double out = 0.0;
  for (double v : per_block) out = std::max(out, v);
  return out;
}

double MeshNormReport::min_positive() const {
  double out = 0.0;
  for (double v : per_block) {
    if (v > 0.0 && (out == 0.0 || v < out)) out = v;
  }
  return out;
}

std::size_t MeshNormReport::count_exceeding(double h) const {
  return static_cast<std::size_t>(
      std::count_if(per_block.begin(), per_block.end(), [h](double v) { return v > h; }));
}

MeshNormReport mesh_norms(const PartitionedDataset& partition, const PointSet& candidates) {
  MeshNormReport report;
  report.candidate_count = candidates.size();
  report.per_block.reserve(partition.block_count());
  for (const auto& block : partition.blocks()) {
    report.per_block.push_back(mesh_norm(block, candidates));
  }
  return report;
}

PointSet default_candidates(const Dataset& dataset, std::size_t grid_points) {
  const std::size_t dim = dataset.dim();
  const auto& bounds = dataset.bounds();
  PointSet out;
  out.dim = dim;
  if (dim == 1) {
    if (grid_points < 2) throw InvalidArgument("mesh grid needs at least 2 points");
    out.coords.resize(grid_points);
    const double lo = bounds[0].lo;
    const double width = bounds[0].width();
    for (std::size_t i = 0; i < grid_points; ++i) {
      out.coords[i] = lo + width * static_cast<double>(i) / static_cast<double>(grid_points - 1);
    }
    out.coords.back() = bounds[0].hi;
    return out;
  }
  out.coords.assign(dataset.inputs().begin(), dataset.inputs().end());
  if (dim <= kMaxCornerDim) {
    std::vector<double> corner(dim);
    for (std::size_t mask = 0; mask < (std::size_t{1} << dim); ++mask) {
      for (std::size_t k = 0; k < dim; ++k) {
        corner[k] = (mask >> k) & 1U ? bounds[k].hi : bounds[k].lo;
      }
      out.push_back(corner);
    }
  }
  return out;
}

}  // namespace dclar
