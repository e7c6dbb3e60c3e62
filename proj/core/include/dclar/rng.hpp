#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace dclar {

/// Seeded generator with platform-independent output.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. The standard distributions are not, so every derived variate is
/// computed here:
///   uniform01  top 53 bits of one engine draw, scaled to [0,1)
///   index(n)   rejection sampling on the engine draw, exact in [0,n)
///   normal     Box-Muller on two uniforms, cosine branch only
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  std::size_t index(std::size_t n);

  double normal(double mean, double sd);

  /// Uniformly random permutation of 0..n-1 (Fisher-Yates).
  std::vector<std::size_t> permutation(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

/// Derives an independent stream seed from a base seed and a stream tag
/// (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace dclar
