#pragma once

#include <cmath>
#include <span>
#include <string>

namespace dclar {

enum class KernelKind { kNaive, kGaussian };

std::string to_string(KernelKind kind);
KernelKind parse_kernel(const std::string& name);

/// K(u): indicator of the closed unit ball, or exp(-|u|^2).
double kernel_eval(KernelKind kind, std::span<const double> u);

/// Same as kernel_eval but takes |u|^2 directly. No validation; for hot loops.
inline double kernel_from_squared_norm(KernelKind kind, double norm_sq) {
  if (kind == KernelKind::kNaive) return norm_sq <= 1.0 ? 1.0 : 0.0;
  return std::exp(-norm_sq);
}

}  // namespace dclar
