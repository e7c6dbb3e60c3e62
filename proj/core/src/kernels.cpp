#include "dclar/kernels.hpp"

#include "dclar/core.hpp"

namespace dclar {

std::string to_string(KernelKind kind) {
  return kind == KernelKind::kNaive ? "naive" : "gaussian";
}

KernelKind parse_kernel(const std::string& name) {
  if (name == "naive") return KernelKind::kNaive;
  if (name == "gaussian") return KernelKind::kGaussian;
  throw InvalidArgument("unknown kernel: " + name);
}

double kernel_eval(KernelKind kind, std::span<const double> u) {
  if (u.empty()) throw InvalidArgument("kernel argument must have dimension >= 1");
  double norm_sq = 0.0;
  for (double v : u) {
    if (!std::isfinite(v)) throw InvalidArgument("kernel argument is not finite");
    norm_sq += v * v;
  }
  return kernel_from_squared_norm(kind, norm_sq);
}

}  // namespace dclar
