// Acceptance suite. Prints one line per criterion and exits nonzero when any
// criterion fails. Pass criterion numbers as arguments to run a subset; the
// road-network criterion reads its file from --road PATH or DCLAR_ROAD_DATA.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dclar/avm.hpp"
#include "dclar/datagen.hpp"
#include "dclar/experiments.hpp"
#include "dclar/lar.hpp"
#include "dclar/rng.hpp"
#include "dclar/tuning.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using namespace dclar;

namespace {

enum class Status { kPass, kFail, kSkip };

struct Outcome {
  Status status = Status::kFail;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  std::optional<double> time_limit_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

std::string sci(double v) { return fmt("%.3e", v); }

Outcome verdict(bool ok, std::string detail) {
  return Outcome{ok ? Status::kPass : Status::kFail, std::move(detail)};
}

const SummaryRow& row_at(const std::vector<SummaryRow>& summary, std::size_t m) {
  for (const auto& s : summary) {
    if (s.m == m) return s;
  }
  throw std::runtime_error("m=" + std::to_string(m) + " missing from summary");
}

// Candidate set rebuilt independently: 1001-point grid on the bounds for one
// dimension, otherwise every sample plus the corners of the bounding box.
std::vector<std::vector<double>> candidate_rows(const Dataset& data) {
  std::vector<std::vector<double>> out;
  const auto& b = data.bounds();
  if (data.dim() == 1) {
    for (int i = 0; i <= 1000; ++i) out.push_back({b[0].lo + (b[0].hi - b[0].lo) * i / 1000.0});
    return out;
  }
  for (std::size_t i = 0; i < data.size(); ++i) out.emplace_back(data.x(i).begin(), data.x(i).end());
  for (std::size_t mask = 0; mask < (std::size_t{1} << data.dim()); ++mask) {
    std::vector<double> corner(data.dim());
    for (std::size_t k = 0; k < data.dim(); ++k) corner[k] = (mask >> k) & 1U ? b[k].hi : b[k].lo;
    out.push_back(corner);
  }
  return out;
}

Outcome oracle_equivalence() {
  testing::Gen gen(20240601);
  const std::size_t dims[] = {1, 2, 5};
  double worst = 0.0;
  std::size_t comparisons = 0;
  for (int inst = 0; inst < 200; ++inst) {
    const std::size_t dim = dims[inst % 3];
    const std::size_t n = gen.integer(1, 50);
    const std::size_t m = gen.integer(1, std::min<std::size_t>(5, n));
    const Dataset data = gen.dataset(n, dim);
    const auto part = random_partition(data, m, gen.engine()());
    std::vector<Dataset> blocks;
    for (const auto& idx : part.index_blocks()) blocks.push_back(data.subset(idx));

    EstimatorConfig cfg;
    cfg.d = dim;
    const bool naive = inst % 2 == 0;
    cfg.family = naive ? EstimatorFamily::kNwkNaive : EstimatorFamily::kNwkGaussian;
    const double h = gen.uniform(0.05, 1.0);

    const auto cand = candidate_rows(data);
    std::vector<double> mesh;
    for (const auto& b : blocks) mesh.push_back(oracle::mesh_norm(b, cand));
    const double th = oracle::tilde_h(mesh, m, cfg.r, dim);

    const auto a1 = AvmModel::plain(part, cfg, Bandwidth{h});
    const auto a2 = AvmModel::data_dependent(part, cfg, mesh_norms(part, default_candidates(data)));
    const auto a3 = AvmModel::qualified(part, cfg, Bandwidth{h});
    worst = std::max(worst, std::abs(*a2.tilde_h() - th));

    EstimatorConfig knn = cfg;
    knn.family = EstimatorFamily::kKnn;
    const std::size_t k = gen.integer(1, part.min_block_size());

    for (int q = 0; q < 10; ++q) {
      const auto x = gen.point(dim, -0.2, 1.2);
      const double ref1 = oracle::avm_plain_nwk(blocks, naive, h, x);
      const double ref2 = oracle::avm_plain_nwk(blocks, naive, th, x);
      const double ref3 = oracle::avm_qualified_nwk(blocks, naive, h, x);
      const double refk = oracle::avm_knn(blocks, k, x);
      worst = std::max(worst, std::abs(avm_predict_a1(a1, x).value - ref1));
      worst = std::max(worst, std::abs(avm_predict_a2(a2, x).value - ref2));
      worst = std::max(worst, std::abs(avm_predict_a3(a3, x).value - ref3));
      for (auto variant : {AvmVariant::kPlain, AvmVariant::kDataDependent, AvmVariant::kQualified}) {
        const AvmModel model(part, knn, NeighborCount{k}, variant);
        worst = std::max(worst, std::abs(model.predict(x).value - refk));
      }
      comparisons += 6;
    }
  }
  return verdict(worst <= 1e-10, "200 instances, " + std::to_string(comparisons) +
                                     " predictions, max |diff| " + sci(worst) + " (tol 1e-10)");
}

Outcome collapse_identities() {
  double worst = 0.0;
  // AE_A1 = GE with a single block, for every family.
  const auto model = standard_model(TargetKind::kG1);
  const Dataset train = generate_dataset(model, 1000, 11);
  const Dataset test = generate_test_set(model, 1000, 12);
  for (auto family : {EstimatorFamily::kNwkNaive, EstimatorFamily::kNwkGaussian, EstimatorFamily::kKnn}) {
    EstimatorConfig est;
    est.family = family;
    const auto row = compute_ge_le_ae(train, test, est, 1, 13, {true, true, true});
    worst = std::max(worst, std::abs(*row.ae_a1 - row.ge));
  }

  // A3 = A1 at grid queries where every block is active.
  EstimatorConfig naive;
  const Dataset big = generate_dataset(model, 2000, 14);
  const auto part = random_partition(big, 10, 15);
  const double h = nwk_bandwidth_rule(big.size(), 1.0, 1, 1.0);
  const auto a1 = AvmModel::plain(part, naive, Bandwidth{h});
  const auto a3 = AvmModel::qualified(part, naive, Bandwidth{h});
  std::size_t all_active = 0;
  for (int q = 0; q < 100; ++q) {
    const std::vector x{q / 99.0};
    const auto r3 = a3.predict(x);
    if (r3.active_blocks != part.block_count()) continue;
    ++all_active;
    worst = std::max(worst, std::abs(a1.predict(x).value - r3.value));
  }

  // KNN with k equal to the block size returns the block mean.
  testing::Gen gen(16);
  for (int t = 0; t < 200; ++t) {
    const std::size_t dim = gen.integer(1, 5);
    const Dataset block = gen.dataset(gen.integer(1, 60), dim);
    double mean = 0.0;
    for (double y : block.responses()) mean += y;
    mean /= static_cast<double>(block.size());
    worst = std::max(worst, std::abs(knn_predict(block, block.size(), gen.point(dim)) - mean));
  }
  return verdict(worst <= 1e-12 && all_active > 0,
                 "max |diff| " + sci(worst) + " (tol 1e-12), " + std::to_string(all_active) +
                     "/100 queries with every block active");
}

Outcome weight_properties() {
  testing::Gen gen(17);
  std::size_t degenerate = 0;
  std::size_t violations = 0;
  double worst_sum = 0.0;
  for (int q = 0; q < 10000; ++q) {
    const std::size_t dim = gen.integer(1, 5);
    const Dataset block = gen.dataset(gen.integer(1, 50), dim);
    const auto kind = q % 2 == 0 ? KernelKind::kNaive : KernelKind::kGaussian;
    const double h = std::exp(gen.uniform(std::log(0.01), std::log(2.0)));
    const auto x = gen.point(dim, -0.5, 1.5);
    const auto w = nwk_weights(block, kind, h, x);
    double total = 0.0;
    for (double v : w.weights) {
      if (v < 0.0) ++violations;
      total += v;
    }
    if (w.degenerate) {
      ++degenerate;
      if (total != 0.0 || nwk_predict(block, kind, h, x) != 0.0) ++violations;
    } else {
      worst_sum = std::max(worst_sum, std::abs(total - 1.0));
      if (std::abs(total - 1.0) > 1e-9) ++violations;
    }
  }
  return verdict(violations == 0, "10000 queries, " + std::to_string(degenerate) +
                                      " degenerate, max |sum-1| " + sci(worst_sum) + ", " +
                                      std::to_string(violations) + " violations");
}

Outcome rate_check() {
  const auto model = standard_model(TargetKind::kG1);
  EstimatorConfig est;
  // Constant chosen once by cross-validation on a mid-sized sample.
  est.constant_c = cv_select_constant(generate_dataset(model, 2000, derive_seed(404, 0)), est,
                                      default_cv_config(derive_seed(404, 1)))
                       .constant;
  const std::vector<std::size_t> sizes{500, 1000, 2000, 4000, 8000};
  std::vector<double> lx, ly;
  std::string means;
  for (std::size_t n : sizes) {
    double total = 0.0;
    for (std::uint64_t t = 0; t < 10; ++t) {
      const std::uint64_t seed = derive_seed(1000 + n, t);
      const Dataset train = generate_dataset(model, n, derive_seed(seed, 0));
      const Dataset test = generate_test_set(model, 1000, derive_seed(seed, 1));
      total += global_error(train, test, est);
    }
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(std::log(total / 10.0));
    means += " " + sci(total / 10.0);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(lx.size());
  my /= static_cast<double>(ly.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  const double slope = sxy / sxx;
  return verdict(std::abs(slope + 2.0 / 3.0) <= 0.2,
                 "slope " + fmt("%.4f", slope) + " (target -0.6667 +/- 0.2), c=" +
                     fmt("%.4g", est.constant_c) + ", mean MSE" + means);
}

struct Sweep {
  ExperimentResult result;
  std::vector<SummaryRow> summary;
};

Sweep run_sweep(Scenario scenario, std::size_t trials) {
  auto cfg = scenario_defaults(scenario);
  cfg.trials = trials;
  Sweep s{run_experiment(cfg), {}};
  s.summary = summarize(s.result);
  return s;
}

const Sweep& variants_sweep() {
  static const Sweep sweep = run_sweep(Scenario::kSim1Variants, 5);
  return sweep;
}

Outcome degradation() {
  const auto& s = variants_sweep().summary;
  const auto& lo = row_at(s, 5);
  const auto& hi = row_at(s, 350);
  const double ratio = hi.ae_a1->mean / lo.ae_a1->mean;
  const double in_lo = lo.inactive->mean;
  const double in_hi = hi.inactive->mean;
  std::optional<std::size_t> first_jump;
  for (const auto& r : s) {
    if (!first_jump && r.ae_a1->mean >= 3.0 * lo.ae_a1->mean) first_jump = r.m;
  }
  return verdict(ratio >= 3.0 && in_lo == 0.0 && in_hi >= 1.0,
                 "AE_A1(350)/AE_A1(5) = " + fmt("%.2f", ratio) + " (need >= 3), inactive " +
                     fmt("%.2f", in_lo) + " at m=5 and " + fmt("%.2f", in_hi) +
                     " at m=350, first m with 3x AE_A1: " +
                     (first_jump ? std::to_string(*first_jump) : std::string("none")) +
                     ", c=" + fmt("%.4g", variants_sweep().result.constant));
}

Outcome variant_robustness() {
  const auto& s = variants_sweep().summary;
  const SummaryRow* target = nullptr;
  for (const auto& r : s) {
    if (r.inactive && r.inactive->mean > 0.0) target = &r;
  }
  if (target == nullptr) return verdict(false, "no m with a nonzero mean inactive count");
  const double a1 = target->ae_a1->mean;
  const double a2 = target->ae_a2->mean;
  const double a3 = target->ae_a3->mean;
  return verdict(a3 <= a1 && a2 <= a1, "at m=" + std::to_string(target->m) + ": AE_A1 " + sci(a1) +
                                           ", AE_A2 " + sci(a2) + ", AE_A3 " + sci(a3));
}

Outcome stability() {
  const Sweep sweep = run_sweep(Scenario::kSim2, 5);
  const auto& lo = row_at(sweep.summary, 8);
  const auto& hi = row_at(sweep.summary, 2048);
  const double r3 = hi.ae_a3->mean / lo.ae_a3->mean;
  const double r1 = hi.ae_a1->mean / lo.ae_a1->mean;
  return verdict(r3 <= 2.0 && r3 >= 0.5 && r1 >= 2.0,
                 "AE_A3(2048)/AE_A3(8) = " + fmt("%.3f", r3) + " (need within 2x), AE_A1 ratio " +
                     fmt("%.2f", r1) + " (need >= 2), c=" + fmt("%.4g", sweep.result.constant));
}

Outcome knn_sanity() {
  const Sweep sweep = run_sweep(Scenario::kSim1Knn, 5);
  double worst = 1.0;
  std::size_t worst_m = 0;
  std::size_t checked = 0;
  std::size_t outside = 0;
  std::string offenders;
  for (const auto& r : sweep.summary) {
    if (r.skipped) continue;
    ++checked;
    const double ratio = r.ae_a1->mean / r.ge->mean;
    const double spread = std::max(ratio, 1.0 / ratio);
    if (spread > worst) {
      worst = spread;
      worst_m = r.m;
    }
    if (spread > 2.0) {
      ++outside;
      offenders += (offenders.empty() ? "" : ",") + std::to_string(r.m);
    }
  }
  return verdict(outside == 0 && checked > 0,
                 std::to_string(checked) + " admissible m, worst AE/GE factor " + fmt("%.3f", worst) +
                     " at m=" + std::to_string(worst_m) + " (need <= 2)" +
                     (outside ? ", outside at m=" + offenders : std::string()) +
                     ", c=" + fmt("%.4g", sweep.result.constant));
}

std::string serialize(const ExperimentConfig& cfg) {
  const auto result = run_experiment(cfg);
  std::ostringstream out;
  write_summary_csv(out, result, summarize(result));
  write_trials_csv(out, result);
  return out.str();
}

Outcome determinism() {
  std::vector<ExperimentConfig> configs;
  auto variants = scenario_defaults(Scenario::kSim1Variants);
  variants.n = 2000;
  variants.trials = 2;
  variants.m_grid = {1, 10, 50};
  configs.push_back(variants);
  auto knn = scenario_defaults(Scenario::kSim1Knn);
  knn.n = 2000;
  knn.trials = 2;
  knn.m_grid = {1, 20, 200};
  configs.push_back(knn);
  auto sim2 = scenario_defaults(Scenario::kSim2);
  sim2.n = 2000;
  sim2.trials = 2;
  sim2.m_grid = {8, 64};
  sim2.fixed_constant = 1.0;
  configs.push_back(sim2);
  std::size_t bytes = 0;
  for (const auto& cfg : configs) {
    const std::string a = serialize(cfg);
    const std::string b = serialize(cfg);
    if (a != b) return verdict(false, "outputs differ for scenario " + to_string(cfg.scenario));
    bytes += a.size();
  }
  return verdict(true, "3 configurations, " + std::to_string(bytes) + " bytes identical across runs");
}

std::optional<std::string> road_path;

Outcome road_pipeline() {
  if (!road_path) return Outcome{Status::kSkip, "no road network file (set DCLAR_ROAD_DATA or --road)"};
  const auto load = load_road_network(*road_path);
  const double parsed = static_cast<double>(load.rows_read - load.rows_skipped) /
                        static_cast<double>(load.rows_read);
  auto cfg = scenario_defaults(Scenario::kRoad);
  cfg.data_path = *road_path;
  cfg.n = std::min(cfg.n, load.data.size() - std::min<std::size_t>(load.data.size(), cfg.test_size));
  const auto result = run_experiment(cfg);
  const auto summary = summarize(result);
  double worst = 1.0;
  std::size_t worst_m = 0;
  bool complete = true;
  for (std::size_t m : cfg.m_grid) {
    const auto& r = row_at(summary, m);
    if (r.skipped || !r.ae_a3) {
      complete = false;
      continue;
    }
    const double ratio = r.ae_a3->mean / r.ge->mean;
    const double spread = std::max(ratio, 1.0 / ratio);
    if (spread > worst) {
      worst = spread;
      worst_m = m;
    }
  }
  return verdict(parsed >= 0.999 && complete && worst <= 2.0,
                 "parsed " + fmt("%.5f", parsed) + " of " + std::to_string(load.rows_read) +
                     " rows, N=" + std::to_string(result.train_size) + ", sweep " +
                     (complete ? "complete" : "incomplete") + ", worst AE_A3/GE factor " +
                     fmt("%.3f", worst) + " at m=" + std::to_string(worst_m));
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--road" && i + 1 < argc) {
      road_path = argv[++i];
    } else {
      selected.insert(std::atoi(arg.c_str()));
    }
  }
  if (!road_path) {
    if (const char* env = std::getenv("DCLAR_ROAD_DATA"); env != nullptr && *env != '\0') road_path = env;
  }

  const std::vector<Criterion> criteria{
      {1, "oracle equivalence", 10.0, oracle_equivalence},
      {2, "collapse identities", std::nullopt, collapse_identities},
      {3, "weight properties", std::nullopt, weight_properties},
      {4, "single-machine rate", 120.0, rate_check},
      {5, "degradation with many blocks", 600.0, degradation},
      {6, "variant robustness", std::nullopt, variant_robustness},
      {7, "qualified averaging stability", 600.0, stability},
      {8, "nearest-neighbor sweep", std::nullopt, knn_sanity},
      {9, "determinism", std::nullopt, determinism},
      {10, "road network pipeline", std::nullopt, road_pipeline},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && selected.count(c.id) == 0) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = Outcome{Status::kFail, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out.status == Status::kPass && c.time_limit_s && secs > *c.time_limit_s) {
      out.status = Status::kFail;
      out.detail += ", over the " + fmt("%.0f", *c.time_limit_s) + " s limit";
    }
    const char* tag = out.status == Status::kPass ? "PASS" : out.status == Status::kFail ? "FAIL" : "SKIP";
    std::printf("[%s] criterion %2d %s: %s [%.1f s]\n", tag, c.id, c.name.c_str(), out.detail.c_str(), secs);
    std::fflush(stdout);
    if (out.status == Status::kFail) ++failures;
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
