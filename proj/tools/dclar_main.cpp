// dclar: generate data, fit and query divide-and-conquer local average
// regression models, tune rule constants, and run the experiment sweeps.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dclar/avm.hpp"
#include "dclar/csv.hpp"
#include "dclar/datagen.hpp"
#include "dclar/experiments.hpp"
#include "dclar/partition.hpp"
#include "dclar/tuning.hpp"

namespace {

using namespace dclar;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

std::string trials_path(const std::string& out) {
  const auto dot = out.rfind(".csv");
  if (dot != std::string::npos && dot + 4 == out.size()) return out.substr(0, dot) + ".trials.csv";
  return out + ".trials.csv";
}

Interval parse_interval(const std::string& text) {
  const auto parts = split_fields(text, ':');
  if (parts.size() != 2) throw InvalidArgument("interval must be lo:hi");
  const auto lo = parse_double(parts[0]);
  const auto hi = parse_double(parts[1]);
  if (!lo || !hi || *lo > *hi) throw InvalidArgument("invalid interval: " + text);
  return Interval{*lo, *hi};
}

struct GenOptions {
  std::string target = "g1";
  std::size_t n = 10000;
  std::uint64_t seed = 0;
  std::optional<double> noise_sd;
  bool test_set = false;
  std::string out;
};

void run_gen(const GenOptions& o) {
  TargetModel model = standard_model(parse_target(o.target));
  if (o.noise_sd) model.noise_sd = *o.noise_sd;
  const Dataset data = o.test_set ? generate_test_set(model, o.n, o.seed)
                                  : generate_dataset(model, o.n, o.seed);
  write_dataset_csv(o.out, data);
  std::cerr << "wrote " << data.size() << " samples to " << o.out << '\n';
}

struct PredictOptions {
  std::string variant = "a1";
  std::string kernel = "naive";
  std::size_t blocks = 1;
  std::uint64_t seed = 0;
  std::optional<double> h;
  std::optional<double> c;
  std::optional<std::size_t> k;
  double r = 1.0;
  std::size_t mesh_grid = kDefaultMeshGrid;
  std::optional<std::string> domain;
  std::string train;
  std::string query;
  std::string out;
};

void run_predict(const PredictOptions& o) {
  std::optional<std::vector<Interval>> bounds;
  Dataset train = read_dataset_csv(o.train);
  if (o.domain) {
    bounds = std::vector<Interval>(train.dim(), parse_interval(*o.domain));
    train = read_dataset_csv(o.train, false, bounds);
  }
  const Dataset query = read_dataset_csv(o.query, true, bounds);
  if (query.dim() != train.dim()) throw InvalidArgument("query and training dimensions differ");

  EstimatorConfig config;
  config.family = parse_family(o.kernel);
  config.r = o.r;
  config.d = train.dim();
  if (o.c) config.constant_c = *o.c;

  const std::size_t n = train.size();
  Localization loc;
  if (config.is_nwk()) {
    if (o.k) throw InvalidArgument("--k applies to the knn family only");
    loc = Bandwidth{o.h ? *o.h : nwk_bandwidth_rule(n, config.r, config.d, config.constant_c)};
  } else {
    if (o.h) throw InvalidArgument("--h applies to kernel families only; use --k for knn");
    loc = NeighborCount{o.k ? *o.k
                            : knn_k_rule(n, o.blocks, config.r, config.d, config.constant_c).k};
  }

  PartitionedDataset partition = random_partition(train, o.blocks, o.seed);
  const AvmVariant variant = parse_variant(o.variant);
  std::optional<AvmModel> model;
  if (variant == AvmVariant::kDataDependent && config.is_nwk()) {
    const auto report = mesh_norms(partition, default_candidates(train, o.mesh_grid));
    model.emplace(AvmModel::data_dependent(std::move(partition), config, report));
    std::cerr << "data-dependent bandwidth " << format_double(*model->tilde_h()) << '\n';
  } else {
    model.emplace(std::move(partition), config, loc, variant);
  }

  auto out = open_out(o.out);
  for (std::size_t k = 0; k < query.dim(); ++k) out << 'x' << (k + 1) << ',';
  out << "prediction,active_blocks,degenerate_blocks\n";
  for (std::size_t i = 0; i < query.size(); ++i) {
    const auto rep = model->predict(query.x(i));
    for (double v : query.x(i)) out << format_double(v) << ',';
    out << format_double(rep.value) << ',' << rep.active_blocks << ',' << rep.degenerate_blocks
        << '\n';
  }
  if (!out) throw IoError("write failed: " + o.out);
}

struct TuneOptions {
  std::string target = "g1";
  std::string kernel = "naive";
  std::size_t n = 10000;
  std::size_t folds = 5;
  double grid_lo = 0.05;
  double grid_hi = 5.0;
  std::size_t grid_n = 20;
  std::uint64_t seed = 0;
  double r = 1.0;
  std::optional<std::string> train;
};

void run_tune(const TuneOptions& o) {
  Dataset data = o.train ? read_dataset_csv(*o.train)
                         : generate_dataset(standard_model(parse_target(o.target)), o.n, o.seed);
  EstimatorConfig config;
  config.family = parse_family(o.kernel);
  config.r = o.r;
  config.d = data.dim();
  const CvConfig cv{o.folds, log_grid(o.grid_lo, o.grid_hi, o.grid_n), o.seed};
  const CvResult res = cv_select_constant(data, config, cv);
  std::cout << "constant,cv_mse\n";
  for (std::size_t i = 0; i < cv.grid.size(); ++i) {
    std::cout << format_double(cv.grid[i]) << ',' << format_double(res.scores[i])
              << (i == res.best_index ? ",selected" : "") << '\n';
  }
  std::cerr << "selected constant " << format_double(res.constant) << '\n';
}

struct ExperimentOptions {
  std::string scenario = "sim1-nwk";
  std::optional<std::size_t> n;
  std::optional<std::size_t> trials;
  std::uint64_t seed = 0;
  std::optional<std::string> m_grid;
  std::optional<std::string> kernel;
  std::optional<std::string> target;
  std::optional<double> c;
  std::optional<double> noise_sd;
  std::optional<std::size_t> test_size;
  std::size_t mesh_grid = kDefaultMeshGrid;
  std::optional<std::string> data;
  std::string out;
};

void run_experiment_cmd(const ExperimentOptions& o) {
  ExperimentConfig cfg = scenario_defaults(parse_scenario(o.scenario));
  if (o.target) {
    const auto kind = parse_target(*o.target);
    const double sd = cfg.target.noise_sd;
    cfg.target = standard_model(kind);
    if (o.scenario == "sim2") cfg.target.noise_sd = sd;
    cfg.estimator.d = cfg.target.dim();
  }
  if (o.noise_sd) cfg.target.noise_sd = *o.noise_sd;
  if (o.kernel) {
    const auto family = parse_family(*o.kernel);
    if ((family == EstimatorFamily::kKnn) != (cfg.estimator.family == EstimatorFamily::kKnn)) {
      throw InvalidArgument("scenario " + o.scenario + " does not take --kernel " + *o.kernel);
    }
    cfg.estimator.family = family;
  }
  if (o.n) cfg.n = *o.n;
  if (o.trials) cfg.trials = *o.trials;
  if (o.m_grid) cfg.m_grid = parse_m_grid(*o.m_grid);
  if (o.c) cfg.fixed_constant = *o.c;
  if (o.test_size) cfg.test_size = *o.test_size;
  cfg.base_seed = o.seed;
  cfg.mesh_grid = o.mesh_grid;
  cfg.data_path = o.data;

  const ExperimentResult result = run_experiment(cfg);
  const auto summary = summarize(result);
  {
    auto out = open_out(o.out);
    write_summary_csv(out, result, summary);
  }
  {
    auto out = open_out(trials_path(o.out));
    write_trials_csv(out, result);
  }
  std::cout << "# " << describe(result) << '\n';
  write_summary_table(std::cout, summary);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Divide-and-conquer local average regression"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic dataset CSV");
  gen_cmd->add_option("--target", gen.target, "g1 | g2 | g3")
      ->check(CLI::IsMember({"g1", "g2", "g3"}));
  gen_cmd->add_option("--n", gen.n, "Number of samples")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("--noise-sd", gen.noise_sd, "Noise standard deviation (default per target)");
  gen_cmd->add_flag("--test-set", gen.test_set, "Noiseless responses y = g(x)");
  gen_cmd->add_option("--out", gen.out, "Output CSV")->required();

  PredictOptions pred;
  auto* pred_cmd = app.add_subcommand("predict", "Fit an AVM model and predict query points");
  pred_cmd->set_help_flag("--help", "Print this help message and exit");
  pred_cmd->add_option("--variant", pred.variant)->check(CLI::IsMember({"a1", "a2", "a3"}));
  pred_cmd->add_option("--kernel", pred.kernel)->check(CLI::IsMember({"naive", "gaussian", "knn"}));
  pred_cmd->add_option("--blocks", pred.blocks, "Number of blocks m")->check(CLI::PositiveNumber);
  pred_cmd->add_option("--seed", pred.seed, "Partition seed");
  auto* h_opt = pred_cmd->add_option("--h", pred.h, "Bandwidth");
  auto* c_opt = pred_cmd->add_option("--c", pred.c, "Rule constant");
  h_opt->excludes(c_opt);
  pred_cmd->add_option("--k", pred.k, "Neighbor count (knn)");
  pred_cmd->add_option("--r", pred.r, "Assumed smoothness");
  pred_cmd->add_option("--mesh-grid", pred.mesh_grid, "Mesh grid points (d = 1)");
  pred_cmd->add_option("--domain", pred.domain, "Domain interval lo:hi for every coordinate");
  pred_cmd->add_option("--train", pred.train)->required();
  pred_cmd->add_option("--query", pred.query)->required();
  pred_cmd->add_option("--out", pred.out)->required();

  TuneOptions tune;
  auto* tune_cmd = app.add_subcommand("tune", "Cross-validate the rule constant");
  tune_cmd->add_option("--target", tune.target)->check(CLI::IsMember({"g1", "g2", "g3"}));
  tune_cmd->add_option("--kernel", tune.kernel)->check(CLI::IsMember({"naive", "gaussian", "knn"}));
  tune_cmd->add_option("--n", tune.n);
  tune_cmd->add_option("--folds", tune.folds);
  tune_cmd->add_option("--grid-lo", tune.grid_lo);
  tune_cmd->add_option("--grid-hi", tune.grid_hi);
  tune_cmd->add_option("--grid-n", tune.grid_n);
  tune_cmd->add_option("--seed", tune.seed);
  tune_cmd->add_option("--r", tune.r);
  tune_cmd->add_option("--train", tune.train, "Tune on a dataset CSV instead of generated data");

  ExperimentOptions exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Run an experiment sweep over m");
  exp_cmd->add_option("--scenario", exp.scenario)
      ->check(CLI::IsMember({"sim1-nwk", "sim1-knn", "sim1-variants", "sim2", "road"}));
  exp_cmd->add_option("--n", exp.n, "Training size N");
  exp_cmd->add_option("--trials", exp.trials);
  exp_cmd->add_option("--seed", exp.seed, "Base seed; trial t uses seed + t");
  exp_cmd->add_option("--m-grid", exp.m_grid, "lo:hi:step, lo:hi:*factor or a,b,c");
  exp_cmd->add_option("--kernel", exp.kernel);
  exp_cmd->add_option("--target", exp.target);
  exp_cmd->add_option("--c", exp.c, "Fixed rule constant (skips cross-validation)");
  exp_cmd->add_option("--noise-sd", exp.noise_sd);
  exp_cmd->add_option("--test-size", exp.test_size);
  exp_cmd->add_option("--mesh-grid", exp.mesh_grid);
  exp_cmd->add_option("--data", exp.data, "Road network file");
  exp_cmd->add_option("--out", exp.out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed()) run_gen(gen);
    if (pred_cmd->parsed()) run_predict(pred);
    if (tune_cmd->parsed()) run_tune(tune);
    if (exp_cmd->parsed()) run_experiment_cmd(exp);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
