#include "dclar/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "dclar/csv.hpp"
#include "dclar/rng.hpp"

namespace dclar {

std::string to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::kSim1Nwk: return "sim1-nwk";
    case Scenario::kSim1Knn: return "sim1-knn";
    case Scenario::kSim1Variants: return "sim1-variants";
    case Scenario::kSim2: return "sim2";
    case Scenario::kRoad: return "road";
  }
  return "unknown";
}

Scenario parse_scenario(const std::string& name) {
  for (auto s : {Scenario::kSim1Nwk, Scenario::kSim1Knn, Scenario::kSim1Variants, Scenario::kSim2,
                 Scenario::kRoad}) {
    if (to_string(s) == name) return s;
  }
  throw InvalidArgument("unknown scenario: " + name);
}

namespace {

std::size_t parse_count(std::string_view text) {
  const auto v = parse_double(text);
  if (!v || *v < 1.0 || std::floor(*v) != *v) {
    throw InvalidArgument("m-grid entry '" + std::string(text) + "' is not a positive integer");
  }
  return static_cast<std::size_t>(*v);
}

}  // namespace

std::vector<std::size_t> parse_m_grid(const std::string& text) {
  std::vector<std::size_t> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split_fields(text, ':');
    if (parts.size() != 3) throw InvalidArgument("m-grid range must be lo:hi:step");
    const std::size_t lo = parse_count(parts[0]);
    const std::size_t hi = parse_count(parts[1]);
    std::string_view step = parts[2];
    if (!step.empty() && step.front() == '*') {
      const std::size_t factor = parse_count(step.substr(1));
      if (factor < 2) throw InvalidArgument("m-grid factor must be at least 2");
      for (std::size_t m = lo; m <= hi; m *= factor) out.push_back(m);
    } else {
      const std::size_t inc = parse_count(step);
      for (std::size_t m = lo; m <= hi; m += inc) out.push_back(m);
    }
  } else {
    for (auto f : split_fields(text, ',')) out.push_back(parse_count(f));
  }
  if (out.empty()) throw InvalidArgument("m-grid is empty");
  return out;
}

std::string format_m_grid(const std::vector<std::size_t>& grid) {
  std::string out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(grid[i]);
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw InvalidArgument("trials must be at least 1");
  if (m_grid.empty()) throw InvalidArgument("m-grid is empty");
  if (n < 1 || test_size < 1) throw InvalidArgument("sample sizes must be positive");
  for (std::size_t m : m_grid) {
    if (m < 1) throw InvalidArgument("block counts must be positive");
    if (m > n) throw InvalidArgument("block count " + std::to_string(m) + " exceeds N");
  }
  estimator.validate();
  if (scenario != Scenario::kRoad && estimator.d != target.dim()) {
    throw InvalidArgument("estimator dimension does not match the target");
  }
  if (scenario == Scenario::kRoad && !data_path) {
    throw InvalidArgument("road scenario needs a data file (--data)");
  }
  if (fixed_constant && !(*fixed_constant > 0.0)) throw InvalidArgument("constant must be positive");
}

ExperimentConfig scenario_defaults(Scenario scenario) {
  ExperimentConfig cfg;
  cfg.scenario = scenario;
  cfg.estimator.r = 1.0;
  switch (scenario) {
    case Scenario::kSim1Nwk:
      cfg.target = standard_model(TargetKind::kG1);
      cfg.m_grid = parse_m_grid("5:350:5");
      cfg.variants = {true, false, false};
      cfg.estimator.family = EstimatorFamily::kNwkNaive;
      break;
    case Scenario::kSim1Knn:
      cfg.target = standard_model(TargetKind::kG1);
      cfg.m_grid = parse_m_grid("5:350:5");
      cfg.variants = {true, false, false};
      cfg.estimator.family = EstimatorFamily::kKnn;
      break;
    case Scenario::kSim1Variants:
      cfg.target = standard_model(TargetKind::kG1);
      cfg.m_grid = parse_m_grid("5:350:5");
      cfg.variants = {true, true, true};
      cfg.estimator.family = EstimatorFamily::kNwkNaive;
      break;
    case Scenario::kSim2:
      cfg.target = standard_model(TargetKind::kG3);
      cfg.m_grid = parse_m_grid("8:2048:*2");
      cfg.variants = {true, true, true};
      cfg.estimator.family = EstimatorFamily::kNwkNaive;
      break;
    case Scenario::kRoad:
      cfg.n = 413363;
      cfg.trials = 1;
      cfg.m_grid = parse_m_grid("2:1024:*2");
      cfg.variants = {true, true, true};
      cfg.estimator.family = EstimatorFamily::kNwkNaive;
      cfg.estimator.d = 2;
      // r = 1 with d = 2 gives the N^(-1/4) bandwidth exponent.
      cfg.fixed_constant = 0.13;
      break;
  }
  if (scenario != Scenario::kRoad) cfg.estimator.d = cfg.target.dim();
  return cfg;
}

double global_error(const Dataset& train, const Dataset& test, const EstimatorConfig& estimator) {
  const auto loc = rule_localization(estimator, train.size(), estimator.constant_c);
  return mse(lar_predict_values(train, estimator, loc, test), test.responses());
}

ResultRow compute_ge_le_ae(const Dataset& train, const Dataset& test,
                           const EstimatorConfig& estimator, std::size_t m, std::uint64_t seed,
                           const VariantSet& variants, std::size_t mesh_grid,
                           std::optional<double> ge) {
  estimator.validate();
  ResultRow row;
  row.m = m;
  row.ge = ge ? *ge : global_error(train, test, estimator);

  PartitionedDataset partition = random_partition(train, m, seed);
  const Dataset& first = partition.block(0);
  const auto local_loc = rule_localization(estimator, first.size(), estimator.constant_c);
  row.le = mse(lar_predict_values(first, estimator, local_loc, test), test.responses());

  const std::size_t n = train.size();
  Localization loc;
  std::optional<MeshNormReport> mesh;
  if (estimator.is_nwk()) {
    const double h = nwk_bandwidth_rule(n, estimator.r, estimator.d, estimator.constant_c);
    loc = Bandwidth{h};
    row.parameter = h;
    mesh = mesh_norms(partition, default_candidates(train, mesh_grid));
    row.inactive = mesh->count_exceeding(h);
  } else {
    const auto rule = knn_k_rule(n, m, estimator.r, estimator.d, estimator.constant_c);
    const std::size_t k = std::min(rule.k, partition.min_block_size());
    loc = NeighborCount{k};
    row.parameter = static_cast<double>(k);
  }

  const auto score = [&](const AvmModel& model) {
    return mse(model.predict_values(test), test.responses());
  };
  if (variants.a1) row.ae_a1 = score(AvmModel::plain(partition, estimator, loc));
  if (variants.a2) {
    if (estimator.is_nwk()) {
      const auto model = AvmModel::data_dependent(partition, estimator, *mesh);
      row.tilde_h = model.tilde_h();
      row.ae_a2 = score(model);
    } else {
      row.ae_a2 = variants.a1 ? *row.ae_a1 : score(AvmModel::plain(partition, estimator, loc));
    }
  }
  if (variants.a3) row.ae_a3 = score(AvmModel::qualified(std::move(partition), estimator, loc));
  return row;
}

namespace {

struct TrialData {
  Dataset train;
  Dataset test;
};

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;
  result.config = config;

  std::optional<Dataset> road;
  if (config.scenario == Scenario::kRoad) {
    auto load = load_road_network(*config.data_path);
    result.rows_skipped_on_load = load.rows_skipped;
    if (load.data.size() < config.test_size + 2) {
      throw InvalidData(*config.data_path + ": too few rows for the requested test size");
    }
    road = std::move(load.data);
  }

  const auto trial_data = [&](std::size_t t) {
    const std::uint64_t seed = config.base_seed + t;
    if (road) {
      Rng rng(derive_seed(seed, 0));
      const auto perm = rng.permutation(road->size());
      const std::size_t t_size = config.test_size;
      const std::size_t n = std::min(config.n, road->size() - t_size);
      std::vector<std::size_t> test_idx(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(t_size));
      std::vector<std::size_t> train_idx(perm.begin() + static_cast<std::ptrdiff_t>(t_size),
                                         perm.begin() + static_cast<std::ptrdiff_t>(t_size + n));
      std::sort(test_idx.begin(), test_idx.end());
      std::sort(train_idx.begin(), train_idx.end());
      return TrialData{road->subset(train_idx), road->subset(test_idx)};
    }
    return TrialData{generate_dataset(config.target, config.n, derive_seed(seed, 0)),
                     generate_test_set(config.target, config.test_size, derive_seed(seed, 1))};
  };

  EstimatorConfig estimator = config.estimator;
  std::optional<TrialData> first;
  if (config.fixed_constant) {
    estimator.constant_c = *config.fixed_constant;
  } else {
    first = trial_data(0);
    CvConfig cv{config.cv_folds, log_grid(config.cv_grid_lo, config.cv_grid_hi, config.cv_grid_n),
                derive_seed(config.base_seed, 3)};
    estimator.constant_c = cv_select_constant(first->train, estimator, cv).constant;
    result.constant_from_cv = true;
  }
  result.constant = estimator.constant_c;
  result.config.estimator.constant_c = estimator.constant_c;

  for (std::size_t t = 0; t < config.trials; ++t) {
    TrialData data = (t == 0 && first) ? std::move(*first) : trial_data(t);
    result.train_size = data.train.size();
    result.test_size = data.test.size();
    const std::uint64_t seed = config.base_seed + t;
    const std::size_t n = data.train.size();
    const double ge = global_error(data.train, data.test, estimator);
    const double knn_max_m = std::pow(static_cast<double>(n),
                                      2.0 * estimator.r / (2.0 * estimator.r + static_cast<double>(estimator.d)));
    for (std::size_t m : config.m_grid) {
      const bool out_of_range =
          m > n || (!estimator.is_nwk() && static_cast<double>(m) > knn_max_m * (1.0 + 1e-12));
      if (out_of_range) {
        ResultRow row;
        row.trial = t;
        row.m = m;
        row.skipped = true;
        row.ge = ge;
        result.rows.push_back(row);
        continue;
      }
      ResultRow row = compute_ge_le_ae(data.train, data.test, estimator, m, derive_seed(seed, 2),
                                       config.variants, config.mesh_grid, ge);
      row.trial = t;
      result.rows.push_back(row);
    }
  }
  return result;
}

namespace {

ColumnStat stat_of(const std::vector<double>& values) {
  ColumnStat s;
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.sd = std::sqrt(ss / static_cast<double>(values.size()));
  return s;
}

template <typename Get>
std::optional<ColumnStat> column(const std::vector<const ResultRow*>& rows, Get get) {
  std::vector<double> values;
  for (const auto* r : rows) {
    const auto v = get(*r);
    if (!v) return std::nullopt;
    values.push_back(*v);
  }
  if (values.empty()) return std::nullopt;
  return stat_of(values);
}

}  // namespace

std::vector<SummaryRow> summarize(const ExperimentResult& result) {
  if (result.rows.empty()) throw InvalidArgument("cannot summarize an empty result");
  std::vector<std::size_t> order;
  for (const auto& r : result.rows) {
    if (std::find(order.begin(), order.end(), r.m) == order.end()) order.push_back(r.m);
  }
  std::vector<SummaryRow> out;
  for (std::size_t m : order) {
    std::vector<const ResultRow*> rows;
    for (const auto& r : result.rows) {
      if (r.m == m && !r.skipped) rows.push_back(&r);
    }
    SummaryRow s;
    s.m = m;
    s.trials = rows.size();
    s.skipped = rows.empty();
    if (!s.skipped) {
      s.ge = column(rows, [](const ResultRow& r) { return std::optional<double>(r.ge); });
      s.le = column(rows, [](const ResultRow& r) { return std::optional<double>(r.le); });
      s.ae_a1 = column(rows, [](const ResultRow& r) { return r.ae_a1; });
      s.ae_a2 = column(rows, [](const ResultRow& r) { return r.ae_a2; });
      s.ae_a3 = column(rows, [](const ResultRow& r) { return r.ae_a3; });
      s.inactive = column(rows, [](const ResultRow& r) {
        return r.inactive ? std::optional<double>(static_cast<double>(*r.inactive)) : std::nullopt;
      });
    }
    out.push_back(s);
  }
  return out;
}

std::string describe(const ExperimentResult& result) {
  const auto& c = result.config;
  std::ostringstream os;
  os << "scenario=" << to_string(c.scenario) << " family=" << to_string(c.estimator.family);
  if (c.scenario != Scenario::kRoad) {
    os << " target=" << to_string(c.target.kind) << " noise_sd=" << format_double(c.target.noise_sd);
  } else {
    os << " data=" << c.data_path.value_or("") << " load_skipped=" << result.rows_skipped_on_load;
  }
  os << " n=" << result.train_size << " test=" << result.test_size << " trials=" << c.trials
     << " base_seed=" << c.base_seed << " r=" << format_double(c.estimator.r)
     << " d=" << c.estimator.d << " c=" << format_double(result.constant)
     << (result.constant_from_cv ? " c_source=cv" : " c_source=fixed");
  if (result.constant_from_cv) {
    os << " cv_folds=" << c.cv_folds << " cv_grid=" << format_double(c.cv_grid_lo) << ':'
       << format_double(c.cv_grid_hi) << ':' << c.cv_grid_n;
  }
  os << " mesh_grid=" << c.mesh_grid << " m_grid=" << format_m_grid(c.m_grid)
     << " sd=population";
  return os.str();
}

namespace {

std::string cell(const std::optional<ColumnStat>& s, bool sd) {
  if (!s) return "";
  return format_double(sd ? s->sd : s->mean);
}

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

}  // namespace

void write_summary_csv(std::ostream& out, const ExperimentResult& result,
                       const std::vector<SummaryRow>& summary) {
  out << "# " << describe(result) << '\n';
  out << "m,GE,LE,AE_A1,AE_A2,AE_A3,inactive,"
         "GE_sd,LE_sd,AE_A1_sd,AE_A2_sd,AE_A3_sd,inactive_sd,trials,status\n";
  for (const auto& s : summary) {
    out << s.m;
    for (bool sd : {false, true}) {
      for (const auto* col : {&s.ge, &s.le, &s.ae_a1, &s.ae_a2, &s.ae_a3, &s.inactive}) {
        out << ',' << cell(*col, sd);
      }
    }
    out << ',' << s.trials << ',' << (s.skipped ? "skipped" : "ok") << '\n';
  }
}

void write_trials_csv(std::ostream& out, const ExperimentResult& result) {
  out << "# " << describe(result) << '\n';
  out << "trial,m,GE,LE,AE_A1,AE_A2,AE_A3,inactive,parameter,tilde_h,status\n";
  for (const auto& r : result.rows) {
    out << r.trial << ',' << r.m << ',';
    if (r.skipped) {
      out << ",,,,,,,,skipped\n";
      continue;
    }
    out << format_double(r.ge) << ',' << format_double(r.le) << ',' << cell(r.ae_a1) << ','
        << cell(r.ae_a2) << ',' << cell(r.ae_a3) << ','
        << (r.inactive ? std::to_string(*r.inactive) : "") << ',' << format_double(r.parameter)
        << ',' << cell(r.tilde_h) << ",ok\n";
  }
}

void write_summary_table(std::ostream& out, const std::vector<SummaryRow>& summary) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%6s %12s %12s %12s %12s %12s %9s\n", "m", "GE", "LE", "AE_A1",
                "AE_A2", "AE_A3", "inactive");
  out << buf;
  const auto fmt = [](const std::optional<ColumnStat>& s) {
    char b[32];
    if (!s) return std::string("-");
    std::snprintf(b, sizeof(b), "%.4e", s->mean);
    return std::string(b);
  };
  for (const auto& s : summary) {
    if (s.skipped) {
      std::snprintf(buf, sizeof(buf), "%6zu %12s\n", s.m, "skipped");
    } else {
      char inactive[32] = "-";
      if (s.inactive) std::snprintf(inactive, sizeof(inactive), "%.2f", s.inactive->mean);
      std::snprintf(buf, sizeof(buf), "%6zu %12s %12s %12s %12s %12s %9s\n", s.m,
                    fmt(s.ge).c_str(), fmt(s.le).c_str(), fmt(s.ae_a1).c_str(),
                    fmt(s.ae_a2).c_str(), fmt(s.ae_a3).c_str(), inactive);
    }
    out << buf;
  }
}

}  // namespace dclar
