#include "zofw/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "zofw/problem.hpp"
#include "zofw/schedule.hpp"

namespace zofw {

namespace {

struct SolverNameInfo {
  SolverVariant variant;
  EstimatorKind estimator;
  bool star;
};

const std::map<std::string, SolverNameInfo>& solver_names() {
  static const std::map<std::string, SolverNameInfo> names = {
      {"acc_zo_fw", {SolverVariant::AccZoFw, EstimatorKind::Coo, false}},
      {"acc_szofw_cooge", {SolverVariant::AccSzofwCoo, EstimatorKind::Coo, false}},
      {"acc_szofw_unige", {SolverVariant::AccSzofwUni, EstimatorKind::Uni, false}},
      {"acc_szofw_star_cooge",
       {SolverVariant::AccSzofwStarCoo, EstimatorKind::Coo, true}},
      {"acc_szofw_star_unige",
       {SolverVariant::AccSzofwStarUni, EstimatorKind::Uni, true}},
      {"plain_zofw_cooge",
       {SolverVariant::PlainZoFwBaseline, EstimatorKind::Coo, false}},
      {"plain_zofw_unige",
       {SolverVariant::PlainZoFwBaseline, EstimatorKind::Uni, false}},
  };
  return names;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto comma = s.find(',', pos);
    const std::string item =
        trim(comma == std::string::npos ? s.substr(pos)
                                        : s.substr(pos, comma - pos));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::int64_t to_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const std::int64_t v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' needs an integer, got '" +
                      value + "'");
  }
}

double to_real(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' needs a number, got '" +
                      value + "'");
  }
}

}  // namespace

ExperimentConfig parse_experiment_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": empty key or value");
    }

    if (key == "problem") {
      if (value == "robust_classification") {
        cfg.problem = ExperimentConfig::ProblemKind::RobustClassification;
      } else if (value == "attack") {
        cfg.problem = ExperimentConfig::ProblemKind::Attack;
      } else {
        throw ConfigError("config: unknown problem '" + value + "'");
      }
    } else if (key == "dataset") {
      cfg.dataset_path = value == "synthetic" ? "" : value;
    } else if (key == "synthetic_n") {
      cfg.synthetic_n = to_int(key, value);
    } else if (key == "synthetic_d") {
      cfg.synthetic_d = to_int(key, value);
    } else if (key == "synthetic_noise") {
      cfg.synthetic_noise = to_real(key, value);
    } else if (key == "data_seed") {
      cfg.data_seed = static_cast<std::uint64_t>(to_int(key, value));
    } else if (key == "sigma") {
      cfg.sigma = to_real(key, value);
    } else if (key == "theta") {
      cfg.l1_radius = to_real(key, value);
    } else if (key == "train_fraction") {
      cfg.train_fraction = to_real(key, value);
    } else if (key == "model") {
      cfg.model_path = value;
    } else if (key == "images") {
      cfg.images_path = value;
    } else if (key == "epsilon") {
      cfg.epsilon = to_real(key, value);
    } else if (key == "solvers") {
      cfg.solvers = split_list(value);
    } else if (key == "seeds") {
      for (const auto& item : split_list(value)) {
        cfg.seeds.push_back(static_cast<std::uint64_t>(to_int(key, item)));
      }
    } else if (key == "T") {
      cfg.horizon = to_int(key, value);
    } else if (key.rfind("T_", 0) == 0) {
      cfg.horizon_overrides.emplace_back(key.substr(2), to_int(key, value));
    } else if (key.rfind("eta0_", 0) == 0) {
      cfg.eta0_overrides.emplace_back(key.substr(5), to_real(key, value));
    } else if (key == "q") {
      cfg.epoch_length = to_int(key, value);
    } else if (key == "b") {
      cfg.batch = to_int(key, value);
    } else if (key == "b1") {
      cfg.anchor_batch = to_int(key, value);
    } else if (key == "b2") {
      cfg.correction_batch = to_int(key, value);
    } else if (key == "eta0") {
      cfg.eta0 = to_real(key, value);
    } else if (key == "gamma_multiplier") {
      cfg.gamma_multiplier = to_real(key, value);
    } else if (key == "mu") {
      cfg.coo_radius = to_real(key, value);
    } else if (key == "beta") {
      cfg.uni_radius = to_real(key, value);
    } else if (key == "mode") {
      if (value == "stochastic") {
        cfg.mode = SamplingMode::Stochastic;
      } else if (value == "finite_sum") {
        cfg.mode = SamplingMode::FiniteSum;
      } else {
        throw ConfigError("config: unknown mode '" + value + "'");
      }
    } else if (key == "eval_every") {
      cfg.eval_every = to_int(key, value);
    } else if (key == "gap") {
      if (value == "none") {
        cfg.gap_mode = GapMode::None;
      } else if (value == "true_gradient") {
        cfg.gap_mode = GapMode::TrueGradient;
      } else if (value == "cooge_full") {
        cfg.gap_mode = GapMode::CooGeFull;
      } else {
        throw ConfigError("config: unknown gap mode '" + value + "'");
      }
    } else if (key == "query_budget") {
      cfg.query_budget = static_cast<std::uint64_t>(to_int(key, value));
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else if (key == "workers") {
      cfg.workers = to_int(key, value);
    } else {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": unknown key '" + key + "'");
    }
  }

  if (cfg.solvers.empty()) throw ConfigError("config: no solvers listed");
  if (cfg.seeds.empty()) throw ConfigError("config: no seeds listed");
  if (cfg.horizon < 1) throw ConfigError("config: T must be set and >= 1");
  if (cfg.eval_every < 1) throw ConfigError("config: eval_every must be >= 1");
  if (cfg.workers < 1) throw ConfigError("config: workers must be >= 1");
  for (const auto& name : cfg.solvers) {
    if (solver_names().find(name) == solver_names().end()) {
      throw ConfigError("config: unknown solver '" + name + "'");
    }
  }
  for (const auto& [name, T] : cfg.horizon_overrides) {
    if (solver_names().find(name) == solver_names().end()) {
      throw ConfigError("config: T override for unknown solver '" + name + "'");
    }
    if (T < 1) throw ConfigError("config: T_" + name + " must be >= 1");
  }
  for (const auto& [name, eta] : cfg.eta0_overrides) {
    if (solver_names().find(name) == solver_names().end()) {
      throw ConfigError("config: eta0 override for unknown solver '" + name +
                        "'");
    }
    if (!(eta > 0.0)) throw ConfigError("config: eta0_" + name + " must be > 0");
  }
  if (cfg.problem == ExperimentConfig::ProblemKind::RobustClassification) {
    if (cfg.dataset_path.empty() && (cfg.synthetic_n < 1 || cfg.synthetic_d < 1)) {
      throw ConfigError(
          "config: synthetic dataset needs synthetic_n and synthetic_d");
    }
    if (!(cfg.sigma > 0.0)) throw ConfigError("config: sigma must be > 0");
    if (!(cfg.l1_radius > 0.0)) throw ConfigError("config: theta must be > 0");
    if (cfg.train_fraction &&
        !(*cfg.train_fraction > 0.0 && *cfg.train_fraction < 1.0)) {
      throw ConfigError("config: train_fraction outside (0, 1)");
    }
  } else {
    if (cfg.model_path.empty() || cfg.images_path.empty()) {
      throw ConfigError("config: attack needs model and images paths");
    }
    if (!(cfg.epsilon > 0.0)) throw ConfigError("config: epsilon must be > 0");
  }
  return cfg;
}

SolverConfig solver_config_for(const ExperimentConfig& cfg,
                               const std::string& solver_name, std::int64_t d,
                               std::int64_t n) {
  const auto it = solver_names().find(solver_name);
  if (it == solver_names().end()) {
    throw ConfigError("unknown solver '" + solver_name + "'");
  }
  const SolverNameInfo& info = it->second;

  std::int64_t T = cfg.horizon;
  for (const auto& [name, override_T] : cfg.horizon_overrides) {
    if (name == solver_name) T = override_T;
  }

  const SchedulePreset preset =
      cfg.problem == ExperimentConfig::ProblemKind::RobustClassification
          ? SchedulePreset::ExperimentRobustClassification
          : SchedulePreset::ExperimentUap;
  Schedule sched = make_schedule(preset, T, d, n, info.star);
  if (cfg.epoch_length > 0) sched.epoch_length = cfg.epoch_length;
  if (cfg.batch > 0) sched.batch = cfg.batch;
  if (cfg.anchor_batch > 0) sched.anchor_batch = cfg.anchor_batch;
  if (cfg.correction_batch > 0) sched.correction_batch = cfg.correction_batch;
  if (cfg.eta0 > 0.0) sched.eta0 = cfg.eta0;
  for (const auto& [name, eta] : cfg.eta0_overrides) {
    if (name == solver_name) sched.eta0 = eta;
  }
  if (cfg.gamma_multiplier > 0.0) sched.gamma_multiplier = cfg.gamma_multiplier;
  if (cfg.coo_radius > 0.0) sched.coo_radius = cfg.coo_radius;
  if (cfg.uni_radius > 0.0) sched.uni_radius = cfg.uni_radius;
  try {
    validate_schedule(sched);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("solver '") + solver_name + "': " + e.what());
  }

  SolverConfig sc;
  sc.variant = info.variant;
  sc.schedule = sched;
  sc.baseline_estimator = info.estimator;
  sc.eval_every = cfg.eval_every;
  sc.gap_mode = cfg.gap_mode;
  sc.query_budget = cfg.query_budget;
  if (info.variant == SolverVariant::AccZoFw) {
    sc.mode = SamplingMode::FiniteSum;
  } else if (info.star) {
    sc.mode = SamplingMode::Stochastic;
  } else {
    sc.mode = cfg.mode;
    if (info.variant == SolverVariant::AccSzofwUni &&
        cfg.mode == SamplingMode::FiniteSum) {
      throw ConfigError(
          "solver 'acc_szofw_unige' is stochastic-only; set mode = stochastic");
    }
  }
  return sc;
}

namespace {

struct ProblemSource {
  ExperimentConfig::ProblemKind kind;
  // robust classification
  Dataset train;
  double sigma = 0.0;
  double l1_radius = 0.0;
  // attack
  LinearSoftmaxModel model;
  Matrix images;
  std::vector<std::int64_t> image_labels;
  double epsilon = 0.0;

  std::int64_t dimension() const {
    return kind == ExperimentConfig::ProblemKind::RobustClassification
               ? train.features.cols
               : images.cols;
  }
  std::int64_t components() const {
    return kind == ExperimentConfig::ProblemKind::RobustClassification
               ? train.features.rows
               : images.rows;
  }

  std::pair<BlackBoxProblem, ConstraintSet> build() const {
    if (kind == ExperimentConfig::ProblemKind::RobustClassification) {
      BlackBoxProblem p =
          correntropy_problem(train.features, train.labels, sigma);
      return {std::move(p),
              ConstraintSet::l1_ball(train.features.cols, l1_radius)};
    }
    return attack_problem(model, images, image_labels, epsilon);
  }
};

std::ifstream open_data_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataFormatError("cannot open file '" + path + "'");
  return in;
}

void load_images_file(const std::string& path, Matrix& images,
                      std::vector<std::int64_t>& labels) {
  std::ifstream in = open_data_file(path);
  std::int64_t n = 0, d = 0;
  if (!(in >> n >> d) || n < 1 || d < 1) {
    throw DataFormatError("images file '" + path + "': bad \"n d\" header");
  }
  images = Matrix(n, d);
  labels.assign(static_cast<std::size_t>(n), 0);
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < d; ++j) {
      if (!(in >> images.at(i, j))) {
        throw DataFormatError("images file '" + path + "': truncated row " +
                              std::to_string(i));
      }
    }
    if (!(in >> labels[static_cast<std::size_t>(i)])) {
      throw DataFormatError("images file '" + path + "': missing label in row " +
                            std::to_string(i));
    }
  }
}

ProblemSource load_problem_source(const ExperimentConfig& cfg) {
  ProblemSource src;
  src.kind = cfg.problem;
  if (cfg.problem == ExperimentConfig::ProblemKind::RobustClassification) {
    SeededRng data_rng(cfg.data_seed);
    Dataset ds;
    if (cfg.dataset_path.empty()) {
      ds = synthesize_classification(cfg.synthetic_n, cfg.synthetic_d,
                                     cfg.synthetic_noise, data_rng);
    } else {
      std::ifstream in = open_data_file(cfg.dataset_path);
      ds = parse_libsvm(in, cfg.dataset_path);
    }
    if (cfg.train_fraction) {
      auto parts = split(ds, *cfg.train_fraction, data_rng);
      src.train = std::move(parts.first);
    } else {
      src.train = std::move(ds);
    }
    src.sigma = cfg.sigma;
    src.l1_radius = cfg.l1_radius;
  } else {
    std::ifstream model_in = open_data_file(cfg.model_path);
    try {
      src.model = load_softmax_model(model_in);
    } catch (const std::runtime_error& e) {
      throw DataFormatError(std::string("model file: ") + e.what());
    }
    load_images_file(cfg.images_path, src.images, src.image_labels);
    src.epsilon = cfg.epsilon;
  }
  return src;
}

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2]
                    : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

void write_summary_csv(const ExperimentSummary& summary, std::ostream& out) {
  out << "solver,seed,final_loss,final_gap,optimization_queries,"
         "diagnostic_queries,iterations\n";
  char buf[64];
  auto real = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  for (const auto& r : summary.runs) {
    out << r.solver << ',' << r.seed << ',' << real(r.final_loss) << ',';
    if (r.final_gap) out << real(*r.final_gap);
    out << ',' << r.optimization_queries << ',' << r.diagnostic_queries << ','
        << r.iterations << '\n';
  }
  for (const auto& a : summary.aggregates) {
    out << a.solver << ",median," << real(a.median_final_loss) << ",,,,\n";
    out << a.solver << ",mean," << real(a.mean_final_loss) << ",,,,\n";
  }
}

}  // namespace

ExperimentSummary run_experiment(const ExperimentConfig& cfg) {
  const ProblemSource src = load_problem_source(cfg);
  const std::int64_t d = src.dimension();
  const std::int64_t n = src.components();

  struct Job {
    std::string solver;
    std::uint64_t seed;
    SolverConfig config;
  };
  std::vector<Job> jobs;
  for (const auto& solver : cfg.solvers) {
    const SolverConfig sc = solver_config_for(cfg, solver, d, n);
    for (const std::uint64_t seed : cfg.seeds) {
      jobs.push_back(Job{solver, seed, sc});
    }
  }

  std::filesystem::create_directories(cfg.output_dir);

  std::vector<RunSummary> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        const Job& job = jobs[i];
        auto [problem, set] = src.build();
        const DenseVector start(static_cast<std::size_t>(d), 0.0);
        const RunTrace trace =
            run_solver(problem, set, job.config, start, job.seed);

        const std::filesystem::path path =
            std::filesystem::path(cfg.output_dir) /
            (job.solver + "_" + std::to_string(job.seed) + ".csv");
        std::ofstream out(path);
        if (!out) {
          throw std::runtime_error("cannot write trace file " + path.string());
        }
        write_trace_csv(trace, out);

        const TraceRecord& last = trace.records.back();
        RunSummary rs;
        rs.solver = job.solver;
        rs.seed = job.seed;
        rs.final_loss = last.mean_loss;
        rs.final_gap = last.fw_gap;
        rs.optimization_queries = last.cumulative_queries;
        rs.diagnostic_queries = last.diagnostic_queries;
        rs.iterations = static_cast<std::int64_t>(trace.records.size());
        results[i] = std::move(rs);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const std::size_t thread_count = static_cast<std::size_t>(
      std::min<std::int64_t>(cfg.workers,
                             static_cast<std::int64_t>(jobs.size())));
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < thread_count; ++i) threads.emplace_back(worker);
  for (auto& th : threads) th.join();
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  ExperimentSummary summary;
  summary.runs = std::move(results);
  for (const auto& solver : cfg.solvers) {
    std::vector<double> finals;
    for (const auto& r : summary.runs) {
      if (r.solver == solver) finals.push_back(r.final_loss);
    }
    SolverAggregate agg;
    agg.solver = solver;
    agg.median_final_loss = median_of(finals);
    double mean = 0.0;
    for (double v : finals) mean += v;
    agg.mean_final_loss = mean / static_cast<double>(finals.size());
    summary.aggregates.push_back(std::move(agg));
  }

  const std::filesystem::path summary_path =
      std::filesystem::path(cfg.output_dir) / "summary.csv";
  std::ofstream out(summary_path);
  if (!out) {
    throw std::runtime_error("cannot write summary file " +
                             summary_path.string());
  }
  write_summary_csv(summary, out);
  return summary;
}

std::vector<BudgetEntry> compare_at_budget(
    const std::vector<std::pair<std::string, RunTrace>>& traces,
    std::uint64_t budget) {
  std::vector<BudgetEntry> entries;
  for (const auto& [name, trace] : traces) {
    const TraceRecord* chosen = nullptr;
    for (const auto& rec : trace.records) {
      if (rec.cumulative_queries <= budget) chosen = &rec;
    }
    if (chosen == nullptr) {
      throw ConfigError("budget " + std::to_string(budget) +
                        " is below every record of trace '" + name + "'");
    }
    entries.push_back(BudgetEntry{name, chosen->mean_loss});
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const BudgetEntry& a, const BudgetEntry& b) {
                     return a.loss_at_budget < b.loss_at_budget;
                   });
  return entries;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"gradient-free projection-free constrained optimization runner"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "run an experiment config");
  std::string config_path;
  run_cmd->add_option("--config", config_path, "experiment config file")
      ->required();
  std::int64_t workers_flag = 0;
  run_cmd->add_option("--workers", workers_flag, "parallel (solver, seed) runs");
  std::int64_t seed_flag = -1;
  run_cmd->add_option("--seed", seed_flag, "replace the config seed list");

  auto* cmp_cmd = app.add_subcommand("compare", "rank traces at a query budget");
  std::uint64_t budget = 0;
  cmp_cmd->add_option("--budget", budget, "query budget")->required();
  std::vector<std::string> trace_files;
  cmp_cmd->add_option("files", trace_files, "trace CSV files")->required();

  auto* gen_cmd =
      app.add_subcommand("gen-data", "write a synthetic LIBSVM dataset");
  std::vector<std::string> synth_spec;
  gen_cmd
      ->add_option("--synthetic", synth_spec,
                   "n=<int> d=<int> noise=<real> fields")
      ->expected(-1);
  std::int64_t gen_seed = 42;
  gen_cmd->add_option("--seed", gen_seed, "generator seed");
  std::string gen_out;
  gen_cmd->add_option("--out", gen_out, "output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run_cmd->parsed()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot open config file '" + config_path + "'");
      ExperimentConfig cfg = parse_experiment_config(in);
      if (const char* env_dir = std::getenv("OUTPUT_DIR")) {
        cfg.output_dir = env_dir;
      }
      if (workers_flag > 0) cfg.workers = workers_flag;
      if (seed_flag >= 0) {
        cfg.seeds = {static_cast<std::uint64_t>(seed_flag)};
      }
      const ExperimentSummary summary = run_experiment(cfg);
      for (const auto& agg : summary.aggregates) {
        std::cout << agg.solver << ": median final loss "
                  << agg.median_final_loss << ", mean " << agg.mean_final_loss
                  << "\n";
      }
      std::cout << "wrote " << summary.runs.size() << " trace file(s) to "
                << cfg.output_dir << "\n";
    } else if (cmp_cmd->parsed()) {
      std::vector<std::pair<std::string, RunTrace>> traces;
      for (const auto& file : trace_files) {
        std::ifstream in(file);
        if (!in) throw DataFormatError("cannot open trace file '" + file + "'");
        traces.emplace_back(file, read_trace_csv(in));
      }
      for (const auto& entry : compare_at_budget(traces, budget)) {
        std::cout << entry.loss_at_budget << "\t" << entry.name << "\n";
      }
    } else if (gen_cmd->parsed()) {
      std::int64_t n = 0, d = 0;
      double noise = 0.0;
      for (const auto& field : synth_spec) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) {
          throw ConfigError("gen-data: expected k=v, got '" + field + "'");
        }
        const std::string key = field.substr(0, eq);
        const std::string value = field.substr(eq + 1);
        if (key == "n") {
          n = to_int(key, value);
        } else if (key == "d") {
          d = to_int(key, value);
        } else if (key == "noise") {
          noise = to_real(key, value);
        } else {
          throw ConfigError("gen-data: unknown field '" + key + "'");
        }
      }
      if (n < 1 || d < 1) {
        throw ConfigError("gen-data: need n >= 1 and d >= 1");
      }
      SeededRng rng(static_cast<std::uint64_t>(gen_seed));
      const Dataset ds = synthesize_classification(n, d, noise, rng);
      std::ofstream out(gen_out);
      if (!out) throw DataFormatError("cannot write '" + gen_out + "'");
      serialize_libsvm(ds, out);
      std::cout << "wrote " << n << " rows to " << gen_out << "\n";
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DataFormatError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace zofw
