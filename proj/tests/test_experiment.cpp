#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "zofw/experiment.hpp"

using namespace zofw;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("zofw_test_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_cli_args(std::vector<std::string> args) {
  std::vector<const char*> argv;
  argv.push_back("zofw");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

const char* kTinyConfig = R"(
# tiny synthetic robust-classification run
problem = robust_classification
dataset = synthetic
synthetic_n = 200
synthetic_d = 10
synthetic_noise = 0.1
data_seed = 3
sigma = 10
theta = 10
solvers = acc_szofw_unige
seeds = 1
T = 50
q = 5
b1 = 20
b2 = 5
eval_every = 10
gap = true_gradient
)";

}  // namespace

TEST_CASE("config parsing accepts the documented keys and rejects junk") {
  std::stringstream in(kTinyConfig);
  const ExperimentConfig cfg = parse_experiment_config(in);
  CHECK(cfg.problem == ExperimentConfig::ProblemKind::RobustClassification);
  CHECK(cfg.synthetic_n == 200);
  CHECK(cfg.solvers == std::vector<std::string>{"acc_szofw_unige"});
  CHECK(cfg.seeds == std::vector<std::uint64_t>{1});
  CHECK(cfg.horizon == 50);
  CHECK(cfg.epoch_length == 5);
  CHECK(cfg.gap_mode == GapMode::TrueGradient);

  std::stringstream bad1("nonsense_key = 1\n");
  CHECK_THROWS_AS(parse_experiment_config(bad1), ConfigError);
  std::stringstream bad2("problem = robust_classification\n");
  CHECK_THROWS_AS(parse_experiment_config(bad2), ConfigError);  // no solvers
  std::stringstream bad3(
      "solvers = no_such_solver\nseeds = 1\nT = 10\nsynthetic_n = 5\n"
      "synthetic_d = 2\n");
  CHECK_THROWS_AS(parse_experiment_config(bad3), ConfigError);
}

TEST_CASE("tiny experiment writes exactly one trace and one summary") {
  const fs::path dir = fresh_dir("tiny");
  std::stringstream in(std::string(kTinyConfig) +
                       "output_dir = " + dir.string() + "\n");
  const ExperimentConfig cfg = parse_experiment_config(in);
  const ExperimentSummary summary = run_experiment(cfg);

  REQUIRE(summary.runs.size() == 1);
  CHECK(summary.runs[0].solver == "acc_szofw_unige");
  CHECK(summary.runs[0].iterations == 50);
  CHECK(summary.aggregates.size() == 1);
  CHECK(summary.aggregates[0].median_final_loss ==
        summary.runs[0].final_loss);

  std::size_t file_count = 0;
  bool saw_trace = false, saw_summary = false;
  for (const auto& entry : fs::directory_iterator(dir)) {
    ++file_count;
    if (entry.path().filename() == "acc_szofw_unige_1.csv") saw_trace = true;
    if (entry.path().filename() == "summary.csv") saw_summary = true;
  }
  CHECK(file_count == 2);
  CHECK(saw_trace);
  CHECK(saw_summary);
}

TEST_CASE("experiment reruns are byte identical") {
  const fs::path dir_a = fresh_dir("rerun_a");
  const fs::path dir_b = fresh_dir("rerun_b");
  for (const fs::path& dir : {dir_a, dir_b}) {
    std::stringstream in(std::string(kTinyConfig) + "workers = 2\nseeds = 1, 2\n" +
                         "output_dir = " + dir.string() + "\n");
    run_experiment(parse_experiment_config(in));
  }
  for (const char* name :
       {"acc_szofw_unige_1.csv", "acc_szofw_unige_2.csv", "summary.csv"}) {
    CHECK(read_file(dir_a / name) == read_file(dir_b / name));
  }
}

TEST_CASE("compare_at_budget uses the last record within budget") {
  auto make_trace = [](std::vector<std::pair<std::uint64_t, double>> pts) {
    RunTrace t;
    std::int64_t i = 0;
    for (const auto& [q, loss] : pts) {
      TraceRecord rec;
      rec.t = i++;
      rec.mean_loss = loss;
      rec.cumulative_queries = q;
      t.records.push_back(rec);
    }
    return t;
  };

  std::vector<std::pair<std::string, RunTrace>> traces;
  traces.emplace_back("steady", make_trace({{100, 0.9}, {200, 0.5}, {300, 0.4}}));
  traces.emplace_back("fast", make_trace({{150, 0.6}, {250, 0.2}}));

  // budget exactly on a record: the <= rule picks it
  const auto at_250 = compare_at_budget(traces, 250);
  REQUIRE(at_250.size() == 2);
  CHECK(at_250[0].name == "fast");
  CHECK(at_250[0].loss_at_budget == 0.2);
  CHECK(at_250[1].name == "steady");
  CHECK(at_250[1].loss_at_budget == 0.5);

  const auto singleton = compare_at_budget({traces[0]}, 1000);
  REQUIRE(singleton.size() == 1);
  CHECK(singleton[0].loss_at_budget == 0.4);

  CHECK_THROWS_AS(compare_at_budget(traces, 120), ConfigError);
}

TEST_CASE("cli round trip: gen-data, run, compare; exit codes") {
  const fs::path dir = fresh_dir("cli");
  const fs::path data = dir / "data.svm";
  const fs::path config = dir / "exp.conf";
  const fs::path out = dir / "out";

  CHECK(run_cli_args({"gen-data", "--synthetic", "n=60", "d=4", "noise=0.1",
                      "--seed", "9", "--out", data.string()}) == 0);
  CHECK(fs::exists(data));

  {
    std::ofstream cfg(config);
    cfg << "problem = robust_classification\n"
        << "dataset = " << data.string() << "\n"
        << "sigma = 10\ntheta = 5\n"
        << "solvers = plain_zofw_unige, acc_szofw_star_unige\n"
        << "seeds = 4\nT = 40\nb = 4\neval_every = 8\n"
        << "output_dir = " << out.string() << "\n";
  }
  CHECK(run_cli_args({"run", "--config", config.string()}) == 0);
  CHECK(fs::exists(out / "plain_zofw_unige_4.csv"));
  CHECK(fs::exists(out / "acc_szofw_star_unige_4.csv"));

  CHECK(run_cli_args({"compare", "--budget", "4000",
                      (out / "plain_zofw_unige_4.csv").string(),
                      (out / "acc_szofw_star_unige_4.csv").string()}) == 0);

  // exit code mapping
  CHECK(run_cli_args({"run", "--config", (dir / "missing.conf").string()}) == 2);
  {
    std::ofstream cfg(config, std::ios::trunc);
    cfg << "problem = robust_classification\n"
        << "dataset = " << (dir / "nope.svm").string() << "\n"
        << "solvers = plain_zofw_unige\nseeds = 1\nT = 5\n"
        << "output_dir = " << out.string() << "\n";
  }
  CHECK(run_cli_args({"run", "--config", config.string()}) == 3);
  {
    std::ofstream cfg(config, std::ios::trunc);
    cfg << "bogus = 1\n";
  }
  CHECK(run_cli_args({"run", "--config", config.string()}) == 2);
  CHECK(run_cli_args({"compare", "--budget", "10",
                      (dir / "missing.csv").string()}) == 3);
}

TEST_CASE("attack experiment runs against a model and images file") {
  const fs::path dir = fresh_dir("attack");
  const fs::path model = dir / "model.txt";
  const fs::path images = dir / "images.txt";
  const fs::path config = dir / "exp.conf";
  const fs::path out = dir / "out";
  {
    std::ofstream m(model);
    m << "3 4\n"
      << "0.5 -0.25 0.1 0.0 0.2\n"
      << "-0.4 0.3 0.2 0.1 -0.1\n"
      << "0.1 0.1 -0.3 -0.2 0.05\n";
  }
  {
    std::ofstream im(images);
    im << "4 4\n";
    for (int i = 0; i < 4; ++i) {
      im << "0.2 0.8 0.4 0.6 " << (i % 3) << "\n";
    }
  }
  {
    std::ofstream cfg(config);
    cfg << "problem = attack\n"
        << "model = " << model.string() << "\n"
        << "images = " << images.string() << "\n"
        << "epsilon = 0.3\n"
        << "solvers = acc_zo_fw, acc_szofw_star_unige\n"
        << "seeds = 2\nT = 60\neval_every = 20\ngap = true_gradient\n"
        << "output_dir = " << out.string() << "\n";
  }
  CHECK(run_cli_args({"run", "--config", config.string()}) == 0);
  std::ifstream trace_in(out / "acc_zo_fw_2.csv");
  REQUIRE(trace_in);
  const RunTrace trace = read_trace_csv(trace_in);
  REQUIRE(trace.records.size() == 60);
  // deterministic full-estimate run: 2 n d queries per iteration
  CHECK(trace.records.back().cumulative_queries == 60 * 2 * 4 * 4);
  // attack losses are softmax probabilities
  for (const auto& rec : trace.records) {
    CHECK(rec.mean_loss >= 0.0);
    CHECK(rec.mean_loss <= 1.0);
  }
  // the perturbation should reduce the true-class probability
  CHECK(trace.records.back().mean_loss < trace.records.front().mean_loss);

  // truncated model file maps to the data-error exit code
  {
    std::ofstream m(model, std::ios::trunc);
    m << "3 4\n0.5 -0.25\n";
  }
  CHECK(run_cli_args({"run", "--config", config.string()}) == 3);
}

TEST_CASE("seed flag replaces the config seed list") {
  const fs::path dir = fresh_dir("seedflag");
  const fs::path config = dir / "exp.conf";
  {
    std::ofstream cfg(config);
    cfg << kTinyConfig << "output_dir = " << (dir / "out").string() << "\n";
  }
  CHECK(run_cli_args({"run", "--config", config.string(), "--seed", "9"}) == 0);
  CHECK(fs::exists(dir / "out" / "acc_szofw_unige_9.csv"));
  CHECK_FALSE(fs::exists(dir / "out" / "acc_szofw_unige_1.csv"));
}

TEST_CASE("env var overrides the output directory") {
  const fs::path dir = fresh_dir("envdir");
  const fs::path config = dir / "exp.conf";
  {
    std::ofstream cfg(config);
    cfg << kTinyConfig << "output_dir = " << (dir / "ignored").string() << "\n";
  }
  const fs::path redirected = dir / "redirected";
  setenv("OUTPUT_DIR", redirected.string().c_str(), 1);
  CHECK(run_cli_args({"run", "--config", config.string()}) == 0);
  unsetenv("OUTPUT_DIR");
  CHECK(fs::exists(redirected / "acc_szofw_unige_1.csv"));
  CHECK_FALSE(fs::exists(dir / "ignored"));
}

TEST_CASE("per-solver horizon overrides map through solver_config_for") {
  std::stringstream in(std::string(kTinyConfig) +
                       "solvers = acc_szofw_unige, acc_szofw_star_unige\n"
                       "T_acc_szofw_star_unige = 2000\n"
                       "eta0_acc_szofw_unige = 0.005\n");
  const ExperimentConfig cfg = parse_experiment_config(in);
  const SolverConfig plain = solver_config_for(cfg, "acc_szofw_unige", 10, 200);
  const SolverConfig star =
      solver_config_for(cfg, "acc_szofw_star_unige", 10, 200);
  CHECK(plain.schedule.horizon == 50);
  CHECK(plain.schedule.eta0 == 0.005);
  CHECK(star.schedule.horizon == 2000);
  CHECK(star.schedule.gamma_multiplier == 6.0);
  CHECK(star.schedule.eta0 ==
        doctest::Approx(std::pow(2000.0, -2.0 / 3.0)).epsilon(1e-12));
  CHECK(star.mode == SamplingMode::Stochastic);
  CHECK(plain.schedule.epoch_length == 5);   // q override applied
  CHECK(plain.schedule.anchor_batch == 20);  // b1 override applied

  std::stringstream bad(std::string(kTinyConfig) + "eta0_no_such = 0.1\n");
  CHECK_THROWS_AS(parse_experiment_config(bad), ConfigError);
}
