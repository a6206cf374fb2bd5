#ifndef ZOFW_EXPERIMENT_HPP
#define ZOFW_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zofw/dataio.hpp"
#include "zofw/solvers.hpp"

namespace zofw {

/// Invalid or inconsistent configuration (exit code 2 at the CLI).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat "key = value" experiment description. Solver names:
///   acc_zo_fw, acc_szofw_cooge, acc_szofw_unige,
///   acc_szofw_star_cooge, acc_szofw_star_unige,
///   plain_zofw_cooge, plain_zofw_unige
/// Schedule knobs left at 0 fall back to the problem's preset values; star
/// solvers get the star parameterisation automatically. "T_<solver>" and
/// "eta0_<solver>" keys override the horizon and step scale per solver
/// (budgeted runs need very different horizons and steps per method).
struct ExperimentConfig {
  enum class ProblemKind { RobustClassification, Attack };
  ProblemKind problem = ProblemKind::RobustClassification;

  // robust classification source: a LIBSVM file, or synthetic draws
  std::string dataset_path;
  std::int64_t synthetic_n = 0;
  std::int64_t synthetic_d = 0;
  double synthetic_noise = 0.0;
  std::uint64_t data_seed = 42;
  double sigma = 10.0;
  double l1_radius = 10.0;
  std::optional<double> train_fraction;

  // attack source
  std::string model_path;
  std::string images_path;
  double epsilon = 0.3;

  std::vector<std::string> solvers;
  std::vector<std::uint64_t> seeds;
  std::int64_t horizon = 0;  // T, required
  std::vector<std::pair<std::string, std::int64_t>> horizon_overrides;
  std::vector<std::pair<std::string, double>> eta0_overrides;
  std::int64_t epoch_length = 0;      // q
  std::int64_t batch = 0;             // b
  std::int64_t anchor_batch = 0;      // b1
  std::int64_t correction_batch = 0;  // b2
  double eta0 = 0.0;
  double gamma_multiplier = 0.0;
  double coo_radius = 0.0;  // mu
  double uni_radius = 0.0;  // beta
  SamplingMode mode = SamplingMode::Stochastic;
  std::int64_t eval_every = 1;
  GapMode gap_mode = GapMode::None;
  std::optional<std::uint64_t> query_budget;

  std::string output_dir = "out";
  std::int64_t workers = 1;
};

ExperimentConfig parse_experiment_config(std::istream& in);

struct RunSummary {
  std::string solver;
  std::uint64_t seed = 0;
  double final_loss = 0.0;
  std::optional<double> final_gap;
  std::uint64_t optimization_queries = 0;
  std::uint64_t diagnostic_queries = 0;
  std::int64_t iterations = 0;
};

struct SolverAggregate {
  std::string solver;
  double median_final_loss = 0.0;
  double mean_final_loss = 0.0;
};

struct ExperimentSummary {
  std::vector<RunSummary> runs;          // config order
  std::vector<SolverAggregate> aggregates;  // across seeds, per solver
};

/// Runs every (solver, seed) pair, writing "<solver>_<seed>.csv" per run and
/// "summary.csv" into output_dir. Reruns with an identical config produce
/// byte-identical files. Pairs run in parallel up to cfg.workers.
ExperimentSummary run_experiment(const ExperimentConfig& cfg);

/// Maps a config solver name onto a runnable configuration for the given
/// problem shape. Exposed for tests and the experiment runner.
SolverConfig solver_config_for(const ExperimentConfig& cfg,
                               const std::string& solver_name, std::int64_t d,
                               std::int64_t n);

struct BudgetEntry {
  std::string name;
  double loss_at_budget = 0.0;
};

/// Loss of each trace at its last record with cumulative queries <= budget,
/// sorted ascending. Throws ConfigError when some trace has no such record.
std::vector<BudgetEntry> compare_at_budget(
    const std::vector<std::pair<std::string, RunTrace>>& traces,
    std::uint64_t budget);

/// Full command-line entry point; returns the process exit code
/// (0 ok, 2 config error, 3 data error, 4 runtime failure).
int run_cli(int argc, const char* const* argv);

}  // namespace zofw

#endif  // ZOFW_EXPERIMENT_HPP
