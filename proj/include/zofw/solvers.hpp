#ifndef ZOFW_SOLVERS_HPP
#define ZOFW_SOLVERS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "zofw/constraint_set.hpp"
#include "zofw/estimators.hpp"
#include "zofw/problem.hpp"
#include "zofw/rng.hpp"
#include "zofw/schedule.hpp"
#include "zofw/vector_ops.hpp"

namespace zofw {

enum class SolverVariant {
  AccZoFw,           // deterministic, full coordinate estimate each step
  AccSzofwCoo,       // periodic anchor + difference recursion, coordinate
  AccSzofwUni,       // periodic anchor + difference recursion, random dir
  AccSzofwStarCoo,   // single-sample momentum-weighted recursion, coordinate
  AccSzofwStarUni,   // single-sample momentum-weighted recursion, random dir
  PlainZoFwBaseline, // fresh batch estimate, standard conditional-gradient step
};

enum class SamplingMode { FiniteSum, Stochastic };

enum class GapMode { None, TrueGradient, CooGeFull };

enum class EstimatorKind { Coo, Uni };

struct TraceRecord {
  std::int64_t t = 0;
  double mean_loss = 0.0;              // f at the iterate opening iteration t
  std::optional<double> fw_gap;        // stationarity gap at that iterate
  std::uint64_t cumulative_queries = 0;   // optimization queries through t
  std::uint64_t diagnostic_queries = 0;   // cumulative diagnostic queries
  double dist_z_step = 0.0;            // ||z_{t+1} - z_t||
  double dist_xz = 0.0;                // ||x_{t+1} - z_{t+1}||
};

struct RunTrace {
  std::vector<TraceRecord> records;
};

/// Fired once per iteration, after the update. References are only valid
/// during the call. z_estimate is the iterate at which the surrogate was
/// formed (the pre-update z). The baseline reports its single iterate in all
/// three *_next slots.
struct StepObservation {
  std::int64_t t;
  const DenseVector& surrogate;   // v_t
  const DenseVector& direction;   // w_t
  const DenseVector& z_estimate;  // z_t
  const DenseVector& x_next;
  const DenseVector& y_next;
  const DenseVector& z_next;
};

struct SolverConfig {
  SolverVariant variant = SolverVariant::PlainZoFwBaseline;
  Schedule schedule;
  SamplingMode mode = SamplingMode::Stochastic;
  /// Loss/gap are sampled every eval_every iterations (and on the final
  /// row); rows in between carry the last sampled loss and no gap.
  std::int64_t eval_every = 1;
  GapMode gap_mode = GapMode::None;
  EstimatorKind baseline_estimator = EstimatorKind::Uni;
  /// Optimization queries (diagnostics excluded) halt the run once they
  /// reach this; overshoot is below one iteration's cost.
  std::optional<std::uint64_t> query_budget;
  /// Pins the recursion weight at 1 so the surrogate degenerates to the
  /// plain per-sample estimate; the rng stream is consumed unchanged.
  bool force_rho_one = false;
  std::function<void(const StepObservation&)> observer;
};

/// The three coupled iterate sequences plus the running surrogate. All of
/// x, y, z stay feasible after every step; at t = 0 they coincide with the
/// caller's start point.
struct SolverState {
  std::int64_t t = 0;
  DenseVector x, y, z;
  DenseVector v;
  DenseVector z_prev;
  SeededRng rng;
  std::uint64_t queries_at_start = 0;
};

SolverState make_initial_state(const DenseVector& start,
                               const ConstraintSet& set,
                               const BlackBoxProblem& p, std::uint64_t seed);

struct MomentumCoefficients {
  double alpha;  // weight of the aggressive sequence in the recombination
  double gamma;  // step along w - x
  double eta;    // step along w - z
};

/// One update of the coupled sequences:
///   x+ = x + gamma (w - x)
///   y+ = z + eta (w - z)
///   z+ = (1 - alpha) y+ + alpha x+
/// Also rotates z into z_prev and advances t. Fails fast on an infeasible w.
void momentum_step(SolverState& state, const DenseVector& w,
                   const MomentumCoefficients& c, const ConstraintSet& set);

/// Stationarity measure max_{w in X} <w - x, -g> with g either the analytic
/// gradient (query-free) or a full-batch coordinate estimate (queries
/// charged to the problem counter). Nonnegative up to rounding for feasible
/// x.
double fw_gap(const BlackBoxProblem& p, const ConstraintSet& set,
              const DenseVector& x, GapMode mode, double coo_radius = 1e-6);

/// Deterministic accelerated run: full coordinate estimate at z_t every
/// iteration (2 n d queries), then the momentum update.
RunTrace run_acc_zo_fw(const BlackBoxProblem& p, const ConstraintSet& set,
                       const SolverConfig& cfg, const DenseVector& start,
                       std::uint64_t seed);

/// Anchored difference recursion. Every epoch_length-th iteration re-anchors
/// the surrogate (finite-sum: full coordinate estimate; stochastic: batch
/// anchor_batch with the variant's estimator); other iterations apply the
/// batch difference correction (batch / correction_batch). The random-
/// direction variant is stochastic-only.
RunTrace run_acc_szofw(const BlackBoxProblem& p, const ConstraintSet& set,
                       const SolverConfig& cfg, const DenseVector& start,
                       std::uint64_t seed);

/// Single-sample momentum-weighted recursion: a plain estimate at t = 0,
/// then v_t = g(z_t) + (1 - rho_t)(v_{t-1} - g(z_{t-1})) with one shared
/// sample (and direction) for both points.
RunTrace run_acc_szofw_star(const BlackBoxProblem& p, const ConstraintSet& set,
                            const SolverConfig& cfg, const DenseVector& start,
                            std::uint64_t seed);

/// Control without variance reduction or momentum: fresh batch estimate at
/// x_t, then x_{t+1} = x_t + gamma_t (w_t - x_t).
RunTrace run_plain_zofw_baseline(const BlackBoxProblem& p,
                                 const ConstraintSet& set,
                                 const SolverConfig& cfg,
                                 const DenseVector& start, std::uint64_t seed);

/// Dispatch on cfg.variant.
RunTrace run_solver(const BlackBoxProblem& p, const ConstraintSet& set,
                    const SolverConfig& cfg, const DenseVector& start,
                    std::uint64_t seed);

}  // namespace zofw

#endif  // ZOFW_SOLVERS_HPP
