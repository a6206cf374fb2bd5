#include "zofw/solvers.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace zofw {

namespace {

constexpr double kFeasibilityTol = 1e-9;

void check_start(const DenseVector& start, const ConstraintSet& set,
                 const BlackBoxProblem& p) {
  if (dim(start) != p.dimension() || dim(start) != set.dimension()) {
    throw std::invalid_argument("solver: start dimension mismatch");
  }
  check_finite(start, "solver start");
  if (!set.contains(start, kFeasibilityTol)) {
    throw std::invalid_argument("solver: infeasible start point");
  }
}

// Draws b distinct indices from [0, n) by a partial shuffle.
std::vector<std::int64_t> sample_without_replacement(std::int64_t n,
                                                     std::int64_t b,
                                                     SeededRng& rng) {
  std::vector<std::int64_t> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), std::int64_t{0});
  for (std::int64_t i = 0; i < b; ++i) {
    const std::int64_t j = i + rng.uniform_index(n - i);
    std::swap(pool[static_cast<std::size_t>(i)],
              pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(b));
  return pool;
}

std::vector<std::int64_t> sample_with_replacement(std::int64_t n,
                                                  std::int64_t b,
                                                  SeededRng& rng) {
  std::vector<std::int64_t> batch(static_cast<std::size_t>(b));
  for (auto& j : batch) j = rng.uniform_index(n);
  return batch;
}

// Loss/gap sampling at the diagnostic cadence, with the spent queries
// tracked separately from the optimization budget. The loss is held between
// samples; the final row is always sampled fresh.
class DiagnosticTracker {
 public:
  DiagnosticTracker(const BlackBoxProblem& p, const ConstraintSet& set,
                    const SolverConfig& cfg)
      : p_(p), set_(set), cfg_(cfg) {}

  std::pair<double, std::optional<double>> measure(std::int64_t t,
                                                   bool final_row,
                                                   const DenseVector& at) {
    std::optional<double> gap;
    const bool due = (t % cfg_.eval_every == 0) || final_row ||
                     !std::isfinite(held_loss_);
    if (due) {
      const std::uint64_t before = p_.counter().total();
      held_loss_ = p_.mean_value(at);
      if (cfg_.gap_mode != GapMode::None) {
        gap = fw_gap(p_, set_, at, cfg_.gap_mode, cfg_.schedule.coo_radius);
      }
      total_ += p_.counter().total() - before;
    }
    return {held_loss_, gap};
  }

  std::uint64_t total() const { return total_; }

 private:
  const BlackBoxProblem& p_;
  const ConstraintSet& set_;
  const SolverConfig& cfg_;
  std::uint64_t total_ = 0;
  double held_loss_ = std::numeric_limits<double>::quiet_NaN();
};

void check_config_basics(const SolverConfig& cfg) {
  if (cfg.eval_every < 1) {
    throw std::invalid_argument("solver: eval_every must be >= 1");
  }
  if (cfg.gap_mode == GapMode::CooGeFull &&
      !(cfg.schedule.coo_radius > 0.0)) {
    throw std::invalid_argument("solver: gap diagnostics need a positive mu");
  }
}

// Shared tail of one iteration for the momentum solvers: direction, update,
// diagnostics, bookkeeping. Returns true when the run should stop.
class MomentumLoop {
 public:
  MomentumLoop(const BlackBoxProblem& p, const ConstraintSet& set,
               const SolverConfig& cfg, SolverState& state)
      : p_(p), set_(set), cfg_(cfg), state_(state), diag_(p, set, cfg) {
    trace_.records.reserve(
        static_cast<std::size_t>(std::min<std::int64_t>(cfg.schedule.horizon,
                                                        1 << 20)));
  }

  bool finish_iteration(std::int64_t t) {
    const DenseVector w = set_.lmo(state_.v);
    const std::uint64_t opt_queries =
        p_.counter().total() - state_.queries_at_start - diag_.total();
    const bool budget_hit =
        cfg_.query_budget && opt_queries >= *cfg_.query_budget;
    const bool final_row = budget_hit || t + 1 == cfg_.schedule.horizon;

    auto [loss, gap] = diag_.measure(t, final_row, state_.z);

    const DenseVector z_before = state_.z;
    const MomentumCoefficients coeff{cfg_.schedule.alpha(t + 1),
                                     cfg_.schedule.gamma(t),
                                     cfg_.schedule.eta(t)};
    momentum_step(state_, w, coeff, set_);

    TraceRecord rec;
    rec.t = t;
    rec.mean_loss = loss;
    rec.fw_gap = gap;
    rec.cumulative_queries = opt_queries;
    rec.diagnostic_queries = diag_.total();
    rec.dist_z_step = distance2(state_.z, z_before);
    rec.dist_xz = distance2(state_.x, state_.z);
    trace_.records.push_back(rec);

    if (cfg_.observer) {
      cfg_.observer(StepObservation{t, state_.v, w, state_.z_prev, state_.x,
                                    state_.y, state_.z});
    }
    return final_row;
  }

  RunTrace take_trace() { return std::move(trace_); }

 private:
  const BlackBoxProblem& p_;
  const ConstraintSet& set_;
  const SolverConfig& cfg_;
  SolverState& state_;
  DiagnosticTracker diag_;
  RunTrace trace_;
};

std::vector<std::int64_t> all_components(const BlackBoxProblem& p) {
  std::vector<std::int64_t> idx(static_cast<std::size_t>(p.components()));
  std::iota(idx.begin(), idx.end(), std::int64_t{0});
  return idx;
}

}  // namespace

SolverState make_initial_state(const DenseVector& start,
                               const ConstraintSet& set,
                               const BlackBoxProblem& p, std::uint64_t seed) {
  check_start(start, set, p);
  SolverState state{0,
                    start,
                    start,
                    start,
                    DenseVector(start.size(), 0.0),
                    start,
                    SeededRng(seed),
                    p.counter().total()};
  return state;
}

void momentum_step(SolverState& state, const DenseVector& w,
                   const MomentumCoefficients& c, const ConstraintSet& set) {
  if (!set.contains(w, kFeasibilityTol)) {
    throw std::logic_error("momentum_step: infeasible direction");
  }
  if (!(c.alpha >= 0.0 && c.alpha <= 1.0)) {
    throw std::invalid_argument("momentum_step: alpha outside [0, 1]");
  }
  if (!(c.gamma > 0.0 && c.gamma < 1.0)) {
    throw std::invalid_argument("momentum_step: gamma outside (0, 1)");
  }
  if (!(c.eta > 0.0 && c.eta < 1.0)) {
    throw std::invalid_argument("momentum_step: eta outside (0, 1)");
  }
  check_same_dim(state.x, w, "momentum_step");

  move_toward(state.x, w, c.gamma);
  state.z_prev = state.z;
  for (std::size_t i = 0; i < w.size(); ++i) {
    state.y[i] = state.z_prev[i] + c.eta * (w[i] - state.z_prev[i]);
    state.z[i] = (1.0 - c.alpha) * state.y[i] + c.alpha * state.x[i];
  }
  check_finite(state.z, "momentum_step");
  if (!set.contains(state.x, kFeasibilityTol) ||
      !set.contains(state.y, kFeasibilityTol) ||
      !set.contains(state.z, kFeasibilityTol)) {
    throw std::logic_error("momentum_step: iterate left the feasible set");
  }
  ++state.t;
}

double fw_gap(const BlackBoxProblem& p, const ConstraintSet& set,
              const DenseVector& x, GapMode mode, double coo_radius) {
  DenseVector g;
  switch (mode) {
    case GapMode::TrueGradient:
      if (!p.has_true_gradient()) {
        throw std::logic_error("fw_gap: no analytic gradient available");
      }
      g = p.true_gradient(x);
      break;
    case GapMode::CooGeFull: {
      const auto batch = all_components(p);
      g = coo_gradient(CooGeEstimator{coo_radius}, p, batch, x);
      break;
    }
    case GapMode::None:
      throw std::invalid_argument("fw_gap: mode must select a gradient");
  }
  const DenseVector w = set.lmo(g);
  return -dot(sub(w, x), g);
}

RunTrace run_acc_zo_fw(const BlackBoxProblem& p, const ConstraintSet& set,
                       const SolverConfig& cfg, const DenseVector& start,
                       std::uint64_t seed) {
  if (cfg.variant != SolverVariant::AccZoFw) {
    throw std::invalid_argument("run_acc_zo_fw: wrong variant");
  }
  if (cfg.mode != SamplingMode::FiniteSum) {
    throw std::invalid_argument("run_acc_zo_fw: deterministic run is finite-sum");
  }
  check_config_basics(cfg);
  validate_schedule(cfg.schedule);

  SolverState state = make_initial_state(start, set, p, seed);
  MomentumLoop loop(p, set, cfg, state);
  const auto batch = all_components(p);
  const CooGeEstimator est{cfg.schedule.coo_radius};

  for (std::int64_t t = 0; t < cfg.schedule.horizon; ++t) {
    state.v = coo_gradient(est, p, batch, state.z);
    if (loop.finish_iteration(t)) break;
  }
  return loop.take_trace();
}

RunTrace run_acc_szofw(const BlackBoxProblem& p, const ConstraintSet& set,
                       const SolverConfig& cfg, const DenseVector& start,
                       std::uint64_t seed) {
  const bool coo = cfg.variant == SolverVariant::AccSzofwCoo;
  const bool uni = cfg.variant == SolverVariant::AccSzofwUni;
  if (!coo && !uni) {
    throw std::invalid_argument("run_acc_szofw: wrong variant");
  }
  if (uni && cfg.mode == SamplingMode::FiniteSum) {
    throw std::invalid_argument(
        "run_acc_szofw: the finite-sum branch is coordinate-estimator only");
  }
  check_config_basics(cfg);
  validate_schedule(cfg.schedule);

  const Schedule& sched = cfg.schedule;
  const std::int64_t n = p.components();
  if (cfg.mode == SamplingMode::FiniteSum && sched.batch > n) {
    throw std::invalid_argument(
        "run_acc_szofw: finite-sum correction batch exceeds n");
  }

  SolverState state = make_initial_state(start, set, p, seed);
  MomentumLoop loop(p, set, cfg, state);
  const CooGeEstimator coo_est{sched.coo_radius};
  const UniGeEstimator uni_est{sched.uni_radius};
  const auto full_batch = all_components(p);

  for (std::int64_t t = 0; t < sched.horizon; ++t) {
    if (t % sched.epoch_length == 0) {
      if (cfg.mode == SamplingMode::FiniteSum) {
        state.v = coo_gradient(coo_est, p, full_batch, state.z);
      } else {
        const auto batch =
            sample_with_replacement(n, sched.anchor_batch, state.rng);
        state.v = coo ? coo_gradient(coo_est, p, batch, state.z)
                      : uni_gradient(uni_est, p, batch, state.z, state.rng);
      }
    } else {
      std::vector<std::int64_t> batch;
      if (cfg.mode == SamplingMode::FiniteSum) {
        batch = sample_without_replacement(n, sched.batch, state.rng);
      } else {
        batch = sample_with_replacement(n, sched.correction_batch, state.rng);
      }
      if (coo) {
        const DenseVector g_new = coo_gradient(coo_est, p, batch, state.z);
        const DenseVector g_old =
            coo_gradient(coo_est, p, batch, state.z_prev);
        for (std::size_t k = 0; k < state.v.size(); ++k) {
          state.v[k] += g_new[k] - g_old[k];
        }
      } else {
        const PairedGradient pair = uni_gradient_paired(
            uni_est, p, batch, state.z, state.z_prev, state.rng);
        for (std::size_t k = 0; k < state.v.size(); ++k) {
          state.v[k] += pair.at_first[k] - pair.at_second[k];
        }
      }
    }
    if (loop.finish_iteration(t)) break;
  }
  return loop.take_trace();
}

RunTrace run_acc_szofw_star(const BlackBoxProblem& p, const ConstraintSet& set,
                            const SolverConfig& cfg, const DenseVector& start,
                            std::uint64_t seed) {
  const bool coo = cfg.variant == SolverVariant::AccSzofwStarCoo;
  const bool uni = cfg.variant == SolverVariant::AccSzofwStarUni;
  if (!coo && !uni) {
    throw std::invalid_argument("run_acc_szofw_star: wrong variant");
  }
  if (cfg.mode != SamplingMode::Stochastic) {
    throw std::invalid_argument("run_acc_szofw_star: single-sample recursion is stochastic");
  }
  check_config_basics(cfg);
  validate_schedule(cfg.schedule);

  const Schedule& sched = cfg.schedule;
  SolverState state = make_initial_state(start, set, p, seed);
  MomentumLoop loop(p, set, cfg, state);
  const CooGeEstimator coo_est{sched.coo_radius};
  const UniGeEstimator uni_est{sched.uni_radius};

  for (std::int64_t t = 0; t < sched.horizon; ++t) {
    const std::int64_t sample[1] = {state.rng.uniform_index(p.components())};
    if (t == 0) {
      state.v = coo ? coo_gradient(coo_est, p, sample, state.z)
                    : uni_gradient(uni_est, p, sample, state.z, state.rng);
    } else {
      const double rho = cfg.force_rho_one ? 1.0 : sched.rho(t);
      DenseVector g_new, g_old;
      if (coo) {
        g_new = coo_gradient(coo_est, p, sample, state.z);
        g_old = coo_gradient(coo_est, p, sample, state.z_prev);
      } else {
        PairedGradient pair = uni_gradient_paired(uni_est, p, sample, state.z,
                                                  state.z_prev, state.rng);
        g_new = std::move(pair.at_first);
        g_old = std::move(pair.at_second);
      }
      if (rho == 1.0) {
        state.v = std::move(g_new);
      } else {
        const double keep = 1.0 - rho;
        for (std::size_t k = 0; k < state.v.size(); ++k) {
          state.v[k] = g_new[k] + keep * (state.v[k] - g_old[k]);
        }
      }
    }
    if (loop.finish_iteration(t)) break;
  }
  return loop.take_trace();
}

RunTrace run_plain_zofw_baseline(const BlackBoxProblem& p,
                                 const ConstraintSet& set,
                                 const SolverConfig& cfg,
                                 const DenseVector& start,
                                 std::uint64_t seed) {
  if (cfg.variant != SolverVariant::PlainZoFwBaseline) {
    throw std::invalid_argument("run_plain_zofw_baseline: wrong variant");
  }
  check_config_basics(cfg);
  const Schedule& sched = cfg.schedule;
  if (sched.horizon < 1) {
    throw std::invalid_argument("baseline: T must be >= 1");
  }
  const bool coo = cfg.baseline_estimator == EstimatorKind::Coo;
  if (coo && !(sched.coo_radius > 0.0)) {
    throw std::invalid_argument("baseline: mu must be > 0");
  }
  if (!coo && !(sched.uni_radius > 0.0)) {
    throw std::invalid_argument("baseline: beta must be > 0");
  }
  const std::int64_t n = p.components();
  if (cfg.mode == SamplingMode::FiniteSum && sched.batch > n) {
    throw std::invalid_argument("baseline: finite-sum batch exceeds n");
  }
  check_start(start, set, p);

  SeededRng rng(seed);
  DenseVector x = start;
  const std::uint64_t queries_at_start = p.counter().total();
  DiagnosticTracker diag(p, set, cfg);
  RunTrace trace;
  const CooGeEstimator coo_est{sched.coo_radius};
  const UniGeEstimator uni_est{sched.uni_radius};

  for (std::int64_t t = 0; t < sched.horizon; ++t) {
    const auto batch =
        cfg.mode == SamplingMode::FiniteSum
            ? sample_without_replacement(n, sched.batch, rng)
            : sample_with_replacement(n, sched.batch, rng);
    const DenseVector v = coo ? coo_gradient(coo_est, p, batch, x)
                              : uni_gradient(uni_est, p, batch, x, rng);
    const DenseVector w = set.lmo(v);

    const std::uint64_t opt_queries =
        p.counter().total() - queries_at_start - diag.total();
    const bool budget_hit =
        cfg.query_budget && opt_queries >= *cfg.query_budget;
    const bool final_row = budget_hit || t + 1 == sched.horizon;
    auto [loss, gap] = diag.measure(t, final_row, x);

    const double gamma = sched.gamma(t);
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
      throw std::invalid_argument("baseline: gamma outside [0, 1]");
    }
    const DenseVector x_before = x;
    move_toward(x, w, gamma);
    check_finite(x, "baseline step");

    TraceRecord rec;
    rec.t = t;
    rec.mean_loss = loss;
    rec.fw_gap = gap;
    rec.cumulative_queries = opt_queries;
    rec.diagnostic_queries = diag.total();
    rec.dist_z_step = distance2(x, x_before);
    rec.dist_xz = 0.0;
    trace.records.push_back(rec);

    if (cfg.observer) {
      cfg.observer(StepObservation{t, v, w, x_before, x, x, x});
    }
    if (final_row) break;
  }
  return trace;
}

RunTrace run_solver(const BlackBoxProblem& p, const ConstraintSet& set,
                    const SolverConfig& cfg, const DenseVector& start,
                    std::uint64_t seed) {
  switch (cfg.variant) {
    case SolverVariant::AccZoFw:
      return run_acc_zo_fw(p, set, cfg, start, seed);
    case SolverVariant::AccSzofwCoo:
    case SolverVariant::AccSzofwUni:
      return run_acc_szofw(p, set, cfg, start, seed);
    case SolverVariant::AccSzofwStarCoo:
    case SolverVariant::AccSzofwStarUni:
      return run_acc_szofw_star(p, set, cfg, start, seed);
    case SolverVariant::PlainZoFwBaseline:
      return run_plain_zofw_baseline(p, set, cfg, start, seed);
  }
  throw std::invalid_argument("run_solver: unknown variant");
}

}  // namespace zofw
