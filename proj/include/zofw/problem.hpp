#ifndef ZOFW_PROBLEM_HPP
#define ZOFW_PROBLEM_HPP

#include <atomic>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <utility>

#include "zofw/constraint_set.hpp"
#include "zofw/vector_ops.hpp"

namespace zofw {

struct ProblemMetadata {
  std::int64_t dimension = 0;   // d
  std::int64_t components = 0;  // n
  double smoothness = 0.0;      // documented upper bound on L, 0 = unknown
  std::optional<double> diameter_hint;
  std::optional<double> value_range_hint;  // bound on f(x) - inf f
  std::optional<double> sigma1_hint;
  std::optional<double> sigma2_hint;
};

/// Counts individual component-function evaluations. Monotone, incremented
/// by exactly one per evaluation; atomic so batches may evaluate
/// concurrently.
class QueryCounter {
 public:
  QueryCounter() = default;
  // moving transplants the count; only happens while wiring a problem up
  QueryCounter(QueryCounter&& other) noexcept
      : total_(other.total_.load(std::memory_order_relaxed)) {}

  std::uint64_t total() const { return total_.load(std::memory_order_relaxed); }
  void increment() { total_.fetch_add(1, std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> total_{0};
};

/// Black-box objective f(x) = (1/n) sum_i f_i(x). Solvers see f only through
/// evaluate(), which charges the query counter; the optional analytic mean
/// gradient is for diagnostics only and never touches the counter.
class BlackBoxProblem {
 public:
  using Component = std::function<double(std::int64_t, const DenseVector&)>;
  using MeanGradient = std::function<DenseVector(const DenseVector&)>;

  BlackBoxProblem(ProblemMetadata meta, Component evaluator,
                  MeanGradient mean_gradient = nullptr)
      : meta_(std::move(meta)),
        component_(std::move(evaluator)),
        mean_gradient_(std::move(mean_gradient)) {}

  BlackBoxProblem(const BlackBoxProblem&) = delete;
  BlackBoxProblem& operator=(const BlackBoxProblem&) = delete;
  BlackBoxProblem(BlackBoxProblem&&) = default;

  /// f_i(x); counts exactly one query. Throws on bad index or dimension.
  double evaluate(std::int64_t i, const DenseVector& x) const;

  /// (1/n) sum_i f_i(x); counts n queries.
  double mean_value(const DenseVector& x) const;

  bool has_true_gradient() const { return static_cast<bool>(mean_gradient_); }

  /// Analytic gradient of the mean objective; query-free.
  DenseVector true_gradient(const DenseVector& x) const;

  const ProblemMetadata& metadata() const { return meta_; }
  const QueryCounter& counter() const { return counter_; }
  std::int64_t dimension() const { return meta_.dimension; }
  std::int64_t components() const { return meta_.components; }

 private:
  ProblemMetadata meta_;
  mutable QueryCounter counter_;
  Component component_;
  MeanGradient mean_gradient_;
};

/// Robust correntropy-induced classification loss:
///   f_i(x) = (sigma^2/2) (1 - exp(-(l_i - a_i^T x)^2 / sigma^2))
/// Labels must be +-1, sigma > 0. The recorded smoothness bound is
/// (1 + 2 e^-3/2) max_i ||a_i||^2; the curvature factor
/// exp(-r^2/sigma^2)(1 - 2 r^2/sigma^2) lies in [-2 e^-3/2, 1], so the
/// tighter max_i ||a_i||^2 already works and the recorded value is safe.
BlackBoxProblem correntropy_problem(Matrix features,
                                    std::vector<double> labels, double sigma);

/// Linear model with a softmax head; the only attack target in scope.
/// Text format: first line "K d", then K rows of d weights and one bias.
struct LinearSoftmaxModel {
  std::int64_t classes = 0;    // K
  std::int64_t dimension = 0;  // d
  Matrix weights;              // K x d
  std::vector<double> bias;    // K

  /// Class probabilities for an input vector.
  DenseVector probabilities(const DenseVector& input) const;
};

LinearSoftmaxModel load_softmax_model(std::istream& in);

/// Untargeted perturbation objective: f_i(x) is the model's softmax
/// probability of the true class for clamp(a_i + x, 0, 1). Pixels are
/// clamped inside the oracle so the feasible set stays the plain l-inf ball
/// of radius epsilon about the origin (returned alongside). One image is the
/// single-perturbation problem, several images the universal one.
/// true_labels are 0-based class indices.
std::pair<BlackBoxProblem, ConstraintSet> attack_problem(
    const LinearSoftmaxModel& model, Matrix images,
    std::vector<std::int64_t> true_labels, double epsilon);

/// f(x) = sum_k x_k^4 as a single-component problem with analytic gradient
/// 4 x^3; smoothness 12 r^2 on the box |x_k| <= r. Smooth but not quadratic,
/// so central differences are inexact.
BlackBoxProblem quartic_test_problem(std::int64_t d, double box_halfwidth);

}  // namespace zofw

#endif  // ZOFW_PROBLEM_HPP
