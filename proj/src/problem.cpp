#include "zofw/problem.hpp"

#include <cmath>
#include <istream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>

namespace zofw {

double BlackBoxProblem::evaluate(std::int64_t i, const DenseVector& x) const {
  if (i < 0 || i >= meta_.components) {
    throw std::out_of_range("evaluate: component index " + std::to_string(i) +
                            " outside [0, " + std::to_string(meta_.components) +
                            ")");
  }
  if (dim(x) != meta_.dimension) {
    throw std::invalid_argument("evaluate: dimension mismatch");
  }
  check_finite(x, "evaluate");
  counter_.increment();
  return component_(i, x);
}

double BlackBoxProblem::mean_value(const DenseVector& x) const {
  double s = 0.0;
  for (std::int64_t i = 0; i < meta_.components; ++i) s += evaluate(i, x);
  return s / static_cast<double>(meta_.components);
}

DenseVector BlackBoxProblem::true_gradient(const DenseVector& x) const {
  if (!mean_gradient_) {
    throw std::logic_error("true_gradient: problem has no analytic gradient");
  }
  if (dim(x) != meta_.dimension) {
    throw std::invalid_argument("true_gradient: dimension mismatch");
  }
  return mean_gradient_(x);
}

BlackBoxProblem correntropy_problem(Matrix features, std::vector<double> labels,
                                    double sigma) {
  const std::int64_t n = features.rows;
  const std::int64_t d = features.cols;
  if (n < 1 || d < 1) {
    throw std::invalid_argument("correntropy_problem: empty dataset");
  }
  if (static_cast<std::int64_t>(labels.size()) != n) {
    throw std::invalid_argument("correntropy_problem: label count mismatch");
  }
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("correntropy_problem: sigma must be > 0");
  }
  double max_row_sq = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    double row_sq = 0.0;
    for (std::int64_t j = 0; j < d; ++j) {
      const double v = features.at(i, j);
      if (!std::isfinite(v)) {
        throw std::invalid_argument("correntropy_problem: non-finite feature");
      }
      row_sq += v * v;
    }
    max_row_sq = std::max(max_row_sq, row_sq);
    if (labels[static_cast<std::size_t>(i)] != 1.0 &&
        labels[static_cast<std::size_t>(i)] != -1.0) {
      throw std::invalid_argument("correntropy_problem: label outside {-1,+1}");
    }
  }

  ProblemMetadata meta;
  meta.dimension = d;
  meta.components = n;
  meta.smoothness = (1.0 + 2.0 * std::exp(-1.5)) * max_row_sq;
  meta.value_range_hint = sigma * sigma / 2.0;

  auto data = std::make_shared<std::pair<Matrix, std::vector<double>>>(
      std::move(features), std::move(labels));
  const double sig_sq = sigma * sigma;

  auto component = [data, sig_sq](std::int64_t i, const DenseVector& x) {
    const double* a = data->first.row(i);
    double r = data->second[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < x.size(); ++j) r -= a[j] * x[j];
    return 0.5 * sig_sq * (1.0 - std::exp(-r * r / sig_sq));
  };

  auto gradient = [data, sig_sq, n](const DenseVector& x) {
    DenseVector g(x.size(), 0.0);
    for (std::int64_t i = 0; i < n; ++i) {
      const double* a = data->first.row(i);
      double r = data->second[static_cast<std::size_t>(i)];
      for (std::size_t j = 0; j < x.size(); ++j) r -= a[j] * x[j];
      const double c = std::exp(-r * r / sig_sq) * r / static_cast<double>(n);
      for (std::size_t j = 0; j < x.size(); ++j) g[j] -= c * a[j];
    }
    return g;
  };

  return BlackBoxProblem(meta, component, gradient);
}

DenseVector LinearSoftmaxModel::probabilities(const DenseVector& input) const {
  if (dim(input) != dimension) {
    throw std::invalid_argument("probabilities: dimension mismatch");
  }
  DenseVector logits(static_cast<std::size_t>(classes));
  double max_logit = -1e300;
  for (std::int64_t k = 0; k < classes; ++k) {
    const double* wk = weights.row(k);
    double s = bias[static_cast<std::size_t>(k)];
    for (std::size_t j = 0; j < input.size(); ++j) s += wk[j] * input[j];
    logits[static_cast<std::size_t>(k)] = s;
    max_logit = std::max(max_logit, s);
  }
  double z = 0.0;
  for (auto& l : logits) {
    l = std::exp(l - max_logit);
    z += l;
  }
  for (auto& l : logits) l /= z;
  return logits;
}

LinearSoftmaxModel load_softmax_model(std::istream& in) {
  LinearSoftmaxModel model;
  if (!(in >> model.classes >> model.dimension)) {
    throw std::runtime_error("softmax model: missing \"K d\" header");
  }
  if (model.classes < 2 || model.dimension < 1) {
    throw std::runtime_error("softmax model: need K >= 2 and d >= 1");
  }
  model.weights = Matrix(model.classes, model.dimension);
  model.bias.assign(static_cast<std::size_t>(model.classes), 0.0);
  for (std::int64_t k = 0; k < model.classes; ++k) {
    for (std::int64_t j = 0; j < model.dimension; ++j) {
      if (!(in >> model.weights.at(k, j))) {
        throw std::runtime_error("softmax model: truncated weight row " +
                                 std::to_string(k));
      }
    }
    if (!(in >> model.bias[static_cast<std::size_t>(k)])) {
      throw std::runtime_error("softmax model: missing bias in row " +
                               std::to_string(k));
    }
  }
  return model;
}

std::pair<BlackBoxProblem, ConstraintSet> attack_problem(
    const LinearSoftmaxModel& model, Matrix images,
    std::vector<std::int64_t> true_labels, double epsilon) {
  const std::int64_t n = images.rows;
  const std::int64_t d = images.cols;
  if (n < 1) throw std::invalid_argument("attack_problem: no images");
  if (d != model.dimension) {
    throw std::invalid_argument("attack_problem: image/model dimension mismatch");
  }
  if (static_cast<std::int64_t>(true_labels.size()) != n) {
    throw std::invalid_argument("attack_problem: label count mismatch");
  }
  for (std::int64_t i = 0; i < n; ++i) {
    if (true_labels[static_cast<std::size_t>(i)] < 0 ||
        true_labels[static_cast<std::size_t>(i)] >= model.classes) {
      throw std::invalid_argument("attack_problem: label outside [0, K)");
    }
    for (std::int64_t j = 0; j < d; ++j) {
      const double p = images.at(i, j);
      if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("attack_problem: pixel outside [0, 1]");
      }
    }
  }
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("attack_problem: epsilon must be > 0");
  }

  ProblemMetadata meta;
  meta.dimension = d;
  meta.components = n;
  meta.value_range_hint = 1.0;  // softmax outputs live in [0, 1]

  auto data = std::make_shared<std::pair<Matrix, std::vector<std::int64_t>>>(
      std::move(images), std::move(true_labels));
  auto model_copy = std::make_shared<LinearSoftmaxModel>(model);

  auto perturbed = [data](std::int64_t i, const DenseVector& x) {
    const double* a = data->first.row(i);
    DenseVector input(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
      input[j] = std::min(1.0, std::max(0.0, a[j] + x[j]));
    }
    return input;
  };

  auto component = [data, model_copy, perturbed](std::int64_t i,
                                                 const DenseVector& x) {
    const DenseVector probs = model_copy->probabilities(perturbed(i, x));
    return probs[static_cast<std::size_t>(data->second[static_cast<std::size_t>(i)])];
  };

  // d p_b / d x_j = p_b (W_bj - sum_k p_k W_kj) inside the pixel range,
  // 0 where the clamp is active.
  auto gradient = [data, model_copy, perturbed, n, d](const DenseVector& x) {
    DenseVector g(x.size(), 0.0);
    for (std::int64_t i = 0; i < n; ++i) {
      const DenseVector input = perturbed(i, x);
      const DenseVector probs = model_copy->probabilities(input);
      const std::int64_t b = data->second[static_cast<std::size_t>(i)];
      const double pb = probs[static_cast<std::size_t>(b)];
      const double* a = data->first.row(i);
      for (std::int64_t j = 0; j < d; ++j) {
        const double raw = a[j] + x[static_cast<std::size_t>(j)];
        if (raw <= 0.0 || raw >= 1.0) continue;
        double mixed = 0.0;
        for (std::int64_t k = 0; k < model_copy->classes; ++k) {
          mixed += probs[static_cast<std::size_t>(k)] * model_copy->weights.at(k, j);
        }
        g[static_cast<std::size_t>(j)] +=
            pb * (model_copy->weights.at(b, j) - mixed) / static_cast<double>(n);
      }
    }
    return g;
  };

  BlackBoxProblem problem(meta, component, gradient);
  return {std::move(problem), ConstraintSet::linf_ball(d, epsilon)};
}

BlackBoxProblem quartic_test_problem(std::int64_t d, double box_halfwidth) {
  if (d < 1) throw std::invalid_argument("quartic_test_problem: d must be >= 1");
  if (!(box_halfwidth > 0.0)) {
    throw std::invalid_argument("quartic_test_problem: halfwidth must be > 0");
  }
  ProblemMetadata meta;
  meta.dimension = d;
  meta.components = 1;
  meta.smoothness = 12.0 * box_halfwidth * box_halfwidth;
  meta.diameter_hint =
      2.0 * box_halfwidth * std::sqrt(static_cast<double>(d));

  auto component = [](std::int64_t, const DenseVector& x) {
    double s = 0.0;
    for (double v : x) s += v * v * v * v;
    return s;
  };
  auto gradient = [](const DenseVector& x) {
    DenseVector g(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) g[j] = 4.0 * x[j] * x[j] * x[j];
    return g;
  };
  return BlackBoxProblem(meta, component, gradient);
}

}  // namespace zofw
