#ifndef ZOFW_TEST_SUPPORT_HPP
#define ZOFW_TEST_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <memory>
#include <utility>

#include "zofw/constraint_set.hpp"
#include "zofw/problem.hpp"
#include "zofw/rng.hpp"
#include "zofw/vector_ops.hpp"

namespace zofw::testing {

// f(x) = sum_i c_i (x_i - m_i)^2 as a single-component problem with analytic
// gradient; stationary at m.
inline BlackBoxProblem quadratic_problem(DenseVector curvature,
                                         DenseVector minimum) {
  ProblemMetadata meta;
  meta.dimension = dim(curvature);
  meta.components = 1;
  double max_c = 0.0;
  for (double c : curvature) max_c = std::max(max_c, std::abs(c));
  meta.smoothness = 2.0 * max_c;
  auto c = std::make_shared<std::pair<DenseVector, DenseVector>>(
      std::move(curvature), std::move(minimum));
  return BlackBoxProblem(
      meta,
      [c](std::int64_t, const DenseVector& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
          const double dv = x[i] - c->second[i];
          s += c->first[i] * dv * dv;
        }
        return s;
      },
      [c](const DenseVector& x) {
        DenseVector g(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
          g[i] = 2.0 * c->first[i] * (x[i] - c->second[i]);
        }
        return g;
      });
}

// f(x) = w^T x as a single-component problem.
inline BlackBoxProblem linear_problem(DenseVector weights) {
  ProblemMetadata meta;
  meta.dimension = dim(weights);
  meta.components = 1;
  meta.smoothness = 0.0;
  auto w = std::make_shared<DenseVector>(std::move(weights));
  return BlackBoxProblem(
      meta,
      [w](std::int64_t, const DenseVector& x) { return dot(*w, x); },
      [w](const DenseVector&) { return *w; });
}

// Central finite differences of the mean objective (test oracle; charges the
// problem counter, which tests ignore unless they assert accounting).
inline DenseVector fd_mean_gradient(const BlackBoxProblem& p,
                                    const DenseVector& x, double h) {
  DenseVector g(x.size());
  DenseVector probe = x;
  for (std::size_t k = 0; k < x.size(); ++k) {
    probe[k] = x[k] + h;
    const double up = p.mean_value(probe);
    probe[k] = x[k] - h;
    const double down = p.mean_value(probe);
    probe[k] = x[k];
    g[k] = (up - down) / (2.0 * h);
  }
  return g;
}

inline DenseVector random_feasible_point(const ConstraintSet& set,
                                         SeededRng& rng) {
  const std::int64_t d = set.dimension();
  DenseVector x(static_cast<std::size_t>(d));
  switch (set.kind()) {
    case ConstraintSet::Kind::LinfBall:
      for (std::int64_t k = 0; k < d; ++k) {
        x[static_cast<std::size_t>(k)] =
            set.center()[static_cast<std::size_t>(k)] +
            set.radius() * (2.0 * rng.uniform01() - 1.0);
      }
      break;
    case ConstraintSet::Kind::L1Ball: {
      double l1 = 0.0;
      for (auto& v : x) {
        v = 2.0 * rng.uniform01() - 1.0;
        l1 += std::abs(v);
      }
      const double scale = set.radius() * rng.uniform01() / std::max(l1, 1e-300);
      for (std::int64_t k = 0; k < d; ++k) {
        x[static_cast<std::size_t>(k)] =
            set.center()[static_cast<std::size_t>(k)] +
            scale * x[static_cast<std::size_t>(k)];
      }
      break;
    }
    case ConstraintSet::Kind::Box:
      for (std::int64_t k = 0; k < d; ++k) {
        const double lo = set.lower()[static_cast<std::size_t>(k)];
        const double hi = set.upper()[static_cast<std::size_t>(k)];
        x[static_cast<std::size_t>(k)] = lo + (hi - lo) * rng.uniform01();
      }
      break;
  }
  return x;
}

inline DenseVector random_vector(std::int64_t d, SeededRng& rng,
                                 double scale = 1.0) {
  DenseVector v(static_cast<std::size_t>(d));
  for (auto& e : v) e = scale * rng.normal();
  return v;
}

}  // namespace zofw::testing

#endif  // ZOFW_TEST_SUPPORT_HPP
