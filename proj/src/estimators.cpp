#include "zofw/estimators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace zofw {

DenseVector sample_unit_sphere(std::int64_t d, SeededRng& rng) {
  if (d < 1) throw std::invalid_argument("sample_unit_sphere: d must be >= 1");
  DenseVector u(static_cast<std::size_t>(d));
  if (d == 1) {
    // the 1-D sphere is exactly {-1, +1}; still consumes one draw
    u[0] = rng.normal() < 0.0 ? -1.0 : 1.0;
    return u;
  }
  double norm_sq = 0.0;
  for (auto& v : u) {
    v = rng.normal();
    norm_sq += v * v;
  }
  if (norm_sq < 1e-280) {
    // Degenerate draw (probability ~0); fall back to a fixed axis rather
    // than resampling so the stream consumption stays predictable.
    u.assign(u.size(), 0.0);
    u[0] = 1.0;
    return u;
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (auto& v : u) v *= inv;
  return u;
}

namespace {

void check_batch(std::span<const std::int64_t> batch, const BlackBoxProblem& p,
                 const char* where) {
  if (batch.empty()) {
    throw std::invalid_argument(std::string(where) + ": empty batch");
  }
  for (std::int64_t j : batch) {
    if (j < 0 || j >= p.components()) {
      throw std::out_of_range(std::string(where) + ": component index " +
                              std::to_string(j));
    }
  }
}

// Accumulation always sums per-component estimates in batch order and
// divides by the batch size once at the end, so a batch estimate equals the
// plain average of single-component estimates bit for bit.
void finish_average(DenseVector& g, std::size_t batch_size) {
  const double denom = static_cast<double>(batch_size);
  for (auto& v : g) v /= denom;
}

}  // namespace

DenseVector coo_gradient(const CooGeEstimator& est, const BlackBoxProblem& p,
                         std::span<const std::int64_t> batch,
                         const DenseVector& x) {
  if (!(est.radius > 0.0)) {
    throw std::invalid_argument("coo_gradient: mu must be > 0");
  }
  check_batch(batch, p, "coo_gradient");
  const double mu = est.radius;
  const double two_mu = 2.0 * mu;
  DenseVector g(x.size(), 0.0);
  DenseVector probe = x;
  for (std::int64_t j : batch) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      probe[k] = x[k] + mu;
      const double up = p.evaluate(j, probe);
      probe[k] = x[k] - mu;
      const double down = p.evaluate(j, probe);
      probe[k] = x[k];
      g[k] += (up - down) / two_mu;
    }
  }
  finish_average(g, batch.size());
  return g;
}

DenseVector uni_gradient(const UniGeEstimator& est, const BlackBoxProblem& p,
                         std::span<const std::int64_t> batch,
                         const DenseVector& x, SeededRng& rng) {
  if (!(est.radius > 0.0)) {
    throw std::invalid_argument("uni_gradient: beta must be > 0");
  }
  check_batch(batch, p, "uni_gradient");
  const double beta = est.radius;
  const double d = static_cast<double>(x.size());
  DenseVector g(x.size(), 0.0);
  DenseVector probe(x.size());
  for (std::int64_t j : batch) {
    const DenseVector u = sample_unit_sphere(dim(x), rng);
    for (std::size_t k = 0; k < x.size(); ++k) probe[k] = x[k] + beta * u[k];
    const double forward = p.evaluate(j, probe);
    const double base = p.evaluate(j, x);
    axpy(d * (forward - base) / beta, u, g);
  }
  finish_average(g, batch.size());
  return g;
}

PairedGradient uni_gradient_paired(const UniGeEstimator& est,
                                   const BlackBoxProblem& p,
                                   std::span<const std::int64_t> batch,
                                   const DenseVector& first,
                                   const DenseVector& second, SeededRng& rng) {
  if (!(est.radius > 0.0)) {
    throw std::invalid_argument("uni_gradient_paired: beta must be > 0");
  }
  check_batch(batch, p, "uni_gradient_paired");
  check_same_dim(first, second, "uni_gradient_paired");
  const double beta = est.radius;
  const double d = static_cast<double>(first.size());
  PairedGradient out{DenseVector(first.size(), 0.0),
                     DenseVector(first.size(), 0.0)};
  DenseVector probe(first.size());
  for (std::int64_t j : batch) {
    const DenseVector u = sample_unit_sphere(dim(first), rng);
    for (std::size_t k = 0; k < first.size(); ++k) {
      probe[k] = first[k] + beta * u[k];
    }
    const double forward_first = p.evaluate(j, probe);
    const double base_first = p.evaluate(j, first);
    axpy(d * (forward_first - base_first) / beta, u, out.at_first);

    for (std::size_t k = 0; k < second.size(); ++k) {
      probe[k] = second[k] + beta * u[k];
    }
    const double forward_second = p.evaluate(j, probe);
    const double base_second = p.evaluate(j, second);
    axpy(d * (forward_second - base_second) / beta, u, out.at_second);
  }
  finish_average(out.at_first, batch.size());
  finish_average(out.at_second, batch.size());
  return out;
}

}  // namespace zofw
