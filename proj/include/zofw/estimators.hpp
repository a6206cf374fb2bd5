#ifndef ZOFW_ESTIMATORS_HPP
#define ZOFW_ESTIMATORS_HPP

#include <cstdint>
#include <span>

#include "zofw/problem.hpp"
#include "zofw/rng.hpp"
#include "zofw/vector_ops.hpp"

namespace zofw {

/// Coordinate-wise smoothing estimator: central differences along every
/// basis direction, (f_j(x + mu e_k) - f_j(x - mu e_k)) / (2 mu). Costs
/// exactly 2 d queries per component.
struct CooGeEstimator {
  double radius;  // mu, shared across coordinates
};

/// Random-direction smoothing estimator: d (f_j(x + beta u) - f_j(x)) / beta
/// scaled onto u, with u uniform on the unit sphere. Costs exactly 2 queries
/// per (component, direction) pair. Its expectation over (u, j) is the
/// gradient of the beta-ball uniform smoothing of f.
struct UniGeEstimator {
  double radius;  // beta
};

/// Uniform point on the unit sphere, by normalizing a spherically symmetric
/// Gaussian draw (never by rejection). ||u||_2 = 1 to machine precision.
DenseVector sample_unit_sphere(std::int64_t d, SeededRng& rng);

/// Mini-batch average of coordinate-wise estimates at x. Batch entries are
/// component indices; the reduction runs in ascending batch position so the
/// result is bit-reproducible. Counter increases by exactly 2 d |batch|.
DenseVector coo_gradient(const CooGeEstimator& est, const BlackBoxProblem& p,
                         std::span<const std::int64_t> batch,
                         const DenseVector& x);

/// Mini-batch average of random-direction estimates at x. One fresh
/// direction is drawn per batch entry, consumed in batch order from rng.
/// Counter increases by exactly 2 |batch|.
DenseVector uni_gradient(const UniGeEstimator& est, const BlackBoxProblem& p,
                         std::span<const std::int64_t> batch,
                         const DenseVector& x, SeededRng& rng);

/// Difference-estimator building block: for each batch entry, one direction
/// is drawn and the component is estimated at both points with that same
/// direction, as the recursive surrogates require. Directions are consumed
/// in batch order; each entry of the pair averages its own point's
/// estimates. Counter increases by exactly 4 |batch|.
struct PairedGradient {
  DenseVector at_first;
  DenseVector at_second;
};
PairedGradient uni_gradient_paired(const UniGeEstimator& est,
                                   const BlackBoxProblem& p,
                                   std::span<const std::int64_t> batch,
                                   const DenseVector& first,
                                   const DenseVector& second, SeededRng& rng);

}  // namespace zofw

#endif  // ZOFW_ESTIMATORS_HPP
