#ifndef ZOFW_CONSTRAINT_SET_HPP
#define ZOFW_CONSTRAINT_SET_HPP

#include <cstdint>

#include "zofw/vector_ops.hpp"

namespace zofw {

/// Convex compact feasible region with a closed-form linear minimization
/// oracle. Three kinds are supported: the l-inf ball and l1 ball (optionally
/// re-centered) and an axis-aligned box given by its corner vectors.
///
/// Tie-breaking is fixed for deterministic traces: sign(0) := +1 everywhere,
/// and the l1-ball argmax breaks ties at the lowest index. lmo(v) with v = 0
/// therefore returns a fixed vertex instead of erroring.
class ConstraintSet {
 public:
  enum class Kind { LinfBall, L1Ball, Box };

  static ConstraintSet linf_ball(std::int64_t d, double radius,
                                 DenseVector center = {});
  static ConstraintSet l1_ball(std::int64_t d, double radius,
                               DenseVector center = {});
  static ConstraintSet box(DenseVector lower, DenseVector upper);

  /// A maximizer of <w, -v> over the set.
  DenseVector lmo(const DenseVector& v) const;

  /// Membership with the defining inequalities slackened by tol.
  bool contains(const DenseVector& x, double tol) const;

  /// Exact Euclidean diameter.
  double diameter() const;

  std::int64_t dimension() const { return dim_; }
  Kind kind() const { return kind_; }
  double radius() const { return radius_; }
  const DenseVector& center() const { return center_; }
  const DenseVector& lower() const { return lower_; }
  const DenseVector& upper() const { return upper_; }

 private:
  ConstraintSet() = default;

  Kind kind_ = Kind::LinfBall;
  std::int64_t dim_ = 0;
  double radius_ = 0.0;
  DenseVector center_;       // balls only
  DenseVector lower_, upper_;  // box only
};

}  // namespace zofw

#endif  // ZOFW_CONSTRAINT_SET_HPP
