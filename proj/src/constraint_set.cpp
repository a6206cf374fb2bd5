#include "zofw/constraint_set.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace zofw {

namespace {

// sign(0) := +1
double sign_pos(double v) { return v < 0.0 ? -1.0 : 1.0; }

}  // namespace

ConstraintSet ConstraintSet::linf_ball(std::int64_t d, double radius,
                                       DenseVector center) {
  if (d < 1) throw std::invalid_argument("linf_ball: d must be >= 1");
  if (!(radius > 0.0)) throw std::invalid_argument("linf_ball: radius must be > 0");
  if (center.empty()) center.assign(static_cast<std::size_t>(d), 0.0);
  if (dim(center) != d) throw std::invalid_argument("linf_ball: center dimension");
  check_finite(center, "linf_ball");
  ConstraintSet s;
  s.kind_ = Kind::LinfBall;
  s.dim_ = d;
  s.radius_ = radius;
  s.center_ = std::move(center);
  return s;
}

ConstraintSet ConstraintSet::l1_ball(std::int64_t d, double radius,
                                     DenseVector center) {
  if (d < 1) throw std::invalid_argument("l1_ball: d must be >= 1");
  if (!(radius > 0.0)) throw std::invalid_argument("l1_ball: radius must be > 0");
  if (center.empty()) center.assign(static_cast<std::size_t>(d), 0.0);
  if (dim(center) != d) throw std::invalid_argument("l1_ball: center dimension");
  check_finite(center, "l1_ball");
  ConstraintSet s;
  s.kind_ = Kind::L1Ball;
  s.dim_ = d;
  s.radius_ = radius;
  s.center_ = std::move(center);
  return s;
}

ConstraintSet ConstraintSet::box(DenseVector lower, DenseVector upper) {
  check_same_dim(lower, upper, "box");
  if (lower.empty()) throw std::invalid_argument("box: d must be >= 1");
  check_finite(lower, "box");
  check_finite(upper, "box");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (lower[i] > upper[i]) {
      throw std::invalid_argument("box: lower exceeds upper at coordinate " +
                                  std::to_string(i));
    }
  }
  ConstraintSet s;
  s.kind_ = Kind::Box;
  s.dim_ = dim(lower);
  s.lower_ = std::move(lower);
  s.upper_ = std::move(upper);
  return s;
}

DenseVector ConstraintSet::lmo(const DenseVector& v) const {
  if (dim(v) != dim_) throw std::invalid_argument("lmo: dimension mismatch");
  check_finite(v, "lmo");
  DenseVector w(v.size());
  switch (kind_) {
    case Kind::LinfBall:
      for (std::size_t k = 0; k < v.size(); ++k) {
        w[k] = center_[k] - radius_ * sign_pos(v[k]);
      }
      break;
    case Kind::L1Ball: {
      std::size_t best = 0;
      double best_abs = std::abs(v[0]);
      for (std::size_t k = 1; k < v.size(); ++k) {
        if (std::abs(v[k]) > best_abs) {
          best_abs = std::abs(v[k]);
          best = k;
        }
      }
      w = center_;
      w[best] = center_[best] - radius_ * sign_pos(v[best]);
      break;
    }
    case Kind::Box:
      for (std::size_t k = 0; k < v.size(); ++k) {
        w[k] = v[k] > 0.0 ? lower_[k] : upper_[k];
      }
      break;
  }
  return w;
}

bool ConstraintSet::contains(const DenseVector& x, double tol) const {
  if (dim(x) != dim_) throw std::invalid_argument("contains: dimension mismatch");
  if (tol < 0.0) throw std::invalid_argument("contains: tol must be >= 0");
  switch (kind_) {
    case Kind::LinfBall:
      for (std::size_t k = 0; k < x.size(); ++k) {
        if (std::abs(x[k] - center_[k]) > radius_ + tol) return false;
      }
      return true;
    case Kind::L1Ball: {
      double s = 0.0;
      for (std::size_t k = 0; k < x.size(); ++k) s += std::abs(x[k] - center_[k]);
      return s <= radius_ + tol;
    }
    case Kind::Box:
      for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k] < lower_[k] - tol || x[k] > upper_[k] + tol) return false;
      }
      return true;
  }
  return false;
}

double ConstraintSet::diameter() const {
  switch (kind_) {
    case Kind::LinfBall:
      return 2.0 * radius_ * std::sqrt(static_cast<double>(dim_));
    case Kind::L1Ball:
      return 2.0 * radius_;
    case Kind::Box:
      return distance2(upper_, lower_);
  }
  return 0.0;
}

}  // namespace zofw
