#ifndef ZOFW_VECTOR_OPS_HPP
#define ZOFW_VECTOR_OPS_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace zofw {

// Decision variables, iterates and gradient surrogates are plain dense
// vectors; every public operation keeps entries finite.
using DenseVector = std::vector<double>;

// Row-major dense matrix, used for dataset features and model weights.
struct Matrix {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::int64_t r, std::int64_t c)
      : rows(r), cols(c), data(static_cast<std::size_t>(r * c), 0.0) {}

  double& at(std::int64_t r, std::int64_t c) {
    return data[static_cast<std::size_t>(r * cols + c)];
  }
  double at(std::int64_t r, std::int64_t c) const {
    return data[static_cast<std::size_t>(r * cols + c)];
  }
  const double* row(std::int64_t r) const {
    return data.data() + static_cast<std::size_t>(r * cols);
  }
};

inline std::int64_t dim(const DenseVector& x) {
  return static_cast<std::int64_t>(x.size());
}

inline void check_same_dim(const DenseVector& a, const DenseVector& b,
                           const char* where) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(where) + ": dimension mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
}

inline bool all_finite(const DenseVector& x) {
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

inline void check_finite(const DenseVector& x, const char* where) {
  if (!all_finite(x)) {
    throw std::invalid_argument(std::string(where) + ": non-finite entry");
  }
}

inline double dot(const DenseVector& a, const DenseVector& b) {
  check_same_dim(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const DenseVector& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

inline double norm1(const DenseVector& x) {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return s;
}

inline double norm_inf(const DenseVector& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

inline double distance2(const DenseVector& a, const DenseVector& b) {
  check_same_dim(a, b, "distance2");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double dv = a[i] - b[i];
    s += dv * dv;
  }
  return std::sqrt(s);
}

inline DenseVector sub(const DenseVector& a, const DenseVector& b) {
  check_same_dim(a, b, "sub");
  DenseVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline DenseVector add(const DenseVector& a, const DenseVector& b) {
  check_same_dim(a, b, "add");
  DenseVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline DenseVector scaled(const DenseVector& a, double c) {
  DenseVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
  return out;
}

// y += c * x
inline void axpy(double c, const DenseVector& x, DenseVector& y) {
  check_same_dim(x, y, "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += c * x[i];
}

// x <- x + c * (w - x), the generic convex-combination move.
inline void move_toward(DenseVector& x, const DenseVector& w, double c) {
  check_same_dim(x, w, "move_toward");
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += c * (w[i] - x[i]);
}

}  // namespace zofw

#endif  // ZOFW_VECTOR_OPS_HPP
