#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace dunklab {

// Geometry never exceeds rank 4 here, so points and group matrices live on
// the stack.
inline constexpr int kMaxDim = 4;

using Point = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using SmallMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

inline Point make_point(std::initializer_list<double> xs) {
  Point p(static_cast<int>(xs.size()));
  int i = 0;
  for (double v : xs) p[i++] = v;
  return p;
}

inline Point point1(double x) {
  Point p(1);
  p[0] = x;
  return p;
}

inline bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

struct Box {
  Point lo;
  Point hi;

  int dim() const { return static_cast<int>(lo.size()); }
  Point center() const { return 0.5 * (lo + hi); }
  bool contains(const Point& x) const {
    for (int j = 0; j < dim(); ++j)
      if (x[j] < lo[j] || x[j] > hi[j]) return false;
    return true;
  }
  bool intersects(const Box& other) const {
    for (int j = 0; j < dim(); ++j)
      if (hi[j] < other.lo[j] || other.hi[j] < lo[j]) return false;
    return true;
  }
};

inline Box symmetric_box(int dim, double halfwidth) {
  Box b;
  b.lo = Point::Constant(dim, -halfwidth);
  b.hi = Point::Constant(dim, halfwidth);
  return b;
}

}  // namespace dunklab
