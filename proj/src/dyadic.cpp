#include "dunklab/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace dunklab {

Point DyadicCube::lower() const {
  Point p(dim);
  const double s = side();
  for (int j = 0; j < dim; ++j)
    p[j] = s * static_cast<double>(index[static_cast<std::size_t>(j)]);
  return p;
}

Point DyadicCube::center() const {
  Point p = lower();
  const double s = side();
  for (int j = 0; j < dim; ++j) p[j] += 0.5 * s;
  return p;
}

Box DyadicCube::box() const {
  Box b;
  b.lo = lower();
  b.hi = b.lo;
  const double s = side();
  for (int j = 0; j < dim; ++j) b.hi[j] += s;
  return b;
}

Box DyadicCube::star(int stars) const {
  const double half = 0.5 * side() * std::ldexp(1.0, stars);
  Box b;
  b.lo = center();
  b.hi = b.lo;
  for (int j = 0; j < dim; ++j) {
    b.lo[j] -= half;
    b.hi[j] += half;
  }
  return b;
}

DyadicCube DyadicCube::parent() const {
  DyadicCube p = *this;
  p.level = level - 1;
  for (int j = 0; j < dim; ++j) {
    const std::int64_t n = index[static_cast<std::size_t>(j)];
    p.index[static_cast<std::size_t>(j)] =
        (n >= 0) ? n / 2 : (n - 1) / 2;  // floor division
  }
  return p;
}

std::vector<DyadicCube> DyadicCube::children() const {
  std::vector<DyadicCube> out;
  const int corners = 1 << dim;
  for (int c = 0; c < corners; ++c) {
    DyadicCube ch = *this;
    ch.level = level + 1;
    for (int j = 0; j < dim; ++j)
      ch.index[static_cast<std::size_t>(j)] =
          2 * index[static_cast<std::size_t>(j)] + ((c >> j) & 1);
    out.push_back(ch);
  }
  return out;
}

double StoppingDecomposition::min_side() const {
  double s = std::numeric_limits<double>::infinity();
  for (const auto& q : cubes) s = std::min(s, q.cube.side());
  return s;
}

double StoppingDecomposition::max_side() const {
  double s = 0;
  for (const auto& q : cubes) s = std::max(s, q.cube.side());
  return s;
}

StoppingDecomposition stopping_decomposition(const WeightedMeasure& wm,
                                             const Potential& V,
                                             double halfwidth, int depth_cap) {
  const int N = V.dim();
  const int top_level = -static_cast<int>(std::llround(std::log2(halfwidth)));
  if (std::abs(std::ldexp(1.0, -top_level) - halfwidth) > 1e-12 * halfwidth)
    throw Error("stopping decomposition: region halfwidth must be a power of 2");

  StoppingDecomposition out;
  out.region = symmetric_box(N, halfwidth);

  auto g_of = [&](const DyadicCube& q) -> double {
    const Box b = q.box();
    const double mass = potential_cube_integral(wm, V, b);
    const double vol = wm.integrate_cube(Poly::constant(N, 1.0), b);
    const double d = q.side();
    return d * d * mass / vol;
  };

  std::deque<DyadicCube> work;
  const int corners = 1 << N;
  for (int c = 0; c < corners; ++c) {
    DyadicCube q;
    q.level = top_level;
    q.dim = N;
    for (int j = 0; j < N; ++j)
      q.index[static_cast<std::size_t>(j)] = ((c >> j) & 1) ? 0 : -1;
    work.push_back(q);
  }

  while (!work.empty()) {
    DyadicCube q = work.front();
    work.pop_front();
    if (q.level - top_level > depth_cap)
      throw Error("stopping decomposition: potential too singular on region");
    const double g = g_of(q);
    if (g <= 1.0) {
      out.cubes.push_back({q, g, 0.0});
    } else {
      for (const auto& ch : q.children()) work.push_back(ch);
    }
  }

  std::sort(out.cubes.begin(), out.cubes.end(),
            [](const StoppingCube& a, const StoppingCube& b) {
              if (a.cube.level != b.cube.level) return a.cube.level < b.cube.level;
              return a.cube.index < b.cube.index;
            });
  return out;
}

double check_overlap(const StoppingDecomposition& D) {
  double worst = 1.0;
  const std::size_t n = D.cubes.size();
  std::vector<Box> stars(n);
  for (std::size_t i = 0; i < n; ++i) stars[i] = D.cubes[i].cube.star(4);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!stars[i].intersects(stars[j])) continue;
      const double r = D.cubes[i].cube.side() / D.cubes[j].cube.side();
      worst = std::max({worst, r, 1.0 / r});
    }
  }
  return worst;
}

namespace {

// C-infinity plateau: 1 on |u| <= 1/2, 0 on |u| >= 1.
double plateau(double u) {
  const double au = std::abs(u);
  auto p = [](double s) { return s <= 0.0 ? 0.0 : std::exp(-1.0 / s); };
  const double a = p(2.0 - 2.0 * au);
  const double b = p(2.0 * au - 1.0);
  return a / (a + b);
}

}  // namespace

PartitionOfUnity::PartitionOfUnity(const StoppingDecomposition& D) : decomp_(D) {
  if (D.cubes.empty()) throw Error("partition: empty decomposition");
}

double PartitionOfUnity::psi(std::size_t i, const Point& x) const {
  const DyadicCube& q = decomp_.cubes[i].cube;
  const Point c = q.center();
  const double d = q.side();
  double v = 1.0;
  for (int j = 0; j < q.dim; ++j) {
    v *= plateau((x[j] - c[j]) / d);
    if (v == 0.0) return 0.0;
  }
  return v;
}

double PartitionOfUnity::phi(std::size_t i, const Point& x) const {
  const double num = psi(i, x);
  if (num == 0.0) return 0.0;
  double den = 0;
  for (std::size_t j = 0; j < decomp_.cubes.size(); ++j) den += psi(j, x);
  if (den <= 0.0)
    throw Error("partition: vanishing denominator (cover broken)");
  return num / den;
}

double PartitionOfUnity::sum(const Point& x) const {
  double s = 0;
  for (std::size_t j = 0; j < decomp_.cubes.size(); ++j) {
    const double p = psi(j, x);
    if (p > 0.0) s += phi(j, x);
  }
  return s;
}

double PartitionOfUnity::grad_norm(std::size_t i, const Point& x, double h) const {
  const int N = decomp_.cubes[i].cube.dim;
  double s2 = 0;
  for (int j = 0; j < N; ++j) {
    Point xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    const double d = (phi(i, xp) - phi(i, xm)) / (2.0 * h);
    s2 += d * d;
  }
  return std::sqrt(s2);
}

}  // namespace dunklab
