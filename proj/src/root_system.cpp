#include "dunklab/root_system.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace dunklab {

namespace {

constexpr double kDedupTol = 1e-12;

bool same_vector(const Point& a, const Point& b, double tol) {
  return (a - b).lpNorm<Eigen::Infinity>() <= tol;
}

bool same_matrix(const SmallMatrix& a, const SmallMatrix& b, double tol) {
  return (a - b).lpNorm<Eigen::Infinity>() <= tol;
}

SmallMatrix reflection_matrix(const Point& alpha) {
  const int n = static_cast<int>(alpha.size());
  SmallMatrix m = SmallMatrix::Identity(n, n);
  m -= (2.0 / alpha.squaredNorm()) * (alpha * alpha.transpose());
  return m;
}

int find_root(const std::vector<Point>& roots, const Point& v, double tol) {
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (same_vector(roots[i], v, tol)) return static_cast<int>(i);
  return -1;
}

}  // namespace

Point reflect(const Point& alpha, const Point& x) {
  const double n2 = alpha.squaredNorm();
  if (n2 == 0.0) throw Error("reflect: zero root vector");
  return x - (2.0 * alpha.dot(x) / n2) * alpha;
}

void RootSystem::validate() const {
  if (dim < 1 || dim > kMaxDim) throw Error("root system: unsupported dimension");
  if (roots.empty()) throw Error("root system: empty");
  const double tol = 1e-10;
  for (const Point& a : roots) {
    if (a.size() != dim) throw Error("root system: inconsistent dimensions");
    if (std::abs(a.squaredNorm() - 2.0) > tol)
      throw Error("root system: root not normalized to ||alpha||^2 = 2");
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    // R cap R alpha = {+-alpha}: the only parallel roots are +-alpha.
    if (find_root(roots, Point(-roots[i]), tol) < 0)
      throw Error("root system: missing -alpha");
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (i == j) continue;
      const double c = roots[i].dot(roots[j]) / 2.0;  // cos angle
      if (std::abs(std::abs(c) - 1.0) < tol && !same_vector(roots[i], Point(-roots[j]), tol))
        throw Error("root system: parallel distinct roots");
    }
    // closure under own reflections
    for (std::size_t j = 0; j < roots.size(); ++j) {
      Point image = reflect(roots[i], roots[j]);
      if (find_root(roots, image, tol) < 0)
        throw Error("root system: not closed under its own reflections");
    }
  }
}

WeylGroup generate_group(const RootSystem& R, int cap) {
  WeylGroup g;
  const int n = R.dim;
  g.elements.push_back(SmallMatrix::Identity(n, n));

  std::vector<SmallMatrix> gens;
  for (std::size_t i = 0; i < R.roots.size(); ++i) {
    SmallMatrix s = reflection_matrix(R.roots[i]);
    bool known = false;
    for (const auto& e : gens)
      if (same_matrix(e, s, kDedupTol)) known = true;
    if (!known) {
      gens.push_back(s);
      g.generators.push_back(static_cast<int>(i));
    }
  }

  std::deque<SmallMatrix> frontier(g.elements.begin(), g.elements.end());
  while (!frontier.empty()) {
    SmallMatrix cur = frontier.front();
    frontier.pop_front();
    for (const auto& s : gens) {
      SmallMatrix prod = s * cur;
      bool known = false;
      for (const auto& e : g.elements)
        if (same_matrix(e, prod, kDedupTol)) {
          known = true;
          break;
        }
      if (!known) {
        if (static_cast<int>(g.elements.size()) >= cap)
          throw Error("generate_group: cap exceeded (non-crystallographic input?)");
        g.elements.push_back(prod);
        frontier.push_back(prod);
      }
    }
  }
  return g;
}

SystemFamily system_family_from_name(const std::string& name) {
  if (name == "a1_power" || name == "A1_power") return SystemFamily::A1Power;
  if (name == "dihedral" || name == "dihedral_I2m" || name == "i2m")
    return SystemFamily::DihedralI2m;
  if (name == "a2" || name == "A2") return SystemFamily::A2;
  throw Error("unknown root system family: " + name);
}

DunklSystem::DunklSystem(RootSystem R, std::vector<double> mult, int group_cap)
    : roots_(std::move(R)), mult_(std::move(mult)) {
  roots_.validate();
  if (mult_.size() != roots_.roots.size())
    throw Error("multiplicity: size does not match root count");
  for (double k : mult_)
    if (!(k >= 0.0)) throw Error("multiplicity: k must be >= 0");

  group_ = generate_group(roots_, group_cap);

  // G-invariance of k: k(sigma_beta(alpha)) = k(alpha).
  for (const auto& sigma : group_.elements) {
    for (std::size_t i = 0; i < roots_.roots.size(); ++i) {
      Point image = sigma * roots_.roots[i];
      int j = find_root(roots_.roots, image, 1e-9);
      if (j < 0) throw Error("multiplicity: group does not permute roots");
      if (std::abs(mult_[i] - mult_[static_cast<std::size_t>(j)]) > 1e-12)
        throw Error("multiplicity: not G-invariant");
    }
  }

  sum_k_ = 0;
  for (double k : mult_) sum_k_ += k;

  // Detect the Z_2^N product structure.
  axis_product_ = true;
  axis_k_.assign(static_cast<std::size_t>(roots_.dim), 0.0);
  std::vector<int> seen(static_cast<std::size_t>(roots_.dim), 0);
  for (std::size_t i = 0; i < roots_.roots.size() && axis_product_; ++i) {
    const Point& a = roots_.roots[i];
    int axis = -1;
    for (int j = 0; j < roots_.dim; ++j) {
      if (std::abs(a[j]) > 1e-12) {
        if (axis >= 0) {
          axis_product_ = false;
          break;
        }
        axis = j;
      }
    }
    if (!axis_product_ || axis < 0) {
      axis_product_ = false;
      break;
    }
    axis_k_[static_cast<std::size_t>(axis)] = mult_[i];
    seen[static_cast<std::size_t>(axis)] += 1;
  }
  if (axis_product_)
    for (int c : seen)
      if (c != 2) axis_product_ = false;
  if (!axis_product_) axis_k_.clear();
}

double DunklSystem::weight(const Point& x) const {
  double w = 1.0;
  for (std::size_t i = 0; i < roots_.roots.size(); ++i) {
    const double k = mult_[i];
    if (k == 0.0) continue;
    w *= std::pow(std::abs(roots_.roots[i].dot(x)), k);
  }
  return w;
}

double DunklSystem::orbit_distance(const Point& x, const Point& y) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& sigma : group_.elements) {
    const double d = (sigma * x - y).norm();
    if (d < best) best = d;
  }
  return best;
}

DunklSystem make_a1_power(int dim, const std::vector<double>& axis_k) {
  if (dim < 1 || dim > kMaxDim) throw Error("a1_power: dimension out of range");
  std::vector<double> ks = axis_k;
  if (ks.size() == 1) ks.assign(static_cast<std::size_t>(dim), axis_k[0]);
  if (ks.size() != static_cast<std::size_t>(dim))
    throw Error("a1_power: need one multiplicity per axis (or a single value)");

  RootSystem R;
  R.dim = dim;
  std::vector<double> mult;
  const double s = std::sqrt(2.0);
  for (int j = 0; j < dim; ++j) {
    Point e = Point::Zero(dim);
    e[j] = s;
    R.roots.push_back(e);
    R.roots.push_back(Point(-e));
    mult.push_back(ks[static_cast<std::size_t>(j)]);
    mult.push_back(ks[static_cast<std::size_t>(j)]);
  }
  return DunklSystem(std::move(R), std::move(mult));
}

DunklSystem make_dihedral(int m, double k_even, double k_odd) {
  if (m < 2) throw Error("dihedral: need m >= 2");
  RootSystem R;
  R.dim = 2;
  std::vector<double> mult;
  const double s = std::sqrt(2.0);
  for (int j = 0; j < 2 * m; ++j) {
    const double th = M_PI * j / m;
    R.roots.push_back(make_point({s * std::cos(th), s * std::sin(th)}));
    // For odd m there is a single orbit; k_even is used for all roots.
    const bool even_orbit = (m % 2 == 1) || (j % 2 == 0);
    mult.push_back(even_orbit ? k_even : k_odd);
  }
  return DunklSystem(std::move(R), std::move(mult));
}

DunklSystem make_a2(double k) { return make_dihedral(3, k, k); }

}  // namespace dunklab
