#pragma once

#include <string>
#include <vector>

#include "dunklab/common.hpp"

namespace dunklab {

// Normalized root system: finite set of vectors with ||alpha||^2 = 2,
// R intersect(R alpha) = {+-alpha}, closed under its own reflections.
struct RootSystem {
  int dim = 0;
  std::vector<Point> roots;

  // Throws Error if any invariant fails.
  void validate() const;
};

// Reflection through the hyperplane orthogonal to alpha.
Point reflect(const Point& alpha, const Point& x);

struct WeylGroup {
  std::vector<SmallMatrix> elements;  // identity first, then generated order
  std::vector<int> generators;        // indices into RootSystem::roots

  std::size_t order() const { return elements.size(); }
};

// Closure of the root reflections under composition.  Deduplication uses a
// 1e-12 tolerance on the max entry difference.  Throws if the closure
// exceeds `cap` elements (non-crystallographic input or numerical drift).
WeylGroup generate_group(const RootSystem& R, int cap = 1024);

enum class SystemFamily { A1Power, DihedralI2m, A2 };

SystemFamily system_family_from_name(const std::string& name);

// A root system together with a G-invariant multiplicity k >= 0 and its
// generated reflection group.  All experiment code passes this around.
class DunklSystem {
 public:
  // `mult` is aligned with R.roots.  Throws if k < 0 or not G-invariant.
  DunklSystem(RootSystem R, std::vector<double> mult, int group_cap = 1024);

  const RootSystem& roots() const { return roots_; }
  const WeylGroup& group() const { return group_; }
  int dim() const { return roots_.dim; }
  double multiplicity(int root_index) const { return mult_[root_index]; }
  const std::vector<double>& multiplicities() const { return mult_; }

  double sum_k() const { return sum_k_; }
  // N + sum over roots of k(alpha).
  double homogeneous_dim() const { return roots_.dim + sum_k_; }

  // prod over roots of |<x, alpha>|^k(alpha); zero on hyperplanes is valid.
  double weight(const Point& x) const;

  // min over sigma in G of ||sigma(x) - y||.
  double orbit_distance(const Point& x, const Point& y) const;

  // True when every root is +-sqrt(2) e_j (the Z_2^N product case).  Then
  // the weight factorizes as prod_j 2^{k_j} |x_j|^{2 k_j}.
  bool axis_product() const { return axis_product_; }
  // Per-axis multiplicity k_j for the axis-product case.
  const std::vector<double>& axis_k() const { return axis_k_; }

  bool trivial_multiplicity() const { return sum_k_ == 0.0; }

 private:
  RootSystem roots_;
  std::vector<double> mult_;
  WeylGroup group_;
  double sum_k_ = 0;
  bool axis_product_ = false;
  std::vector<double> axis_k_;
};

// Concrete families.
//
// a1_power: roots {+-sqrt(2) e_j}; `axis_k` has one entry per axis (a single
// entry is broadcast).  dihedral: 2m roots in the plane at angles pi j / m;
// for even m the two orbits take k_even (axes-like orbit, j even) and k_odd.
// a2 is dihedral with m = 3.
DunklSystem make_a1_power(int dim, const std::vector<double>& axis_k);
DunklSystem make_dihedral(int m, double k_even, double k_odd);
DunklSystem make_a2(double k);

}  // namespace dunklab
