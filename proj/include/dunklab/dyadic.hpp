#pragma once

#include <cstdint>
#include <vector>

#include "dunklab/landscape.hpp"
#include "dunklab/potential.hpp"
#include "dunklab/quadrature.hpp"

namespace dunklab {

// Dyadic cube prod_j [n_j 2^-l, (n_j + 1) 2^-l].  Negative levels are the
// large cubes.
struct DyadicCube {
  int level = 0;
  std::array<std::int64_t, kMaxDim> index{};
  int dim = 1;

  double side() const { return std::ldexp(1.0, -level); }
  Point lower() const;
  Point center() const;
  Box box() const;
  // Concentric cube scaled by 2^stars (Q* doubles the side, Q** doubles
  // again, ...).
  Box star(int stars) const;
  DyadicCube parent() const;
  std::vector<DyadicCube> children() const;
};

struct StoppingCube {
  DyadicCube cube;
  double g = 0;         // d(Q)^2 avg_Q V
  double m_center = 0;  // filled on demand by exports
};

// Maximal dyadic cubes (within the region's hierarchy) on which
// d(Q)^2 (int_Q V dw) / w(Q) <= 1.  Disjoint interiors, exact cover of the
// region.
struct StoppingDecomposition {
  std::vector<StoppingCube> cubes;
  Box region;

  double min_side() const;
  double max_side() const;
};

// `halfwidth` must be a power of two; the region is [-halfwidth, halfwidth]^N
// split into 2^N top-level dyadic cubes.  Throws after `depth_cap`
// subdivision levels ("potential too singular on region").
StoppingDecomposition stopping_decomposition(const WeightedMeasure& wm,
                                             const Potential& V,
                                             double halfwidth,
                                             int depth_cap = 40);

// Max side ratio over pairs with Q1**** and Q2**** intersecting (the finite
// overlap constant).
double check_overlap(const StoppingDecomposition& D);

// Smooth resolution of identity adapted to the decomposition: phi_Q is a
// normalized plateau bump supported in Q*, identically the only nonzero
// term deep inside Q, with |grad phi_Q| <~ 1/d(Q).
class PartitionOfUnity {
 public:
  explicit PartitionOfUnity(const StoppingDecomposition& D);

  double phi(std::size_t cube_index, const Point& x) const;
  double sum(const Point& x) const;  // 1 on the region interior
  // Central finite-difference gradient norm of phi_Q.
  double grad_norm(std::size_t cube_index, const Point& x, double h) const;

  const StoppingDecomposition& decomposition() const { return decomp_; }

 private:
  double psi(std::size_t cube_index, const Point& x) const;
  const StoppingDecomposition& decomp_;
};

}  // namespace dunklab
