#pragma once

#include <array>
#include <vector>

#include "dunklab/common.hpp"

namespace dunklab {

// Sparse multivariate polynomial, sum of c * prod_j x_j^{p_j}.
struct Monomial {
  double coeff = 0;
  std::array<int, kMaxDim> powers{};
};

struct Poly {
  int dim = 0;
  std::vector<Monomial> terms;

  double eval(const Point& x) const;
  Poly operator*(const Poly& other) const;
  Poly pow(int q) const;  // q >= 0

  static Poly constant(int dim, double c);
  // c * x_axis^p
  static Poly axis_power(int dim, int axis, int p, double c = 1.0);

  // Collapses duplicate monomials and drops zero coefficients.
  void normalize();
};

}  // namespace dunklab
