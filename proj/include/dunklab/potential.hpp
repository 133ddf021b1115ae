#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dunklab/common.hpp"
#include "dunklab/poly.hpp"

namespace dunklab {

// Nonnegative potentials from closed-form families: constants, radial powers
// amp * ||x||^a, polynomials with even nonnegative monomials, and finite sums
// of these.  Closed-form structure is what keeps ball averages (and hence the
// landscape function) cheap and keeps reverse-Holder membership checkable.
class Potential {
 public:
  struct Component {
    enum class Kind { Constant, RadialPower, Polynomial } kind;
    double value = 0;     // Constant: c; RadialPower: amplitude
    double exponent = 0;  // RadialPower: a > 0
    Poly poly;            // Polynomial
  };

  static Potential constant(int dim, double c);
  static Potential radial_power(int dim, double amplitude, double a);
  static Potential polynomial(Poly p);
  Potential& add(const Potential& other);  // pointwise sum, same dim

  double operator()(const Point& x) const;

  int dim() const { return dim_; }
  const std::vector<Component>& components() const { return components_; }

  // V(x) -> infinity along every axis direction.
  bool coercive() const;
  bool is_constant() const;
  double constant_value() const;  // valid when is_constant()

  // The whole potential as one polynomial, when every component is one.
  std::optional<Poly> as_polynomial() const;

  // Claimed reverse-Holder exponent, carried with the potential.
  double claimed_q() const { return claimed_q_; }
  void set_claimed_q(double q) { claimed_q_ = q; }

  std::string describe() const;

 private:
  explicit Potential(int dim) : dim_(dim) {}
  void check_nonnegative(const Component& c) const;

  int dim_ = 1;
  std::vector<Component> components_;
  double claimed_q_ = 2.0;
};

}  // namespace dunklab
