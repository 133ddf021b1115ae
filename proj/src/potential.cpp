#include "dunklab/potential.hpp"

#include <cmath>
#include <cstdio>

namespace dunklab {

Potential Potential::constant(int dim, double c) {
  if (c < 0) throw Error("potential: constant must be >= 0");
  Potential v(dim);
  Component comp;
  comp.kind = Component::Kind::Constant;
  comp.value = c;
  v.components_.push_back(comp);
  return v;
}

Potential Potential::radial_power(int dim, double amplitude, double a) {
  if (amplitude < 0) throw Error("potential: power amplitude must be >= 0");
  if (a <= 0) throw Error("potential: power exponent must be > 0");
  Potential v(dim);
  Component comp;
  comp.kind = Component::Kind::RadialPower;
  comp.value = amplitude;
  comp.exponent = a;
  v.components_.push_back(comp);
  return v;
}

Potential Potential::polynomial(Poly p) {
  Potential v(p.dim);
  Component comp;
  comp.kind = Component::Kind::Polynomial;
  comp.poly = std::move(p);
  v.check_nonnegative(comp);
  v.components_.push_back(std::move(comp));
  return v;
}

void Potential::check_nonnegative(const Component& c) const {
  if (c.kind != Component::Kind::Polynomial) return;
  for (const Monomial& m : c.poly.terms) {
    if (m.coeff < 0) throw Error("potential: polynomial coefficients must be >= 0");
    for (int j = 0; j < kMaxDim; ++j)
      if (m.powers[static_cast<std::size_t>(j)] % 2 != 0)
        throw Error("potential: polynomial must use even powers (V >= 0)");
  }
}

Potential& Potential::add(const Potential& other) {
  if (other.dim_ != dim_) throw Error("potential: dimension mismatch in sum");
  for (const auto& c : other.components_) components_.push_back(c);
  return *this;
}

double Potential::operator()(const Point& x) const {
  double s = 0;
  for (const auto& c : components_) {
    switch (c.kind) {
      case Component::Kind::Constant:
        s += c.value;
        break;
      case Component::Kind::RadialPower:
        s += c.value * std::pow(x.norm(), c.exponent);
        break;
      case Component::Kind::Polynomial:
        s += c.poly.eval(x);
        break;
    }
  }
  return s;
}

bool Potential::coercive() const {
  std::vector<bool> covered(static_cast<std::size_t>(dim_), false);
  for (const auto& c : components_) {
    if (c.kind == Component::Kind::RadialPower && c.value > 0) return true;
    if (c.kind == Component::Kind::Polynomial) {
      for (const Monomial& m : c.poly.terms) {
        if (m.coeff <= 0) continue;
        int axis = -1, nonzero = 0;
        for (int j = 0; j < dim_; ++j)
          if (m.powers[static_cast<std::size_t>(j)] > 0) {
            ++nonzero;
            axis = j;
          }
        if (nonzero == 1) covered[static_cast<std::size_t>(axis)] = true;
      }
    }
  }
  for (bool c : covered)
    if (!c) return false;
  return true;
}

bool Potential::is_constant() const {
  for (const auto& c : components_)
    if (c.kind != Component::Kind::Constant) return false;
  return true;
}

double Potential::constant_value() const {
  double s = 0;
  for (const auto& c : components_) s += c.value;
  return s;
}

std::optional<Poly> Potential::as_polynomial() const {
  Poly total = Poly::constant(dim_, 0.0);
  for (const auto& c : components_) {
    switch (c.kind) {
      case Component::Kind::Constant: {
        Poly p = Poly::constant(dim_, c.value);
        total.terms.insert(total.terms.end(), p.terms.begin(), p.terms.end());
        break;
      }
      case Component::Kind::Polynomial:
        total.terms.insert(total.terms.end(), c.poly.terms.begin(),
                           c.poly.terms.end());
        break;
      case Component::Kind::RadialPower: {
        // ||x||^a is polynomial only for even integer a in 1-D or a = 2.
        const double a = c.exponent;
        const bool even_int = std::abs(a - std::round(a)) < 1e-12 &&
                              llround(a) % 2 == 0;
        if (!even_int) return std::nullopt;
        const int half = static_cast<int>(llround(a)) / 2;
        Poly norm2 = Poly::constant(dim_, 0.0);
        for (int j = 0; j < dim_; ++j) {
          Poly t = Poly::axis_power(dim_, j, 2, 1.0);
          norm2.terms.insert(norm2.terms.end(), t.terms.begin(), t.terms.end());
        }
        Poly p = norm2.pow(half);
        for (auto& m : p.terms) m.coeff *= c.value;
        total.terms.insert(total.terms.end(), p.terms.begin(), p.terms.end());
        break;
      }
    }
  }
  total.normalize();
  return total;
}

std::string Potential::describe() const {
  std::string out;
  char buf[128];
  for (const auto& c : components_) {
    if (!out.empty()) out += " + ";
    switch (c.kind) {
      case Component::Kind::Constant:
        std::snprintf(buf, sizeof buf, "%g", c.value);
        out += buf;
        break;
      case Component::Kind::RadialPower:
        std::snprintf(buf, sizeof buf, "%g*|x|^%g", c.value, c.exponent);
        out += buf;
        break;
      case Component::Kind::Polynomial:
        out += "poly";
        break;
    }
  }
  return out;
}

}  // namespace dunklab
