#include "dunklab/poly.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace dunklab {

double Poly::eval(const Point& x) const {
  double s = 0;
  for (const Monomial& t : terms) {
    double v = t.coeff;
    for (int j = 0; j < dim; ++j) {
      for (int p = 0; p < t.powers[static_cast<std::size_t>(j)]; ++p) v *= x[j];
    }
    s += v;
  }
  return s;
}

Poly Poly::operator*(const Poly& other) const {
  Poly out;
  out.dim = std::max(dim, other.dim);
  for (const Monomial& a : terms)
    for (const Monomial& b : other.terms) {
      Monomial m;
      m.coeff = a.coeff * b.coeff;
      for (int j = 0; j < kMaxDim; ++j)
        m.powers[static_cast<std::size_t>(j)] =
            a.powers[static_cast<std::size_t>(j)] + b.powers[static_cast<std::size_t>(j)];
      out.terms.push_back(m);
    }
  out.normalize();
  return out;
}

Poly Poly::pow(int q) const {
  if (q < 0) throw Error("Poly::pow: negative exponent");
  Poly out = Poly::constant(dim, 1.0);
  Poly base = *this;
  int e = q;
  while (e > 0) {
    if (e & 1) out = out * base;
    base = base * base;
    e >>= 1;
  }
  return out;
}

Poly Poly::constant(int dim, double c) {
  Poly p;
  p.dim = dim;
  Monomial m;
  m.coeff = c;
  p.terms.push_back(m);
  return p;
}

Poly Poly::axis_power(int dim, int axis, int p, double c) {
  Poly out;
  out.dim = dim;
  Monomial m;
  m.coeff = c;
  m.powers[static_cast<std::size_t>(axis)] = p;
  out.terms.push_back(m);
  return out;
}

void Poly::normalize() {
  std::map<std::array<int, kMaxDim>, double> acc;
  for (const Monomial& t : terms) acc[t.powers] += t.coeff;
  terms.clear();
  for (const auto& [pw, c] : acc) {
    if (c == 0.0) continue;
    Monomial m;
    m.coeff = c;
    m.powers = pw;
    terms.push_back(m);
  }
}

}  // namespace dunklab
