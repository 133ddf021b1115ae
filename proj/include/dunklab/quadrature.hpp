#pragma once

#include <functional>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dunklab/common.hpp"
#include "dunklab/poly.hpp"
#include "dunklab/root_system.hpp"

namespace dunklab {

struct QuadratureSpec {
  double rel_tol = 1e-6;
  int max_depth = 32;
  double abs_floor = 1e-14;
};

// One algebraic factor |x - pos|^exponent of a 1-D integrand.
struct SingularFactor {
  double pos = 0;
  double exponent = 0;
};

// Integral over [a, b] of smooth(x) * prod_i |x - pos_i|^{e_i}.  The domain
// is split at interior singular positions; cells with a singular endpoint use
// Gauss-Jacobi nodes matched to the exponent, smooth cells use
// Gauss-Legendre.  Throws QuadratureError when the depth budget is exhausted.
double integrate_line(const std::function<double(double)>& smooth,
                      std::vector<SingularFactor> factors, double a, double b,
                      const QuadratureSpec& spec);

// Closed form of int_a^b t^p |t|^q dt (p >= 0 integer, q > -1).
double axis_moment(int p, double q, double a, double b);

using ScalarField = std::function<double(const Point&)>;

// Quadrature against dw = prod |<x,alpha>|^{k(alpha)} dx over cubes and
// balls, with hyperplane singularities handled per axis.  Ball volumes are
// memoized; the cache supports concurrent readers.
class WeightedMeasure {
 public:
  explicit WeightedMeasure(const DunklSystem& sys, QuadratureSpec spec = {});

  const DunklSystem& system() const { return sys_; }
  const QuadratureSpec& spec() const { return spec_; }

  double integrate_cube(const ScalarField& f, const Box& K) const;
  double integrate_ball(const ScalarField& f, const Point& center,
                        double r) const;

  // Polynomial integrands: for axis-product systems the innermost axis is
  // integrated in closed form (exact in rank 1).
  double integrate_cube(const Poly& f, const Box& K) const;
  double integrate_ball(const Poly& f, const Point& center, double r) const;

  // w(B(x, r)) > 0, memoized on (center, r) rounded to 1e-9.
  double ball_volume(const Point& center, double r) const;

  // c_k = int exp(-||x||^2 / 2) dw, over a box wide enough that the
  // truncated tail is below 1e-12 relative.
  double ck_constant() const;

  // w(B(x,r)) / (r^N prod (|<x,alpha>| + r)^{k}), and its reciprocal.
  std::pair<double, double> comparability(const Point& x, double r) const;

  void clear_cache() const;

 private:
  double integrate_impl(const ScalarField* f, const Poly* p, bool ball,
                        const Box& K, const Point& center, double r) const;

  const DunklSystem& sys_;
  QuadratureSpec spec_;

  mutable std::shared_mutex cache_mu_;
  mutable std::unordered_map<std::string, double> ball_cache_;
  mutable std::once_flag ck_once_;
  mutable double ck_value_ = 0;
};

}  // namespace dunklab
