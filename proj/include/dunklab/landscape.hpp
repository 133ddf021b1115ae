#pragma once

#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "dunklab/potential.hpp"
#include "dunklab/quadrature.hpp"
#include "dunklab/rng.hpp"

namespace dunklab {

// Ball statistics of the potential against dw, with closed-form fast paths
// for polynomial potentials on axis-product systems and for radial powers in
// rank one.
double potential_ball_integral(const WeightedMeasure& wm, const Potential& V,
                               const Point& center, double r);
// int_B V^q dw (q = 1 reduces to the above; integer q on polynomials and any
// q on single radial powers stay closed-form).
double potential_ball_integral_pow(const WeightedMeasure& wm, const Potential& V,
                                   double q, const Point& center, double r);
double potential_cube_integral(const WeightedMeasure& wm, const Potential& V,
                               const Box& K);

// The landscape function m of a potential: 1/m(x) is the largest radius with
// r^2 average_{B(x,r)} V <= 1.  Evaluations are memoized (keyed on the point
// rounded to 1e-9); the memo supports concurrent readers.
class AuxFunction {
 public:
  AuxFunction(const WeightedMeasure& wm, const Potential& V,
              double bisect_rel_tol = 1e-3);

  // g(x, r) = r^2 * (int_{B(x,r)} V dw) / w(B(x,r)).
  double g(const Point& x, double r) const;

  // m(x); throws Error("degenerate potential ...") when no radius with
  // g <= 1 exists in [1e-8, 1e8].
  double m(const Point& x) const;

  const WeightedMeasure& measure() const { return wm_; }
  const Potential& potential() const { return V_; }
  double bisect_tol() const { return tol_; }
  std::size_t memo_size() const;
  void clear_memo() const;

 private:
  double m_uncached(const Point& x) const;

  const WeightedMeasure& wm_;
  const Potential& V_;
  double tol_;
  mutable std::shared_mutex memo_mu_;
  mutable std::unordered_map<std::string, double> memo_;
};

// Box certified to contain the sublevel set E_lambda = {m <= sqrt(lambda)}.
struct SublevelBox {
  enum class Kind { Empty, Bounded, Unbounded } kind;
  Box box;  // valid for Bounded
};

SublevelBox sublevel_box(const AuxFunction& aux, double lambda);

// Number of cubes of the origin-anchored grid of side scale/sqrt(lambda)
// meeting E_lambda.  Membership is decided at the center and the 2^N
// corners, with one refinement level when the decision sits within 5% of the
// sqrt(lambda) threshold.  Throws for unbounded E_lambda.
std::int64_t grid_count(const AuxFunction& aux, double lambda,
                        double side_scale = 1.0);

struct RhReport {
  double c_rh = 0;        // stabilized estimate
  double first_pass = 0;  // estimate at half the sample budget
  double drift = 0;       // relative change when samples double
  int samples = 0;
};

// Estimates the reverse-Holder constant of V at exponent q by maximizing
// (avg_B V^q)^{1/q} / (avg_B V) over canonical and random balls.  Throws if
// the estimate keeps growing (> 5%) when the sample count doubles.
RhReport rh_verify(const WeightedMeasure& wm, const Potential& V, double q,
                   int samples, const Box& region, Rng rng);

struct MGrowthReport {
  double c_near = 0;    // two-sided constant for ||x-y|| < 1/m(x)
  double c_kappa = 0;   // constant at the fitted kappa
  double kappa = 0;     // fitted exponent
  int pairs = 0;
};

// Fits the smallest (C, kappa) such that the three comparability bounds of m
// hold on sampled pairs.
MGrowthReport check_m_growth(const AuxFunction& aux, int pairs,
                             const Box& region, Rng rng);

}  // namespace dunklab
