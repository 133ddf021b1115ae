#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <mutex>
#include <vector>

#include "dunklab/common.hpp"
#include "dunklab/rng.hpp"

namespace dunklab {

// Symmetric staggered sample of a function on {(i + 1/2) h} avoiding 0.
struct SampledFunction1D {
  enum class Parity { Even, Odd, None };

  double h = 1.0 / 64;
  int n_half = 1024;  // nodes per side; total 2 * n_half
  Parity parity = Parity::None;
  std::vector<double> values;

  double node(int i) const { return (i - n_half + 0.5) * h; }
  int size() const { return 2 * n_half; }
  double halfwidth() const { return n_half * h; }
  double max_abs() const;

  static SampledFunction1D sample(const std::function<double(double)>& f,
                                  double h, int n_half, Parity parity);
};

// Rank-1 Dunkl kernel and everything built on it: the defining ODE is
// integrated once per multiplicity along the scaling-reduced argument
// z = x*y, and cubic tables serve all later evaluations.
//
//   E(x, y)      = e(xy) + o(xy)         (real argument)
//   E(x, i eta)  = A(x eta) + i B(x eta) (imaginary argument)
//
// with e' = o, o' + 2k o/z = e (and the alternating-sign analogue for A, B),
// e(0) = A(0) = 1, o(0) = B(0) = 0.
class Dunkl1D {
 public:
  explicit Dunkl1D(double k, double table_dx = 0.01);
  ~Dunkl1D();
  Dunkl1D(const Dunkl1D&) = delete;
  Dunkl1D& operator=(const Dunkl1D&) = delete;

  double multiplicity() const { return k_; }
  double homogeneous_dim() const { return 1.0 + 2.0 * k_; }
  // c_k = 2^{2k + 1/2} Gamma(k + 1/2) (the rank-1 Gaussian integral).
  double ck() const { return ck_; }

  double weight(double x) const;             // 2^k |x|^{2k}
  double ball_mass(double x, double r) const;  // w(B(x, r)), closed form

  // E(x, y), real y.
  double kernel_real(double x, double y) const;
  // E(x, i eta).
  std::complex<double> kernel_imag(double x, double eta) const;

  // Profile access: A(z), B(z) with E(x, i eta) = A(x eta) + i B(x eta).
  double profile_A(double z) const;
  double profile_B(double z) const;
  // Batch evaluation through the SIMD cubic kernels (call ensure_range for
  // the max |z| first when running under parallel_for).
  void profile_A_batch(const double* z, double* out, std::size_t n) const;
  void profile_B_batch(const double* z, double* out, std::size_t n) const;

  // Grow the tables up to |z| <= zmax (imaginary profile) / real profile.
  void ensure_imag_range(double zmax) const;
  void ensure_real_range(double zmax) const;

  // Halved-integration-step rerun of the imaginary profile at a point, for
  // the self-consistency contract.
  double profile_A_refined(double z) const;

  // --- node-set operations ---------------------------------------------

  // Dunkl transform on the node set (even f -> even real transform, odd f ->
  // the odd real function representing -i * Ff).
  SampledFunction1D transform(const SampledFunction1D& f) const;
  // ||f||_{L^2(dw)} on the node set.
  double l2w_norm(const SampledFunction1D& f) const;
  // tau_x f(-y) on the node set, f even.
  SampledFunction1D translate(const SampledFunction1D& f, double x) const;
  // Dunkl convolution f * g = c_k F^{-1}(Ff Fg), both even.
  SampledFunction1D convolve(const SampledFunction1D& f,
                             const SampledFunction1D& g) const;

  // --- heat kernel -------------------------------------------------------

  // h_t(x, y) by quadrature on the transform side; t >= 1e-4.
  double heat_kernel(double t, double x, double y) const;
  // int h_t(x, y) dw(y).
  double heat_normalization(double t, double x) const;
  // |int h_s(x,z) h_t(z,y) dw(z) - h_{s+t}(x,y)|.
  double heat_semigroup_error(double s, double t, double x, double y) const;

 private:
  struct Table;
  void extend(Table& tab, double zmax) const;
  double eval_table(const Table& tab, bool odd_part, double z) const;

  double k_;
  double ck_;
  double dx_;
  std::unique_ptr<Table> imag_;  // A (even), B (odd)
  std::unique_ptr<Table> real_;  // e (even), o (odd)
};

// Radial bump supported in the unit ball: shape(u) = exp(-1/(1-u^2)).
struct RadialBump {
  double operator()(double u) const;
  double deriv(double u) const;
};

// Dense machinery for F phi of a compactly supported even bump.
class BumpTransform {
 public:
  BumpTransform(const Dunkl1D& eval, std::function<double(double)> shape,
                int quad_points = 512);

  double value(double s) const;      // F phi(s)
  double value0() const;             // F phi(0) = c_k^{-1} integral phi dw
  double support_cutoff(double tol) const;  // first s with a dead tail

 private:
  const Dunkl1D& eval_;
  std::vector<double> nodes_, weighted_;  // positive nodes, phi * w * h
};

// |F Psi(xi) - 1| for the bump normalized so that F Psi(0) = 1.
double mollifier_deviation(const BumpTransform& psi, double xi);

struct MollifierReport {
  double c_hat = 0;       // fitted sup of deviation/|xi| on |xi| <= 1
  double global_max = 0;  // sup of deviation on the scanned range
};
MollifierReport mollifier_deviation_scan(const BumpTransform& psi,
                                         double xi_max = 50.0, int n = 400);

struct HolderReport {
  double sup_ratio = 0;       // normalized difference ratio, d(x,y) <= 2t
  double sup_ratio_half = 0;  // same over the first half of the samples
  double drift = 0;           // relative growth from half to full
  double classical_sup = 0;   // k = 0 oracle on the same triples (else 0)
  double max_vanishing = 0;   // sup |phi_t| observed where d(x,y) > 2t
  int admissible = 0;
  int vanishing_checked = 0;
};

// Samples triples (x, y, z) with ||y - z|| < t, evaluates
// |phi_t(x,y) - phi_t(x,z)| * t * max(w(B(x,t)), w(B(y,t))) / ||y - z||
// on d(x,y) <= 2t, and checks that both translations die off when
// d(x,y) > 2t.
HolderReport holder_bound_check(const Dunkl1D& eval,
                                const std::vector<double>& ts, int triples,
                                Rng rng);

struct HeatBoundReport {
  double c_fit = 0;     // fitted Gaussian decay rate (half the regression slope)
  double sup_ratio = 0; // sup of h_t (1+u)^2 max(wB) e^{c d^2/t}
  double sup_refined = 0;
  double drift = 0;
  int samples = 0;
};

// Ratio scan for the heat kernel upper bound over a lattice plus random
// fill; `refine` multiplies the sample count for the stability rerun.
HeatBoundReport heat_bound_scan(const Dunkl1D& eval,
                                const std::vector<double>& ts, int samples,
                                Rng rng, int refine = 2);

// Product (A1^N tensor) kernel for cross-dimension checks.
std::complex<double> product_kernel_imag(
    const std::vector<const Dunkl1D*>& axes, const Point& x, const Point& eta);

}  // namespace dunklab
