#include "dunklab/kernel1d.hpp"

#include <algorithm>
#include <cmath>

#include "dunklab/parallel.hpp"
#include "dunklab/quadrature.hpp"
#include "dunklab/simd/kernels.hpp"

namespace dunklab {

namespace {

constexpr double kSeriesEdge = 0.25;  // series below, RK4 above
constexpr double kImagCap = 16384.0;
constexpr double kRealCap = 700.0;  // e, o ~ e^z/2 beyond: overflow territory

// Power series of the scaling-reduced kernel profiles around 0.
// real:  even = sum a_{2n} z^{2n},        odd = sum b_{2n+1} z^{2n+1}
// imag:  even = sum (-1)^n a_{2n} z^{2n}, odd = sum (-1)^n b_{2n+1} z^{2n+1}
void profile_series(double k, bool imag, double z, double* even, double* odd) {
  double a = 1.0;  // a_0
  double se = 1.0, so = 0.0;
  double sign = 1.0;
  const double z2 = z * z;
  double zpow_even = 1.0;  // z^{2n}
  for (int n = 0; n < 64; ++n) {
    const double b = a / (2.0 * n + 1.0 + 2.0 * k);  // b_{2n+1}
    const double odd_term = b * zpow_even * z;
    so += (imag ? sign : 1.0) * odd_term;
    a = b / (2.0 * n + 2.0);  // a_{2n+2}
    zpow_even *= z2;
    sign = -sign;
    const double even_term = a * zpow_even;
    se += (imag ? sign : 1.0) * even_term;
    if (std::abs(even_term) + std::abs(odd_term) < 1e-18 * (std::abs(se) + 1.0))
      break;
  }
  *even = se;
  *odd = so;
}

}  // namespace

struct Dunkl1D::Table {
  bool imag = true;
  double dx = 0.01;
  double cap = kImagCap;
  std::size_t ncells = 0;
  // cubic coefficients per cell, separate arrays for the SIMD gathers
  std::vector<double> e0, e1, e2, e3;  // even profile (A or e)
  std::vector<double> o0, o1, o2, o3;  // odd profile (B or o)
  // integration state at the right edge
  double z_end = 0, v_even = 1, v_odd = 0;
  mutable std::mutex mu;
};

Dunkl1D::Dunkl1D(double k, double table_dx) : k_(k), dx_(table_dx) {
  if (k < 0) throw Error("dunkl kernel: multiplicity must be >= 0");
  ck_ = std::pow(2.0, 2.0 * k + 0.5) * std::tgamma(k + 0.5);
  imag_ = std::make_unique<Table>();
  imag_->imag = true;
  imag_->dx = dx_;
  imag_->cap = kImagCap;
  real_ = std::make_unique<Table>();
  real_->imag = false;
  real_->dx = dx_;
  real_->cap = kRealCap;
  ensure_imag_range(16.0);
}

Dunkl1D::~Dunkl1D() = default;

double Dunkl1D::weight(double x) const {
  return std::pow(2.0, k_) * std::pow(std::abs(x), 2.0 * k_);
}

double Dunkl1D::ball_mass(double x, double r) const {
  return std::pow(2.0, k_) * axis_moment(0, 2.0 * k_, x - r, x + r);
}

void Dunkl1D::extend(Table& tab, double zmax) const {
  std::lock_guard<std::mutex> lock(tab.mu);
  if (zmax > tab.cap)
    throw Error("dunkl kernel: argument out of supported range");
  const std::size_t want =
      static_cast<std::size_t>(std::ceil(zmax / tab.dx)) + 2;
  if (want <= tab.ncells) return;

  tab.e0.reserve(want); tab.e1.reserve(want); tab.e2.reserve(want); tab.e3.reserve(want);
  tab.o0.reserve(want); tab.o1.reserve(want); tab.o2.reserve(want); tab.o3.reserve(want);

  auto rhs = [&](double z, double ev, double ov, double* dev, double* dov) {
    *dev = (tab.imag ? -1.0 : 1.0) * ov;
    if (z < 1e-12)
      *dov = ev / (1.0 + 2.0 * k_);
    else
      *dov = ev - 2.0 * k_ * ov / z;
  };

  while (tab.ncells < want) {
    const double z0 = tab.dx * static_cast<double>(tab.ncells);
    const double z1 = z0 + tab.dx;
    double v0e, v0o, v1e, v1o;
    if (z1 <= kSeriesEdge + 1e-12) {
      profile_series(k_, tab.imag, z0, &v0e, &v0o);
      profile_series(k_, tab.imag, z1, &v1e, &v1o);
      tab.z_end = z1;
      tab.v_even = v1e;
      tab.v_odd = v1o;
    } else {
      v0e = tab.v_even;
      v0o = tab.v_odd;
      // Classic RK4, four substeps per cell.
      double z = z0, ev = v0e, ov = v0o;
      const double h = tab.dx / 4.0;
      for (int s = 0; s < 4; ++s) {
        double k1e, k1o, k2e, k2o, k3e, k3o, k4e, k4o;
        rhs(z, ev, ov, &k1e, &k1o);
        rhs(z + 0.5 * h, ev + 0.5 * h * k1e, ov + 0.5 * h * k1o, &k2e, &k2o);
        rhs(z + 0.5 * h, ev + 0.5 * h * k2e, ov + 0.5 * h * k2o, &k3e, &k3o);
        rhs(z + h, ev + h * k3e, ov + h * k3o, &k4e, &k4o);
        ev += h / 6.0 * (k1e + 2 * k2e + 2 * k3e + k4e);
        ov += h / 6.0 * (k1o + 2 * k2o + 2 * k3o + k4o);
        z += h;
      }
      v1e = ev;
      v1o = ov;
      tab.z_end = z1;
      tab.v_even = v1e;
      tab.v_odd = v1o;
    }
    double d0e, d0o, d1e, d1o;
    rhs(z0, v0e, v0o, &d0e, &d0o);
    rhs(z1, v1e, v1o, &d1e, &d1o);
    // Hermite cubic in the cell-local coordinate t = (z - z0)/dx.
    auto push = [&](std::vector<double>& c0, std::vector<double>& c1,
                    std::vector<double>& c2, std::vector<double>& c3,
                    double va, double da, double vb, double db) {
      da *= tab.dx;
      db *= tab.dx;
      c0.push_back(va);
      c1.push_back(da);
      c2.push_back(3 * (vb - va) - 2 * da - db);
      c3.push_back(2 * (va - vb) + da + db);
    };
    push(tab.e0, tab.e1, tab.e2, tab.e3, v0e, d0e, v1e, d1e);
    push(tab.o0, tab.o1, tab.o2, tab.o3, v0o, d0o, v1o, d1o);
    ++tab.ncells;
  }
}

double Dunkl1D::eval_table(const Table& tab, bool odd_part, double z) const {
  const double az = std::abs(z);
  if (az >= tab.dx * static_cast<double>(tab.ncells))
    const_cast<Dunkl1D*>(this)->extend(const_cast<Table&>(tab), az + 1.0);
  const double u = az / tab.dx;
  const std::size_t cell = std::min(static_cast<std::size_t>(u), tab.ncells - 1);
  const double t = u - static_cast<double>(cell);
  const auto& c0 = odd_part ? tab.o0 : tab.e0;
  const auto& c1 = odd_part ? tab.o1 : tab.e1;
  const auto& c2 = odd_part ? tab.o2 : tab.e2;
  const auto& c3 = odd_part ? tab.o3 : tab.e3;
  const double v = ((c3[cell] * t + c2[cell]) * t + c1[cell]) * t + c0[cell];
  if (odd_part && z < 0) return -v;
  return v;
}

double Dunkl1D::profile_A(double z) const { return eval_table(*imag_, false, z); }
double Dunkl1D::profile_B(double z) const { return eval_table(*imag_, true, z); }

void Dunkl1D::ensure_imag_range(double zmax) const {
  extend(*imag_, std::abs(zmax));
}

void Dunkl1D::ensure_real_range(double zmax) const {
  extend(*real_, std::abs(zmax));
}

void Dunkl1D::profile_A_batch(const double* z, double* out, std::size_t n) const {
  const Table& tab = *imag_;
  // |z| via a local pass; the cubic kernel clamps into the table.
  thread_local std::vector<double> absz;
  absz.resize(n);
  for (std::size_t i = 0; i < n; ++i) absz[i] = std::abs(z[i]);
  simd::cubic_eval(tab.e0.data(), tab.e1.data(), tab.e2.data(), tab.e3.data(),
                   tab.ncells, 1.0 / tab.dx, absz.data(), out, n);
}

void Dunkl1D::profile_B_batch(const double* z, double* out, std::size_t n) const {
  const Table& tab = *imag_;
  thread_local std::vector<double> absz;
  absz.resize(n);
  for (std::size_t i = 0; i < n; ++i) absz[i] = std::abs(z[i]);
  simd::cubic_eval(tab.o0.data(), tab.o1.data(), tab.o2.data(), tab.o3.data(),
                   tab.ncells, 1.0 / tab.dx, absz.data(), out, n);
  for (std::size_t i = 0; i < n; ++i)
    if (z[i] < 0) out[i] = -out[i];
}

double Dunkl1D::kernel_real(double x, double y) const {
  const double z = x * y;
  if (std::abs(z) > kRealCap)
    throw Error("dunkl kernel: argument out of supported range");
  return eval_table(*real_, false, z) + eval_table(*real_, true, z);
}

std::complex<double> Dunkl1D::kernel_imag(double x, double eta) const {
  const double z = x * eta;
  return {eval_table(*imag_, false, z), eval_table(*imag_, true, z)};
}

double Dunkl1D::profile_A_refined(double z) const {
  // Fresh march at half the integration step, series start included.
  const double az = std::abs(z);
  if (az <= kSeriesEdge) {
    double e, o;
    profile_series(k_, true, az, &e, &o);
    return e;
  }
  double zc = kSeriesEdge, ev, ov;
  profile_series(k_, true, zc, &ev, &ov);
  const double h = dx_ / 8.0;
  auto rhs = [&](double zz, double e, double o, double* de, double* dd) {
    *de = -o;
    *dd = e - 2.0 * k_ * o / zz;
  };
  while (zc < az) {
    const double step = std::min(h, az - zc);
    double k1e, k1o, k2e, k2o, k3e, k3o, k4e, k4o;
    rhs(zc, ev, ov, &k1e, &k1o);
    rhs(zc + 0.5 * step, ev + 0.5 * step * k1e, ov + 0.5 * step * k1o, &k2e, &k2o);
    rhs(zc + 0.5 * step, ev + 0.5 * step * k2e, ov + 0.5 * step * k2o, &k3e, &k3o);
    rhs(zc + step, ev + step * k3e, ov + step * k3o, &k4e, &k4o);
    ev += step / 6.0 * (k1e + 2 * k2e + 2 * k3e + k4e);
    ov += step / 6.0 * (k1o + 2 * k2o + 2 * k3o + k4o);
    zc += step;
  }
  return ev;
}

// ---------------------------------------------------------------------------
// node-set operations

double SampledFunction1D::max_abs() const {
  double m = 0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

SampledFunction1D SampledFunction1D::sample(
    const std::function<double(double)>& f, double h, int n_half,
    Parity parity) {
  SampledFunction1D out;
  out.h = h;
  out.n_half = n_half;
  out.parity = parity;
  out.values.resize(static_cast<std::size_t>(2 * n_half));
  for (int i = 0; i < 2 * n_half; ++i)
    out.values[static_cast<std::size_t>(i)] = f(out.node(i));
  return out;
}

SampledFunction1D Dunkl1D::transform(const SampledFunction1D& f) const {
  if (f.parity == SampledFunction1D::Parity::None)
    throw Error("dunkl transform: declared parity (even/odd) required");
  const int n = f.size();
  const double edge = std::max(std::abs(f.values.front()),
                               std::abs(f.values.back()));
  if (edge > 1e-10 * std::max(f.max_abs(), 1e-300))
    throw Error("dunkl transform: truncation-dominated transform "
                "(f does not decay at the node-set boundary)");

  const double L = f.halfwidth();
  ensure_imag_range(L * L + 2.0);

  std::vector<double> v(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    v[static_cast<std::size_t>(j)] =
        f.values[static_cast<std::size_t>(j)] * weight(f.node(j)) * f.h;

  SampledFunction1D out = f;  // same grid and parity
  const bool even = f.parity == SampledFunction1D::Parity::Even;
  const double inv_ck = 1.0 / ck_;

  parallel_for(static_cast<std::size_t>(f.n_half), [&](std::size_t row) {
    thread_local std::vector<double> z, kr;
    z.resize(static_cast<std::size_t>(n));
    kr.resize(static_cast<std::size_t>(n));
    const int i = f.n_half + static_cast<int>(row);  // positive xi nodes
    const double xi = f.node(i);
    for (int j = 0; j < n; ++j)
      z[static_cast<std::size_t>(j)] = xi * f.node(j);
    if (even)
      profile_A_batch(z.data(), kr.data(), static_cast<std::size_t>(n));
    else
      profile_B_batch(z.data(), kr.data(), static_cast<std::size_t>(n));
    const double s = inv_ck * simd::dot(kr.data(), v.data(),
                                        static_cast<std::size_t>(n));
    out.values[static_cast<std::size_t>(i)] = s;
    out.values[static_cast<std::size_t>(2 * f.n_half - 1 - i + 0)] =
        even ? s : -s;
  });
  return out;
}

double Dunkl1D::l2w_norm(const SampledFunction1D& f) const {
  double s = 0;
  for (int j = 0; j < f.size(); ++j) {
    const double v = f.values[static_cast<std::size_t>(j)];
    s += v * v * weight(f.node(j)) * f.h;
  }
  return std::sqrt(s);
}

SampledFunction1D Dunkl1D::translate(const SampledFunction1D& f, double x) const {
  if (f.parity != SampledFunction1D::Parity::Even)
    throw Error("dunkl translate: radial (even) function required");
  const SampledFunction1D fhat = transform(f);
  const int n = f.size();
  const double L = f.halfwidth();
  ensure_imag_range(L * std::max(L, std::abs(x)) + 2.0);

  std::vector<double> g(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    g[static_cast<std::size_t>(j)] =
        fhat.values[static_cast<std::size_t>(j)] * weight(f.node(j)) * f.h / ck_;

  std::vector<double> zx(static_cast<std::size_t>(n)),
      ax(static_cast<std::size_t>(n)), bx(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) zx[static_cast<std::size_t>(j)] = f.node(j) * x;
  profile_A_batch(zx.data(), ax.data(), static_cast<std::size_t>(n));
  profile_B_batch(zx.data(), bx.data(), static_cast<std::size_t>(n));

  SampledFunction1D out = f;
  out.parity = SampledFunction1D::Parity::None;

  parallel_for(static_cast<std::size_t>(n), [&](std::size_t iy) {
    thread_local std::vector<double> zy, ay, by;
    zy.resize(static_cast<std::size_t>(n));
    ay.resize(static_cast<std::size_t>(n));
    by.resize(static_cast<std::size_t>(n));
    const double y = f.node(static_cast<int>(iy));
    for (int j = 0; j < n; ++j)
      zy[static_cast<std::size_t>(j)] = f.node(j) * y;
    profile_A_batch(zy.data(), ay.data(), static_cast<std::size_t>(n));
    profile_B_batch(zy.data(), by.data(), static_cast<std::size_t>(n));
    out.values[iy] = simd::pair_dot(ax.data(), bx.data(), ay.data(), by.data(),
                                    g.data(), static_cast<std::size_t>(n));
  });
  return out;
}

SampledFunction1D Dunkl1D::convolve(const SampledFunction1D& f,
                                    const SampledFunction1D& g) const {
  if (f.parity != SampledFunction1D::Parity::Even ||
      g.parity != SampledFunction1D::Parity::Even)
    throw Error("dunkl convolve: even functions required");
  if (f.size() != g.size() || f.h != g.h)
    throw Error("dunkl convolve: node sets must match");
  const SampledFunction1D fh = transform(f);
  const SampledFunction1D gh = transform(g);
  SampledFunction1D prod = fh;
  for (std::size_t j = 0; j < prod.values.size(); ++j)
    prod.values[j] = fh.values[j] * gh.values[j];
  // f * g = c_k F^{-1}[Ff Fg]; for even data the inverse transform is the
  // forward one, so the c_k factors cancel.
  SampledFunction1D out = transform(prod);
  for (double& v : out.values) v *= ck_;
  return out;
}

// ---------------------------------------------------------------------------
// heat kernel

namespace {

struct XiGrid {
  double h = 0;
  std::vector<double> xi;  // positive midpoints
};

XiGrid make_xi_grid(double xi_max, double reach) {
  XiGrid g;
  g.h = 2.0 * M_PI / (8.0 * reach + 64.0);
  const std::size_t n = static_cast<std::size_t>(std::ceil(xi_max / g.h));
  g.xi.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    g.xi[j] = (static_cast<double>(j) + 0.5) * g.h;
  return g;
}

double heat_xi_max(double t, double k) {
  double xi = std::sqrt(40.0 / t);
  xi = std::sqrt((40.0 + 2.0 * k * std::log1p(xi)) / t);
  return std::sqrt((40.0 + 2.0 * k * std::log1p(xi)) / t);
}

}  // namespace

double Dunkl1D::heat_kernel(double t, double x, double y) const {
  if (t < 1e-4)
    throw Error("heat kernel: t below the 1e-4 resolution threshold");
  const double xi_max = heat_xi_max(t, k_);
  const XiGrid grid = make_xi_grid(xi_max, std::abs(x) + std::abs(y));
  const std::size_t n = grid.xi.size();
  ensure_imag_range(xi_max * (std::abs(x) + std::abs(y) + 1.0) + 2.0);

  thread_local std::vector<double> zx, zy, axv, bxv, ayv, byv, env;
  zx.resize(n); zy.resize(n); axv.resize(n); bxv.resize(n);
  ayv.resize(n); byv.resize(n); env.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    zx[j] = grid.xi[j] * x;
    zy[j] = grid.xi[j] * y;
    env[j] = std::exp(-t * grid.xi[j] * grid.xi[j]) * weight(grid.xi[j]);
  }
  profile_A_batch(zx.data(), axv.data(), n);
  profile_B_batch(zx.data(), bxv.data(), n);
  profile_A_batch(zy.data(), ayv.data(), n);
  profile_B_batch(zy.data(), byv.data(), n);
  const double s = simd::pair_dot(axv.data(), bxv.data(), ayv.data(),
                                  byv.data(), env.data(), n);
  // One c_k^{-1} from each transform direction: this is the kernel with
  // int h_t(x, y) dw(y) = 1 and h_t(0,0) = c_k^{-1} (2t)^{-N/2}.
  return 2.0 * grid.h * s / (ck_ * ck_);
}

double Dunkl1D::heat_normalization(double t, double x) const {
  const double hy = 1.0 / 64;
  const double Y = std::abs(x) + std::sqrt(4.0 * t * 40.0) + 2.0;
  const int n_half = static_cast<int>(std::ceil(Y / hy));
  double s = 0;
  for (int i = -n_half; i < n_half; ++i) {
    const double y = (i + 0.5) * hy;
    s += heat_kernel(t, x, y) * weight(y) * hy;
  }
  return s;
}

double Dunkl1D::heat_semigroup_error(double s, double t, double x, double y) const {
  const double hz = 1.0 / 32;
  const double Z = std::abs(x) + std::abs(y) +
                   std::sqrt(4.0 * std::max(s, t) * 40.0) + 2.0;
  const int n_half = static_cast<int>(std::ceil(Z / hz));
  double acc = 0;
  for (int i = -n_half; i < n_half; ++i) {
    const double z = (i + 0.5) * hz;
    acc += heat_kernel(s, x, z) * heat_kernel(t, z, y) * weight(z) * hz;
  }
  return std::abs(acc - heat_kernel(s + t, x, y));
}

// ---------------------------------------------------------------------------
// bumps and bound checks

double RadialBump::operator()(double u) const {
  const double a = 1.0 - u * u;
  return a <= 0.0 ? 0.0 : std::exp(-1.0 / a);
}

double RadialBump::deriv(double u) const {
  const double a = 1.0 - u * u;
  if (a <= 0.0) return 0.0;
  return std::exp(-1.0 / a) * (-2.0 * u / (a * a));
}

BumpTransform::BumpTransform(const Dunkl1D& eval,
                             std::function<double(double)> shape,
                             int quad_points)
    : eval_(eval) {
  const double h = 1.0 / quad_points;
  nodes_.resize(static_cast<std::size_t>(quad_points));
  weighted_.resize(static_cast<std::size_t>(quad_points));
  for (int j = 0; j < quad_points; ++j) {
    const double u = (j + 0.5) * h;
    nodes_[static_cast<std::size_t>(j)] = u;
    weighted_[static_cast<std::size_t>(j)] = 2.0 * shape(u) * eval.weight(u) * h;
  }
}

double BumpTransform::value(double s) const {
  const std::size_t n = nodes_.size();
  eval_.ensure_imag_range(std::abs(s) + 2.0);
  thread_local std::vector<double> z, a;
  z.resize(n);
  a.resize(n);
  for (std::size_t j = 0; j < n; ++j) z[j] = s * nodes_[j];
  eval_.profile_A_batch(z.data(), a.data(), n);
  return simd::dot(a.data(), weighted_.data(), n) / eval_.ck();
}

double BumpTransform::value0() const {
  double s = 0;
  for (double w : weighted_) s += w;
  return s / eval_.ck();
}

double BumpTransform::support_cutoff(double tol) const {
  const double scale = std::abs(value0());
  int below = 0;
  for (double s = 8.0; s <= 4000.0; s += 4.0) {
    if (std::abs(value(s)) < tol * scale) {
      if (++below >= 8) return s;
    } else {
      below = 0;
    }
  }
  return 4000.0;
}

double mollifier_deviation(const BumpTransform& psi, double xi) {
  return std::abs(psi.value(xi) / psi.value0() - 1.0);
}

MollifierReport mollifier_deviation_scan(const BumpTransform& psi,
                                         double xi_max, int n) {
  MollifierReport rep;
  for (int i = 0; i < n; ++i) {
    const double xi = std::pow(10.0, -3.0 + 3.0 * i / (n - 1.0));  // up to 1
    const double dev = mollifier_deviation(psi, xi);
    rep.c_hat = std::max(rep.c_hat, dev / xi);
    rep.global_max = std::max(rep.global_max, dev);
  }
  for (int i = 0; i < n; ++i) {
    const double xi = xi_max * (i + 1.0) / n;
    rep.global_max = std::max(rep.global_max, mollifier_deviation(psi, xi));
  }
  return rep;
}

namespace {

// Orbit distance for the rank-1 group {id, -id}.
double orbit_dist1(double x, double y) {
  return std::min(std::abs(x - y), std::abs(x + y));
}

struct Triple {
  double x, y, z;
};

}  // namespace

HolderReport holder_bound_check(const Dunkl1D& eval,
                                const std::vector<double>& ts, int triples,
                                Rng rng) {
  HolderReport rep;
  RadialBump bump;
  BumpTransform phi(eval, [&](double u) { return bump(u); });
  const double s_star = phi.support_cutoff(1e-13);
  const bool classical = eval.multiplicity() == 0.0;

  for (double t : ts) {
    // Samples first, then the xi grid sized to the farthest points.
    Rng tr = rng.fork("holder/t" + std::to_string(t));
    std::vector<Triple> samples;
    samples.reserve(static_cast<std::size_t>(triples));
    const double X = 2.5 * t + 0.5;
    for (int i = 0; i < triples; ++i) {
      Triple s;
      s.x = tr.uniform(-X, X);
      if (i % 2 == 0) {
        // structured: sweep the translation argument, tiny differences
        const double v = -2.2 + 4.4 * (i / 2 % 97) / 96.0;
        s.y = s.x + t * v;
        const double delta = t * std::pow(10.0, tr.uniform(-4.0, -0.5));
        s.z = s.y + (i % 4 == 0 ? delta : -delta);
      } else {
        s.y = s.x + tr.uniform(-3.0 * t, 3.0 * t);
        s.z = s.y + tr.uniform(-0.9, 0.9) * t;
      }
      if (std::abs(s.y - s.z) >= t) s.z = s.y + 0.5 * t;
      samples.push_back(s);
    }

    double reach = 1.0;
    for (const auto& s : samples)
      reach = std::max({reach, std::abs(s.x) + std::abs(s.y),
                        std::abs(s.x) + std::abs(s.z)});
    const double xi_max = s_star / t;
    XiGrid grid = make_xi_grid(xi_max, reach);
    const std::size_t n = grid.xi.size();
    eval.ensure_imag_range(xi_max * (reach + 1.0) + 2.0);

    std::vector<double> g(n);
    for (std::size_t j = 0; j < n; ++j)
      g[j] = 2.0 * phi.value(t * grid.xi[j]) * eval.weight(grid.xi[j]) *
             grid.h / eval.ck();

    auto phi_t = [&](double a, double b, std::vector<double>& za,
                     std::vector<double>& aa, std::vector<double>& ba,
                     std::vector<double>& zb, std::vector<double>& ab,
                     std::vector<double>& bb) {
      za.resize(n); aa.resize(n); ba.resize(n);
      zb.resize(n); ab.resize(n); bb.resize(n);
      for (std::size_t j = 0; j < n; ++j) {
        za[j] = grid.xi[j] * a;
        zb[j] = grid.xi[j] * b;
      }
      eval.profile_A_batch(za.data(), aa.data(), n);
      eval.profile_B_batch(za.data(), ba.data(), n);
      eval.profile_A_batch(zb.data(), ab.data(), n);
      eval.profile_B_batch(zb.data(), bb.data(), n);
      return simd::pair_dot(aa.data(), ba.data(), ab.data(), bb.data(),
                            g.data(), n);
    };

    std::vector<double> ratios(samples.size(), -1.0);
    std::vector<double> classical_ratios(samples.size(), -1.0);
    std::vector<double> vanish(samples.size(), -1.0);

    parallel_for(samples.size(), [&](std::size_t i) {
      thread_local std::vector<double> za, aa, ba, zb, ab, bb;
      const Triple& s = samples[i];
      const double d = orbit_dist1(s.x, s.y);
      const double pxy = phi_t(s.x, s.y, za, aa, ba, zb, ab, bb);
      if (d > 2.0 * t) {
        const double pxz = phi_t(s.x, s.z, za, aa, ba, zb, ab, bb);
        vanish[i] = std::max(std::abs(pxy), std::abs(pxz));
        return;
      }
      const double pxz = phi_t(s.x, s.z, za, aa, ba, zb, ab, bb);
      const double dyz = std::abs(s.y - s.z);
      if (dyz <= 0) return;
      const double wmax =
          std::max(eval.ball_mass(s.x, t), eval.ball_mass(s.y, t));
      ratios[i] = std::abs(pxy - pxz) * t * wmax / dyz;
      if (classical) {
        const double c1 = bump((s.y - s.x) / t) / t;
        const double c2 = bump((s.z - s.x) / t) / t;
        classical_ratios[i] = std::abs(c1 - c2) * t * wmax / dyz;
      }
    });

    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (vanish[i] >= 0) {
        rep.max_vanishing = std::max(rep.max_vanishing, vanish[i]);
        ++rep.vanishing_checked;
      }
      if (ratios[i] >= 0) {
        rep.sup_ratio = std::max(rep.sup_ratio, ratios[i]);
        if (i < samples.size() / 2)
          rep.sup_ratio_half = std::max(rep.sup_ratio_half, ratios[i]);
        ++rep.admissible;
      }
      if (classical_ratios[i] >= 0)
        rep.classical_sup = std::max(rep.classical_sup, classical_ratios[i]);
    }
  }
  rep.drift = (rep.sup_ratio - rep.sup_ratio_half) /
              std::max(rep.sup_ratio_half, 1e-300);
  return rep;
}

HeatBoundReport heat_bound_scan(const Dunkl1D& eval,
                                const std::vector<double>& ts, int samples,
                                Rng rng, int refine) {
  HeatBoundReport rep;

  auto scan = [&](int count, Rng r, double* c_out) -> double {
    // Gather (d^2/t, ratio0); fit the decay rate on the tail half.
    std::vector<double> us, lr;
    double c_fit = 0.125;
    std::vector<std::array<double, 3>> pts;  // t, x, y
    const double L = 3.0;
    const int per_t = count / static_cast<int>(ts.size());
    for (double t : ts) {
      const int grid = std::max(2, static_cast<int>(std::sqrt(per_t / 2)));
      for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
          const double x = -L + 2.0 * L * i / (grid - 1.0);
          const double y = -L + 2.0 * L * j / (grid - 1.0);
          pts.push_back({t, x, y});
        }
      for (int i = 0; i < per_t / 2; ++i)
        pts.push_back({t, r.uniform(-L, L), r.uniform(-L, L)});
    }
    std::vector<double> ratio0(pts.size());
    std::vector<double> u(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
      const auto [t, x, y] = pts[i];
      const double h = eval.heat_kernel(t, x, y);
      const double st = std::sqrt(t);
      const double wmax = std::max(eval.ball_mass(x, st), eval.ball_mass(y, st));
      const double shape = std::pow(1.0 + std::abs(x - y) / st, 2.0);
      ratio0[i] = h * shape * wmax;
      const double d = orbit_dist1(x, y);
      u[i] = d * d / t;
    });
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (ratio0[i] > 1e-280 && u[i] > 1.0) {
        us.push_back(u[i]);
        lr.push_back(-std::log(ratio0[i]));
      }
    }
    if (us.size() >= 8) {
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (std::size_t i = 0; i < us.size(); ++i) {
        sx += us[i];
        sy += lr[i];
        sxx += us[i] * us[i];
        sxy += us[i] * lr[i];
      }
      const double nn = static_cast<double>(us.size());
      const double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
      // Half the measured decay keeps the exponential-weighted sup finite
      // and insensitive to sampling.
      c_fit = std::clamp(0.5 * slope, 0.02, 0.45);
    }
    double sup = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
      sup = std::max(sup, ratio0[i] * std::exp(c_fit * u[i]));
    *c_out = c_fit;
    return sup;
  };

  double c1 = 0, c2 = 0;
  rep.sup_ratio = scan(samples, rng.fork("heat/base"), &c1);
  rep.sup_refined = scan(samples * refine, rng.fork("heat/refined"), &c2);
  rep.c_fit = c1;
  rep.samples = samples * (1 + refine);
  rep.drift = std::abs(rep.sup_refined - rep.sup_ratio) /
              std::max(rep.sup_ratio, 1e-300);
  return rep;
}

std::complex<double> product_kernel_imag(
    const std::vector<const Dunkl1D*>& axes, const Point& x, const Point& eta) {
  std::complex<double> p(1.0, 0.0);
  for (std::size_t j = 0; j < axes.size(); ++j)
    p *= axes[j]->kernel_imag(x[static_cast<int>(j)], eta[static_cast<int>(j)]);
  return p;
}

}  // namespace dunklab
