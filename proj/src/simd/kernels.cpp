#include "dunklab/simd/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>

namespace dunklab::simd {

namespace detail {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double dot3_scalar(const double* a, const double* b, const double* c,
                   std::size_t n) {
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i] * c[i];
  return s;
}

double pair_dot_scalar(const double* ax, const double* bx, const double* ay,
                       const double* by, const double* g, std::size_t n) {
  double s = 0;
  for (std::size_t i = 0; i < n; ++i)
    s += (ax[i] * ay[i] + bx[i] * by[i]) * g[i];
  return s;
}

void cubic_eval_scalar(const double* c0, const double* c1, const double* c2,
                       const double* c3, std::size_t ncells, double inv_dx,
                       const double* z, double* out, std::size_t n) {
  const double max_u = static_cast<double>(ncells) - 1e-9;
  for (std::size_t i = 0; i < n; ++i) {
    double u = z[i] * inv_dx;
    if (u < 0) u = 0;
    if (u > max_u) u = max_u;
    const std::size_t cell = static_cast<std::size_t>(u);
    const double t = u - static_cast<double>(cell);
    out[i] = ((c3[cell] * t + c2[cell]) * t + c1[cell]) * t + c0[cell];
  }
}

}  // namespace detail

namespace {

enum class Mode : int { Unresolved = -1, Scalar = 0, Avx2 = 1 };

std::atomic<int> g_mode{static_cast<int>(Mode::Unresolved)};

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Mode resolve() {
  const char* env = std::getenv("DUNKLAB_SIMD");
  if (env) {
    const std::string v(env);
    if (v == "scalar") return Mode::Scalar;
    if (v == "avx2") return Mode::Avx2;
  }
  return cpu_has_avx2() ? Mode::Avx2 : Mode::Scalar;
}

Mode mode() {
  int m = g_mode.load(std::memory_order_relaxed);
  if (m == static_cast<int>(Mode::Unresolved)) {
    m = static_cast<int>(resolve());
    g_mode.store(m, std::memory_order_relaxed);
  }
  return static_cast<Mode>(m);
}

}  // namespace

bool avx2_available() { return cpu_has_avx2(); }

Backend active_backend() {
  return mode() == Mode::Avx2 ? Backend::Avx2 : Backend::Scalar;
}

void set_backend(Backend b) {
  g_mode.store(static_cast<int>(b == Backend::Avx2 ? Mode::Avx2 : Mode::Scalar),
               std::memory_order_relaxed);
}

void reset_backend() {
  g_mode.store(static_cast<int>(Mode::Unresolved), std::memory_order_relaxed);
}

std::string backend_name(Backend b) {
  return b == Backend::Avx2 ? "avx2" : "scalar";
}

#if defined(__x86_64__) || defined(_M_X64)
#define DUNKLAB_HAVE_AVX2_TU 1
#else
#define DUNKLAB_HAVE_AVX2_TU 0
#endif

double dot(const double* a, const double* b, std::size_t n) {
#if DUNKLAB_HAVE_AVX2_TU
  if (mode() == Mode::Avx2) return detail::dot_avx2(a, b, n);
#endif
  return detail::dot_scalar(a, b, n);
}

double dot3(const double* a, const double* b, const double* c, std::size_t n) {
#if DUNKLAB_HAVE_AVX2_TU
  if (mode() == Mode::Avx2) return detail::dot3_avx2(a, b, c, n);
#endif
  return detail::dot3_scalar(a, b, c, n);
}

double pair_dot(const double* ax, const double* bx, const double* ay,
                const double* by, const double* g, std::size_t n) {
#if DUNKLAB_HAVE_AVX2_TU
  if (mode() == Mode::Avx2) return detail::pair_dot_avx2(ax, bx, ay, by, g, n);
#endif
  return detail::pair_dot_scalar(ax, bx, ay, by, g, n);
}

void cubic_eval(const double* c0, const double* c1, const double* c2,
                const double* c3, std::size_t ncells, double inv_dx,
                const double* z, double* out, std::size_t n) {
#if DUNKLAB_HAVE_AVX2_TU
  if (mode() == Mode::Avx2) {
    detail::cubic_eval_avx2(c0, c1, c2, c3, ncells, inv_dx, z, out, n);
    return;
  }
#endif
  detail::cubic_eval_scalar(c0, c1, c2, c3, ncells, inv_dx, z, out, n);
}

}  // namespace dunklab::simd
