// AVX2 + FMA variants.  This translation unit is compiled with
// -mavx2 -mfma; nothing here runs unless the dispatcher selected AVX2.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstddef>

namespace dunklab::simd::detail {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

}  // namespace

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4),
                           acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double dot3_avx2(const double* a, const double* b, const double* c,
                 std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ab = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_fmadd_pd(ab, _mm256_loadu_pd(c + i), acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i] * b[i] * c[i];
  return s;
}

double pair_dot_avx2(const double* ax, const double* bx, const double* ay,
                     const double* by, const double* g, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod =
        _mm256_fmadd_pd(_mm256_loadu_pd(ax + i), _mm256_loadu_pd(ay + i),
                        _mm256_mul_pd(_mm256_loadu_pd(bx + i),
                                      _mm256_loadu_pd(by + i)));
    acc = _mm256_fmadd_pd(prod, _mm256_loadu_pd(g + i), acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += (ax[i] * ay[i] + bx[i] * by[i]) * g[i];
  return s;
}

void cubic_eval_avx2(const double* c0, const double* c1, const double* c2,
                     const double* c3, std::size_t ncells, double inv_dx,
                     const double* z, double* out, std::size_t n) {
  const __m256d vinv = _mm256_set1_pd(inv_dx);
  const __m256d vzero = _mm256_setzero_pd();
  const __m256d vmax = _mm256_set1_pd(static_cast<double>(ncells) - 1e-9);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d u = _mm256_mul_pd(_mm256_loadu_pd(z + i), vinv);
    u = _mm256_min_pd(_mm256_max_pd(u, vzero), vmax);
    const __m256d cell = _mm256_floor_pd(u);
    const __m256d t = _mm256_sub_pd(u, cell);
    const __m128i idx = _mm256_cvttpd_epi32(cell);
    const __m256d k0 = _mm256_i32gather_pd(c0, idx, 8);
    const __m256d k1 = _mm256_i32gather_pd(c1, idx, 8);
    const __m256d k2 = _mm256_i32gather_pd(c2, idx, 8);
    const __m256d k3 = _mm256_i32gather_pd(c3, idx, 8);
    __m256d r = _mm256_fmadd_pd(k3, t, k2);
    r = _mm256_fmadd_pd(r, t, k1);
    r = _mm256_fmadd_pd(r, t, k0);
    _mm256_storeu_pd(out + i, r);
  }
  const double max_u = static_cast<double>(ncells) - 1e-9;
  for (; i < n; ++i) {
    double u = z[i] * inv_dx;
    if (u < 0) u = 0;
    if (u > max_u) u = max_u;
    const std::size_t cell = static_cast<std::size_t>(u);
    const double t = u - static_cast<double>(cell);
    out[i] = ((c3[cell] * t + c2[cell]) * t + c1[cell]) * t + c0[cell];
  }
}

}  // namespace dunklab::simd::detail

#endif  // x86_64
