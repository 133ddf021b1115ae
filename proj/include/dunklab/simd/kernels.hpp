#pragma once

#include <cstddef>
#include <string>

namespace dunklab::simd {

enum class Backend { Scalar, Avx2 };

// Active backend.  Resolved on first use: AVX2+FMA when the CPU has them,
// scalar otherwise.  DUNKLAB_SIMD=scalar|avx2|auto overrides, as does
// set_backend (used by the equivalence tests).
Backend active_backend();
void set_backend(Backend b);
void reset_backend();  // back to auto detection
std::string backend_name(Backend b);
bool avx2_available();

// sum_i a[i] * b[i]
double dot(const double* a, const double* b, std::size_t n);

// sum_i a[i] * b[i] * c[i]
double dot3(const double* a, const double* b, const double* c, std::size_t n);

// sum_i (ax[i]*ay[i] + bx[i]*by[i]) * g[i] — the translation pairing.
double pair_dot(const double* ax, const double* bx, const double* ay,
                const double* by, const double* g, std::size_t n);

// Piecewise-cubic table evaluation on a uniform grid: for each z[i], with
// u = z[i]/dx clamped to [0, ncells), cell = floor(u), t = u - cell,
// out[i] = ((c3*t + c2)*t + c1)*t + c0 of that cell.  Coefficients are laid
// out as four parallel arrays.
void cubic_eval(const double* c0, const double* c1, const double* c2,
                const double* c3, std::size_t ncells, double inv_dx,
                const double* z, double* out, std::size_t n);

namespace detail {
double dot_scalar(const double* a, const double* b, std::size_t n);
double dot3_scalar(const double* a, const double* b, const double* c,
                   std::size_t n);
double pair_dot_scalar(const double* ax, const double* bx, const double* ay,
                       const double* by, const double* g, std::size_t n);
void cubic_eval_scalar(const double* c0, const double* c1, const double* c2,
                       const double* c3, std::size_t ncells, double inv_dx,
                       const double* z, double* out, std::size_t n);

#if defined(__x86_64__) || defined(_M_X64)
double dot_avx2(const double* a, const double* b, std::size_t n);
double dot3_avx2(const double* a, const double* b, const double* c,
                 std::size_t n);
double pair_dot_avx2(const double* ax, const double* bx, const double* ay,
                     const double* by, const double* g, std::size_t n);
void cubic_eval_avx2(const double* c0, const double* c1, const double* c2,
                     const double* c3, std::size_t ncells, double inv_dx,
                     const double* z, double* out, std::size_t n);
#endif
}  // namespace detail

}  // namespace dunklab::simd
