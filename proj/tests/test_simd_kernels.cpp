#include "dunklab/simd/kernels.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "dunklab/rng.hpp"

using namespace dunklab;

namespace {

struct Arrays {
  std::vector<double> a, b, c, d, g;
};

Arrays random_arrays(std::size_t n, uint64_t seed) {
  Rng rng(seed);
  Arrays out;
  for (std::size_t i = 0; i < n; ++i) {
    out.a.push_back(rng.uniform(-1, 1));
    out.b.push_back(rng.uniform(-1, 1));
    out.c.push_back(rng.uniform(-1, 1));
    out.d.push_back(rng.uniform(-1, 1));
    out.g.push_back(rng.uniform(-1, 1));
  }
  return out;
}

}  // namespace

TEST_CASE("backend dispatch responds to overrides") {
  simd::set_backend(simd::Backend::Scalar);
  CHECK(simd::active_backend() == simd::Backend::Scalar);
  if (simd::avx2_available()) {
    simd::set_backend(simd::Backend::Avx2);
    CHECK(simd::active_backend() == simd::Backend::Avx2);
  }
  simd::reset_backend();
}

TEST_CASE("scalar/AVX2 equivalence on all kernels") {
  if (!simd::avx2_available()) {
    MESSAGE("AVX2 not available; scalar-only run");
    return;
  }
  for (std::size_t n : {0UL, 1UL, 3UL, 4UL, 17UL, 1024UL, 4097UL}) {
    Arrays ar = random_arrays(n, 42 + n);
    simd::set_backend(simd::Backend::Scalar);
    const double dot_s = simd::dot(ar.a.data(), ar.b.data(), n);
    const double dot3_s = simd::dot3(ar.a.data(), ar.b.data(), ar.c.data(), n);
    const double pair_s = simd::pair_dot(ar.a.data(), ar.b.data(), ar.c.data(),
                                         ar.d.data(), ar.g.data(), n);
    simd::set_backend(simd::Backend::Avx2);
    const double dot_v = simd::dot(ar.a.data(), ar.b.data(), n);
    const double dot3_v = simd::dot3(ar.a.data(), ar.b.data(), ar.c.data(), n);
    const double pair_v = simd::pair_dot(ar.a.data(), ar.b.data(), ar.c.data(),
                                         ar.d.data(), ar.g.data(), n);
    simd::reset_backend();

    const double scale = 1.0 + static_cast<double>(n);
    CHECK(std::abs(dot_s - dot_v) <= 1e-13 * scale);
    CHECK(std::abs(dot3_s - dot3_v) <= 1e-13 * scale);
    CHECK(std::abs(pair_s - pair_v) <= 1e-13 * scale);
  }
}

TEST_CASE("cubic table evaluation: both backends vs direct polynomial") {
  // Table for f(z) = sin(z) on [0, 8] via per-cell cubics from exact values
  // and derivatives.
  const double dx = 0.05;
  const std::size_t ncells = static_cast<std::size_t>(8.0 / dx);
  std::vector<double> c0(ncells), c1(ncells), c2(ncells), c3(ncells);
  for (std::size_t i = 0; i < ncells; ++i) {
    const double z0 = dx * static_cast<double>(i);
    const double v0 = std::sin(z0), v1 = std::sin(z0 + dx);
    const double d0 = std::cos(z0) * dx, d1 = std::cos(z0 + dx) * dx;
    c0[i] = v0;
    c1[i] = d0;
    c2[i] = 3 * (v1 - v0) - 2 * d0 - d1;
    c3[i] = 2 * (v0 - v1) + d0 + d1;
  }

  Rng rng(1);
  std::vector<double> z, out_s, out_v;
  for (int i = 0; i < 999; ++i) z.push_back(rng.uniform(0, 8));
  z.push_back(0.0);
  z.push_back(8.0);  // clamped edge
  out_s.resize(z.size());
  out_v.resize(z.size());

  simd::set_backend(simd::Backend::Scalar);
  simd::cubic_eval(c0.data(), c1.data(), c2.data(), c3.data(), ncells, 1.0 / dx,
                   z.data(), out_s.data(), z.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    CHECK(out_s[i] == doctest::Approx(std::sin(z[i])).epsilon(1e-6));

  if (simd::avx2_available()) {
    simd::set_backend(simd::Backend::Avx2);
    simd::cubic_eval(c0.data(), c1.data(), c2.data(), c3.data(), ncells,
                     1.0 / dx, z.data(), out_v.data(), z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
      CHECK(std::abs(out_s[i] - out_v[i]) <= 1e-14);
  }
  simd::reset_backend();
}
