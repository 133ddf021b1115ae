#include "dunklab/kernel1d.hpp"

#include <cmath>
#include <complex>

#include "doctest.h"
#include "dunklab/rng.hpp"

using namespace dunklab;

TEST_CASE("profiles match closed forms at k = 0 and k = 1") {
  Dunkl1D e0(0.0);
  Dunkl1D e1(1.0);
  e0.ensure_imag_range(210.0);
  e1.ensure_imag_range(210.0);
  for (double z : {0.05, 0.3, 1.7, 5.25, 20.4, 57.7, 201.3}) {
    CHECK(e0.profile_A(z) == doctest::Approx(std::cos(z)).epsilon(5e-9));
    CHECK(e0.profile_B(z) == doctest::Approx(std::sin(z)).epsilon(5e-9));
    // k = 1: spherical Bessel j0, j1
    const double j0 = std::sin(z) / z;
    const double j1 = (std::sin(z) - z * std::cos(z)) / (z * z);
    CHECK(e1.profile_A(z) - j0 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(e1.profile_A(z) - j0) < 5e-9);
    CHECK(std::abs(e1.profile_B(z) - j1) < 5e-9);
  }
  // parity
  CHECK(e1.profile_A(-3.0) == e1.profile_A(3.0));
  CHECK(e1.profile_B(-3.0) == -e1.profile_B(3.0));
}

TEST_CASE("kernel basics: E(x,0) = 1, k = 0 exponential, symmetry") {
  Dunkl1D ev(0.7);
  CHECK(ev.kernel_real(2.3, 0.0) == doctest::Approx(1.0));
  CHECK(ev.kernel_real(0.0, 5.0) == doctest::Approx(1.0));

  Dunkl1D e0(0.0);
  for (double x : {-2.0, 0.3, 1.8})
    for (double y : {-1.1, 0.4, 2.0})
      CHECK(e0.kernel_real(x, y) == doctest::Approx(std::exp(x * y)).epsilon(1e-8));

  // k = 1 closed form: e + o with hyperbolic profile
  Dunkl1D e1(1.0);
  for (double z : {0.4, 2.2, 6.0}) {
    const double expect =
        std::sinh(z) / z + (z * std::cosh(z) - std::sinh(z)) / (z * z);
    CHECK(e1.kernel_real(z, 1.0) == doctest::Approx(expect).epsilon(1e-8));
  }

  // symmetry E(x, y) = E(y, x)
  Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    const double x = rng.uniform(-3, 3), y = rng.uniform(-3, 3);
    CHECK(ev.kernel_real(x, y) ==
          doctest::Approx(ev.kernel_real(y, x)).epsilon(1e-10));
  }
}

TEST_CASE("kernel derivative at zero: y / (1 + 2k)") {
  for (double k : {0.0, 0.5, 1.0, 2.0}) {
    Dunkl1D ev(k);
    for (double y : {0.7, -1.9}) {
      const double eps = 1e-4;
      const double d =
          (ev.kernel_real(eps, y) - ev.kernel_real(-eps, y)) / (2 * eps);
      CHECK(d == doctest::Approx(y / (1 + 2 * k)).epsilon(1e-6));
    }
  }
}

TEST_CASE("boundedness |E(i xi, x)| <= 1 and halved-step consistency") {
  for (double k : {0.0, 0.5, 1.0, 2.0}) {
    Dunkl1D ev(k);
    ev.ensure_imag_range(160.0);
    Rng rng(9);
    for (int i = 0; i < 200; ++i) {
      const double z = rng.uniform(0, 150);
      const auto E = ev.kernel_imag(z, 1.0);
      CHECK(std::abs(E) <= 1.0 + 1e-10);
    }
    for (double z : {0.9, 17.3, 93.4}) {
      CHECK(std::abs(ev.profile_A(z) - ev.profile_A_refined(z)) <=
            1e-8 * (1.0 + std::abs(ev.profile_A(z))));
    }
  }
}

TEST_CASE("argument range errors") {
  Dunkl1D ev(1.0);
  CHECK_THROWS_AS(ev.kernel_real(30.0, 30.0), Error);      // e^z overflow range
  CHECK_THROWS_AS(ev.ensure_imag_range(20000.0), Error);   // table cap
}

TEST_CASE("Gaussian is a fixed point of the transform") {
  for (double k : {0.0, 1.0}) {
    Dunkl1D ev(k);
    auto f = SampledFunction1D::sample(
        [](double x) { return std::exp(-0.5 * x * x); }, 1.0 / 64, 1024,
        SampledFunction1D::Parity::Even);
    auto fhat = ev.transform(f);
    double worst = 0;
    for (int i = 0; i < f.size(); ++i)
      worst = std::max(worst,
                       std::abs(fhat.values[static_cast<std::size_t>(i)] -
                                std::exp(-0.5 * f.node(i) * f.node(i))));
    CHECK(worst < 1e-5);
  }
  {
    Dunkl1D ev(0.5);
    auto f = SampledFunction1D::sample(
        [](double x) { return std::exp(-0.5 * x * x); }, 1.0 / 64, 1024,
        SampledFunction1D::Parity::Even);
    auto fhat = ev.transform(f);
    double worst = 0;
    for (int i = 0; i < f.size(); ++i)
      worst = std::max(worst,
                       std::abs(fhat.values[static_cast<std::size_t>(i)] -
                                std::exp(-0.5 * f.node(i) * f.node(i))));
    CHECK(worst < 1e-4);
  }
}

TEST_CASE("k = 0 reduces to the classical cosine transform") {
  Dunkl1D ev(0.0);
  auto f = SampledFunction1D::sample(
      [](double x) { return std::exp(-x * x); }, 1.0 / 64, 1024,
      SampledFunction1D::Parity::Even);
  auto fhat = ev.transform(f);
  // (2 pi)^{-1/2} int cos(xi x) e^{-x^2} dx = e^{-xi^2/4} / sqrt(2)
  for (int i = 0; i < f.size(); i += 97) {
    const double xi = f.node(i);
    CHECK(fhat.values[static_cast<std::size_t>(i)] ==
          doctest::Approx(std::exp(-xi * xi / 4) / std::sqrt(2.0)).epsilon(1e-8));
  }
}

TEST_CASE("Plancherel on the node set") {
  for (double k : {0.0, 0.5, 1.0}) {
    Dunkl1D ev(k);
    auto f = SampledFunction1D::sample(
        [](double x) { return (1 + x * x) * std::exp(-0.5 * x * x); },
        1.0 / 64, 1024, SampledFunction1D::Parity::Even);
    auto fhat = ev.transform(f);
    const double a = ev.l2w_norm(f), b = ev.l2w_norm(fhat);
    CHECK(std::abs(a - b) / a < 1e-4);
  }
  // odd function too
  {
    Dunkl1D ev(1.0);
    auto f = SampledFunction1D::sample(
        [](double x) { return x * std::exp(-0.6 * x * x); }, 1.0 / 64, 1024,
        SampledFunction1D::Parity::Odd);
    auto fhat = ev.transform(f);
    const double a = ev.l2w_norm(f), b = ev.l2w_norm(fhat);
    CHECK(std::abs(a - b) / a < 1e-4);
  }
}

TEST_CASE("transform preconditions") {
  Dunkl1D ev(1.0);
  auto bad = SampledFunction1D::sample([](double) { return 1.0; }, 1.0 / 8, 64,
                                       SampledFunction1D::Parity::Even);
  CHECK_THROWS_AS(ev.transform(bad), Error);
  auto nopar = SampledFunction1D::sample(
      [](double x) { return std::exp(-x * x); }, 1.0 / 8, 64,
      SampledFunction1D::Parity::None);
  CHECK_THROWS_AS(ev.transform(nopar), Error);
}

TEST_CASE("translation: identity at x = 0 and classical shift at k = 0") {
  auto gauss = [](double x) { return std::exp(-x * x); };
  {
    Dunkl1D ev(1.0);
    auto f = SampledFunction1D::sample(gauss, 1.0 / 64, 1024,
                                       SampledFunction1D::Parity::Even);
    auto t0 = ev.translate(f, 0.0);
    double worst = 0;
    for (int i = 0; i < f.size(); ++i)
      worst = std::max(worst, std::abs(t0.values[static_cast<std::size_t>(i)] -
                                       f.values[static_cast<std::size_t>(i)]));
    CHECK(worst < 1e-6);
  }
  {
    Dunkl1D ev(0.0);
    auto f = SampledFunction1D::sample(gauss, 1.0 / 64, 1024,
                                       SampledFunction1D::Parity::Even);
    const double x = 1.25;
    auto tx = ev.translate(f, x);
    double worst = 0;
    for (int i = 0; i < f.size(); ++i) {
      const double y = f.node(i);
      worst = std::max(worst,
                       std::abs(tx.values[static_cast<std::size_t>(i)] -
                                gauss(y - x)));
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("translation of a compact bump: support and realness") {
  Dunkl1D ev(1.0);
  RadialBump bump;
  auto f = SampledFunction1D::sample([&](double x) { return bump(x); },
                                     1.0 / 64, 1024,
                                     SampledFunction1D::Parity::Even);
  const double x = 2.5;
  auto tx = ev.translate(f, x);
  const double peak = f.max_abs();
  for (int i = 0; i < f.size(); ++i) {
    const double y = f.node(i);
    const double d = std::min(std::abs(x - y), std::abs(x + y));
    if (d > 1.0)
      CHECK(std::abs(tx.values[static_cast<std::size_t>(i)]) < 1e-6 * peak);
  }

  // realness: rebuild a few values with the full complex pairing
  auto fhat = ev.transform(f);
  for (int i = 512; i < f.size(); i += 512) {
    const double y = f.node(i);
    std::complex<double> acc(0, 0);
    for (int j = 0; j < f.size(); ++j) {
      const double xi = f.node(j);
      const std::complex<double> Ex = ev.kernel_imag(x, xi);
      const std::complex<double> Ey = std::conj(ev.kernel_imag(y, xi));
      acc += Ex * Ey * fhat.values[static_cast<std::size_t>(j)] *
             ev.weight(xi) * f.h;
    }
    acc /= ev.ck();
    CHECK(std::abs(acc.imag()) < 1e-8);
    CHECK(acc.real() ==
          doctest::Approx(tx.values[static_cast<std::size_t>(i)]).epsilon(1e-6));
  }
}

TEST_CASE("convolution: transform side identity on Gaussians") {
  Dunkl1D ev(0.5);
  auto f = SampledFunction1D::sample([](double x) { return std::exp(-x * x); },
                                     1.0 / 64, 1024,
                                     SampledFunction1D::Parity::Even);
  auto g = SampledFunction1D::sample(
      [](double x) { return std::exp(-0.7 * x * x); }, 1.0 / 64, 1024,
      SampledFunction1D::Parity::Even);
  auto conv = ev.convolve(f, g);
  conv.parity = SampledFunction1D::Parity::Even;
  auto lhs = ev.transform(conv);
  auto fh = ev.transform(f);
  auto gh = ev.transform(g);
  double worst = 0;
  for (int i = 0; i < f.size(); ++i)
    worst = std::max(worst,
                     std::abs(lhs.values[static_cast<std::size_t>(i)] -
                              ev.ck() * fh.values[static_cast<std::size_t>(i)] *
                                  gh.values[static_cast<std::size_t>(i)]));
  CHECK(worst < 1e-5);
}

TEST_CASE("heat kernel: classical limit, explicit value, basic laws") {
  Dunkl1D e0(0.0);
  for (double t : {0.25, 1.0}) {
    for (double x : {-1.0, 0.5}) {
      for (double y : {0.0, 1.5}) {
        const double classical =
            std::exp(-(x - y) * (x - y) / (4 * t)) / std::sqrt(4 * M_PI * t);
        CHECK(e0.heat_kernel(t, x, y) ==
              doctest::Approx(classical).epsilon(1e-5));
      }
    }
  }

  for (double k : {0.0, 1.0}) {
    Dunkl1D ev(k);
    const double hom = 1 + 2 * k;
    for (double t : {0.25, 1.0, 4.0}) {
      // x = y = 0 explicit value
      CHECK(ev.heat_kernel(t, 0.0, 0.0) ==
            doctest::Approx(std::pow(2 * t, -hom / 2) / ev.ck()).epsilon(1e-6));
      for (double x : {0.0, 1.0, 3.0}) {
        CHECK(ev.heat_normalization(t, x) == doctest::Approx(1.0).epsilon(1e-3));
        for (double y : {-2.0, 0.4}) {
          const double hxy = ev.heat_kernel(t, x, y);
          CHECK(hxy > 0.0);
          CHECK(hxy == doctest::Approx(ev.heat_kernel(t, y, x)).epsilon(1e-6));
        }
      }
    }
    CHECK(ev.heat_semigroup_error(0.5, 0.5, 0.7, -0.2) < 1e-3);
    CHECK(ev.heat_semigroup_error(0.25, 1.0, 0.0, 1.0) < 1e-3);
  }
  CHECK_THROWS_AS(e0.heat_kernel(5e-5, 0.0, 0.0), Error);
}

TEST_CASE("mollifier deviation") {
  for (double k : {0.0, 1.0}) {
    Dunkl1D ev(k);
    RadialBump bump;
    BumpTransform psi(ev, [&](double u) { return bump(u); });
    CHECK(mollifier_deviation(psi, 0.0) == doctest::Approx(0.0));
    auto rep = mollifier_deviation_scan(psi);
    CHECK(rep.c_hat > 0.0);
    CHECK(rep.c_hat < 10.0);
    CHECK(rep.global_max <= 2.0 + 1e-9);
    // deviation <= C |xi| on the fitted range
    for (double xi : {1e-3, 0.03, 0.3, 1.0})
      CHECK(mollifier_deviation(psi, xi) <= rep.c_hat * xi * (1 + 1e-9));
  }
}

TEST_CASE("product kernel tensorizes and stays bounded") {
  Dunkl1D a(0.5), b(1.0);
  std::vector<const Dunkl1D*> axes{&a, &b};
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    Point x = make_point({rng.uniform(-2, 2), rng.uniform(-2, 2)});
    Point eta = make_point({rng.uniform(-2, 2), rng.uniform(-2, 2)});
    const auto E = product_kernel_imag(axes, x, eta);
    CHECK(std::abs(E) <= 1.0 + 1e-10);
    const auto E1 = a.kernel_imag(x[0], eta[0]);
    const auto E2 = b.kernel_imag(x[1], eta[1]);
    CHECK(std::abs(E - E1 * E2) < 1e-14);
  }
  Point zero = make_point({0.0, 0.0});
  CHECK(product_kernel_imag(axes, zero, zero).real() == doctest::Approx(1.0));
}

TEST_CASE("holder bound check: smoke run at k = 1") {
  Dunkl1D ev(1.0);
  auto rep = holder_bound_check(ev, {1.0}, 600, Rng(77));
  CHECK(rep.admissible > 100);
  CHECK(rep.sup_ratio > 0.0);
  CHECK(std::isfinite(rep.sup_ratio));
  CHECK(rep.vanishing_checked > 10);
  CHECK(rep.max_vanishing < 1e-8);
}

TEST_CASE("holder bound check: k = 0 against the classical oracle") {
  Dunkl1D ev(0.0);
  auto rep = holder_bound_check(ev, {0.5, 1.0}, 1200, Rng(78));
  REQUIRE(rep.classical_sup > 0.0);
  CHECK(std::abs(rep.sup_ratio - rep.classical_sup) / rep.classical_sup < 0.01);
}

TEST_CASE("heat bound scan: finite, stable") {
  Dunkl1D ev(1.0);
  auto rep = heat_bound_scan(ev, {0.25, 1.0}, 200, Rng(5), 2);
  CHECK(rep.c_fit > 0.0);
  CHECK(std::isfinite(rep.sup_ratio));
  CHECK(rep.sup_ratio > 0.0);
  CHECK(rep.drift < 0.25);
}
