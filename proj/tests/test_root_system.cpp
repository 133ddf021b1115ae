#include "dunklab/root_system.hpp"

#include <cmath>

#include "doctest.h"
#include "dunklab/rng.hpp"

using namespace dunklab;

TEST_CASE("a1_power root systems") {
  auto s1 = make_a1_power(1, {1.0});
  CHECK(s1.roots().roots.size() == 2);
  CHECK(s1.roots().roots[0][0] == doctest::Approx(std::sqrt(2.0)));
  CHECK(s1.roots().roots[1][0] == doctest::Approx(-std::sqrt(2.0)));
  CHECK(s1.group().order() == 2);

  auto s2 = make_a1_power(2, {1.0, 1.0});
  CHECK(s2.roots().roots.size() == 4);
  CHECK(s2.group().order() == 4);  // sign-flip group Z_2^2
  CHECK(s2.axis_product());
}

TEST_CASE("a2 system: closure and group order") {
  auto a2 = make_a2(0.7);
  CHECK(a2.roots().roots.size() == 6);
  for (const auto& r : a2.roots().roots)
    CHECK(r.squaredNorm() == doctest::Approx(2.0));
  CHECK(a2.group().order() == 6);
  CHECK_FALSE(a2.axis_product());
}

TEST_CASE("dihedral orbits and group sizes") {
  auto i24 = make_dihedral(4, 0.5, 1.5);
  CHECK(i24.roots().roots.size() == 8);
  CHECK(i24.group().order() == 8);
  auto i25 = make_dihedral(5, 0.3, 0.3);
  CHECK(i25.group().order() == 10);
}

TEST_CASE("reflection examples and involution") {
  const double s = std::sqrt(2.0);
  Point a1 = point1(s);
  CHECK(reflect(a1, point1(3.0))[0] == doctest::Approx(-3.0));

  Point a = make_point({s, 0.0});
  Point x = make_point({1.0, 2.0});
  Point rx = reflect(a, x);
  CHECK(rx[0] == doctest::Approx(-1.0));
  CHECK(rx[1] == doctest::Approx(2.0));

  // fixed hyperplane
  Point perp = make_point({0.0, 5.0});
  Point rp = reflect(a, perp);
  CHECK((rp - perp).norm() < 1e-14);

  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    Point y = make_point({rng.uniform(-5, 5), rng.uniform(-5, 5)});
    Point roots2 = make_point({rng.uniform(-1, 1), rng.uniform(-1, 1)});
    if (roots2.norm() < 0.1) continue;
    Point twice = reflect(roots2, reflect(roots2, y));
    CHECK((twice - y).lpNorm<Eigen::Infinity>() < 1e-12);
  }
}

TEST_CASE("group closure under products") {
  auto a2 = make_a2(1.0);
  const auto& els = a2.group().elements;
  for (const auto& g : els)
    for (const auto& h : els) {
      SmallMatrix p = g * h;
      bool found = false;
      for (const auto& e : els)
        if ((e - p).lpNorm<Eigen::Infinity>() < 1e-10) found = true;
      CHECK(found);
    }
}

TEST_CASE("weight values and invariance") {
  auto s1 = make_a1_power(1, {1.0});
  CHECK(s1.weight(point1(2.0)) == doctest::Approx(8.0));  // |2sqrt2|*|-2sqrt2|

  auto s2 = make_a1_power(2, {1.0, 1.0});
  CHECK(s2.weight(make_point({1.0, 2.0})) == doctest::Approx(16.0));
  CHECK(s2.weight(make_point({0.0, 2.0})) == 0.0);  // on a hyperplane

  Rng rng(11);
  auto a2 = make_a2(0.8);
  for (int t = 0; t < 100; ++t) {
    Point x = make_point({rng.uniform(-3, 3), rng.uniform(-3, 3)});
    const double w = a2.weight(x);
    for (const auto& g : a2.group().elements) {
      const double wg = a2.weight(g * x);
      CHECK(std::abs(wg - w) <= 1e-10 * (1.0 + w));
    }
  }
}

TEST_CASE("homogeneous dimension") {
  CHECK(make_a1_power(1, {1.0}).homogeneous_dim() == doctest::Approx(3.0));
  CHECK(make_a1_power(2, {1.0, 1.0}).homogeneous_dim() == doctest::Approx(6.0));
  auto k0 = make_a1_power(2, {0.0, 0.0});
  CHECK(k0.homogeneous_dim() == doctest::Approx(2.0));
  CHECK(k0.weight(make_point({0.3, -0.4})) == doctest::Approx(1.0));
}

TEST_CASE("orbit distance") {
  auto s2 = make_a1_power(2, {1.0, 1.0});
  Point x = make_point({1.0, 2.0});
  Point y = make_point({-1.0, 2.0});
  CHECK(s2.orbit_distance(x, y) == doctest::Approx(0.0));
  CHECK(s2.orbit_distance(make_point({1.0, 0.0}), make_point({2.0, 0.0})) ==
        doctest::Approx(1.0));

  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    Point u = make_point({rng.uniform(-4, 4), rng.uniform(-4, 4)});
    Point v = make_point({rng.uniform(-4, 4), rng.uniform(-4, 4)});
    const double d = s2.orbit_distance(u, v);
    CHECK(d <= (u - v).norm() + 1e-14);
    CHECK(d == doctest::Approx(s2.orbit_distance(v, u)));
  }
}

TEST_CASE("invalid multiplicity rejected") {
  CHECK_THROWS_AS(make_a1_power(1, {-0.5}), Error);
  // non-G-invariant k on A2 (single orbit) must be rejected
  auto a2 = make_a2(1.0);
  std::vector<double> bad(a2.roots().roots.size(), 1.0);
  bad[0] = 2.0;
  RootSystem R = a2.roots();
  CHECK_THROWS_AS(DunklSystem(R, bad), Error);
}

TEST_CASE("group cap detects runaway closure") {
  auto a2 = make_a2(0.0);
  RootSystem R = a2.roots();
  CHECK_THROWS_AS(generate_group(R, 3), Error);
}
