#include "dunklab/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace dunklab {

namespace {

// Rank-1 closed form for amp * |y|^a against 2^k |y|^{2k} dy.
double rank1_power_integral(const DunklSystem& S, double amp, double a,
                            double lo, double hi) {
  const double k = S.axis_k()[0];
  return amp * std::pow(2.0, k) * axis_moment(0, a + 2.0 * k, lo, hi);
}

bool integer_like(double q) { return std::abs(q - std::round(q)) < 1e-12; }

}  // namespace

double potential_ball_integral_pow(const WeightedMeasure& wm, const Potential& V,
                                   double q, const Point& center, double r) {
  const DunklSystem& S = wm.system();

  // Single radial power: V^q is again a radial power.
  if (V.components().size() == 1 &&
      V.components()[0].kind == Potential::Component::Kind::RadialPower) {
    const auto& c = V.components()[0];
    const double amp = std::pow(c.value, q);
    const double a = c.exponent * q;
    if (S.dim() == 1 && S.axis_product())
      return rank1_power_integral(S, amp, a, center[0] - r, center[0] + r);
    // Radial power in N >= 2: generic quadrature; V^q is continuous
    // (a*q >= 0) and smooth away from the origin.
    const ScalarField f = [&](const Point& x) {
      return amp * std::pow(x.norm(), a);
    };
    return wm.integrate_ball(f, center, r);
  }

  if (auto poly = V.as_polynomial()) {
    if (integer_like(q)) {
      const Poly pq = poly->pow(static_cast<int>(std::llround(q)));
      return wm.integrate_ball(pq, center, r);
    }
  }

  const ScalarField f = [&](const Point& x) { return std::pow(V(x), q); };
  return wm.integrate_ball(f, center, r);
}

double potential_ball_integral(const WeightedMeasure& wm, const Potential& V,
                               const Point& center, double r) {
  return potential_ball_integral_pow(wm, V, 1.0, center, r);
}

double potential_cube_integral(const WeightedMeasure& wm, const Potential& V,
                               const Box& K) {
  const DunklSystem& S = wm.system();
  if (V.components().size() == 1 &&
      V.components()[0].kind == Potential::Component::Kind::RadialPower &&
      S.dim() == 1 && S.axis_product()) {
    const auto& c = V.components()[0];
    return rank1_power_integral(S, c.value, c.exponent, K.lo[0], K.hi[0]);
  }
  if (auto poly = V.as_polynomial()) return wm.integrate_cube(*poly, K);
  const ScalarField f = [&](const Point& x) { return V(x); };
  return wm.integrate_cube(f, K);
}

AuxFunction::AuxFunction(const WeightedMeasure& wm, const Potential& V,
                         double bisect_rel_tol)
    : wm_(wm), V_(V), tol_(bisect_rel_tol) {
  if (V.dim() != wm.system().dim())
    throw Error("aux function: potential/system dimension mismatch");
}

double AuxFunction::g(const Point& x, double r) const {
  if (!(r > 0)) throw Error("landscape g: radius must be positive");
  const double num = potential_ball_integral(wm_, V_, x, r);
  const double vol = wm_.ball_volume(x, r);
  return r * r * num / vol;
}

namespace {
std::string point_key(const Point& x) {
  char buf[32];
  std::string key;
  for (int j = 0; j < x.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%lld,", llround(x[j] * 1e9));
    key += buf;
  }
  return key;
}
}  // namespace

double AuxFunction::m(const Point& x) const {
  const std::string key = point_key(x);
  {
    std::shared_lock lock(memo_mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  const double value = m_uncached(x);
  {
    std::unique_lock lock(memo_mu_);
    memo_.emplace(key, value);
  }
  return value;
}

double AuxFunction::m_uncached(const Point& x) const {
  constexpr double kRMin = 1e-8, kRMax = 1e8;

  // Locate some radius with g <= 1 by geometric shrinking (g -> 0 with r for
  // the supported families), then scan upward for the last admissible radius.
  double r_ok = 1.0;
  double gv = g(x, r_ok);
  while (gv > 1.0) {
    r_ok *= 0.5;
    if (r_ok < kRMin)
      throw Error("degenerate potential at x: no radius with g <= 1");
    gv = g(x, r_ok);
  }

  // The comparability lemma gives only near-monotonicity, so probe on a log
  // grid (8 per decade) until g is safely above 1 before bisecting.
  const double step = std::pow(10.0, 1.0 / 8.0);
  double last_ok = r_ok;
  double first_bad = -1;
  for (double r = r_ok * step; r <= kRMax; r *= step) {
    const double gr = g(x, r);
    if (gr <= 1.0) {
      last_ok = r;
    } else {
      if (first_bad < 0) first_bad = r;
      if (gr > 8.0) break;  // comparability margin: no dip back below 1
    }
  }
  if (first_bad < 0 || last_ok >= kRMax)
    throw Error("degenerate potential at x: g <= 1 up to the radius cap");
  double lo = last_ok;
  double hi = (first_bad > last_ok) ? last_ok * step : first_bad;

  while (hi / lo > 1.0 + 2.0 * tol_) {
    const double mid = std::sqrt(lo * hi);
    if (g(x, mid) <= 1.0)
      lo = mid;
    else
      hi = mid;
  }
  const double r_star = std::sqrt(lo * hi);
  return 1.0 / r_star;
}

std::size_t AuxFunction::memo_size() const {
  std::shared_lock lock(memo_mu_);
  return memo_.size();
}

void AuxFunction::clear_memo() const {
  std::unique_lock lock(memo_mu_);
  memo_.clear();
}

SublevelBox sublevel_box(const AuxFunction& aux, double lambda) {
  if (!(lambda > 0)) throw Error("sublevel box: lambda must be positive");
  const Potential& V = aux.potential();
  const int N = V.dim();
  const double threshold = std::sqrt(lambda);

  if (V.is_constant()) {
    // m is identically sqrt(c).
    const double mval = std::sqrt(V.constant_value());
    if (mval > threshold) return {SublevelBox::Kind::Empty, {}};
    return {SublevelBox::Kind::Unbounded, {}};
  }
  if (!V.coercive()) return {SublevelBox::Kind::Unbounded, {}};

  // Expand until m clears 2*sqrt(lambda) at all sampled boundary points; the
  // growth lower bound for m then keeps E_lambda inside.
  const int kFaceGrid = 5;
  for (double R = 1.0; R <= 1e6; R *= 1.5) {
    double min_m = std::numeric_limits<double>::infinity();
    for (int axis = 0; axis < N && min_m > 2.0 * threshold; ++axis) {
      for (int side = -1; side <= 1 && min_m > 2.0 * threshold; side += 2) {
        // Sample a grid on the face x_axis = side * R.
        const int per_axis = (N == 1) ? 1 : kFaceGrid;
        int total = 1;
        for (int j = 0; j < N - 1; ++j) total *= per_axis;
        for (int t = 0; t < total; ++t) {
          Point p(N);
          p[axis] = side * R;
          int rest = t;
          for (int j = 0, slot = 0; j < N; ++j) {
            if (j == axis) continue;
            const int idx = rest % per_axis;
            rest /= per_axis;
            p[j] = (per_axis == 1)
                       ? 0.0
                       : -R + 2.0 * R * idx / (per_axis - 1);
            (void)slot;
          }
          min_m = std::min(min_m, aux.m(p));
          if (min_m <= 2.0 * threshold) break;
        }
      }
    }
    if (min_m > 2.0 * threshold)
      return {SublevelBox::Kind::Bounded, symmetric_box(N, R)};
  }
  return {SublevelBox::Kind::Unbounded, {}};
}

std::int64_t grid_count(const AuxFunction& aux, double lambda,
                        double side_scale) {
  const SublevelBox sb = sublevel_box(aux, lambda);
  if (sb.kind == SublevelBox::Kind::Empty) return 0;
  if (sb.kind == SublevelBox::Kind::Unbounded)
    throw Error("grid count: non-coercive potential (E_lambda unbounded)");

  const int N = aux.potential().dim();
  const double a = side_scale / std::sqrt(lambda);
  const double threshold = std::sqrt(lambda);

  std::vector<std::int64_t> lo_idx(static_cast<std::size_t>(N));
  std::vector<std::int64_t> hi_idx(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j) {
    lo_idx[static_cast<std::size_t>(j)] =
        static_cast<std::int64_t>(std::floor(sb.box.lo[j] / a));
    hi_idx[static_cast<std::size_t>(j)] =
        static_cast<std::int64_t>(std::ceil(sb.box.hi[j] / a)) - 1;
  }

  std::int64_t count = 0;
  std::vector<std::int64_t> idx = lo_idx;
  const double band = 0.05 * threshold;
  for (;;) {
    // Cube [a*n, a*(n+1)]^N: probe center and corners.
    double vmin = std::numeric_limits<double>::infinity();
    const int corners = 1 << N;
    for (int c = 0; c <= corners; ++c) {
      Point p(N);
      for (int j = 0; j < N; ++j) {
        const double base = a * static_cast<double>(idx[static_cast<std::size_t>(j)]);
        if (c == corners)
          p[j] = base + 0.5 * a;  // center
        else
          p[j] = base + ((c >> j) & 1 ? a : 0.0);
      }
      vmin = std::min(vmin, aux.m(p));
      if (vmin <= threshold - band) break;  // clearly inside
    }

    bool member = vmin <= threshold;
    if (std::abs(vmin - threshold) <= band) {
      // Near the threshold: refine one level (the 3^N half-grid lattice).
      int pts = 1;
      for (int j = 0; j < N; ++j) pts *= 3;
      for (int t = 0; t < pts && !(member && vmin < threshold - band); ++t) {
        Point p(N);
        int rest = t;
        for (int j = 0; j < N; ++j) {
          const int o = rest % 3;
          rest /= 3;
          p[j] = a * (static_cast<double>(idx[static_cast<std::size_t>(j)]) +
                      0.5 * o);
        }
        const double mv = aux.m(p);
        vmin = std::min(vmin, mv);
        if (mv <= threshold) member = true;
      }
    }
    if (member) ++count;

    int axis = 0;
    while (axis < N) {
      if (++idx[static_cast<std::size_t>(axis)] <=
          hi_idx[static_cast<std::size_t>(axis)])
        break;
      idx[static_cast<std::size_t>(axis)] = lo_idx[static_cast<std::size_t>(axis)];
      ++axis;
    }
    if (axis == N) break;
  }
  return count;
}

namespace {

double rh_ratio(const WeightedMeasure& wm, const Potential& V, double q,
                const Point& center, double r) {
  const double vol = wm.ball_volume(center, r);
  const double avg_q = potential_ball_integral_pow(wm, V, q, center, r) / vol;
  const double avg = potential_ball_integral(wm, V, center, r) / vol;
  if (avg <= 0) return 1.0;  // V vanishes on the ball: both sides zero
  return std::pow(avg_q, 1.0 / q) / avg;
}

double rh_sup(const WeightedMeasure& wm, const Potential& V, double q,
              int samples, const Box& region, Rng& rng) {
  const int N = V.dim();
  double sup = 0;
  double r_max = 0;
  for (int j = 0; j < N; ++j) r_max = std::max(r_max, region.hi[j]);

  // Canonical balls first: radii on a log grid, centers at fixed multiples
  // of the radius.  For homogeneous potentials the worst ratio appears on
  // such rays.
  for (int i = 0; i < 9; ++i) {
    const double r = r_max * std::pow(10.0, -3.0 + 3.0 * i / 8.0);
    for (double c : {0.0, 0.25, 0.5, 1.0, 2.0}) {
      Point p = Point::Zero(N);
      p[0] = c * r;
      sup = std::max(sup, rh_ratio(wm, V, q, p, r));
    }
  }
  for (int s = 0; s < samples; ++s) {
    Point p(N);
    for (int j = 0; j < N; ++j) p[j] = rng.uniform(region.lo[j], region.hi[j]);
    const double r = rng.log_uniform(1e-2, r_max);
    sup = std::max(sup, rh_ratio(wm, V, q, p, r));
  }
  return sup;
}

}  // namespace

RhReport rh_verify(const WeightedMeasure& wm, const Potential& V, double q,
                   int samples, const Box& region, Rng rng) {
  const double hom = wm.system().homogeneous_dim();
  if (!(q > std::max(1.0, hom / 2.0)))
    throw Error("rh_verify: need q > max(1, N_hom/2)");

  Rng r1 = rng.fork("rh/first");
  Rng r2 = rng.fork("rh/second");
  const double first = rh_sup(wm, V, q, samples, region, r1);
  // The doubled pass re-draws everything: the sup must have stabilized.
  double doubled = rh_sup(wm, V, q, 2 * samples, region, r2);
  doubled = std::max(doubled, first);

  RhReport rep;
  rep.first_pass = first;
  rep.c_rh = doubled;
  rep.drift = (doubled - first) / std::max(first, 1e-300);
  rep.samples = 3 * samples;
  if (rep.drift > 0.05)
    throw Error("rh_verify: not verifiably RH^q on tested range (estimate grew " +
                std::to_string(rep.drift * 100) + "% on refinement)");
  return rep;
}

MGrowthReport check_m_growth(const AuxFunction& aux, int pairs,
                             const Box& region, Rng rng) {
  const int N = aux.potential().dim();
  std::vector<std::pair<Point, Point>> sampled;
  sampled.reserve(static_cast<std::size_t>(pairs));
  for (int i = 0; i < pairs; ++i) {
    Point x(N), y(N);
    for (int j = 0; j < N; ++j) {
      x[j] = rng.uniform(region.lo[j], region.hi[j]);
      // Half the pairs stay close to x, the rest roam the region.
      if (i % 2 == 0) {
        y[j] = x[j] + rng.uniform(-1.0, 1.0);
      } else {
        y[j] = rng.uniform(region.lo[j], region.hi[j]);
      }
    }
    sampled.emplace_back(x, y);
  }

  MGrowthReport rep;
  rep.pairs = pairs;

  for (const auto& [x, y] : sampled) {
    const double mx = aux.m(x), my = aux.m(y);
    const double d = (x - y).norm();
    if (d < 1.0 / mx)
      rep.c_near = std::max({rep.c_near, my / mx, mx / my});
  }

  // For a kappa grid, the smallest admissible C over the upper and lower
  // bounds; report the kappa minimizing C (ties to the smaller kappa).
  double best_c = std::numeric_limits<double>::infinity();
  double best_kappa = 0;
  for (double kappa = 0.0; kappa <= 4.0 + 1e-9; kappa += 0.1) {
    double c_need = rep.c_near > 0 ? rep.c_near : 1.0;
    for (const auto& [x, y] : sampled) {
      const double mx = aux.m(x), my = aux.m(y);
      const double d = (x - y).norm();
      const double up = std::pow(1.0 + mx * d, kappa);
      c_need = std::max(c_need, my / (mx * up));
      const double down = std::pow(1.0 + mx * d, -kappa / (1.0 + kappa));
      c_need = std::max(c_need, mx * down / my);
    }
    if (c_need < best_c * (1.0 - 1e-12)) {
      best_c = c_need;
      best_kappa = kappa;
    }
  }
  rep.c_kappa = best_c;
  rep.kappa = best_kappa;
  return rep;
}

}  // namespace dunklab
