#include "dunklab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>

namespace dunklab {

namespace {

struct GaussRule {
  std::vector<double> nodes;    // on (0, 1)
  std::vector<double> weights;  // sum = int_0^1 u^beta du
};

// Golub-Welsch for the Jacobi weight (1+t)^beta on [-1,1] (alpha = 0),
// mapped to weight u^beta on [0,1].  beta = 0 gives Gauss-Legendre.
GaussRule build_rule(double beta, int n) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  auto diag = [&](int i) -> double {
    if (i == 0) return beta / (beta + 2.0);
    const double s = 2.0 * i + beta;
    return beta * beta / (s * (s + 2.0));
  };
  auto offdiag = [&](int i) -> double {  // b_i, i >= 1
    const double s = 2.0 * i + beta;
    return std::sqrt(4.0 * i * i * (i + beta) * (i + beta) /
                     (s * s * (s + 1.0) * (s - 1.0)));
  };
  for (int i = 0; i < n; ++i) {
    J(i, i) = diag(i);
    if (i >= 1) {
      J(i, i - 1) = offdiag(i);
      J(i - 1, i) = J(i, i - 1);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  const double mu0 = std::pow(2.0, beta + 1.0) / (beta + 1.0);
  const double scale = std::pow(2.0, -beta - 1.0);  // map [-1,1] -> [0,1]
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = 0.5 * (1.0 + es.eigenvalues()[i]);
    const double v0 = es.eigenvectors()(0, i);
    rule.weights[i] = scale * mu0 * v0 * v0;
  }
  return rule;
}

const GaussRule& cached_rule(double beta, int n) {
  static std::mutex mu;
  static std::map<std::pair<long long, int>, GaussRule> cache;
  const long long key = llround(beta * 1e9);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({key, n});
  if (it == cache.end())
    it = cache.emplace(std::make_pair(key, n), build_rule(beta, n)).first;
  return it->second;
}

struct Cell {
  double lo, hi;
  double left_exp = -1, right_exp = -1;  // exponent when endpoint singular
  int depth = 0;
};

class LineWorker {
 public:
  LineWorker(const std::function<double(double)>& smooth,
             const std::vector<SingularFactor>& factors,
             const QuadratureSpec& spec, double total_len)
      : smooth_(smooth), factors_(factors), spec_(spec), total_len_(total_len) {}

  void set_scale(double s) { scale_ = std::abs(s); }

  double evaluate(const Cell& c) const {
    if (c.left_exp >= 0 && c.right_exp >= 0)
      throw Error("line quadrature: cell with two singular endpoints");
    if (c.left_exp > 0) return jacobi_cell(c.lo, c.hi, c.left_exp, false, 16);
    if (c.right_exp > 0) return jacobi_cell(c.lo, c.hi, c.right_exp, true, 16);
    return legendre_cell(c.lo, c.hi, 16);
  }

  double evaluate_coarse(const Cell& c) const {
    if (c.left_exp > 0) return jacobi_cell(c.lo, c.hi, c.left_exp, false, 8);
    if (c.right_exp > 0) return jacobi_cell(c.lo, c.hi, c.right_exp, true, 8);
    return legendre_cell(c.lo, c.hi, 8);
  }

  double rough_value(const Cell& c) const {
    if (c.left_exp >= 0 && c.right_exp >= 0) {
      std::vector<Cell> halves;
      split(c, halves);
      return rough_value(halves[0]) + rough_value(halves[1]);
    }
    return evaluate(c);
  }

  double run(std::vector<Cell> initial) const {
    // Rough pass fixes the scale used in the acceptance threshold.
    if (scale_ == 0) {
      double rough = 0;
      for (const Cell& c : initial) rough += rough_value(c);
      scale_ = std::abs(rough);
    }
    double total = 0;
    std::vector<Cell> stack = std::move(initial);
    while (!stack.empty()) {
      Cell c = stack.back();
      stack.pop_back();
      const double len = c.hi - c.lo;
      if (c.left_exp >= 0 && c.right_exp >= 0) {
        split(c, stack);
        continue;
      }
      const double fine = evaluate(c);
      const double coarse = evaluate_coarse(c);
      const double err = std::abs(fine - coarse);
      const double frac = len / total_len_;
      const double tol = std::max({spec_.rel_tol * std::abs(fine),
                                   spec_.rel_tol * scale_ * frac,
                                   spec_.abs_floor * std::max(frac, 1e-3)});
      if (err <= tol) {
        total += fine;
      } else {
        if (c.depth >= spec_.max_depth)
          throw QuadratureError(
              "adaptive quadrature: subdivision depth exhausted");
        split(c, stack);
      }
    }
    return total;
  }

 private:
  static void split(const Cell& c, std::vector<Cell>& stack) {
    const double mid = 0.5 * (c.lo + c.hi);
    Cell a{c.lo, mid, c.left_exp, -1, c.depth + 1};
    Cell b{mid, c.hi, -1, c.right_exp, c.depth + 1};
    stack.push_back(a);
    stack.push_back(b);
  }

  double integrand(double x) const {
    double v = smooth_(x);
    for (const auto& f : factors_) v *= std::pow(std::abs(x - f.pos), f.exponent);
    return v;
  }

  // Integrand with the factor at `skip_pos` removed (absorbed by the rule).
  double integrand_except(double x, double skip_pos) const {
    double v = smooth_(x);
    for (const auto& f : factors_) {
      if (f.pos == skip_pos) continue;
      v *= std::pow(std::abs(x - f.pos), f.exponent);
    }
    return v;
  }

  double legendre_cell(double lo, double hi, int n) const {
    const GaussRule& rule = cached_rule(0.0, n);
    const double len = hi - lo;
    double s = 0;
    for (int i = 0; i < n; ++i)
      s += rule.weights[i] * integrand(lo + len * rule.nodes[i]);
    return s * len;
  }

  double jacobi_cell(double lo, double hi, double e, bool at_hi, int n) const {
    const GaussRule& rule = cached_rule(e, n);
    const double len = hi - lo;
    const double anchor = at_hi ? hi : lo;
    double s = 0;
    for (int i = 0; i < n; ++i) {
      const double x = at_hi ? hi - len * rule.nodes[i] : lo + len * rule.nodes[i];
      s += rule.weights[i] * integrand_except(x, anchor);
    }
    return s * std::pow(len, e + 1.0);
  }

  const std::function<double(double)>& smooth_;
  const std::vector<SingularFactor>& factors_;
  const QuadratureSpec& spec_;
  double total_len_;
  mutable double scale_ = 0;
};

}  // namespace

double integrate_line(const std::function<double(double)>& smooth,
                      std::vector<SingularFactor> factors, double a, double b,
                      const QuadratureSpec& spec) {
  if (!(b > a)) return 0.0;

  // Drop trivial factors, merge coincident positions (exponents add).
  std::vector<SingularFactor> cleaned;
  std::sort(factors.begin(), factors.end(),
            [](const SingularFactor& u, const SingularFactor& v) {
              return u.pos < v.pos;
            });
  for (const auto& f : factors) {
    if (f.exponent < 1e-13) continue;
    if (!cleaned.empty() &&
        std::abs(cleaned.back().pos - f.pos) <= 1e-12 * (1.0 + std::abs(f.pos))) {
      cleaned.back().exponent += f.exponent;
    } else {
      cleaned.push_back(f);
    }
  }
  // Snap positions onto cell endpoints exactly.
  const double edge_tol = 1e-13 * (1.0 + std::abs(a) + std::abs(b));
  for (auto& f : cleaned) {
    if (std::abs(f.pos - a) <= edge_tol) f.pos = a;
    if (std::abs(f.pos - b) <= edge_tol) f.pos = b;
  }

  std::vector<Cell> cells;
  std::vector<double> cuts{a};
  for (const auto& f : cleaned)
    if (f.pos > a && f.pos < b) cuts.push_back(f.pos);
  cuts.push_back(b);

  auto exponent_at = [&](double pos) -> double {
    for (const auto& f : cleaned)
      if (f.pos == pos) return f.exponent;
    return -1;
  };

  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Cell c;
    c.lo = cuts[i];
    c.hi = cuts[i + 1];
    c.left_exp = exponent_at(c.lo);
    c.right_exp = exponent_at(c.hi);
    cells.push_back(c);
  }

  LineWorker worker(smooth, cleaned, spec, b - a);
  return worker.run(std::move(cells));
}

double axis_moment(int p, double q, double a, double b) {
  const double e = p + q + 1.0;
  auto G = [&](double x) -> double {
    if (x == 0.0) return 0.0;
    const double mag = std::pow(std::abs(x), e) / e;
    const bool flip = (x < 0.0) && ((p + 1) % 2 == 1);
    return flip ? -mag : mag;
  };
  return G(b) - G(a);
}

WeightedMeasure::WeightedMeasure(const DunklSystem& sys, QuadratureSpec spec)
    : sys_(sys), spec_(spec) {
  if (!(spec_.rel_tol > 0) || spec_.max_depth < 1)
    throw Error("quadrature spec: tolerance must be > 0 and depth >= 1");
}

namespace {

// Innermost axis of a nested integral gets each root's weight factor exactly
// once: a root is assigned to the last axis where it has a nonzero component.
std::vector<int> assign_root_levels(const DunklSystem& S) {
  std::vector<int> lvl(S.roots().roots.size(), 0);
  for (std::size_t i = 0; i < S.roots().roots.size(); ++i) {
    int last = 0;
    for (int j = 0; j < S.dim(); ++j)
      if (std::abs(S.roots().roots[i][j]) > 1e-12) last = j;
    lvl[i] = last;
  }
  return lvl;
}

struct NestedIntegrator {
  const DunklSystem& S;
  const QuadratureSpec& spec;
  bool ball = false;
  Box box;
  Point bcenter;
  double bradius = 0;
  const ScalarField* fgen = nullptr;
  const Poly* fpoly = nullptr;
  std::vector<int> root_level;

  double run() {
    Point x(S.dim());
    return level(x, 0);
  }

  std::optional<std::pair<double, double>> bounds(const Point& x, int axis) const {
    if (!ball) return std::make_pair(box.lo[axis], box.hi[axis]);
    double s = bradius * bradius;
    for (int j = 0; j < axis; ++j) {
      const double d = x[j] - bcenter[j];
      s -= d * d;
    }
    if (s <= 0) return std::nullopt;
    const double rho = std::sqrt(s);
    return std::make_pair(bcenter[axis] - rho, bcenter[axis] + rho);
  }

  double level(Point& x, int axis) const {
    const auto bd = bounds(x, axis);
    if (!bd) return 0.0;
    const auto [lo, hi] = *bd;
    const int N = S.dim();

    if (axis == N - 1 && fpoly && S.axis_product())
      return inner_poly_closed(x, lo, hi);

    // Weight factors assigned to this axis, with outer coordinates fixed.
    double constant = 1.0;
    std::vector<SingularFactor> factors;
    for (std::size_t i = 0; i < S.roots().roots.size(); ++i) {
      if (root_level[i] != axis) continue;
      const double k = S.multiplicity(static_cast<int>(i));
      if (k == 0.0) continue;
      const Point& alpha = S.roots().roots[i];
      double b = 0;
      for (int j = 0; j < axis; ++j) b += x[j] * alpha[j];
      const double c = alpha[axis];
      if (std::abs(c) <= 1e-14) {
        // Root constant along this line (can only happen for shallower
        // assignment bugs); treat as a constant factor.
        constant *= std::pow(std::abs(b), k);
        continue;
      }
      factors.push_back({-b / c, k});
      constant *= std::pow(std::abs(c), k);
    }

    std::function<double(double)> smooth;
    if (axis == N - 1) {
      smooth = [&](double t) -> double {
        x[axis] = t;
        const double fv = fpoly ? fpoly->eval(x) : (*fgen)(x);
        return constant * fv;
      };
    } else {
      smooth = [&](double t) -> double {
        x[axis] = t;
        return constant * level(x, axis + 1);
      };
    }
    return integrate_line(smooth, factors, lo, hi, spec);
  }

  // Exact innermost integral of a polynomial against 2^k |t|^{2k} dt.
  double inner_poly_closed(Point& x, double lo, double hi) const {
    const int axis = S.dim() - 1;
    const double k = S.axis_k()[static_cast<std::size_t>(axis)];
    // Collect the 1-D polynomial in t with outer coordinates substituted.
    std::vector<double> coef;
    for (const Monomial& m : fpoly->terms) {
      double c = m.coeff;
      for (int j = 0; j < axis; ++j)
        for (int p = 0; p < m.powers[static_cast<std::size_t>(j)]; ++p) c *= x[j];
      const int pt = m.powers[static_cast<std::size_t>(axis)];
      if (static_cast<int>(coef.size()) <= pt) coef.resize(pt + 1, 0.0);
      coef[static_cast<std::size_t>(pt)] += c;
    }
    const double scale = std::pow(2.0, k);
    double s = 0;
    for (std::size_t p = 0; p < coef.size(); ++p)
      if (coef[p] != 0.0)
        s += coef[p] * axis_moment(static_cast<int>(p), 2.0 * k, lo, hi);
    return scale * s;
  }
};

}  // namespace

double WeightedMeasure::integrate_impl(const ScalarField* f, const Poly* p,
                                       bool ball, const Box& K,
                                       const Point& center, double r) const {
  NestedIntegrator ni{sys_, spec_, ball, K, center, r, f, p,
                      assign_root_levels(sys_)};
  return ni.run();
}

double WeightedMeasure::integrate_cube(const ScalarField& f, const Box& K) const {
  return integrate_impl(&f, nullptr, false, K, Point(), 0);
}

double WeightedMeasure::integrate_ball(const ScalarField& f, const Point& center,
                                       double r) const {
  if (!(r > 0)) throw Error("integrate_ball: radius must be positive");
  return integrate_impl(&f, nullptr, true, Box(), center, r);
}

double WeightedMeasure::integrate_cube(const Poly& f, const Box& K) const {
  return integrate_impl(nullptr, &f, false, K, Point(), 0);
}

double WeightedMeasure::integrate_ball(const Poly& f, const Point& center,
                                       double r) const {
  if (!(r > 0)) throw Error("integrate_ball: radius must be positive");
  return integrate_impl(nullptr, &f, true, Box(), center, r);
}

namespace {
std::string ball_key(const Point& x, double r) {
  char buf[32];
  std::string key;
  for (int j = 0; j < x.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%lld,", llround(x[j] * 1e9));
    key += buf;
  }
  std::snprintf(buf, sizeof buf, "r%lld", llround(r * 1e9));
  key += buf;
  return key;
}
}  // namespace

double WeightedMeasure::ball_volume(const Point& x, double r) const {
  if (!(r > 0)) throw Error("ball_volume: radius must be positive");
  const std::string key = ball_key(x, r);
  {
    std::shared_lock lock(cache_mu_);
    auto it = ball_cache_.find(key);
    if (it != ball_cache_.end()) return it->second;
  }
  const double v = integrate_ball(Poly::constant(sys_.dim(), 1.0), x, r);
  {
    std::unique_lock lock(cache_mu_);
    ball_cache_.emplace(key, v);
  }
  return v;
}

double WeightedMeasure::ck_constant() const {
  std::call_once(ck_once_, [&] {
    const double halfwidth = 12.0;  // Gaussian tail < 1e-12 relative
    const Box K = symmetric_box(sys_.dim(), halfwidth);
    const ScalarField f = [](const Point& x) {
      return std::exp(-0.5 * x.squaredNorm());
    };
    ck_value_ = integrate_cube(f, K);
  });
  return ck_value_;
}

std::pair<double, double> WeightedMeasure::comparability(const Point& x,
                                                         double r) const {
  const double vol = ball_volume(x, r);
  double denom = std::pow(r, sys_.dim());
  for (std::size_t i = 0; i < sys_.roots().roots.size(); ++i) {
    const double k = sys_.multiplicity(static_cast<int>(i));
    if (k == 0.0) continue;
    denom *= std::pow(std::abs(sys_.roots().roots[i].dot(x)) + r, k);
  }
  const double ratio = vol / denom;
  return {ratio, 1.0 / ratio};
}

void WeightedMeasure::clear_cache() const {
  std::unique_lock lock(cache_mu_);
  ball_cache_.clear();
}

}  // namespace dunklab
