#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "l1gv/poly.hpp"

namespace l1gv {

struct SolverFailure : std::runtime_error {
  double best_residual;
  SolverFailure(const std::string& msg, double best) : std::runtime_error(msg), best_residual(best) {}
};

struct MultipleSolutions : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The smooth critical-point system: H(z) = 0 together with the
// proportionality equations r_l z_j dH/dz_j = r_j z_l dH/dz_l (last index l).
struct CriticalProblem {
  SparsePoly H;
  std::vector<double> direction;

  CriticalProblem(SparsePoly h, std::vector<double> dir) : H(std::move(h)), direction(std::move(dir)) {
    if (H.constant_term() == 0) throw std::invalid_argument("CriticalProblem: H(0) must be nonzero");
    if (static_cast<int>(direction.size()) != H.num_vars())
      throw std::invalid_argument("CriticalProblem: direction length != num_vars");
    bool any = false;
    for (double r : direction) {
      if (r < 0) throw std::invalid_argument("CriticalProblem: negative direction component");
      any = any || r > 0;
    }
    if (!any) throw std::invalid_argument("CriticalProblem: direction is zero");
  }
};

struct CriticalSolution {
  std::vector<double> point;
  double rate;           // -sum r_i log2 z_i
  double residual_H;     // |H(z*)|
  double residual_prop;  // max proportionality deviation

  CriticalSolution(std::vector<double> pt, double rate_, double rh, double rp)
      : point(std::move(pt)), rate(rate_), residual_H(rh), residual_prop(rp) {
    for (double v : point)
      if (!(v > 0)) throw std::domain_error("CriticalSolution: nonpositive component");
    if (!(residual_H < 1e-9) || !(residual_prop < 1e-9))
      throw std::domain_error("CriticalSolution: residuals exceed acceptance threshold");
  }
};

inline double rate_exponent(const std::vector<double>& point, const std::vector<double>& direction) {
  double phi = 0.0;
  for (size_t i = 0; i < point.size(); ++i) phi -= direction[i] * std::log2(point[i]);
  return phi;
}
inline double rate_exponent(const CriticalSolution& sol, const std::vector<double>& direction) {
  return rate_exponent(sol.point, direction);
}

namespace solvedetail {

inline bool solve_linear(std::vector<double>& a, std::vector<double>& b, int n) {
  // Gaussian elimination with partial pivoting; a is n*n row-major.
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::fabs(a[r * n + c]) > std::fabs(a[piv * n + c])) piv = r;
    if (std::fabs(a[piv * n + c]) < 1e-300) return false;
    if (piv != c) {
      for (int k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
      std::swap(b[c], b[piv]);
    }
    for (int r = c + 1; r < n; ++r) {
      double m = a[r * n + c] / a[c * n + c];
      for (int k = c; k < n; ++k) a[r * n + k] -= m * a[c * n + k];
      b[r] -= m * b[c];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < n; ++k) s -= a[r * n + k] * b[k];
    b[r] = s / a[r * n + r];
  }
  return true;
}

struct PolySystem {
  const CriticalProblem& prob;
  int n;
  std::vector<SparsePoly> d1;                // first partials
  std::vector<std::vector<SparsePoly>> d2;   // second partials

  explicit PolySystem(const CriticalProblem& p) : prob(p), n(p.H.num_vars()) {
    d1.reserve(n);
    for (int i = 0; i < n; ++i) d1.push_back(poly_partial(p.H, i));
    d2.resize(n);
    for (int i = 0; i < n; ++i) {
      d2[i].reserve(n);
      for (int j = 0; j < n; ++j) d2[i].push_back(poly_partial(d1[i], j));
    }
  }

  void eval_f(const std::vector<double>& z, std::vector<double>& f) const {
    const auto& r = prob.direction;
    const int l = n - 1;
    std::vector<double> h(n);
    for (int i = 0; i < n; ++i) h[i] = poly_eval(d1[i], z);
    f[0] = poly_eval(prob.H, z);
    for (int j = 0; j < l; ++j) f[j + 1] = r[l] * z[j] * h[j] - r[j] * z[l] * h[l];
  }

  void eval_jac(const std::vector<double>& z, std::vector<double>& jac) const {
    const auto& r = prob.direction;
    const int l = n - 1;
    std::vector<double> h(n);
    for (int i = 0; i < n; ++i) h[i] = poly_eval(d1[i], z);
    std::vector<std::vector<double>> hh(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) hh[i][j] = poly_eval(d2[i][j], z);
    for (int i = 0; i < n; ++i) jac[i] = h[i];
    for (int j = 0; j < l; ++j)
      for (int i = 0; i < n; ++i) {
        double v = r[l] * ((i == j ? h[j] : 0.0) + z[j] * hh[j][i]) -
                   r[j] * ((i == l ? h[l] : 0.0) + z[l] * hh[l][i]);
        jac[(j + 1) * n + i] = v;
      }
  }

  double norm_inf(const std::vector<double>& f) const {
    double m = 0;
    for (double v : f) m = std::max(m, std::fabs(v));
    return m;
  }

  // A smooth critical point keeps z_l dH/dz_l away from zero; points where
  // every z_i dH/dz_i vanishes are degenerate boundary artifacts.
  bool degenerate(const std::vector<double>& z) const {
    double m = 0;
    for (int i = 0; i < n; ++i) m = std::max(m, std::fabs(z[i] * poly_eval(d1[i], z)));
    return m < 1e-8;
  }

  // Damped Newton from one seed; returns true on convergence to a positive point.
  bool newton(std::vector<double>& z, double tol = 1e-12, int max_iter = 120) const {
    std::vector<double> f(n), jac(n * n), step(n), trial(n);
    eval_f(z, f);
    double fn = norm_inf(f);
    for (int it = 0; it < max_iter; ++it) {
      if (fn < tol) {
        for (double v : z)
          if (!(v > 0)) return false;
        return true;
      }
      eval_jac(z, jac);
      std::vector<double> a = jac, b = f;
      for (double& v : b) v = -v;
      if (!solve_linear(a, b, n)) return false;
      double t = 1.0;
      bool moved = false;
      for (int half = 0; half < 40; ++half, t *= 0.5) {
        bool pos = true;
        for (int i = 0; i < n; ++i) {
          trial[i] = z[i] + t * b[i];
          if (!(trial[i] > 0)) pos = false;
        }
        if (!pos) continue;
        std::vector<double> ft(n);
        eval_f(trial, ft);
        double fnt = norm_inf(ft);
        if (fnt < fn || (fnt == fn && t == 1.0)) {
          z = trial;
          f = ft;
          fn = fnt;
          moved = true;
          break;
        }
      }
      if (!moved) return fn < tol;
    }
    return fn < tol;
  }
};

inline std::vector<std::vector<double>> seed_grid(int n) {
  static const double vals[] = {0.2, 0.5, 0.8, 0.35, 0.65, 0.95, 1.25, 0.05};
  std::vector<std::vector<double>> seeds;
  std::vector<int> idx(n, 0);
  const int m = static_cast<int>(sizeof(vals) / sizeof(vals[0]));
  // first a coarse full grid over the first 3 values, then axis sweeps of the rest
  std::function<void(int)> rec = [&](int d) {
    if (d == n) {
      std::vector<double> s(n);
      for (int i = 0; i < n; ++i) s[i] = vals[idx[i]];
      seeds.push_back(s);
      return;
    }
    for (int v = 0; v < 3; ++v) {
      idx[d] = v;
      rec(d + 1);
    }
  };
  rec(0);
  for (int v = 3; v < m; ++v) seeds.push_back(std::vector<double>(n, vals[v]));
  return seeds;
}

}  // namespace solvedetail

struct SolveOptions {
  bool probe_all_seeds = false;  // scan the whole seed schedule and demand a unique cluster
  double tol = 1e-12;
};

// Newton with a deterministic seed schedule. Reported residuals are
// re-evaluated at the final point, independently of the solver loop.
inline CriticalSolution solve_critical_point(const CriticalProblem& prob,
                                             std::optional<std::vector<double>> initial = {},
                                             const SolveOptions& opt = {}) {
  for (double r : prob.direction)
    if (r <= 0)
      throw std::invalid_argument("solve_critical_point: direction components must be positive");
  solvedetail::PolySystem sys(prob);
  const int n = sys.n;
  auto finish = [&](const std::vector<double>& z) {
    std::vector<double> f(n);
    sys.eval_f(z, f);
    double rh = std::fabs(f[0]);
    double rp = 0;
    for (int j = 1; j < n; ++j) rp = std::max(rp, std::fabs(f[j]));
    return CriticalSolution(z, rate_exponent(z, prob.direction), rh, rp);
  };

  std::vector<std::vector<double>> seeds;
  if (initial) seeds.push_back(*initial);
  for (auto& s : solvedetail::seed_grid(n)) seeds.push_back(std::move(s));

  double best = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> found;
  for (auto z : seeds) {
    if (static_cast<int>(z.size()) != n) throw std::invalid_argument("solve: bad seed length");
    if (sys.newton(z, opt.tol) && !sys.degenerate(z)) {
      if (!opt.probe_all_seeds) return finish(z);
      bool dup = false;
      for (const auto& g : found) {
        double d = 0;
        for (int i = 0; i < n; ++i) d = std::max(d, std::fabs(g[i] - z[i]) / std::max(1.0, std::fabs(g[i])));
        if (d < 1e-6) {
          dup = true;
          break;
        }
      }
      if (!dup) found.push_back(z);
    } else {
      std::vector<double> f(n);
      bool pos = true;
      for (double v : z) pos = pos && v > 0;
      if (pos) {
        sys.eval_f(z, f);
        best = std::min(best, sys.norm_inf(f));
      }
    }
  }
  if (opt.probe_all_seeds) {
    if (found.empty()) throw SolverFailure("solve_critical_point: no seed converged", best);
    if (found.size() > 1) {
      std::ostringstream os;
      os << "solve_critical_point: " << found.size() << " distinct positive solutions:";
      for (const auto& g : found) {
        os << " (";
        for (double v : g) os << v << ",";
        os << ")";
      }
      throw MultipleSolutions(os.str());
    }
    return finish(found.front());
  }
  throw SolverFailure("solve_critical_point: seed schedule exhausted", best);
}

// Theorem-3 style maximizer: pins z_l = 1 and solves for the remaining
// coordinates together with the free last direction component r_l. This is
// the generic route to every delta_max.
inline std::pair<double, CriticalSolution> plateau_direction(const SparsePoly& H,
                                                             std::vector<double> fixed_direction) {
  const int n = H.num_vars();
  if (static_cast<int>(fixed_direction.size()) != n - 1)
    throw std::invalid_argument("plateau_direction: expected n-1 fixed direction components");
  std::vector<SparsePoly> d1;
  for (int i = 0; i < n; ++i) d1.push_back(poly_partial(H, i));
  std::vector<std::vector<SparsePoly>> d2(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d2[i].push_back(poly_partial(d1[i], j));

  const int m = n;  // unknowns: z_1..z_{n-1}, r_l
  auto assemble = [&](const std::vector<double>& u, std::vector<double>& f,
                      std::vector<double>* jac) {
    std::vector<double> z(n);
    for (int i = 0; i < n - 1; ++i) z[i] = u[i];
    z[n - 1] = 1.0;
    const double rl = u[n - 1];
    std::vector<double> h(n);
    for (int i = 0; i < n; ++i) h[i] = poly_eval(d1[i], z);
    f[0] = poly_eval(H, z);
    for (int j = 0; j < n - 1; ++j) f[j + 1] = rl * z[j] * h[j] - fixed_direction[j] * h[n - 1];
    if (!jac) return;
    std::vector<std::vector<double>> hh(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) hh[i][j] = poly_eval(d2[i][j], z);
    for (int i = 0; i < n - 1; ++i) (*jac)[i] = h[i];
    (*jac)[n - 1] = 0.0;  // dH/dr_l
    for (int j = 0; j < n - 1; ++j) {
      for (int i = 0; i < n - 1; ++i)
        (*jac)[(j + 1) * m + i] =
            rl * ((i == j ? h[j] : 0.0) + z[j] * hh[j][i]) - fixed_direction[j] * hh[n - 1][i];
      (*jac)[(j + 1) * m + (n - 1)] = z[j] * h[j];
    }
  };

  static const double zvals[] = {0.3, 0.6, 0.9, 0.15, 0.45, 0.75, 1.1};
  static const double rvals[] = {0.5, 0.1, 1.0, 1.6, 2.5};
  std::vector<double> f(m), jac(m * m), u(m), trial(m);
  double best = std::numeric_limits<double>::infinity();
  for (double zv : zvals)
    for (double rv : rvals) {
      for (int i = 0; i < n - 1; ++i) u[i] = zv;
      u[n - 1] = rv;
      assemble(u, f, nullptr);
      double fn = 0;
      for (double v : f) fn = std::max(fn, std::fabs(v));
      bool ok = false;
      for (int it = 0; it < 120; ++it) {
        if (fn < 1e-12) {
          ok = true;
          break;
        }
        assemble(u, f, &jac);
        std::vector<double> a = jac, b = f;
        for (double& v : b) v = -v;
        if (!solvedetail::solve_linear(a, b, m)) break;
        double t = 1.0;
        bool moved = false;
        for (int half = 0; half < 40; ++half, t *= 0.5) {
          bool pos = true;
          for (int i = 0; i < m; ++i) {
            trial[i] = u[i] + t * b[i];
            if (!(trial[i] > 0)) pos = false;
          }
          if (!pos) continue;
          std::vector<double> ft(m);
          assemble(trial, ft, nullptr);
          double fnt = 0;
          for (double v : ft) fnt = std::max(fnt, std::fabs(v));
          if (fnt < fn) {
            u = trial;
            f = ft;
            fn = fnt;
            moved = true;
            break;
          }
        }
        if (!moved) break;
      }
      if (ok) {
        std::vector<double> z(n);
        for (int i = 0; i < n - 1; ++i) z[i] = u[i];
        z[n - 1] = 1.0;
        std::vector<double> dir = fixed_direction;
        dir.push_back(u[n - 1]);
        CriticalProblem check(H, dir);
        solvedetail::PolySystem sys(check);
        std::vector<double> res(n);
        sys.eval_f(z, res);
        double rh = std::fabs(res[0]), rp = 0;
        for (int j = 1; j < n; ++j) rp = std::max(rp, std::fabs(res[j]));
        return {u[n - 1], CriticalSolution(z, rate_exponent(z, dir), rh, rp)};
      }
      best = std::min(best, fn);
    }
  throw SolverFailure("plateau_direction: no seed converged", best);
}

// Corollary-1 gap between the capacity-side tau coordinate and the ball-side
// one. The ball generating functions track the constraint count twice
// (w^{2p}), so the extraction variable is w^2; with ball_exponent_doubled the
// gap is (cap)^2 - (ball)^2, which vanishes exactly when w1* = w*.
inline double mr_optimality_gap(const CriticalSolution& cap_solution, int cap_tau_index,
                                const CriticalSolution& ball_solution, int ball_tau_index,
                                bool ball_exponent_doubled = true) {
  double zc = cap_solution.point.at(cap_tau_index);
  double yb = ball_solution.point.at(ball_tau_index);
  double ball_var = ball_exponent_doubled ? yb * yb : yb;
  return zc * zc - ball_var;
}

enum class RootPolicy { UniquePositive, SmallestInUnitInterval, AllThenFilter };

struct RootFindingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace rootdetail {

inline double polish(const std::function<double(double)>& f, double a, double b) {
  // bisection to a tight bracket, then Newton with a finite-difference slope
  double fa = f(a), fb = f(b);
  if (fa == 0) return a;
  if (fb == 0) return b;
  for (int it = 0; it < 200 && (b - a) > 1e-16 * std::max(1.0, std::fabs(a)); ++it) {
    double m = 0.5 * (a + b), fm = f(m);
    if (fm == 0) return m;
    if ((fa < 0) != (fm < 0)) {
      b = m;
      fb = fm;
    } else {
      a = m;
      fa = fm;
    }
  }
  double x = 0.5 * (a + b), fx = f(x);
  double bestx = x, bestf = std::fabs(fx);
  for (int it = 0; it < 50 && std::fabs(fx) > 1e-13; ++it) {
    double h = 1e-7 * std::max(1.0, std::fabs(x));
    double slope = (f(x + h) - f(x - h)) / (2 * h);
    if (slope == 0) break;
    double xn = x - fx / slope;
    if (!(xn > a - 1e-9) || !(xn < b + 1e-9)) break;
    x = xn;
    fx = f(x);
    if (std::fabs(fx) < bestf) {
      bestf = std::fabs(fx);
      bestx = x;
    }
  }
  return bestf <= std::fabs(fx) ? bestx : x;
}

inline std::vector<std::pair<double, double>> scan_brackets(const std::function<double(double)>& f,
                                                            double lo, double hi, double step) {
  std::vector<std::pair<double, double>> brackets;
  double x0 = lo, f0 = f(x0);
  for (double x = lo + step; x <= hi + 0.5 * step; x += step) {
    double xc = std::min(x, hi);
    double fc = f(xc);
    if (f0 == 0)
      brackets.emplace_back(std::max(lo, x0 - step), std::min(hi, x0 + step));
    else if ((f0 < 0) != (fc < 0))
      brackets.emplace_back(x0, xc);
    x0 = xc;
    f0 = fc;
    if (xc >= hi) break;
  }
  if (f0 == 0) brackets.emplace_back(std::max(lo, x0 - step), hi);
  return brackets;
}

}  // namespace rootdetail

inline std::vector<double> find_all_roots(const std::function<double(double)>& f, double lo,
                                          double hi, double step = 1e-3) {
  std::vector<double> roots;
  for (auto [a, b] : rootdetail::scan_brackets(f, lo, hi, step)) {
    double r = rootdetail::polish(f, a, b);
    if (roots.empty() || std::fabs(roots.back() - r) > 10 * step) roots.push_back(r);
  }
  return roots;
}

inline double find_positive_root(const std::function<double(double)>& f, double lo, double hi,
                                 RootPolicy policy, double step = 1e-3) {
  switch (policy) {
    case RootPolicy::UniquePositive: {
      auto brackets = rootdetail::scan_brackets(f, lo, hi, step);
      if (brackets.size() != 1)
        throw RootFindingError("find_positive_root: expected exactly one sign change, found " +
                               std::to_string(brackets.size()));
      return rootdetail::polish(f, brackets[0].first, brackets[0].second);
    }
    case RootPolicy::SmallestInUnitInterval: {
      double a = std::max(lo, 0.0), b = std::min(hi, 1.0);
      auto brackets = rootdetail::scan_brackets(f, a, b, step);
      if (brackets.empty()) throw RootFindingError("find_positive_root: no root in unit interval");
      return rootdetail::polish(f, brackets[0].first, brackets[0].second);
    }
    case RootPolicy::AllThenFilter:
      throw std::invalid_argument("find_positive_root: use find_all_roots for AllThenFilter");
  }
  throw std::logic_error("find_positive_root: unhandled policy");
}

inline std::function<double(double)> horner(const std::vector<double>& coeffs_low_to_high) {
  return [coeffs_low_to_high](double x) {
    double acc = 0;
    for (auto it = coeffs_low_to_high.rbegin(); it != coeffs_low_to_high.rend(); ++it)
      acc = acc * x + *it;
    return acc;
  };
}

inline double find_positive_root(const std::vector<double>& coeffs_low_to_high, double lo,
                                 double hi, RootPolicy policy, double step = 1e-3) {
  return find_positive_root(horner(coeffs_low_to_high), lo, hi, policy, step);
}

}  // namespace l1gv
