#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "l1gv/acsv.hpp"
#include "l1gv/entropy.hpp"
#include "l1gv/gf.hpp"
#include "l1gv/spaces.hpp"

namespace l1gv {

enum class BoundKind { GV, GVMR, SpherePacking, ConstantWeightGV, KolesnikKrachkovsky, Lee, Capacity };

inline std::string bound_name(BoundKind k) {
  switch (k) {
    case BoundKind::GV: return "gv";
    case BoundKind::GVMR: return "gvmr";
    case BoundKind::SpherePacking: return "sp";
    case BoundKind::ConstantWeightGV: return "cw";
    case BoundKind::KolesnikKrachkovsky: return "kk";
    case BoundKind::Lee: return "lee";
    case BoundKind::Capacity: return "cap";
  }
  return "?";
}

// ---------------------------------------------------------------- capacity

inline double capacity(const SpaceFamily& f) {
  f.validate();
  switch (f.kind) {
    case SpaceKind::StdSimplex:
      return f.rho == 0 ? 0.0 : (1 + f.rho) * entropy2(f.rho / (1 + f.rho));
    case SpaceKind::StdSimplexZeros:
      return (f.rho == 0 ? 0.0 : f.rho * entropy2(f.tau / f.rho)) + entropy2(f.rho - f.tau);
    case SpaceKind::PosSimplex:
    case SpaceKind::InvSimplex:
      return entropy2(f.rho);
    case SpaceKind::PosSimplexOnes: {
      double head = f.rho == 0 ? 0.0 : f.rho * entropy2(f.tau / f.rho);
      if (f.rho >= 1.0) return head;  // the (1-rho) block vanishes
      return head + (1 - f.rho) * entropy2((f.rho - f.tau) / (1 - f.rho));
    }
    case SpaceKind::Hypercube:
      return std::log2(static_cast<double>(f.q));
    case SpaceKind::HypercubeZeros:
      return (1 - f.tau) * std::log2(static_cast<double>(f.q - 1)) + entropy2(f.tau);
  }
  throw std::logic_error("capacity: unhandled kind");
}

// ------------------------------------------- closed-form critical points

// Critical coordinates in the diagonal_denominator variable order, plus the
// lambda substitution values for the constrained families.
struct CriticalValues {
  std::vector<double> coords;
  std::map<std::string, double> aux;
};

namespace closedform {

inline CriticalValues std_simplex(double rho, double d) {
  if (!(rho > 0) || !(d > 0) || !(d < 2))
    throw std::domain_error("std_simplex closed form: need rho > 0, 0 < delta < 2");
  double x = std::sqrt(1 - 2 * rho / (2 + 2 * rho - d));
  double s = std::sqrt(rho * rho + d * d);
  double z = (s - rho) / (x * d);
  double y = 2 * (s - d) / (2 - d + 2 * rho);
  return {{x, y, z}, {}};
}

inline CriticalValues pos_simplex(double rho, double d) {
  if (!(rho > 0) || !(rho < 1) || !(d > 0) || !(d < 2 * (1 - rho)))
    throw std::domain_error("pos_simplex closed form: need 0 < rho < 1, 0 < delta < 2(1-rho)");
  double x = std::sqrt(1 - 2 * rho / (2 - d));
  double s = std::sqrt(rho * rho + d * d);
  double z = (s - rho) / (x * d);
  double y = 2 * (s - d) / (2 - d - 2 * rho);
  return {{x, y, z}, {}};
}

// lambda1-parameterized point of the constrained standard simplex.
inline CriticalValues std_zeros_from_lambda1(double rho, double tau, double d, double l1) {
  double l2 = 1 - (1 + l1) * (2 * (rho - tau) - d * (1 - l1)) / (2 - d);
  double x = std::sqrt(l2);
  double z = l1 / x;
  double w = l2 * (d * (1 - l1 * l1) - 2 * l1 * (rho - tau)) /
             (l1 * (1 - l2) * (2 * (rho - tau) - d * (1 - l1)));
  double y = (1 - l1) * (1 - l2) /
             (w * w * (1 - l1) * (1 - l2) + 2 * w * l1 * (1 - l2) + l2 * (1 + l1));
  return {{x, y, z, w}, {{"lambda1", l1}, {"lambda2", l2}}};
}

inline CriticalValues pos_ones_from_lambda1(double rho, double tau, double d, double l1) {
  double l2 = 1 - (1 + l1) * (2 * (rho - tau) - d * (1 - l1)) / (2 * (1 - rho) - d);
  double x = std::sqrt(l2);
  double z = l1 / x;
  double w = l2 * (d * (1 - l1 * l1) - 2 * l1 * (rho - tau)) /
             (l1 * (1 - l2) * (2 * (rho - tau) - d * (1 - l1)));
  double y = (1 - l1) * (1 - l2) /
             (l2 * (w * w * (1 - l1) * (1 - l2) + 2 * w * l1 * (1 - l2) + l2 * (1 + l1)));
  return {{x, y, z, w}, {{"lambda1", l1}, {"lambda2", l2}}};
}

// Quintic whose admissible root is the lambda1 of the constrained standard
// simplex; coefficients ordered low to high.
inline std::vector<double> std_zeros_quintic(double rho, double tau, double d) {
  double rt = rho - tau;
  return {d * d * (rho - tau - 1),
          d * d - 4 * d * rt * (rt - 1),
          -d * d * (rho - 2 * tau - 2) - 2 * d * rt * (rho + tau + 2) - 4 * rt * rt * (1 - rho),
          -d * d * (rho + 2) + 2 * d * rt * (rt - 2) + 4 * rt * rt * (1 + rho),
          -d * d * (1 + tau) + 4 * d * rt * (1 + rho),
          d * d * (1 + rho)};
}

// Degree-6 lambda1 equation of the constrained positive simplex.
inline double pos_ones_sextic(double rho, double tau, double d, double l1) {
  double rt = rho - tau;
  double a = d * (1 - l1 * l1) - 2 * l1 * rt;
  double b = 2 * rt - d * (1 - l1);
  return (1 - l1) * a * a * (2 * (1 - rho) - 2 * rt * (1 + l1) - d * l1 * l1) +
         l1 * l1 * (1 + l1) * b * b * (a - 2 * tau);
}

inline bool admissible(const CriticalValues& v) {
  for (double c : v.coords)
    if (!std::isfinite(c) || !(c > 0)) return false;
  auto l1 = v.aux.find("lambda1"), l2 = v.aux.find("lambda2");
  if (l1 != v.aux.end() && !(l1->second > 0 && l1->second < 1)) return false;
  if (l2 != v.aux.end() && !(l2->second > 0 && l2->second < 1)) return false;
  return true;
}

inline CriticalValues constrained_simplex(SpaceKind kind, double rho, double tau, double d) {
  std::vector<double> roots;
  if (kind == SpaceKind::StdSimplexZeros) {
    auto q = std_zeros_quintic(rho, tau, d);
    roots = find_all_roots(horner(q), 1e-9, 1 - 1e-12);
  } else {
    roots = find_all_roots([&](double l) { return pos_ones_sextic(rho, tau, d, l); }, 1e-9,
                           1 - 1e-12);
  }
  std::vector<CriticalValues> admitted;
  for (double l1 : roots) {
    CriticalValues v = kind == SpaceKind::StdSimplexZeros
                           ? std_zeros_from_lambda1(rho, tau, d, l1)
                           : pos_ones_from_lambda1(rho, tau, d, l1);
    if (admissible(v)) admitted.push_back(std::move(v));
  }
  if (admitted.empty())
    throw SolverFailure("constrained simplex closed form: no admissible lambda1 root", 1.0);
  if (admitted.size() > 1) {
    std::ostringstream os;
    os << "constrained simplex closed form: " << admitted.size() << " admissible roots (lambda1 =";
    for (const auto& v : admitted) os << " " << v.aux.at("lambda1");
    os << ")";
    throw MultipleSolutions(os.str());
  }
  return admitted.front();
}

inline double hyper_sum(int q, double y, const std::function<double(int)>& coef) {
  double acc = 0, yj = 1;
  for (int j = 1; j <= q - 1; ++j) {
    yj *= y;
    acc += coef(j) * yj;
  }
  return acc;
}

inline CriticalValues hypercube(int q, double d) {
  if (!(d > 0) || !(d < q - 1)) throw std::domain_error("hypercube closed form: 0 < delta < q-1");
  auto f = [&](double y) { return 2 * hyper_sum(q, y, [&](int j) { return (q - j) * (j - d); }) - q * d; };
  double y = find_positive_root(f, 1e-12, 1.0 + 1e-9, RootPolicy::UniquePositive);
  double x = 1.0 / (q + 2 * hyper_sum(q, y, [&](int j) { return q - j; }));
  return {{x, y}, {}};
}

// Constrained hypercube at fixed (tau, delta): w from the tau-proportionality
// quadratic (unique positive root), then y from the delta equation.
inline double hyperzeros_w_of_y(int q, double tau, double y) {
  double s1 = hyper_sum(q, y, [](int) { return 1.0; });
  double s2 = hyper_sum(q, y, [&](int j) { return q - 1.0 - j; });
  double a = 1 - tau, b = (1 - 2 * tau) * s1, c = -tau * (q - 1) - 2 * tau * s2;
  return (-b + std::sqrt(b * b - 4 * a * c)) / (2 * a);
}

inline CriticalValues hypercube_zeros(int q, double tau, double d) {
  if (!(tau > 0) || !(tau < 1)) throw std::domain_error("hypercube_zeros: need 0 < tau < 1");
  auto resid = [&](double y) {
    double w = hyperzeros_w_of_y(q, tau, y);
    return d * w * w + 2 * w * hyper_sum(q, y, [&](int j) { return d - j; }) + d * (q - 1) +
           2 * hyper_sum(q, y, [&](int j) { return (q - 1.0 - j) * (d - j); });
  };
  double y = find_positive_root(resid, 1e-12, 1.0, RootPolicy::UniquePositive);
  double w = hyperzeros_w_of_y(q, tau, y);
  double x = 1.0 / (w * w + (q - 1) + 2 * w * hyper_sum(q, y, [](int) { return 1.0; }) +
                    2 * hyper_sum(q, y, [&](int j) { return q - 1.0 - j; }));
  return {{x, y, w}, {}};
}

}  // namespace closedform

inline CriticalValues closed_form_point(const SpaceFamily& f, double d) {
  f.validate();
  switch (f.kind) {
    case SpaceKind::StdSimplex: return closedform::std_simplex(f.rho, d);
    case SpaceKind::PosSimplex:
    case SpaceKind::InvSimplex: return closedform::pos_simplex(f.rho, d);
    case SpaceKind::StdSimplexZeros:
    case SpaceKind::PosSimplexOnes:
      return closedform::constrained_simplex(f.kind, f.rho, f.tau, d);
    case SpaceKind::Hypercube: return closedform::hypercube(f.q, d);
    case SpaceKind::HypercubeZeros: return closedform::hypercube_zeros(f.q, f.tau, d);
  }
  throw std::logic_error("closed_form_point: unhandled kind");
}

// ----------------------------------------------------------- delta ranges

inline double diameter_ratio(const SpaceFamily& f) {
  switch (base_kind(f.kind)) {
    case SpaceKind::StdSimplex: return 2.0;
    case SpaceKind::PosSimplex:
    case SpaceKind::InvSimplex: return 2.0 * (1 - f.rho);
    case SpaceKind::Hypercube: return static_cast<double>(f.q - 1);
    default: return 2.0;
  }
}

inline double delta_max(const SpaceFamily& f, BoundKind kind);

namespace boundsdetail {

// Plateau onset of the constrained simplices: z* = 1 forces lambda1 to a
// fixed value; the quintic/sextic then pins delta.
inline double constrained_simplex_delta_max(const SpaceFamily& f) {
  if (f.kind == SpaceKind::StdSimplexZeros) {
    double lam = 1 - (f.rho - f.tau);
    if (!(lam > 0 && lam < 1))
      throw std::domain_error("delta_max: constrained simplex needs 0 < 1-(rho-tau) < 1");
    auto resid = [&](double d) {
      double acc = 0, p = 1;
      for (double c : closedform::std_zeros_quintic(f.rho, f.tau, d)) {
        acc += c * p;
        p *= lam;
      }
      return acc;
    };
    auto roots = find_all_roots(resid, 1e-9, 2.0);
    for (double d : roots) {
      // onset is the root below which z stays inside the unit circle
      try {
        auto v = closedform::constrained_simplex(f.kind, f.rho, f.tau, d * (1 - 1e-5));
        if (v.coords[2] < 1.0) return d;
      } catch (const std::exception&) {
      }
    }
    throw SolverFailure("delta_max: no admissible plateau onset", 1.0);
  }
  // PosSimplexOnes
  double lam = 1 - (f.rho - f.tau) / (1 - f.rho);
  if (!(lam > 0 && lam < 1))
    throw std::domain_error("delta_max: constrained simplex needs admissible lambda1 at onset");
  auto resid = [&](double d) { return closedform::pos_ones_sextic(f.rho, f.tau, d, lam); };
  auto roots = find_all_roots(resid, 1e-9, 2.0 * (1 - f.rho) - 1e-12);
  for (double d : roots) {
    try {
      auto v = closedform::constrained_simplex(f.kind, f.rho, f.tau, d * (1 - 1e-5));
      if (v.coords[2] < 1.0) return d;
    } catch (const std::exception&) {
    }
  }
  throw SolverFailure("delta_max: no admissible plateau onset", 1.0);
}

}  // namespace boundsdetail

inline double delta_max(const SpaceFamily& f, BoundKind kind) {
  f.validate();
  switch (kind) {
    case BoundKind::GV:
      switch (f.kind) {
        case SpaceKind::StdSimplex: return 2 * (1 + f.rho) / (2 + f.rho);
        case SpaceKind::PosSimplex:
        case SpaceKind::InvSimplex: return 2 * (1 - f.rho) / (2 - f.rho);
        case SpaceKind::Hypercube: return (f.q * f.q - 1.0) / (3.0 * f.q);
        case SpaceKind::HypercubeZeros:
          return f.q * (1 - f.tau) * (1 - (1 - f.tau) * (2.0 * f.q - 1) / (3.0 * (f.q - 1)));
        case SpaceKind::StdSimplexZeros:
        case SpaceKind::PosSimplexOnes:
          return boundsdetail::constrained_simplex_delta_max(f);
      }
      break;
    case BoundKind::GVMR:
      switch (f.kind) {
        case SpaceKind::StdSimplex: return 2.0;
        case SpaceKind::PosSimplex:
        case SpaceKind::InvSimplex: return 2.0 * (1 - f.rho);
        case SpaceKind::Hypercube: return 3.0 * f.q * (f.q - 1) / (4.0 * (2 * f.q - 1));
        default: break;
      }
      break;
    case BoundKind::ConstantWeightGV:
      if (f.kind == SpaceKind::StdSimplex && f.rho >= 1) return 2 * (f.rho - 1) / f.rho;
      break;
    case BoundKind::KolesnikKrachkovsky:
      if (f.kind == SpaceKind::PosSimplex || f.kind == SpaceKind::InvSimplex) return 0.5;
      break;
    case BoundKind::Lee:
      if (f.kind == SpaceKind::Hypercube && f.q == 4) return 1.0;
      break;
    default:
      break;
  }
  throw std::domain_error("delta_max: unsupported (family, bound) pair");
}

// -------------------------------------------------------- ball exponents

// Asymptotic total-ball exponent T~. Plateaus at 2*capacity for
// delta >= delta_max and returns the capacity exactly at delta = 0.
inline double ball_exponent(const SpaceFamily& f, double d) {
  f.validate();
  const double diam = diameter_ratio(f);
  if (d < 0 || d > diam + 1e-12) throw std::domain_error("ball_exponent: delta out of range");
  if (d == 0) return capacity(f);
  const double dmax = delta_max(f, BoundKind::GV);
  if (d >= dmax) return 2 * capacity(f);
  CriticalValues v = closed_form_point(f, d);
  SpaceFamily base = f;  // direction uses the family's own parameters
  return rate_exponent(v.coords, diagonal_direction(base, d));
}

inline double gv_rate(const SpaceFamily& f, double d) {
  return 2 * capacity(f) - ball_exponent(f, d);
}

// ------------------------------------------------------------ GV-MR bounds

struct BoundValue {
  double rate = 0;
  std::map<std::string, double> aux;
};

namespace boundsdetail {

inline double invert_increasing(const std::function<double(double)>& g, double lo, double hi,
                                double target) {
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (g(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double std_mr_delta_of_lambda1(double rho, double l) {
  return 2 * l * rho / (1 - l * l + l * rho);
}
inline double pos_mr_delta_of_lambda1(double rho, double l) {
  return 2 * l * rho * (1 - rho) / (rho * l + (1 - rho) * (1 - l * l));
}

inline BoundValue gvmr_simplex(const SpaceFamily& f, double d) {
  const bool std_kind = f.kind == SpaceKind::StdSimplex;
  const double top = std_kind ? 2.0 : 2.0 * (1 - f.rho);
  if (d < 0 || d >= top - 1e-13) throw std::domain_error("gvmr_rate: delta beyond the MR range");
  if (d == 0) {
    double tau0 = std_kind ? f.rho * f.rho / (1 + f.rho) : f.rho * f.rho;
    SpaceFamily g = make_family(constrained_kind(f.kind), f.rho, tau0, f.q);
    return {capacity(g), {{"tau_opt", tau0}, {"lambda1", 0.0}}};
  }
  auto dmap = [&](double l) {
    return std_kind ? std_mr_delta_of_lambda1(f.rho, l) : pos_mr_delta_of_lambda1(f.rho, l);
  };
  double l1 = invert_increasing(dmap, 1e-15, 1 - 1e-15, d);
  double tau = std_kind ? f.rho * f.rho / (1 + f.rho - l1)
                        : f.rho * f.rho / (1 - l1 * (1 - f.rho));
  SpaceFamily g = make_family(constrained_kind(f.kind), f.rho, tau, f.q);
  CriticalValues v = std_kind ? closedform::std_zeros_from_lambda1(f.rho, tau, d, l1)
                              : closedform::pos_ones_from_lambda1(f.rho, tau, d, l1);
  if (!closedform::admissible(v))
    throw SolverFailure("gvmr_rate: inadmissible lambda-system point", 1.0);
  double T = rate_exponent(v.coords, diagonal_direction(g, d));
  BoundValue out;
  out.rate = 2 * capacity(g) - T;
  out.aux = {{"tau_opt", tau}, {"lambda1", l1}, {"x", v.coords[0]}, {"y", v.coords[1]},
             {"z", v.coords[2]}, {"w", v.coords[3]}};
  return out;
}

// Eq.(41)-style linear tau solve given y, with the removable 0/0 limit at
// y = 1 evaluated by the derivative ratio.
inline double hyper_tau_of_y(int q, double y) {
  double s1 = closedform::hyper_sum(q, y, [](int) { return 1.0; });
  double sj = closedform::hyper_sum(q, y, [](int j) { return static_cast<double>(j); });
  double num = (q - 1) * (1 + s1) - 2 * sj;
  double den = q * (q - 1.0) - 2 * sj;
  if (std::fabs(den) < 1e-9) {
    double dnum = closedform::hyper_sum(q, y, [&](int j) { return ((q - 1.0) * j - 2.0 * j * j) / y; });
    double dden = closedform::hyper_sum(q, y, [&](int j) { return -2.0 * j * j / y; });
    return dnum / dden;
  }
  return num / den;
}

inline BoundValue gvmr_hypercube(const SpaceFamily& f, double d) {
  const int q = f.q;
  const double dmax = delta_max(f, BoundKind::GVMR);
  if (d < 0 || d > dmax + 1e-12) throw std::domain_error("gvmr_rate: delta beyond the MR range");
  if (d == 0) {
    double tau0 = 1.0 / q;
    return {capacity(f), {{"tau_opt", tau0}, {"y", 0.0}, {"w", (tau0 * (q - 1)) / (1 - tau0)}}};
  }
  double tau = (q + 1.0) / (4.0 * q - 2.0), y = 0.5, w = 0;
  const bool at_boundary = d > dmax - 1e-9;
  if (at_boundary) {
    y = 1.0;
    w = tau * (q - 1) / (1 - tau);
  } else {
    bool converged = false;
    for (int it = 0; it < 500; ++it) {
      w = tau * (q - 1) / (1 - tau);
      auto resid = [&](double yy) {
        return d * w * w + 2 * w * closedform::hyper_sum(q, yy, [&](int j) { return d - j; }) +
               d * (q - 1) +
               2 * closedform::hyper_sum(q, yy, [&](int j) { return (q - 1.0 - j) * (d - j); });
      };
      y = find_positive_root(resid, 1e-12, 1.0, RootPolicy::UniquePositive);
      double tnew = hyper_tau_of_y(q, y);
      double delta_tau = std::fabs(tnew - tau);
      tau = 0.5 * tau + 0.5 * tnew;  // damped substitution
      if (delta_tau < 1e-11) {
        converged = true;
        break;
      }
    }
    if (!converged) throw SolverFailure("gvmr_rate: hypercube fixed point did not converge", 1.0);
    w = tau * (q - 1) / (1 - tau);
  }
  double x = 1.0 / (w * w + (q - 1) + 2 * w * closedform::hyper_sum(q, y, [](int) { return 1.0; }) +
                    2 * closedform::hyper_sum(q, y, [&](int j) { return q - 1.0 - j; }));
  double T = -std::log2(x) - d * std::log2(y) - 2 * tau * std::log2(w);
  SpaceFamily g = make_family(SpaceKind::HypercubeZeros, 0, tau, q);
  BoundValue out;
  out.rate = 2 * capacity(g) - T;
  out.aux = {{"tau_opt", tau}, {"y", y}, {"w", w}, {"x", x}};
  return out;
}

}  // namespace boundsdetail

// GV-MR bound with the optimal constraint fraction. Simplex families ride the
// lambda1 parameterization inverted to the delta axis; the hypercube couples
// its tau equation with the critical system by damped substitution.
inline BoundValue gvmr_rate(const SpaceFamily& f, double d) {
  f.validate();
  switch (f.kind) {
    case SpaceKind::StdSimplex:
    case SpaceKind::PosSimplex:
    case SpaceKind::InvSimplex:
      return boundsdetail::gvmr_simplex(f, d);
    case SpaceKind::Hypercube:
      return boundsdetail::gvmr_hypercube(f, d);
    default:
      throw std::domain_error("gvmr_rate: MR bound is defined on the base families");
  }
}

// GV bound for the positive/inverted simplex optimized over rho.
inline BoundValue gv_rate_optimized_rho(const SpaceFamily& f, double d) {
  if (f.kind != SpaceKind::PosSimplex && f.kind != SpaceKind::InvSimplex)
    throw std::domain_error("gv_rate_optimized_rho: positive/inverted simplex only");
  if (d < 0 || d > 2) throw std::domain_error("gv_rate_optimized_rho: delta out of [0,2]");
  double rho = (3 * (2 - d) - std::sqrt(9 * d * d - 4 * d + 4)) / 8;
  BoundValue out;
  if (rho <= 1e-12) {
    out.rate = 0.0;
    out.aux = {{"rho_opt", 0.0}};
    return out;
  }
  if (d > 0) {
    // Corollary-1 route check: the capacity-side y1 = rho/(1-rho) satisfies
    // (y1)^2 = y* at the optimizing rho.
    auto v = closedform::pos_simplex(rho, d);
    double y1 = rho / (1 - rho);
    if (std::fabs(y1 * y1 - v.coords[1]) > 1e-8)
      throw std::logic_error("gv_rate_optimized_rho: (y1)^2 = y* consistency check failed");
  }
  SpaceFamily g = make_family(f.kind, rho);
  out.rate = gv_rate(g, d);
  out.aux = {{"rho_opt", rho}};
  return out;
}

inline double gvmr_opt_rho_of_lambda1(double l1) {
  double a = std::sqrt(1 - l1), b = std::sqrt(1 + 3 * l1);
  return 2 * a / (3 * a + b);
}

// GV-MR bound for the positive/inverted simplex optimized over both rho and
// tau, parameterized by lambda1 (or inverted from delta).
inline BoundValue gvmr_rate_optimized_rho_lambda(const SpaceFamily& f, double l1) {
  if (f.kind != SpaceKind::PosSimplex && f.kind != SpaceKind::InvSimplex)
    throw std::domain_error("gvmr_rate_optimized_rho: positive/inverted simplex only");
  if (l1 < 0 || l1 >= 1) throw std::domain_error("gvmr_rate_optimized_rho: lambda1 in [0,1)");
  double rho = gvmr_opt_rho_of_lambda1(l1);
  if (l1 == 0) {
    double tau0 = rho * rho;  // lambda1=0: tau_opt = rho^2/(1-0)
    SpaceFamily g = make_family(SpaceKind::PosSimplexOnes, rho, tau0);
    return {capacity(g), {{"rho_opt", rho}, {"tau_opt", tau0}, {"lambda1", 0.0}, {"delta", 0.0}}};
  }
  double tau = rho * rho / (1 - l1 * (1 - rho));
  double d = boundsdetail::pos_mr_delta_of_lambda1(rho, l1);
  SpaceFamily g = make_family(SpaceKind::PosSimplexOnes, rho, tau);
  CriticalValues v = closedform::pos_ones_from_lambda1(rho, tau, d, l1);
  if (!closedform::admissible(v))
    throw SolverFailure("gvmr_rate_optimized_rho: inadmissible lambda-system point", 1.0);
  double T = rate_exponent(v.coords, diagonal_direction(g, d));
  BoundValue out;
  out.rate = 2 * capacity(g) - T;
  out.aux = {{"rho_opt", rho}, {"tau_opt", tau}, {"lambda1", l1}, {"delta", d},
             {"w", v.coords[3]}, {"y", v.coords[1]}};
  return out;
}

inline BoundValue gvmr_rate_optimized_rho(const SpaceFamily& f, double d) {
  if (d < 0 || d >= 2) throw std::domain_error("gvmr_rate_optimized_rho: delta out of [0,2)");
  if (d == 0) return gvmr_rate_optimized_rho_lambda(f, 0.0);
  auto g = [&](double l) {
    return boundsdetail::pos_mr_delta_of_lambda1(gvmr_opt_rho_of_lambda1(l), l);
  };
  double l1 = boundsdetail::invert_increasing(g, 1e-15, 1 - 1e-15, d);
  return gvmr_rate_optimized_rho_lambda(f, l1);
}

// ------------------------------------------------------- comparison curves

inline double comparison_rate(BoundKind kind, const SpaceFamily& f, double d) {
  f.validate();
  switch (kind) {
    case BoundKind::SpherePacking: {
      if (f.kind != SpaceKind::StdSimplex)
        throw std::domain_error("sphere-packing bound: standard simplex only");
      if (d < 0 || d > 2) throw std::domain_error("sphere-packing bound: delta out of [0,2]");
      double b = d / 2;
      double first = (1 + b + f.rho) * entropy2(f.rho / (1 + b + f.rho));
      double second = (b + f.rho) <= 0 ? 0.0 : (b + f.rho) * entropy2(f.rho / (b + f.rho));
      return first - second;
    }
    case BoundKind::ConstantWeightGV: {
      if (f.kind != SpaceKind::StdSimplex || f.rho < 1)
        throw std::domain_error("constant-weight GV: standard simplex with rho >= 1 only");
      if (d < 0 || d > 2) throw std::domain_error("constant-weight GV: delta out of [0,2]");
      double cap = f.rho * entropy2(1 / f.rho);
      double d1 = (f.rho == 1) ? 0.0 : std::min(d / 2, (f.rho - 1) / f.rho);
      double tail = (f.rho == 1) ? 0.0 : (f.rho - 1) * entropy2(d1 / (f.rho - 1));
      double T = cap + entropy2(d1) + tail;
      return 2 * cap - T;
    }
    case BoundKind::KolesnikKrachkovsky:
      if (f.kind != SpaceKind::PosSimplex && f.kind != SpaceKind::InvSimplex)
        throw std::domain_error("KK bound: positive/inverted simplex only");
      if (d < 0 || d > 0.5) throw std::domain_error("KK bound: delta out of [0,1/2]");
      return 1 - entropy2(d);
    case BoundKind::Lee:
      if (f.kind != SpaceKind::Hypercube || f.q != 4)
        throw std::domain_error("Lee comparison: hypercube with q=4 only");
      if (d < 0 || d > 1) throw std::domain_error("Lee comparison: delta out of [0,1]");
      return xlog2(2 - d) + xlog2(d);
    case BoundKind::Capacity:
      return capacity(f);
    default:
      throw std::domain_error("comparison_rate: GV/GVMR are not comparison bounds");
  }
}

// ------------------------------------------------------------- rate curves

struct CurvePoint {
  double delta;
  double rate;
  std::map<std::string, double> aux;
};
struct CurveGap {
  double delta;
  std::string reason;
};
struct RateCurve {
  SpaceFamily family;
  BoundKind bound;
  bool optimized_rho = false;
  std::vector<CurvePoint> samples;
  std::vector<CurveGap> gaps;
};

inline BoundValue evaluate_bound(const SpaceFamily& f, BoundKind kind, double d,
                                 bool optimized_rho) {
  switch (kind) {
    case BoundKind::GV:
      if (optimized_rho) return gv_rate_optimized_rho(f, d);
      return {gv_rate(f, d), {}};
    case BoundKind::GVMR:
      if (optimized_rho) return gvmr_rate_optimized_rho(f, d);
      return gvmr_rate(f, d);
    default:
      return {comparison_rate(kind, f, d), {}};
  }
}

inline RateCurve rate_curve(const SpaceFamily& f, BoundKind kind, const std::vector<double>& grid,
                            bool optimized_rho = false) {
  if (grid.empty()) throw std::invalid_argument("rate_curve: empty grid");
  for (size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("rate_curve: grid not increasing");
  RateCurve out;
  out.family = f;
  out.bound = kind;
  out.optimized_rho = optimized_rho;
  for (double d : grid) {
    try {
      BoundValue v = evaluate_bound(f, kind, d, optimized_rho);
      if (!std::isfinite(v.rate)) throw std::runtime_error("non-finite rate");
      out.samples.push_back({d, v.rate, std::move(v.aux)});
    } catch (const std::exception& e) {
      out.gaps.push_back({d, e.what()});
    }
  }
  return out;
}

}  // namespace l1gv
