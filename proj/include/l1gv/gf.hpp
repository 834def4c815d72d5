#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "l1gv/poly.hpp"
#include "l1gv/spaces.hpp"

namespace l1gv {

// Rational generating function F = G/H with exact integer polynomials.
struct RationalGF {
  SparsePoly numer;
  SparsePoly denom;
  std::vector<std::string> index_names;  // meaning of each exponent position
};

namespace gfdetail {

inline SparsePoly var(int nv, int i, const std::vector<std::string>& labels) {
  Exponents e(nv, 0);
  e[i] = 1;
  return SparsePoly::monomial(nv, e, 1, labels);
}
inline SparsePoly one(int nv, const std::vector<std::string>& labels) {
  return SparsePoly::constant(nv, 1, labels);
}

}  // namespace gfdetail

// Exact pair-count generating functions with all indices independent.
//
// Simplex kinds index (n1, n2, r, s [, p1, p2]) by variables (x1, x2, y, z
// [, w1, w2]); hypercube kinds index (n, s [, p1, p2]) by (x, y [, w1, w2]).
// In every case F = G/H enumerates N(...) exactly; the constrained-simplex
// denominators share the factor D = (1-x1x2)(1-x1z)(1-x2z).
inline RationalGF pair_count_gf(SpaceKind kind, int q = 0) {
  using namespace gfdetail;
  switch (kind) {
    case SpaceKind::StdSimplex: {
      const std::vector<std::string> L{"x1", "x2", "y", "z"};
      auto x1 = var(4, 0, L), x2 = var(4, 1, L), y = var(4, 2, L), z = var(4, 3, L);
      auto I = one(4, L);
      auto D = (I - x1 * x2) * (I - x1 * z) * (I - x2 * z);
      auto H = D - y * (I - x1 * x2 * z * z);
      return {D, H, {"n1", "n2", "r", "s"}};
    }
    case SpaceKind::PosSimplex: {
      const std::vector<std::string> L{"x1", "x2", "y", "z"};
      auto x1 = var(4, 0, L), x2 = var(4, 1, L), y = var(4, 2, L), z = var(4, 3, L);
      auto I = one(4, L);
      auto D = (I - x1 * x2) * (I - x1 * z) * (I - x2 * z);
      auto H = D - y * x1 * x2 * (I - x1 * x2 * z * z);
      return {D, H, {"n1", "n2", "r", "s"}};
    }
    case SpaceKind::StdSimplexZeros: {
      const std::vector<std::string> L{"x1", "x2", "y", "z", "w1", "w2"};
      auto x1 = var(6, 0, L), x2 = var(6, 1, L), y = var(6, 2, L), z = var(6, 3, L),
           w1 = var(6, 4, L), w2 = var(6, 5, L);
      auto I = one(6, L);
      auto D = (I - x1 * x2) * (I - x1 * z) * (I - x2 * z);
      auto B = w1 * w2 * D + w1 * x2 * z * (I - x1 * x2) * (I - x1 * z) +
               w2 * x1 * z * (I - x1 * x2) * (I - x2 * z) + x1 * x2 * (I - x1 * x2 * z * z);
      return {D, D - y * B, {"n1", "n2", "r", "s", "p1", "p2"}};
    }
    case SpaceKind::PosSimplexOnes: {
      const std::vector<std::string> L{"x1", "x2", "y", "z", "w1", "w2"};
      auto x1 = var(6, 0, L), x2 = var(6, 1, L), y = var(6, 2, L), z = var(6, 3, L),
           w1 = var(6, 4, L), w2 = var(6, 5, L);
      auto I = one(6, L);
      auto D = (I - x1 * x2) * (I - x1 * z) * (I - x2 * z);
      auto B = w1 * w2 * x1 * x2 * D + w1 * x1 * x2 * x2 * z * (I - x1 * x2) * (I - x1 * z) +
               w2 * x1 * x1 * x2 * z * (I - x1 * x2) * (I - x2 * z) +
               x1 * x1 * x2 * x2 * (I - x1 * x2 * z * z);
      return {D, D - y * B, {"n1", "n2", "r", "s", "p1", "p2"}};
    }
    case SpaceKind::Hypercube: {
      if (q < 2) throw std::invalid_argument("pair_count_gf: hypercube needs q >= 2");
      const std::vector<std::string> L{"x", "y"};
      SparsePoly inner = SparsePoly::constant(2, q, L);
      for (int j = 1; j <= q - 1; ++j)
        inner.add_term({0, j}, 2 * (q - j));
      auto H = one(2, L) - gfdetail::var(2, 0, L) * inner;
      return {one(2, L), H, {"n", "s"}};
    }
    case SpaceKind::HypercubeZeros: {
      if (q < 2) throw std::invalid_argument("pair_count_gf: hypercube needs q >= 2");
      const std::vector<std::string> L{"x", "y", "w1", "w2"};
      auto x = var(4, 0, L), y = var(4, 1, L), w1 = var(4, 2, L), w2 = var(4, 3, L);
      auto I = one(4, L);
      SparsePoly inner = w1 * w2 + SparsePoly::constant(4, q - 1, L);
      for (int j = 1; j <= q - 1; ++j) {
        SparsePoly yj = SparsePoly::monomial(4, {0, j, 0, 0}, 1, L);
        inner = inner + (w1 + w2) * yj + yj.scaled(2 * (q - 1 - j));
      }
      return {I, I - x * inner, {"n", "s", "p1", "p2"}};
    }
    case SpaceKind::InvSimplex:
      throw std::domain_error(
          "pair_count_gf: the inverted simplex has no exact rational pair-count GF "
          "(its truncation shifts depend on |n1-n2|); use the pos-simplex family "
          "for asymptotics");
  }
  throw std::logic_error("pair_count_gf: unhandled kind");
}

// Reduced diagonal denominators with the symmetric pair identified (x1=x2=x,
// w1=w2=w) and unit factors removed; these carry the critical-point systems.
inline SparsePoly diagonal_denominator(SpaceKind kind, int q = 0) {
  using namespace gfdetail;
  switch (kind) {
    case SpaceKind::StdSimplex: {
      // (1-x^2)(1-xz) - y(1+xz)
      const std::vector<std::string> L{"x", "y", "z"};
      auto x = var(3, 0, L), y = var(3, 1, L), z = var(3, 2, L);
      auto I = one(3, L);
      return (I - x * x) * (I - x * z) - y * (I + x * z);
    }
    case SpaceKind::PosSimplex:
    case SpaceKind::InvSimplex: {
      // (1-x^2)(1-xz) - y x^2 (1+xz)
      const std::vector<std::string> L{"x", "y", "z"};
      auto x = var(3, 0, L), y = var(3, 1, L), z = var(3, 2, L);
      auto I = one(3, L);
      return (I - x * x) * (I - x * z) - y * x * x * (I + x * z);
    }
    case SpaceKind::StdSimplexZeros: {
      // (1-x^2)(1-xz) - y (w^2(1-x^2)(1-xz) + 2wxz(1-x^2) + x^2(1+xz))
      const std::vector<std::string> L{"x", "y", "z", "w"};
      auto x = var(4, 0, L), y = var(4, 1, L), z = var(4, 2, L), w = var(4, 3, L);
      auto I = one(4, L);
      auto inner = w * w * (I - x * x) * (I - x * z) + (w * x * z * (I - x * x)).scaled(2) +
                   x * x * (I + x * z);
      return (I - x * x) * (I - x * z) - y * inner;
    }
    case SpaceKind::PosSimplexOnes: {
      // (1-x^2)(1-xz) - y x^2 (w^2(1-x^2)(1-xz) + 2wxz(1-x^2) + x^2(1+xz))
      const std::vector<std::string> L{"x", "y", "z", "w"};
      auto x = var(4, 0, L), y = var(4, 1, L), z = var(4, 2, L), w = var(4, 3, L);
      auto I = one(4, L);
      auto inner = w * w * (I - x * x) * (I - x * z) + (w * x * z * (I - x * x)).scaled(2) +
                   x * x * (I + x * z);
      return (I - x * x) * (I - x * z) - y * x * x * inner;
    }
    case SpaceKind::Hypercube: {
      // 1 - x (q + 2 sum_{j<q} (q-j) y^j)
      if (q < 2) throw std::invalid_argument("diagonal_denominator: need q >= 2");
      const std::vector<std::string> L{"x", "y"};
      SparsePoly inner = SparsePoly::constant(2, q, L);
      for (int j = 1; j <= q - 1; ++j) inner.add_term({0, j}, 2 * (q - j));
      return one(2, L) - var(2, 0, L) * inner;
    }
    case SpaceKind::HypercubeZeros: {
      // 1 - x (w^2 + (q-1) + 2w sum y^j + 2 sum (q-1-j) y^j)
      if (q < 2) throw std::invalid_argument("diagonal_denominator: need q >= 2");
      const std::vector<std::string> L{"x", "y", "w"};
      auto x = var(3, 0, L), w = var(3, 2, L);
      SparsePoly inner = w * w + SparsePoly::constant(3, q - 1, L);
      for (int j = 1; j <= q - 1; ++j) {
        SparsePoly yj = SparsePoly::monomial(3, {0, j, 0}, 1, L);
        inner = inner + (w * yj).scaled(2) + yj.scaled(2 * (q - 1 - j));
      }
      return one(3, L) - x * inner;
    }
  }
  throw std::logic_error("diagonal_denominator: unhandled kind");
}

// Critical direction matching diagonal_denominator's variable order, given the
// family parameters and a distance fraction delta. The x slot carries 2 (the
// pair tracks x^{2n}) and the w slot carries 2*tau (w^{2p}).
inline std::vector<double> diagonal_direction(const SpaceFamily& f, double delta) {
  switch (f.kind) {
    case SpaceKind::StdSimplex:
    case SpaceKind::PosSimplex:
    case SpaceKind::InvSimplex:
      return {2.0, f.rho, delta};
    case SpaceKind::StdSimplexZeros:
    case SpaceKind::PosSimplexOnes:
      return {2.0, f.rho, delta, 2.0 * f.tau};
    case SpaceKind::Hypercube:
      return {1.0, delta};
    case SpaceKind::HypercubeZeros:
      return {1.0, delta, 2.0 * f.tau};
  }
  throw std::logic_error("diagonal_direction: unhandled kind");
}

}  // namespace l1gv
