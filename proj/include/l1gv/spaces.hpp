#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "l1gv/bigint.hpp"

namespace l1gv {

enum class SpaceKind {
  StdSimplex,       // u_i >= 0, sum = n, dimension r
  StdSimplexZeros,  // StdSimplex with exactly p zero coordinates
  PosSimplex,       // u_i >= 1, sum = n
  PosSimplexOnes,   // PosSimplex with exactly p coordinates equal to 1
  InvSimplex,       // 1 <= u_1 < ... < u_r <= n
  Hypercube,        // 0 <= u_i <= q-1, length n
  HypercubeZeros,   // Hypercube with exactly p zero coordinates
};

inline bool is_constrained(SpaceKind k) {
  return k == SpaceKind::StdSimplexZeros || k == SpaceKind::PosSimplexOnes ||
         k == SpaceKind::HypercubeZeros;
}
inline bool is_hypercube(SpaceKind k) {
  return k == SpaceKind::Hypercube || k == SpaceKind::HypercubeZeros;
}
inline SpaceKind base_kind(SpaceKind k) {
  switch (k) {
    case SpaceKind::StdSimplexZeros: return SpaceKind::StdSimplex;
    case SpaceKind::PosSimplexOnes: return SpaceKind::PosSimplex;
    case SpaceKind::HypercubeZeros: return SpaceKind::Hypercube;
    default: return k;
  }
}
inline SpaceKind constrained_kind(SpaceKind k) {
  switch (k) {
    case SpaceKind::StdSimplex: return SpaceKind::StdSimplexZeros;
    case SpaceKind::PosSimplex: return SpaceKind::PosSimplexOnes;
    case SpaceKind::Hypercube: return SpaceKind::HypercubeZeros;
    default: return k;
  }
}

inline std::string kind_name(SpaceKind k) {
  switch (k) {
    case SpaceKind::StdSimplex: return "std-simplex";
    case SpaceKind::StdSimplexZeros: return "std-simplex-zeros";
    case SpaceKind::PosSimplex: return "pos-simplex";
    case SpaceKind::PosSimplexOnes: return "pos-simplex-ones";
    case SpaceKind::InvSimplex: return "inv-simplex";
    case SpaceKind::Hypercube: return "hypercube";
    case SpaceKind::HypercubeZeros: return "hypercube-zeros";
  }
  return "?";
}

// Asymptotic family description: dimension r = floor(rho*n), constraint count
// p = floor(tau*n), alphabet q for hypercubes.
struct SpaceFamily {
  SpaceKind kind = SpaceKind::StdSimplex;
  double rho = 0.0;
  double tau = 0.0;
  int q = 0;

  void validate() const {
    switch (kind) {
      case SpaceKind::StdSimplex:
        if (rho < 0) throw std::domain_error("StdSimplex: rho must be >= 0");
        break;
      case SpaceKind::StdSimplexZeros:
        if (rho < 0 || tau < 0 || tau > rho)
          throw std::domain_error("StdSimplexZeros: need 0 <= tau <= rho");
        break;
      case SpaceKind::PosSimplex:
      case SpaceKind::InvSimplex:
        if (rho < 0 || rho > 1) throw std::domain_error("Pos/InvSimplex: need 0 <= rho <= 1");
        break;
      case SpaceKind::PosSimplexOnes:
        if (rho < 0 || rho > 1 || tau < 0 || tau > rho)
          throw std::domain_error("PosSimplexOnes: need 0 <= tau <= rho <= 1");
        break;
      case SpaceKind::Hypercube:
        if (q < 2) throw std::domain_error("Hypercube: need q >= 2");
        break;
      case SpaceKind::HypercubeZeros:
        if (q < 2 || tau < 0 || tau > 1)
          throw std::domain_error("HypercubeZeros: need q >= 2 and 0 <= tau <= 1");
        break;
    }
  }
};

inline SpaceFamily make_family(SpaceKind kind, double rho = 0, double tau = 0, int q = 0) {
  SpaceFamily f{kind, rho, tau, q};
  f.validate();
  return f;
}

// Fixed finite instance parameters (n is the weight for simplex kinds, the
// value bound for InvSimplex, and the length for hypercube kinds).
struct Finite {
  long n = 0;
  long r = 0;  // simplex dimension; unused for hypercubes
  long p = 0;  // constraint count (Zeros/Ones kinds)
};

inline Finite finite_for(const SpaceFamily& f, long n) {
  Finite fin;
  fin.n = n;
  fin.r = is_hypercube(f.kind) ? 0 : static_cast<long>(std::floor(f.rho * n + 1e-9));
  fin.p = is_constrained(f.kind) ? static_cast<long>(std::floor(f.tau * n + 1e-9)) : 0;
  return fin;
}

// Exact cardinalities. Out-of-range finite parameters give 0, not an error.
inline Int space_size(const SpaceFamily& f, const Finite& fin) {
  const long n = fin.n, r = fin.r, p = fin.p;
  if (n < 0) return 0;
  switch (f.kind) {
    case SpaceKind::StdSimplex:
      if (r == 0) return n == 0 ? 1 : 0;
      return binomial(n + r - 1, r - 1);
    case SpaceKind::StdSimplexZeros:
      if (r == 0) return (n == 0 && p == 0) ? 1 : 0;
      if (p == r) return n == 0 ? 1 : 0;  // all-zeros corner, outside the binomial product
      return binomial(r, p) * binomial(n - 1, r - p - 1);
    case SpaceKind::PosSimplex:
      if (r == 0) return n == 0 ? 1 : 0;
      return binomial(n - 1, r - 1);
    case SpaceKind::PosSimplexOnes:
      if (r == 0) return (n == 0 && p == 0) ? 1 : 0;
      if (p == r) return n == r ? 1 : 0;  // all-ones corner, outside the binomial product
      return binomial(r, p) * binomial(n - r - 1, r - p - 1);
    case SpaceKind::InvSimplex:
      return binomial(n, r);
    case SpaceKind::Hypercube:
      return ipow(f.q, n);
    case SpaceKind::HypercubeZeros:
      return binomial(n, p) * ipow(f.q - 1, n - p);
  }
  return 0;
}

inline long zero_count(const std::vector<int>& v) {
  long c = 0;
  for (int x : v) c += (x == 0);
  return c;
}
inline long one_count(const std::vector<int>& v) {
  long c = 0;
  for (int x : v) c += (x == 1);
  return c;
}

// Constraint predicate checked from the raw vector (not from the enumerator).
inline bool member_constraint(const SpaceFamily& f, const Finite& fin, const std::vector<int>& v) {
  switch (f.kind) {
    case SpaceKind::StdSimplexZeros:
    case SpaceKind::HypercubeZeros:
      return zero_count(v) == fin.p;
    case SpaceKind::PosSimplexOnes:
      return one_count(v) == fin.p;
    default:
      return true;
  }
}

struct EnumerationCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Complete duplicate-free lexicographically sorted member list of the BASE
// space (constrained kinds enumerate their base space; filter separately).
inline std::vector<std::vector<int>> enumerate_space(const SpaceFamily& f, const Finite& fin,
                                                     long cap = 1000000) {
  SpaceFamily base = f;
  base.kind = base_kind(f.kind);
  Int sz = space_size(base, fin);
  if (sz > cap)
    throw EnumerationCapExceeded("enumerate_space: size " + sz.str() + " exceeds cap " +
                                 std::to_string(cap));
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  switch (base.kind) {
    case SpaceKind::StdSimplex: {
      std::function<void(long, long)> rec = [&](long rem, long k) {
        if (k == 0) {
          if (rem == 0) out.push_back(cur);
          return;
        }
        if (k == 1) {
          cur.push_back(static_cast<int>(rem));
          out.push_back(cur);
          cur.pop_back();
          return;
        }
        for (long v = 0; v <= rem; ++v) {
          cur.push_back(static_cast<int>(v));
          rec(rem - v, k - 1);
          cur.pop_back();
        }
      };
      rec(fin.n, fin.r);
      break;
    }
    case SpaceKind::PosSimplex: {
      if (fin.n < fin.r) break;
      std::function<void(long, long)> rec = [&](long rem, long k) {
        if (k == 0) {
          if (rem == 0) out.push_back(cur);
          return;
        }
        if (k == 1) {
          if (rem >= 1) {
            cur.push_back(static_cast<int>(rem));
            out.push_back(cur);
            cur.pop_back();
          }
          return;
        }
        for (long v = 1; v + (k - 1) <= rem; ++v) {
          cur.push_back(static_cast<int>(v));
          rec(rem - v, k - 1);
          cur.pop_back();
        }
      };
      rec(fin.n, fin.r);
      break;
    }
    case SpaceKind::InvSimplex: {
      std::function<void(long, long)> rec = [&](long lo, long k) {
        if (k == 0) {
          out.push_back(cur);
          return;
        }
        for (long v = lo; v + (k - 1) <= fin.n; ++v) {
          cur.push_back(static_cast<int>(v));
          rec(v + 1, k - 1);
          cur.pop_back();
        }
      };
      rec(1, fin.r);
      break;
    }
    case SpaceKind::Hypercube: {
      std::function<void(long)> rec = [&](long k) {
        if (k == 0) {
          out.push_back(cur);
          return;
        }
        for (int v = 0; v < f.q; ++v) {
          cur.push_back(v);
          rec(k - 1);
          cur.pop_back();
        }
      };
      rec(fin.n);
      break;
    }
    default:
      break;
  }
  return out;  // recursion order is already lexicographic
}

inline long l1_distance(const std::vector<int>& u, const std::vector<int>& v) {
  long d = 0;
  for (size_t i = 0; i < u.size(); ++i) d += std::abs(u[i] - v[i]);
  return d;
}

}  // namespace l1gv
