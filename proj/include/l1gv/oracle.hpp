#pragma once

#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "l1gv/bigint.hpp"
#include "l1gv/spaces.hpp"

namespace l1gv {

struct OracleCaps {
  long enum_cap = 1000000;  // brute-force space size cap
  long dp_n_cap = 40;       // DP weight/length cap
};

struct DpCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shared finite parameters of a pair query: simplex dimension r and the
// per-side constraint counts (ignored by unconstrained kinds).
struct PairParams {
  long r = 0;
  long p1 = 0;
  long p2 = 0;
};

struct CountTable {
  SpaceKind kind;
  long n1 = 0, n2 = 0, r = 0, q = 0, p1 = 0, p2 = 0;
  std::vector<Int> counts;  // index = distance s

  Int at(long s) const { return s >= 0 && s < static_cast<long>(counts.size()) ? counts[s] : 0; }
  Int total(long d) const {
    Int t = 0;
    for (long s = 0; s <= d && s < static_cast<long>(counts.size()); ++s) t += counts[s];
    return t;
  }
  Int total_all() const { return total(static_cast<long>(counts.size()) - 1); }
};

namespace dpdetail {

// Layered coordinate-by-coordinate DP for the weight simplices. Tracks
// (weight used by u, weight used by v, accumulated distance, marks), where a
// mark counts coordinates equal to `base` (0 for StdSimplex, 1 for
// PosSimplex). The per-coordinate sums over values are folded with running
// prefix accumulators so each cell costs O(1).
inline std::vector<Int> simplex_layers(long n1, long n2, long r, long smax, long p1, long p2,
                                       int base, bool marks) {
  const long A = n1 + 1, B = n2 + 1, S = smax + 1;
  const long C1 = marks ? p1 + 1 : 1, C2 = marks ? p2 + 1 : 1;
  const long CC = C1 * C2;
  const size_t total = static_cast<size_t>(A) * B * S * CC;
  auto id = [&](long a, long b, long s, long c1, long c2) {
    return (((static_cast<size_t>(a) * B + b) * S + s) * C1 + c1) * C2 + c2;
  };
  std::vector<Int> L(total), next(total);
  std::vector<Int> P(total), U(total), V(total), W1, W2;
  if (marks) {
    W1.resize(total);
    W2.resize(total);
  }
  L[id(0, 0, 0, 0, 0)] = 1;

  for (long k = 1; k <= r; ++k) {
    // P(a,b,*) = L(a,b,*) + P(a-1,b-1,*): diagonal prefix
    for (long a = 0; a < A; ++a)
      for (long b = 0; b < B; ++b) {
        const size_t cur = id(a, b, 0, 0, 0);
        if (a > 0 && b > 0) {
          const size_t prev = id(a - 1, b - 1, 0, 0, 0);
          for (long t = 0; t < S * CC; ++t) P[cur + t] = L[cur + t] + P[prev + t];
        } else {
          for (long t = 0; t < S * CC; ++t) P[cur + t] = L[cur + t];
        }
      }
    // U(a,b,s,*) = P(a,b-1,s-1,*) + U(a,b-1,s-1,*): shifted geometric in (b,s)
    for (long a = 0; a < A; ++a)
      for (long b = 0; b < B; ++b)
        for (long s = 0; s < S; ++s) {
          const size_t cur = id(a, b, s, 0, 0);
          if (b > 0 && s > 0) {
            const size_t prev = id(a, b - 1, s - 1, 0, 0);
            for (long t = 0; t < CC; ++t) U[cur + t] = P[prev + t] + U[prev + t];
          } else {
            for (long t = 0; t < CC; ++t) U[cur + t] = 0;
          }
        }
    // V mirrors U in (a,s)
    for (long a = 0; a < A; ++a)
      for (long b = 0; b < B; ++b)
        for (long s = 0; s < S; ++s) {
          const size_t cur = id(a, b, s, 0, 0);
          if (a > 0 && s > 0) {
            const size_t prev = id(a - 1, b, s - 1, 0, 0);
            for (long t = 0; t < CC; ++t) V[cur + t] = P[prev + t] + V[prev + t];
          } else {
            for (long t = 0; t < CC; ++t) V[cur + t] = 0;
          }
        }
    if (marks) {
      // W1(a,b,s,*) = L(a,b-1,s-1,*) + W1(a,b-1,s-1,*)  (sum_j L(a, b-j, s-j))
      for (long a = 0; a < A; ++a)
        for (long b = 0; b < B; ++b)
          for (long s = 0; s < S; ++s) {
            const size_t cur = id(a, b, s, 0, 0);
            if (b > 0 && s > 0) {
              const size_t prev = id(a, b - 1, s - 1, 0, 0);
              for (long t = 0; t < CC; ++t) W1[cur + t] = L[prev + t] + W1[prev + t];
            } else {
              for (long t = 0; t < CC; ++t) W1[cur + t] = 0;
            }
          }
      for (long a = 0; a < A; ++a)
        for (long b = 0; b < B; ++b)
          for (long s = 0; s < S; ++s) {
            const size_t cur = id(a, b, s, 0, 0);
            if (a > 0 && s > 0) {
              const size_t prev = id(a - 1, b, s - 1, 0, 0);
              for (long t = 0; t < CC; ++t) W2[cur + t] = L[prev + t] + W2[prev + t];
            } else {
              for (long t = 0; t < CC; ++t) W2[cur + t] = 0;
            }
          }
    }
    // assemble the next layer
    const long m = base;
    for (long a = 0; a < A; ++a)
      for (long b = 0; b < B; ++b)
        for (long s = 0; s < S; ++s)
          for (long c1 = 0; c1 < C1; ++c1)
            for (long c2 = 0; c2 < C2; ++c2) {
              Int acc = 0;
              if (!marks) {
                // all coordinate values >= base
                if (a >= base && b >= base) {
                  const size_t e = id(a - base, b - base, s, 0, 0);
                  acc = P[e] + U[e] + V[e];
                }
              } else {
                // u = v = m (both marked)
                if (a >= m && b >= m && c1 >= 1 && c2 >= 1)
                  acc += L[id(a - m, b - m, s, c1 - 1, c2 - 1)];
                // u = m marked, v = m+j
                if (a >= m && b >= m && c1 >= 1) acc += W1[id(a - m, b - m, s, c1 - 1, c2)];
                // v = m marked, u = m+j
                if (a >= m && b >= m && c2 >= 1) acc += W2[id(a - m, b - m, s, c1, c2 - 1)];
                // both >= m+1, no marks
                if (a >= m + 1 && b >= m + 1) {
                  const size_t e = id(a - m - 1, b - m - 1, s, c1, c2);
                  acc += P[e] + U[e] + V[e];
                }
              }
              next[id(a, b, s, c1, c2)] = std::move(acc);
            }
    L.swap(next);
  }
  return L;
}

// Inverted simplex: truncate the largest element. N(m1,m2,k,s) counts pairs
// of strictly increasing vectors bounded by m1 and m2. The rectangle sum over
// the new bounds folds into a 2-D prefix with one diagonal correction term.
inline std::vector<Int> inv_simplex_layers(long n1, long n2, long r, long smax) {
  const long A = n1 + 1, B = n2 + 1, S = smax + 1;
  auto id = [&](long a, long b, long s) { return (static_cast<size_t>(a) * B + b) * S + s; };
  const size_t total = static_cast<size_t>(A) * B * S;
  std::vector<Int> M(total), C(total), next(total);
  for (long a = 0; a < A; ++a)
    for (long b = 0; b < B; ++b) M[id(a, b, 0)] = 1;
  for (long k = 1; k <= r; ++k) {
    for (long a = 0; a < A; ++a)
      for (long b = 0; b < B; ++b)
        for (long s = 0; s < S; ++s) {
          Int acc = 0;
          if (a > 0) acc += C[id(a - 1, b, s)];
          if (b > 0) acc += C[id(a, b - 1, s)];
          if (a > 0 && b > 0) acc -= C[id(a - 1, b - 1, s)];
          const long shift = std::abs(a - b);
          if (s - shift >= 0) acc += M[id(a, b, s - shift)];
          C[id(a, b, s)] = std::move(acc);
        }
    for (long a = 0; a < A; ++a)
      for (long b = 0; b < B; ++b)
        for (long s = 0; s < S; ++s)
          next[id(a, b, s)] = (a > 0 && b > 0) ? C[id(a - 1, b - 1, s)] : Int(0);
    M.swap(next);
  }
  return M;
}

// Hypercube: N(n,s) = q N(n-1,s) + 2 sum_{j<q} (q-j) N(n-1,s-j)
inline std::vector<Int> hypercube_layers(long n, long smax, int q) {
  std::vector<Int> row(smax + 1), next(smax + 1);
  row[0] = 1;
  for (long k = 1; k <= n; ++k) {
    for (long s = 0; s <= smax; ++s) {
      Int acc = row[s] * q;
      for (int j = 1; j <= q - 1 && j <= s; ++j) acc += 2 * (q - j) * row[s - j];
      next[s] = std::move(acc);
    }
    row.swap(next);
  }
  return row;
}

// Constrained hypercube, marks on zero coordinates (Lemma-level recursion).
inline std::vector<Int> hypercube_zeros_layers(long n, long smax, int q, long p1, long p2) {
  const long S = smax + 1, C1 = p1 + 1, C2 = p2 + 1;
  auto id = [&](long s, long c1, long c2) { return (static_cast<size_t>(s) * C1 + c1) * C2 + c2; };
  std::vector<Int> L(static_cast<size_t>(S) * C1 * C2), next(L.size());
  L[id(0, 0, 0)] = 1;
  for (long k = 1; k <= n; ++k) {
    for (long s = 0; s < S; ++s)
      for (long c1 = 0; c1 < C1; ++c1)
        for (long c2 = 0; c2 < C2; ++c2) {
          Int acc = 0;
          if (c1 >= 1 && c2 >= 1) acc += L[id(s, c1 - 1, c2 - 1)];           // u=v=0
          for (int j = 1; j <= q - 1 && j <= s; ++j) {
            if (c1 >= 1) acc += L[id(s - j, c1 - 1, c2)];                    // u=0, v=j
            if (c2 >= 1) acc += L[id(s - j, c1, c2 - 1)];                    // u=j, v=0
            acc += 2 * (q - 1 - j) * L[id(s - j, c1, c2)];                   // u,v >= 1 apart j
          }
          acc += (q - 1) * L[id(s, c1, c2)];                                 // u=v>=1
          next[id(s, c1, c2)] = std::move(acc);
        }
    L.swap(next);
  }
  return L;
}

}  // namespace dpdetail

inline long max_pair_distance(const SpaceFamily& f, long n1, long n2, const PairParams& pp) {
  switch (base_kind(f.kind)) {
    case SpaceKind::InvSimplex:
      return pp.r * std::max(n1, n2);
    case SpaceKind::Hypercube:
      return (f.q - 1) * std::min(n1, n2);
    default:
      return n1 + n2;  // weight simplices
  }
}

// Exact DP pair-count table over s = 0..smax (smax < 0 picks the diameter).
inline CountTable count_table_dp(const SpaceFamily& f, long n1, long n2, const PairParams& pp,
                                 long smax = -1, const OracleCaps& caps = {}) {
  f.validate();
  if (n1 > caps.dp_n_cap || n2 > caps.dp_n_cap)
    throw DpCapExceeded("count_table_dp: n exceeds DP cap");
  if (n1 < 0 || n2 < 0 || pp.r < 0 || pp.p1 < 0 || pp.p2 < 0)
    throw std::invalid_argument("count_table_dp: negative parameter");
  CountTable out;
  out.kind = f.kind;
  out.n1 = n1;
  out.n2 = n2;
  out.r = pp.r;
  out.q = f.q;
  out.p1 = pp.p1;
  out.p2 = pp.p2;
  if (smax < 0) {
    switch (base_kind(f.kind)) {
      case SpaceKind::Hypercube: smax = (f.q - 1) * std::min(n1, n2); break;
      case SpaceKind::InvSimplex: smax = pp.r * std::max(n1, n2); break;
      default: smax = n1 + n2; break;
    }
  }
  out.counts.resize(smax + 1);
  switch (f.kind) {
    case SpaceKind::StdSimplex:
    case SpaceKind::PosSimplex:
    case SpaceKind::StdSimplexZeros:
    case SpaceKind::PosSimplexOnes: {
      const bool marks = is_constrained(f.kind);
      const int base = (base_kind(f.kind) == SpaceKind::PosSimplex) ? 1 : 0;
      auto L = dpdetail::simplex_layers(n1, n2, pp.r, smax, pp.p1, pp.p2, base, marks);
      const long C1 = marks ? pp.p1 + 1 : 1, C2 = marks ? pp.p2 + 1 : 1;
      const long B = n2 + 1, S = smax + 1;
      for (long s = 0; s <= smax; ++s) {
        const size_t e =
            (((static_cast<size_t>(n1) * B + n2) * S + s) * C1 + (marks ? pp.p1 : 0)) * C2 +
            (marks ? pp.p2 : 0);
        out.counts[s] = L[e];
      }
      break;
    }
    case SpaceKind::InvSimplex: {
      auto M = dpdetail::inv_simplex_layers(n1, n2, pp.r, smax);
      const long B = n2 + 1, S = smax + 1;
      for (long s = 0; s <= smax; ++s)
        out.counts[s] = M[(static_cast<size_t>(n1) * B + n2) * S + s];
      break;
    }
    case SpaceKind::Hypercube: {
      if (n1 != n2)
        throw std::invalid_argument("count_table_dp: hypercube pairs share one length n");
      auto row = dpdetail::hypercube_layers(n1, smax, f.q);
      out.counts = std::move(row);
      break;
    }
    case SpaceKind::HypercubeZeros: {
      if (n1 != n2)
        throw std::invalid_argument("count_table_dp: hypercube pairs share one length n");
      auto L = dpdetail::hypercube_zeros_layers(n1, smax, f.q, pp.p1, pp.p2);
      const long C1 = pp.p1 + 1, C2 = pp.p2 + 1;
      for (long s = 0; s <= smax; ++s)
        out.counts[s] = L[(static_cast<size_t>(s) * C1 + pp.p1) * C2 + pp.p2];
      break;
    }
  }
  return out;
}

inline Int count_pairs_dp(const SpaceFamily& f, long n1, long n2, const PairParams& pp, long s,
                          const OracleCaps& caps = {}) {
  if (s < 0) return 0;
  return count_table_dp(f, n1, n2, pp, s, caps).at(s);
}

inline std::vector<std::vector<int>> enumerate_constrained(const SpaceFamily& f, long n, long r,
                                                           long p, long cap) {
  Finite fin{n, r, p};
  auto all = enumerate_space(f, fin, cap);
  if (!is_constrained(f.kind)) return all;
  std::vector<std::vector<int>> out;
  for (auto& v : all)
    if (member_constraint(f, fin, v)) out.push_back(std::move(v));
  return out;
}

inline CountTable count_table_bruteforce(const SpaceFamily& f, long n1, long n2,
                                         const PairParams& pp, long smax = -1,
                                         const OracleCaps& caps = {}) {
  f.validate();
  auto s1 = enumerate_constrained(f, n1, pp.r, pp.p1, caps.enum_cap);
  auto s2 = enumerate_constrained(f, n2, pp.r, pp.p2, caps.enum_cap);
  long seen_max = 0;
  for (const auto& u : s1)
    for (const auto& v : s2) seen_max = std::max(seen_max, l1_distance(u, v));
  if (smax < 0) smax = seen_max;
  CountTable out;
  out.kind = f.kind;
  out.n1 = n1;
  out.n2 = n2;
  out.r = pp.r;
  out.q = f.q;
  out.p1 = pp.p1;
  out.p2 = pp.p2;
  out.counts.assign(smax + 1, 0);
  for (const auto& u : s1)
    for (const auto& v : s2) {
      long d = l1_distance(u, v);
      if (d <= smax) ++out.counts[d];
    }
  return out;
}

inline Int count_pairs_bruteforce(const SpaceFamily& f, long n1, long n2, const PairParams& pp,
                                  long s, const OracleCaps& caps = {}) {
  if (s < 0) return 0;
  return count_table_bruteforce(f, n1, n2, pp, s, caps).at(s);
}

// Sum_{s<=d} N(n,n,...,s) by DP; the diagonal total-ball count.
inline Int total_ball(const SpaceFamily& f, long n, long d, const OracleCaps& caps = {}) {
  Finite fin = finite_for(f, n);
  PairParams pp{fin.r, fin.p, fin.p};
  long smax = std::min(d, max_pair_distance(f, n, n, pp));
  auto table = count_table_dp(f, n, n, pp, smax, caps);
  return table.total(d);
}

// log2 |T| / n : the finite-n proxy for the asymptotic ball exponent.
inline double empirical_exponent(const SpaceFamily& f, long n, long d,
                                 const OracleCaps& caps = {}) {
  if (n <= 0) throw std::invalid_argument("empirical_exponent: n must be positive");
  return log2_int(total_ball(f, n, d, caps)) / static_cast<double>(n);
}

}  // namespace l1gv
