#include <catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <tuple>

#include "l1gv/gf.hpp"
#include "l1gv/oracle.hpp"
#include "l1gv/spaces.hpp"

using namespace l1gv;

TEST_CASE("space sizes") {
  CHECK(space_size(make_family(SpaceKind::StdSimplex, 1), {2, 2, 0}) == 3);
  CHECK(space_size(make_family(SpaceKind::Hypercube, 0, 0, 4), {3, 0, 0}) == 64);
  CHECK(space_size(make_family(SpaceKind::StdSimplexZeros, 1, 0.5), {4, 3, 1}) == 9);
  CHECK(space_size(make_family(SpaceKind::PosSimplex, 0.5), {3, 5, 0}) == 0);  // r > n
  CHECK(space_size(make_family(SpaceKind::InvSimplex, 0.5), {4, 2, 0}) == 6);
  CHECK(space_size(make_family(SpaceKind::PosSimplexOnes, 0.9, 0.3), {5, 3, 1}) == 3);
  CHECK(space_size(make_family(SpaceKind::HypercubeZeros, 0, 0.3, 3), {4, 0, 2}) == 24);
}

TEST_CASE("enumeration is sorted, complete, duplicate-free") {
  auto std22 = enumerate_space(make_family(SpaceKind::StdSimplex, 1), {2, 2, 0});
  CHECK(std22 == std::vector<std::vector<int>>{{0, 2}, {1, 1}, {2, 0}});
  auto inv32 = enumerate_space(make_family(SpaceKind::InvSimplex, 0.5), {3, 2, 0});
  CHECK(inv32 == std::vector<std::vector<int>>{{1, 2}, {1, 3}, {2, 3}});
  auto pos33 = enumerate_space(make_family(SpaceKind::PosSimplex, 1), {3, 3, 0});
  CHECK(pos33 == std::vector<std::vector<int>>{{1, 1, 1}});
  for (SpaceKind k : {SpaceKind::StdSimplex, SpaceKind::PosSimplex, SpaceKind::InvSimplex}) {
    SpaceFamily f = make_family(k, 0.6);
    Finite fin{6, 3, 0};
    auto v = enumerate_space(f, fin);
    CHECK(Int(static_cast<long>(v.size())) == space_size(f, fin));
    for (size_t i = 1; i < v.size(); ++i) CHECK(v[i - 1] < v[i]);
  }
  CHECK_THROWS_AS(enumerate_space(make_family(SpaceKind::Hypercube, 0, 0, 4), {12, 0, 0}, 1000),
                  EnumerationCapExceeded);
}

TEST_CASE("brute force pair counts") {
  SpaceFamily f = make_family(SpaceKind::StdSimplex, 1);
  CHECK(count_pairs_bruteforce(f, 2, 2, {2, 0, 0}, 2) == 4);
  CHECK(count_pairs_bruteforce(f, 2, 2, {2, 0, 0}, 0) == 3);  // diagonal
  CHECK(count_pairs_bruteforce(f, 2, 2, {2, 0, 0}, 1) == 0);  // parity
}

TEST_CASE("DP frozen values") {
  CHECK(count_pairs_dp(make_family(SpaceKind::StdSimplex, 1), 2, 2, {2, 0, 0}, 2) == 4);
  CHECK(count_pairs_dp(make_family(SpaceKind::Hypercube, 0, 0, 2), 2, 2, {0, 0, 0}, 1) == 8);
  SpaceFamily inv = make_family(SpaceKind::InvSimplex, 0.5);
  for (long n = 2; n <= 6; ++n)
    for (long r = 1; r <= n; ++r)
      CHECK(count_pairs_dp(inv, n, n, {r, 0, 0}, 0) == binomial(n, r));
}

TEST_CASE("total ball and empirical exponent") {
  SpaceFamily f = make_family(SpaceKind::StdSimplex, 1);
  CHECK(total_ball(f, 2, 2) == 7);
  SpaceFamily h2 = make_family(SpaceKind::Hypercube, 0, 0, 2);
  CHECK(total_ball(h2, 1, 1) == 4);
  CHECK(empirical_exponent(h2, 1, 1) == Catch::Approx(2.0));
  CHECK(empirical_exponent(f, 2, 2) == Catch::Approx(std::log2(7.0) / 2));
  // d at (or beyond) the diameter gives the full square
  for (SpaceKind k : {SpaceKind::StdSimplex, SpaceKind::PosSimplex, SpaceKind::InvSimplex}) {
    SpaceFamily g = make_family(k, 0.5);
    Finite fin = finite_for(g, 6);
    Int sz = space_size(g, fin);
    CHECK(total_ball(g, 6, 100) == sz * sz);
  }
}

TEST_CASE("DP cap is enforced") {
  CHECK_THROWS_AS(total_ball(make_family(SpaceKind::Hypercube, 0, 0, 2), 50, 3, OracleCaps{}),
                  DpCapExceeded);
}

namespace {

struct FamilyCase {
  SpaceFamily f;
  long nmax;
  long rmax;
  long pmax;
};

std::vector<FamilyCase> small_cases() {
  return {
      {make_family(SpaceKind::StdSimplex, 1), 5, 3, 0},
      {make_family(SpaceKind::PosSimplex, 0.5), 6, 3, 0},
      {make_family(SpaceKind::InvSimplex, 0.5), 6, 3, 0},
      {make_family(SpaceKind::StdSimplexZeros, 1, 0.5), 5, 3, 3},
      {make_family(SpaceKind::PosSimplexOnes, 0.8, 0.4), 6, 3, 3},
      {make_family(SpaceKind::Hypercube, 0, 0, 3), 4, 0, 0},
      {make_family(SpaceKind::HypercubeZeros, 0, 0.3, 3), 4, 0, 2},
  };
}

}  // namespace

TEST_CASE("oracle equivalence: DP equals brute force on every family") {
  for (const auto& c : small_cases()) {
    const bool hyper = is_hypercube(c.f.kind);
    for (long n1 = 0; n1 <= c.nmax; ++n1)
      for (long n2 = (hyper ? n1 : 0); n2 <= (hyper ? n1 : c.nmax); ++n2)
        for (long r = 0; r <= c.rmax; ++r)
          for (long p1 = 0; p1 <= c.pmax; ++p1)
            for (long p2 = 0; p2 <= c.pmax; ++p2) {
              PairParams pp{r, p1, p2};
              auto bf = count_table_bruteforce(c.f, n1, n2, pp);
              long smax = static_cast<long>(bf.counts.size()) - 1;
              auto dp = count_table_dp(c.f, n1, n2, pp, smax);
              for (long s = 0; s <= smax; ++s) {
                INFO(kind_name(c.f.kind) << " n1=" << n1 << " n2=" << n2 << " r=" << r
                                         << " p1=" << p1 << " p2=" << p2 << " s=" << s);
                CHECK(bf.at(s) == dp.at(s));
              }
            }
  }
}

TEST_CASE("pair counts are symmetric in (n1, n2) and (p1, p2)") {
  for (const auto& c : small_cases()) {
    if (is_hypercube(c.f.kind)) continue;
    for (long n1 = 0; n1 <= c.nmax; ++n1)
      for (long n2 = 0; n2 <= c.nmax; ++n2)
        for (long r = 0; r <= c.rmax; ++r)
          for (long p1 = 0; p1 <= c.pmax; ++p1)
            for (long p2 = 0; p2 <= c.pmax; ++p2) {
              auto a = count_table_dp(c.f, n1, n2, {r, p1, p2}, n1 + n2);
              auto b = count_table_dp(c.f, n2, n1, {r, p2, p1}, n1 + n2);
              CHECK(a.counts == b.counts);
            }
  }
}

TEST_CASE("completeness: distances partition the product space") {
  for (const auto& c : small_cases()) {
    for (long n = 0; n <= c.nmax; ++n) {
      Finite fin = is_hypercube(c.f.kind) ? Finite{n, 0, std::min(n, c.pmax)}
                                          : Finite{n, std::min(n, c.rmax),
                                                   std::min(std::min(n, c.rmax), c.pmax)};
      PairParams pp{fin.r, fin.p, fin.p};
      auto dp = count_table_dp(c.f, n, n, pp, max_pair_distance(c.f, n, n, pp));
      Int sz = space_size(c.f, fin);
      INFO(kind_name(c.f.kind) << " n=" << n << " r=" << fin.r << " p=" << fin.p);
      CHECK(dp.total_all() == sz * sz);
    }
  }
}

TEST_CASE("parity: equal-weight simplex pairs sit at even distances") {
  for (SpaceKind k : {SpaceKind::StdSimplex, SpaceKind::StdSimplexZeros, SpaceKind::PosSimplex,
                      SpaceKind::PosSimplexOnes}) {
    SpaceFamily f = make_family(k, is_constrained(k) ? 0.8 : 0.8, is_constrained(k) ? 0.3 : 0.0);
    for (long n = 1; n <= 6; ++n)
      for (long r = 1; r <= 3; ++r) {
        long p = is_constrained(k) ? 1 : 0;
        auto dp = count_table_dp(f, n, n, {r, p, p}, 2 * n);
        for (long s = 1; s <= 2 * n; s += 2) CHECK(dp.at(s) == 0);
      }
  }
}

TEST_CASE("series agreement: DP matches the full generating function to degree 12") {
  struct GfCase {
    SpaceKind kind;
    int q;
  };
  for (auto [kind, q] : std::initializer_list<GfCase>{{SpaceKind::StdSimplex, 0},
                                                      {SpaceKind::PosSimplex, 0},
                                                      {SpaceKind::StdSimplexZeros, 0},
                                                      {SpaceKind::PosSimplexOnes, 0},
                                                      {SpaceKind::Hypercube, 3},
                                                      {SpaceKind::HypercubeZeros, 3}}) {
    auto gf = pair_count_gf(kind, q);
    auto table = series_coeffs(gf.numer, gf.denom, 12);
    SpaceFamily f = make_family(kind, is_hypercube(kind) ? 0.0 : 1.0,
                                is_constrained(kind) ? (is_hypercube(kind) ? 0.5 : 0.9) : 0.0, q);
    std::map<std::vector<long>, CountTable> cache;
    for (const auto& [e, coeff] : table.coeffs) {
      long n1, n2, r, s, p1, p2;
      if (is_hypercube(kind)) {
        n1 = n2 = e[0];
        r = 0;
        s = e[1];
        p1 = is_constrained(kind) ? e[2] : 0;
        p2 = is_constrained(kind) ? e[3] : 0;
      } else {
        n1 = e[0];
        n2 = e[1];
        r = e[2];
        s = e[3];
        p1 = is_constrained(kind) ? e[4] : 0;
        p2 = is_constrained(kind) ? e[5] : 0;
      }
      std::vector<long> key{n1, n2, r, p1, p2};
      auto it = cache.find(key);
      if (it == cache.end())
        it = cache.emplace(key, count_table_dp(f, n1, n2, {r, p1, p2}, 12)).first;
      INFO(kind_name(kind) << " n1=" << n1 << " n2=" << n2 << " r=" << r << " s=" << s
                           << " p1=" << p1 << " p2=" << p2);
      CHECK(it->second.at(s) == coeff);
    }
  }
}

TEST_CASE("inverted simplex matches positive simplex only asymptotically") {
  // exact totals differ already at n=4, r=2 (|inv| = 6 vs |pos| = 3) ...
  SpaceFamily inv = make_family(SpaceKind::InvSimplex, 0.5);
  SpaceFamily pos = make_family(SpaceKind::PosSimplex, 0.5);
  Int ti = total_ball(inv, 4, 0);
  Int tp = total_ball(pos, 4, 0);
  CHECK(ti == 6);
  CHECK(tp == 3);
  // ... while the per-n exponent gap of the total balls shrinks
  double prev = 1e9;
  for (long n = 8; n <= 32; n += 8) {
    long d = n / 4;
    double gap = std::fabs(log2_int(total_ball(inv, n, d)) - log2_int(total_ball(pos, n, d))) / n;
    CHECK(gap < prev + 1e-12);
    prev = gap;
  }
  CHECK(prev < 0.08);
}

TEST_CASE("constrained-family empirical exponent improves with n") {
  SpaceFamily f = make_family(SpaceKind::StdSimplexZeros, 1.0, 0.25);
  // exponent grows toward the asymptotic value; spot-check monotone trend
  double e1 = empirical_exponent(f, 8, 4);
  double e2 = empirical_exponent(f, 16, 8);
  double e3 = empirical_exponent(f, 24, 12);
  CHECK(e2 > e1);
  CHECK(e3 > e2);
}
