#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "l1gv/bigint.hpp"

namespace l1gv {

using Exponents = std::vector<int>;

inline int total_degree(const Exponents& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

// Exact sparse multivariate polynomial over Z. Terms are kept in a map with
// lexicographic key order; zero coefficients are never stored.
class SparsePoly {
 public:
  using TermMap = std::map<Exponents, Int>;

  SparsePoly() : num_vars_(0) {}
  explicit SparsePoly(int num_vars, std::vector<std::string> labels = {})
      : num_vars_(num_vars), labels_(std::move(labels)) {
    if (labels_.empty()) {
      for (int i = 0; i < num_vars_; ++i) labels_.push_back("z" + std::to_string(i + 1));
    }
    if (static_cast<int>(labels_.size()) != num_vars_)
      throw std::invalid_argument("SparsePoly: label count != num_vars");
  }

  static SparsePoly constant(int num_vars, Int c, std::vector<std::string> labels = {}) {
    SparsePoly p(num_vars, std::move(labels));
    p.add_term(Exponents(num_vars, 0), std::move(c));
    return p;
  }
  static SparsePoly monomial(int num_vars, const Exponents& e, Int c = 1,
                             std::vector<std::string> labels = {}) {
    SparsePoly p(num_vars, std::move(labels));
    p.add_term(e, std::move(c));
    return p;
  }

  int num_vars() const { return num_vars_; }
  const std::vector<std::string>& var_labels() const { return labels_; }
  void set_var_labels(std::vector<std::string> labels) {
    if (static_cast<int>(labels.size()) != num_vars_)
      throw std::invalid_argument("set_var_labels: size mismatch");
    labels_ = std::move(labels);
  }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Int coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Int(0) : it->second;
  }
  Int constant_term() const { return coeff(Exponents(num_vars_, 0)); }

  void add_term(const Exponents& e, Int c) {
    if (static_cast<int>(e.size()) != num_vars_)
      throw std::invalid_argument("add_term: exponent vector length != num_vars");
    for (int x : e)
      if (x < 0) throw std::invalid_argument("add_term: negative exponent");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
    a.check_same_arity(b);
    SparsePoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }
  friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) {
    a.check_same_arity(b);
    SparsePoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
  }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    a.check_same_arity(b);
    SparsePoly r(a.num_vars_, a.labels_);
    Exponents e(a.num_vars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (int i = 0; i < a.num_vars_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  SparsePoly scaled(const Int& c) const {
    SparsePoly r(num_vars_, labels_);
    if (c == 0) return r;
    for (const auto& [e, v] : terms_) r.terms_[e] = v * c;
    return r;
  }

  bool operator==(const SparsePoly& o) const {
    return num_vars_ == o.num_vars_ && terms_ == o.terms_;
  }
  bool operator!=(const SparsePoly& o) const { return !(*this == o); }

  int max_total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
  }

 private:
  void check_same_arity(const SparsePoly& o) const {
    if (num_vars_ != o.num_vars_) throw std::invalid_argument("SparsePoly arity mismatch");
  }
  int num_vars_;
  std::vector<std::string> labels_;
  TermMap terms_;
};

namespace detail {
inline double dpow(double x, int e) {
  double r = 1.0, b = x;
  for (; e > 0; e >>= 1, b *= b)
    if (e & 1) r *= b;
  return r;
}
}  // namespace detail

// Term-by-term evaluation; summation follows the lexicographic term order.
inline double poly_eval(const SparsePoly& p, const std::vector<double>& point) {
  if (static_cast<int>(point.size()) != p.num_vars())
    throw std::invalid_argument("poly_eval: point dimension mismatch");
  double acc = 0.0;
  for (const auto& [e, c] : p.terms()) {
    double m = static_cast<double>(c);
    for (int i = 0; i < p.num_vars(); ++i) m *= detail::dpow(point[i], e[i]);
    acc += m;
  }
  return acc;
}

inline SparsePoly poly_partial(const SparsePoly& p, int var_index) {
  if (var_index < 0 || var_index >= p.num_vars())
    throw std::out_of_range("poly_partial: var index out of range");
  SparsePoly r(p.num_vars(), p.var_labels());
  for (const auto& [e, c] : p.terms()) {
    if (e[var_index] == 0) continue;
    Exponents d = e;
    d[var_index] -= 1;
    r.add_term(d, c * e[var_index]);
  }
  return r;
}

// Substitutes z_i = z_j, dropping variable j (exponents merge additively).
inline SparsePoly identify_pair(const SparsePoly& p, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= p.num_vars() || j >= p.num_vars())
    throw std::invalid_argument("identify_pair: bad variable pair");
  if (i > j) std::swap(i, j);
  std::vector<std::string> labels;
  for (int k = 0; k < p.num_vars(); ++k)
    if (k != j) labels.push_back(p.var_labels()[k]);
  SparsePoly r(p.num_vars() - 1, labels);
  for (const auto& [e, c] : p.terms()) {
    Exponents m;
    m.reserve(e.size() - 1);
    for (int k = 0; k < p.num_vars(); ++k) {
      if (k == j) continue;
      m.push_back(k == i ? e[i] + e[j] : e[k]);
    }
    r.add_term(m, c);
  }
  return r;
}

inline bool monomialwise_symmetric(const SparsePoly& p, int i, int j) {
  for (const auto& [e, c] : p.terms())
    if (e[i] != e[j]) return false;
  return true;
}

inline bool swap_symmetric(const SparsePoly& p, int i, int j) {
  for (const auto& [e, c] : p.terms()) {
    Exponents s = e;
    std::swap(s[i], s[j]);
    if (p.coeff(s) != c) return false;
  }
  return true;
}

// Exact division: returns q with p == q*d, throws if the division is not exact.
inline SparsePoly divide_exact(const SparsePoly& p, const SparsePoly& d) {
  if (p.num_vars() != d.num_vars()) throw std::invalid_argument("divide_exact: arity mismatch");
  if (d.is_zero()) throw std::invalid_argument("divide_exact: division by zero polynomial");
  SparsePoly q(p.num_vars(), p.var_labels());
  SparsePoly r = p;
  const auto& dlead = *d.terms().rbegin();  // lex-leading term of the divisor
  while (!r.is_zero()) {
    const auto& rlead = *r.terms().rbegin();
    Exponents qe(p.num_vars());
    for (int k = 0; k < p.num_vars(); ++k) {
      qe[k] = rlead.first[k] - dlead.first[k];
      if (qe[k] < 0) throw std::domain_error("divide_exact: not divisible (monomial)");
    }
    if (rlead.second % dlead.second != 0)
      throw std::domain_error("divide_exact: not divisible (coefficient)");
    Int qc = rlead.second / dlead.second;
    q.add_term(qe, qc);
    r = r - d.scaled(qc) * SparsePoly::monomial(p.num_vars(), qe);
  }
  return q;
}

// Proposition-style symmetry reduction: requires every monomial to carry equal
// exponents at i and j, then identifies the pair. The caller doubles the
// direction weight of the merged coordinate.
inline SparsePoly reduce_symmetric(const SparsePoly& p, int i, int j) {
  if (!monomialwise_symmetric(p, i, j))
    throw std::domain_error("reduce_symmetric: a monomial has unequal exponents at the pair");
  return identify_pair(p, i, j);
}

// Variant for denominators that are only swap-symmetric: identify, then divide
// out the caller-supplied spurious unit factor exactly.
inline SparsePoly reduce_symmetric(const SparsePoly& p, int i, int j,
                                   const SparsePoly& spurious_factor) {
  if (!swap_symmetric(p, i, j))
    throw std::domain_error("reduce_symmetric: polynomial is not symmetric under the pair swap");
  SparsePoly merged = identify_pair(p, i, j);
  SparsePoly q = divide_exact(merged, spurious_factor);
  if (q * spurious_factor != merged) throw std::logic_error("reduce_symmetric: division check failed");
  return q;
}

struct SeriesTable {
  int num_vars = 0;
  int max_total_degree = 0;
  std::map<Exponents, Int> coeffs;

  Int at(const Exponents& e) const {
    auto it = coeffs.find(e);
    if (it == coeffs.end()) throw std::out_of_range("SeriesTable: index not tabulated");
    return it->second;
  }
};

namespace detail {

template <typename Visit>
inline void enumerate_graded(int nv, int max_total, Visit&& visit) {
  // graded order: total degree ascending, lexicographic within a degree
  Exponents e(nv, 0);
  for (int deg = 0; deg <= max_total; ++deg) {
    // enumerate compositions of deg into nv parts, lexicographically
    std::function<void(int, int)> rec = [&](int idx, int rem) {
      if (idx == nv - 1) {
        e[idx] = rem;
        visit(e);
        return;
      }
      for (int v = 0; v <= rem; ++v) {
        e[idx] = v;
        rec(idx + 1, rem - v);
      }
    };
    if (nv == 0) {
      if (deg == 0) visit(e);
      continue;
    }
    rec(0, deg);
  }
}

inline Int series_entry(const SparsePoly& numer, const SparsePoly& denom, const Int& h0,
                        const std::map<Exponents, Int>& done, const Exponents& k) {
  Int g = numer.coeff(k);
  Exponents km(k.size());
  for (const auto& [m, h] : denom.terms()) {
    if (total_degree(m) == 0) continue;
    bool ok = true;
    for (size_t t = 0; t < k.size(); ++t) {
      km[t] = k[t] - m[t];
      if (km[t] < 0) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    auto it = done.find(km);
    if (it != done.end()) g -= h * it->second;
  }
  return h0 > 0 ? g : -g;
}

inline Int checked_unit_constant(const SparsePoly& denom) {
  Int h0 = denom.constant_term();
  if (h0 == 0) throw std::domain_error("series_coeffs: denominator constant term is zero");
  if (h0 != 1 && h0 != -1)
    throw std::domain_error("series_coeffs: denominator constant term must be +-1");
  return h0;
}

}  // namespace detail

// Power-series coefficients of numer/denom up to a total-degree bound, via the
// linear recurrence induced by the denominator (sum_m h_m a_{k-m} = g_k).
inline SeriesTable series_coeffs(const SparsePoly& numer, const SparsePoly& denom,
                                 int max_total_degree) {
  if (numer.num_vars() != denom.num_vars())
    throw std::invalid_argument("series_coeffs: arity mismatch");
  Int h0 = detail::checked_unit_constant(denom);
  SeriesTable out;
  out.num_vars = numer.num_vars();
  out.max_total_degree = max_total_degree;
  detail::enumerate_graded(numer.num_vars(), max_total_degree, [&](const Exponents& k) {
    out.coeffs[k] = detail::series_entry(numer, denom, h0, out.coeffs, k);
  });
  return out;
}

// Same recurrence over a per-variable box; used where a total-degree ball is
// needlessly large (validation tables index each variable independently).
// Lexicographic fill order suffices: k-m componentwise below k is lex-smaller.
inline std::map<Exponents, Int> series_coeffs_box(const SparsePoly& numer, const SparsePoly& denom,
                                                  const std::vector<int>& caps) {
  if (static_cast<int>(caps.size()) != numer.num_vars() || numer.num_vars() != denom.num_vars())
    throw std::invalid_argument("series_coeffs_box: arity mismatch");
  Int h0 = detail::checked_unit_constant(denom);
  std::map<Exponents, Int> out;
  int nv = numer.num_vars();
  Exponents k(nv, 0);
  std::function<void(int)> rec = [&](int idx) {
    if (idx == nv) {
      out[k] = detail::series_entry(numer, denom, h0, out, k);
      return;
    }
    for (int v = 0; v <= caps[idx]; ++v) {
      k[idx] = v;
      rec(idx + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace l1gv
