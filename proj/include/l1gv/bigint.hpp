#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

namespace l1gv {

using Int = boost::multiprecision::cpp_int;

inline Int binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

inline Int ipow(Int base, long e) {
  Int r = 1;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

inline double log2_int(const Int& v) {
  // exact enough for rate estimates: split off the high 64 bits
  if (v <= 0) return -std::numeric_limits<double>::infinity();
  const auto bits = boost::multiprecision::msb(v);
  if (bits < 63) return std::log2(static_cast<double>(v.convert_to<std::uint64_t>()));
  const unsigned shift = static_cast<unsigned>(bits - 62);
  const Int top = v >> shift;
  return std::log2(static_cast<double>(top.convert_to<std::uint64_t>())) + shift;
}

}  // namespace l1gv
