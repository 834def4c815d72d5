#pragma once

#include <cmath>
#include <stdexcept>

namespace l1gv {

// All logarithms in this library are base 2, so Cap(Z_q) = log2 q and the
// binomial rate is the binary entropy. Stated here once.

inline double xlog2(double p) {
  return p <= 0.0 ? 0.0 : p * std::log2(p);  // 0*log 0 := 0
}

inline double entropy2(double p) {
  if (p < -1e-12 || p > 1.0 + 1e-12) throw std::domain_error("entropy2: argument outside [0,1]");
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -xlog2(p) - xlog2(1.0 - p);
}

}  // namespace l1gv
