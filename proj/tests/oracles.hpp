#pragma once

// Test-only reference implementations. They deliberately avoid the library's
// code paths so they can check it.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace mabbp::oracle {

// Direct evaluation of rho_m = min{1 - (m-1)/N, (1 - m/N)(1 + 1/m)}.
inline double rho_direct(std::size_t m, std::size_t n) {
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  return std::fmin(1.0 - (md - 1.0) / nd, (1.0 - md / nd) * (1.0 + 1.0 / md));
}

// Smallest m in 1..N with m / rho_m >= u; rho_N = 0 makes m = N always feasible.
inline std::size_t min_pulls_brute_force(double u, std::size_t n) {
  for (std::size_t m = 1; m <= n; ++m) {
    const double r = rho_direct(m, n);
    if (r <= 0.0 || static_cast<double>(m) / r >= u) return m;
  }
  return n;
}

// Inner products summed from the last coordinate backwards, vector by vector.
inline std::vector<double> inner_products_reverse(const std::vector<float>& data, std::size_t rows,
                                                  std::size_t dim, const std::vector<float>& q) {
  std::vector<double> out(rows, 0.0);
  for (std::size_t j = dim; j-- > 0;) {
    for (std::size_t i = 0; i < rows; ++i) {
      out[i] += static_cast<double>(data[i * dim + j]) * static_cast<double>(q[j]);
    }
  }
  return out;
}

}  // namespace mabbp::oracle
