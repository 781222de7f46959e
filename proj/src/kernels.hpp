#pragma once

#include <cstddef>

namespace mabbp::detail {

// Float dot product with split accumulators so the loop vectorises without
// reassociation flags. Accumulates in float; callers needing exact scores use
// the double path instead.
inline float dot_f32(const float* a, const float* b, std::size_t n) {
  float acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  std::size_t j = 0;
  for (; j + 8 <= n; j += 8) {
    for (int r = 0; r < 8; ++r) acc[r] += a[j + r] * b[j + r];
  }
  float tail = 0.0f;
  for (; j < n; ++j) tail += a[j] * b[j];
  return ((acc[0] + acc[1]) + (acc[2] + acc[3])) + ((acc[4] + acc[5]) + (acc[6] + acc[7])) + tail;
}

inline double dot_f64(const float* a, const float* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) sum += static_cast<double>(a[j]) * static_cast<double>(b[j]);
  return sum;
}

}  // namespace mabbp::detail
