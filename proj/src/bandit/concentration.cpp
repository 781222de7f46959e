#include "mabbp/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mabbp/errors.hpp"

namespace mabbp {

double rho(std::size_t m, std::size_t length) {
  if (m == 0 || m > length) {
    throw DomainError("rho: pull count " + std::to_string(m) + " outside [1, " +
                      std::to_string(length) + "]");
  }
  const double md = static_cast<double>(m);
  const double n = static_cast<double>(length);
  const double first = 1.0 - (md - 1.0) / n;
  const double second = (1.0 - md / n) * (1.0 + 1.0 / md);
  return std::max(0.0, std::min(first, second));
}

double sample_size(double u, std::size_t length) {
  if (length == 0) throw DomainError("sample_size: empty reward list");
  if (!(u >= 0.0)) throw DomainError("sample_size: u must be non-negative");
  const double n = static_cast<double>(length);
  if (std::isinf(u)) return n;
  const double denom = 1.0 + u / n;
  const double relaxed = (u + 1.0) / denom;
  const double linear = (u + u / n) / denom;
  return std::clamp(std::min(relaxed, linear), 0.0, n);
}

std::size_t sample_size_ceil(double u, std::size_t length) {
  const double m = std::ceil(sample_size(u, length));
  return std::min(length, static_cast<std::size_t>(m));
}

double confidence_to_u(double epsilon, double delta, double range_width) {
  if (!(epsilon > 0.0)) throw DomainError("confidence_to_u: epsilon must be positive");
  if (!(range_width > 0.0)) throw DomainError("confidence_to_u: range width must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("confidence_to_u: delta must lie in (0, 1)");
  return std::log(1.0 / delta) / 2.0 * (range_width * range_width) / (epsilon * epsilon);
}

}  // namespace mabbp
