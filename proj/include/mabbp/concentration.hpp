#pragma once

#include <cstddef>

namespace mabbp {

/// Variance-reduction factor of the without-replacement Hoeffding-Serfling
/// bound after `m` draws from a list of `length` values:
///   rho_m = min{ 1 - (m-1)/N, (1 - m/N)(1 + 1/m) }.
/// Throws DomainError unless 1 <= m <= length.
double rho(std::size_t m, std::size_t length);

/// Closed-form number of draws without replacement that bounds the one-sided
/// deviation of the sample mean, given u = log(1/delta)/2 * (b-a)^2 / eps^2:
///   m(u) = min{ (u+1)/(1+u/N), (u+u/N)/(1+u/N) }.
/// The result is real-valued and lies in [0, length]. u = +inf maps to length.
double sample_size(double u, std::size_t length);

/// ceil(sample_size(u, length)) clamped to [0, length].
std::size_t sample_size_ceil(double u, std::size_t length);

/// u = (ln(1/delta) / 2) * range_width^2 / epsilon^2.
double confidence_to_u(double epsilon, double delta, double range_width);

}  // namespace mabbp
