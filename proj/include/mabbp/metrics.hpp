#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mabbp {

/// |returned ∩ truth| / K. Both sets must hold exactly K ids.
double precision(std::span<const std::uint32_t> returned, std::span<const std::uint32_t> truth,
                 std::size_t k);

/// (K-th highest true mean overall) - (K-th highest true mean among `returned`).
double suboptimality(std::span<const std::uint32_t> returned, std::span<const double> true_means,
                     std::size_t k);

/// Nearest-rank percentile: the value at 1-based rank ceil(p * len) of the
/// ascending sort, clamped to [1, len].
double percentile(std::vector<double> values, double p);

}  // namespace mabbp
