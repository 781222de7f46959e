#include "mabbp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "mabbp/errors.hpp"

namespace mabbp {

namespace {

void require_distinct(std::vector<std::uint32_t> ids, const char* what) {
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw PreconditionError(std::string(what) + " contains duplicate ids");
  }
}

}  // namespace

double precision(std::span<const std::uint32_t> returned, std::span<const std::uint32_t> truth,
                 std::size_t k) {
  if (k == 0 || returned.size() != k || truth.size() != k) {
    throw PreconditionError("precision needs K=" + std::to_string(k) + " returned and true ids, got " +
                            std::to_string(returned.size()) + " and " + std::to_string(truth.size()));
  }
  std::vector<std::uint32_t> a(returned.begin(), returned.end());
  std::vector<std::uint32_t> b(truth.begin(), truth.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  std::vector<std::uint32_t> shared;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
  return static_cast<double>(shared.size()) / static_cast<double>(k);
}

double suboptimality(std::span<const std::uint32_t> returned, std::span<const double> true_means,
                     std::size_t k) {
  if (k == 0 || returned.size() != k || k > true_means.size()) {
    throw PreconditionError("suboptimality needs exactly K=" + std::to_string(k) + " returned ids");
  }
  require_distinct({returned.begin(), returned.end()}, "returned set");

  std::vector<double> all(true_means.begin(), true_means.end());
  std::nth_element(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k - 1), all.end(),
                   std::greater<>());
  const double best_kth = all[k - 1];

  double returned_kth = INFINITY;
  for (auto id : returned) {
    if (id >= true_means.size()) throw PreconditionError("returned id out of range");
    returned_kth = std::min(returned_kth, true_means[id]);
  }
  return std::max(0.0, best_kth - returned_kth);
}

double percentile(std::vector<double> values, double p) {
  if (values.empty()) throw PreconditionError("percentile of an empty list");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("percentile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double len = static_cast<double>(values.size());
  // The slack absorbs products like 0.7 * 20 landing just above an integer.
  auto rank = static_cast<std::size_t>(std::ceil(p * len - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  return values[rank - 1];
}

}  // namespace mabbp
