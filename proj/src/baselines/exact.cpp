#include "mabbp/exact.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "../kernels.hpp"
#include "mabbp/errors.hpp"

namespace mabbp {

std::vector<std::uint32_t> top_indices(const std::vector<double>& scores, std::size_t k) {
  if (k > scores.size()) {
    throw PreconditionError("K=" + std::to_string(k) + " exceeds " + std::to_string(scores.size()) +
                            " candidates");
  }
  std::vector<std::uint32_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0U);
  auto better = [&](std::uint32_t a, std::uint32_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(), better);
  order.resize(k);
  return order;
}

ExactResult naive_topk(const VectorSet& vectors, const Query& query, std::size_t k) {
  if (vectors.dim() != query.dim()) throw ConfigError("query dimension does not match vectors");
  if (k > vectors.rows()) {
    throw PreconditionError("K=" + std::to_string(k) + " exceeds vector count " +
                            std::to_string(vectors.rows()));
  }
  const float* q = query.values().data();
  std::vector<double> scores(vectors.rows());
  for (std::size_t i = 0; i < vectors.rows(); ++i) {
    scores[i] = detail::dot_f64(vectors.row(i).data(), q, vectors.dim());
  }
  ExactResult result;
  result.topk_ids = top_indices(scores, k);
  for (auto id : result.topk_ids) result.topk_scores.push_back(scores[id]);
  result.ops = static_cast<std::uint64_t>(vectors.rows()) * vectors.dim();
  return result;
}

}  // namespace mabbp
