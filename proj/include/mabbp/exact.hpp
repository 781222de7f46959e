#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mabbp/mips.hpp"

namespace mabbp {

struct ExactResult {
  std::vector<std::uint32_t> topk_ids;  // descending inner product, ties by smaller id
  std::vector<double> topk_scores;
  std::uint64_t ops = 0;                // scalar multiplications, always n * N
};

/// Exhaustive MIPS: computes all n inner products and keeps the best K.
/// Throws PreconditionError when K > n.
ExactResult naive_topk(const VectorSet& vectors, const Query& query, std::size_t k);

// Returns the indices of the K largest scores, ties broken by smaller index.
std::vector<std::uint32_t> top_indices(const std::vector<double>& scores, std::size_t k);

}  // namespace mabbp
