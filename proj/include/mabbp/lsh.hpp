#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "mabbp/mips.hpp"

namespace mabbp {

// Reduction of MIPS to angular nearest neighbour search: data vectors are
// scaled into the unit ball and lifted with sqrt(1 - |v|^2); queries are
// normalised and lifted with 0.
std::vector<double> lift_data_vector(std::span<const float> v, double scale);
std::vector<double> lift_query(std::span<const float> q);

/// Sign-random-projection LSH over lifted vectors. Each of `tables` hash
/// tables keys a vector by `bits` projection signs (AND), and a query's
/// candidates are the union of its buckets (OR).
///
/// Projection (t, k) depends only on (seed, t, k), so an index restricted to
/// fewer bits or tables is identical to one built with those parameters.
class LshIndex {
 public:
  using Bucket = std::vector<std::uint32_t>;
  using Table = absl::flat_hash_map<std::uint64_t, Bucket>;

  static LshIndex build(const VectorSet& vectors, std::size_t bits, std::size_t tables,
                        std::uint64_t seed);

  // Sub-index using the first `bits` projections of the first `tables` tables.
  LshIndex restricted(std::size_t bits, std::size_t tables) const;

  std::size_t bits() const { return bits_; }
  std::size_t tables() const { return tables_.size(); }
  std::size_t rows() const { return rows_; }
  std::size_t lifted_dim() const { return store_->lifted_dim; }
  double transform_scale() const { return store_->scale; }

  const Table& table(std::size_t t) const { return tables_[t]; }
  std::span<const float> projection(std::size_t t, std::size_t k) const;

  std::vector<std::uint64_t> hash_query(const Query& query) const;
  // Distinct candidate ids in ascending order.
  std::vector<std::uint32_t> candidates(const Query& query) const;

 private:
  struct Store {
    std::size_t max_bits = 0;
    std::size_t max_tables = 0;
    std::size_t lifted_dim = 0;
    double scale = 1.0;
    std::vector<float> projections;  // (table, bit) major, lifted_dim wide
    std::vector<std::uint64_t> codes;  // (table, row) major, max_bits wide
  };

  LshIndex(std::shared_ptr<const Store> store, std::size_t bits, std::size_t tables, std::size_t rows);

  std::shared_ptr<const Store> store_;
  std::size_t bits_;
  std::size_t rows_;
  std::vector<Table> tables_;
};

struct LshResult {
  std::vector<std::uint32_t> ids;
  std::size_t candidates = 0;
  // True when fewer than K candidates were found and smallest unseen ids filled in.
  bool padded = false;
  // candidates * N + tables * bits * (N + 1)
  std::uint64_t ops = 0;
};

/// Hashes the query, unions its buckets and reranks candidates exactly by
/// inner product.
LshResult lsh_query(const LshIndex& index, const VectorSet& vectors, const Query& query, std::size_t k);

}  // namespace mabbp
