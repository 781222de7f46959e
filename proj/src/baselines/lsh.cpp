#include "mabbp/lsh.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "../kernels.hpp"
#include "mabbp/errors.hpp"
#include "mabbp/exact.hpp"
#include "mabbp/rng.hpp"

namespace mabbp {

namespace {

double norm_of(std::span<const float> v) {
  double sq = 0.0;
  for (float x : v) sq += static_cast<double>(x) * x;
  return std::sqrt(sq);
}

std::uint64_t low_mask(std::size_t bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

}  // namespace

std::vector<double> lift_data_vector(std::span<const float> v, double scale) {
  std::vector<double> out(v.size() + 1);
  double sq = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    out[j] = static_cast<double>(v[j]) * scale;
    sq += out[j] * out[j];
  }
  out.back() = std::sqrt(std::max(0.0, 1.0 - sq));
  return out;
}

std::vector<double> lift_query(std::span<const float> q) {
  std::vector<double> out(q.size() + 1, 0.0);
  const double norm = norm_of(q);
  if (norm > 0.0) {
    for (std::size_t j = 0; j < q.size(); ++j) out[j] = q[j] / norm;
  }
  return out;
}

LshIndex LshIndex::build(const VectorSet& vectors, std::size_t bits, std::size_t tables,
                         std::uint64_t seed) {
  if (bits == 0 || bits > 64) throw ConfigError("LSH bits per table must lie in [1, 64]");
  if (tables == 0) throw ConfigError("LSH needs at least one table");

  auto store = std::make_shared<Store>();
  const std::size_t dim = vectors.dim();
  store->max_bits = bits;
  store->max_tables = tables;
  store->lifted_dim = dim + 1;

  std::vector<double> norms(vectors.rows());
  double max_norm = 0.0;
  for (std::size_t i = 0; i < vectors.rows(); ++i) {
    norms[i] = norm_of(vectors.row(i));
    max_norm = std::max(max_norm, norms[i]);
  }
  store->scale = max_norm > 0.0 ? 1.0 / max_norm : 1.0;

  const std::size_t lifted = store->lifted_dim;
  store->projections.resize(tables * bits * lifted);
  std::vector<double> direction(lifted);
  for (std::size_t t = 0; t < tables; ++t) {
    for (std::size_t k = 0; k < bits; ++k) {
      std::mt19937_64 rng(derive_seed(seed, {t, k}));
      std::normal_distribution<double> normal(0.0, 1.0);
      double sq = 0.0;
      for (auto& x : direction) {
        x = normal(rng);
        sq += x * x;
      }
      const double inv = 1.0 / std::sqrt(sq);
      float* out = store->projections.data() + (t * bits + k) * lifted;
      for (std::size_t j = 0; j < lifted; ++j) out[j] = static_cast<float>(direction[j] * inv);
    }
  }

  store->codes.assign(tables * vectors.rows(), 0);
  for (std::size_t i = 0; i < vectors.rows(); ++i) {
    const float* v = vectors.row(i).data();
    const double scaled = norms[i] * store->scale;
    const double tail = std::sqrt(std::max(0.0, 1.0 - scaled * scaled));
    for (std::size_t t = 0; t < tables; ++t) {
      std::uint64_t code = 0;
      for (std::size_t k = 0; k < bits; ++k) {
        const float* p = store->projections.data() + (t * bits + k) * lifted;
        const double side = store->scale * detail::dot_f32(p, v, dim) + p[dim] * tail;
        if (side >= 0.0) code |= std::uint64_t{1} << k;
      }
      store->codes[t * vectors.rows() + i] = code;
    }
  }
  return LshIndex(std::move(store), bits, tables, vectors.rows());
}

LshIndex::LshIndex(std::shared_ptr<const Store> store, std::size_t bits, std::size_t tables,
                   std::size_t rows)
    : store_(std::move(store)), bits_(bits), rows_(rows), tables_(tables) {
  const std::uint64_t mask = low_mask(bits);
  for (std::size_t t = 0; t < tables; ++t) {
    for (std::size_t i = 0; i < rows; ++i) {
      tables_[t][store_->codes[t * rows + i] & mask].push_back(static_cast<std::uint32_t>(i));
    }
  }
}

LshIndex LshIndex::restricted(std::size_t bits, std::size_t tables) const {
  if (bits == 0 || bits > bits_ || tables == 0 || tables > tables_.size()) {
    throw ConfigError("restricted LSH parameters (a=" + std::to_string(bits) + ", b=" +
                      std::to_string(tables) + ") exceed the built index (a=" + std::to_string(bits_) +
                      ", b=" + std::to_string(tables_.size()) + ")");
  }
  return LshIndex(store_, bits, tables, rows_);
}

std::span<const float> LshIndex::projection(std::size_t t, std::size_t k) const {
  const std::size_t lifted = store_->lifted_dim;
  return {store_->projections.data() + (t * store_->max_bits + k) * lifted, lifted};
}

std::vector<std::uint64_t> LshIndex::hash_query(const Query& query) const {
  const std::size_t dim = store_->lifted_dim - 1;
  if (query.dim() != dim) throw ConfigError("query dimension does not match LSH index");
  const auto lifted = lift_query(query.values());
  std::vector<float> q(lifted.begin(), lifted.end() - 1);
  std::vector<std::uint64_t> keys(tables_.size(), 0);
  for (std::size_t t = 0; t < tables_.size(); ++t) {
    for (std::size_t k = 0; k < bits_; ++k) {
      // The lifted query's last coordinate is zero.
      if (detail::dot_f32(projection(t, k).data(), q.data(), dim) >= 0.0f) {
        keys[t] |= std::uint64_t{1} << k;
      }
    }
  }
  return keys;
}

std::vector<std::uint32_t> LshIndex::candidates(const Query& query) const {
  const auto keys = hash_query(query);
  std::vector<std::uint32_t> out;
  for (std::size_t t = 0; t < tables_.size(); ++t) {
    auto it = tables_[t].find(keys[t]);
    if (it != tables_[t].end()) out.insert(out.end(), it->second.begin(), it->second.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

LshResult lsh_query(const LshIndex& index, const VectorSet& vectors, const Query& query, std::size_t k) {
  if (index.rows() != vectors.rows() || index.lifted_dim() != vectors.dim() + 1) {
    throw ConfigError("LSH index was built over a different vector set");
  }
  if (k > vectors.rows()) {
    throw PreconditionError("K=" + std::to_string(k) + " exceeds vector count " +
                            std::to_string(vectors.rows()));
  }
  const auto cands = index.candidates(query);
  std::vector<double> scores(cands.size());
  const float* q = query.values().data();
  for (std::size_t c = 0; c < cands.size(); ++c) {
    scores[c] = detail::dot_f64(vectors.row(cands[c]).data(), q, vectors.dim());
  }

  LshResult result;
  result.candidates = cands.size();
  for (auto local : top_indices(scores, std::min(k, cands.size()))) result.ids.push_back(cands[local]);
  if (result.ids.size() < k) {
    result.padded = true;
    for (std::uint32_t id = 0; result.ids.size() < k; ++id) {
      if (!std::binary_search(cands.begin(), cands.end(), id)) result.ids.push_back(id);
    }
  }
  result.ops = static_cast<std::uint64_t>(cands.size()) * vectors.dim() +
               static_cast<std::uint64_t>(index.tables()) * index.bits() * index.lifted_dim();
  return result;
}

}  // namespace mabbp
