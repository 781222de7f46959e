#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "mabbp/median_elimination.hpp"
#include "mabbp/reward_source.hpp"

namespace mabbp {

/// n dense vectors of dimension N, stored row-major as floats.
/// coord_bound() is max |v_i^(j)| over every entry and stays exact across set().
class VectorSet {
 public:
  VectorSet(std::size_t rows, std::size_t dim, std::vector<float> data);

  std::size_t rows() const { return rows_; }
  std::size_t dim() const { return dim_; }
  double coord_bound() const { return coord_bound_; }
  const std::vector<float>& data() const { return data_; }

  std::span<const float> row(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
  float at(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  void set(std::size_t i, std::size_t j, float value);

 private:
  void recompute_bound();

  std::size_t rows_;
  std::size_t dim_;
  std::vector<float> data_;
  double coord_bound_ = 0.0;
};

class Query {
 public:
  explicit Query(std::vector<float> values);

  std::size_t dim() const { return values_.size(); }
  double coord_bound() const { return coord_bound_; }
  std::span<const float> values() const { return values_; }

 private:
  std::vector<float> values_;
  double coord_bound_ = 0.0;
};

enum class ObjectiveKind {
  inner_product,    // f(i, j) = v_i^(j) q^(j)
  neg_sq_distance,  // f(i, j) = -(q^(j) - v_i^(j))^2
};

/// Rewards f(i, j) computed on demand from the vectors and a query.
/// Holds a pointer to `vectors`, which must outlive the oracle.
class CoordinateRewardOracle final : public RewardOracle {
 public:
  CoordinateRewardOracle(const VectorSet& vectors, const Query& query, ObjectiveKind kind);

  std::size_t length() const override { return vectors_->dim(); }
  double reward(ArmId arm, std::size_t position) const override;
  double sum_at(ArmId arm, std::span<const std::uint32_t> positions) const override;

 private:
  const VectorSet* vectors_;
  std::vector<double> query_;
  ObjectiveKind kind_;
};

/// One lazy arm per vector; arm i is row i. No n x N reward matrix is built.
/// Throws ConfigError on a dimension mismatch.
std::vector<RewardSource> build_arms(const VectorSet& vectors, const Query& query, ObjectiveKind kind);

struct RewardRange {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

/// Bounds every reward from the coordinate magnitudes M_v and M_q:
/// inner product -> [-M_v M_q, M_v M_q]; negative squared distance ->
/// [-(M_q + M_v)^2, 0]. Throws DegenerateRangeError on zero width.
RewardRange reward_range(const VectorSet& vectors, const Query& query, ObjectiveKind kind);

/// Exact per-arm means (1/N) sum_j f(i, j), computed by direct summation.
std::vector<double> exact_means(const VectorSet& vectors, const Query& query, ObjectiveKind kind);

enum class EpsilonScale {
  mean,            // epsilon is on the (1/N) q^T v scale
  range_fraction,  // epsilon is a fraction of the reward range width
};

struct SearchParams {
  std::size_t k = 1;
  double epsilon = 0.1;
  double delta = 0.1;
  std::uint64_t seed = 0;
  ObjectiveKind kind = ObjectiveKind::inner_product;
  EpsilonScale scale = EpsilonScale::mean;
  unsigned workers = 1;
};

struct SearchResult {
  std::vector<ArmId> ids;
  // Empirical mean times N for each returned id (estimated q^T v for MIPS).
  std::vector<double> estimated_scores;
  EliminationTrace trace;
};

/// Runs median elimination over the lazy arms of `vectors` against `query`.
/// A zero-width reward range returns the first K ids with
/// trace.degenerate_range set and no pulls.
SearchResult bandit_topk(const VectorSet& vectors, const Query& query, const SearchParams& params);

/// MIPS shorthand: inner-product objective with epsilon on the mean scale.
SearchResult mips_topk(const VectorSet& vectors, const Query& query, std::size_t k, double epsilon,
                       double delta, std::uint64_t seed);

}  // namespace mabbp
