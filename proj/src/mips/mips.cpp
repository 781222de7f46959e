#include "mabbp/mips.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mabbp/errors.hpp"

namespace mabbp {

namespace {

double max_abs(std::span<const float> values) {
  double bound = 0.0;
  for (float x : values) bound = std::max(bound, static_cast<double>(std::fabs(x)));
  return bound;
}

void check_dims(const VectorSet& vectors, const Query& query) {
  if (vectors.dim() != query.dim()) {
    throw ConfigError("query has dimension " + std::to_string(query.dim()) +
                      " but vectors have dimension " + std::to_string(vectors.dim()));
  }
}

}  // namespace

VectorSet::VectorSet(std::size_t rows, std::size_t dim, std::vector<float> data)
    : rows_(rows), dim_(dim), data_(std::move(data)) {
  if (rows_ == 0 || dim_ == 0) throw ConfigError("vector set needs n >= 1 and N >= 1");
  if (data_.size() != rows_ * dim_) {
    throw ConfigError("vector set payload has " + std::to_string(data_.size()) + " values, expected " +
                      std::to_string(rows_ * dim_));
  }
  recompute_bound();
}

void VectorSet::set(std::size_t i, std::size_t j, float value) {
  if (i >= rows_ || j >= dim_) throw ConfigError("vector set index out of range");
  const double old = std::fabs(data_[i * dim_ + j]);
  data_[i * dim_ + j] = value;
  if (std::fabs(value) >= coord_bound_) {
    coord_bound_ = std::fabs(value);
  } else if (old == coord_bound_) {
    recompute_bound();
  }
}

void VectorSet::recompute_bound() { coord_bound_ = max_abs(data_); }

Query::Query(std::vector<float> values) : values_(std::move(values)) {
  if (values_.empty()) throw ConfigError("query must have dimension >= 1");
  coord_bound_ = max_abs(values_);
}

CoordinateRewardOracle::CoordinateRewardOracle(const VectorSet& vectors, const Query& query,
                                               ObjectiveKind kind)
    : vectors_(&vectors), query_(query.values().begin(), query.values().end()), kind_(kind) {
  check_dims(vectors, query);
}

double CoordinateRewardOracle::reward(ArmId arm, std::size_t position) const {
  const double v = vectors_->at(arm, position);
  const double q = query_[position];
  if (kind_ == ObjectiveKind::inner_product) return v * q;
  const double d = q - v;
  return -(d * d);
}

double CoordinateRewardOracle::sum_at(ArmId arm, std::span<const std::uint32_t> positions) const {
  const float* v = vectors_->row(arm).data();
  const double* q = query_.data();
  double sum = 0.0;
  if (kind_ == ObjectiveKind::inner_product) {
    for (std::uint32_t p : positions) sum += static_cast<double>(v[p]) * q[p];
  } else {
    for (std::uint32_t p : positions) {
      const double d = q[p] - static_cast<double>(v[p]);
      sum -= d * d;
    }
  }
  return sum;
}

std::vector<RewardSource> build_arms(const VectorSet& vectors, const Query& query, ObjectiveKind kind) {
  auto oracle = std::make_shared<const CoordinateRewardOracle>(vectors, query, kind);
  std::vector<RewardSource> arms;
  arms.reserve(vectors.rows());
  for (std::size_t i = 0; i < vectors.rows(); ++i) {
    arms.push_back(RewardSource::lazy(static_cast<ArmId>(i), oracle));
  }
  return arms;
}

RewardRange reward_range(const VectorSet& vectors, const Query& query, ObjectiveKind kind) {
  check_dims(vectors, query);
  const double mv = vectors.coord_bound();
  const double mq = query.coord_bound();
  RewardRange range;
  if (kind == ObjectiveKind::inner_product) {
    range = {-mv * mq, mv * mq};
  } else {
    const double reach = mq + mv;
    range = {-(reach * reach), 0.0};
  }
  if (!(range.width() > 0.0)) throw DegenerateRangeError("reward range has zero width");
  return range;
}

std::vector<double> exact_means(const VectorSet& vectors, const Query& query, ObjectiveKind kind) {
  check_dims(vectors, query);
  const auto q = query.values();
  std::vector<double> means(vectors.rows());
  for (std::size_t i = 0; i < vectors.rows(); ++i) {
    const auto v = vectors.row(i);
    double sum = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      const double a = v[j];
      const double b = q[j];
      sum += kind == ObjectiveKind::inner_product ? a * b : -((b - a) * (b - a));
    }
    means[i] = sum / static_cast<double>(v.size());
  }
  return means;
}

SearchResult bandit_topk(const VectorSet& vectors, const Query& query, const SearchParams& params) {
  check_dims(vectors, query);
  if (params.k == 0) throw ConfigError("K must be at least 1");

  SearchResult result;
  const double n_dim = static_cast<double>(vectors.dim());
  RewardRange range;
  try {
    range = reward_range(vectors, query, params.kind);
  } catch (const DegenerateRangeError&) {
    const std::size_t take = std::min(params.k, vectors.rows());
    for (std::size_t i = 0; i < take; ++i) {
      result.ids.push_back(static_cast<ArmId>(i));
      result.trace.returned.push_back(static_cast<ArmId>(i));
      result.trace.returned_states.push_back(ArmState{static_cast<ArmId>(i), 0, 0.0});
    }
    result.estimated_scores.assign(take, 0.0);
    result.trace.degenerate_range = true;
    return result;
  }

  EliminationConfig config;
  config.k = params.k;
  config.epsilon = params.scale == EpsilonScale::range_fraction ? params.epsilon * range.width()
                                                                 : params.epsilon;
  config.delta = params.delta;
  config.range_width = range.width();
  config.seed = params.seed;
  config.workers = params.workers;

  auto arms = build_arms(vectors, query, params.kind);
  auto topk = median_elimination_topk(arms, config);
  result.ids = std::move(topk.ids);
  result.trace = std::move(topk.trace);
  result.estimated_scores.reserve(result.ids.size());
  for (const auto& st : result.trace.returned_states) {
    result.estimated_scores.push_back(st.empirical_mean().value_or(0.0) * n_dim);
  }
  return result;
}

SearchResult mips_topk(const VectorSet& vectors, const Query& query, std::size_t k, double epsilon,
                       double delta, std::uint64_t seed) {
  SearchParams params;
  params.k = k;
  params.epsilon = epsilon;
  params.delta = delta;
  params.seed = seed;
  return bandit_topk(vectors, query, params);
}

}  // namespace mabbp
