#include "mabbp/reward_source.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "mabbp/errors.hpp"
#include "mabbp/rng.hpp"

namespace mabbp {

double RewardOracle::sum_at(ArmId arm, std::span<const std::uint32_t> positions) const {
  double sum = 0.0;
  for (std::uint32_t p : positions) sum += reward(arm, p);
  return sum;
}

namespace {

void check_length(std::size_t length) {
  if (length == 0) throw ConfigError("reward list must not be empty");
  if (length > std::numeric_limits<std::uint32_t>::max()) {
    throw ConfigError("reward list longer than 2^32 - 1 entries");
  }
}

}  // namespace

RewardSource::RewardSource(ArmId arm, RewardKind kind, std::size_t length)
    : arm_(arm), kind_(kind), length_(length) {
  reseed(0);
}

RewardSource RewardSource::materialized(ArmId arm, std::vector<double> rewards) {
  check_length(rewards.size());
  RewardSource source(arm, RewardKind::materialized, rewards.size());
  source.values_ = std::make_shared<const std::vector<double>>(std::move(rewards));
  return source;
}

RewardSource RewardSource::adversarial_stream(ArmId arm, std::vector<double> rewards) {
  check_length(rewards.size());
  RewardSource source(arm, RewardKind::adversarial_stream, rewards.size());
  source.values_ = std::make_shared<const std::vector<double>>(std::move(rewards));
  return source;
}

RewardSource RewardSource::lazy(ArmId arm, std::shared_ptr<const RewardOracle> oracle) {
  if (!oracle) throw ConfigError("lazy reward source needs an oracle");
  check_length(oracle->length());
  RewardSource source(arm, RewardKind::lazy, oracle->length());
  source.oracle_ = std::move(oracle);
  return source;
}

void RewardSource::reseed(std::uint64_t master_seed) {
  consumed_ = 0;
  displaced_ = {};
  dense_ = {};
  rng_.seed(derive_seed(master_seed, {arm_}));
}

void RewardSource::densify() {
  dense_.resize(length_);
  std::iota(dense_.begin(), dense_.end(), 0U);
  for (const auto& [from, to] : displaced_) dense_[from] = to;
  displaced_.clear();
}

std::uint32_t RewardSource::take_position() {
  const auto i = static_cast<std::uint32_t>(consumed_);
  const std::uint64_t left = length_ - consumed_;
  std::uint32_t j = i;
  if (left > 1) {
    std::uniform_int_distribution<std::uint64_t> pick(0, left - 1);
    j = i + static_cast<std::uint32_t>(pick(rng_));
  }
  if (!dense_.empty()) {
    std::swap(dense_[i], dense_[j]);
    ++consumed_;
    return dense_[i];
  }
  auto lookup = [this](std::uint32_t x) {
    auto it = displaced_.find(x);
    return it == displaced_.end() ? x : it->second;
  };
  const std::uint32_t picked = lookup(j);
  if (j != i) displaced_[j] = lookup(i);
  displaced_.erase(i);
  ++consumed_;
  return picked;
}

double RewardSource::sum_positions(std::span<const std::uint32_t> positions) const {
  if (kind_ == RewardKind::lazy) return oracle_->sum_at(arm_, positions);
  const auto& values = *values_;
  double sum = 0.0;
  for (std::uint32_t p : positions) sum += values[p];
  return sum;
}

double RewardSource::draw(std::size_t count, std::vector<double>* drawn) {
  if (count > remaining()) {
    throw OverdrawError("arm " + std::to_string(arm_) + ": requested " + std::to_string(count) +
                        " pulls with " + std::to_string(remaining()) + " rewards left");
  }
  if (count == 0) return 0.0;

  if (kind_ == RewardKind::adversarial_stream) {
    const auto& values = *values_;
    double sum = 0.0;
    for (std::size_t p = consumed_; p < consumed_ + count; ++p) {
      sum += values[p];
      if (drawn) drawn->push_back(values[p]);
    }
    consumed_ += count;
    return sum;
  }

  std::vector<std::uint32_t> positions;
  positions.reserve(count);
  if (drawn == nullptr && count == remaining()) {
    // Exhausting the list: the remaining set is fixed, so skip the shuffle.
    for (std::size_t i = consumed_; i < length_; ++i) {
      const auto x = static_cast<std::uint32_t>(i);
      if (!dense_.empty()) {
        positions.push_back(dense_[x]);
        continue;
      }
      auto it = displaced_.find(x);
      positions.push_back(it == displaced_.end() ? x : it->second);
    }
    consumed_ = length_;
  } else {
    if (dense_.empty() && 2 * (consumed_ + count) > length_) densify();
    for (std::size_t c = 0; c < count; ++c) positions.push_back(take_position());
  }
  if (consumed_ == length_) {
    displaced_ = {};
    dense_ = {};
  }
  if (drawn) {
    for (std::uint32_t p : positions) drawn->push_back(reward_at(p));
  }
  return sum_positions(positions);
}

double RewardSource::reward_at(std::size_t position) const {
  if (position >= length_) throw DomainError("reward position out of range");
  if (kind_ == RewardKind::lazy) return oracle_->reward(arm_, position);
  return (*values_)[position];
}

double RewardSource::true_mean() const {
  if (kind_ != RewardKind::lazy) {
    return std::accumulate(values_->begin(), values_->end(), 0.0) / static_cast<double>(length_);
  }
  std::vector<std::uint32_t> all(length_);
  std::iota(all.begin(), all.end(), 0U);
  return oracle_->sum_at(arm_, all) / static_cast<double>(length_);
}

void pull_batch(RewardSource& source, ArmState& state, std::size_t count) {
  if (state.arm_id != source.arm_id()) {
    throw ConfigError("arm state " + std::to_string(state.arm_id) + " does not belong to source " +
                      std::to_string(source.arm_id()));
  }
  if (state.pulls != source.consumed()) {
    throw ConfigError("arm state pull count out of sync with its source");
  }
  if (state.pulls + count > source.length()) {
    throw OverdrawError("arm " + std::to_string(state.arm_id) + ": " + std::to_string(state.pulls) +
                        " + " + std::to_string(count) + " pulls exceed list length " +
                        std::to_string(source.length()));
  }
  state.reward_sum += source.draw(count);
  state.pulls += count;
}

}  // namespace mabbp
