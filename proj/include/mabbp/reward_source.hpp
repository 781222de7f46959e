#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <absl/container/flat_hash_map.h>

namespace mabbp {

using ArmId = std::uint32_t;

/// Computes rewards on demand instead of storing every arm's list.
/// Implementations must be safe to call concurrently for different arms.
class RewardOracle {
 public:
  virtual ~RewardOracle() = default;

  virtual std::size_t length() const = 0;
  virtual double reward(ArmId arm, std::size_t position) const = 0;

  // Sum of rewards at the given positions; override when a tighter loop helps.
  virtual double sum_at(ArmId arm, std::span<const std::uint32_t> positions) const;
};

enum class RewardKind { materialized, adversarial_stream, lazy };

/// One arm's finite reward list, consumed without replacement.
///
/// Materialized and lazy sources return rewards at uniformly random
/// unconsumed positions. Adversarial streams return them in stored order.
/// Position bookkeeping is a sparse Fisher-Yates shuffle: only displaced
/// indices are stored, so memory grows with the number of pulls, not N.
class RewardSource {
 public:
  static RewardSource materialized(ArmId arm, std::vector<double> rewards);
  static RewardSource adversarial_stream(ArmId arm, std::vector<double> rewards);
  static RewardSource lazy(ArmId arm, std::shared_ptr<const RewardOracle> oracle);

  ArmId arm_id() const { return arm_; }
  RewardKind kind() const { return kind_; }
  std::size_t length() const { return length_; }
  std::size_t consumed() const { return consumed_; }
  std::size_t remaining() const { return length_ - consumed_; }

  /// Forgets all consumed positions and reseeds the per-arm generator from
  /// (master_seed, arm_id).
  void reseed(std::uint64_t master_seed);

  /// Draws `count` unconsumed rewards and returns their sum. When `drawn` is
  /// non-null the individual rewards are appended to it in draw order.
  /// Throws OverdrawError if fewer than `count` rewards remain.
  double draw(std::size_t count, std::vector<double>* drawn = nullptr);

  double reward_at(std::size_t position) const;

  // Mean of the whole list; O(N).
  double true_mean() const;

 private:
  RewardSource(ArmId arm, RewardKind kind, std::size_t length);

  void densify();
  std::uint32_t take_position();
  double sum_positions(std::span<const std::uint32_t> positions) const;

  ArmId arm_;
  RewardKind kind_;
  std::size_t length_;
  std::size_t consumed_ = 0;
  std::shared_ptr<const std::vector<double>> values_;
  std::shared_ptr<const RewardOracle> oracle_;
  std::mt19937_64 rng_;
  absl::flat_hash_map<std::uint32_t, std::uint32_t> displaced_;
  // Past half the list a dense permutation is no larger than the map.
  std::vector<std::uint32_t> dense_;
};

struct ArmState {
  ArmId arm_id = 0;
  std::size_t pulls = 0;
  double reward_sum = 0.0;

  // Undefined before the first pull.
  std::optional<double> empirical_mean() const {
    if (pulls == 0) return std::nullopt;
    return reward_sum / static_cast<double>(pulls);
  }
};

/// Pulls `source` `count` more times and folds the rewards into `state`.
/// Throws OverdrawError if state.pulls + count exceeds the list length, and
/// ConfigError if the state does not belong to the source.
void pull_batch(RewardSource& source, ArmState& state, std::size_t count);

}  // namespace mabbp
