#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mabbp/reward_source.hpp"

namespace mabbp {

struct EliminationConfig {
  std::size_t k = 1;
  // Accuracy on the per-pull mean scale. Zero requests exact answers: every
  // round target becomes the full list length.
  double epsilon = 0.1;
  double delta = 0.1;
  // (b - a) of the reward lists.
  double range_width = 1.0;
  std::uint64_t seed = 0;
  // Threads used to pull survivors within a round. Results do not depend on it.
  unsigned workers = 1;

  // Throws ConfigError when a field is out of range.
  void validate() const;
};

struct RoundRecord {
  std::size_t index = 0;      // l, starting at 1
  std::size_t surviving = 0;  // |S_l| at the start of the round
  double epsilon = 0.0;       // epsilon_l
  double delta = 0.0;         // delta_l
  std::size_t target = 0;     // cumulative pulls per survivor after the round
};

struct EliminationTrace {
  std::vector<RoundRecord> rounds;
  std::uint64_t total_pulls = 0;
  std::size_t max_arm_pulls = 0;
  std::vector<ArmId> returned;
  // States of the returned arms, same order as `returned`.
  std::vector<ArmState> returned_states;
  // Set by callers that skipped elimination because all means coincide.
  bool degenerate_range = false;
};

struct ScheduleStep {
  double epsilon = 0.0;
  double delta = 0.0;
};

/// epsilon_l = (epsilon/4)(3/4)^(l-1), delta_l = delta / 2^l for l >= 1.
ScheduleStep elimination_schedule(double epsilon, double delta, std::size_t round);

/// Number of arms removed from a round that starts with `surviving` arms.
std::size_t elimination_count(std::size_t surviving, std::size_t k);

/// Cumulative per-arm pull target t_l for one round:
///   u_l = (2 w^2 / eps_l^2) ln(2(|S_l|-K) / (delta_l (floor((|S_l|-K)/2) + 1)))
///   t_l = clamp(ceil(m(u_l)), 0, N).
/// eps_l == 0 yields N. Throws PreconditionError when surviving <= k.
std::size_t round_pull_target(std::size_t surviving, std::size_t k, double epsilon_l,
                              double delta_l, double range_width, std::size_t length);

/// Drops ceil((|S|-K)/2) arms with the smallest empirical means. Among equal
/// means the larger arm id goes first; arms never pulled rank below every
/// pulled arm. Survivors come back sorted by arm id.
std::vector<ArmState> eliminate(std::vector<ArmState> survivors, std::size_t k);

struct TopKResult {
  std::vector<ArmId> ids;
  EliminationTrace trace;
};

/// Top-K median elimination over arms with bounded pulls.
///
/// Every source is reseeded from config.seed before the first pull, so the
/// outcome is a pure function of (sources, config). Returned ids are ordered
/// by descending empirical mean, ties by smaller id; when there are no more
/// arms than K all ids are returned in order with zero pulls.
TopKResult median_elimination_topk(std::span<RewardSource> sources, const EliminationConfig& config);

}  // namespace mabbp
