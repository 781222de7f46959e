#include "mabbp/median_elimination.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include <absl/container/flat_hash_map.h>

#include "mabbp/concentration.hpp"
#include "mabbp/errors.hpp"

namespace mabbp {

void EliminationConfig::validate() const {
  if (k == 0) throw ConfigError("K must be at least 1");
  if (!(epsilon >= 0.0) || std::isinf(epsilon)) throw ConfigError("epsilon must be finite and >= 0");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
  if (!(range_width > 0.0) || std::isinf(range_width)) {
    throw ConfigError("reward range width must be finite and positive");
  }
  if (workers == 0) throw ConfigError("workers must be at least 1");
}

ScheduleStep elimination_schedule(double epsilon, double delta, std::size_t round) {
  if (round == 0) throw PreconditionError("elimination rounds are numbered from 1");
  const double l = static_cast<double>(round);
  return {epsilon / 4.0 * std::pow(0.75, l - 1.0), delta / std::pow(2.0, l)};
}

std::size_t elimination_count(std::size_t surviving, std::size_t k) {
  if (surviving <= k) {
    throw PreconditionError("elimination needs more than K=" + std::to_string(k) + " arms, got " +
                            std::to_string(surviving));
  }
  return (surviving - k + 1) / 2;
}

std::size_t round_pull_target(std::size_t surviving, std::size_t k, double epsilon_l,
                              double delta_l, double range_width, std::size_t length) {
  if (surviving <= k) {
    throw PreconditionError("round target needs more than K=" + std::to_string(k) + " arms");
  }
  if (epsilon_l == 0.0) return length;
  if (!(epsilon_l > 0.0)) throw DomainError("round epsilon must be non-negative");
  if (!(delta_l > 0.0 && delta_l < 1.0)) throw DomainError("round delta must lie in (0, 1)");
  if (!(range_width > 0.0)) throw DomainError("range width must be positive");

  const std::size_t excess = surviving - k;
  const double kept_extra = static_cast<double>(excess / 2 + 1);
  const double ratio = 2.0 * static_cast<double>(excess) / (delta_l * kept_extra);
  const double u = 2.0 * range_width * range_width / (epsilon_l * epsilon_l) * std::log(ratio);
  return sample_size_ceil(u, length);
}

std::vector<ArmState> eliminate(std::vector<ArmState> survivors, std::size_t k) {
  const std::size_t drop = elimination_count(survivors.size(), k);
  // Strict order in which arms are discarded: lower mean first, then larger id.
  auto discard_before = [](const ArmState& a, const ArmState& b) {
    const auto ma = a.empirical_mean();
    const auto mb = b.empirical_mean();
    if (ma.has_value() != mb.has_value()) return !ma.has_value();
    if (ma && *ma != *mb) return *ma < *mb;
    return a.arm_id > b.arm_id;
  };
  std::nth_element(survivors.begin(), survivors.begin() + static_cast<std::ptrdiff_t>(drop),
                   survivors.end(), discard_before);
  survivors.erase(survivors.begin(), survivors.begin() + static_cast<std::ptrdiff_t>(drop));
  std::sort(survivors.begin(), survivors.end(),
            [](const ArmState& a, const ArmState& b) { return a.arm_id < b.arm_id; });
  return survivors;
}

namespace {

struct Slot {
  ArmState* state;
  RewardSource* source;
};

void pull_round(std::vector<Slot>& slots, std::size_t count, unsigned workers) {
  if (count == 0) return;
  if (workers <= 1 || slots.size() < 2 * static_cast<std::size_t>(workers)) {
    for (auto& s : slots) pull_batch(*s.source, *s.state, count);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (slots.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(slots.size(), w * chunk);
      const std::size_t end = std::min(slots.size(), begin + chunk);
      pool.emplace_back([&, w, begin, end] {
        try {
          for (std::size_t i = begin; i < end; ++i) pull_batch(*slots[i].source, *slots[i].state, count);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

TopKResult median_elimination_topk(std::span<RewardSource> sources, const EliminationConfig& config) {
  config.validate();
  if (sources.empty()) throw ConfigError("median elimination needs at least one arm");

  const std::size_t length = sources.front().length();
  absl::flat_hash_map<ArmId, std::size_t> index_of;
  index_of.reserve(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (sources[i].length() != length) {
      throw ConfigError("arm " + std::to_string(sources[i].arm_id()) + " has " +
                        std::to_string(sources[i].length()) + " rewards, expected " +
                        std::to_string(length));
    }
    if (!index_of.emplace(sources[i].arm_id(), i).second) {
      throw ConfigError("duplicate arm id " + std::to_string(sources[i].arm_id()));
    }
    sources[i].reseed(config.seed);
  }

  TopKResult result;
  auto& trace = result.trace;

  std::vector<ArmState> survivors;
  survivors.reserve(sources.size());
  for (const auto& s : sources) survivors.push_back(ArmState{s.arm_id(), 0, 0.0});
  std::sort(survivors.begin(), survivors.end(),
            [](const ArmState& a, const ArmState& b) { return a.arm_id < b.arm_id; });

  std::size_t reached = 0;
  for (std::size_t round = 1; survivors.size() > config.k; ++round) {
    const auto step = elimination_schedule(config.epsilon, config.delta, round);
    const std::size_t target = round_pull_target(survivors.size(), config.k, step.epsilon,
                                                 step.delta, config.range_width, length);
    const std::size_t cumulative = std::max(reached, target);
    const std::size_t increment = cumulative - reached;

    std::vector<Slot> slots;
    slots.reserve(survivors.size());
    for (auto& st : survivors) slots.push_back({&st, &sources[index_of.at(st.arm_id)]});
    pull_round(slots, increment, config.workers);

    trace.total_pulls += static_cast<std::uint64_t>(increment) * survivors.size();
    trace.rounds.push_back({round, survivors.size(), step.epsilon, step.delta, cumulative});
    reached = cumulative;
    survivors = eliminate(std::move(survivors), config.k);
  }
  trace.max_arm_pulls = reached;

  std::sort(survivors.begin(), survivors.end(), [](const ArmState& a, const ArmState& b) {
    const double ma = a.empirical_mean().value_or(0.0);
    const double mb = b.empirical_mean().value_or(0.0);
    if (ma != mb) return ma > mb;
    return a.arm_id < b.arm_id;
  });
  for (const auto& st : survivors) {
    result.ids.push_back(st.arm_id);
    trace.returned.push_back(st.arm_id);
  }
  trace.returned_states = std::move(survivors);
  return result;
}

}  // namespace mabbp
