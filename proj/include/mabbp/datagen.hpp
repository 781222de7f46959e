#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mabbp/mips.hpp"
#include "mabbp/reward_source.hpp"

namespace mabbp {

enum class Distribution { adversarial, gaussian, uniform };

Distribution parse_distribution(std::string_view name);
std::string_view distribution_name(Distribution dist);

struct DatasetSpec {
  Distribution dist = Distribution::gaussian;
  std::size_t n = 1;
  std::size_t dim = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Bernoulli-like arms whose reward lists hold round(r_a N) ones followed by
/// zeros. Pulled in stored order, every arm looks perfect until its ones run
/// out.
struct AdversarialInstance {
  std::size_t dim = 0;
  std::vector<double> target_means;  // r_a ~ U[0, 1)
  std::vector<std::size_t> ones;     // floor(r_a N + 0.5)

  std::size_t arms() const { return ones.size(); }
  double list_mean(std::size_t arm) const;
  // Exact mean of every arm's reward list.
  std::vector<double> true_means() const;
  std::vector<double> reward_list(std::size_t arm) const;
  std::vector<RewardSource> sources() const;
  // n x N 0/1 matrix, one reward list per row.
  VectorSet as_vectors() const;
};

// floor(r N + 0.5), capped at N.
std::size_t adversarial_ones(double r, std::size_t dim);

AdversarialInstance gen_adversarial(const DatasetSpec& spec);

/// Standard normal or U[0, 1) entries; row i depends only on (seed, i).
VectorSet gen_vectors(const DatasetSpec& spec);

}  // namespace mabbp
