#include "mabbp/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "mabbp/errors.hpp"
#include "mabbp/rng.hpp"

namespace mabbp {

Distribution parse_distribution(std::string_view name) {
  if (name == "adversarial") return Distribution::adversarial;
  if (name == "gaussian") return Distribution::gaussian;
  if (name == "uniform") return Distribution::uniform;
  throw ConfigError("unknown distribution '" + std::string(name) + "'");
}

std::string_view distribution_name(Distribution dist) {
  switch (dist) {
    case Distribution::adversarial:
      return "adversarial";
    case Distribution::gaussian:
      return "gaussian";
    case Distribution::uniform:
      return "uniform";
  }
  return "unknown";
}

void DatasetSpec::validate() const {
  if (n == 0 || dim == 0) throw ConfigError("dataset needs n >= 1 and N >= 1");
}

double AdversarialInstance::list_mean(std::size_t arm) const {
  return static_cast<double>(ones.at(arm)) / static_cast<double>(dim);
}

std::vector<double> AdversarialInstance::true_means() const {
  std::vector<double> means(arms());
  for (std::size_t a = 0; a < arms(); ++a) means[a] = list_mean(a);
  return means;
}

std::vector<double> AdversarialInstance::reward_list(std::size_t arm) const {
  std::vector<double> list(dim, 0.0);
  std::fill(list.begin(), list.begin() + static_cast<std::ptrdiff_t>(ones.at(arm)), 1.0);
  return list;
}

std::vector<RewardSource> AdversarialInstance::sources() const {
  std::vector<RewardSource> out;
  out.reserve(arms());
  for (std::size_t a = 0; a < arms(); ++a) {
    out.push_back(RewardSource::adversarial_stream(static_cast<ArmId>(a), reward_list(a)));
  }
  return out;
}

VectorSet AdversarialInstance::as_vectors() const {
  std::vector<float> data(arms() * dim, 0.0f);
  for (std::size_t a = 0; a < arms(); ++a) {
    std::fill_n(data.begin() + static_cast<std::ptrdiff_t>(a * dim), ones[a], 1.0f);
  }
  return VectorSet(arms(), dim, std::move(data));
}

std::size_t adversarial_ones(double r, std::size_t dim) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("adversarial mean must lie in [0, 1]");
  return std::min(dim, static_cast<std::size_t>(std::floor(r * static_cast<double>(dim) + 0.5)));
}

AdversarialInstance gen_adversarial(const DatasetSpec& spec) {
  spec.validate();
  if (spec.dist != Distribution::adversarial) throw ConfigError("gen_adversarial needs dist=adversarial");
  AdversarialInstance inst;
  inst.dim = spec.dim;
  inst.target_means.resize(spec.n);
  inst.ones.resize(spec.n);
  for (std::size_t a = 0; a < spec.n; ++a) {
    std::mt19937_64 rng(derive_seed(spec.seed, {a}));
    const double r = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    inst.target_means[a] = r;
    inst.ones[a] = adversarial_ones(r, spec.dim);
  }
  return inst;
}

VectorSet gen_vectors(const DatasetSpec& spec) {
  spec.validate();
  if (spec.dist == Distribution::adversarial) {
    return gen_adversarial(spec).as_vectors();
  }
  std::vector<float> data(spec.n * spec.dim);
  for (std::size_t i = 0; i < spec.n; ++i) {
    std::mt19937_64 rng(derive_seed(spec.seed, {i}));
    float* row = data.data() + i * spec.dim;
    if (spec.dist == Distribution::gaussian) {
      std::normal_distribution<double> normal(0.0, 1.0);
      for (std::size_t j = 0; j < spec.dim; ++j) row[j] = static_cast<float>(normal(rng));
    } else {
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      for (std::size_t j = 0; j < spec.dim; ++j) {
        float x = static_cast<float>(unit(rng));
        // Rounding to float can land on 1.0.
        if (x >= 1.0f) x = std::nextafter(1.0f, 0.0f);
        row[j] = x;
      }
    }
  }
  return VectorSet(spec.n, spec.dim, std::move(data));
}

}  // namespace mabbp
