#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mabbp/mips.hpp"
#include "mabbp/results.hpp"

namespace mabbp {

// ---- validation on adversarial instances ----

struct ValidateParams {
  std::vector<double> epsilons{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  std::vector<double> deltas{0.01, 0.05, 0.1, 0.2, 0.3};
  std::size_t n = 500;
  std::size_t dim = 5000;
  std::size_t runs = 20;
  std::size_t k = 1;
  std::uint64_t seed = 0;
  bool timing = false;  // wall_ms stays null otherwise, keeping output reproducible
  unsigned workers = 1;
};

struct ValidateCell {
  double epsilon = 0.0;
  double delta = 0.0;
  double percentile_suboptimality = 0.0;  // (1 - delta) nearest-rank percentile
  double mean_suboptimality = 0.0;
  std::size_t max_arm_pulls = 0;
  bool pass = false;  // percentile <= epsilon
};

struct ValidateReport {
  std::vector<RunRecord> records;
  std::vector<ValidateCell> cells;
  std::size_t pull_bound_violations = 0;

  bool all_pass() const;
  // Mean over delta of the per-cell percentiles, one entry per epsilon.
  std::vector<std::pair<double, double>> mean_percentile_by_epsilon() const;
};

/// Runs median elimination `runs` times per (epsilon, delta) cell, each run on
/// a fresh adversarial instance derived from (seed, cell, run).
ValidateReport run_validate(const ValidateParams& params);

// ---- precision / speedup comparison ----

enum class Method { me, lsh, naive };

Method parse_method(std::string_view name);
std::string_view method_name(Method method);

struct CompareParams {
  std::vector<Method> methods{Method::me, Method::lsh, Method::naive};
  std::size_t k = 5;
  // Fractions of each query's reward range width.
  std::vector<double> epsilons{0.02, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 1.0, 1.5, 2.0, 3.0, 5.0};
  std::vector<double> deltas{0.1, 0.5, 0.9};
  std::vector<std::size_t> lsh_bits{1, 2, 4, 8, 12, 16, 20};
  std::vector<std::size_t> lsh_tables{1, 5, 10, 25, 50};
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

/// Averages precision against exact search over `queries` for every knob
/// setting. speedup_ops is n*N over the mean op count per query; speedup_wall
/// is mean exact-search time over mean method time (index build excluded).
/// Rows come back sorted by method name, then knob values.
std::vector<CurvePoint> run_compare(const VectorSet& vectors, const std::vector<Query>& queries,
                                    const CompareParams& params);

struct DominanceCheck {
  std::size_t compared = 0;  // LSH points at or above the speedup floor
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// For each LSH point with speedup_ops >= min_speedup, compares against the
/// best ME precision among ME points with at least that speedup. An LSH point
/// no ME point can match counts as a violation.
DominanceCheck check_me_dominates_lsh(const std::vector<CurvePoint>& curve, double min_speedup);

// ---- single query ----

struct QueryReport {
  SearchResult search;
  std::uint64_t ops_naive = 0;
  double speedup_ops = 0.0;
};

QueryReport run_query(const VectorSet& vectors, const Query& query, const SearchParams& params);

}  // namespace mabbp
