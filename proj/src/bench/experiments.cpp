#include "mabbp/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>

#include "mabbp/datagen.hpp"
#include "mabbp/errors.hpp"
#include "mabbp/exact.hpp"
#include "mabbp/lsh.hpp"
#include "mabbp/median_elimination.hpp"
#include "mabbp/metrics.hpp"
#include "mabbp/rng.hpp"

namespace mabbp {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fmt_g(double x) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%g", x);
  return std::string(buf, static_cast<std::size_t>(len));
}

}  // namespace

bool ValidateReport::all_pass() const {
  return pull_bound_violations == 0 &&
         std::all_of(cells.begin(), cells.end(), [](const ValidateCell& c) { return c.pass; });
}

std::vector<std::pair<double, double>> ValidateReport::mean_percentile_by_epsilon() const {
  std::vector<std::pair<double, double>> out;
  std::vector<std::size_t> counts;
  for (const auto& c : cells) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& e) { return e.first == c.epsilon; });
    if (it == out.end()) {
      out.emplace_back(c.epsilon, 0.0);
      counts.push_back(0);
      it = out.end() - 1;
    }
    const auto slot = static_cast<std::size_t>(it - out.begin());
    it->second += c.percentile_suboptimality;
    ++counts[slot];
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i].second /= static_cast<double>(counts[i]);
  return out;
}

ValidateReport run_validate(const ValidateParams& params) {
  if (params.runs == 0) throw ConfigError("validate needs at least one run per cell");
  if (params.epsilons.empty() || params.deltas.empty()) throw ConfigError("validate grid is empty");
  for (double e : params.epsilons) {
    if (!(e >= 0.0 && e < 1.0)) throw ConfigError("validate epsilons must lie in [0, 1)");
  }

  ValidateReport report;
  const std::uint64_t ops_naive = static_cast<std::uint64_t>(params.n) * params.dim;
  for (std::size_t ei = 0; ei < params.epsilons.size(); ++ei) {
    for (std::size_t di = 0; di < params.deltas.size(); ++di) {
      const double eps = params.epsilons[ei];
      const double delta = params.deltas[di];
      ValidateCell cell{eps, delta};
      std::vector<double> subs;
      subs.reserve(params.runs);

      for (std::size_t run = 0; run < params.runs; ++run) {
        const std::uint64_t instance_seed = derive_seed(params.seed, {ei, di, run});
        const auto inst = gen_adversarial({Distribution::adversarial, params.n, params.dim, instance_seed});
        auto sources = inst.sources();

        EliminationConfig config;
        config.k = params.k;
        config.epsilon = eps;
        config.delta = delta;
        config.range_width = 1.0;
        config.seed = instance_seed;
        config.workers = params.workers;

        const auto start = Clock::now();
        const auto result = median_elimination_topk(sources, config);
        const double wall = elapsed_ms(start);

        const auto means = inst.true_means();
        const std::size_t k = std::min(params.k, params.n);
        const auto truth = top_indices(means, k);

        RunRecord rec;
        rec.method = "me";
        rec.params = {{"dist", "adversarial"},
                      {"n", params.n},
                      {"dim", params.dim},
                      {"run", run},
                      {"instance_seed", instance_seed}};
        rec.k = params.k;
        rec.epsilon = eps;
        rec.delta = delta;
        rec.seed = params.seed;
        rec.precision = precision(result.ids, truth, k);
        rec.suboptimality = suboptimality(result.ids, means, k);
        rec.pulls_total = result.trace.total_pulls;
        rec.ops_naive = ops_naive;
        if (params.timing) rec.wall_ms = wall;
        rec.returned = result.ids;
        rec.max_arm_pulls = result.trace.max_arm_pulls;

        if (rec.max_arm_pulls > params.dim) ++report.pull_bound_violations;
        cell.max_arm_pulls = std::max(cell.max_arm_pulls, rec.max_arm_pulls);
        subs.push_back(rec.suboptimality);
        report.records.push_back(std::move(rec));
      }

      cell.percentile_suboptimality = percentile(subs, 1.0 - delta);
      double total = 0.0;
      for (double s : subs) total += s;
      cell.mean_suboptimality = total / static_cast<double>(subs.size());
      cell.pass = cell.percentile_suboptimality <= eps;
      report.cells.push_back(cell);
    }
  }
  return report;
}

Method parse_method(std::string_view name) {
  if (name == "me") return Method::me;
  if (name == "lsh") return Method::lsh;
  if (name == "naive") return Method::naive;
  throw ConfigError("unknown method '" + std::string(name) + "'");
}

std::string_view method_name(Method method) {
  switch (method) {
    case Method::me:
      return "me";
    case Method::lsh:
      return "lsh";
    case Method::naive:
      return "naive";
  }
  return "unknown";
}

std::vector<CurvePoint> run_compare(const VectorSet& vectors, const std::vector<Query>& queries,
                                    const CompareParams& params) {
  if (queries.empty()) throw ConfigError("compare needs at least one query");
  if (params.methods.empty()) throw ConfigError("compare needs at least one method");
  if (params.k == 0 || params.k > vectors.rows()) throw ConfigError("compare K must lie in [1, n]");
  for (const auto& q : queries) {
    if (q.dim() != vectors.dim()) throw ConfigError("query dimension does not match the dataset");
  }

  const double ops_naive = static_cast<double>(vectors.rows()) * static_cast<double>(vectors.dim());
  const double nq = static_cast<double>(queries.size());

  std::vector<std::vector<std::uint32_t>> truth;
  double naive_ms = 0.0;
  for (const auto& q : queries) {
    const auto start = Clock::now();
    truth.push_back(naive_topk(vectors, q, params.k).topk_ids);
    naive_ms += elapsed_ms(start);
  }
  naive_ms /= nq;

  auto has = [&](Method m) {
    return std::find(params.methods.begin(), params.methods.end(), m) != params.methods.end();
  };

  std::vector<CurvePoint> curve;
  auto add_point = [&](Method m, std::string knob, std::vector<double> values, double prec_sum,
                       double ops_sum, double ms_sum) {
    CurvePoint p;
    p.method = std::string(method_name(m));
    p.knob = std::move(knob);
    p.knob_values = std::move(values);
    p.precision = prec_sum / nq;
    const double mean_ops = ops_sum / nq;
    const double mean_ms = ms_sum / nq;
    p.speedup_ops = mean_ops > 0.0 ? ops_naive / mean_ops : 0.0;
    p.speedup_wall = mean_ms > 0.0 ? naive_ms / mean_ms : 0.0;
    curve.push_back(std::move(p));
  };

  if (has(Method::naive)) {
    // Exact search is its own reference.
    CurvePoint p{"naive", "-", 1.0, 1.0, 1.0, {}};
    curve.push_back(p);
  }

  if (has(Method::me)) {
    for (double eps : params.epsilons) {
      for (double delta : params.deltas) {
        double prec = 0.0, ops = 0.0, ms = 0.0;
        for (std::size_t qi = 0; qi < queries.size(); ++qi) {
          SearchParams sp;
          sp.k = params.k;
          sp.epsilon = eps;
          sp.delta = delta;
          sp.seed = derive_seed(params.seed, {qi});
          sp.scale = EpsilonScale::range_fraction;
          sp.workers = params.workers;
          const auto start = Clock::now();
          const auto res = bandit_topk(vectors, queries[qi], sp);
          ms += elapsed_ms(start);
          prec += precision(res.ids, truth[qi], params.k);
          ops += static_cast<double>(res.trace.total_pulls);
        }
        add_point(Method::me, "eps=" + fmt_g(eps) + ";delta=" + fmt_g(delta), {eps, delta}, prec, ops, ms);
      }
    }
  }

  if (has(Method::lsh)) {
    if (params.lsh_bits.empty() || params.lsh_tables.empty()) throw ConfigError("LSH grid is empty");
    const std::size_t max_bits = *std::max_element(params.lsh_bits.begin(), params.lsh_bits.end());
    const std::size_t max_tables = *std::max_element(params.lsh_tables.begin(), params.lsh_tables.end());
    const auto full = LshIndex::build(vectors, max_bits, max_tables, params.seed);
    for (std::size_t a : params.lsh_bits) {
      for (std::size_t b : params.lsh_tables) {
        const auto index = full.restricted(a, b);
        double prec = 0.0, ops = 0.0, ms = 0.0;
        for (std::size_t qi = 0; qi < queries.size(); ++qi) {
          const auto start = Clock::now();
          const auto res = lsh_query(index, vectors, queries[qi], params.k);
          ms += elapsed_ms(start);
          prec += precision(res.ids, truth[qi], params.k);
          ops += static_cast<double>(res.ops);
        }
        add_point(Method::lsh, "a=" + std::to_string(a) + ";b=" + std::to_string(b),
                  {static_cast<double>(a), static_cast<double>(b)}, prec, ops, ms);
      }
    }
  }

  std::stable_sort(curve.begin(), curve.end(), [](const CurvePoint& x, const CurvePoint& y) {
    if (x.method != y.method) return x.method < y.method;
    return x.knob_values < y.knob_values;
  });
  return curve;
}

DominanceCheck check_me_dominates_lsh(const std::vector<CurvePoint>& curve, double min_speedup) {
  DominanceCheck check;
  for (const auto& lsh : curve) {
    if (lsh.method != "lsh" || lsh.speedup_ops < min_speedup) continue;
    ++check.compared;
    double best = -1.0;
    for (const auto& me : curve) {
      if (me.method == "me" && me.speedup_ops >= lsh.speedup_ops) best = std::max(best, me.precision);
    }
    if (best < 0.0) {
      check.violations.push_back("lsh " + lsh.knob + " at speedup " + fmt_g(lsh.speedup_ops) +
                                 " has no ME point with equal or higher speedup");
    } else if (best + 1e-12 < lsh.precision) {
      check.violations.push_back("lsh " + lsh.knob + " precision " + fmt_g(lsh.precision) +
                                 " beats best ME precision " + fmt_g(best) + " at speedup " +
                                 fmt_g(lsh.speedup_ops));
    }
  }
  return check;
}

QueryReport run_query(const VectorSet& vectors, const Query& query, const SearchParams& params) {
  QueryReport report;
  report.search = bandit_topk(vectors, query, params);
  report.ops_naive = static_cast<std::uint64_t>(vectors.rows()) * vectors.dim();
  const auto pulls = report.search.trace.total_pulls;
  report.speedup_ops = pulls > 0 ? static_cast<double>(report.ops_naive) / static_cast<double>(pulls) : 0.0;
  return report;
}

}  // namespace mabbp
