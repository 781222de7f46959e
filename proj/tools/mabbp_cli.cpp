// mabbp: median elimination with bounded pulls for top-K inner product search.
//
//   mabbp gen      --dist gaussian --n 1000 --dim 10000 --seed 1 --out data.bin
//   mabbp query    --data data.bin --query q.bin --k 5 --epsilon 0.01 --delta 0.1
//   mabbp validate --runs 20 --out validate.jsonl
//   mabbp compare  --dist gaussian --n 1000 --dim 10000 --k 5 --out curve.csv
//
// Exit codes: 0 success, 1 a validation cell failed, 2 usage or I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mabbp/datagen.hpp"
#include "mabbp/errors.hpp"
#include "mabbp/experiments.hpp"
#include "mabbp/io.hpp"
#include "mabbp/results.hpp"
#include "mabbp/rng.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailed = 1;
constexpr int kExitUsage = 2;

using mabbp::ConfigError;

// Opens --out, treating "-" as stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
    if (!*file_) {
      throw mabbp::IoError(mabbp::IoErrorKind::open_failed, path + ": cannot open for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string fmt(double x, const char* spec = "%.6g") {
  char buf[40];
  const int len = std::snprintf(buf, sizeof buf, spec, x);
  return std::string(buf, static_cast<std::size_t>(len));
}

mabbp::ObjectiveKind parse_objective(const std::string& name) {
  if (name == "ip") return mabbp::ObjectiveKind::inner_product;
  if (name == "nns") return mabbp::ObjectiveKind::neg_sq_distance;
  throw ConfigError("unknown objective '" + name + "'");
}

struct GenOptions {
  std::string dist = "gaussian";
  std::size_t n = 1000;
  std::size_t dim = 10000;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenOptions& o) {
  const mabbp::DatasetSpec spec{mabbp::parse_distribution(o.dist), o.n, o.dim, o.seed};
  mabbp::write_dataset(o.out, mabbp::gen_vectors(spec));
  std::cerr << "wrote " << o.n << " x " << o.dim << " " << o.dist << " vectors to " << o.out << "\n";
  return kExitOk;
}

struct QueryOptions {
  std::string data;
  std::string query;
  std::size_t k = 5;
  double epsilon = 0.01;
  double delta = 0.1;
  std::uint64_t seed = 0;
  std::string objective = "ip";
  std::string epsilon_scale = "mean";
  unsigned threads = 1;
  std::string format = "text";
};

int cmd_query(const QueryOptions& o) {
  const auto vectors = mabbp::read_dataset(o.data);
  const auto query = mabbp::read_query(o.query);
  if (query.dim() != vectors.dim()) {
    throw mabbp::IoError(mabbp::IoErrorKind::dimension_mismatch,
                         o.query + ": query dimension " + std::to_string(query.dim()) +
                             " does not match dataset dimension " + std::to_string(vectors.dim()));
  }

  mabbp::SearchParams params;
  params.k = o.k;
  params.epsilon = o.epsilon;
  params.delta = o.delta;
  params.seed = o.seed;
  params.kind = parse_objective(o.objective);
  params.scale = o.epsilon_scale == "range" ? mabbp::EpsilonScale::range_fraction : mabbp::EpsilonScale::mean;
  params.workers = o.threads;

  const auto report = mabbp::run_query(vectors, query, params);
  const auto& s = report.search;

  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["ids"] = s.ids;
    j["scores"] = s.estimated_scores;
    j["pulls_total"] = s.trace.total_pulls;
    j["ops_naive"] = report.ops_naive;
    j["speedup_ops"] = report.speedup_ops;
    j["rounds"] = s.trace.rounds.size();
    j["degenerate_range"] = s.trace.degenerate_range;
    std::cout << j.dump() << "\n";
  } else if (o.format == "csv") {
    std::cout << "rank,id,score\n";
    for (std::size_t r = 0; r < s.ids.size(); ++r) {
      std::cout << r + 1 << ',' << s.ids[r] << ',' << fmt(s.estimated_scores[r], "%.10g") << "\n";
    }
  } else {
    std::cout << "rank  id        score\n";
    for (std::size_t r = 0; r < s.ids.size(); ++r) {
      std::printf("%-5zu %-9u %s\n", r + 1, s.ids[r], fmt(s.estimated_scores[r]).c_str());
    }
    std::cout << "pulls_total: " << s.trace.total_pulls << "\n";
    std::cout << "ops_naive:   " << report.ops_naive << "\n";
    std::cout << "speedup_ops: " << (s.trace.total_pulls ? fmt(report.speedup_ops) : std::string("n/a"))
              << "\n";
    std::cout << "rounds:      " << s.trace.rounds.size() << "\n";
  }
  if (s.trace.degenerate_range) {
    std::cerr << "warning: query gives a zero-width reward range; returned the first K ids\n";
  }
  return kExitOk;
}

struct ValidateOptions {
  mabbp::ValidateParams params;
  std::string out = "-";
  std::string format = "json";
};

int cmd_validate(const ValidateOptions& o) {
  const auto report = mabbp::run_validate(o.params);

  Output out(o.out);
  if (o.format == "csv") {
    auto& s = out.stream();
    s << "method,k,epsilon,delta,seed,run,precision,suboptimality,pulls_total,ops_naive,wall_ms\n";
    for (const auto& r : report.records) {
      s << r.method << ',' << r.k << ',' << fmt(r.epsilon, "%.10g") << ',' << fmt(r.delta, "%.10g") << ','
        << r.seed << ',' << r.params["run"].get<std::size_t>() << ',' << fmt(r.precision, "%.10g") << ','
        << fmt(r.suboptimality, "%.10g") << ',' << r.pulls_total << ',' << r.ops_naive << ','
        << (r.wall_ms ? fmt(*r.wall_ms, "%.4f") : std::string()) << "\n";
    }
  } else {
    mabbp::write_jsonl(out.stream(), report.records);
  }

  std::cerr << "epsilon  delta  pct_subopt  mean_subopt  max_pulls  result\n";
  for (const auto& c : report.cells) {
    std::fprintf(stderr, "%-8s %-6s %-11s %-12s %-10zu %s\n", fmt(c.epsilon).c_str(), fmt(c.delta).c_str(),
                 fmt(c.percentile_suboptimality, "%.5f").c_str(), fmt(c.mean_suboptimality, "%.5f").c_str(),
                 c.max_arm_pulls, c.pass ? "pass" : "FAIL");
  }
  for (const auto& [eps, mean] : report.mean_percentile_by_epsilon()) {
    std::cerr << "epsilon " << fmt(eps) << ": mean percentile suboptimality over delta " << fmt(mean, "%.5f")
              << "\n";
  }
  if (report.pull_bound_violations) {
    std::cerr << report.pull_bound_violations << " runs exceeded the per-arm pull bound\n";
  }
  return report.all_pass() ? kExitOk : kExitValidationFailed;
}

struct CompareOptions {
  std::string data;
  std::string queries_path;
  std::string dist = "gaussian";
  std::size_t n = 1000;
  std::size_t dim = 10000;
  std::size_t num_queries = 20;
  std::vector<std::string> methods{"me", "lsh", "naive"};
  mabbp::CompareParams params;
  std::string out = "-";
  std::string format = "csv";
};

int cmd_compare(CompareOptions o) {
  o.params.methods.clear();
  for (const auto& m : o.methods) o.params.methods.push_back(mabbp::parse_method(m));

  std::unique_ptr<mabbp::VectorSet> vectors;
  std::vector<mabbp::Query> queries;
  if (!o.data.empty()) {
    if (o.queries_path.empty()) throw ConfigError("--data needs --query with one query per row");
    vectors = std::make_unique<mabbp::VectorSet>(mabbp::read_dataset(o.data));
    const auto qs = mabbp::read_dataset(o.queries_path);
    for (std::size_t i = 0; i < qs.rows(); ++i) {
      queries.emplace_back(std::vector<float>(qs.row(i).begin(), qs.row(i).end()));
    }
  } else {
    const auto dist = mabbp::parse_distribution(o.dist);
    if (dist == mabbp::Distribution::adversarial) throw ConfigError("compare needs gaussian or uniform data");
    vectors = std::make_unique<mabbp::VectorSet>(
        mabbp::gen_vectors({dist, o.n, o.dim, mabbp::derive_seed(o.params.seed, {0})}));
    const auto qs = mabbp::gen_vectors({dist, o.num_queries, o.dim, mabbp::derive_seed(o.params.seed, {1})});
    for (std::size_t i = 0; i < qs.rows(); ++i) {
      queries.emplace_back(std::vector<float>(qs.row(i).begin(), qs.row(i).end()));
    }
  }

  const auto curve = mabbp::run_compare(*vectors, queries, o.params);
  Output out(o.out);
  if (o.format == "json") {
    for (const auto& p : curve) {
      nlohmann::ordered_json j{{"method", p.method},
                               {"knob", p.knob},
                               {"precision", p.precision},
                               {"speedup_ops", p.speedup_ops},
                               {"speedup_wall", p.speedup_wall}};
      out.stream() << j.dump() << "\n";
    }
  } else {
    mabbp::write_curve_csv(out.stream(), curve);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Median elimination with bounded pulls for top-K inner product search"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic dataset");
  gen_cmd->add_option("--dist", gen.dist, "adversarial | gaussian | uniform")
      ->check(CLI::IsMember({"adversarial", "gaussian", "uniform"}));
  gen_cmd->add_option("--n", gen.n, "Number of vectors")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--dim", gen.dim, "Dimension N")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "Master seed");
  gen_cmd->add_option("--out", gen.out, "Output path (.csv for CSV, otherwise binary)")->required();

  QueryOptions query;
  auto* query_cmd = app.add_subcommand("query", "Top-K search for one query");
  query_cmd->add_option("--data", query.data, "Dataset file")->required();
  query_cmd->add_option("--query", query.query, "Query file (one vector)")->required();
  query_cmd->add_option("--k", query.k, "Number of results")->check(CLI::PositiveNumber);
  query_cmd->add_option("--epsilon", query.epsilon,
                        "Accuracy on the (1/N) q.v scale; multiply by N for the inner-product scale")
      ->check(CLI::NonNegativeNumber);
  query_cmd->add_option("--delta", query.delta, "Failure probability in (0, 1)")
      ->check(CLI::Range(0.0, 1.0));
  query_cmd->add_option("--seed", query.seed, "Sampling seed");
  query_cmd->add_option("--objective", query.objective, "ip (inner product) | nns (nearest neighbour)")
      ->check(CLI::IsMember({"ip", "nns"}));
  query_cmd->add_option("--epsilon-scale", query.epsilon_scale,
                        "mean: epsilon as given; range: epsilon is a fraction of the reward range")
      ->check(CLI::IsMember({"mean", "range"}));
  query_cmd->add_option("--threads", query.threads, "Worker threads")->check(CLI::PositiveNumber);
  query_cmd->add_option("--format", query.format, "text | json | csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));

  ValidateOptions validate;
  auto* validate_cmd = app.add_subcommand("validate", "Check the PAC guarantee on adversarial instances");
  validate_cmd->add_option("--epsilons", validate.params.epsilons, "Epsilon grid")->delimiter(',');
  validate_cmd->add_option("--deltas", validate.params.deltas, "Delta grid")->delimiter(',');
  validate_cmd->add_option("--n", validate.params.n, "Arms per instance")->check(CLI::PositiveNumber);
  validate_cmd->add_option("--dim", validate.params.dim, "Reward list length N")->check(CLI::PositiveNumber);
  validate_cmd->add_option("--runs", validate.params.runs, "Runs per cell")->check(CLI::PositiveNumber);
  validate_cmd->add_option("--k", validate.params.k, "Top-K size")->check(CLI::PositiveNumber);
  validate_cmd->add_option("--seed", validate.params.seed, "Master seed");
  validate_cmd->add_option("--threads", validate.params.workers, "Worker threads")->check(CLI::PositiveNumber);
  validate_cmd->add_flag("--timing", validate.params.timing, "Record wall_ms (output is then not reproducible)");
  validate_cmd->add_option("--out", validate.out, "Results path, - for stdout");
  validate_cmd->add_option("--format", validate.format, "json (JSON lines) | csv")
      ->check(CLI::IsMember({"json", "csv"}));

  CompareOptions compare;
  auto* compare_cmd = app.add_subcommand("compare", "Precision versus speedup for ME, LSH and exact search");
  compare_cmd->add_option("--data", compare.data, "Dataset file (otherwise generated from --dist)");
  compare_cmd->add_option("--query", compare.queries_path, "Query file, one query per row (with --data)");
  compare_cmd->add_option("--dist", compare.dist, "gaussian | uniform")
      ->check(CLI::IsMember({"gaussian", "uniform"}));
  compare_cmd->add_option("--n", compare.n, "Generated vector count")->check(CLI::PositiveNumber);
  compare_cmd->add_option("--dim", compare.dim, "Generated dimension")->check(CLI::PositiveNumber);
  compare_cmd->add_option("--queries", compare.num_queries, "Generated query count")->check(CLI::PositiveNumber);
  compare_cmd->add_option("--methods", compare.methods, "Subset of me,lsh,naive")->delimiter(',');
  compare_cmd->add_option("--k", compare.params.k, "Top-K size")->check(CLI::PositiveNumber);
  compare_cmd->add_option("--epsilons", compare.params.epsilons, "ME epsilon grid, as fractions of the reward range")
      ->delimiter(',');
  compare_cmd->add_option("--deltas", compare.params.deltas, "ME delta grid")->delimiter(',');
  compare_cmd->add_option("--lsh-a", compare.params.lsh_bits, "LSH bits per table grid")->delimiter(',');
  compare_cmd->add_option("--lsh-b", compare.params.lsh_tables, "LSH table count grid")->delimiter(',');
  compare_cmd->add_option("--seed", compare.params.seed, "Master seed");
  compare_cmd->add_option("--threads", compare.params.workers, "Worker threads")->check(CLI::PositiveNumber);
  compare_cmd->add_option("--out", compare.out, "Curve path, - for stdout");
  compare_cmd->add_option("--format", compare.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen);
    if (*query_cmd) return cmd_query(query);
    if (*validate_cmd) return cmd_validate(validate);
    if (*compare_cmd) return cmd_compare(compare);
  } catch (const mabbp::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
