#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace mabbp {

/// One experiment outcome. Serialises to a single JSON line with the fields
/// method, params, k, epsilon, delta, seed, precision, suboptimality,
/// pulls_total, ops_naive, wall_ms.
struct RunRecord {
  std::string method;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::size_t k = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  double precision = 0.0;
  double suboptimality = 0.0;
  std::uint64_t pulls_total = 0;
  std::uint64_t ops_naive = 0;
  std::optional<double> wall_ms;  // null when timing is off

  // Not serialised.
  std::vector<std::uint32_t> returned;
  std::size_t max_arm_pulls = 0;

  double speedup_ops() const;
};

nlohmann::ordered_json to_json(const RunRecord& record);
void write_jsonl(std::ostream& out, std::span<const RunRecord> records);

/// A point on a precision / speedup trade-off curve.
struct CurvePoint {
  std::string method;
  std::string knob;
  double precision = 0.0;
  double speedup_ops = 0.0;
  double speedup_wall = 0.0;
  // Numeric knob values used for ordering rows; not serialised.
  std::vector<double> knob_values;
};

// Header: method,knob,precision,speedup_ops,speedup_wall
void write_curve_csv(std::ostream& out, std::span<const CurvePoint> points);
std::vector<CurvePoint> read_curve_csv(std::istream& in);

}  // namespace mabbp
