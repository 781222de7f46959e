#include "mabbp/results.hpp"

#include <cstdio>
#include <sstream>

#include "mabbp/errors.hpp"

namespace mabbp {

double RunRecord::speedup_ops() const {
  if (pulls_total == 0) return 0.0;
  return static_cast<double>(ops_naive) / static_cast<double>(pulls_total);
}

nlohmann::ordered_json to_json(const RunRecord& record) {
  nlohmann::ordered_json j;
  j["method"] = record.method;
  j["params"] = record.params;
  j["k"] = record.k;
  j["epsilon"] = record.epsilon;
  j["delta"] = record.delta;
  j["seed"] = record.seed;
  j["precision"] = record.precision;
  j["suboptimality"] = record.suboptimality;
  j["pulls_total"] = record.pulls_total;
  j["ops_naive"] = record.ops_naive;
  j["wall_ms"] = record.wall_ms ? nlohmann::ordered_json(*record.wall_ms) : nlohmann::ordered_json();
  return j;
}

void write_jsonl(std::ostream& out, std::span<const RunRecord> records) {
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

namespace {

std::string format_number(double x) {
  char buf[40];
  const int len = std::snprintf(buf, sizeof buf, "%.10g", x);
  return std::string(buf, static_cast<std::size_t>(len));
}

}  // namespace

void write_curve_csv(std::ostream& out, std::span<const CurvePoint> points) {
  out << "method,knob,precision,speedup_ops,speedup_wall\n";
  for (const auto& p : points) {
    if (p.knob.find(',') != std::string::npos || p.method.find(',') != std::string::npos) {
      throw ConfigError("curve labels must not contain commas");
    }
    out << p.method << ',' << p.knob << ',' << format_number(p.precision) << ','
        << format_number(p.speedup_ops) << ',' << format_number(p.speedup_wall) << '\n';
  }
}

std::vector<CurvePoint> read_curve_csv(std::istream& in) {
  std::vector<CurvePoint> points;
  std::string line;
  if (!std::getline(in, line) || line != "method,knob,precision,speedup_ops,speedup_wall") {
    throw ConfigError("unexpected curve CSV header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    CurvePoint p;
    std::string precision, ops, wall;
    std::getline(row, p.method, ',');
    std::getline(row, p.knob, ',');
    std::getline(row, precision, ',');
    std::getline(row, ops, ',');
    std::getline(row, wall, ',');
    p.precision = std::stod(precision);
    p.speedup_ops = std::stod(ops);
    p.speedup_wall = std::stod(wall);
    points.push_back(std::move(p));
  }
  return points;
}

}  // namespace mabbp
