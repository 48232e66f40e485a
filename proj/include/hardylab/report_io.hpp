// JSON and CSV forms of reports, batch results and sweep tables.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "hardylab/core.hpp"
#include "hardylab/harness.hpp"
#include "hardylab/muckenhoupt.hpp"

namespace hardylab::io {

using Json = nlohmann::ordered_json;

/// Version of the CSV column layouts and JSON field sets below.
inline constexpr int kSchemaVersion = 1;

std::string relation_name(Relation r);
Relation parse_relation(const std::string& name);

/// %.17g for finite values; "nan", "inf", "-inf" otherwise.
std::string format_number(double v);
/// Finite values become JSON numbers, the rest the strings above.
Json number_json(double v);
double number_from_json(const Json& j);

Json to_json(const InequalityReport& r);
InequalityReport report_from_json(const Json& j);

Json to_json(const WeightFamily& w);
WeightFamily weight_from_json(const Json& j);

Json to_json(const harness::Instance& inst);
Json to_json(const harness::BatchResult& b);

Json to_json(const muckenhoupt::P0Solution& s, double q_exp, double M);

struct SweepRow {
  std::string kind;
  std::size_t index = 0;
  double parameter = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  /// L_a, a ratio, or R(a), depending on kind.
  double value = 0.0;
  double limit = 0.0;
  double deviation = 0.0;

  bool operator==(const SweepRow&) const = default;
};

struct SweepTable {
  std::string kind;
  bool converged = false;
  double tolerance = 0.0;
  std::vector<SweepRow> rows;

  bool operator==(const SweepTable&) const = default;
};

Json to_json(const SweepTable& t);
SweepTable sweep_from_json(const Json& j);

/// Header plus one row per report.
void write_csv(std::ostream& os, const std::vector<InequalityReport>& reports);
void write_csv(std::ostream& os, const SweepTable& t);

std::string csv_header_report();
std::string csv_header_sweep();

/// Human readable forms.
void write_table(std::ostream& os, const InequalityReport& r);
void write_table(std::ostream& os, const SweepTable& t);

}  // namespace hardylab::io
