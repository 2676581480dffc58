#pragma once

#include <string>
#include <vector>

namespace qsymx {

inline constexpr const char* kReportSchemaVersion = "1";
inline constexpr const char* kVersion = "0.1.0";

/// One typed value destined for a report; numbers are pre-formatted at 12
/// significant digits so that identical runs emit identical bytes.
struct ReportValue {
  enum class Kind { number, integer, boolean, text };
  Kind kind = Kind::text;
  std::string repr;  // raw token for number/integer/boolean, unescaped for text

  static ReportValue num(double v);
  static ReportValue integer(long v);
  static ReportValue boolean(bool v);
  static ReportValue text(std::string v);
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::vector<std::pair<std::string, ReportValue>> fields;

  CheckResult& with(std::string key, ReportValue v);
};

/// Verification report: meta block plus one entry per check. Key order is
/// insertion order and is preserved verbatim in every output format.
struct Report {
  std::vector<std::pair<std::string, ReportValue>> meta;
  std::vector<CheckResult> checks;

  void add_meta(std::string key, ReportValue v);
  void add_check(CheckResult c);
  bool all_pass() const;

  std::string to_json() const;
  std::string to_table() const;
  /// Dimension-table CSV: one row per check, columns = union of field names.
  std::string to_csv() const;
};

/// %.12g formatting used for every numeric report entry.
std::string format_sig12(double v);

}  // namespace qsymx
