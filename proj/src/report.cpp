#include "qsymx/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace qsymx {

std::string format_sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

ReportValue ReportValue::num(double v) {
  ReportValue r;
  r.kind = Kind::number;
  r.repr = format_sig12(v);
  return r;
}

ReportValue ReportValue::integer(long v) {
  ReportValue r;
  r.kind = Kind::integer;
  r.repr = std::to_string(v);
  return r;
}

ReportValue ReportValue::boolean(bool v) {
  ReportValue r;
  r.kind = Kind::boolean;
  r.repr = v ? "true" : "false";
  return r;
}

ReportValue ReportValue::text(std::string v) {
  ReportValue r;
  r.kind = Kind::text;
  r.repr = std::move(v);
  return r;
}

CheckResult& CheckResult::with(std::string key, ReportValue v) {
  fields.emplace_back(std::move(key), std::move(v));
  return *this;
}

void Report::add_meta(std::string key, ReportValue v) {
  meta.emplace_back(std::move(key), std::move(v));
}

void Report::add_check(CheckResult c) { checks.push_back(std::move(c)); }

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

namespace {

void json_escape(std::ostringstream& os, const std::string& s) {
  os << '"';
  for (char c : s) {
    switch (c) {
      case '"': os << "\\\""; break;
      case '\\': os << "\\\\"; break;
      case '\n': os << "\\n"; break;
      case '\t': os << "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          os << buf;
        } else {
          os << c;
        }
    }
  }
  os << '"';
}

void json_value(std::ostringstream& os, const ReportValue& v) {
  if (v.kind == ReportValue::Kind::text)
    json_escape(os, v.repr);
  else
    os << v.repr;
}

}  // namespace

std::string Report::to_json() const {
  std::ostringstream os;
  os << "{\n  \"schema_version\": \"" << kReportSchemaVersion << "\",\n";
  os << "  \"version\": \"" << kVersion << "\",\n";
  os << "  \"meta\": {";
  for (size_t i = 0; i < meta.size(); ++i) {
    os << (i ? ", " : "");
    json_escape(os, meta[i].first);
    os << ": ";
    json_value(os, meta[i].second);
  }
  os << "},\n  \"results\": [\n";
  for (size_t i = 0; i < checks.size(); ++i) {
    const CheckResult& c = checks[i];
    os << "    {\"name\": ";
    json_escape(os, c.name);
    os << ", \"pass\": " << (c.pass ? "true" : "false");
    for (const auto& [k, v] : c.fields) {
      os << ", ";
      json_escape(os, k);
      os << ": ";
      json_value(os, v);
    }
    os << "}" << (i + 1 < checks.size() ? "," : "") << "\n";
  }
  os << "  ],\n  \"all_pass\": " << (all_pass() ? "true" : "false") << "\n}\n";
  return os.str();
}

std::string Report::to_table() const {
  std::ostringstream os;
  for (const auto& [k, v] : meta) os << "# " << k << " = " << v.repr << "\n";
  size_t width = 4;
  for (const CheckResult& c : checks) width = std::max(width, c.name.size());
  for (const CheckResult& c : checks) {
    os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
    for (size_t i = c.name.size(); i < width + 2; ++i) os << ' ';
    bool first = true;
    for (const auto& [k, v] : c.fields) {
      os << (first ? "" : "  ") << k << "=" << v.repr;
      first = false;
    }
    os << "\n";
  }
  os << (all_pass() ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
  return os.str();
}

std::string Report::to_csv() const {
  // Union of field names over checks, in first-seen order.
  std::vector<std::string> cols;
  for (const CheckResult& c : checks)
    for (const auto& [k, v] : c.fields)
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
  std::ostringstream os;
  os << "name,pass";
  for (const auto& c : cols) os << "," << c;
  os << "\n";
  for (const CheckResult& c : checks) {
    os << c.name << "," << (c.pass ? "true" : "false");
    for (const auto& col : cols) {
      os << ",";
      for (const auto& [k, v] : c.fields)
        if (k == col) {
          os << v.repr;
          break;
        }
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace qsymx
