#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <utility>

#include <json.hpp>

#include "araweat/audit.hpp"
#include "araweat/error.hpp"

namespace araweat {
namespace {

using nlohmann::json;

constexpr std::string_view kNa = "n/a";

std::string shortest(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string two_decimals(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  return buf;
}

json row_to_json(const ReportRow& row) {
  json j;
  j["space"] = row.space;
  j["test"] = row.test;
  j["metric"] = std::string(metric_name(row.metric));
  j["value"] = row.value ? json(*row.value) : json(kNa);
  if (row.metric == Metric::kWeat) {
    j["p_value"] = row.p_value ? json(*row.p_value) : json(kNa);
    j["significant"] = row.significant ? json(*row.significant) : json(nullptr);
  }
  j["coverage"] = row.coverage;
  j["flags"] = row.flags;
  if (!row.error.empty()) j["error"] = row.error;
  return j;
}

std::optional<double> number_or_na(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  const json& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_null() || (v.is_string() && v.get<std::string>() == kNa)) {
    return std::nullopt;
  }
  throw ConfigError(std::string("report field '") + key + "' is malformed");
}

ReportRow row_from_json(const json& j) {
  ReportRow row;
  try {
    row.space = j.at("space").get<std::string>();
    row.test = j.at("test").get<std::string>();
    const auto metric = parse_metric(j.at("metric").get<std::string>());
    if (!metric) throw ConfigError("unknown metric in report row");
    row.metric = *metric;
    row.value = number_or_na(j, "value");
    row.p_value = number_or_na(j, "p_value");
    if (j.contains("significant") && j.at("significant").is_boolean()) {
      row.significant = j.at("significant").get<bool>();
    }
    row.coverage = j.value("coverage", 0.0);
    row.flags = j.value("flags", std::vector<std::string>{});
    row.error = j.value("error", std::string{});
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed report row: ") + e.what());
  }
  return row;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(s);
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.push_back(sep);
    out += parts[i];
  }
  return out;
}

std::string markdown_cell(const ReportRow& row) {
  if (!row.error.empty()) return "error";
  if (!row.value) return std::string(kNa);
  std::string cell = two_decimals(*row.value);
  if (row.metric == Metric::kWeat && row.significant && !*row.significant) {
    cell.push_back('*');
  }
  if (row.has_flag(flags::kBelowCoverage)) cell += "†";
  return cell;
}

}  // namespace

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "markdown" || name == "md") return ReportFormat::kMarkdown;
  return std::nullopt;
}

std::string report_to_json(const AuditReport& report, bool include_timestamp) {
  json doc;
  if (include_timestamp) doc["created_at"] = report.created_at;
  doc["config"] = report.config_echo.empty() ? json::object()
                                             : json::parse(report.config_echo);
  doc["summary"] = {{"spaces", report.total_spaces},
                    {"failed_spaces", report.failed_spaces},
                    {"rows", report.rows.size()}};
  doc["rows"] = json::array();
  for (const auto& row : report.rows) doc["rows"].push_back(row_to_json(row));
  return doc.dump(2) + "\n";
}

AuditReport report_from_json(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("report is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rows") || !doc.at("rows").is_array()) {
    throw ConfigError("report needs a 'rows' array");
  }
  AuditReport report;
  report.created_at = doc.value("created_at", std::string{});
  if (doc.contains("config")) report.config_echo = doc.at("config").dump();
  if (doc.contains("summary")) {
    report.total_spaces = doc.at("summary").value("spaces", std::size_t{0});
    report.failed_spaces =
        doc.at("summary").value("failed_spaces", std::size_t{0});
  }
  for (const json& row : doc.at("rows")) report.rows.push_back(row_from_json(row));
  return report;
}

AuditReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open report " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  return report_from_json(text);
}

std::string report_to_csv(const AuditReport& report) {
  std::string out =
      "space,test,metric,value,p_value,significant,coverage,flags,error\n";
  for (const auto& row : report.rows) {
    out += csv_field(row.space) + ",";
    out += csv_field(row.test) + ",";
    out += std::string(metric_name(row.metric)) + ",";
    out += (row.value ? shortest(*row.value) : std::string(kNa)) + ",";
    if (row.metric == Metric::kWeat) {
      out += row.p_value ? shortest(*row.p_value) : std::string(kNa);
    }
    out += ",";
    if (row.significant) out += *row.significant ? "true" : "false";
    out += ",";
    out += shortest(row.coverage) + ",";
    out += csv_field(join(row.flags, ';')) + ",";
    out += csv_field(row.error) + "\n";
  }
  return out;
}

std::string report_to_markdown(const AuditReport& report) {
  // columns in first-appearance order of (test, metric)
  std::vector<std::pair<std::string, Metric>> columns;
  std::vector<std::string> spaces;
  std::map<std::pair<std::string, std::pair<std::string, Metric>>, const ReportRow*>
      cells;
  for (const auto& row : report.rows) {
    std::pair<std::string, Metric> column{row.test, row.metric};
    if (std::find(columns.begin(), columns.end(), column) == columns.end()) {
      columns.push_back(column);
    }
    if (std::find(spaces.begin(), spaces.end(), row.space) == spaces.end()) {
      spaces.push_back(row.space);
    }
    cells[{row.space, column}] = &row;
  }

  std::string out = "| Space |";
  for (const auto& [test, metric] : columns) {
    out += " ";
    if (test != kStsTest) out += test + " ";
    out += std::string(metric_name(metric)) + " |";
  }
  out += "\n|---|";
  for (std::size_t i = 0; i < columns.size(); ++i) out += "---:|";
  out += "\n";
  for (const auto& space : spaces) {
    out += "| " + space + " |";
    for (const auto& column : columns) {
      auto it = cells.find({space, column});
      out += " " + (it == cells.end() ? std::string(kNa) : markdown_cell(*it->second)) +
             " |";
    }
    out += "\n";
  }
  out +=
      "\n`*` WEAT effect not significant at the configured alpha. "
      "`†` test coverage below the configured minimum. "
      "`n/a` undefined or not applicable.\n";
  return out;
}

void emit_report(const AuditReport& report, ReportFormat format,
                 const std::filesystem::path& path) {
  std::string text;
  switch (format) {
    case ReportFormat::kJson:
      text = report_to_json(report);
      break;
    case ReportFormat::kCsv:
      text = report_to_csv(report);
      break;
    case ReportFormat::kMarkdown:
      text = report_to_markdown(report);
      break;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write report to " + path.string());
  out << text;
  if (!out) throw ConfigError("write failed for " + path.string());
}

}  // namespace araweat
