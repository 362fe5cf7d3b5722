#include <algorithm>
#include <map>
#include <set>

#include "araweat/audit.hpp"
#include "araweat/error.hpp"
#include "araweat/stats.hpp"

namespace araweat {
namespace {

using CellMap = std::map<std::string, std::optional<double>>;

std::string cell_key(const ReportRow& row) {
  return row.test + "/" + std::string(metric_name(row.metric));
}

bool wanted(const std::vector<Metric>& metrics, Metric m) {
  return metrics.empty() ||
         std::find(metrics.begin(), metrics.end(), m) != metrics.end();
}

// Cell values of a single-space report, with the row order of first
// appearance recorded in `order` when given.
CellMap cells_of(const AuditReport& report, const std::vector<Metric>& metrics,
                 std::vector<std::string>* order) {
  CellMap cells;
  for (const auto& row : report.rows) {
    if (!wanted(metrics, row.metric)) continue;
    const std::string key = cell_key(row);
    if (!cells.emplace(key, row.value).second) {
      throw ConfigError("report holds more than one row for cell '" + key +
                        "'; compare expects one space per report");
    }
    if (order) order->push_back(key);
  }
  return cells;
}

}  // namespace

void ScoreSeries::validate() const {
  std::set<std::string> keys;
  for (const auto& [key, value] : values) {
    if (!keys.insert(key).second) {
      throw ConfigError("series '" + label + "' repeats key '" + key + "'");
    }
  }
}

std::optional<double> series_correlation(const ScoreSeries& a,
                                         const ScoreSeries& b) {
  a.validate();
  b.validate();
  std::map<std::string, double> rhs;
  for (const auto& [key, value] : b.values) {
    if (value) rhs.emplace(key, *value);
  }
  std::vector<double> x, y;
  for (const auto& [key, value] : a.values) {
    if (!value) continue;
    auto it = rhs.find(key);
    if (it == rhs.end()) continue;
    x.push_back(*value);
    y.push_back(it->second);
  }
  if (x.size() < 3) {
    throw MetricError("series correlation needs at least 3 aligned values, got " +
                      std::to_string(x.size()));
  }
  return pearson(x, y);
}

AvgConcResult avg_vs_conc(const std::vector<AuditReport>& sub_reports,
                          const AuditReport& conc_report,
                          const std::vector<Metric>& metrics) {
  if (sub_reports.empty()) throw MetricError("no sub-reports to average");
  std::vector<std::string> order;
  const CellMap conc = cells_of(conc_report, metrics, &order);
  std::vector<CellMap> subs;
  subs.reserve(sub_reports.size());
  for (const auto& r : sub_reports) subs.push_back(cells_of(r, metrics, nullptr));

  AvgConcResult result;
  result.avg.label = "AVG";
  result.conc.label = "CONC";
  for (const auto& key : order) {
    const bool common = std::all_of(subs.begin(), subs.end(), [&](const CellMap& m) {
      return m.count(key) > 0;
    });
    if (!common) continue;
    double sum = 0.0;
    std::size_t defined = 0;
    for (const auto& m : subs) {
      if (const auto& v = m.at(key)) {
        sum += *v;
        ++defined;
      }
    }
    std::optional<double> avg;
    if (defined > 0) avg = sum / static_cast<double>(defined);
    result.avg.values.emplace_back(key, avg);
    result.conc.values.emplace_back(key, conc.at(key));
  }
  if (result.avg.values.empty()) {
    throw MetricError("sub-reports and concatenated report share no cells");
  }
  result.correlation = series_correlation(result.avg, result.conc);
  return result;
}

}  // namespace araweat
