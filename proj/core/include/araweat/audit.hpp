#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "araweat/bias_spec.hpp"
#include "araweat/embedding_space.hpp"
#include "araweat/metrics.hpp"
#include "araweat/normalize.hpp"

namespace araweat {

struct SpaceConfig {
  std::string name;
  std::filesystem::path path;
  EmbeddingFormat format = EmbeddingFormat::kText;
  std::optional<std::size_t> limit;
  bool strict = false;
  NormalizationPolicy policy;
};

struct AuditConfig {
  std::vector<SpaceConfig> spaces;
  std::vector<std::filesystem::path> spec_files;
  std::vector<Metric> metrics{Metric::kWeat, Metric::kEct, Metric::kBat,
                              Metric::kKm};
  double min_coverage = kDefaultMinCoverage;
  double alpha = kDefaultAlpha;
  std::uint64_t seed = 0;
  std::uint64_t permutations = kDefaultMaxPermutations;
  int km_runs = 20;
  bool km_normalize = false;
  std::optional<std::filesystem::path> sts_path;
  int threads = 1;

  // Throws ConfigError on a violated invariant.
  void validate() const;
};

// Relative paths inside the document resolve against `base_dir`.
AuditConfig parse_audit_config(std::string_view json_text,
                               const std::filesystem::path& base_dir = {});
AuditConfig load_audit_config(const std::filesystem::path& path);
std::string audit_config_to_json(const AuditConfig& config);

namespace flags {
inline constexpr std::string_view kBelowCoverage = "below-coverage";
inline constexpr std::string_view kUndefined = "undefined";
inline constexpr std::string_view kNotApplicable = "not-applicable";
inline constexpr std::string_view kError = "error";
inline constexpr std::string_view kTruncated = "truncated";
}  // namespace flags

// The test name used for per-space STS rows.
inline constexpr std::string_view kStsTest = "STS";

struct ReportRow {
  std::string space;
  std::string test;
  Metric metric = Metric::kWeat;
  std::optional<double> value;
  std::optional<double> p_value;     // W rows only
  std::optional<bool> significant;   // W rows only
  double coverage = 0.0;
  std::vector<std::string> flags;
  std::string error;

  bool has_flag(std::string_view flag) const;
  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct AuditReport {
  std::vector<ReportRow> rows;
  std::string created_at;   // ISO-8601 UTC
  std::string config_echo;  // canonical JSON of the AuditConfig

  // Number of configured spaces whose embeddings failed to load.
  std::size_t failed_spaces = 0;
  std::size_t total_spaces = 0;
};

// Seed for randomized metrics of one (space, test) cell; independent of the
// other spaces and tests in the configuration.
std::uint64_t derive_seed(std::uint64_t base_seed, std::string_view space,
                          std::string_view test);

AuditReport run_audit(const AuditConfig& config);

enum class ReportFormat { kJson, kCsv, kMarkdown };

std::optional<ReportFormat> parse_report_format(std::string_view name);

std::string report_to_json(const AuditReport& report,
                           bool include_timestamp = true);
AuditReport report_from_json(std::string_view json_text);
AuditReport load_report(const std::filesystem::path& path);
std::string report_to_csv(const AuditReport& report);
std::string report_to_markdown(const AuditReport& report);

// Throws ConfigError if the path cannot be written.
void emit_report(const AuditReport& report, ReportFormat format,
                 const std::filesystem::path& path);

// ------------------------------------------------------ aggregate series --

struct ScoreSeries {
  std::string label;
  std::vector<std::pair<std::string, std::optional<double>>> values;

  // Throws ConfigError on repeated keys.
  void validate() const;
};

// Pearson correlation over keys present in both series with defined values
// on both sides. Throws MetricError with fewer than 3 aligned values; empty
// when either aligned side is constant.
std::optional<double> series_correlation(const ScoreSeries& a,
                                         const ScoreSeries& b);

struct AvgConcResult {
  ScoreSeries avg;
  ScoreSeries conc;
  std::optional<double> correlation;
};

// Averages each (test, metric) cell across `sub_reports` and correlates the
// averages with the same cells of `conc_report`. Cells are keyed
// "test/metric"; `metrics`, when non-empty, restricts the cells used.
AvgConcResult avg_vs_conc(const std::vector<AuditReport>& sub_reports,
                          const AuditReport& conc_report,
                          const std::vector<Metric>& metrics = {});

}  // namespace araweat
