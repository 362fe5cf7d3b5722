// araweat: bias audits over word embedding spaces.
//
//   araweat audit   --config audit.json --out report.json --format json
//   araweat sts     --space vectors.vec --pairs sts.tsv
//   araweat compare --conc conc.json --sub 2008.json 2009.json ...
//   araweat inspect --space vectors.vec
//
// Exit status: 0 success, 1 config or I/O error, 2 every space failed.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "araweat/audit.hpp"
#include "araweat/embedding_space.hpp"
#include "araweat/error.hpp"
#include "araweat/sts.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitAllFailed = 2;

struct SpaceArgs {
  std::string path;
  std::string format;
  std::optional<std::size_t> limit;
  bool strict = false;
  bool alef = false;
  bool teh_marbuta = false;
  bool lowercase = false;
  bool keep_diacritics = false;
  bool no_nfc = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--space", path, "embedding file")->required();
    cmd->add_option("--format", format, "text or binary (default: by extension)")
        ->check(CLI::IsMember({"text", "binary"}));
    cmd->add_option("--limit", limit, "read at most this many rows");
    cmd->add_flag("--strict", strict, "treat malformed rows as errors");
    cmd->add_flag("--normalize-alef", alef, "unify alef variants");
    cmd->add_flag("--normalize-teh-marbuta", teh_marbuta, "map teh marbuta to heh");
    cmd->add_flag("--lowercase", lowercase, "lowercase terms");
    cmd->add_flag("--keep-diacritics", keep_diacritics, "do not strip Arabic diacritics");
    cmd->add_flag("--no-nfc", no_nfc, "skip Unicode NFC");
  }

  araweat::NormalizationPolicy policy() const {
    araweat::NormalizationPolicy p;
    p.strip_diacritics = !keep_diacritics;
    p.normalize_alef = alef;
    p.normalize_teh_marbuta = teh_marbuta;
    p.lowercase = lowercase;
    p.unicode_nfc = !no_nfc;
    return p;
  }

  araweat::EmbeddingSpace load() const {
    araweat::LoadOptions options;
    options.limit = limit;
    options.strict = strict;
    options.policy = policy();
    const auto fmt = format.empty()      ? araweat::guess_format(path)
                     : format == "binary" ? araweat::EmbeddingFormat::kBinary
                                          : araweat::EmbeddingFormat::kText;
    return araweat::load_embeddings(path, fmt, options);
  }
};

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json("n/a");
}

json series_json(const araweat::ScoreSeries& s) {
  json values = json::array();
  for (const auto& [key, value] : s.values) {
    values.push_back({{"key", key}, {"value", optional_number(value)}});
  }
  return {{"label", s.label}, {"values", values}};
}

int run_audit_cmd(const std::string& config_path, const std::string& out_path,
                  const std::string& format_name, std::optional<int> threads) {
  araweat::AuditConfig config = araweat::load_audit_config(config_path);
  if (threads) config.threads = *threads;
  const auto format = araweat::parse_report_format(format_name);
  const araweat::AuditReport report = araweat::run_audit(config);
  araweat::emit_report(report, *format, out_path);
  std::fprintf(stderr, "araweat: %zu rows, %zu/%zu spaces failed -> %s\n",
               report.rows.size(), report.failed_spaces, report.total_spaces,
               out_path.c_str());
  if (report.total_spaces > 0 && report.failed_spaces == report.total_spaces) {
    return kExitAllFailed;
  }
  return kExitOk;
}

int run_sts_cmd(const SpaceArgs& space_args, const std::string& pairs_path) {
  const araweat::EmbeddingSpace space = space_args.load();
  const auto pairs = araweat::parse_sts_file(pairs_path);
  const araweat::StsResult result =
      araweat::sts_pearson(pairs, space, space_args.policy());
  const json out = {{"space", space.name()},
                    {"pearson", optional_number(result.pearson)},
                    {"n_pairs", result.n_pairs},
                    {"n_empty", result.n_empty}};
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_compare_cmd(const std::string& conc_path,
                    const std::vector<std::string>& sub_paths,
                    const std::vector<std::string>& metric_names,
                    const std::string& out_path) {
  std::vector<araweat::Metric> metrics;
  for (const auto& name : metric_names) {
    const auto m = araweat::parse_metric(name);
    if (!m) throw araweat::ConfigError("unknown metric '" + name + "'");
    metrics.push_back(*m);
  }
  std::vector<araweat::AuditReport> subs;
  for (const auto& p : sub_paths) subs.push_back(araweat::load_report(p));
  const araweat::AuditReport conc = araweat::load_report(conc_path);
  const auto result = araweat::avg_vs_conc(subs, conc, metrics);
  const json out = {{"avg", series_json(result.avg)},
                    {"conc", series_json(result.conc)},
                    {"correlation", optional_number(result.correlation)}};
  if (out_path.empty()) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::ofstream file(out_path);
    if (!file) throw araweat::ConfigError("cannot write " + out_path);
    file << out.dump(2) << "\n";
  }
  return kExitOk;
}

int run_inspect_cmd(const SpaceArgs& space_args) {
  const araweat::EmbeddingSpace space = space_args.load();
  const araweat::NormStats norms = araweat::norm_stats(space);
  const auto& meta = space.meta();
  const json out = {{"name", space.name()},
                    {"path", meta.path},
                    {"format", meta.format},
                    {"dim", space.dim()},
                    {"vocab_size", space.size()},
                    {"header", meta.had_header},
                    {"declared_count", meta.declared_count},
                    {"duplicates", meta.duplicates},
                    {"skipped", meta.skipped},
                    {"norm", {{"min", norms.min},
                              {"max", norms.max},
                              {"mean", norms.mean},
                              {"zero_rows", norms.zero_rows}}}};
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bias audits for distributional word vector spaces"};
  app.require_subcommand(1);

  auto* audit = app.add_subcommand("audit", "run a bias audit from a config file");
  std::string config_path, out_path, format = "json";
  std::optional<int> threads;
  audit->add_option("--config", config_path, "audit config (JSON)")->required();
  audit->add_option("--out", out_path, "report output path")->required();
  audit->add_option("--format", format, "json, csv or markdown")
      ->check(CLI::IsMember({"json", "csv", "markdown"}));
  audit->add_option("--threads", threads, "spaces evaluated concurrently");

  auto* sts = app.add_subcommand("sts", "score sentence similarity (Pearson)");
  SpaceArgs sts_space;
  std::string pairs_path;
  sts_space.add_to(sts);
  sts->add_option("--pairs", pairs_path, "gold<TAB>a<TAB>b file")->required();

  auto* compare = app.add_subcommand(
      "compare", "correlate averaged sub-corpus scores with a whole-corpus report");
  std::string conc_path, compare_out;
  std::vector<std::string> sub_paths, metric_names;
  compare->add_option("--conc", conc_path, "report for the whole corpus")->required();
  compare->add_option("--sub", sub_paths, "reports for disjoint sub-corpora")
      ->required();
  compare->add_option("--metrics", metric_names, "restrict to these metrics (e.g. W KM)")
      ->delimiter(',');
  compare->add_option("--out", compare_out, "write JSON here instead of stdout");

  auto* inspect = app.add_subcommand("inspect", "summarize an embedding file");
  SpaceArgs inspect_space;
  inspect_space.add_to(inspect);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*audit) return run_audit_cmd(config_path, out_path, format, threads);
    if (*sts) return run_sts_cmd(sts_space, pairs_path);
    if (*compare) {
      return run_compare_cmd(conc_path, sub_paths, metric_names, compare_out);
    }
    if (*inspect) return run_inspect_cmd(inspect_space);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "araweat: %s\n", e.what());
    return kExitConfig;
  }
  return kExitOk;
}
