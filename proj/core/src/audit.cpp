#include "araweat/audit.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iterator>
#include <memory>
#include <set>
#include <thread>

#include <json.hpp>

#include "araweat/error.hpp"
#include "araweat/rng.hpp"
#include "araweat/sts.hpp"

namespace araweat {
namespace {

using nlohmann::json;

NormalizationPolicy parse_policy(const json& obj) {
  NormalizationPolicy policy;
  if (!obj.is_object()) throw ConfigError("'normalization' must be an object");
  auto flag = [&](const char* key, bool& field) {
    if (obj.contains(key)) {
      if (!obj.at(key).is_boolean()) {
        throw ConfigError(std::string("normalization.") + key +
                          " must be a boolean");
      }
      field = obj.at(key).get<bool>();
    }
  };
  flag("strip_diacritics", policy.strip_diacritics);
  flag("normalize_alef", policy.normalize_alef);
  flag("normalize_teh_marbuta", policy.normalize_teh_marbuta);
  flag("unicode_nfc", policy.unicode_nfc);
  flag("lowercase", policy.lowercase);
  return policy;
}

json policy_to_json(const NormalizationPolicy& p) {
  return {{"strip_diacritics", p.strip_diacritics},
          {"normalize_alef", p.normalize_alef},
          {"normalize_teh_marbuta", p.normalize_teh_marbuta},
          {"unicode_nfc", p.unicode_nfc},
          {"lowercase", p.lowercase}};
}

std::filesystem::path resolve_path(const std::filesystem::path& base,
                                   const std::string& value) {
  std::filesystem::path p(value);
  if (p.is_relative() && !base.empty()) p = base / p;
  return p.lexically_normal();
}

template <typename T>
T get_or(const json& doc, const char* key, T fallback) {
  if (!doc.contains(key) || doc.at(key).is_null()) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config field '") + key +
                      "' has the wrong type");
  }
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ReportRow make_row(const std::string& space, const std::string& test,
                   Metric metric) {
  ReportRow row;
  row.space = space;
  row.test = test;
  row.metric = metric;
  return row;
}

ReportRow error_row(const std::string& space, const std::string& test,
                    Metric metric, const std::string& message,
                    double coverage = 0.0) {
  ReportRow row = make_row(space, test, metric);
  row.flags.emplace_back(flags::kError);
  row.error = message;
  row.coverage = coverage;
  return row;
}

void set_value(ReportRow& row, std::optional<double> value) {
  row.value = value;
  if (!value) row.flags.emplace_back(flags::kUndefined);
}

std::vector<ReportRow> evaluate_space(const AuditConfig& config,
                                      const SpaceConfig& space_cfg,
                                      const std::vector<BiasSpecification>& specs,
                                      const std::vector<StsPair>& sts_pairs,
                                      bool& failed) {
  std::vector<ReportRow> rows;
  const bool want_sts = std::find(config.metrics.begin(), config.metrics.end(),
                                  Metric::kSts) != config.metrics.end();
  std::vector<Metric> spec_metrics;
  for (Metric m : config.metrics) {
    if (m != Metric::kSts) spec_metrics.push_back(m);
  }

  std::unique_ptr<EmbeddingSpace> space;
  try {
    LoadOptions options;
    options.name = space_cfg.name;
    options.limit = space_cfg.limit;
    options.strict = space_cfg.strict;
    options.policy = space_cfg.policy;
    space = std::make_unique<EmbeddingSpace>(
        load_embeddings(space_cfg.path, space_cfg.format, options));
  } catch (const std::exception& e) {
    failed = true;
    const std::string message = std::string("load failed: ") + e.what();
    for (const auto& s : specs) {
      for (Metric m : spec_metrics) {
        rows.push_back(error_row(space_cfg.name, s.id, m, message));
      }
    }
    if (want_sts) {
      rows.push_back(error_row(space_cfg.name, std::string(kStsTest),
                               Metric::kSts, message));
    }
    return rows;
  }

  for (const BiasSpecification& spec : specs) {
    std::optional<ResolvedSpec> rs;
    std::string resolve_error;
    try {
      rs = resolve(spec, *space, space_cfg.policy, config.min_coverage);
    } catch (const std::exception& e) {
      resolve_error = e.what();
    }
    if (!rs) {
      for (Metric m : spec_metrics) {
        rows.push_back(error_row(space_cfg.name, spec.id, m, resolve_error));
      }
      continue;
    }
    const std::uint64_t seed =
        derive_seed(config.seed, space_cfg.name, spec.id);

    for (Metric m : spec_metrics) {
      ReportRow row = make_row(space_cfg.name, spec.id, m);
      row.coverage = rs->overall_coverage();
      if (rs->below_threshold) row.flags.emplace_back(flags::kBelowCoverage);
      if (rs->truncation) row.flags.emplace_back(flags::kTruncated);
      const bool needs_attributes = m != Metric::kKm;
      if (needs_attributes && !spec.is_explicit()) {
        row.flags.emplace_back(flags::kNotApplicable);
        rows.push_back(std::move(row));
        continue;
      }
      try {
        switch (m) {
          case Metric::kWeat: {
            const WeatResult w = weat(*rs, config.permutations, seed);
            set_value(row, w.effect_size);
            row.p_value = w.p_value;
            row.significant = is_significant(w.p_value, config.alpha);
            break;
          }
          case Metric::kEct:
            set_value(row, ect_score(*rs).value);
            break;
          case Metric::kBat:
            set_value(row, bat_score(*rs).value);
            break;
          case Metric::kKm: {
            KmOptions km;
            km.runs = config.km_runs;
            km.base_seed = seed;
            km.normalize_first = config.km_normalize;
            set_value(row, km_accuracy(*rs, km).value);
            break;
          }
          case Metric::kSts:
            break;
        }
      } catch (const std::exception& e) {
        row = error_row(space_cfg.name, spec.id, m, e.what(), row.coverage);
      }
      rows.push_back(std::move(row));
    }
  }

  if (want_sts) {
    ReportRow row = make_row(space_cfg.name, std::string(kStsTest), Metric::kSts);
    try {
      const StsResult sts = sts_pearson(sts_pairs, *space, space_cfg.policy);
      set_value(row, sts.pearson);
      row.coverage = sts.n_pairs == 0
                         ? 0.0
                         : 1.0 - static_cast<double>(sts.n_empty) /
                                     static_cast<double>(sts.n_pairs);
    } catch (const std::exception& e) {
      row = error_row(space_cfg.name, std::string(kStsTest), Metric::kSts,
                      e.what());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void AuditConfig::validate() const {
  if (spaces.empty()) throw ConfigError("config lists no embedding spaces");
  if (spec_files.empty()) throw ConfigError("config lists no spec files");
  if (metrics.empty()) throw ConfigError("config lists no metrics");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (!(min_coverage >= 0.0 && min_coverage <= 1.0)) {
    throw ConfigError("min_coverage must lie in [0, 1]");
  }
  if (permutations == 0) throw ConfigError("permutations must be positive");
  if (km_runs < 1) throw ConfigError("km_runs must be at least 1");
  if (threads < 1) throw ConfigError("threads must be at least 1");
  const bool want_sts =
      std::find(metrics.begin(), metrics.end(), Metric::kSts) != metrics.end();
  if (want_sts && !sts_path) {
    throw ConfigError("metric STS requested but no sts_path given");
  }
  std::set<std::string> names;
  for (const auto& s : spaces) {
    if (!names.insert(s.name).second) {
      throw ConfigError("duplicate space name '" + s.name + "'");
    }
  }
}

AuditConfig parse_audit_config(std::string_view json_text,
                               const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  AuditConfig config;
  if (!doc.contains("spaces") || !doc.at("spaces").is_array()) {
    throw ConfigError("config needs a 'spaces' array");
  }
  for (const json& item : doc.at("spaces")) {
    if (!item.is_object() || !item.contains("path")) {
      throw ConfigError("each space needs at least a 'path'");
    }
    SpaceConfig space;
    space.path = resolve_path(base_dir, get_or<std::string>(item, "path", ""));
    space.name = get_or<std::string>(item, "name", space.path.stem().string());
    const std::string format = get_or<std::string>(item, "format", "");
    if (format.empty()) {
      space.format = guess_format(space.path);
    } else if (format == "text") {
      space.format = EmbeddingFormat::kText;
    } else if (format == "binary") {
      space.format = EmbeddingFormat::kBinary;
    } else {
      throw ConfigError("unknown embedding format '" + format + "'");
    }
    if (item.contains("limit") && !item.at("limit").is_null()) {
      space.limit = get_or<std::size_t>(item, "limit", 0);
    }
    space.strict = get_or<bool>(item, "strict", false);
    if (item.contains("normalization")) {
      space.policy = parse_policy(item.at("normalization"));
    }
    config.spaces.push_back(std::move(space));
  }

  if (!doc.contains("spec_files") || !doc.at("spec_files").is_array()) {
    throw ConfigError("config needs a 'spec_files' array");
  }
  for (const json& item : doc.at("spec_files")) {
    if (!item.is_string()) throw ConfigError("spec_files entries must be strings");
    config.spec_files.push_back(resolve_path(base_dir, item.get<std::string>()));
  }

  if (doc.contains("metrics")) {
    config.metrics.clear();
    for (const json& item : doc.at("metrics")) {
      const auto metric =
          item.is_string() ? parse_metric(item.get<std::string>()) : std::nullopt;
      if (!metric) throw ConfigError("unknown metric " + item.dump());
      if (std::find(config.metrics.begin(), config.metrics.end(), *metric) ==
          config.metrics.end()) {
        config.metrics.push_back(*metric);
      }
    }
  }
  config.min_coverage = get_or<double>(doc, "min_coverage", config.min_coverage);
  config.alpha = get_or<double>(doc, "alpha", config.alpha);
  config.seed = get_or<std::uint64_t>(doc, "seed", config.seed);
  config.permutations =
      get_or<std::uint64_t>(doc, "permutations", config.permutations);
  config.km_runs = get_or<int>(doc, "km_runs", config.km_runs);
  config.km_normalize = get_or<bool>(doc, "km_normalize", config.km_normalize);
  config.threads = get_or<int>(doc, "threads", config.threads);
  if (doc.contains("sts_path") && !doc.at("sts_path").is_null()) {
    config.sts_path =
        resolve_path(base_dir, get_or<std::string>(doc, "sts_path", ""));
  }
  config.validate();
  return config;
}

AuditConfig load_audit_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  return parse_audit_config(text, path.parent_path());
}

std::string audit_config_to_json(const AuditConfig& config) {
  json doc;
  doc["spaces"] = json::array();
  for (const auto& s : config.spaces) {
    json item = {{"name", s.name},
                 {"path", s.path.string()},
                 {"format", std::string(format_name(s.format))},
                 {"strict", s.strict},
                 {"normalization", policy_to_json(s.policy)}};
    item["limit"] = s.limit ? json(*s.limit) : json(nullptr);
    doc["spaces"].push_back(std::move(item));
  }
  doc["spec_files"] = json::array();
  for (const auto& p : config.spec_files) doc["spec_files"].push_back(p.string());
  doc["metrics"] = json::array();
  for (Metric m : config.metrics) doc["metrics"].push_back(std::string(metric_name(m)));
  doc["min_coverage"] = config.min_coverage;
  doc["alpha"] = config.alpha;
  doc["seed"] = config.seed;
  doc["permutations"] = config.permutations;
  doc["km_runs"] = config.km_runs;
  doc["km_normalize"] = config.km_normalize;
  doc["threads"] = config.threads;
  doc["sts_path"] =
      config.sts_path ? json(config.sts_path->string()) : json(nullptr);
  return doc.dump();
}

bool ReportRow::has_flag(std::string_view flag) const {
  return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::string_view space,
                          std::string_view test) {
  std::uint64_t h = splitmix64(base_seed);
  h = splitmix64(h ^ stable_hash(space));
  h = splitmix64(h ^ stable_hash(test));
  return h;
}

AuditReport run_audit(const AuditConfig& config) {
  config.validate();
  AuditReport report;
  report.config_echo = audit_config_to_json(config);
  report.total_spaces = config.spaces.size();

  std::vector<BiasSpecification> specs;
  std::set<std::string> ids;
  for (const auto& path : config.spec_files) {
    SpecFile file;
    try {
      file = parse_spec_file(path);
    } catch (const SpecError& e) {
      throw ConfigError(std::string(e.what()) + " (" + path.string() + ")");
    }
    for (auto& spec : file.specs) {
      if (!ids.insert(spec.id).second) {
        throw ConfigError("test id '" + spec.id + "' appears in several spec files");
      }
      specs.push_back(std::move(spec));
    }
  }
  std::vector<StsPair> sts_pairs;
  if (config.sts_path) sts_pairs = parse_sts_file(*config.sts_path);

  const std::size_t n = config.spaces.size();
  std::vector<std::vector<ReportRow>> per_space(n);
  std::vector<char> failed(n, 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      bool f = false;
      per_space[i] = evaluate_space(config, config.spaces[i], specs, sts_pairs, f);
      failed[i] = f ? 1 : 0;
    }
  };
  const std::size_t threads =
      std::min<std::size_t>(static_cast<std::size_t>(config.threads), n);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (auto& row : per_space[i]) report.rows.push_back(std::move(row));
    report.failed_spaces += failed[i];
  }
  report.created_at = utc_timestamp();
  return report;
}

}  // namespace araweat
