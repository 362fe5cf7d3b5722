#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "araweat/bias_spec.hpp"
#include "araweat/vector_ops.hpp"

namespace araweat {

enum class Metric { kWeat, kEct, kBat, kKm, kSts };

std::string_view metric_name(Metric metric);
std::optional<Metric> parse_metric(std::string_view name);

// Result of one metric. An empty value is the undefined marker (for
// example a zero pooled deviation or a constant similarity vector).
struct MetricScore {
  Metric metric = Metric::kWeat;
  std::optional<double> value;
  std::optional<double> significance;  // p-value, WEAT only
  std::vector<double> per_run;         // KM accuracies per run
  std::map<std::string, double> aux;
};

// ---------------------------------------------------------------- WEAT --

struct WeatResult {
  double statistic = 0.0;
  std::optional<double> effect_size;
  double p_value = 1.0;
  std::uint64_t permutations_used = 0;
  bool exact = false;
};

struct PValue {
  double p = 1.0;
  bool exact = false;
  std::uint64_t permutations_used = 0;
};

inline constexpr std::uint64_t kDefaultMaxPermutations = 100000;
inline constexpr double kDefaultAlpha = 0.05;

// Mean cosine with A1 minus mean cosine with A2.
double association(std::span<const double> t, std::span<const Vector> a1,
                   std::span<const Vector> a2);

double weat_statistic(std::span<const Vector> t1, std::span<const Vector> t2,
                      std::span<const Vector> a1, std::span<const Vector> a2);

// Difference of mean associations over the population standard deviation
// of associations across T1 and T2. Empty when that deviation is zero.
std::optional<double> weat_effect_size(std::span<const Vector> t1,
                                       std::span<const Vector> t2,
                                       std::span<const Vector> a1,
                                       std::span<const Vector> a2);

// One-sided permutation test over equally sized re-splits of T1 and T2:
// fraction of splits whose statistic strictly exceeds the observed one.
// Enumerates every split when there are at most max_permutations of them,
// otherwise draws max_permutations seeded random splits.
PValue weat_p_value(std::span<const Vector> t1, std::span<const Vector> t2,
                    std::span<const Vector> a1, std::span<const Vector> a2,
                    std::uint64_t max_permutations = kDefaultMaxPermutations,
                    std::uint64_t seed = 0);

// The two strategies behind weat_p_value.
PValue weat_p_value_exact(std::span<const Vector> t1, std::span<const Vector> t2,
                          std::span<const Vector> a1, std::span<const Vector> a2);
PValue weat_p_value_sampled(std::span<const Vector> t1,
                            std::span<const Vector> t2,
                            std::span<const Vector> a1,
                            std::span<const Vector> a2, std::uint64_t samples,
                            std::uint64_t seed);

double weat_statistic(const ResolvedSpec& rs);
std::optional<double> weat_effect_size(const ResolvedSpec& rs);
PValue weat_p_value(const ResolvedSpec& rs,
                    std::uint64_t max_permutations = kDefaultMaxPermutations,
                    std::uint64_t seed = 0);
WeatResult weat(const ResolvedSpec& rs,
                std::uint64_t max_permutations = kDefaultMaxPermutations,
                std::uint64_t seed = 0);

inline bool is_significant(double p_value, double alpha = kDefaultAlpha) {
  return p_value < alpha;
}

// ----------------------------------------------------------------- ECT --

// Spearman correlation between the cosines of each attribute with the T1
// mean and with the T2 mean. `attributes` is the collapsed A1 ∪ A2 list.
MetricScore ect_score(std::span<const Vector> t1, std::span<const Vector> t2,
                      std::span<const Vector> attributes);

// Collapses A1 and A2, dropping repeated terms (first occurrence wins).
MetricScore ect_score(const ResolvedSpec& rs);

// ----------------------------------------------------------------- BAT --

// Fraction of (query, opposing attribute) comparisons in which the
// stereotypical attribute is strictly closer to the analogy query.
double bat_fraction(std::span<const Vector> t1, std::span<const Vector> t2,
                    std::span<const Vector> a1, std::span<const Vector> a2);

MetricScore bat_score(const ResolvedSpec& rs);

// ------------------------------------------------------------------ KM --

struct KmOptions {
  int runs = 20;
  std::uint64_t base_seed = 0;
  bool normalize_first = false;
  int max_iters = 300;
};

// Clusters T1 ∪ T2 into two groups `runs` times and averages the better of
// the two cluster/set alignments.
MetricScore km_accuracy(std::span<const Vector> t1, std::span<const Vector> t2,
                        const KmOptions& options = {});
MetricScore km_accuracy(const ResolvedSpec& rs, const KmOptions& options = {});

}  // namespace araweat
