#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "araweat/error.hpp"
#include "araweat/metrics.hpp"
#include "araweat/rng.hpp"
#include "araweat/stats.hpp"

namespace araweat {
namespace {

std::size_t common_dim(std::span<const Vector> first) {
  return first.empty() ? 0 : first.front().size();
}

void check_inputs(std::span<const Vector> t1, std::span<const Vector> t2,
                  std::span<const Vector> a1, std::span<const Vector> a2) {
  if (t1.empty() || t2.empty()) throw MetricError("WEAT: empty target set");
  if (a1.empty() || a2.empty()) throw MetricError("WEAT: empty attribute set");
  const std::size_t dim = common_dim(t1);
  require_dim(t1, dim, "T1");
  require_dim(t2, dim, "T2");
  require_dim(a1, dim, "A1");
  require_dim(a2, dim, "A2");
}

// Associations of T1 followed by T2.
std::vector<double> target_associations(std::span<const Vector> t1,
                                        std::span<const Vector> t2,
                                        std::span<const Vector> a1,
                                        std::span<const Vector> a2) {
  std::vector<double> out;
  out.reserve(t1.size() + t2.size());
  for (const Vector& t : t1) out.push_back(association(t, a1, a2));
  for (const Vector& t : t2) out.push_back(association(t, a1, a2));
  return out;
}

// Σ over X1 minus Σ over X2, accumulated in index order so that every
// split, including the observed one, is evaluated identically.
double split_statistic(const std::vector<double>& assoc,
                       const std::vector<char>& in_first) {
  double first = 0.0, second = 0.0;
  for (std::size_t i = 0; i < assoc.size(); ++i) {
    if (in_first[i]) {
      first += assoc[i];
    } else {
      second += assoc[i];
    }
  }
  return first - second;
}

void require_explicit(const ResolvedSpec& rs) {
  if (!rs.spec.is_explicit()) {
    throw MetricError("spec '" + rs.spec.id +
                      "' is implicit; WEAT needs attribute sets");
  }
}

}  // namespace

double association(std::span<const double> t, std::span<const Vector> a1,
                   std::span<const Vector> a2) {
  if (a1.empty() || a2.empty()) {
    throw MetricError("association: empty attribute set");
  }
  require_dim(a1, t.size(), "A1");
  require_dim(a2, t.size(), "A2");
  double s1 = 0.0;
  for (const Vector& a : a1) s1 += cosine(t, a);
  double s2 = 0.0;
  for (const Vector& a : a2) s2 += cosine(t, a);
  return s1 / static_cast<double>(a1.size()) -
         s2 / static_cast<double>(a2.size());
}

double weat_statistic(std::span<const Vector> t1, std::span<const Vector> t2,
                      std::span<const Vector> a1, std::span<const Vector> a2) {
  check_inputs(t1, t2, a1, a2);
  double first = 0.0, second = 0.0;
  for (const Vector& t : t1) first += association(t, a1, a2);
  for (const Vector& t : t2) second += association(t, a1, a2);
  return first - second;
}

std::optional<double> weat_effect_size(std::span<const Vector> t1,
                                       std::span<const Vector> t2,
                                       std::span<const Vector> a1,
                                       std::span<const Vector> a2) {
  check_inputs(t1, t2, a1, a2);
  const std::vector<double> assoc = target_associations(t1, t2, a1, a2);
  const std::span<const double> all(assoc);
  const double m1 = mean(all.first(t1.size()));
  const double m2 = mean(all.subspan(t1.size()));
  const double m = mean(all);
  double var = 0.0;
  for (double x : assoc) var += (x - m) * (x - m);
  var /= static_cast<double>(assoc.size());
  const double sd = std::sqrt(var);
  if (sd == 0.0) return std::nullopt;
  return (m1 - m2) / sd;
}

namespace {

struct SplitSetup {
  std::vector<double> assoc;
  std::size_t k = 0;
  double threshold = 0.0;
};

SplitSetup prepare_splits(std::span<const Vector> t1, std::span<const Vector> t2,
                          std::span<const Vector> a1,
                          std::span<const Vector> a2) {
  check_inputs(t1, t2, a1, a2);
  SplitSetup setup;
  setup.assoc = target_associations(t1, t2, a1, a2);
  setup.k = t1.size();
  std::vector<char> in_first(setup.assoc.size(), 0);
  std::fill(in_first.begin(), in_first.begin() + setup.k, 1);
  const double observed = split_statistic(setup.assoc, in_first);
  double magnitude = 1.0;
  for (double x : setup.assoc) magnitude += std::abs(x);
  // Splits equal to the observed value up to summation-order rounding are
  // ties, not exceedances.
  setup.threshold = observed + 1e-12 * magnitude;
  return setup;
}

}  // namespace

PValue weat_p_value_exact(std::span<const Vector> t1, std::span<const Vector> t2,
                          std::span<const Vector> a1, std::span<const Vector> a2) {
  const SplitSetup setup = prepare_splits(t1, t2, a1, a2);
  const std::size_t n = setup.assoc.size();
  const std::size_t k = setup.k;
  std::vector<char> in_first(n, 0);
  std::uint64_t exceed = 0, splits = 0;

  // Lexicographic walk over k-subsets of {0..n-1}.
  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), std::size_t{0});
  while (true) {
    std::fill(in_first.begin(), in_first.end(), 0);
    for (std::size_t i : pick) in_first[i] = 1;
    if (split_statistic(setup.assoc, in_first) > setup.threshold) ++exceed;
    ++splits;

    std::size_t pos = k;
    while (pos > 0 && pick[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) break;
    ++pick[pos - 1];
    for (std::size_t j = pos; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  PValue result;
  result.exact = true;
  result.permutations_used = splits;
  result.p = static_cast<double>(exceed) / static_cast<double>(splits);
  return result;
}

PValue weat_p_value_sampled(std::span<const Vector> t1,
                            std::span<const Vector> t2,
                            std::span<const Vector> a1,
                            std::span<const Vector> a2, std::uint64_t samples,
                            std::uint64_t seed) {
  if (samples == 0) throw MetricError("sample count must be positive");
  const SplitSetup setup = prepare_splits(t1, t2, a1, a2);
  const std::size_t n = setup.assoc.size();
  const std::size_t k = setup.k;
  std::vector<char> in_first(n, 0);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  std::uint64_t exceed = 0;
  for (std::uint64_t draw = 0; draw < samples; ++draw) {
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + rng.below(n - i);
      std::swap(order[i], order[j]);
    }
    std::fill(in_first.begin(), in_first.end(), 0);
    for (std::size_t i = 0; i < k; ++i) in_first[order[i]] = 1;
    if (split_statistic(setup.assoc, in_first) > setup.threshold) ++exceed;
  }
  PValue result;
  result.exact = false;
  result.permutations_used = samples;
  result.p = static_cast<double>(exceed) / static_cast<double>(samples);
  return result;
}

PValue weat_p_value(std::span<const Vector> t1, std::span<const Vector> t2,
                    std::span<const Vector> a1, std::span<const Vector> a2,
                    std::uint64_t max_permutations, std::uint64_t seed) {
  check_inputs(t1, t2, a1, a2);
  if (max_permutations == 0) {
    throw MetricError("max_permutations must be positive");
  }
  const std::uint64_t splits =
      binomial(static_cast<unsigned>(t1.size() + t2.size()),
               static_cast<unsigned>(t1.size()));
  if (splits <= max_permutations) return weat_p_value_exact(t1, t2, a1, a2);
  return weat_p_value_sampled(t1, t2, a1, a2, max_permutations, seed);
}

double weat_statistic(const ResolvedSpec& rs) {
  require_explicit(rs);
  const auto t1 = vectors_of(rs.t1v), t2 = vectors_of(rs.t2v);
  const auto a1 = vectors_of(rs.a1v), a2 = vectors_of(rs.a2v);
  return weat_statistic(t1, t2, a1, a2);
}

std::optional<double> weat_effect_size(const ResolvedSpec& rs) {
  require_explicit(rs);
  const auto t1 = vectors_of(rs.t1v), t2 = vectors_of(rs.t2v);
  const auto a1 = vectors_of(rs.a1v), a2 = vectors_of(rs.a2v);
  return weat_effect_size(t1, t2, a1, a2);
}

PValue weat_p_value(const ResolvedSpec& rs, std::uint64_t max_permutations,
                    std::uint64_t seed) {
  require_explicit(rs);
  const auto t1 = vectors_of(rs.t1v), t2 = vectors_of(rs.t2v);
  const auto a1 = vectors_of(rs.a1v), a2 = vectors_of(rs.a2v);
  return weat_p_value(t1, t2, a1, a2, max_permutations, seed);
}

WeatResult weat(const ResolvedSpec& rs, std::uint64_t max_permutations,
                std::uint64_t seed) {
  require_explicit(rs);
  const auto t1 = vectors_of(rs.t1v), t2 = vectors_of(rs.t2v);
  const auto a1 = vectors_of(rs.a1v), a2 = vectors_of(rs.a2v);
  WeatResult out;
  out.statistic = weat_statistic(t1, t2, a1, a2);
  out.effect_size = weat_effect_size(t1, t2, a1, a2);
  const PValue p = weat_p_value(t1, t2, a1, a2, max_permutations, seed);
  out.p_value = p.p;
  out.exact = p.exact;
  out.permutations_used = p.permutations_used;
  return out;
}

}  // namespace araweat
