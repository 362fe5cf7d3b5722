#include <unordered_set>

#include "araweat/error.hpp"
#include "araweat/metrics.hpp"
#include "araweat/stats.hpp"

namespace araweat {

MetricScore ect_score(std::span<const Vector> t1, std::span<const Vector> t2,
                      std::span<const Vector> attributes) {
  if (t1.empty() || t2.empty()) throw MetricError("ECT: empty target set");
  if (attributes.size() < 3) {
    throw MetricError("ECT needs at least 3 distinct attribute terms");
  }
  const std::size_t dim = t1.front().size();
  require_dim(t1, dim, "T1");
  require_dim(t2, dim, "T2");
  require_dim(attributes, dim, "A");

  const Vector mean1 = mean_vector(t1);
  const Vector mean2 = mean_vector(t2);
  std::vector<double> sim1, sim2;
  sim1.reserve(attributes.size());
  sim2.reserve(attributes.size());
  for (const Vector& a : attributes) {
    sim1.push_back(cosine(a, mean1));
    sim2.push_back(cosine(a, mean2));
  }
  MetricScore score;
  score.metric = Metric::kEct;
  score.value = spearman(sim1, sim2);
  score.aux["attributes"] = static_cast<double>(attributes.size());
  return score;
}

MetricScore ect_score(const ResolvedSpec& rs) {
  if (!rs.spec.is_explicit()) {
    throw MetricError("spec '" + rs.spec.id + "' is implicit; ECT needs attributes");
  }
  std::unordered_set<std::string> seen;
  std::vector<Vector> attributes;
  for (const auto* set : {&rs.a1v, &rs.a2v}) {
    for (const ResolvedTerm& term : *set) {
      if (seen.insert(term.term).second) attributes.push_back(term.vector);
    }
  }
  const auto t1 = vectors_of(rs.t1v), t2 = vectors_of(rs.t2v);
  return ect_score(t1, t2, attributes);
}

}  // namespace araweat
