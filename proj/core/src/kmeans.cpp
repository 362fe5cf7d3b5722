#include "araweat/kmeans.hpp"

#include <algorithm>
#include <limits>

#include "araweat/error.hpp"
#include "araweat/metrics.hpp"
#include "araweat/rng.hpp"

namespace araweat {
namespace {

std::vector<std::size_t> assign(std::span<const Vector> points,
                                std::span<const Vector> centers) {
  std::vector<std::size_t> out(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_c = 0;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      const double d = squared_distance(points[p], centers[c]);
      if (d < best) {
        best = d;
        best_c = c;
      }
    }
    out[p] = best_c;
  }
  return out;
}

std::vector<Vector> seed_centers(std::span<const Vector> points, std::size_t k,
                                 Rng& rng) {
  const std::size_t n = points.size();
  std::vector<Vector> centers;
  std::vector<char> chosen(n, 0);
  std::size_t first = rng.below(n);
  centers.push_back(points[first]);
  chosen[first] = 1;

  std::vector<double> d2(n);
  for (std::size_t p = 0; p < n; ++p) d2[p] = squared_distance(points[p], centers[0]);

  while (centers.size() < k) {
    double total = 0.0;
    for (double x : d2) total += x;
    std::size_t pick = n;
    if (total > 0.0) {
      const double r = rng.uniform() * total;
      double cum = 0.0;
      for (std::size_t p = 0; p < n; ++p) {
        if (d2[p] <= 0.0) continue;
        cum += d2[p];
        pick = p;
        if (cum > r) break;
      }
    } else {
      // every point coincides with a center: pick uniformly among the rest
      std::vector<std::size_t> free;
      for (std::size_t p = 0; p < n; ++p) {
        if (!chosen[p]) free.push_back(p);
      }
      pick = free[rng.below(free.size())];
    }
    chosen[pick] = 1;
    centers.push_back(points[pick]);
    for (std::size_t p = 0; p < n; ++p) {
      d2[p] = std::min(d2[p], squared_distance(points[p], centers.back()));
    }
  }
  return centers;
}

// Means of each cluster; an empty cluster takes over the point farthest from
// its own center.
std::vector<Vector> update_centers(std::span<const Vector> points,
                                   std::vector<std::size_t>& assignments,
                                   std::size_t k) {
  const std::size_t dim = points.front().size();
  std::vector<Vector> centers(k, Vector(dim, 0.0));
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t p = 0; p < points.size(); ++p) {
    Vector& c = centers[assignments[p]];
    for (std::size_t d = 0; d < dim; ++d) c[d] += points[p][d];
    ++counts[assignments[p]];
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] == 0) continue;
    for (double& x : centers[c]) x /= static_cast<double>(counts[c]);
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] != 0) continue;
    double worst = -1.0;
    std::size_t far = 0;
    for (std::size_t p = 0; p < points.size(); ++p) {
      if (counts[assignments[p]] < 2) continue;
      const double d = squared_distance(points[p], centers[assignments[p]]);
      if (d > worst) {
        worst = d;
        far = p;
      }
    }
    --counts[assignments[far]];
    assignments[far] = c;
    counts[c] = 1;
    centers[c] = points[far];
  }
  return centers;
}

}  // namespace

KMeansResult kmeans_pp(std::span<const Vector> points, std::size_t k,
                       std::uint64_t seed, int max_iters) {
  if (k == 0) throw MetricError("kmeans: k must be at least 1");
  if (points.size() < k) throw MetricError("kmeans: fewer points than k");
  require_dim(points, points.front().size(), "kmeans points");

  Rng rng(seed);
  KMeansResult result;
  result.centers = seed_centers(points, k, rng);
  result.assignments = assign(points, result.centers);
  for (int iter = 1; iter <= max_iters; ++iter) {
    result.centers = update_centers(points, result.assignments, k);
    std::vector<std::size_t> next = assign(points, result.centers);
    result.iterations = iter;
    if (next == result.assignments) {
      result.converged = true;
      break;
    }
    result.assignments = std::move(next);
  }
  if (!result.converged) {
    result.centers = update_centers(points, result.assignments, k);
  }
  return result;
}

double within_cluster_ss(std::span<const Vector> points,
                         std::span<const std::size_t> assignments,
                         std::span<const Vector> centers) {
  double total = 0.0;
  for (std::size_t p = 0; p < points.size(); ++p) {
    total += squared_distance(points[p], centers[assignments[p]]);
  }
  return total;
}

MetricScore km_accuracy(std::span<const Vector> t1, std::span<const Vector> t2,
                        const KmOptions& options) {
  if (t1.empty() || t2.empty()) throw MetricError("KM: empty target set");
  if (options.runs < 1) throw MetricError("KM needs at least one run");
  std::vector<Vector> points;
  points.reserve(t1.size() + t2.size());
  points.insert(points.end(), t1.begin(), t1.end());
  points.insert(points.end(), t2.begin(), t2.end());
  if (options.normalize_first) {
    for (Vector& v : points) {
      const double n = norm(v);
      if (n > 0.0) {
        for (double& x : v) x /= n;
      }
    }
  }

  MetricScore score;
  score.metric = Metric::kKm;
  double total = 0.0;
  const double n = static_cast<double>(points.size());
  for (int r = 0; r < options.runs; ++r) {
    const KMeansResult km = kmeans_pp(
        points, 2, options.base_seed + static_cast<std::uint64_t>(r),
        options.max_iters);
    std::size_t agree = 0;
    for (std::size_t p = 0; p < points.size(); ++p) {
      const std::size_t label = p < t1.size() ? 0 : 1;
      if (km.assignments[p] == label) ++agree;
    }
    const double acc =
        static_cast<double>(std::max(agree, points.size() - agree)) / n;
    score.per_run.push_back(acc);
    total += acc;
  }
  score.value = total / static_cast<double>(options.runs);
  return score;
}

MetricScore km_accuracy(const ResolvedSpec& rs, const KmOptions& options) {
  const auto t1 = vectors_of(rs.t1v), t2 = vectors_of(rs.t2v);
  return km_accuracy(t1, t2, options);
}

}  // namespace araweat
