#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "araweat/vector_ops.hpp"

namespace araweat {

struct KMeansResult {
  std::vector<std::size_t> assignments;
  std::vector<Vector> centers;
  int iterations = 0;
  bool converged = false;
};

// KMeans++ seeding (D²-weighted) followed by Lloyd iterations until the
// assignment stops changing or max_iters is reached. Ties go to the lower
// cluster index; an emptied cluster is re-seeded at the point farthest from
// its current center. Deterministic for a given seed.
KMeansResult kmeans_pp(std::span<const Vector> points, std::size_t k,
                       std::uint64_t seed, int max_iters = 300);

// Sum of squared distances from each point to its assigned center.
double within_cluster_ss(std::span<const Vector> points,
                         std::span<const std::size_t> assignments,
                         std::span<const Vector> centers);

}  // namespace araweat
