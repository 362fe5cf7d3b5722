#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace araweat {

// Pearson product-moment correlation. Empty optional when either input is
// constant. Throws MetricError on length mismatch or fewer than 2 values.
std::optional<double> pearson(std::span<const double> x,
                              std::span<const double> y);

// 1-based ranks with ties sharing their average rank.
std::vector<double> average_ranks(std::span<const double> values);

// Spearman rank correlation (Pearson over average ranks).
std::optional<double> spearman(std::span<const double> x,
                               std::span<const double> y);

// n choose k, saturating at UINT64_MAX.
std::uint64_t binomial(unsigned n, unsigned k);

double mean(std::span<const double> values);

}  // namespace araweat
