#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace araweat {

using Vector = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
double squared_distance(std::span<const double> a, std::span<const double> b);
double euclidean_distance(std::span<const double> a,
                          std::span<const double> b);

// Cosine similarity; 0 when either vector has zero norm.
double cosine(std::span<const double> a, std::span<const double> b);

// Componentwise mean of a non-empty list of equally sized vectors.
Vector mean_vector(std::span<const Vector> vectors);

// Throws MetricError unless every vector in `vectors` has `dim` components.
void require_dim(std::span<const Vector> vectors, std::size_t dim,
                 const char* what);

}  // namespace araweat
