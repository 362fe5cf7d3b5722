#include "araweat/vector_ops.hpp"

#include <cmath>
#include <string>

#include "araweat/error.hpp"

namespace araweat {

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

double euclidean_distance(std::span<const double> a,
                          std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

double cosine(std::span<const double> a, std::span<const double> b) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot(a, b) / (na * nb);
}

Vector mean_vector(std::span<const Vector> vectors) {
  if (vectors.empty()) throw MetricError("mean of an empty vector list");
  Vector out(vectors.front().size(), 0.0);
  for (const Vector& v : vectors) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += v[i];
  }
  const double n = static_cast<double>(vectors.size());
  for (double& x : out) x /= n;
  return out;
}

void require_dim(std::span<const Vector> vectors, std::size_t dim,
                 const char* what) {
  for (const Vector& v : vectors) {
    if (v.size() != dim) {
      throw MetricError(std::string("dimension mismatch in ") + what +
                        ": expected " + std::to_string(dim) + ", got " +
                        std::to_string(v.size()));
    }
  }
}

}  // namespace araweat
