#include <cstdint>

#include "araweat/error.hpp"
#include "araweat/metrics.hpp"

namespace araweat {

// With u = t1 - t2 the queries are q1 = u + a2 and q2 = a1 - u. Dropping
// the terms every candidate c shares:
//   |q1 - c|² ~ |a2 - c|² - 2u·c
//   |q2 - c|² ~ |a1 - c|² + 2u·c
// so each comparison needs only attribute pair distances and u·c.
double bat_fraction(std::span<const Vector> t1, std::span<const Vector> t2,
                    std::span<const Vector> a1, std::span<const Vector> a2) {
  if (t1.empty() || t2.empty()) throw MetricError("BAT: empty target set");
  if (a1.size() < 2 || a2.size() < 2) {
    throw MetricError("BAT: attribute set too small (need at least 2 each)");
  }
  const std::size_t dim = t1.front().size();
  require_dim(t1, dim, "T1");
  require_dim(t2, dim, "T2");
  require_dim(a1, dim, "A1");
  require_dim(a2, dim, "A2");

  const std::size_t m1 = a1.size(), m2 = a2.size();
  std::vector<const Vector*> attrs;
  for (const Vector& a : a1) attrs.push_back(&a);
  for (const Vector& a : a2) attrs.push_back(&a);
  const std::size_t m = attrs.size();

  std::vector<double> pair_sq(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      pair_sq[i * m + j] = squared_distance(*attrs[i], *attrs[j]);
    }
  }
  auto dist = [&](std::size_t i, std::size_t j) { return pair_sq[i * m + j]; };

  Vector u(dim);
  std::vector<double> ua(m);
  std::uint64_t biased = 0;
  for (const Vector& x : t1) {
    for (const Vector& y : t2) {
      for (std::size_t d = 0; d < dim; ++d) u[d] = x[d] - y[d];
      for (std::size_t j = 0; j < m; ++j) ua[j] = dot(u, *attrs[j]);

      for (std::size_t i1 = 0; i1 < m1; ++i1) {
        for (std::size_t i2 = m1; i2 < m; ++i2) {
          // q1 = t1 - t2 + a2: is a1 closer than each other A2 term?
          const double key_a1 = dist(i2, i1) - 2.0 * ua[i1];
          for (std::size_t o = m1; o < m; ++o) {
            if (o == i2) continue;
            if (key_a1 < dist(i2, o) - 2.0 * ua[o]) ++biased;
          }
          // q2 = a1 - t1 + t2: is a2 closer than each other A1 term?
          const double key_a2 = dist(i1, i2) + 2.0 * ua[i2];
          for (std::size_t o = 0; o < m1; ++o) {
            if (o == i1) continue;
            if (key_a2 < dist(i1, o) + 2.0 * ua[o]) ++biased;
          }
        }
      }
    }
  }
  const std::uint64_t total = static_cast<std::uint64_t>(t1.size()) *
                              t2.size() * m1 * m2 * ((m1 - 1) + (m2 - 1));
  return static_cast<double>(biased) / static_cast<double>(total);
}

MetricScore bat_score(const ResolvedSpec& rs) {
  if (!rs.spec.is_explicit()) {
    throw MetricError("spec '" + rs.spec.id + "' is implicit; BAT needs attributes");
  }
  const auto t1 = vectors_of(rs.t1v), t2 = vectors_of(rs.t2v);
  const auto a1 = vectors_of(rs.a1v), a2 = vectors_of(rs.a2v);
  MetricScore score;
  score.metric = Metric::kBat;
  score.value = bat_fraction(t1, t2, a1, a2);
  return score;
}

}  // namespace araweat
