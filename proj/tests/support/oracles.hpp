#pragma once

// Naive reference implementations. They deliberately avoid the library's
// numeric helpers so each check compares two independent code paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace araweat::oracle {

using Vec = std::vector<double>;

inline double cos_sim(const Vec& a, const Vec& b) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  if (aa == 0.0 || bb == 0.0) return 0.0;
  return ab / (std::sqrt(aa) * std::sqrt(bb));
}

inline double assoc(const Vec& t, const std::vector<Vec>& a1,
                    const std::vector<Vec>& a2) {
  double s1 = 0.0, s2 = 0.0;
  for (const Vec& a : a1) s1 += cos_sim(t, a);
  for (const Vec& a : a2) s2 += cos_sim(t, a);
  return s1 / a1.size() - s2 / a2.size();
}

inline double weat_statistic(const std::vector<Vec>& x1,
                             const std::vector<Vec>& x2,
                             const std::vector<Vec>& a1,
                             const std::vector<Vec>& a2) {
  double s = 0.0;
  for (const Vec& t : x1) s += assoc(t, a1, a2);
  for (const Vec& t : x2) s -= assoc(t, a1, a2);
  return s;
}

inline std::optional<double> weat_effect_size(const std::vector<Vec>& t1,
                                              const std::vector<Vec>& t2,
                                              const std::vector<Vec>& a1,
                                              const std::vector<Vec>& a2) {
  std::vector<double> all;
  double m1 = 0.0, m2 = 0.0;
  for (const Vec& t : t1) {
    all.push_back(assoc(t, a1, a2));
    m1 += all.back();
  }
  for (const Vec& t : t2) {
    all.push_back(assoc(t, a1, a2));
    m2 += all.back();
  }
  m1 /= t1.size();
  m2 /= t2.size();
  double m = 0.0;
  for (double x : all) m += x;
  m /= all.size();
  double v = 0.0;
  for (double x : all) v += (x - m) * (x - m);
  const double sd = std::sqrt(v / all.size());
  if (sd == 0.0) return std::nullopt;
  return (m1 - m2) / sd;
}

// Brute force over every bitmask of T1 ∪ T2 with |X1| = |T1|.
inline double weat_p_exhaustive(const std::vector<Vec>& t1,
                                const std::vector<Vec>& t2,
                                const std::vector<Vec>& a1,
                                const std::vector<Vec>& a2) {
  std::vector<Vec> all = t1;
  all.insert(all.end(), t2.begin(), t2.end());
  const std::size_t n = all.size();
  const double observed = weat_statistic(t1, t2, a1, a2);
  std::uint64_t total = 0, greater = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != t1.size()) continue;
    std::vector<Vec> x1, x2;
    for (std::size_t i = 0; i < n; ++i) {
      ((mask >> i) & 1 ? x1 : x2).push_back(all[i]);
    }
    ++total;
    if (weat_statistic(x1, x2, a1, a2) > observed + 1e-12) ++greater;
  }
  return static_cast<double>(greater) / static_cast<double>(total);
}

inline double euclid(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Quadruple loop with explicit query vectors.
inline double bat(const std::vector<Vec>& t1, const std::vector<Vec>& t2,
                  const std::vector<Vec>& a1, const std::vector<Vec>& a2) {
  std::uint64_t biased = 0, total = 0;
  for (const Vec& x : t1) {
    for (const Vec& y : t2) {
      for (std::size_t i = 0; i < a1.size(); ++i) {
        for (std::size_t j = 0; j < a2.size(); ++j) {
          Vec q1(x.size()), q2(x.size());
          for (std::size_t d = 0; d < x.size(); ++d) {
            q1[d] = x[d] - y[d] + a2[j][d];
            q2[d] = a1[i][d] - x[d] + y[d];
          }
          for (std::size_t o = 0; o < a2.size(); ++o) {
            if (o == j) continue;
            ++total;
            if (euclid(q1, a1[i]) < euclid(q1, a2[o])) ++biased;
          }
          for (std::size_t o = 0; o < a1.size(); ++o) {
            if (o == i) continue;
            ++total;
            if (euclid(q2, a2[j]) < euclid(q2, a1[o])) ++biased;
          }
        }
      }
    }
  }
  return static_cast<double>(biased) / static_cast<double>(total);
}

inline std::optional<double> pearson(const std::vector<double>& x,
                                     const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double cxy = 0, cxx = 0, cyy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    cxy += (x[i] - mx) * (y[i] - my);
    cxx += (x[i] - mx) * (x[i] - mx);
    cyy += (y[i] - my) * (y[i] - my);
  }
  if (cxx == 0 || cyy == 0) return std::nullopt;
  return cxy / std::sqrt(cxx * cyy);
}

// Rank by counting: 1 + #smaller + (#equal - 1) / 2.
inline std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double less = 0, equal = 0;
    for (double w : v) {
      if (w < v[i]) ++less;
      if (w == v[i]) ++equal;
    }
    r[i] = 1 + less + (equal - 1) / 2;
  }
  return r;
}

inline std::optional<double> spearman(const std::vector<double>& x,
                                      const std::vector<double>& y) {
  return pearson(ranks(x), ranks(y));
}

// Smallest within-cluster sum of squares over all 2-cluster labelings.
inline double best_two_cluster_wcss(const std::vector<Vec>& pts) {
  const std::size_t n = pts.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double wcss = 0.0;
    for (int side = 0; side < 2; ++side) {
      Vec c(pts[0].size(), 0.0);
      std::size_t count = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (static_cast<int>((mask >> i) & 1) != side) continue;
        for (std::size_t d = 0; d < c.size(); ++d) c[d] += pts[i][d];
        ++count;
      }
      if (count == 0) continue;
      for (double& x : c) x /= count;
      for (std::size_t i = 0; i < n; ++i) {
        if (static_cast<int>((mask >> i) & 1) != side) continue;
        for (std::size_t d = 0; d < c.size(); ++d) {
          wcss += (pts[i][d] - c[d]) * (pts[i][d] - c[d]);
        }
      }
    }
    best = std::min(best, wcss);
  }
  return best;
}

}  // namespace araweat::oracle
