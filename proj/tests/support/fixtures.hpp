#pragma once

// Random fixtures and scratch files shared by the test binaries.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

#include "araweat/embedding_space.hpp"
#include "araweat/vector_ops.hpp"

namespace araweat::testing {

class ScratchDir {
 public:
  ScratchDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("araweat_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

  std::filesystem::path write(const std::string& name,
                              const std::string& contents) const {
    const auto p = path_ / name;
    std::ofstream out(p, std::ios::binary);
    out << contents;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::string read_all(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline Vector random_vector(std::mt19937_64& gen, std::size_t dim,
                            double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Vector v(dim);
  for (double& x : v) x = normal(gen);
  return v;
}

inline std::vector<Vector> random_set(std::mt19937_64& gen, std::size_t n,
                                      std::size_t dim) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_vector(gen, dim));
  return out;
}

// Vectors near `center` with isotropic noise.
inline std::vector<Vector> blob(std::mt19937_64& gen, std::size_t n,
                                const Vector& center, double spread) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < n; ++i) {
    Vector v = random_vector(gen, center.size(), spread);
    for (std::size_t d = 0; d < v.size(); ++d) v[d] += center[d];
    out.push_back(std::move(v));
  }
  return out;
}

inline EmbeddingSpace random_space(std::mt19937_64& gen, std::size_t n,
                                   std::size_t dim,
                                   const std::string& prefix = "w") {
  std::normal_distribution<float> normal(0.0f, 1.0f);
  std::vector<std::string> tokens;
  std::vector<float> data;
  for (std::size_t i = 0; i < n; ++i) {
    tokens.push_back(prefix + std::to_string(i));
    for (std::size_t d = 0; d < dim; ++d) data.push_back(normal(gen));
  }
  return EmbeddingSpace("random", dim, std::move(tokens), std::move(data));
}

// Random orthogonal matrix (Gram-Schmidt on Gaussian columns).
inline std::vector<Vector> random_rotation(std::mt19937_64& gen,
                                           std::size_t dim) {
  std::vector<Vector> q;
  while (q.size() < dim) {
    Vector v = random_vector(gen, dim);
    for (const Vector& u : q) {
      double p = 0.0;
      for (std::size_t i = 0; i < dim; ++i) p += v[i] * u[i];
      for (std::size_t i = 0; i < dim; ++i) v[i] -= p * u[i];
    }
    double n = 0.0;
    for (double x : v) n += x * x;
    n = std::sqrt(n);
    if (n < 1e-8) continue;
    for (double& x : v) x /= n;
    q.push_back(std::move(v));
  }
  return q;
}

inline std::vector<Vector> rotate(const std::vector<Vector>& rows,
                                  const std::vector<Vector>& q) {
  std::vector<Vector> out;
  for (const Vector& v : rows) {
    Vector r(v.size(), 0.0);
    for (std::size_t i = 0; i < q.size(); ++i) {
      for (std::size_t j = 0; j < v.size(); ++j) r[i] += q[i][j] * v[j];
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<Vector> scale(const std::vector<Vector>& rows, double c) {
  std::vector<Vector> out = rows;
  for (Vector& v : out) {
    for (double& x : v) x *= c;
  }
  return out;
}

}  // namespace araweat::testing
