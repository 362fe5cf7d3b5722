#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "araweat/embedding_space.hpp"
#include "araweat/normalize.hpp"
#include "araweat/vector_ops.hpp"

namespace araweat {

struct StsPair {
  std::string sent_a;
  std::string sent_b;
  double gold = 0.0;  // 0..5
};

struct StsResult {
  std::optional<double> pearson;  // empty if predictions are constant
  std::size_t n_pairs = 0;
  std::size_t n_empty = 0;  // pairs where a sentence had no known token
};

// Mean of the in-vocabulary token vectors; the zero vector if none.
Vector sentence_embed(std::string_view sentence, const EmbeddingSpace& space,
                      const NormalizationPolicy& policy);

StsResult sts_pearson(std::span<const StsPair> pairs,
                      const EmbeddingSpace& space,
                      const NormalizationPolicy& policy);

// `gold<TAB>sentence_a<TAB>sentence_b` per line; `#` lines and blank lines
// are ignored.
std::vector<StsPair> parse_sts_file(const std::filesystem::path& path);
std::vector<StsPair> parse_sts_text(std::string_view text);

}  // namespace araweat
