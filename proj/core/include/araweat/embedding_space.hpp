#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "araweat/normalize.hpp"
#include "araweat/vector_ops.hpp"

namespace araweat {

enum class EmbeddingFormat { kText, kBinary };

std::string_view format_name(EmbeddingFormat format);

// Where a space came from and what the loader had to discard.
struct SourceMeta {
  std::string path;
  std::string format;
  bool had_header = false;
  std::size_t declared_count = 0;
  std::size_t duplicates = 0;  // repeated tokens, first occurrence kept
  std::size_t skipped = 0;     // rows rejected for arity or non-finite values
  std::size_t zero_rows = 0;   // set by unit_normalize
  bool unit_normalized = false;
};

struct LoadOptions {
  std::string name;                   // defaults to the file stem
  std::optional<std::size_t> limit;  // maximum number of data rows read
  bool strict = false;                // malformed rows are errors, not skips
  NormalizationPolicy policy;         // used for the normalized-token index
};

// Immutable vocabulary -> vector map. Rows are stored as 32-bit floats, the
// precision of the on-disk formats.
class EmbeddingSpace {
 public:
  // Throws LoadError if tokens repeat, the matrix size is not
  // tokens.size() * dim, dim is zero, or a component is not finite.
  EmbeddingSpace(std::string name, std::size_t dim,
                 std::vector<std::string> tokens, std::vector<float> data,
                 SourceMeta meta = {},
                 NormalizationPolicy policy = NormalizationPolicy{});

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return tokens_.size(); }
  const SourceMeta& meta() const { return meta_; }
  const NormalizationPolicy& policy() const { return policy_; }

  const std::string& token(std::size_t index) const { return tokens_[index]; }
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::span<const float> row(std::size_t index) const {
    return {data_.data() + index * dim_, dim_};
  }
  std::span<const float> data() const { return data_; }

  Vector row_vector(std::size_t index) const;

  std::optional<std::size_t> find(std::string_view token) const;

  // Looks up an already-normalized string among the vocabulary's normalized
  // forms. Uses the prebuilt index when `policy` matches the space's policy,
  // otherwise scans the vocabulary.
  std::optional<std::size_t> find_normalized(
      std::string_view normalized, const NormalizationPolicy& policy) const;

 private:
  std::string name_;
  std::size_t dim_;
  std::vector<std::string> tokens_;
  std::vector<float> data_;
  SourceMeta meta_;
  NormalizationPolicy policy_;
  std::unordered_map<std::string, std::size_t> index_;
  std::unordered_map<std::string, std::size_t> normalized_index_;
};

// word2vec / fastText `.vec` text format with an optional `count dim` header.
EmbeddingSpace load_text_format(const std::filesystem::path& path,
                                const LoadOptions& options = {});

// word2vec binary format: `count dim\n`, then per entry a space-terminated
// token followed by dim little-endian float32 values.
EmbeddingSpace load_binary_format(const std::filesystem::path& path,
                                  const LoadOptions& options = {});

EmbeddingSpace load_embeddings(const std::filesystem::path& path,
                               EmbeddingFormat format,
                               const LoadOptions& options = {});

// Guesses the format from the extension (.bin -> binary, otherwise text).
EmbeddingFormat guess_format(const std::filesystem::path& path);

void write_text_format(const EmbeddingSpace& space,
                       const std::filesystem::path& path, bool header = true);
void write_binary_format(const EmbeddingSpace& space,
                         const std::filesystem::path& path);

enum class LookupStatus { kExact, kNormalized, kPhraseAveraged, kOov };

std::string_view status_name(LookupStatus status);

struct LookupResult {
  std::string term;
  LookupStatus status = LookupStatus::kOov;
  std::optional<Vector> vector;  // absent iff status is kOov
};

// Resolution order: exact token, normalized token, multi-word phrase
// (underscore-joined token first, then the mean of resolvable
// constituents), otherwise OOV.
LookupResult lookup(const EmbeddingSpace& space, std::string_view term,
                    const NormalizationPolicy& policy);

// Scales every nonzero row to unit length; zero rows stay zero and are
// counted in meta().zero_rows.
EmbeddingSpace unit_normalize(const EmbeddingSpace& space);

struct NormStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  std::size_t zero_rows = 0;
};

NormStats norm_stats(const EmbeddingSpace& space);

}  // namespace araweat
