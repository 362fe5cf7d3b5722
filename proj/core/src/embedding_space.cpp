#include "araweat/embedding_space.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include "araweat/error.hpp"

namespace araweat {
namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  if (in.bad()) throw LoadError("read error on " + path.string());
  return bytes;
}

bool parse_count(std::string_view field, std::size_t& out) {
  if (field.empty()) return false;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_float(std::string_view field, float& out) {
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

// Accumulates rows while applying the keep-first duplicate rule.
class SpaceBuilder {
 public:
  explicit SpaceBuilder(SourceMeta meta) : meta_(std::move(meta)) {}

  void set_dim(std::size_t dim) { dim_ = dim; }
  std::size_t dim() const { return dim_; }
  SourceMeta& meta() { return meta_; }

  void add(std::string_view token, std::span<const float> values) {
    auto [it, inserted] = seen_.emplace(token, tokens_.size());
    if (!inserted) {
      ++meta_.duplicates;
      return;
    }
    tokens_.emplace_back(token);
    data_.insert(data_.end(), values.begin(), values.end());
  }

  EmbeddingSpace build(const LoadOptions& options,
                       const std::filesystem::path& path) && {
    if (tokens_.empty()) {
      throw LoadError("no parsable rows in " + path.string());
    }
    std::string name =
        options.name.empty() ? path.stem().string() : options.name;
    return EmbeddingSpace(std::move(name), dim_, std::move(tokens_),
                          std::move(data_), std::move(meta_), options.policy);
  }

 private:
  SourceMeta meta_;
  std::size_t dim_ = 0;
  std::vector<std::string> tokens_;
  std::vector<float> data_;
  std::unordered_map<std::string, std::size_t> seen_;
};

float decode_le_float(const unsigned char* p) {
  const std::uint32_t bits = static_cast<std::uint32_t>(p[0]) |
                             (static_cast<std::uint32_t>(p[1]) << 8) |
                             (static_cast<std::uint32_t>(p[2]) << 16) |
                             (static_cast<std::uint32_t>(p[3]) << 24);
  return std::bit_cast<float>(bits);
}

void encode_le_float(float value, std::string& out) {
  const auto bits = std::bit_cast<std::uint32_t>(value);
  out.push_back(static_cast<char>(bits & 0xff));
  out.push_back(static_cast<char>((bits >> 8) & 0xff));
  out.push_back(static_cast<char>((bits >> 16) & 0xff));
  out.push_back(static_cast<char>((bits >> 24) & 0xff));
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed for " + path.string());
}

bool is_space_byte(char c) {
  return c == ' ' || c == '\n' || c == '\r' || c == '\t';
}

}  // namespace

std::string_view format_name(EmbeddingFormat format) {
  return format == EmbeddingFormat::kBinary ? "binary" : "text";
}

EmbeddingSpace::EmbeddingSpace(std::string name, std::size_t dim,
                               std::vector<std::string> tokens,
                               std::vector<float> data, SourceMeta meta,
                               NormalizationPolicy policy)
    : name_(std::move(name)),
      dim_(dim),
      tokens_(std::move(tokens)),
      data_(std::move(data)),
      meta_(std::move(meta)),
      policy_(policy) {
  if (dim_ == 0) throw LoadError("embedding dimension must be positive");
  if (data_.size() != tokens_.size() * dim_) {
    throw LoadError("matrix size does not match vocabulary size * dim");
  }
  for (float x : data_) {
    if (!std::isfinite(x)) throw LoadError("non-finite vector component");
  }
  index_.reserve(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i], i).second) {
      throw LoadError("duplicate token '" + tokens_[i] + "'");
    }
  }
  if (!policy_.is_identity()) {
    normalized_index_.reserve(tokens_.size());
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      normalized_index_.emplace(normalize_term(tokens_[i], policy_), i);
    }
  }
}

Vector EmbeddingSpace::row_vector(std::size_t index) const {
  const auto r = row(index);
  return Vector(r.begin(), r.end());
}

std::optional<std::size_t> EmbeddingSpace::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> EmbeddingSpace::find_normalized(
    std::string_view normalized, const NormalizationPolicy& policy) const {
  if (policy.is_identity()) return find(normalized);
  if (policy == policy_) {
    auto it = normalized_index_.find(std::string(normalized));
    if (it == normalized_index_.end()) return std::nullopt;
    return it->second;
  }
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (normalize_term(tokens_[i], policy) == normalized) return i;
  }
  return std::nullopt;
}

EmbeddingSpace load_text_format(const std::filesystem::path& path,
                                const LoadOptions& options) {
  const std::string bytes = read_file(path);
  SourceMeta meta;
  meta.path = path.string();
  meta.format = "text";
  SpaceBuilder builder(std::move(meta));

  std::string_view rest(bytes);
  std::size_t line_no = 0;
  std::size_t data_rows = 0;
  bool first_content_line = true;
  std::vector<float> values;

  while (!rest.empty()) {
    if (options.limit && data_rows >= *options.limit) break;
    const std::size_t nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view{}
                                        : rest.substr(nl + 1);
    ++line_no;
    const auto fields = split_whitespace(line);
    if (fields.empty()) continue;

    if (first_content_line) {
      first_content_line = false;
      std::size_t count = 0, dim = 0;
      if (fields.size() == 2 && parse_count(fields[0], count) &&
          parse_count(fields[1], dim)) {
        if (dim == 0) throw LoadError("header declares zero dimensions");
        builder.meta().had_header = true;
        builder.meta().declared_count = count;
        builder.set_dim(dim);
        continue;
      }
    }

    ++data_rows;
    const std::size_t arity = fields.size() - 1;
    auto reject = [&](const char* why) {
      if (options.strict) {
        throw LoadError(std::string(why) + " at " + path.string() + ":" +
                        std::to_string(line_no));
      }
      ++builder.meta().skipped;
    };
    if (arity == 0) {
      reject("inconsistent dimensionality");
      continue;
    }
    if (builder.dim() == 0) builder.set_dim(arity);
    if (arity != builder.dim()) {
      reject("inconsistent dimensionality");
      continue;
    }
    values.resize(arity);
    bool ok = true;
    for (std::size_t i = 0; i < arity && ok; ++i) {
      ok = parse_float(fields[i + 1], values[i]);
    }
    if (!ok) {
      reject("non-finite or unparsable value");
      continue;
    }
    builder.add(fields[0], values);
  }
  return std::move(builder).build(options, path);
}

EmbeddingSpace load_binary_format(const std::filesystem::path& path,
                                  const LoadOptions& options) {
  const std::string bytes = read_file(path);
  const std::size_t header_end = bytes.find('\n');
  if (header_end == std::string::npos) {
    throw LoadError("missing header in " + path.string());
  }
  const auto header = split_whitespace(std::string_view(bytes).substr(0, header_end));
  std::size_t count = 0, dim = 0;
  if (header.size() != 2 || !parse_count(header[0], count) ||
      !parse_count(header[1], dim) || dim == 0) {
    throw LoadError("malformed header in " + path.string());
  }

  SourceMeta meta;
  meta.path = path.string();
  meta.format = "binary";
  meta.had_header = true;
  meta.declared_count = count;
  SpaceBuilder builder(std::move(meta));
  builder.set_dim(dim);

  const std::size_t to_read =
      options.limit ? std::min(count, *options.limit) : count;
  const std::size_t payload = dim * sizeof(float);
  std::size_t pos = header_end + 1;
  std::vector<float> values(dim);
  const auto* raw = reinterpret_cast<const unsigned char*>(bytes.data());

  for (std::size_t entry = 0; entry < to_read; ++entry) {
    while (pos < bytes.size() && is_space_byte(bytes[pos])) ++pos;
    const std::size_t token_start = pos;
    while (pos < bytes.size() && bytes[pos] != ' ') ++pos;
    if (pos >= bytes.size()) throw LoadError("truncated payload");
    std::string_view token(bytes.data() + token_start, pos - token_start);
    ++pos;  // separator
    if (bytes.size() - pos < payload) throw LoadError("truncated payload");
    bool finite = true;
    for (std::size_t i = 0; i < dim; ++i) {
      values[i] = decode_le_float(raw + pos + i * sizeof(float));
      finite = finite && std::isfinite(values[i]);
    }
    pos += payload;
    if (!finite) {
      if (options.strict) {
        throw LoadError("non-finite value for entry " + std::to_string(entry));
      }
      ++builder.meta().skipped;
      continue;
    }
    builder.add(token, values);
  }

  if (to_read == count) {
    while (pos < bytes.size() && is_space_byte(bytes[pos])) ++pos;
    if (pos != bytes.size()) throw LoadError("header/payload mismatch");
  }
  return std::move(builder).build(options, path);
}

EmbeddingFormat guess_format(const std::filesystem::path& path) {
  return path.extension() == ".bin" ? EmbeddingFormat::kBinary
                                    : EmbeddingFormat::kText;
}

EmbeddingSpace load_embeddings(const std::filesystem::path& path,
                               EmbeddingFormat format,
                               const LoadOptions& options) {
  return format == EmbeddingFormat::kBinary ? load_binary_format(path, options)
                                            : load_text_format(path, options);
}

void write_text_format(const EmbeddingSpace& space,
                       const std::filesystem::path& path, bool header) {
  std::string out;
  if (header) {
    out += std::to_string(space.size()) + " " + std::to_string(space.dim()) +
           "\n";
  }
  char buf[64];
  for (std::size_t i = 0; i < space.size(); ++i) {
    out += space.token(i);
    for (float x : space.row(i)) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
      out.push_back(' ');
      out.append(buf, ptr);
    }
    out.push_back('\n');
  }
  write_file(path, out);
}

void write_binary_format(const EmbeddingSpace& space,
                         const std::filesystem::path& path) {
  std::string out = std::to_string(space.size()) + " " +
                    std::to_string(space.dim()) + "\n";
  out.reserve(out.size() + space.size() * (space.dim() * 4 + 16));
  for (std::size_t i = 0; i < space.size(); ++i) {
    out += space.token(i);
    out.push_back(' ');
    for (float x : space.row(i)) encode_le_float(x, out);
    out.push_back('\n');
  }
  write_file(path, out);
}

std::string_view status_name(LookupStatus status) {
  switch (status) {
    case LookupStatus::kExact:
      return "exact";
    case LookupStatus::kNormalized:
      return "normalized";
    case LookupStatus::kPhraseAveraged:
      return "phrase-averaged";
    case LookupStatus::kOov:
      return "oov";
  }
  return "oov";
}

namespace {

std::optional<std::size_t> find_single(const EmbeddingSpace& space,
                                       std::string_view term,
                                       const NormalizationPolicy& policy,
                                       LookupStatus& status) {
  if (auto hit = space.find(term)) {
    status = LookupStatus::kExact;
    return hit;
  }
  const std::string normalized = normalize_term(term, policy);
  if (auto hit = space.find(normalized)) {
    status = LookupStatus::kNormalized;
    return hit;
  }
  if (auto hit = space.find_normalized(normalized, policy)) {
    status = LookupStatus::kNormalized;
    return hit;
  }
  return std::nullopt;
}

}  // namespace

LookupResult lookup(const EmbeddingSpace& space, std::string_view term,
                    const NormalizationPolicy& policy) {
  LookupResult result;
  result.term = std::string(term);

  LookupStatus status = LookupStatus::kOov;
  if (auto hit = find_single(space, term, policy, status)) {
    result.status = status;
    result.vector = space.row_vector(*hit);
    return result;
  }

  if (!has_whitespace(term)) return result;
  const auto parts = split_whitespace(term);
  if (parts.empty()) return result;

  // n-gram vocabularies join phrases with underscores at training time
  std::string joined;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) joined.push_back('_');
    joined.append(parts[i]);
  }
  if (auto hit = find_single(space, joined, policy, status)) {
    result.status = status;
    result.vector = space.row_vector(*hit);
    return result;
  }

  Vector sum(space.dim(), 0.0);
  std::size_t found = 0;
  for (std::string_view part : parts) {
    if (auto hit = find_single(space, part, policy, status)) {
      const auto r = space.row(*hit);
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += r[i];
      ++found;
    }
  }
  if (found == 0) return result;
  for (double& x : sum) x /= static_cast<double>(found);
  result.status = LookupStatus::kPhraseAveraged;
  result.vector = std::move(sum);
  return result;
}

EmbeddingSpace unit_normalize(const EmbeddingSpace& space) {
  std::vector<float> data(space.data().begin(), space.data().end());
  SourceMeta meta = space.meta();
  meta.zero_rows = 0;
  meta.unit_normalized = true;
  const std::size_t dim = space.dim();
  for (std::size_t i = 0; i < space.size(); ++i) {
    float* row = data.data() + i * dim;
    double sq = 0.0;
    for (std::size_t j = 0; j < dim; ++j) sq += double(row[j]) * row[j];
    if (sq == 0.0) {
      ++meta.zero_rows;
      continue;
    }
    const double inv = 1.0 / std::sqrt(sq);
    for (std::size_t j = 0; j < dim; ++j) {
      row[j] = static_cast<float>(row[j] * inv);
    }
  }
  return EmbeddingSpace(space.name(), dim, space.tokens(), std::move(data),
                        std::move(meta), space.policy());
}

NormStats norm_stats(const EmbeddingSpace& space) {
  NormStats stats;
  if (space.size() == 0) return stats;
  stats.min = std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (std::size_t i = 0; i < space.size(); ++i) {
    double sq = 0.0;
    for (float x : space.row(i)) sq += double(x) * x;
    const double n = std::sqrt(sq);
    if (n == 0.0) ++stats.zero_rows;
    stats.min = std::min(stats.min, n);
    stats.max = std::max(stats.max, n);
    total += n;
  }
  stats.mean = total / static_cast<double>(space.size());
  return stats;
}

}  // namespace araweat
