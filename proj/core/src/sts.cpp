#include "araweat/sts.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <string>

#include "araweat/error.hpp"
#include "araweat/stats.hpp"

namespace araweat {

Vector sentence_embed(std::string_view sentence, const EmbeddingSpace& space,
                      const NormalizationPolicy& policy) {
  const std::string normalized = normalize_term(sentence, policy);
  Vector sum(space.dim(), 0.0);
  std::size_t found = 0;
  for (std::string_view token : split_whitespace(normalized)) {
    std::optional<std::size_t> hit = space.find(token);
    if (!hit) hit = space.find_normalized(token, policy);
    if (!hit) continue;
    const auto row = space.row(*hit);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += row[i];
    ++found;
  }
  if (found > 0) {
    for (double& x : sum) x /= static_cast<double>(found);
  }
  return sum;
}

StsResult sts_pearson(std::span<const StsPair> pairs,
                      const EmbeddingSpace& space,
                      const NormalizationPolicy& policy) {
  if (pairs.size() < 3) throw MetricError("STS needs at least 3 pairs");
  StsResult result;
  result.n_pairs = pairs.size();
  std::vector<double> predicted, gold;
  predicted.reserve(pairs.size());
  gold.reserve(pairs.size());
  for (const StsPair& pair : pairs) {
    const Vector a = sentence_embed(pair.sent_a, space, policy);
    const Vector b = sentence_embed(pair.sent_b, space, policy);
    if (norm(a) == 0.0 || norm(b) == 0.0) ++result.n_empty;
    predicted.push_back(cosine(a, b));
    gold.push_back(pair.gold);
  }
  result.pearson = pearson(predicted, gold);
  return result;
}

std::vector<StsPair> parse_sts_text(std::string_view text) {
  std::vector<StsPair> pairs;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    const std::size_t tab1 = line.find('\t');
    const std::size_t tab2 =
        tab1 == std::string_view::npos ? tab1 : line.find('\t', tab1 + 1);
    if (tab2 == std::string_view::npos) {
      throw ConfigError("STS line " + std::to_string(line_no) +
                        ": expected gold<TAB>sentence_a<TAB>sentence_b");
    }
    const std::string_view gold_field = line.substr(0, tab1);
    double gold = 0.0;
    auto [ptr, ec] = std::from_chars(
        gold_field.data(), gold_field.data() + gold_field.size(), gold);
    if (ec != std::errc() || ptr != gold_field.data() + gold_field.size() ||
        !(gold >= 0.0 && gold <= 5.0)) {
      throw ConfigError("STS line " + std::to_string(line_no) +
                        ": gold score must be a number in [0, 5]");
    }
    pairs.push_back({std::string(line.substr(tab1 + 1, tab2 - tab1 - 1)),
                     std::string(line.substr(tab2 + 1)), gold});
  }
  return pairs;
}

std::vector<StsPair> parse_sts_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open STS file " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  return parse_sts_text(text);
}

}  // namespace araweat
