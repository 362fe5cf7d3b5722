#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace araweat {

// Token normalization applied when matching bias-test terms and sentences
// against an embedding vocabulary.
struct NormalizationPolicy {
  bool strip_diacritics = true;
  bool normalize_alef = false;
  bool normalize_teh_marbuta = false;
  bool unicode_nfc = true;
  bool lowercase = false;

  // No transformation at all.
  static NormalizationPolicy identity() {
    return {false, false, false, false, false};
  }

  bool is_identity() const {
    return !strip_diacritics && !normalize_alef && !normalize_teh_marbuta &&
           !unicode_nfc && !lowercase;
  }

  friend bool operator==(const NormalizationPolicy&,
                         const NormalizationPolicy&) = default;
};

// Applies `policy` to a UTF-8 string. Deterministic and idempotent.
// Invalid UTF-8 sequences are replaced with U+FFFD when any Unicode-aware
// step is enabled.
std::string normalize_term(std::string_view text,
                           const NormalizationPolicy& policy);

// Splits on ASCII whitespace, dropping empty pieces.
std::vector<std::string_view> split_whitespace(std::string_view text);

bool has_whitespace(std::string_view text);

}  // namespace araweat
