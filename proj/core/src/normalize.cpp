#include "araweat/normalize.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "araweat/error.hpp"

namespace araweat {
namespace {

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// Arabic harakat, Quranic annotation marks and tatweel.
bool is_arabic_diacritic(UChar32 c) {
  return (c >= 0x0610 && c <= 0x061A) || (c >= 0x064B && c <= 0x065F) ||
         c == 0x0640 || c == 0x0670 || (c >= 0x06D6 && c <= 0x06DC) ||
         (c >= 0x06DF && c <= 0x06E8) || (c >= 0x06EA && c <= 0x06ED);
}

UChar32 unify_alef(UChar32 c) {
  switch (c) {
    case 0x0622:  // alef with madda
    case 0x0623:  // alef with hamza above
    case 0x0625:  // alef with hamza below
    case 0x0671:  // alef wasla
      return 0x0627;
    default:
      return c;
  }
}

const icu::Normalizer2& nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* instance = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || instance == nullptr) {
    throw Error("ICU NFC normalizer unavailable");
  }
  return *instance;
}

icu::UnicodeString apply_nfc(const icu::UnicodeString& s) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = nfc().normalize(s, status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");
  return out;
}

}  // namespace

std::string normalize_term(std::string_view text,
                           const NormalizationPolicy& policy) {
  if (policy.is_identity()) return std::string(text);

  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  if (policy.unicode_nfc) s = apply_nfc(s);

  if (policy.strip_diacritics || policy.normalize_alef ||
      policy.normalize_teh_marbuta) {
    icu::UnicodeString mapped;
    UChar32 base = 0;
    for (int32_t i = 0; i < s.length();) {
      UChar32 c = s.char32At(i);
      i += U16_LENGTH(c);
      if (policy.strip_diacritics && is_arabic_diacritic(c)) continue;
      if (policy.normalize_alef) {
        // a combining madda or hamza on a bare alef would recompose under NFC
        if (base == 0x0627 && c >= 0x0653 && c <= 0x0655) continue;
        c = unify_alef(c);
      }
      if (policy.normalize_teh_marbuta && c == 0x0629) c = 0x0647;
      mapped.append(c);
      if (u_getCombiningClass(c) == 0) base = c;
    }
    s = mapped;
  }
  if (policy.lowercase) s.toLower(icu::Locale::getRoot());
  // Removing marks or lowercasing can leave a non-composed sequence.
  if (policy.unicode_nfc) s = apply_nfc(s);

  std::string out;
  s.toUTF8String(out);
  return out;
}

std::vector<std::string_view> split_whitespace(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_ascii_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_ascii_space(text[i])) ++i;
    if (i > start) parts.push_back(text.substr(start, i - start));
  }
  return parts;
}

bool has_whitespace(std::string_view text) {
  for (char c : text) {
    if (is_ascii_space(c)) return true;
  }
  return false;
}

}  // namespace araweat
