#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "araweat/normalize.hpp"

using araweat::NormalizationPolicy;
using araweat::normalize_term;

TEST_CASE("diacritics are stripped by default") {
  const NormalizationPolicy p;
  CHECK(normalize_term("مُهَنْدِس", p) == "مهندس");
  CHECK(normalize_term("كَتَبَ", p) == "كتب");
  CHECK(normalize_term("رجل", p) == "رجل");
}

TEST_CASE("tatweel goes with the diacritics") {
  CHECK(normalize_term("رجـــل", NormalizationPolicy{}) == "رجل");
}

TEST_CASE("alef and teh marbuta are opt-in") {
  NormalizationPolicy p;
  CHECK(normalize_term("أحمد", p) == "أحمد");
  CHECK(normalize_term("ابنة", p) == "ابنة");
  p.normalize_alef = true;
  CHECK(normalize_term("أحمد", p) == "احمد");
  CHECK(normalize_term("إسلام", p) == "اسلام");
  CHECK(normalize_term("آمن", p) == "امن");
  CHECK(normalize_term("\xD8\xA5\xD9\x94", p) == "ا");
  CHECK(normalize_term("\xD8\xA7\xD9\x94", p) == "ا");
  p.normalize_teh_marbuta = true;
  CHECK(normalize_term("ابنة", p) == "ابنه");
}

TEST_CASE("NFC composes decomposed sequences") {
  NormalizationPolicy p;
  CHECK(normalize_term("e\xCC\x81", p) == "\xC3\xA9");
  p.unicode_nfc = false;
  CHECK(normalize_term("e\xCC\x81", p) == "e\xCC\x81");
}

TEST_CASE("lowercase") {
  NormalizationPolicy p;
  CHECK(normalize_term("Science", p) == "Science");
  p.lowercase = true;
  CHECK(normalize_term("Science", p) == "science");
  CHECK(normalize_term("ÉCOLE", p) == "école");
}

TEST_CASE("identity policy returns the input bytes") {
  const auto id = NormalizationPolicy::identity();
  CHECK(id.is_identity());
  CHECK(normalize_term("مُهَنْدِس", id) == "مُهَنْدِس");
  CHECK(normalize_term("AbC", id) == "AbC");
}

TEST_CASE("empty input") {
  CHECK(normalize_term("", NormalizationPolicy{}).empty());
}

TEST_CASE("idempotent on random strings under every policy") {
  const std::vector<std::string> pool = {
      "ا", "أ", "إ", "آ", "ٱ", "ة", "ه", "ي", "ى", "ك", "ت", "ب", "ر", "ج", "ل",
      "\xD9\x8E", "\xD9\x8F", "\xD9\x90", "\xD9\x91", "\xD9\x92", "\xD9\x8B",
      "\xD9\x94", "\xD9\x80", "A", "b", "Z", "e", "\xCC\x81", "\xC3\x89", " ",
      "1", "-"};
  std::mt19937 gen(7);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> len(0, 12);
  for (int mask = 0; mask < 32; ++mask) {
    NormalizationPolicy p;
    p.strip_diacritics = mask & 1;
    p.normalize_alef = mask & 2;
    p.normalize_teh_marbuta = mask & 4;
    p.unicode_nfc = mask & 8;
    p.lowercase = mask & 16;
    for (int trial = 0; trial < 400; ++trial) {
      std::string s;
      for (int i = len(gen); i > 0; --i) s += pool[pick(gen)];
      const std::string once = normalize_term(s, p);
      CAPTURE(s);
      CAPTURE(mask);
      CHECK(normalize_term(once, p) == once);
    }
  }
}

TEST_CASE("whitespace splitting") {
  const auto parts = araweat::split_whitespace("  a\tbb \n c ");
  REQUIRE(parts.size() == 3);
  CHECK(parts[0] == "a");
  CHECK(parts[1] == "bb");
  CHECK(parts[2] == "c");
  CHECK(araweat::split_whitespace("   ").empty());
  CHECK(araweat::has_whitespace("new york"));
  CHECK_FALSE(araweat::has_whitespace("new_york"));
}
