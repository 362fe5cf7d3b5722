#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "araweat/embedding_space.hpp"
#include "araweat/error.hpp"
#include "araweat/vector_ops.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace araweat;
using araweat::testing::ScratchDir;

namespace {

const char* kMinimal = "2 3\na 1 0 0\nb 0 1 0\n";

std::string binary_entry(const std::string& token, std::initializer_list<float> v) {
  std::string out = token + " ";
  for (float x : v) {
    char buf[4];
    std::memcpy(buf, &x, 4);
    out.append(buf, 4);
  }
  return out;
}

}  // namespace

TEST_CASE("minimal text file with header") {
  ScratchDir dir;
  const auto space = load_text_format(dir.write("m.vec", kMinimal));
  CHECK(space.dim() == 3);
  CHECK(space.size() == 2);
  CHECK(space.meta().had_header);
  CHECK(space.meta().declared_count == 2);
  CHECK(space.name() == "m");
  CHECK(space.row_vector(*space.find("b")) == Vector{0, 1, 0});
}

TEST_CASE("duplicate rows keep the first vector") {
  ScratchDir dir;
  const auto space =
      load_text_format(dir.write("d.vec", std::string(kMinimal) + "a 9 9 9\n"));
  CHECK(space.size() == 2);
  CHECK(space.meta().duplicates == 1);
  CHECK(space.row_vector(*space.find("a")) == Vector{1, 0, 0});
}

TEST_CASE("malformed rows are skipped unless strict") {
  ScratchDir dir;
  const auto path = dir.write("s.vec", "2 3\na 1 0 0\nc 1 2\nb 0 1 0\n");
  const auto space = load_text_format(path);
  CHECK(space.size() == 2);
  CHECK(space.meta().skipped == 1);
  CHECK_FALSE(space.find("c"));

  LoadOptions strict;
  strict.strict = true;
  CHECK_THROWS_AS(load_text_format(path, strict), LoadError);
}

TEST_CASE("non-finite and unparsable values") {
  ScratchDir dir;
  const auto path =
      dir.write("n.vec", "a 1 0 0\nb nan 1 0\nc 1 x 0\nd 0 0 inf\ne 0 0 1\n");
  const auto space = load_text_format(path);
  CHECK(space.size() == 2);
  CHECK(space.meta().skipped == 3);
  CHECK_FALSE(space.meta().had_header);
  LoadOptions strict;
  strict.strict = true;
  CHECK_THROWS_AS(load_text_format(path, strict), LoadError);
}

TEST_CASE("text loader errors") {
  ScratchDir dir;
  CHECK_THROWS_AS(load_text_format(dir / "missing.vec"), LoadError);
  CHECK_THROWS_AS(load_text_format(dir.write("e.vec", "")), LoadError);
  CHECK_THROWS_AS(load_text_format(dir.write("h.vec", "3 0\n")), LoadError);
  CHECK_THROWS_AS(load_text_format(dir.write("o.vec", "2 3\nx\n")), LoadError);
}

TEST_CASE("row limit and CRLF input") {
  ScratchDir dir;
  LoadOptions options;
  options.limit = 1;
  const auto space = load_text_format(dir.write("l.vec", kMinimal), options);
  CHECK(space.size() == 1);
  CHECK(space.find("a"));

  const auto crlf = load_text_format(dir.write("c.vec", "a 1 2\r\nb 3 4\r\n"));
  CHECK(crlf.size() == 2);
  CHECK(crlf.row_vector(1) == Vector{3, 4});
}

TEST_CASE("binary fixture matches the text loader") {
  ScratchDir dir;
  const std::string bin = "2 3\n" + binary_entry("a", {1, 0, 0}) +
                          binary_entry("b", {0, 1, 0});
  const auto from_bin = load_binary_format(dir.write("m.bin", bin));
  const auto from_text = load_text_format(dir.write("m.vec", kMinimal));
  REQUIRE(from_bin.size() == from_text.size());
  for (std::size_t i = 0; i < from_bin.size(); ++i) {
    CHECK(from_bin.token(i) == from_text.token(i));
    CHECK(from_bin.row_vector(i) == from_text.row_vector(i));
  }
  CHECK(guess_format(dir / "m.bin") == EmbeddingFormat::kBinary);
  CHECK(guess_format(dir / "m.vec") == EmbeddingFormat::kText);
}

TEST_CASE("binary entries separated by newlines") {
  ScratchDir dir;
  const std::string bin = "2 2\n" + binary_entry("a", {1, 2}) + "\n" +
                          binary_entry("b", {3, 4}) + "\n";
  const auto space = load_binary_format(dir.write("nl.bin", bin));
  CHECK(space.size() == 2);
  CHECK(space.row_vector(1) == Vector{3, 4});
}

TEST_CASE("binary loader errors") {
  ScratchDir dir;
  std::string bin = "2 3\n" + binary_entry("a", {1, 0, 0}) +
                    binary_entry("b", {0, 1, 0});
  const auto cut = dir.write("cut.bin", bin.substr(0, bin.size() - 5));
  CHECK_THROWS_WITH_AS(load_binary_format(cut), doctest::Contains("truncated payload"),
                       LoadError);
  const auto extra = dir.write("extra.bin", bin + "junk");
  CHECK_THROWS_WITH_AS(load_binary_format(extra),
                       doctest::Contains("header/payload mismatch"), LoadError);
  CHECK_THROWS_AS(load_binary_format(dir.write("nohdr.bin", "a")), LoadError);
}

TEST_CASE("randomized round trips are byte-identical") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 5; ++trial) {
    ScratchDir dir;
    const auto space = araweat::testing::random_space(gen, 100, 10);

    write_text_format(space, dir / "a.vec");
    const auto text = load_text_format(dir / "a.vec");
    REQUIRE(text.size() == 100);
    for (std::size_t i = 0; i < 100; ++i) {
      CHECK(text.token(i) == space.token(i));
      CHECK(text.row_vector(i) == space.row_vector(i));
    }
    write_text_format(text, dir / "b.vec");
    CHECK(araweat::testing::read_all(dir / "a.vec") ==
          araweat::testing::read_all(dir / "b.vec"));

    write_binary_format(space, dir / "a.bin");
    const auto bin = load_binary_format(dir / "a.bin");
    for (std::size_t i = 0; i < 100; ++i) {
      CHECK(bin.row_vector(i) == space.row_vector(i));
    }
    write_binary_format(bin, dir / "b.bin");
    CHECK(araweat::testing::read_all(dir / "a.bin") ==
          araweat::testing::read_all(dir / "b.bin"));
  }
}

TEST_CASE("constructor invariants") {
  CHECK_THROWS_AS(EmbeddingSpace("x", 0, {}, {}), LoadError);
  CHECK_THROWS_AS(EmbeddingSpace("x", 2, {"a"}, {1.0f}), LoadError);
  CHECK_THROWS_AS(EmbeddingSpace("x", 1, {"a", "a"}, {1.0f, 2.0f}), LoadError);
}

TEST_CASE("lookup resolution order") {
  const EmbeddingSpace space("s", 3, {"abc", "xyz", "new_york", "مهندس", "Paris"},
                             {1, 2, 3, 3, 0, 1, 7, 7, 7, 0, 0, 1, 5, 5, 5});
  const NormalizationPolicy policy;

  auto r = lookup(space, "abc", policy);
  CHECK(r.status == LookupStatus::kExact);
  CHECK(*r.vector == Vector{1, 2, 3});

  r = lookup(space, "abc qqq", policy);
  CHECK(r.status == LookupStatus::kPhraseAveraged);
  CHECK(*r.vector == Vector{1, 2, 3});

  r = lookup(space, "abc xyz", policy);
  CHECK(r.status == LookupStatus::kPhraseAveraged);
  CHECK(*r.vector == Vector{2, 1, 2});

  r = lookup(space, "new york", policy);
  CHECK(*r.vector == Vector{7, 7, 7});
  CHECK(r.status != LookupStatus::kPhraseAveraged);

  r = lookup(space, "مُهَنْدِس", policy);
  CHECK(r.status == LookupStatus::kNormalized);
  CHECK(*r.vector == Vector{0, 0, 1});

  r = lookup(space, "nothing here", policy);
  CHECK(r.status == LookupStatus::kOov);
  CHECK_FALSE(r.vector);
}

TEST_CASE("lookup under a policy other than the index policy") {
  const EmbeddingSpace space("s", 1, {"Paris", "london"}, {1, 2});
  NormalizationPolicy lower;
  lower.lowercase = true;
  auto r = lookup(space, "PARIS", lower);
  CHECK(r.status == LookupStatus::kNormalized);
  CHECK(*r.vector == Vector{1});
  CHECK(lookup(space, "PARIS", NormalizationPolicy{}).status == LookupStatus::kOov);
  CHECK(lookup(space, "Paris", NormalizationPolicy::identity()).status ==
        LookupStatus::kExact);
}

TEST_CASE("lookup is pure") {
  const EmbeddingSpace space("s", 2, {"a", "b"}, {1, 0, 0, 1});
  const auto first = lookup(space, "a b", NormalizationPolicy{});
  const auto second = lookup(space, "a b", NormalizationPolicy{});
  CHECK(first.status == second.status);
  CHECK(*first.vector == *second.vector);
}

TEST_CASE("unit normalization") {
  const EmbeddingSpace space("s", 2, {"a", "z"}, {3, 4, 0, 0});
  const auto unit = unit_normalize(space);
  CHECK(unit.row_vector(0)[0] == doctest::Approx(0.6));
  CHECK(unit.row_vector(0)[1] == doctest::Approx(0.8));
  CHECK(unit.row_vector(1) == Vector{0, 0});
  CHECK(unit.meta().zero_rows == 1);
  CHECK(unit.meta().unit_normalized);

  const auto stats = norm_stats(space);
  CHECK(stats.max == doctest::Approx(5.0));
  CHECK(stats.min == 0.0);
  CHECK(stats.zero_rows == 1);
}

TEST_CASE("unit rows preserve cosine") {
  std::mt19937_64 gen(3);
  const auto space = araweat::testing::random_space(gen, 100, 10);
  const auto unit = unit_normalize(space);
  for (std::size_t i = 0; i < 100; ++i) {
    CHECK(norm(unit.row_vector(i)) == doctest::Approx(1.0).epsilon(1e-6));
  }
  for (std::size_t i = 0; i + 1 < 100; i += 3) {
    const double direct = oracle::cos_sim(space.row_vector(i), space.row_vector(i + 1));
    CHECK(std::abs(dot(unit.row_vector(i), unit.row_vector(i + 1)) - direct) < 1e-6);
  }
}
