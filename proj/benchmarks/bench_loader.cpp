#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>
#include <unistd.h>

#include "araweat/embedding_space.hpp"
#include "araweat/normalize.hpp"

namespace {

struct TempSpace {
  std::filesystem::path text, binary;

  explicit TempSpace(std::size_t vocab) {
    const auto dir = std::filesystem::temp_directory_path();
    const std::string stem = "araweat_bench_" + std::to_string(::getpid()) + "_" +
                             std::to_string(vocab);
    text = dir / (stem + ".vec");
    binary = dir / (stem + ".bin");
    std::mt19937_64 gen(vocab);
    std::normal_distribution<float> normal;
    std::vector<std::string> tokens;
    std::vector<float> data(vocab * 100);
    for (std::size_t i = 0; i < vocab; ++i) tokens.push_back("tok" + std::to_string(i));
    for (float& x : data) x = normal(gen);
    const araweat::EmbeddingSpace space("bench", 100, tokens, std::move(data));
    araweat::write_text_format(space, text);
    araweat::write_binary_format(space, binary);
  }
  ~TempSpace() {
    std::error_code ec;
    std::filesystem::remove(text, ec);
    std::filesystem::remove(binary, ec);
  }
};

void BM_LoadText(benchmark::State& state) {
  const TempSpace files(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(araweat::load_text_format(files.text));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LoadText)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_LoadBinary(benchmark::State& state) {
  const TempSpace files(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(araweat::load_binary_format(files.binary));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LoadBinary)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Normalize(benchmark::State& state) {
  const araweat::NormalizationPolicy policy{true, true, true, true, false};
  for (auto _ : state) {
    benchmark::DoNotOptimize(araweat::normalize_term("الرِّيَاضِيَّات", policy));
  }
}
BENCHMARK(BM_Normalize);

}  // namespace
