#include <benchmark/benchmark.h>

#include <random>

#include "araweat/kmeans.hpp"
#include "araweat/metrics.hpp"

namespace {

std::vector<araweat::Vector> gaussian(std::size_t n, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  std::vector<araweat::Vector> out(n, araweat::Vector(dim));
  for (auto& v : out) {
    for (double& x : v) x = normal(gen);
  }
  return out;
}

void BM_WeatExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto t1 = gaussian(n, 300, 1), t2 = gaussian(n, 300, 2);
  const auto a1 = gaussian(8, 300, 3), a2 = gaussian(8, 300, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(araweat::weat_p_value_exact(t1, t2, a1, a2));
  }
}
BENCHMARK(BM_WeatExact)->Arg(4)->Arg(6)->Arg(8);

void BM_WeatSampled(benchmark::State& state) {
  const auto t1 = gaussian(25, 300, 1), t2 = gaussian(25, 300, 2);
  const auto a1 = gaussian(25, 300, 3), a2 = gaussian(25, 300, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        araweat::weat_p_value_sampled(t1, t2, a1, a2, state.range(0), 7));
  }
}
BENCHMARK(BM_WeatSampled)->Arg(10000)->Arg(100000);

void BM_Bat(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto t1 = gaussian(n, 300, 1), t2 = gaussian(n, 300, 2);
  const auto a1 = gaussian(n, 300, 3), a2 = gaussian(n, 300, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(araweat::bat_fraction(t1, t2, a1, a2));
  }
}
BENCHMARK(BM_Bat)->Arg(8)->Arg(25);

void BM_Ect(benchmark::State& state) {
  const auto t1 = gaussian(8, 300, 1), t2 = gaussian(8, 300, 2);
  const auto attrs = gaussian(16, 300, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(araweat::ect_score(t1, t2, attrs));
  }
}
BENCHMARK(BM_Ect);

void BM_KMeans(benchmark::State& state) {
  const auto points = gaussian(static_cast<std::size_t>(state.range(0)), 300, 5);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(araweat::kmeans_pp(points, 2, seed++));
  }
}
BENCHMARK(BM_KMeans)->Arg(16)->Arg(50);

void BM_KmAccuracy(benchmark::State& state) {
  const auto t1 = gaussian(25, 300, 1), t2 = gaussian(25, 300, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(araweat::km_accuracy(t1, t2));
  }
}
BENCHMARK(BM_KmAccuracy);

}  // namespace

BENCHMARK_MAIN();
