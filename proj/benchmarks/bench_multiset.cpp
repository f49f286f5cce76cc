#include <cstdint>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "permlang/measure.hpp"
#include "permlang/multiset.hpp"

using namespace permlang;

namespace {

LevelMultiset random_multiset(std::mt19937_64& rng, std::size_t size,
                              std::uint64_t max_level) {
  LevelMultiset m;
  std::uniform_int_distribution<std::uint64_t> lvl(0, max_level);
  for (std::size_t i = 0; i < size; ++i) m.insert(Level{lvl(rng)});
  return m;
}

// One descent step of the order: drop one element, refill with smaller ones.
LevelMultiset descend(std::mt19937_64& rng, const LevelMultiset& from) {
  Level top{0};
  for (const auto& [lvl, cnt] : from.entries()) top = lvl;
  LevelMultiset to = *ms_remove(from, top);
  if (top.value > 0) {
    std::uniform_int_distribution<std::uint64_t> lvl(0, top.value - 1);
    std::uniform_int_distribution<int> extra(0, 3);
    int n = extra(rng);
    for (int i = 0; i < n; ++i) to.insert(Level{lvl(rng)});
  }
  return to;
}

void bm_mult_less_related(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::size_t size = static_cast<std::size_t>(state.range(0));
  std::vector<std::pair<LevelMultiset, LevelMultiset>> pairs;
  for (int i = 0; i < 64; ++i) {
    LevelMultiset big = random_multiset(rng, size, 9);
    if (big.empty()) big.insert(Level{1});
    pairs.emplace_back(descend(rng, big), big);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [a, b] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(mult_less(a, b));
  }
}
BENCHMARK(bm_mult_less_related)->Arg(8)->Arg(64)->Arg(512);

void bm_mult_less_unrelated(benchmark::State& state) {
  std::mt19937_64 rng(11);
  std::size_t size = static_cast<std::size_t>(state.range(0));
  std::vector<std::pair<LevelMultiset, LevelMultiset>> pairs;
  for (int i = 0; i < 64; ++i)
    pairs.emplace_back(random_multiset(rng, size, 9),
                       random_multiset(rng, size, 9));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [a, b] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(mult_less(a, b));
  }
}
BENCHMARK(bm_mult_less_unrelated)->Arg(8)->Arg(64)->Arg(512);

void bm_ms_union(benchmark::State& state) {
  std::mt19937_64 rng(13);
  std::size_t size = static_cast<std::size_t>(state.range(0));
  LevelMultiset a = random_multiset(rng, size, 9);
  LevelMultiset b = random_multiset(rng, size, 9);
  for (auto _ : state) benchmark::DoNotOptimize(ms_union(a, b));
}
BENCHMARK(bm_ms_union)->Arg(8)->Arg(512);

void bm_triple_less(benchmark::State& state) {
  std::mt19937_64 rng(17);
  MeasureTriple lo{random_multiset(rng, 32, 9), 3, 40};
  MeasureTriple hi{ms_insert_n(lo.perms, Level{5}, 1), 3, 40};
  for (auto _ : state) benchmark::DoNotOptimize(triple_less(lo, hi));
}
BENCHMARK(bm_triple_less);

}  // namespace

BENCHMARK_MAIN();
