#include <benchmark/benchmark.h>

#include <random>

#include "affect/analysis.hpp"
#include "affect/emotion.hpp"
#include "affect/forecast.hpp"
#include "affect/lexicon.hpp"

using namespace affect;

namespace {

NumericSeries noise(std::mt19937_64& rng, std::size_t n, const char* name, double level) {
  std::normal_distribution<double> g(level, 1.0);
  NumericSeries s{name, Month(1999, 9), std::vector<double>(n)};
  for (double& v : s.values) v = g(rng);
  return s;
}

std::vector<NumericSeries> channels(std::mt19937_64& rng, std::size_t n) {
  std::vector<NumericSeries> out;
  for (const char* name : kChannelNames) out.push_back(noise(rng, n, name, 5.0));
  return out;
}

}  // namespace

static void BM_ScoreMonth(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(1, 9);
  std::vector<LexiconEntry> entries;
  for (int i = 0; i < 1000; ++i) entries.push_back({"w" + std::to_string(i), u(rng), u(rng), u(rng)});
  const Lexicon lexicon(entries);
  MonthlyBucket bucket;
  bucket.month = Month(2000, 1);
  for (int i = 0; i < state.range(0); ++i) bucket.token_counts["t" + std::to_string(i)] = 1;
  for (int i = 0; i < state.range(0); i += 2) bucket.token_counts["w" + std::to_string(i % 1000)] = 1 + i % 7;
  for (auto _ : state) benchmark::DoNotOptimize(score_month(bucket, lexicon));
}
BENCHMARK(BM_ScoreMonth)->Arg(100)->Arg(5000);

static void BM_RollingCorrelation(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto x = noise(rng, static_cast<std::size_t>(state.range(0)), "x", 0.0);
  const auto y = noise(rng, static_cast<std::size_t>(state.range(0)), "y", 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(rolling_correlation(x, y, 13, 0.05));
}
BENCHMARK(BM_RollingCorrelation)->Arg(66)->Arg(600);

static void BM_ModelSuite(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto ch = channels(rng, 66);
  const auto target = noise(rng, 66, "approval", 55.0);
  for (auto _ : state) benchmark::DoNotOptimize(model_suite(target, ch));
}
BENCHMARK(BM_ModelSuite);

static void BM_SurrogateTest(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const auto ch = channels(rng, 66);
  const auto target = noise(rng, 66, "approval", 55.0);
  const std::vector<NumericSeries> exo = {ch[1], ch[4]};
  const auto spec = suite_spec("both-arousal");
  for (auto _ : state) benchmark::DoNotOptimize(surrogate_test(spec, target, exo, 1000, 1));
}
BENCHMARK(BM_SurrogateTest)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
