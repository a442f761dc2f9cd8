#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "nade/metrics.hpp"
#include "nade/negex.hpp"
#include "nade/pipeline.hpp"
#include "nade/span.hpp"
#include "nade/tokenize.hpp"

namespace {

std::string make_tweet(std::size_t sentences) {
  static const char* kParts[] = {
      "Started humira last week and no headache so far. ",
      "Denies nausea, but the dizziness is unbearable! ",
      "Feeling fine today without any rash or itching. ",
      "Not sure if the #metoprolol causes fatigue\n",
      "Ruled out insomnia, though sleep is still bad. ",
  };
  std::string text;
  for (std::size_t i = 0; i < sentences; ++i) text += kParts[i % std::size(kParts)];
  return text;
}

// Sorted, pairwise disjoint spans separated by random gaps.
std::vector<nade::Span> random_spans(std::mt19937_64& rng, std::size_t count) {
  std::uniform_int_distribution<std::size_t> gap(0, 10);
  std::uniform_int_distribution<std::size_t> len(1, 12);
  std::vector<nade::Span> spans;
  spans.reserve(count);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const auto s = pos + gap(rng);
    pos = s + len(rng);
    spans.push_back({s, pos});
  }
  return spans;
}

void BM_Tokenize(benchmark::State& state) {
  const auto text = make_tweet(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nade::tokenize(text));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Tokenize)->Arg(1)->Arg(8)->Arg(64);

void BM_Detect(benchmark::State& state) {
  const auto text = make_tweet(static_cast<std::size_t>(state.range(0)));
  const auto& lexicon = nade::default_lexicon();
  for (auto _ : state) benchmark::DoNotOptimize(nade::detect(text, lexicon));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Detect)->Arg(1)->Arg(8)->Arg(64);

void BM_MatchRelaxed(benchmark::State& state) {
  std::mt19937_64 rng(42);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto gold = random_spans(rng, n);
  const auto pred = random_spans(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(nade::match_relaxed(gold, pred));
}
BENCHMARK(BM_MatchRelaxed)->Arg(4)->Arg(32)->Arg(256);

void BM_FilterEntities(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto entities = random_spans(rng, n);
  const auto scopes = random_spans(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(nade::filter_entities(entities, scopes));
}
BENCHMARK(BM_FilterEntities)->Arg(4)->Arg(32)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
