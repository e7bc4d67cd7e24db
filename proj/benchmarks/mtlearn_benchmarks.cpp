#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "mtlearn/analysis.hpp"
#include "mtlearn/bleu.hpp"
#include "mtlearn/sampling.hpp"
#include "mtlearn/trainer.hpp"

namespace {

std::vector<std::string> sentences(std::size_t n, std::uint64_t seed, std::size_t vocab) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string s;
    for (auto k = 5 + mtlearn::uniform_below(rng, 10); k > 0; --k) {
      if (!s.empty()) s += ' ';
      s += "w" + std::to_string(mtlearn::uniform_below(rng, vocab));
    }
    out.push_back(std::move(s));
  }
  return out;
}

void BM_CorpusBleu(benchmark::State& state) {
  auto hyp = sentences(state.range(0), 1, 200);
  auto ref = sentences(state.range(0), 2, 200);
  for (auto _ : state) benchmark::DoNotOptimize(mtlearn::corpus_bleu(hyp, ref));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CorpusBleu)->Arg(100)->Arg(1000);

void BM_Model1(benchmark::State& state) {
  auto src = sentences(state.range(0), 3, 500);
  auto tgt = sentences(state.range(0), 4, 500);
  std::vector<mtlearn::SentencePair> pairs;
  for (std::size_t i = 0; i < src.size(); ++i) pairs.push_back({src[i], tgt[i]});
  for (auto _ : state) benchmark::DoNotOptimize(mtlearn::train_model1(pairs, 10));
}
BENCHMARK(BM_Model1)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Subsample(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(mtlearn::subsample(state.range(0), mtlearn::Fraction(1, 5), seed++));
}
BENCHMARK(BM_Subsample)->Arg(1000)->Arg(100000);

void BM_Pearson(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  std::vector<double> x(state.range(0)), y(state.range(0));
  for (auto& v : x) v = g(rng);
  for (auto& v : y) v = g(rng);
  for (auto _ : state) benchmark::DoNotOptimize(mtlearn::pearson(x, y));
}
BENCHMARK(BM_Pearson)->Arg(20)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
