#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "tokcheck/encoders.hpp"
#include "tokcheck/sim.hpp"
#include "tokcheck/tokenizer.hpp"
#include "tokcheck/transducer.hpp"

namespace {

using namespace tokcheck;

Vocab the_vocab() {
  Alphabet sigma({"t", "h", "e"}, AlphabetRole::characters);
  std::vector<Vocab::Entry> entries;
  for (std::string sp : {"t", "h", "e", "th", "he"}) entries.push_back({sp, parse_str(sigma, sp)});
  return Vocab(sigma, std::move(entries));
}

Str repeated(const Alphabet& a, std::size_t n) {
  static const char* cycle[] = {"t", "h", "e", "h", "e", "t"};
  std::string text;
  for (std::size_t i = 0; i < n; ++i) text += cycle[i % 6];
  return parse_str(a, text);
}

void BM_MaximalMunchEncode(benchmark::State& state) {
  Vocab v = the_vocab();
  Str text = repeated(v.characters(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(maximal_munch_encode(v, text));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MaximalMunchEncode)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_TransducerRun(benchmark::State& state) {
  Vocab v = the_vocab();
  SubseqTransducer t = build_maximal_munch_transducer(v);
  Str text = repeated(v.characters(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run(t, text));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TransducerRun)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_Preimages(benchmark::State& state) {
  Vocab v = the_vocab();
  Tokenizer t = maximal_munch_tokenizer(v, 2);
  PreimageEnumerator pre(t);
  Str text = repeated(v.characters(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pre(text));
}
BENCHMARK(BM_Preimages)->DenseRange(4, 16, 4);

void BM_Compose(benchmark::State& state) {
  Vocab v = the_vocab();
  Tokenizer t = maximal_munch_tokenizer(v, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compose(t.decoder(), t.encoder()));
}
BENCHMARK(BM_Compose)->DenseRange(2, 5);

void BM_IsExact(benchmark::State& state) {
  Tokenizer t = maximal_munch_tokenizer(the_vocab(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(is_exact(t));
}
BENCHMARK(BM_IsExact)->DenseRange(2, 6, 2);

void BM_Estimation(benchmark::State& state) {
  Vocab v = the_vocab();
  Tokenizer t = maximal_munch_tokenizer(v, 3);
  Dist p(t.text_space(), std::vector<std::pair<Str, Rational>>{{parse_str(v.characters(), "the"), Rational(1, 2)},
                                                               {parse_str(v.characters(), "he"), Rational(1, 2)}});
  std::vector<std::size_t> schedule{static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(run_estimation(t, p, schedule, 1));
}
BENCHMARK(BM_Estimation)->RangeMultiplier(10)->Range(1000, 100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
