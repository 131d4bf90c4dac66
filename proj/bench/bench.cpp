// Parallel vs serial search and ranking on a wide random lattice.
#include <benchmark/benchmark.h>

#include <random>

#include "mpgen/decoder.hpp"
#include "mpgen/lm.hpp"
#include "support.hpp"

namespace {

struct Setup {
  std::mt19937_64 rng{31337};
  mpgen::NGramModel model = mpgen::NGramModel::train(support::random_corpus(rng, 4000), 3);
  mpgen::Lattice lattice = support::random_dag(rng, 120);
  std::vector<std::vector<std::string>> sentences = support::random_corpus(rng, 20000);
};

const Setup& setup() {
  static const Setup s;
  return s;
}

void BM_nbest(benchmark::State& state) {
  mpgen::BeamConfig cfg{10, static_cast<std::size_t>(state.range(0)), 0};
  for (auto _ : state) benchmark::DoNotOptimize(mpgen::nbest(setup().lattice, setup().model, cfg));
}

void BM_nbest_serial(benchmark::State& state) {
  mpgen::BeamConfig cfg{10, static_cast<std::size_t>(state.range(0)), 0};
  for (auto _ : state) benchmark::DoNotOptimize(mpgen::nbest_serial(setup().lattice, setup().model, cfg));
}

void BM_rank(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mpgen::rank_sentences(setup().model, setup().sentences));
}

void BM_rank_serial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mpgen::rank_sentences_serial(setup().model, setup().sentences));
}

}  // namespace

BENCHMARK(BM_nbest)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_nbest_serial)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rank)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rank_serial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
