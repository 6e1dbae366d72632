#include <benchmark/benchmark.h>

#include "pdv/automata/generate.hpp"
#include "pdv/automata/operations.hpp"
#include "pdv/sampling/word_distribution.hpp"

using namespace pdv;

static Dfa sized_dfa(std::size_t n, std::uint64_t seed) {
    // random_dfa draws its size; keep drawing until it is large enough.
    Alphabet sigma = Alphabet::of_size(5);
    for (;; ++seed) {
        Dfa d = random_dfa(n, sigma, seed);
        if (d.num_states() * 4 >= n * 3) return d;
    }
}

static void BM_RandomDfa(benchmark::State& state) {
    Alphabet sigma = Alphabet::of_size(5);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(random_dfa(static_cast<std::size_t>(state.range(0)), sigma, seed++));
}
BENCHMARK(BM_RandomDfa)->Arg(30)->Arg(300);

static void BM_Minimize(benchmark::State& state) {
    Dfa d = sized_dfa(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(minimize(d));
    state.SetComplexityN(static_cast<std::int64_t>(d.num_states()));
}
BENCHMARK(BM_Minimize)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

static void BM_CheckInclusion(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Dfa a = sized_dfa(n, 2);
    Dfa b = sized_dfa(n, 3);
    for (auto _ : state) benchmark::DoNotOptimize(check_inclusion(a, b));
}
BENCHMARK(BM_CheckInclusion)->RangeMultiplier(4)->Range(16, 256);

static void BM_SampleWords(benchmark::State& state) {
    WordSampler sampler(WordDistribution::uniform(5), 7);
    for (auto _ : state) benchmark::DoNotOptimize(sampler());
}
BENCHMARK(BM_SampleWords);

static void BM_Accepts(benchmark::State& state) {
    Dfa d = sized_dfa(30, 4);
    WordSampler sampler(WordDistribution::uniform(5), 8);
    std::vector<Word> words;
    for (int i = 0; i < 1024; ++i) words.push_back(sampler());
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(d.accepts(words[i++ & 1023]));
}
BENCHMARK(BM_Accepts);
