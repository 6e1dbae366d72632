#include <benchmark/benchmark.h>

#include "pdv/automata/generate.hpp"
#include "pdv/automata/operations.hpp"
#include "pdv/lstar/observation_table.hpp"
#include "pdv/verify/verify.hpp"

using namespace pdv;

static void BM_LearnExact(benchmark::State& state) {
    Alphabet sigma = Alphabet::of_size(5);
    Dfa target = minimize(random_dfa(static_cast<std::size_t>(state.range(0)), sigma, 12));
    std::uint64_t queries = 0;
    for (auto _ : state) {
        DfaOracle oracle(target);
        benchmark::DoNotOptimize(learn_exact(oracle, target));
        queries = oracle.query_count();
    }
    state.counters["states"] = static_cast<double>(target.num_states());
    state.counters["mqs"] = static_cast<double>(queries);
}
BENCHMARK(BM_LearnExact)->Arg(10)->Arg(30)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_PdvSatisfied(benchmark::State& state) {
    Alphabet sigma = Alphabet::of_size(5);
    Dfa d = random_dfa(30, sigma, 5);
    Dfa spec = derive_specs(d, 1, 5).at(0);
    VerifyConfig config;
    for (auto _ : state) {
        DfaOracle oracle(d);
        benchmark::DoNotOptimize(pdv::pdv(oracle, spec, WordDistribution::uniform(5), config));
    }
}
BENCHMARK(BM_PdvSatisfied)->Unit(benchmark::kMillisecond);
