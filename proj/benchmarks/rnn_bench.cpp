#include <benchmark/benchmark.h>

#include "pdv/oracle/rnn_model.hpp"
#include "pdv/sampling/word_distribution.hpp"

using namespace pdv;

static RnnModel fixture(const char* name) { return load_rnn_model(std::string(PDV_BENCH_DATA_DIR) + "/" + name); }

static void BM_RnnClassify(benchmark::State& state, const char* name) {
    RnnModel model = fixture(name);
    WordSampler sampler(WordDistribution::uniform(model.alphabet.size()), 3);
    std::vector<Word> words;
    for (int i = 0; i < 256; ++i) words.push_back(sampler());
    std::size_t i = 0, letters = 0;
    for (auto _ : state) {
        const Word& w = words[i++ & 255];
        letters += w.size();
        benchmark::DoNotOptimize(rnn_classify(model, w));
    }
    state.counters["letters/s"] = benchmark::Counter(static_cast<double>(letters), benchmark::Counter::kIsRate);
}
BENCHMARK_CAPTURE(BM_RnnClassify, elman, "elman_embedding.json");
BENCHMARK_CAPTURE(BM_RnnClassify, lstm, "lstm_two_layer.json");

static void BM_RnnOracleSharedPrefixes(benchmark::State& state) {
    RnnModel model = fixture("lstm_two_layer.json");
    WordSampler sampler(WordDistribution::uniform(model.alphabet.size()), 4);
    Word stem = sampler();
    for (auto _ : state) {
        RnnOracle oracle(model);
        Word w = stem;
        for (Letter a = 0; a < model.alphabet.size(); ++a) {
            for (Letter b = 0; b < model.alphabet.size(); ++b) {
                w.push_back(a);
                w.push_back(b);
                benchmark::DoNotOptimize(oracle.membership(w));
                w.resize(stem.size());
            }
        }
    }
}
BENCHMARK(BM_RnnOracleSharedPrefixes);
