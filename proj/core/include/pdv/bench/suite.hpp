#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "pdv/bench/benchmark.hpp"
#include "pdv/faultyflow/faulty_flow.hpp"
#include "pdv/verify/run_record.hpp"
#include "pdv/verify/verify.hpp"

namespace pdv {

struct SuiteOptions {
    std::vector<Method> methods{Method::smc, Method::aamc, Method::pdv};
    /// `config.seed` is the master seed; every (instance, spec) pair gets
    /// split_seed(master, pair index), shared by all methods on that pair.
    /// `config.budgets.wall_clock` is the per-run timeout.
    VerifyConfig config;
    double stop_prob = WordDistribution::default_stop_prob;
    /// Letter probabilities of the sampler; empty means uniform.
    std::vector<double> letter_probs;
    std::size_t max_word_len = WordDistribution::default_max_len;
    /// Run faulty-flow detection on every counterexample PDV reports.
    std::optional<FlowOptions> faulty_flow;
    std::size_t jobs = 1;
    /// Called on the writer thread after each record is appended.
    std::function<void(const RunRecord&)> on_record;
};

struct SuiteSummary {
    std::size_t runs = 0;
    std::size_t errors = 0;
};

/// Runs every method on every (instance, spec) pair and appends one record
/// per run to `results`, in job order regardless of `jobs`. A run that
/// throws is recorded with outcome "error" and the suite moves on.
SuiteSummary run_suite(const Manifest& manifest, const SuiteOptions& options, const std::filesystem::path& results);

/// A single run as performed by run_suite.
RunRecord run_one(const Manifest& manifest, const InstanceEntry& entry, std::size_t spec_index, Method method,
                  const SuiteOptions& options, std::uint64_t seed);

} // namespace pdv
