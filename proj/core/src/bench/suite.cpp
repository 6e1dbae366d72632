#include "pdv/bench/suite.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "pdv/automata/dfa_io.hpp"
#include "pdv/errors.hpp"

namespace pdv {

namespace {

struct Job {
    const InstanceEntry* entry;
    std::size_t spec_index;
    Method method;
    std::uint64_t seed;
};

} // namespace

RunRecord run_one(const Manifest& manifest, const InstanceEntry& entry, std::size_t spec_index, Method method,
                  const SuiteOptions& options, std::uint64_t seed) {
    const std::string& spec_id = entry.specs.at(spec_index);
    VerifyConfig config = options.config;
    config.seed = seed;
    try {
        Dfa spec = load_dfa(manifest.resolve(spec_id));
        auto oracle = make_oracle(manifest, entry);
        auto dist = options.letter_probs.empty()
                        ? WordDistribution::uniform(oracle->alphabet().size(), options.stop_prob, options.max_word_len)
                        : WordDistribution(options.letter_probs, options.stop_prob, options.max_word_len);
        Verdict verdict = run_method(method, *oracle, spec, dist, config);
        RunRecord record = make_run_record(entry.id, spec_id, method, config, dist, verdict, oracle->alphabet());
        if (options.faulty_flow && method == Method::pdv && verdict.found_counterexample() && verdict.hypothesis) {
            auto report = detect_faulty_flow(*oracle, spec, *verdict.hypothesis, *verdict.counterexample,
                                             *options.faulty_flow);
            record.faulty_flow = to_json(report, oracle->alphabet());
        }
        return record;
    } catch (const std::exception& e) {
        return make_error_record(entry.id, spec_id, method, config, e.what());
    }
}

SuiteSummary run_suite(const Manifest& manifest, const SuiteOptions& options, const std::filesystem::path& results) {
    std::vector<Job> jobs;
    std::uint64_t pair = 0;
    for (const auto& entry : manifest.instances) {
        for (std::size_t s = 0; s < entry.specs.size(); ++s, ++pair) {
            for (Method m : options.methods) {
                jobs.push_back({&entry, s, m, split_seed(options.config.seed, pair)});
            }
        }
    }

    SuiteSummary summary;
    std::vector<std::optional<RunRecord>> done(jobs.size());
    std::size_t next_to_write = 0;
    std::mutex mutex;
    std::atomic<std::size_t> next_job{0};
    std::exception_ptr failure;

    // Completed records are written strictly in job order.
    auto publish = [&](std::size_t index, RunRecord record) {
        std::lock_guard lock(mutex);
        done[index] = std::move(record);
        while (next_to_write < done.size() && done[next_to_write]) {
            const RunRecord& r = *done[next_to_write];
            append_record(results, r);
            ++summary.runs;
            if (r.outcome == "error") ++summary.errors;
            if (options.on_record) options.on_record(r);
            done[next_to_write].reset();
            ++next_to_write;
        }
    };
    auto worker = [&] {
        for (std::size_t i = next_job++; i < jobs.size(); i = next_job++) {
            const Job& job = jobs[i];
            try {
                publish(i, run_one(manifest, *job.entry, job.spec_index, job.method, options, job.seed));
            } catch (...) {
                std::lock_guard lock(mutex);
                if (!failure) failure = std::current_exception();
                next_job = jobs.size();
            }
        }
    };

    std::size_t threads = std::max<std::size_t>(1, std::min(options.jobs, jobs.size()));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return summary;
}

} // namespace pdv
