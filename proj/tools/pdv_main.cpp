// pdv: command-line front end for benchmark generation, verification runs,
// faulty-flow analysis and result reporting.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pdv/automata/dfa_io.hpp"
#include "pdv/bench/benchmark.hpp"
#include "pdv/bench/report.hpp"
#include "pdv/bench/suite.hpp"
#include "pdv/bench/temporal.hpp"
#include "pdv/errors.hpp"
#include "pdv/faultyflow/faulty_flow.hpp"
#include "pdv/oracle/rnn_model.hpp"
#include "pdv/verify/run_record.hpp"
#include "pdv/verify/verify.hpp"

namespace fs = std::filesystem;

namespace {

enum exit_code : int { ok = 0, failure = 1, counterexample = 2, exhausted = 3 };

struct OracleArgs {
    std::string kind = "dfa";
    std::string file;
    std::string fault;
};

void add_oracle_options(CLI::App* cmd, OracleArgs& args) {
    cmd->add_option("--oracle", args.kind, "Oracle kind")
        ->check(CLI::IsMember({"dfa", "xor", "rnn"}))
        ->capture_default_str();
    cmd->add_option("--oracle-file", args.file, "DFA file (dfa, xor base) or rnn v1 model file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--fault", args.fault, "Fault DFA for --oracle xor")->check(CLI::ExistingFile);
}

std::unique_ptr<pdv::LanguageOracle> build_oracle(const OracleArgs& args) {
    switch (pdv::parse_oracle_kind(args.kind)) {
        case pdv::OracleKind::dfa:
            return std::make_unique<pdv::DfaOracle>(pdv::load_dfa(args.file));
        case pdv::OracleKind::xor_fault:
            if (args.fault.empty()) throw pdv::input_error("--oracle xor needs --fault");
            return std::make_unique<pdv::FaultInjectedOracle>(pdv::load_dfa(args.file), pdv::load_dfa(args.fault));
        case pdv::OracleKind::rnn:
            return std::make_unique<pdv::RnnOracle>(pdv::load_rnn_model(args.file));
    }
    throw pdv::contract_error("unhandled oracle kind");
}

struct VerifyArgs {
    double epsilon = 5e-4;
    double gamma = 5e-4;
    std::string smc_bound = "paper";
    bool fixed_samples = false;
    double stop_prob = pdv::WordDistribution::default_stop_prob;
    std::vector<double> letter_probs;
    std::size_t max_word_len = pdv::WordDistribution::default_max_len;
    std::uint64_t max_queries = 10'000'000;
    std::uint64_t max_rounds = 200;
    std::size_t max_states = 5000;
    double timeout = 600.0;

    pdv::VerifyConfig config(std::uint64_t seed) const {
        pdv::VerifyConfig c;
        c.epsilon = epsilon;
        c.gamma = gamma;
        c.seed = seed;
        c.smc_bound = smc_bound == "hoeffding" ? pdv::SmcBound::hoeffding : pdv::SmcBound::paper;
        c.fixed_sample_count = fixed_samples;
        c.budgets.max_queries = max_queries;
        c.budgets.max_rounds = max_rounds;
        c.budgets.max_states = max_states;
        c.budgets.wall_clock = std::chrono::duration<double>(timeout);
        return c;
    }

    pdv::WordDistribution distribution(std::size_t letters) const {
        if (letter_probs.empty()) return pdv::WordDistribution::uniform(letters, stop_prob, max_word_len);
        if (letter_probs.size() != letters) {
            throw pdv::input_error("--letter-probs needs one probability per letter (" + std::to_string(letters) + ")");
        }
        return pdv::WordDistribution(letter_probs, stop_prob, max_word_len);
    }
};

void add_verify_options(CLI::App* cmd, VerifyArgs& args) {
    cmd->add_option("--epsilon", args.epsilon, "Error bound")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    cmd->add_option("--gamma", args.gamma, "Confidence parameter")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    cmd->add_option("--smc-bound", args.smc_bound, "Sample-count formula for SMC")
        ->check(CLI::IsMember({"paper", "hoeffding"}))
        ->capture_default_str();
    cmd->add_flag("--fixed-samples", args.fixed_samples, "PDV: use the SMC sample count in every round");
    cmd->add_option("--stop-prob", args.stop_prob, "Per-letter stop probability of the sampler")
        ->capture_default_str();
    cmd->add_option("--letter-probs", args.letter_probs, "Letter probabilities in alphabet order (default uniform)")
        ->delimiter(',');
    cmd->add_option("--max-word-len", args.max_word_len, "Sampled words are truncated at this length")
        ->capture_default_str();
    cmd->add_option("--max-queries", args.max_queries, "Membership query budget")->capture_default_str();
    cmd->add_option("--max-rounds", args.max_rounds, "Equivalence round budget")->capture_default_str();
    cmd->add_option("--max-states", args.max_states, "Hypothesis size cap")->capture_default_str();
    cmd->add_option("--timeout", args.timeout, "Wall-clock budget per run in seconds")->capture_default_str();
}

pdv::FlowOptions flow_options(std::size_t pump_max, std::size_t threshold, std::size_t max_loop_len,
                              bool exhaustive) {
    pdv::FlowOptions o;
    o.pump_max = pump_max;
    o.threshold = threshold;
    o.max_loop_len = max_loop_len;
    o.exhaustive = exhaustive;
    return o;
}

void print_verdict(const pdv::Verdict& v, const pdv::Alphabet& alphabet) {
    std::cout << "outcome: " << pdv::to_string(v.outcome) << '\n';
    if (v.counterexample) {
        std::cout << "counterexample: " << alphabet.format_word(*v.counterexample) << " (length "
                  << v.counterexample->size() << ", confirmed)\n";
    }
    if (!v.reason.empty()) std::cout << "reason: " << v.reason << '\n';
    const auto& s = v.stats;
    std::cout << "wall time (s): " << s.wall_seconds << '\n'
              << "membership queries: " << s.membership_queries << '\n'
              << "sampled words: " << s.sampled_words << '\n'
              << "rounds: " << s.eq_rounds << '\n';
    if (v.hypothesis) std::cout << "final dfa size: " << v.hypothesis->num_states() << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification of black-box sequence classifiers against regular specifications"};
    app.set_config("--config", "", "TOML-style file with option values; [section] per subcommand");
    app.require_subcommand(1);

    // gen-bench
    pdv::BenchOptions bench;
    std::string bench_out;
    bool literal_specs = false;
    bool loop_fault = false;
    pdv::LoopFaultOptions fault_lengths;
    auto* gen = app.add_subcommand("gen-bench", "Generate random DFA instances, specifications and datasets");
    gen->add_option("--out", bench_out, "Output directory")->required();
    gen->add_option("--seed", bench.seed, "Master seed")->required();
    gen->add_option("--count", bench.count, "Number of instances")->capture_default_str();
    gen->add_option("--n-max", bench.n_max, "Maximum states of the random DFA")->capture_default_str();
    gen->add_option("--alphabet-size", bench.alphabet_size, "Alphabet size")->capture_default_str();
    gen->add_option("--specs", bench.specs_per_dfa, "Specifications per DFA")->capture_default_str();
    gen->add_option("--train-size", bench.train_size, "Training examples per instance")->capture_default_str();
    gen->add_option("--test-size", bench.test_size, "Test examples per instance")->capture_default_str();
    gen->add_option("--stop-prob", bench.stop_prob, "Per-letter stop probability")->capture_default_str();
    gen->add_flag("--literal-specs", literal_specs, "Use F_i = Q \\ F instead of random subsets");
    gen->add_flag("--loop-fault", loop_fault, "Emit xor-fault oracles with loop-shaped faults");
    gen->add_option("--fault-loop-len", fault_lengths.loop_max, "Maximum loop length of generated faults")
        ->capture_default_str();

    // gen-contact
    std::string network_path, contact_out;
    std::uint64_t contact_seed = 0;
    pdv::ContactOptions contact;
    auto* gen_contact = app.add_subcommand("gen-contact", "Build contact-sequence datasets from a temporal network");
    gen_contact->add_option("--network", network_path, "Edge list of 't u v' lines")
        ->required()
        ->check(CLI::ExistingFile);
    gen_contact->add_option("--out", contact_out, "Output directory")->required();
    gen_contact->add_option("--seed", contact_seed, "Seed")->required();
    gen_contact->add_option("--min-len", contact.min_len, "Minimum walk length")->capture_default_str();
    gen_contact->add_option("--max-len", contact.max_len, "Maximum walk length")->capture_default_str();

    // verify
    OracleArgs verify_oracle;
    VerifyArgs verify_args;
    std::string method = "pdv", spec_path, record_path, hypothesis_out;
    std::uint64_t verify_seed = 0;
    bool verify_flow = false;
    auto* verify = app.add_subcommand("verify", "Check a black-box oracle against a specification DFA");
    verify->add_option("--method", method, "Algorithm")
        ->check(CLI::IsMember({"smc", "aamc", "pdv"}))
        ->capture_default_str();
    add_oracle_options(verify, verify_oracle);
    verify->add_option("--spec", spec_path, "Specification DFA")->required()->check(CLI::ExistingFile);
    verify->add_option("--seed", verify_seed, "Sampling seed")->capture_default_str();
    add_verify_options(verify, verify_args);
    verify->add_option("--record", record_path, "Append the run record to this NDJSON file");
    verify->add_option("--hypothesis-out", hypothesis_out, "Write the final hypothesis (.dot or dfa format)");
    verify->add_flag("--faulty-flow", verify_flow, "PDV: search a faulty flow around the counterexample");

    // faulty-flow
    OracleArgs flow_oracle;
    std::string flow_spec, flow_hyp, flow_word;
    std::size_t pump_max = 100, threshold = 20, max_loop_len = 12;
    bool exhaustive = false;
    auto* flow = app.add_subcommand("faulty-flow", "Pump loops around a counterexample");
    add_oracle_options(flow, flow_oracle);
    flow->add_option("--spec", flow_spec, "Specification DFA")->required()->check(CLI::ExistingFile);
    flow->add_option("--hypothesis", flow_hyp, "Hypothesis DFA")->required()->check(CLI::ExistingFile);
    flow->add_option("--word", flow_word, "Counterexample, space separated")->required();
    flow->add_option("--pump-max", pump_max, "Largest pump count")->capture_default_str();
    flow->add_option("--threshold", threshold, "Hits needed, exclusive")->capture_default_str();
    flow->add_option("--max-loop-len", max_loop_len, "Longest loop considered")->capture_default_str();
    flow->add_flag("--exhaustive", exhaustive, "List every flow instead of stopping at the first");

    // report
    std::string results_path, csv_path;
    auto* report = app.add_subcommand("report", "Summarize a results file");
    report->add_option("--results", results_path, "NDJSON results file")->required()->check(CLI::ExistingFile);
    report->add_option("--csv", csv_path, "Also write the table as CSV");

    // run-suite
    std::string manifest_path, suite_out;
    std::vector<std::string> methods{"smc", "aamc", "pdv"};
    std::uint64_t suite_seed = 0;
    VerifyArgs suite_args;
    std::size_t jobs = 1;
    bool suite_flow = false;
    auto* suite = app.add_subcommand("run-suite", "Run algorithms over every instance of a manifest");
    suite->add_option("--manifest", manifest_path, "manifest.json")->required()->check(CLI::ExistingFile);
    suite->add_option("--out", suite_out, "Results file (NDJSON, appended)")->required();
    suite->add_option("--seed", suite_seed, "Master seed")->required();
    suite->add_option("--methods", methods, "Algorithms to run")
        ->check(CLI::IsMember({"smc", "aamc", "pdv"}))
        ->delimiter(',');
    add_verify_options(suite, suite_args);
    suite->add_option("--jobs", jobs, "Concurrent runs")->capture_default_str();
    suite->add_flag("--faulty-flow", suite_flow, "Search faulty flows for PDV counterexamples");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            if (literal_specs) bench.derivation = pdv::SpecDerivation::literal;
            if (loop_fault) bench.loop_fault = fault_lengths;
            auto manifest = pdv::gen_benchmark(bench, bench_out);
            std::cout << "wrote " << manifest.instances.size() << " instances to "
                      << (fs::path(bench_out) / "manifest.json").string() << '\n';
            return ok;
        }

        if (*gen_contact) {
            auto net = pdv::load_temporal_network(network_path);
            auto data = pdv::gen_contact_dataset(net, contact_seed, contact);
            fs::create_directories(contact_out);
            pdv::save_dataset(data.train, fs::path(contact_out) / "train.tsv");
            pdv::save_dataset(data.test, fs::path(contact_out) / "test.tsv");
            pdv::save_dfa(pdv::build_path_spec_dfa(net), fs::path(contact_out) / "path_spec.dfa");
            std::cout << "network: " << net.num_vertices() << " vertices, " << net.num_edges() << " edges\n"
                      << "train: " << data.train.size() << ", test: " << data.test.size() << '\n';
            return ok;
        }

        if (*verify) {
            auto oracle = build_oracle(verify_oracle);
            pdv::Dfa spec = pdv::load_dfa(spec_path);
            auto dist = verify_args.distribution(oracle->alphabet().size());
            auto config = verify_args.config(verify_seed);
            pdv::Method m = pdv::parse_method(method);
            pdv::Verdict v = pdv::run_method(m, *oracle, spec, dist, config);
            print_verdict(v, oracle->alphabet());

            auto record = pdv::make_run_record(fs::path(verify_oracle.file).stem().string(), spec_path, m, config, dist,
                                               v, oracle->alphabet());
            if (verify_flow && m == pdv::Method::pdv && v.found_counterexample() && v.hypothesis) {
                auto r = pdv::detect_faulty_flow(*oracle, spec, *v.hypothesis, *v.counterexample,
                                                 flow_options(pump_max, threshold, max_loop_len, false));
                record.faulty_flow = pdv::to_json(r, oracle->alphabet());
                std::cout << "faulty flow: " << (r.found ? "found" : "none") << " (" << r.hits << "/" << r.pump_max
                          << ")\n";
            }
            if (!record_path.empty()) pdv::append_record(record_path, record);
            if (!hypothesis_out.empty() && v.hypothesis) {
                if (fs::path(hypothesis_out).extension() == ".dot") {
                    std::ofstream(hypothesis_out) << pdv::to_dot(*v.hypothesis);
                } else {
                    pdv::save_dfa(*v.hypothesis, hypothesis_out);
                }
            }
            switch (v.outcome) {
                case pdv::Outcome::property_satisfied: return ok;
                case pdv::Outcome::counterexample_found: return counterexample;
                case pdv::Outcome::budget_exhausted: return exhausted;
            }
        }

        if (*flow) {
            auto oracle = build_oracle(flow_oracle);
            pdv::Dfa spec = pdv::load_dfa(flow_spec);
            pdv::Dfa hyp = pdv::load_dfa(flow_hyp);
            pdv::Word w = oracle->alphabet().parse_word(flow_word);
            auto r = pdv::detect_faulty_flow(*oracle, spec, hyp, w,
                                             flow_options(pump_max, threshold, max_loop_len, exhaustive));
            std::cout << pdv::to_json(r, oracle->alphabet()).dump(2) << '\n';
            return ok;
        }

        if (*report) {
            auto rows = pdv::summarize(pdv::read_records(results_path));
            std::cout << pdv::format_table(rows);
            if (!csv_path.empty()) {
                std::ofstream out(csv_path, std::ios::trunc);
                out << pdv::format_csv(rows);
                if (!out) throw pdv::input_error("cannot write " + csv_path);
            }
            return ok;
        }

        if (*suite) {
            pdv::SuiteOptions options;
            options.methods.clear();
            for (const auto& m : methods) options.methods.push_back(pdv::parse_method(m));
            options.config = suite_args.config(suite_seed);
            options.stop_prob = suite_args.stop_prob;
            options.letter_probs = suite_args.letter_probs;
            options.max_word_len = suite_args.max_word_len;
            options.jobs = jobs;
            if (suite_flow) options.faulty_flow = pdv::FlowOptions{};
            options.on_record = [](const pdv::RunRecord& r) {
                std::cerr << r.instance_id << ' ' << r.spec_id << ' ' << r.algorithm << ": " << r.outcome << '\n';
            };
            auto summary = pdv::run_suite(pdv::load_manifest(manifest_path), options, suite_out);
            std::cout << summary.runs << " runs, " << summary.errors << " errors\n";
            return summary.errors == 0 ? ok : failure;
        }
    } catch (const std::exception& e) {
        std::cerr << "pdv: " << e.what() << '\n';
        return failure;
    }
    return ok;
}
