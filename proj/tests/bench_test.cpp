#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "pdv/automata/dfa_io.hpp"
#include "pdv/automata/operations.hpp"
#include "pdv/bench/benchmark.hpp"
#include "pdv/bench/dataset.hpp"
#include "pdv/bench/report.hpp"
#include "pdv/bench/suite.hpp"
#include "pdv/errors.hpp"
#include "pdv/verify/run_record.hpp"

using namespace pdv;
namespace fs = std::filesystem;

namespace {

class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("pdv_bench_test_" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

BenchOptions small_options(std::uint64_t seed) {
    BenchOptions o;
    o.count = 4;
    o.n_max = 10;
    o.specs_per_dfa = 2;
    o.train_size = 60;
    o.test_size = 12;
    o.seed = seed;
    return o;
}

Word to_word(const Alphabet& sigma, const std::vector<std::string>& tokens) {
    Word w;
    for (const auto& t : tokens) w.push_back(sigma.index_of(t));
    return w;
}

RunRecord hand_record(std::string algorithm, std::string outcome, double time, std::uint64_t mqs,
                      std::optional<std::size_t> len, std::optional<std::size_t> size) {
    RunRecord r;
    r.instance_id = "inst000";
    r.spec_id = "inst000/spec_0.dfa";
    r.algorithm = std::move(algorithm);
    r.outcome = std::move(outcome);
    r.stats.wall_seconds = time;
    r.stats.membership_queries = mqs;
    r.stats.counterexample_length = len;
    if (len) r.counterexample = std::vector<std::string>(*len, "a");
    r.confirmed = len.has_value();
    r.final_dfa_size = size;
    return r;
}

} // namespace

TEST(Dataset, RoundTripsAndReportsLines) {
    std::vector<LabeledSequence> rows{{true, {"a", "b", "c"}}, {false, {}}, {false, {"x"}}};
    std::string text = format_dataset(rows);
    EXPECT_EQ(text, "1\ta b c\n0\t\n0\tx\n");
    EXPECT_EQ(parse_dataset(text), rows);
    try {
        parse_dataset("1\ta\n2\tb\n");
        FAIL() << "expected input_error";
    } catch (const input_error& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    }
    EXPECT_THROW(parse_dataset("1 a b\n"), input_error);
    TempDir dir;
    save_dataset(rows, dir.path() / "d.tsv");
    EXPECT_EQ(load_dataset(dir.path() / "d.tsv"), rows);
    EXPECT_THROW(load_dataset(dir.path() / "missing.tsv"), input_error);
}

TEST(GenBenchmark, InstancesAreConsistent) {
    TempDir dir;
    Manifest m = gen_benchmark(small_options(7), dir.path());
    ASSERT_EQ(m.instances.size(), 4u);
    for (const auto& e : m.instances) {
        Dfa ground = load_dfa(m.resolve(e.ground));
        EXPECT_EQ(ground.alphabet().symbols(), e.alphabet);
        EXPECT_EQ(ground.num_states(), e.num_states);
        EXPECT_LE(ground.num_states(), 10u);
        ASSERT_FALSE(e.specs.empty());
        EXPECT_LE(e.specs.size(), 2u);
        for (const auto& s : e.specs) {
            EXPECT_TRUE(check_inclusion(ground, load_dfa(m.resolve(s))).holds()) << s;
        }
        auto train = load_dataset(m.resolve(e.train));
        auto test = load_dataset(m.resolve(e.test));
        EXPECT_EQ(train.size(), 60u);
        EXPECT_EQ(test.size(), 12u);
        for (const auto* rows : {&train, &test}) {
            for (const auto& row : *rows) EXPECT_EQ(ground.accepts(to_word(ground.alphabet(), row.tokens)), row.label);
        }
        EXPECT_EQ(e.oracle, OracleKind::dfa);
    }
}

TEST(GenBenchmark, ByteIdenticalForEqualSeeds) {
    TempDir a, b, c;
    gen_benchmark(small_options(11), a.path());
    gen_benchmark(small_options(11), b.path());
    gen_benchmark(small_options(12), c.path());
    std::size_t files = 0;
    for (const auto& entry : fs::recursive_directory_iterator(a.path())) {
        if (!entry.is_regular_file()) continue;
        auto rel = fs::relative(entry.path(), a.path());
        EXPECT_EQ(slurp(entry.path()), slurp(b.path() / rel)) << rel;
        ++files;
    }
    EXPECT_GT(files, 4u);
    EXPECT_NE(slurp(a.path() / "manifest.json"), slurp(c.path() / "manifest.json"));
}

TEST(GenBenchmark, LoopFaultsEscapeTheFirstSpec) {
    TempDir dir;
    BenchOptions o = small_options(3);
    o.loop_fault = LoopFaultOptions{};
    Manifest m = gen_benchmark(o, dir.path());
    for (const auto& e : m.instances) {
        ASSERT_EQ(e.oracle, OracleKind::xor_fault);
        Dfa ground = load_dfa(m.resolve(e.ground));
        Dfa fault = load_dfa(m.resolve(e.oracle_file));
        Dfa spec = load_dfa(m.resolve(e.specs.at(0)));
        EXPECT_TRUE(check_inclusion(fault, complement(ground)).holds());
        EXPECT_FALSE(check_inclusion(product(ground, fault, combine::exclusive), spec).holds());
        auto oracle = make_oracle(m, e);
        EXPECT_EQ(oracle->alphabet(), ground.alphabet());
    }
}

TEST(GenBenchmark, RejectsBadParameters) {
    TempDir dir;
    BenchOptions o = small_options(1);
    o.count = 0;
    EXPECT_THROW(gen_benchmark(o, dir.path()), input_error);
    LoopFaultOptions bad;
    bad.loop_min = 3;
    bad.loop_max = 2;
    Dfa d = Dfa::empty(Alphabet::of_size(2));
    EXPECT_THROW(random_loop_fault(d, Dfa::universal(Alphabet::of_size(2)), bad, 1), input_error);
}

TEST(Manifest, RoundTrips) {
    TempDir dir;
    BenchOptions o = small_options(5);
    o.loop_fault = LoopFaultOptions{};
    Manifest m = gen_benchmark(o, dir.path());
    Manifest back = load_manifest(dir.path() / "manifest.json");
    EXPECT_EQ(to_json(back), to_json(m));
    EXPECT_EQ(back.base_dir, dir.path());
    auto j = to_json(m);
    j["format"] = "pdv-manifest v9";
    EXPECT_THROW(manifest_from_json(j, dir.path()), input_error);
    j = to_json(m);
    j["instances"][0].erase("ground");
    EXPECT_THROW(manifest_from_json(j, dir.path()), input_error);
    EXPECT_THROW(parse_oracle_kind("lstm"), input_error);
    for (OracleKind k : {OracleKind::dfa, OracleKind::xor_fault, OracleKind::rnn}) {
        EXPECT_EQ(parse_oracle_kind(to_string(k)), k);
    }
}

TEST(RunRecords, RoundTripThroughNdjson) {
    Dfa d = Dfa::universal(Alphabet::of_size(2));
    DfaOracle oracle(d);
    VerifyConfig config;
    config.epsilon = 0.1;
    config.gamma = 0.1;
    config.seed = 9;
    auto dist = WordDistribution::uniform(2);
    Verdict v = run_method(Method::pdv, oracle, Dfa::empty(d.alphabet()), dist, config);
    ASSERT_TRUE(v.found_counterexample());
    RunRecord r = make_run_record("i", "s", Method::pdv, config, dist, v, d.alphabet());
    EXPECT_EQ(r.outcome, "counterexample");
    EXPECT_TRUE(r.is_mistake());
    EXPECT_EQ(r.seed, 9u);
    EXPECT_EQ(r.final_dfa_size, v.hypothesis->num_states());
    EXPECT_EQ(to_json(record_from_json(to_json(r))), to_json(r));

    RunRecord err = make_error_record("i", "s", Method::smc, config, "boom");
    EXPECT_EQ(err.outcome, "error");
    EXPECT_EQ(err.reason, "boom");
    EXPECT_FALSE(err.is_mistake());

    TempDir dir;
    auto path = dir.path() / "results.ndjson";
    append_record(path, r);
    append_record(path, err);
    auto back = read_records(path);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(to_json(back[0]), to_json(r));
    EXPECT_EQ(to_json(back[1]), to_json(err));

    std::string text = to_json(r).dump() + "\n\n{\"instance\": 3}\n";
    try {
        parse_records(text);
        FAIL() << "expected input_error";
    } catch (const input_error& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(Report, HandComputedMeans) {
    std::vector<RunRecord> records{
        hand_record("pdv", "counterexample", 0.5, 50, 2, 5),
        hand_record("smc", "counterexample", 1.0, 100, 4, std::nullopt),
        hand_record("smc", "satisfied", 3.0, 200, std::nullopt, std::nullopt),
        hand_record("pdv", "error", 100.0, 999, std::nullopt, std::nullopt),
    };
    records[0].faulty_flow = nlohmann::json{{"verdict", "faulty_flow_found"}};
    auto rows = summarize(records);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].algorithm, "smc");
    EXPECT_EQ(rows[0].runs, 2u);
    EXPECT_DOUBLE_EQ(*rows[0].avg_time, 2.0);
    EXPECT_DOUBLE_EQ(*rows[0].avg_len, 4.0);
    EXPECT_EQ(rows[0].mistakes, 1u);
    EXPECT_DOUBLE_EQ(*rows[0].avg_mqs, 150.0);
    EXPECT_FALSE(rows[0].avg_dfa_size.has_value());
    EXPECT_EQ(rows[1].algorithm, "pdv");
    EXPECT_EQ(rows[1].runs, 2u);
    EXPECT_EQ(rows[1].errors, 1u);
    EXPECT_DOUBLE_EQ(*rows[1].avg_time, 0.5);
    EXPECT_DOUBLE_EQ(*rows[1].avg_mqs, 50.0);
    EXPECT_DOUBLE_EQ(*rows[1].avg_dfa_size, 5.0);
    EXPECT_EQ(rows[1].flows_found, 1u);
    EXPECT_EQ(rows[1].flows_checked, 1u);

    EXPECT_EQ(format_csv(rows),
              "Type,Avg time (s),Avg len,# Mistakes,Avg MQs,Avg DFA size\n"
              "smc,2.000,4.00,1,150.0,\n"
              "pdv,0.500,2.00,1,50.0,5.00\n");
    EXPECT_EQ(format_table(rows),
              "Type | Avg time (s) | Avg len | # Mistakes | Avg MQs | Avg DFA size\n"
              "-----+--------------+---------+------------+---------+-------------\n"
              "smc  |        2.000 |    4.00 |          1 |   150.0 |            -\n"
              "pdv  |        0.500 |    2.00 |          1 |    50.0 |         5.00\n"
              "\n"
              "pdv faulty flows: 1/1\n"
              "pdv errored runs: 1\n");
}

TEST(Report, EmptyInputGivesHeadersOnly) {
    auto rows = summarize({});
    EXPECT_TRUE(rows.empty());
    EXPECT_EQ(format_csv(rows), "Type,Avg time (s),Avg len,# Mistakes,Avg MQs,Avg DFA size\n");
}

TEST(Suite, RecordsAreSoundOrderedAndIndependentOfJobs) {
    TempDir dir;
    BenchOptions o = small_options(21);
    o.count = 3;
    o.loop_fault = LoopFaultOptions{};
    Manifest m = gen_benchmark(o, dir.path() / "bench");

    SuiteOptions options;
    options.config.epsilon = 0.01;
    options.config.gamma = 0.01;
    options.config.seed = 4;
    options.faulty_flow = FlowOptions{};
    std::size_t callbacks = 0;
    options.on_record = [&](const RunRecord&) { ++callbacks; };
    auto one = run_suite(m, options, dir.path() / "one.ndjson");
    options.jobs = 3;
    auto three = run_suite(m, options, dir.path() / "three.ndjson");

    std::size_t pairs = 0;
    for (const auto& e : m.instances) pairs += e.specs.size();
    EXPECT_EQ(one.runs, 3 * pairs);
    EXPECT_EQ(one.errors, 0u);
    EXPECT_EQ(three.runs, one.runs);
    EXPECT_EQ(callbacks, 2 * one.runs);

    auto a = read_records(dir.path() / "one.ndjson");
    auto b = read_records(dir.path() / "three.ndjson");
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].instance_id, b[i].instance_id);
        EXPECT_EQ(a[i].algorithm, b[i].algorithm);
        EXPECT_EQ(a[i].outcome, b[i].outcome);
        EXPECT_EQ(a[i].counterexample, b[i].counterexample);
        EXPECT_EQ(a[i].stats.membership_queries, b[i].stats.membership_queries);
        EXPECT_EQ(a[i].algorithm, to_string(options.methods[i % 3]));
        if (i % 3 > 0) EXPECT_EQ(a[i].seed, a[i - 1].seed);
    }
    for (const auto& r : a) {
        if (!r.is_mistake()) continue;
        const InstanceEntry* entry = nullptr;
        for (const auto& e : m.instances) {
            if (e.id == r.instance_id) entry = &e;
        }
        ASSERT_NE(entry, nullptr);
        Dfa ground = load_dfa(m.resolve(entry->ground));
        Dfa fault = load_dfa(m.resolve(entry->oracle_file));
        Dfa spec = load_dfa(m.resolve(r.spec_id));
        Word w = to_word(ground.alphabet(), *r.counterexample);
        EXPECT_NE(ground.accepts(w), fault.accepts(w));
        EXPECT_FALSE(spec.accepts(w));
        EXPECT_EQ(r.faulty_flow.has_value(), r.algorithm == "pdv");
    }
}

TEST(Suite, BrokenInstancesBecomeErrorRecords) {
    TempDir dir;
    BenchOptions o = small_options(2);
    o.count = 2;
    Manifest m = gen_benchmark(o, dir.path());
    fs::remove(m.resolve(m.instances[0].specs[0]));
    SuiteOptions options;
    options.config.epsilon = 0.05;
    options.config.gamma = 0.05;
    options.methods = {Method::smc};
    auto summary = run_suite(m, options, dir.path() / "r.ndjson");
    EXPECT_EQ(summary.errors, 1u);
    auto records = read_records(dir.path() / "r.ndjson");
    EXPECT_EQ(records.size(), summary.runs);
    EXPECT_EQ(records[0].outcome, "error");
    EXPECT_FALSE(records[0].reason.empty());
}
