#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pdv/automata/generate.hpp"
#include "pdv/oracle/language_oracle.hpp"

namespace pdv {

enum class OracleKind { dfa, xor_fault, rnn };

const char* to_string(OracleKind kind);
OracleKind parse_oracle_kind(std::string_view name);

/// One benchmark instance. Paths are relative to the manifest directory.
struct InstanceEntry {
    std::string id;
    std::vector<std::string> alphabet;
    std::size_t num_states = 0;
    std::string ground;
    OracleKind oracle = OracleKind::dfa;
    /// Fault DFA for xor_fault, model file for rnn.
    std::string oracle_file;
    std::vector<std::string> specs;
    std::string train;
    std::string test;
};

struct Manifest {
    std::uint64_t seed = 0;
    nlohmann::json params = nlohmann::json::object();
    std::vector<InstanceEntry> instances;
    /// Directory the relative paths resolve against; not serialized.
    std::filesystem::path base_dir;

    std::filesystem::path resolve(const std::string& relative) const { return base_dir / relative; }
};

nlohmann::json to_json(const Manifest& manifest);
/// Throws input_error on missing or mistyped fields.
Manifest manifest_from_json(const nlohmann::json& j, std::filesystem::path base_dir);

void save_manifest(const Manifest& manifest, const std::filesystem::path& path);
Manifest load_manifest(const std::filesystem::path& path);

/// Loop-shaped fault w1 · loop⁺ · w2 with word lengths drawn uniformly
/// from the given ranges. The defaults keep the fault mass within reach of
/// PAC sampling at epsilon = 5e-4 under the default word distribution.
struct LoopFaultOptions {
    std::size_t prefix_min = 1, prefix_max = 1;
    std::size_t loop_min = 1, loop_max = 2;
    std::size_t suffix_min = 0, suffix_max = 1;
};

struct BenchOptions {
    std::size_t count = 30;
    std::size_t n_max = 30;
    std::size_t alphabet_size = 5;
    std::size_t specs_per_dfa = 5;
    std::uint64_t seed = 0;
    std::size_t train_size = 2000;
    std::size_t test_size = 400;
    double stop_prob = 0.05;
    SpecDerivation derivation = SpecDerivation::random_subsets;
    /// Emit xor-fault oracles whose fault language escapes the first spec.
    std::optional<LoopFaultOptions> loop_fault;
    /// Re-roll attempts per instance before giving up.
    std::size_t max_rerolls = 1000;
};

/// Fault language for `ground`: a random w1 · loop⁺ · w2 minus L(ground),
/// re-drawn until it contains a word outside `spec`. Throws input_error
/// when no such fault is found within `max_attempts` draws.
Dfa random_loop_fault(const Dfa& ground, const Dfa& spec, const LoopFaultOptions& options, std::uint64_t seed,
                      std::size_t max_attempts = 1000);

/// Writes `options.count` instances below out_dir (ground.dfa, spec_<i>.dfa,
/// train.tsv, test.tsv, optionally fault.dfa) plus manifest.json and returns
/// the manifest. Output is byte-identical for equal options.
Manifest gen_benchmark(const BenchOptions& options, const std::filesystem::path& out_dir);

/// Oracle described by a manifest entry.
std::unique_ptr<LanguageOracle> make_oracle(const Manifest& manifest, const InstanceEntry& entry);

} // namespace pdv
