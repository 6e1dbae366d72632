#include "pdv/faultyflow/faulty_flow.hpp"

#include <algorithm>
#include <map>

#include "pdv/automata/operations.hpp"
#include "pdv/errors.hpp"

namespace pdv {

namespace {

// closes[k][s]: some walk of exactly k letters leads from s to the target
// without visiting the target earlier.
std::vector<std::vector<bool>> closing_table(const Dfa& dfa, StateId at, std::size_t max_len) {
    const std::size_t n = dfa.num_states();
    std::vector<std::vector<bool>> closes(max_len + 1, std::vector<bool>(n, false));
    for (std::size_t k = 1; k <= max_len; ++k) {
        for (StateId s = 0; s < n; ++s) {
            for (StateId t : dfa.row(s)) {
                if (k == 1 ? t == at : (t != at && closes[k - 1][t])) {
                    closes[k][s] = true;
                    break;
                }
            }
        }
    }
    return closes;
}

void collect(const Dfa& dfa, StateId at, StateId s, std::size_t remaining,
             const std::vector<std::vector<bool>>& closes, Word& prefix, std::vector<Word>& out,
             std::size_t max_loops) {
    for (Letter a = 0; a < dfa.num_letters() && out.size() < max_loops; ++a) {
        StateId t = dfa.next(s, a);
        if (remaining == 1) {
            if (t == at) {
                prefix.push_back(a);
                out.push_back(prefix);
                prefix.pop_back();
            }
        } else if (t != at && closes[remaining - 1][t]) {
            prefix.push_back(a);
            collect(dfa, at, t, remaining - 1, closes, prefix, out, max_loops);
            prefix.pop_back();
        }
    }
}

nlohmann::json word_json(const Word& w, const Alphabet& alphabet) {
    auto out = nlohmann::json::array();
    for (Letter a : w) out.push_back(alphabet.symbol(a));
    return out;
}

} // namespace

std::vector<Word> find_loops(const Dfa& dfa, StateId at, std::size_t max_len, std::size_t max_loops) {
    if (at >= dfa.num_states()) {
        throw input_error("state " + std::to_string(at) + " is out of range");
    }
    std::vector<Word> loops;
    if (max_len == 0 || max_loops == 0) return loops;
    auto closes = closing_table(dfa, at, max_len);
    Word prefix;
    for (std::size_t len = 1; len <= max_len && loops.size() < max_loops; ++len) {
        if (len == 1 || closes[len][at]) {
            collect(dfa, at, at, len, closes, prefix, loops, max_loops);
        }
    }
    return loops;
}

FaultyFlowReport detect_faulty_flow(LanguageOracle& oracle, const Dfa& spec, const Dfa& hyp, const Word& w,
                                    const FlowOptions& options) {
    if (spec.alphabet() != oracle.alphabet() || hyp.alphabet() != oracle.alphabet()) {
        throw input_error("oracle, specification and hypothesis use different alphabets");
    }
    const std::uint64_t base_queries = oracle.query_count();
    if (spec.accepts(w) || !oracle.membership(w)) {
        throw contract_error("faulty-flow search needs a confirmed counterexample, got " +
                             oracle.alphabet().format_word(w));
    }

    FaultyFlowReport report;
    report.w = w;
    report.pump_max = options.pump_max;
    report.threshold = options.threshold;

    const Dfa prod = product(spec, hyp, combine::first_only);
    std::map<StateId, std::vector<Word>> loops_at;
    bool have_best = false;

    StateId prod_state = prod.initial();
    StateId spec_state = spec.initial();
    for (std::size_t split = 0; split <= w.size(); ++split) {
        if (split > 0) {
            prod_state = prod.next(prod_state, w[split - 1]);
            spec_state = spec.next(spec_state, w[split - 1]);
        }
        auto it = loops_at.find(prod_state);
        if (it == loops_at.end()) {
            it = loops_at
                     .emplace(prod_state, find_loops(prod, prod_state, options.max_loop_len,
                                                     options.max_loops_per_state))
                     .first;
        }
        const Word w1(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(split));
        const Word w2(w.begin() + static_cast<std::ptrdiff_t>(split), w.end());

        for (const Word& loop : it->second) {
            std::size_t hits = 0;
            Word pumped = w1;
            StateId q = spec_state;
            for (std::size_t n = 1; n <= options.pump_max; ++n) {
                pumped.insert(pumped.end(), loop.begin(), loop.end());
                q = spec.reach_from(q, loop);
                if (spec.is_accepting(spec.reach_from(q, w2))) continue;
                Word candidate = pumped;
                candidate.insert(candidate.end(), w2.begin(), w2.end());
                if (oracle.membership(candidate)) ++hits;
            }
            ++report.candidates_tested;

            if (!report.found && (!have_best || hits > report.best_hits)) {
                report.w1 = w1;
                report.loop = loop;
                report.w2 = w2;
                report.hits = hits;
                have_best = true;
            }
            report.best_hits = std::max(report.best_hits, hits);

            if (hits > options.threshold) {
                if (!report.found) {
                    report.found = true;
                    report.w1 = w1;
                    report.loop = loop;
                    report.w2 = w2;
                    report.hits = hits;
                }
                if (!options.exhaustive) {
                    report.membership_queries = oracle.query_count() - base_queries;
                    return report;
                }
                report.flows.push_back({split, loop, hits});
            }
        }
    }
    report.membership_queries = oracle.query_count() - base_queries;
    return report;
}

nlohmann::json to_json(const FaultyFlowReport& report, const Alphabet& alphabet) {
    nlohmann::json out{
        {"w", word_json(report.w, alphabet)},
        {"w1", word_json(report.w1, alphabet)},
        {"loop", word_json(report.loop, alphabet)},
        {"w2", word_json(report.w2, alphabet)},
        {"hits", report.hits},
        {"pump_max", report.pump_max},
        {"threshold", report.threshold},
        {"verdict", report.found ? "faulty_flow_found" : "none"},
        {"best_hits", report.best_hits},
        {"candidates_tested", report.candidates_tested},
        {"membership_queries", report.membership_queries},
    };
    if (!report.flows.empty()) {
        auto flows = nlohmann::json::array();
        for (const Flow& f : report.flows) {
            flows.push_back({{"split", f.split}, {"loop", word_json(f.loop, alphabet)}, {"hits", f.hits}});
        }
        out["flows"] = std::move(flows);
    }
    return out;
}

} // namespace pdv
