#include "pdv/automata/dfa_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "pdv/errors.hpp"

namespace pdv {

namespace {

constexpr std::string_view header = "dfa v1";

std::string_view strip(std::string_view s) {
    auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok) {
        out.push_back(tok);
    }
    return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw input_error("dfa line " + std::to_string(line) + ": " + what);
}

std::uint64_t parse_uint(std::string_view s, std::size_t line, const char* field) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        fail(line, std::string("bad ") + field + " '" + std::string(s) + "'");
    }
    return v;
}

} // namespace

Dfa parse_dfa(std::string_view text) {
    std::optional<Alphabet> alphabet;
    std::optional<std::uint64_t> states;
    std::optional<std::uint64_t> initial;
    std::optional<std::vector<std::uint64_t>> accepting;
    std::vector<StateId> transitions;
    std::vector<bool> defined;
    bool seen_header = false;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = strip(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (!seen_header) {
            if (line != header) {
                fail(line_no, "expected header '" + std::string(header) + "'");
            }
            seen_header = true;
            continue;
        }

        auto colon = line.find(':');
        if (colon != std::string_view::npos) {
            std::string_view key = strip(line.substr(0, colon));
            std::string_view value = strip(line.substr(colon + 1));
            if (!transitions.empty()) {
                fail(line_no, "header field '" + std::string(key) + "' after transitions");
            }
            if (key == "alphabet") {
                try {
                    alphabet = Alphabet(split_ws(value));
                } catch (const input_error& e) {
                    fail(line_no, e.what());
                }
            } else if (key == "states") {
                states = parse_uint(value, line_no, "state count");
                if (*states == 0 || *states > std::numeric_limits<StateId>::max()) {
                    fail(line_no, "state count out of range");
                }
            } else if (key == "initial") {
                initial = parse_uint(value, line_no, "initial state");
            } else if (key == "accepting") {
                accepting.emplace();
                for (const auto& tok : split_ws(value)) {
                    accepting->push_back(parse_uint(tok, line_no, "accepting state"));
                }
            } else {
                fail(line_no, "unknown field '" + std::string(key) + "'");
            }
            continue;
        }

        if (!alphabet || !states) {
            fail(line_no, "transition before 'alphabet' and 'states' fields");
        }
        if (transitions.empty()) {
            transitions.assign(*states * alphabet->size(), 0);
            defined.assign(transitions.size(), false);
        }
        auto parts = split_ws(line);
        if (parts.size() != 3) {
            fail(line_no, "expected 'src letter dst'");
        }
        std::uint64_t src = parse_uint(parts[0], line_no, "source state");
        std::uint64_t dst = parse_uint(parts[2], line_no, "target state");
        auto letter = alphabet->find(parts[1]);
        if (!letter) {
            fail(line_no, "letter '" + parts[1] + "' not in alphabet");
        }
        if (src >= *states || dst >= *states) {
            fail(line_no, "state out of range");
        }
        std::size_t slot = src * alphabet->size() + *letter;
        if (defined[slot]) {
            fail(line_no, "duplicate transition for (" + parts[0] + ", " + parts[1] + ")");
        }
        defined[slot] = true;
        transitions[slot] = static_cast<StateId>(dst);
    }

    if (!seen_header) {
        throw input_error("dfa: missing header '" + std::string(header) + "'");
    }
    if (!alphabet) throw input_error("dfa: missing 'alphabet' field");
    if (!states) throw input_error("dfa: missing 'states' field");
    if (!initial) throw input_error("dfa: missing 'initial' field");
    if (!accepting) throw input_error("dfa: missing 'accepting' field");
    if (*initial >= *states) {
        throw input_error("dfa: initial state " + std::to_string(*initial) + " out of range");
    }
    if (transitions.empty()) {
        transitions.assign(*states * alphabet->size(), 0);
        defined.assign(transitions.size(), false);
    }
    for (std::size_t slot = 0; slot < defined.size(); ++slot) {
        if (!defined[slot]) {
            throw input_error("dfa: missing transition for (" + std::to_string(slot / alphabet->size()) + ", " +
                              alphabet->symbol(static_cast<Letter>(slot % alphabet->size())) + ")");
        }
    }
    std::vector<bool> mask(*states, false);
    for (auto q : *accepting) {
        if (q >= *states) {
            throw input_error("dfa: accepting state " + std::to_string(q) + " out of range");
        }
        mask[q] = true;
    }
    return Dfa(std::move(*alphabet), *states, static_cast<StateId>(*initial), std::move(mask), std::move(transitions));
}

std::string format_dfa(const Dfa& dfa) {
    std::ostringstream out;
    out << header << '\n';
    out << "alphabet:";
    for (const auto& s : dfa.alphabet().symbols()) {
        out << ' ' << s;
    }
    out << "\nstates: " << dfa.num_states() << '\n';
    out << "initial: " << dfa.initial() << '\n';
    out << "accepting:";
    for (StateId q = 0; q < dfa.num_states(); ++q) {
        if (dfa.is_accepting(q)) {
            out << ' ' << q;
        }
    }
    out << '\n';
    for (StateId q = 0; q < dfa.num_states(); ++q) {
        for (Letter a = 0; a < dfa.num_letters(); ++a) {
            out << q << ' ' << dfa.alphabet().symbol(a) << ' ' << dfa.next(q, a) << '\n';
        }
    }
    return out.str();
}

Dfa load_dfa(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw input_error("cannot open dfa file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_dfa(buf.str());
    } catch (const input_error& e) {
        throw input_error(path.string() + ": " + e.what());
    }
}

void save_dfa(const Dfa& dfa, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw input_error("cannot write dfa file " + path.string());
    }
    out << format_dfa(dfa);
    if (!out) {
        throw input_error("write failed for " + path.string());
    }
}

std::string to_dot(const Dfa& dfa, std::string_view name) {
    std::ostringstream out;
    out << "digraph " << name << " {\n  rankdir=LR;\n  __start [shape=point];\n";
    for (StateId q = 0; q < dfa.num_states(); ++q) {
        out << "  " << q << " [shape=" << (dfa.is_accepting(q) ? "doublecircle" : "circle") << "];\n";
    }
    out << "  __start -> " << dfa.initial() << ";\n";
    for (StateId q = 0; q < dfa.num_states(); ++q) {
        std::map<StateId, std::string> labels;
        for (Letter a = 0; a < dfa.num_letters(); ++a) {
            auto& label = labels[dfa.next(q, a)];
            label += (label.empty() ? "" : ",") + dfa.alphabet().symbol(a);
        }
        for (const auto& [target, label] : labels) {
            out << "  " << q << " -> " << target << " [label=\"" << label << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

} // namespace pdv
