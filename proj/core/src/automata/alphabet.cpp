#include "pdv/automata/alphabet.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_set>

#include "pdv/errors.hpp"

namespace pdv {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) {
        throw input_error("alphabet must not be empty");
    }
    std::unordered_set<std::string> seen;
    for (const auto& s : symbols_) {
        if (s.empty()) {
            throw input_error("alphabet symbols must be nonempty");
        }
        if (std::any_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); })) {
            throw input_error("alphabet symbol '" + s + "' contains whitespace");
        }
        if (!seen.insert(s).second) {
            throw input_error("duplicate alphabet symbol '" + s + "'");
        }
    }
}

Alphabet Alphabet::of_size(std::size_t n) {
    std::vector<std::string> symbols;
    symbols.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        symbols.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + i)) : "s" + std::to_string(i));
    }
    return Alphabet(std::move(symbols));
}

const std::string& Alphabet::symbol(Letter l) const {
    if (l >= symbols_.size()) {
        throw input_error("letter index " + std::to_string(l) + " outside alphabet of size " +
                          std::to_string(symbols_.size()));
    }
    return symbols_[l];
}

std::optional<Letter> Alphabet::find(std::string_view symbol) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i] == symbol) {
            return static_cast<Letter>(i);
        }
    }
    return std::nullopt;
}

Letter Alphabet::index_of(std::string_view symbol) const {
    if (auto l = find(symbol)) {
        return *l;
    }
    throw input_error("symbol '" + std::string(symbol) + "' not in alphabet");
}

bool Alphabet::contains(const Word& w) const noexcept {
    return std::all_of(w.begin(), w.end(), [n = symbols_.size()](Letter l) { return l < n; });
}

void Alphabet::check(const Word& w) const {
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] >= symbols_.size()) {
            throw input_error("letter index " + std::to_string(w[i]) + " at position " + std::to_string(i) +
                              " outside alphabet of size " + std::to_string(symbols_.size()));
        }
    }
}

Word Alphabet::parse_word(std::string_view text) const {
    Word w;
    std::istringstream in{std::string(text)};
    std::string token;
    bool compact = std::all_of(symbols_.begin(), symbols_.end(), [](const auto& s) { return s.size() == 1; });
    while (in >> token) {
        if (auto l = find(token)) {
            w.push_back(*l);
        } else if (compact) {
            for (char c : token) {
                w.push_back(index_of(std::string_view(&c, 1)));
            }
        } else {
            throw input_error("symbol '" + token + "' not in alphabet");
        }
    }
    return w;
}

std::string Alphabet::format_word(const Word& w, std::string_view separator) const {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0) {
            out += separator;
        }
        out += symbol(w[i]);
    }
    return out;
}

} // namespace pdv
