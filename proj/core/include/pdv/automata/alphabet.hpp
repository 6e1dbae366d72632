#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pdv {

using Letter = std::uint32_t;

/// A finite word, stored as letter indices into some Alphabet. The empty
/// vector is the empty word.
using Word = std::vector<Letter>;

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept {
        // FNV-1a over the letter indices
        std::uint64_t h = 1469598103934665603ull;
        for (Letter l : w) {
            h ^= l;
            h *= 1099511628211ull;
        }
        h ^= w.size();
        return static_cast<std::size_t>(h);
    }
};

/// Ordered set of distinct symbols. The position of a symbol is its letter
/// index; all other components refer to letters by index only.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols);

    /// Symbols "a", "b", ... for small sizes, "s0", "s1", ... beyond 26.
    static Alphabet of_size(std::size_t n);

    std::size_t size() const noexcept { return symbols_.size(); }
    const std::string& symbol(Letter l) const;
    const std::vector<std::string>& symbols() const noexcept { return symbols_; }

    std::optional<Letter> find(std::string_view symbol) const;
    Letter index_of(std::string_view symbol) const;

    bool contains(const Word& w) const noexcept;

    /// Throws input_error naming the first letter outside the alphabet.
    void check(const Word& w) const;

    /// Whitespace-separated symbols. Single-character alphabets also accept
    /// the compact form "abc".
    Word parse_word(std::string_view text) const;
    std::string format_word(const Word& w, std::string_view separator = " ") const;

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::vector<std::string> symbols_;
};

} // namespace pdv
