#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "pdv/automata/dfa.hpp"

namespace pdv {

// Text format, one directive per line:
//
//   dfa v1
//   alphabet: a b c
//   states: 3
//   initial: 0
//   accepting: 0 2
//   0 a 1
//   ...
//
// followed by exactly one "src letter dst" line per (state, letter) pair.
// Blank lines and lines starting with '#' are ignored.

Dfa parse_dfa(std::string_view text);
std::string format_dfa(const Dfa& dfa);

Dfa load_dfa(const std::filesystem::path& path);
void save_dfa(const Dfa& dfa, const std::filesystem::path& path);

/// GraphViz rendering for reports. Parallel edges are merged into one
/// comma-labelled edge.
std::string to_dot(const Dfa& dfa, std::string_view name = "dfa");

} // namespace pdv
