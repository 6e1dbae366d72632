#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pdv {

/// One line of a dataset file: `label<TAB>tok1 tok2 ... tokk`, label 0 or 1.
struct LabeledSequence {
    bool label = false;
    std::vector<std::string> tokens;

    friend bool operator==(const LabeledSequence&, const LabeledSequence&) = default;
};

std::string format_dataset(const std::vector<LabeledSequence>& rows);
/// Throws input_error with the offending line number.
std::vector<LabeledSequence> parse_dataset(std::string_view text);

void save_dataset(const std::vector<LabeledSequence>& rows, const std::filesystem::path& path);
std::vector<LabeledSequence> load_dataset(const std::filesystem::path& path);

} // namespace pdv
