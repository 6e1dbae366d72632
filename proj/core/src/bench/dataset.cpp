#include "pdv/bench/dataset.hpp"

#include <fstream>
#include <sstream>

#include "pdv/errors.hpp"

namespace pdv {

std::string format_dataset(const std::vector<LabeledSequence>& rows) {
    std::string out;
    for (const auto& row : rows) {
        out += row.label ? '1' : '0';
        out += '\t';
        for (std::size_t i = 0; i < row.tokens.size(); ++i) {
            if (i > 0) out += ' ';
            out += row.tokens[i];
        }
        out += '\n';
    }
    return out;
}

std::vector<LabeledSequence> parse_dataset(std::string_view text) {
    std::vector<LabeledSequence> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;

        std::size_t tab = line.find('\t');
        if (tab == std::string_view::npos) {
            throw input_error("line " + std::to_string(line_no) + ": expected 'label<TAB>tokens'");
        }
        std::string_view label = line.substr(0, tab);
        if (label != "0" && label != "1") {
            throw input_error("line " + std::to_string(line_no) + ": label must be 0 or 1, got '" +
                              std::string(label) + "'");
        }
        LabeledSequence row;
        row.label = label == "1";
        std::istringstream tokens{std::string(line.substr(tab + 1))};
        for (std::string tok; tokens >> tok;) row.tokens.push_back(std::move(tok));
        rows.push_back(std::move(row));
    }
    return rows;
}

void save_dataset(const std::vector<LabeledSequence>& rows, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw input_error("cannot write dataset " + path.string());
    }
    out << format_dataset(rows);
    if (!out) {
        throw input_error("write failed for " + path.string());
    }
}

std::vector<LabeledSequence> load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw input_error("cannot open dataset " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_dataset(buf.str());
    } catch (const input_error& e) {
        throw input_error(path.string() + ": " + e.what());
    }
}

} // namespace pdv
