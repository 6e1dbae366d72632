#include "pdv/bench/report.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>

namespace pdv {

namespace {

const std::array<std::string, 6> headers{"Type", "Avg time (s)", "Avg len", "# Mistakes", "Avg MQs", "Avg DFA size"};

int rank(const std::string& algorithm) {
    if (algorithm == "smc") return 0;
    if (algorithm == "aamc") return 1;
    if (algorithm == "pdv") return 2;
    return 3;
}

std::string fixed(const std::optional<double>& value, int digits) {
    if (!value) return "-";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, *value);
    return buf;
}

std::array<std::string, 6> cells(const AlgorithmSummary& row) {
    return {row.algorithm,           fixed(row.avg_time, 3), fixed(row.avg_len, 2), std::to_string(row.mistakes),
            fixed(row.avg_mqs, 1), fixed(row.avg_dfa_size, 2)};
}

struct Accumulator {
    AlgorithmSummary summary;
    double time = 0, len = 0, mqs = 0, size = 0;
    std::size_t ok = 0, with_len = 0, with_size = 0;
};

} // namespace

std::vector<AlgorithmSummary> summarize(const std::vector<RunRecord>& records) {
    std::map<std::string, Accumulator> acc;
    for (const auto& r : records) {
        auto& a = acc[r.algorithm];
        a.summary.algorithm = r.algorithm;
        ++a.summary.runs;
        if (r.outcome == "error") {
            ++a.summary.errors;
            continue;
        }
        ++a.ok;
        a.time += r.stats.wall_seconds;
        a.mqs += static_cast<double>(r.stats.membership_queries);
        if (r.is_mistake()) {
            ++a.summary.mistakes;
            if (r.stats.counterexample_length) {
                a.len += static_cast<double>(*r.stats.counterexample_length);
                ++a.with_len;
            }
        }
        if (r.final_dfa_size) {
            a.size += static_cast<double>(*r.final_dfa_size);
            ++a.with_size;
        }
        if (r.faulty_flow) {
            ++a.summary.flows_checked;
            if (r.faulty_flow->value("verdict", "") == "faulty_flow_found") ++a.summary.flows_found;
        }
    }

    std::vector<AlgorithmSummary> rows;
    for (auto& [name, a] : acc) {
        auto mean = [](double sum, std::size_t n) { return n ? std::optional<double>(sum / n) : std::nullopt; };
        a.summary.avg_time = mean(a.time, a.ok);
        a.summary.avg_mqs = mean(a.mqs, a.ok);
        a.summary.avg_len = mean(a.len, a.with_len);
        a.summary.avg_dfa_size = mean(a.size, a.with_size);
        rows.push_back(a.summary);
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& x, const auto& y) { return rank(x.algorithm) < rank(y.algorithm); });
    return rows;
}

std::string format_table(const std::vector<AlgorithmSummary>& rows) {
    std::array<std::size_t, 6> width{};
    for (std::size_t c = 0; c < headers.size(); ++c) width[c] = headers[c].size();
    std::vector<std::array<std::string, 6>> body;
    for (const auto& row : rows) {
        body.push_back(cells(row));
        for (std::size_t c = 0; c < width.size(); ++c) width[c] = std::max(width[c], body.back()[c].size());
    }

    auto line = [&](const std::array<std::string, 6>& values) {
        std::string out;
        for (std::size_t c = 0; c < values.size(); ++c) {
            if (c > 0) out += " | ";
            std::string pad(width[c] - values[c].size(), ' ');
            out += c == 0 ? values[c] + pad : pad + values[c];
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        return out + '\n';
    };

    std::string out = line(headers);
    std::string rule;
    for (std::size_t c = 0; c < width.size(); ++c) {
        if (c > 0) rule += "-+-";
        rule += std::string(width[c], '-');
    }
    out += rule + '\n';
    for (const auto& b : body) out += line(b);

    for (const auto& row : rows) {
        if (row.flows_checked > 0) {
            out += "\n" + row.algorithm + " faulty flows: " + std::to_string(row.flows_found) + "/" +
                   std::to_string(row.flows_checked) + '\n';
        }
        if (row.errors > 0) {
            out += row.algorithm + " errored runs: " + std::to_string(row.errors) + '\n';
        }
    }
    return out;
}

std::string format_csv(const std::vector<AlgorithmSummary>& rows) {
    auto line = [](const std::array<std::string, 6>& values) {
        std::string out;
        for (std::size_t c = 0; c < values.size(); ++c) {
            if (c > 0) out += ',';
            out += values[c];
        }
        return out + '\n';
    };
    std::string out = line(headers);
    for (const auto& row : rows) {
        auto values = cells(row);
        for (auto& v : values) {
            if (v == "-") v.clear();
        }
        out += line(values);
    }
    return out;
}

} // namespace pdv
