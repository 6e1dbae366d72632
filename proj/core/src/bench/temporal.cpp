#include "pdv/bench/temporal.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "pdv/errors.hpp"

namespace pdv {

namespace {

const std::vector<std::uint64_t> no_times;

std::pair<VertexId, VertexId> edge_key(VertexId u, VertexId v) { return {std::min(u, v), std::max(u, v)}; }

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) fields.push_back(line.substr(start, i - start));
    }
    return fields;
}

// Earliest timestamp of {u, v} strictly after `after`; nullopt when none.
std::optional<std::uint64_t> next_time(const TemporalNetwork& net, VertexId u, VertexId v,
                                       std::optional<std::uint64_t> after) {
    const auto& ts = net.times(u, v);
    auto it = after ? std::upper_bound(ts.begin(), ts.end(), *after) : ts.begin();
    if (it == ts.end()) return std::nullopt;
    return *it;
}

std::vector<std::string> to_names(const TemporalNetwork& net, const std::vector<VertexId>& path) {
    std::vector<std::string> out;
    out.reserve(path.size());
    for (VertexId v : path) out.push_back(net.name(v));
    return out;
}

// Random time-respecting walk with exactly `len` vertices, or empty on a dead end.
std::vector<VertexId> random_walk(const TemporalNetwork& net, std::size_t len, std::mt19937_64& rng) {
    const auto& edges = net.edges();
    const TemporalEdge& e = edges[std::uniform_int_distribution<std::size_t>(0, edges.size() - 1)(rng)];
    std::vector<VertexId> walk;
    if (std::bernoulli_distribution(0.5)(rng)) {
        walk = {e.u, e.v};
    } else {
        walk = {e.v, e.u};
    }
    std::uint64_t last = e.time;
    std::vector<std::pair<VertexId, std::uint64_t>> options;
    while (walk.size() < len) {
        options.clear();
        for (VertexId w : net.neighbors(walk.back())) {
            if (auto t = next_time(net, walk.back(), w, last)) options.emplace_back(w, *t);
        }
        if (options.empty()) return {};
        auto [w, t] = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
        walk.push_back(w);
        last = t;
    }
    return walk;
}

} // namespace

VertexId TemporalNetwork::add_vertex(const std::string& name) {
    if (auto it = ids_.find(name); it != ids_.end()) return it->second;
    auto id = static_cast<VertexId>(names_.size());
    names_.push_back(name);
    ids_.emplace(name, id);
    neighbors_.emplace_back();
    return id;
}

void TemporalNetwork::add_edge(std::uint64_t time, VertexId u, VertexId v) {
    if (u >= names_.size() || v >= names_.size()) {
        throw input_error("edge refers to an unknown vertex");
    }
    if (u == v) {
        throw input_error("self-loop on vertex '" + names_[u] + "'");
    }
    edges_.push_back({time, u, v});
    auto& ts = times_[edge_key(u, v)];
    auto pos = std::lower_bound(ts.begin(), ts.end(), time);
    if (pos == ts.end() || *pos != time) ts.insert(pos, time);
    for (auto [a, b] : {std::pair{u, v}, std::pair{v, u}}) {
        auto& nb = neighbors_[a];
        auto at = std::lower_bound(nb.begin(), nb.end(), b);
        if (at == nb.end() || *at != b) nb.insert(at, b);
    }
}

VertexId TemporalNetwork::id(std::string_view name) const {
    auto it = ids_.find(name);
    if (it == ids_.end()) {
        throw input_error("unknown vertex '" + std::string(name) + "'");
    }
    return it->second;
}

const std::vector<std::uint64_t>& TemporalNetwork::times(VertexId u, VertexId v) const {
    auto it = times_.find(edge_key(u, v));
    return it == times_.end() ? no_times : it->second;
}

TemporalNetwork parse_temporal_network(std::string_view text) {
    TemporalNetwork net;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto fields = split_fields(line);
        if (fields.empty()) continue;

        auto fail = [&](const std::string& what) {
            throw input_error("line " + std::to_string(line_no) + ": " + what);
        };
        if (fields.size() < 3) fail("expected 't u v'");
        std::uint64_t t = 0;
        auto [ptr, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), t);
        if (ec != std::errc() || ptr != fields[0].data() + fields[0].size()) {
            fail("timestamp '" + std::string(fields[0]) + "' is not a nonnegative integer");
        }
        if (fields[1] == fields[2]) fail("self-loop on vertex '" + std::string(fields[1]) + "'");
        VertexId u = net.add_vertex(std::string(fields[1]));
        VertexId v = net.add_vertex(std::string(fields[2]));
        net.add_edge(t, u, v);
    }
    return net;
}

TemporalNetwork load_temporal_network(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw input_error("cannot open network file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_temporal_network(buf.str());
    } catch (const input_error& e) {
        throw input_error(path.string() + ": " + e.what());
    }
}

bool time_respecting(const TemporalNetwork& net, const std::vector<VertexId>& path) {
    for (VertexId v : path) {
        if (v >= net.num_vertices()) {
            throw input_error("unknown vertex id " + std::to_string(v));
        }
    }
    std::optional<std::uint64_t> last;
    for (std::size_t i = 1; i < path.size(); ++i) {
        last = next_time(net, path[i - 1], path[i], last);
        if (!last) return false;
    }
    return true;
}

bool time_respecting(const TemporalNetwork& net, const std::vector<std::string>& path) {
    std::vector<VertexId> ids;
    ids.reserve(path.size());
    for (const auto& name : path) ids.push_back(net.id(name));
    return time_respecting(net, ids);
}

std::size_t longest_time_respecting_walk(const TemporalNetwork& net) {
    if (net.num_vertices() == 0) return 0;
    std::vector<TemporalEdge> edges = net.edges();
    std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) { return a.time < b.time; });
    // best[v]: most vertices on a walk ending at v using timestamps seen so far.
    std::vector<std::size_t> best(net.num_vertices(), 1);
    std::size_t longest = 1;
    for (std::size_t i = 0; i < edges.size();) {
        std::size_t j = i;
        std::vector<std::pair<VertexId, std::size_t>> updates;
        for (; j < edges.size() && edges[j].time == edges[i].time; ++j) {
            updates.emplace_back(edges[j].v, best[edges[j].u] + 1);
            updates.emplace_back(edges[j].u, best[edges[j].v] + 1);
        }
        for (auto [v, len] : updates) {
            best[v] = std::max(best[v], len);
            longest = std::max(longest, len);
        }
        i = j;
    }
    return longest;
}

ContactDataset gen_contact_dataset(const TemporalNetwork& net, std::uint64_t seed, const ContactOptions& options) {
    if (options.min_len < 3 || options.min_len > options.max_len) {
        throw input_error("contact walk lengths need 3 <= min_len <= max_len");
    }
    const std::size_t longest = longest_time_respecting_walk(net);
    if (longest < options.min_len) {
        throw input_error("network too small: longest time-respecting walk has " + std::to_string(longest) +
                          " vertices, need " + std::to_string(options.min_len));
    }
    const std::size_t max_len = std::min(options.max_len, longest);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick_len(options.min_len, max_len);
    std::uniform_int_distribution<VertexId> pick_vertex(0, static_cast<VertexId>(net.num_vertices() - 1));

    auto positive = [&] {
        for (std::size_t attempt = 0; attempt < options.max_attempts; ++attempt) {
            auto walk = random_walk(net, pick_len(rng), rng);
            if (!walk.empty()) return walk;
        }
        throw input_error("could not sample a time-respecting walk in " + std::to_string(options.max_attempts) +
                          " attempts");
    };
    auto negative = [&] {
        for (std::size_t attempt = 0; attempt < options.max_attempts; ++attempt) {
            auto walk = positive();
            std::size_t i = std::uniform_int_distribution<std::size_t>(1, walk.size() - 2)(rng);
            VertexId v = pick_vertex(rng);
            if (v == walk[i]) continue;
            walk[i] = v;
            if (!time_respecting(net, walk)) return walk;
        }
        throw input_error("could not break a walk in " + std::to_string(options.max_attempts) + " attempts");
    };
    auto fill = [&](std::size_t total) {
        // Alternating labels, starting positive.
        std::vector<LabeledSequence> rows(total);
        for (std::size_t k = 0; k < total; ++k) rows[k].label = k % 2 == 0;
        for (auto& row : rows) {
            auto walk = row.label ? positive() : negative();
            if (time_respecting(net, walk) != row.label) {
                throw contract_error("generated contact example has the wrong label");
            }
            row.tokens = to_names(net, walk);
        }
        return rows;
    };

    ContactDataset data;
    const std::size_t train_size = 2 * net.num_edges();
    data.train = fill(train_size);
    data.test = fill((train_size + 4) / 5);
    return data;
}

Dfa build_path_spec_dfa(const TemporalNetwork& net) {
    if (net.num_vertices() == 0) {
        throw input_error("network has no vertices");
    }
    const std::size_t k = net.num_vertices();
    const auto start = static_cast<StateId>(0);
    const auto dead = static_cast<StateId>(k + 1);
    Alphabet alphabet(net.names());
    std::vector<StateId> transitions((k + 2) * k, dead);
    for (VertexId v = 0; v < k; ++v) {
        transitions[start * k + v] = v + 1;
        for (VertexId w : net.neighbors(v)) transitions[(v + 1) * k + w] = w + 1;
    }
    std::vector<bool> accepting(k + 2, true);
    accepting[dead] = false;
    return Dfa(std::move(alphabet), k + 2, start, std::move(accepting), std::move(transitions));
}

} // namespace pdv
