#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pdv/automata/dfa.hpp"
#include "pdv/bench/dataset.hpp"

namespace pdv {

using VertexId = std::uint32_t;

struct TemporalEdge {
    std::uint64_t time = 0;
    VertexId u = 0;
    VertexId v = 0;
};

/// Undirected temporal network. Vertex ids are dense and follow first
/// appearance in the input.
class TemporalNetwork {
public:
    TemporalNetwork() = default;

    /// Registers the vertex if new; returns its id.
    VertexId add_vertex(const std::string& name);
    /// Throws input_error on self-loops.
    void add_edge(std::uint64_t time, VertexId u, VertexId v);

    std::size_t num_vertices() const noexcept { return names_.size(); }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    const std::vector<TemporalEdge>& edges() const noexcept { return edges_; }
    const std::string& name(VertexId v) const { return names_.at(v); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    /// Throws input_error for unknown names.
    VertexId id(std::string_view name) const;

    /// Sorted distinct timestamps of edge {u, v}; empty when not adjacent.
    const std::vector<std::uint64_t>& times(VertexId u, VertexId v) const;
    /// Sorted distinct neighbors.
    const std::vector<VertexId>& neighbors(VertexId v) const { return neighbors_.at(v); }
    bool adjacent(VertexId u, VertexId v) const { return !times(u, v).empty(); }

private:
    std::vector<std::string> names_;
    std::map<std::string, VertexId, std::less<>> ids_;
    std::vector<TemporalEdge> edges_;
    std::map<std::pair<VertexId, VertexId>, std::vector<std::uint64_t>> times_;
    std::vector<std::vector<VertexId>> neighbors_;
};

/// Edge list of `t u v` lines; `#` starts a comment, extra columns are
/// ignored. Errors carry the line number.
TemporalNetwork parse_temporal_network(std::string_view text);
TemporalNetwork load_temporal_network(const std::filesystem::path& path);

/// True iff consecutive vertices are adjacent and strictly increasing
/// timestamps can be picked along the path.
///
/// Taking the earliest usable timestamp at every step is exact: any valid
/// assignment can be changed to the greedy one edge by edge without
/// invalidating later edges.
bool time_respecting(const TemporalNetwork& net, const std::vector<VertexId>& path);
/// Same, by vertex name; throws input_error for unknown vertices.
bool time_respecting(const TemporalNetwork& net, const std::vector<std::string>& path);

/// Vertex count of the longest time-respecting walk.
std::size_t longest_time_respecting_walk(const TemporalNetwork& net);

struct ContactOptions {
    std::size_t min_len = 5;
    std::size_t max_len = 15;
    /// Random attempts per example before giving up.
    std::size_t max_attempts = 100'000;
};

struct ContactDataset {
    std::vector<LabeledSequence> train;
    std::vector<LabeledSequence> test;
};

/// Positive examples are random time-respecting walks (each step uses the
/// earliest timestamp later than the previous one); negatives replace one
/// interior vertex of a positive so the walk stops being time-respecting.
/// Train has 2|E| examples, test ceil(train/5), both balanced 1:1 (the
/// extra odd example is positive). Lengths are uniform in
/// [min_len, min(max_len, longest walk)]. Throws input_error when no walk
/// of min_len vertices exists.
ContactDataset gen_contact_dataset(const TemporalNetwork& net, std::uint64_t seed, const ContactOptions& options = {});

/// DFA over the vertex names accepting every walk of the static graph:
/// a start state, one state per vertex and a rejecting sink.
Dfa build_path_spec_dfa(const TemporalNetwork& net);

} // namespace pdv
