#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wclab {

struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;
    int label = 0; // generator index, or 0 for unlabelled input

    bool operator==(const Edge&) const = default;
};

/// Finite multigraph with explicit vertex IDs. Loops and parallel edges are
/// allowed; a loop contributes 2 to the degree of its vertex.
struct LocalGraph {
    std::vector<std::uint64_t> ids;
    std::vector<Edge> edges;
    std::vector<std::string> label_names;

    LocalGraph() = default;
    explicit LocalGraph(std::size_t n);

    std::size_t size() const { return ids.size(); }
    void add_edge(std::size_t u, std::size_t v, int label = 0);

    /// Neighbour lists; a loop appears once in its own list, parallel edges repeat.
    std::vector<std::vector<std::size_t>> adjacency() const;
    std::vector<std::size_t> degrees() const;
    std::size_t max_degree() const;
    bool has_loops() const;
    bool ids_distinct() const;
    bool is_connected() const;
    /// Sorted list of unordered endpoint pairs, labels ignored.
    std::vector<std::pair<std::size_t, std::size_t>> edge_multiset() const;
};

/// Length of a shortest cycle (loops count 1, parallel edges 2); nullopt for forests.
std::optional<std::size_t> girth(const LocalGraph& g);

std::string to_dot(const LocalGraph& g, std::string_view name = "G");
/// Edge-list text: first line `n`, then `u v` lines, optional `id v value` lines.
std::string to_edge_list(const LocalGraph& g);
LocalGraph parse_edge_list(std::string_view text);
/// Minimal DOT reader: `a -- b` / `a -> b` statements with integer vertex names.
LocalGraph parse_dot(std::string_view text);
/// Dispatches on content: anything containing "graph" and "{" is DOT.
LocalGraph parse_graph(std::string_view text);

} // namespace wclab
