#include "wclab/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <regex>
#include <sstream>

#include "wclab/error.hpp"

namespace wclab {

LocalGraph::LocalGraph(std::size_t n) : ids(n)
{
    for (std::size_t i = 0; i < n; ++i)
        ids[i] = i;
}

void LocalGraph::add_edge(std::size_t u, std::size_t v, int label)
{
    if (u >= size() || v >= size())
        throw Error("edge endpoint out of range");
    edges.push_back({u, v, label});
}

std::vector<std::vector<std::size_t>> LocalGraph::adjacency() const
{
    std::vector<std::vector<std::size_t>> adj(size());
    for (auto& e : edges) {
        adj[e.u].push_back(e.v);
        if (e.u != e.v)
            adj[e.v].push_back(e.u);
    }
    return adj;
}

std::vector<std::size_t> LocalGraph::degrees() const
{
    std::vector<std::size_t> d(size(), 0);
    for (auto& e : edges) {
        ++d[e.u];
        ++d[e.v];
    }
    return d;
}

std::size_t LocalGraph::max_degree() const
{
    auto d = degrees();
    return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

bool LocalGraph::has_loops() const
{
    return std::any_of(edges.begin(), edges.end(), [](const Edge& e) { return e.u == e.v; });
}

bool LocalGraph::ids_distinct() const
{
    auto sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

bool LocalGraph::is_connected() const
{
    if (size() == 0)
        return true;
    auto adj = adjacency();
    std::vector<bool> seen(size(), false);
    std::deque<std::size_t> q{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!q.empty()) {
        auto v = q.front();
        q.pop_front();
        for (auto w : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                q.push_back(w);
            }
    }
    return count == size();
}

std::vector<std::pair<std::size_t, std::size_t>> LocalGraph::edge_multiset() const
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    out.reserve(edges.size());
    for (auto& e : edges)
        out.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::size_t> girth(const LocalGraph& g)
{
    const std::size_t n = g.size();
    // incidence lists of (neighbour, edge id); a loop is listed once
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> inc(n);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        auto& e = g.edges[i];
        if (e.u == e.v)
            return 1;
        inc[e.u].emplace_back(e.v, i);
        inc[e.v].emplace_back(e.u, i);
    }
    constexpr auto inf = std::numeric_limits<std::size_t>::max();
    std::size_t best = inf;
    std::vector<std::size_t> dist(n), via(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), inf);
        dist[s] = 0;
        via[s] = inf;
        std::deque<std::size_t> q{s};
        while (!q.empty()) {
            auto u = q.front();
            q.pop_front();
            if (2 * dist[u] >= best)
                break;
            for (auto [w, id] : inc[u]) {
                if (id == via[u])
                    continue;
                if (dist[w] == inf) {
                    dist[w] = dist[u] + 1;
                    via[w] = id;
                    q.push_back(w);
                } else {
                    best = std::min(best, dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if (best == inf)
        return std::nullopt;
    return best;
}

std::string to_dot(const LocalGraph& g, std::string_view name)
{
    std::ostringstream os;
    os << "graph " << name << " {\n";
    for (std::size_t v = 0; v < g.size(); ++v)
        os << "  " << v << " [id=" << g.ids[v] << "];\n";
    for (auto& e : g.edges) {
        os << "  " << e.u << " -- " << e.v;
        if (e.label >= 0 && static_cast<std::size_t>(e.label) < g.label_names.size())
            os << " [label=\"" << g.label_names[static_cast<std::size_t>(e.label)] << "\"]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

std::string to_edge_list(const LocalGraph& g)
{
    std::ostringstream os;
    os << g.size() << "\n";
    for (auto& e : g.edges)
        os << e.u << " " << e.v << "\n";
    for (std::size_t v = 0; v < g.size(); ++v)
        if (g.ids[v] != v)
            os << "id " << v << " " << g.ids[v] << "\n";
    return os.str();
}

LocalGraph parse_edge_list(std::string_view text)
{
    std::istringstream is{std::string(text)};
    std::string line;
    std::optional<LocalGraph> g;
    while (std::getline(is, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first))
            continue;
        if (!g) {
            g.emplace(std::stoull(first));
            continue;
        }
        if (first == "id") {
            std::size_t v;
            std::uint64_t value;
            if (!(ls >> v >> value) || v >= g->size())
                throw Error("bad id line: " + line);
            g->ids[v] = value;
            continue;
        }
        std::size_t u = std::stoull(first), v;
        if (!(ls >> v))
            throw Error("bad edge line: " + line);
        int label = 0;
        ls >> label;
        g->add_edge(u, v, label);
    }
    if (!g)
        throw Error("empty graph file");
    return *g;
}

LocalGraph parse_dot(std::string_view text)
{
    static const std::regex edge_re(R"((\d+)\s*-[-\>]\s*(\d+))");
    static const std::regex node_re(R"(^\s*(\d+)\s*(\[([^\]]*)\])?\s*;?\s*$)");
    static const std::regex id_re(R"re(id\s*=\s*"?(\d+)"?)re");
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::pair<std::size_t, std::uint64_t>> ids;
    std::size_t n = 0;
    std::istringstream is{std::string(text)};
    std::string line;
    while (std::getline(is, line)) {
        std::smatch m;
        if (std::regex_search(line, m, edge_re)) {
            std::size_t u = std::stoull(m[1]), v = std::stoull(m[2]);
            edges.emplace_back(u, v);
            n = std::max({n, u + 1, v + 1});
        } else if (std::regex_match(line, m, node_re)) {
            std::size_t v = std::stoull(m[1]);
            n = std::max(n, v + 1);
            std::smatch idm;
            std::string attrs = m[3];
            if (std::regex_search(attrs, idm, id_re))
                ids.emplace_back(v, std::stoull(idm[1]));
        }
    }
    LocalGraph g(n);
    for (auto [u, v] : edges)
        g.add_edge(u, v);
    for (auto [v, id] : ids)
        g.ids[v] = id;
    return g;
}

LocalGraph parse_graph(std::string_view text)
{
    if (text.find('{') != std::string_view::npos && text.find("graph") != std::string_view::npos)
        return parse_dot(text);
    return parse_edge_list(text);
}

} // namespace wclab
