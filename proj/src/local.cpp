#include "wclab/local.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <map>

namespace wclab {

std::size_t log_star(std::uint64_t x)
{
    std::size_t k = 0;
    double v = static_cast<double>(x);
    while (v > 1.0) {
        v = std::log2(v);
        ++k;
    }
    return k;
}

std::size_t cole_vishkin_constant(std::size_t max_degree)
{
    if (max_degree <= 2)
        return 10;
    std::size_t p = 1;
    for (std::size_t i = 0; i < max_degree; ++i)
        p *= 3;
    return 5 + p - max_degree;
}

bool is_proper_coloring(const LocalGraph& g, const std::vector<std::uint32_t>& colors)
{
    if (colors.size() != g.size())
        return false;
    for (auto& e : g.edges)
        if (colors[e.u] == colors[e.v])
            return false;
    return true;
}

namespace {

std::vector<std::vector<std::size_t>> simple_neighbours(const LocalGraph& g)
{
    std::vector<std::vector<std::size_t>> nb(g.size());
    for (auto& e : g.edges) {
        if (e.u >= g.size() || e.v >= g.size())
            throw Error("edge endpoint out of range");
        nb[e.u].push_back(e.v);
        nb[e.v].push_back(e.u);
    }
    for (auto& l : nb) {
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
    }
    return nb;
}

// One Cole-Vishkin step: the index of the lowest bit where c differs from
// the parent color, doubled, plus that bit of c. Roots use index 0.
std::uint64_t cv_step(std::uint64_t c, std::optional<std::uint64_t> parent)
{
    if (!parent)
        return c & 1;
    auto i = static_cast<std::uint64_t>(std::countr_zero(c ^ *parent));
    return 2 * i + ((c >> i) & 1);
}

// Color bounds B_0 = maxID + 1, B_{j+1} = 2 * bits(B_j) until B <= 6.
std::vector<std::uint64_t> cv_bounds(std::uint64_t max_id)
{
    std::vector<std::uint64_t> b{max_id + 1};
    while (b.back() > 6)
        b.push_back(2 * static_cast<std::uint64_t>(std::bit_width(b.back() - 1)));
    return b;
}

std::size_t bits(std::uint64_t x)
{
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::bit_width(x)));
}

std::uint64_t max_of(const std::vector<std::uint64_t>& v)
{
    return v.empty() ? 0 : *std::max_element(v.begin(), v.end());
}

// Vertices of color t (an independent set) move to the least color in
// [0, target) not held by a neighbour.
void reduce_class(const std::vector<std::vector<std::size_t>>& nb, std::vector<std::uint64_t>& color,
                  std::uint64_t t, std::uint64_t target)
{
    const auto prev = color;
    for (std::size_t v = 0; v < nb.size(); ++v) {
        if (prev[v] != t)
            continue;
        std::vector<bool> used(target, false);
        for (auto u : nb[v])
            if (prev[u] < target)
                used[prev[u]] = true;
        std::uint64_t c = 0;
        while (c < target && used[c])
            ++c;
        if (c == target)
            throw Error("internal: no free color in class reduction");
        color[v] = c;
    }
}

} // namespace

RoundTrace cole_vishkin_color(const LocalGraph& g)
{
    if (!g.ids_distinct())
        throw Error("LOCAL coloring needs distinct vertex IDs");
    if (g.has_loops())
        throw Error("a graph with loops has no proper coloring");
    const std::size_t n = g.size();
    auto nb = simple_neighbours(g);
    std::size_t delta = 0;
    for (auto& l : nb)
        delta = std::max(delta, l.size());
    RoundTrace trace;
    if (n == 0 || delta == 0) {
        trace.coloring.assign(n, 0);
        return trace;
    }
    const auto& id = g.ids;
    const std::uint64_t max_id = *std::max_element(id.begin(), id.end());
    const auto bounds = cv_bounds(max_id);
    const std::size_t k = bounds.size() - 1;
    auto log_round = [&](std::string phase, std::uint64_t max_color, std::size_t msg_bits) {
        trace.per_round.push_back({std::move(phase), max_color, msg_bits});
    };

    // Higher neighbours in increasing ID order; all of them are known after round 1.
    std::vector<std::vector<std::size_t>> higher(n);
    for (std::size_t v = 0; v < n; ++v) {
        for (auto u : nb[v])
            if (id[u] > id[v])
                higher[v].push_back(u);
        std::sort(higher[v].begin(), higher[v].end(),
                  [&](std::size_t a, std::size_t b) { return id[a] < id[b]; });
    }

    std::vector<std::uint64_t> final_color(n);
    if (delta <= 2) {
        // Forest F1: parent is the unique higher neighbour, or the larger of
        // two. The remaining edges join a local minimum to its smaller higher
        // neighbour; flagging those local minima 2-colors them.
        std::vector<std::optional<std::size_t>> parent(n);
        std::vector<std::uint64_t> flag(n, 0);
        for (std::size_t v = 0; v < n; ++v) {
            if (!higher[v].empty())
                parent[v] = higher[v].back();
            if (higher[v].size() == 2)
                flag[v] = 1;
        }
        std::vector<std::uint64_t> c1(id.begin(), id.end());
        for (std::size_t it = 0; it < k; ++it) {
            const auto prev = c1;
            for (std::size_t v = 0; v < n; ++v)
                c1[v] = cv_step(prev[v], parent[v] ? std::optional(prev[*parent[v]]) : std::nullopt);
            log_round(it == 0 ? "exchange ids, cole-vishkin" : "cole-vishkin", max_of(c1), bits(max_of(prev)));
        }
        if (k == 0)
            log_round("exchange ids", max_of(c1), bits(max_id));
        std::vector<std::uint64_t> color(n);
        for (std::size_t v = 0; v < n; ++v)
            color[v] = 2 * c1[v] + flag[v];
        const std::uint64_t target = delta + 1;
        for (std::uint64_t t = 2 * bounds.back(); t-- > target;) {
            reduce_class(nb, color, t, target);
            log_round("reduce class " + std::to_string(t), max_of(color), bits(2 * bounds.back()));
        }
        final_color = std::move(color);
    } else {
        // Forest F_j: parent is the j-th higher neighbour.
        const std::size_t f = delta;
        std::vector<std::vector<std::uint64_t>> c(f, std::vector<std::uint64_t>(id.begin(), id.end()));
        auto parent = [&](std::size_t j, std::size_t v) -> std::optional<std::size_t> {
            if (j < higher[v].size())
                return higher[v][j];
            return std::nullopt;
        };
        for (std::size_t it = 0; it < k; ++it) {
            std::uint64_t mx = 0, sent = 0;
            for (std::size_t j = 0; j < f; ++j) {
                const auto prev = c[j];
                sent = std::max(sent, max_of(prev));
                for (std::size_t v = 0; v < n; ++v) {
                    auto p = parent(j, v);
                    c[j][v] = cv_step(prev[v], p ? std::optional(prev[*p]) : std::nullopt);
                }
                mx = std::max(mx, max_of(c[j]));
            }
            log_round(it == 0 ? "exchange ids, cole-vishkin" : "cole-vishkin", mx, f * bits(sent));
        }
        if (k == 0)
            log_round("exchange ids", max_id, bits(max_id));
        // Shift down, then move class t into {0,1,2}; two rounds per class.
        for (std::uint64_t t = 5; t >= 3; --t) {
            for (std::size_t j = 0; j < f; ++j) {
                const auto prev = c[j];
                for (std::size_t v = 0; v < n; ++v) {
                    auto p = parent(j, v);
                    c[j][v] = p ? prev[*p] : (prev[v] == 0 ? 1 : 0);
                }
            }
            log_round("shift down", 5, f * 3);
            for (std::size_t j = 0; j < f; ++j) {
                const auto shifted = c[j];
                for (std::size_t v = 0; v < n; ++v) {
                    if (shifted[v] != t)
                        continue;
                    std::vector<bool> used(3, false);
                    if (auto p = parent(j, v); p && shifted[*p] < 3)
                        used[shifted[*p]] = true;
                    for (auto u : nb[v])
                        if (parent(j, u) == v && shifted[u] < 3)
                            used[shifted[u]] = true;
                    std::uint64_t nc = 0;
                    while (used[nc])
                        ++nc;
                    c[j][v] = nc;
                }
            }
            log_round("recolor class " + std::to_string(t), t - 1, f * 3);
        }
        std::vector<std::uint64_t> color(n, 0);
        std::uint64_t classes = 1;
        for (std::size_t j = 0; j < f; ++j)
            classes *= 3;
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t j = f; j-- > 0;)
                color[v] = color[v] * 3 + c[j][v];
        const std::uint64_t target = delta + 1;
        for (std::uint64_t t = classes; t-- > target;) {
            reduce_class(nb, color, t, target);
            log_round("reduce class " + std::to_string(t), max_of(color), bits(classes));
        }
        final_color = std::move(color);
    }
    trace.rounds = trace.per_round.size();
    trace.coloring.assign(final_color.begin(), final_color.end());
    if (!is_proper_coloring(g, trace.coloring))
        throw Error("internal: distributed coloring is not proper");
    return trace;
}

Labelling greedy_extend_coloring(const FiniteAction& a, const Window& w,
                                 const std::vector<std::optional<Symbol>>& partial)
{
    if (!w.is_symmetric())
        throw Error("greedy coloring needs a symmetric window");
    const GroupSpec& g = a.spec();
    const std::size_t n = a.size();
    if (partial.size() != n)
        throw Error("partial coloring has the wrong number of points");
    std::vector<Permutation> maps;
    for (auto& d : w)
        if (!g.is_identity(d))
            maps.push_back(a.permutation_of(d));
    const std::size_t k = maps.size() + 1;
    for (Point x = 0; x < n; ++x) {
        for (auto& m : maps) {
            if (m[x] == x && !partial[x])
                throw Error("uncolored point " + std::to_string(x) + " carries a loop");
            if (partial[x] && partial[m[x]] && *partial[x] == *partial[m[x]])
                throw Error("partial coloring is not proper at point " + std::to_string(x));
        }
        if (partial[x] && *partial[x] >= k)
            throw Error("partial coloring uses a color beyond |W \\ {id}| + 1");
    }
    std::vector<std::optional<Symbol>> color = partial;
    auto paint = [&](Point x) {
        std::vector<bool> used(k, false);
        for (auto& m : maps)
            if (color[m[x]])
                used[*color[m[x]]] = true;
        Symbol c = 0;
        while (used[c])
            ++c;
        color[x] = c;
    };
    std::vector<bool> seen(n, false);
    for (Point start = 0; start < n; ++start) {
        if (color[start] || seen[start])
            continue;
        std::deque<Point> q{start};
        seen[start] = true;
        while (!q.empty()) {
            Point x = q.front();
            q.pop_front();
            paint(x);
            for (auto& m : maps) {
                Point y = m[x];
                if (!color[y] && !seen[y]) {
                    seen[y] = true;
                    q.push_back(y);
                }
            }
        }
    }
    Labelling f{k, std::vector<Symbol>(n)};
    for (Point x = 0; x < n; ++x)
        f.colors[x] = *color[x];
    return f;
}

namespace {

struct Incidence {
    std::size_t other;
    std::size_t edge;
};

IdBall ball_of(const LocalGraph& g, const std::vector<std::vector<Incidence>>& inc, std::size_t v,
               std::size_t r)
{
    std::map<std::size_t, std::size_t> dist{{v, 0}};
    std::deque<std::size_t> q{v};
    std::vector<std::size_t> edges;
    while (!q.empty()) {
        auto u = q.front();
        q.pop_front();
        if (dist[u] == r)
            continue;
        for (auto [x, e] : inc[u]) {
            edges.push_back(e);
            if (dist.emplace(x, dist[u] + 1).second)
                q.push_back(x);
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    IdBall b;
    b.center = g.ids[v];
    for (auto& [u, d] : dist)
        b.vertices.push_back(g.ids[u]);
    for (auto e : edges) {
        auto x = g.ids[g.edges[e].u], y = g.ids[g.edges[e].v];
        b.edges.emplace_back(std::min(x, y), std::max(x, y));
    }
    std::sort(b.vertices.begin(), b.vertices.end());
    std::sort(b.edges.begin(), b.edges.end());
    return b;
}

std::vector<std::vector<Incidence>> incidence(const LocalGraph& g)
{
    std::vector<std::vector<Incidence>> inc(g.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        inc[g.edges[e].u].push_back({g.edges[e].v, e});
        if (g.edges[e].u != g.edges[e].v)
            inc[g.edges[e].v].push_back({g.edges[e].u, e});
    }
    return inc;
}

} // namespace

IdBall id_ball(const LocalGraph& g, std::size_t v, std::size_t r)
{
    if (v >= g.size())
        throw Error("vertex out of range");
    return ball_of(g, incidence(g), v, r);
}

std::vector<std::uint64_t> simulate_local(const LocalAlgorithm& alg, const LocalGraph& g, std::size_t r)
{
    if (!g.ids_distinct())
        throw Error("LOCAL simulation needs distinct vertex IDs");
    auto inc = incidence(g);
    std::vector<std::uint64_t> out(g.size());
    for (std::size_t v = 0; v < g.size(); ++v)
        out[v] = alg(ball_of(g, inc, v, r));
    return out;
}

} // namespace wclab
