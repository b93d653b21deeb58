#include "wclab/sft.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace wclab {

SftSpec SftSpec::explicit_patterns(GroupSpec group, std::vector<std::string> alphabet, Window window,
                                   std::vector<Pattern> allowed)
{
    if (alphabet.empty())
        throw Error("SFT alphabet is empty");
    if (!(window.spec() == group))
        throw Error("SFT window is not over the SFT group");
    for (auto& p : allowed) {
        if (p.size() != window.size())
            throw Error("allowed pattern does not fit the window");
        for (auto s : p)
            if (s >= alphabet.size())
                throw Error("allowed pattern uses an unknown symbol");
    }
    std::sort(allowed.begin(), allowed.end());
    allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
    SftSpec x(std::move(group));
    x.alphabet_ = std::move(alphabet);
    x.window_ = std::move(window);
    x.allowed_ = std::move(allowed);
    return x;
}

SftSpec SftSpec::pairwise(GroupSpec group, std::vector<std::string> alphabet, std::vector<PairRule> rules)
{
    if (alphabet.empty())
        throw Error("SFT alphabet is empty");
    std::vector<GroupElem> elems{group.identity()};
    std::sort(rules.begin(), rules.end(),
              [](const PairRule& a, const PairRule& b) { return a.offset < b.offset; });
    for (std::size_t i = 0; i < rules.size(); ++i) {
        if (!group.contains(rules[i].offset) || group.is_identity(rules[i].offset))
            throw Error("pair rule offset must be a nonidentity group element");
        if (i && rules[i].offset == rules[i - 1].offset)
            throw Error("duplicate pair rule offset");
        if (rules[i].compat->alphabet() != alphabet.size())
            throw Error("pair rule alphabet mismatch");
        elems.push_back(rules[i].offset);
    }
    SftSpec x(group);
    x.alphabet_ = std::move(alphabet);
    x.window_ = Window(group, std::move(elems));
    x.pairwise_ = true;
    x.rules_ = std::move(rules);
    return x;
}

bool SftSpec::allows(const Pattern& p) const
{
    if (p.size() != window_.size())
        return false;
    for (auto s : p)
        if (s >= alphabet_.size())
            return false;
    if (!pairwise_)
        return std::binary_search(allowed_.begin(), allowed_.end(), p);
    std::size_t id = window_.index_of(group_.identity());
    for (auto& r : rules_)
        if (!r.compat->allowed(p[id], p[window_.index_of(r.offset)]))
            return false;
    return true;
}

std::size_t SftSpec::symbol_index(std::string_view name) const
{
    for (std::size_t i = 0; i < alphabet_.size(); ++i)
        if (alphabet_[i] == name)
            return i;
    return alphabet_.size();
}

SftSpec SftSpec::to_explicit(std::size_t max_patterns) const
{
    if (!pairwise_)
        return *this;
    const std::size_t a = alphabet_.size(), w = window_.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < w; ++i) {
        if (total > max_patterns / a)
            throw Error("SFT too large to list explicitly");
        total *= a;
    }
    std::vector<Pattern> allowed;
    Pattern p(w, 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t v = idx;
        for (std::size_t i = w; i-- > 0;) {
            p[i] = static_cast<Symbol>(v % a);
            v /= a;
        }
        if (allows(p))
            allowed.push_back(p);
    }
    return explicit_patterns(group_, alphabet_, window_, std::move(allowed));
}

namespace {

std::vector<std::string> numeric_alphabet(std::size_t k)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < k; ++i)
        names.push_back(std::to_string(i));
    return names;
}

} // namespace

SftSpec full_shift(const GroupSpec& g, std::size_t k)
{
    if (k == 0)
        throw Error("full shift needs a symbol");
    std::vector<Pattern> allowed;
    for (std::size_t s = 0; s < k; ++s)
        allowed.push_back({static_cast<Symbol>(s)});
    return SftSpec::explicit_patterns(g, numeric_alphabet(k), Window(g, {g.identity()}), allowed);
}

SftSpec period_sft(std::size_t p)
{
    if (p == 0)
        throw Error("period must be positive");
    auto z = GroupSpec::free_abelian(1);
    std::vector<Pattern> allowed;
    for (std::size_t i = 0; i < p; ++i)
        allowed.push_back({static_cast<Symbol>(i), static_cast<Symbol>((i + 1) % p)});
    return SftSpec::explicit_patterns(z, numeric_alphabet(p), Window(z, {z.elem({0}), z.elem({1})}),
                                      allowed);
}

SftSpec golden_mean_sft()
{
    auto z = GroupSpec::free_abelian(1);
    return SftSpec::explicit_patterns(z, numeric_alphabet(2), Window(z, {z.elem({0}), z.elem({1})}),
                                      {{0, 0}, {0, 1}, {1, 0}});
}

SftSpec proper_coloring_sft(const Window& w)
{
    if (!w.is_symmetric())
        throw Error("proper coloring shift needs a symmetric window");
    const GroupSpec& g = w.spec();
    std::vector<GroupElem> offsets;
    for (auto& d : w)
        if (!g.is_identity(d))
            offsets.push_back(d);
    const std::size_t k = offsets.size() + 1;
    auto differ = std::make_shared<CompatMatrix>(k);
    for (std::size_t s = 0; s < k; ++s)
        for (std::size_t t = 0; t < k; ++t)
            if (s != t)
                differ->allow(static_cast<Symbol>(s), static_cast<Symbol>(t));
    std::vector<PairRule> rules;
    for (auto& d : offsets)
        rules.push_back({d, differ});
    return SftSpec::pairwise(g, numeric_alphabet(k), std::move(rules));
}

namespace {

std::vector<GroupElem> canonical_piece(const GroupSpec& g, const std::vector<GroupElem>& cells)
{
    std::vector<GroupElem> best;
    for (auto& c : cells) {
        GroupElem ci = g.inv(c);
        std::vector<GroupElem> t;
        t.reserve(cells.size());
        for (auto& x : cells)
            t.push_back(g.mul(x, ci));
        std::sort(t.begin(), t.end());
        if (best.empty() || t < best)
            best = std::move(t);
    }
    return best;
}

} // namespace

std::vector<std::vector<GroupElem>> enumerate_pieces(const GroupSpec& g, std::size_t p)
{
    if (p == 0)
        throw Error("piece size must be positive");
    auto gens = g.symmetric_generators();
    std::set<std::vector<GroupElem>> layer{{g.identity()}};
    for (std::size_t size = 1; size < p; ++size) {
        std::set<std::vector<GroupElem>> next;
        for (auto& piece : layer)
            for (auto& c : piece)
                for (auto& s : gens) {
                    GroupElem d = g.mul(s, c);
                    if (std::binary_search(piece.begin(), piece.end(), d))
                        continue;
                    auto grown = piece;
                    grown.push_back(d);
                    next.insert(canonical_piece(g, grown));
                }
        layer = std::move(next);
    }
    return {layer.begin(), layer.end()};
}

SftSpec tiling_sft(const GroupSpec& g, std::size_t p)
{
    bool z2 = g.family() == Family::free_abelian && g.params()[0] <= 2;
    bool fk = g.family() == Family::free;
    if (!z2 && !fk)
        throw Error("tiling shifts are provided for Z, Z^2 and free groups");
    std::size_t max_p = z2 ? tiling_max_p_z2 : tiling_max_p_free;
    if (p < 1 || p > max_p)
        throw Error("tiling shift piece size must lie in [1, " + std::to_string(max_p) + "]");
    auto pieces = enumerate_pieces(g, p);
    std::vector<std::string> names;
    std::vector<std::pair<std::size_t, std::size_t>> sym; // (piece, cell)
    for (std::size_t i = 0; i < pieces.size(); ++i)
        for (std::size_t j = 0; j < p; ++j) {
            names.push_back("P" + std::to_string(i) + "c" + std::to_string(j));
            sym.emplace_back(i, j);
        }
    auto symbol_of = [&](std::size_t piece, std::size_t cell) { return piece * p + cell; };
    std::vector<PairRule> rules;
    for (auto& d : g.symmetric_generators()) {
        GroupElem dinv = g.inv(d);
        auto m = std::make_shared<CompatMatrix>(names.size());
        for (std::size_t s = 0; s < names.size(); ++s) {
            auto& piece = pieces[sym[s].first];
            GroupElem next = g.mul(d, piece[sym[s].second]);
            auto it = std::lower_bound(piece.begin(), piece.end(), next);
            if (it != piece.end() && *it == next) {
                m->allow(static_cast<Symbol>(s),
                         static_cast<Symbol>(symbol_of(sym[s].first, static_cast<std::size_t>(it - piece.begin()))));
                continue;
            }
            // The neighbour belongs to another copy, which must not claim this point.
            for (std::size_t t = 0; t < names.size(); ++t) {
                auto& other = pieces[sym[t].first];
                GroupElem back = g.mul(dinv, other[sym[t].second]);
                if (!std::binary_search(other.begin(), other.end(), back))
                    m->allow(static_cast<Symbol>(s), static_cast<Symbol>(t));
            }
        }
        rules.push_back({d, m});
    }
    return SftSpec::pairwise(g, std::move(names), std::move(rules));
}

SftSpec tiling_sft_z2(std::size_t p)
{
    return tiling_sft(GroupSpec::free_abelian(2), p);
}

SftSpec tiling_sft_free(std::size_t p)
{
    return tiling_sft(GroupSpec::free(2), p);
}

SftSpec period_forcing_sft_z2(std::size_t q)
{
    if (q == 0)
        throw Error("period must be positive");
    auto g = GroupSpec::free_abelian(2);
    auto step = std::make_shared<CompatMatrix>(q);
    auto same = std::make_shared<CompatMatrix>(q);
    for (std::size_t s = 0; s < q; ++s) {
        step->allow(static_cast<Symbol>(s), static_cast<Symbol>((s + 1) % q));
        same->allow(static_cast<Symbol>(s), static_cast<Symbol>(s));
    }
    return SftSpec::pairwise(g, numeric_alphabet(q),
                             {{g.elem({1, 0}), step}, {g.elem({0, 1}), same}});
}

SftSpec translate_window(const SftSpec& x, const GroupElem& t)
{
    if (x.is_pairwise())
        throw Error("window translation needs an SFT in explicit form");
    const GroupSpec& g = x.group();
    std::vector<GroupElem> moved;
    for (auto& w : x.window())
        moved.push_back(g.mul(w, t));
    Window nw(g, moved);
    if (nw.size() != x.window().size())
        throw Error("translated window collapsed");
    std::vector<std::size_t> where(moved.size());
    for (std::size_t i = 0; i < moved.size(); ++i)
        where[i] = nw.index_of(moved[i]);
    std::vector<Pattern> allowed;
    for (auto& p : x.allowed()) {
        Pattern q(p.size());
        for (std::size_t i = 0; i < p.size(); ++i)
            q[where[i]] = p[i];
        allowed.push_back(std::move(q));
    }
    return SftSpec::explicit_patterns(g, x.alphabet(), nw, std::move(allowed));
}

std::optional<std::size_t> counting_obstruction(const FiniteAction& a, const SftSpec& x)
{
    const std::size_t k = x.alphabet_size();
    std::vector<char> dead(k, 0);
    std::vector<std::vector<std::size_t>> le(k); // le[s] holds t with #s <= #t
    auto use_relation = [&](const std::vector<char>& rel) {
        for (std::size_t s = 0; s < k; ++s) {
            std::size_t fwd = 0, bwd = 0, last_t = 0, last_s = 0;
            for (std::size_t t = 0; t < k; ++t) {
                if (rel[s * k + t])
                    ++fwd, last_t = t;
                if (rel[t * k + s])
                    ++bwd, last_s = t;
            }
            if (fwd == 0 || bwd == 0)
                dead[s] = 1;
            if (fwd == 1)
                le[s].push_back(last_t);
            if (bwd == 1)
                le[s].push_back(last_s);
        }
    };
    if (x.is_pairwise()) {
        for (auto& r : x.rules()) {
            std::vector<char> rel(k * k);
            for (std::size_t s = 0; s < k; ++s)
                for (std::size_t t = 0; t < k; ++t)
                    rel[s * k + t] = r.compat->allowed(static_cast<Symbol>(s), static_cast<Symbol>(t));
            use_relation(rel);
        }
    } else {
        const std::size_t w = x.window().size();
        for (std::size_t i = 0; i < w; ++i) {
            std::vector<char> seen(k, 0);
            for (auto& p : x.allowed())
                seen[p[i]] = 1;
            for (std::size_t s = 0; s < k; ++s)
                if (!seen[s])
                    dead[s] = 1;
            for (std::size_t j = 0; j < w; ++j) {
                if (j == i)
                    continue;
                std::vector<char> rel(k * k);
                for (auto& p : x.allowed())
                    rel[p[i] * k + p[j]] = 1;
                use_relation(rel);
            }
        }
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t s = 0; s < k; ++s)
            if (!dead[s])
                for (auto t : le[s])
                    if (dead[t]) {
                        dead[s] = 1;
                        changed = true;
                        break;
                    }
    }
    // Classes: mutually reachable live symbols.
    std::vector<std::vector<char>> reach(k, std::vector<char>(k, 0));
    for (std::size_t s = 0; s < k; ++s) {
        if (dead[s])
            continue;
        std::vector<std::size_t> stack{s};
        reach[s][s] = 1;
        while (!stack.empty()) {
            auto u = stack.back();
            stack.pop_back();
            for (auto t : le[u])
                if (!dead[t] && !reach[s][t]) {
                    reach[s][t] = 1;
                    stack.push_back(t);
                }
        }
    }
    std::vector<std::size_t> sizes;
    std::vector<char> placed(k, 0);
    for (std::size_t s = 0; s < k; ++s) {
        if (dead[s] || placed[s])
            continue;
        std::size_t size = 0;
        for (std::size_t t = s; t < k; ++t)
            if (reach[s][t] && reach[t][s]) {
                placed[t] = 1;
                ++size;
            }
        sizes.push_back(size);
    }
    for (auto& orbit : orbits(a)) {
        std::vector<char> sum(orbit.size() + 1, 0);
        sum[0] = 1;
        for (std::size_t v = 1; v <= orbit.size(); ++v)
            for (auto c : sizes)
                if (c <= v && sum[v - c]) {
                    sum[v] = 1;
                    break;
                }
        if (!sum[orbit.size()])
            return orbit.size();
    }
    return std::nullopt;
}

HomCertificate hom_exists(const FiniteAction& a, const SftSpec& x, const std::vector<Pattern>& hits,
                          std::uint64_t node_budget)
{
    if (!(a.spec() == x.group()))
        throw Error("SFT group " + x.group().to_string() + " does not match action group " +
                    a.spec().to_string());
    for (auto& h : hits) {
        if (h.size() != x.window().size())
            throw Error("hit pattern does not fit the SFT window");
        for (auto s : h)
            if (s >= x.alphabet_size())
                throw Error("hit pattern uses an unknown symbol");
    }
    const std::size_t n = a.size();
    auto maps = window_maps(a, x.window());
    if (counting_obstruction(a, x)) {
        HomCertificate cert;
        cert.verdict = Verdict::no;
        cert.by_counting = true;
        return cert;
    }
    Csp csp(n, x.alphabet_size());
    if (x.is_pairwise()) {
        for (auto& r : x.rules()) {
            Permutation d = a.permutation_of(r.offset);
            for (Point p = 0; p < n; ++p)
                csp.add_binary(p, d[p], r.compat);
        }
    } else {
        auto tuples = std::make_shared<const std::vector<std::vector<Symbol>>>(x.allowed());
        for (Point p = 0; p < n; ++p) {
            std::vector<std::size_t> scope(maps.size());
            for (std::size_t i = 0; i < maps.size(); ++i)
                scope[i] = maps[i][p];
            csp.add_table(std::move(scope), tuples);
        }
    }
    for (auto& h : hits) {
        std::vector<std::vector<std::size_t>> locations;
        if (x.allows(h))
            for (Point p = 0; p < n; ++p) {
                std::vector<std::size_t> loc(maps.size());
                for (std::size_t i = 0; i < maps.size(); ++i)
                    loc[i] = maps[i][p];
                locations.push_back(std::move(loc));
            }
        csp.add_cover(std::move(locations), h);
    }
    // Translations by an abelian group commute with the action and permute
    // homomorphisms; on a transitive action any point can be moved to 0.
    if (n > 0 && a.spec().is_abelian() && is_transitive(a))
        csp.set_anchor(0);
    CspResult r = csp.solve(node_budget);
    HomCertificate cert;
    cert.verdict = r.verdict;
    cert.nodes = r.nodes;
    if (r.verdict != Verdict::yes)
        return cert;
    Labelling f{x.alphabet_size(), std::move(r.assignment)};
    if (!verify_hom(f, a, x))
        throw Error("internal: solver witness violates the SFT");
    for (auto& h : hits) {
        Point where = static_cast<Point>(n);
        for (Point p = 0; p < n && where == n; ++p)
            if (pattern_at(maps, f, p) == h)
                where = p;
        if (where == n)
            throw Error("internal: solver witness misses a required pattern");
        cert.hit_points.push_back(where);
    }
    cert.labelling = std::move(f);
    return cert;
}

bool verify_hom(const Labelling& f, const FiniteAction& a, const SftSpec& x)
{
    if (f.colors.size() != a.size() || !(a.spec() == x.group()))
        return false;
    for (auto c : f.colors)
        if (c >= x.alphabet_size())
            return false;
    if (x.is_pairwise()) {
        for (auto& r : x.rules()) {
            Permutation d = a.permutation_of(r.offset);
            for (Point p = 0; p < a.size(); ++p)
                if (!r.compat->allowed(f.colors[p], f.colors[d[p]]))
                    return false;
        }
        return true;
    }
    auto maps = window_maps(a, x.window());
    for (Point p = 0; p < a.size(); ++p)
        if (!x.allows(pattern_at(maps, f, p)))
            return false;
    return true;
}

namespace {

// De Bruijn transfer graph of a Z-SFT whose window was normalized to an
// interval {0..l-1}: nodes are words of length l-1 (base-|A| integers),
// and each admissible word of length l is an edge labelled by its first symbol.
struct TransferGraph {
    std::size_t nodes = 0;
    struct Arc {
        std::size_t to;
        Symbol label;
    };
    std::vector<std::vector<Arc>> out;
    bool empty_window = false;
    bool anything_allowed = false;
};

TransferGraph transfer_graph(const SftSpec& sft)
{
    if (!(sft.group() == GroupSpec::free_abelian(1)))
        throw Error("transfer graphs need an SFT over Z");
    SftSpec x = sft.to_explicit();
    TransferGraph tg;
    const std::size_t a = x.alphabet_size();
    if (x.window().size() == 0) {
        tg.empty_window = true;
        tg.anything_allowed = !x.allowed().empty();
        return tg;
    }
    std::int64_t lo = x.window()[0].payload[0];
    std::int64_t hi = x.window()[x.window().size() - 1].payload[0];
    const std::size_t len = static_cast<std::size_t>(hi - lo + 1);
    std::size_t words = 1;
    for (std::size_t i = 0; i + 1 < len; ++i) {
        if (words > (std::size_t{1} << 22) / a)
            throw Error("transfer graph too large");
        words *= a;
    }
    tg.nodes = words;
    tg.out.assign(words, {});
    std::vector<std::size_t> slot(x.window().size());
    for (std::size_t i = 0; i < slot.size(); ++i)
        slot[i] = static_cast<std::size_t>(x.window()[i].payload[0] - lo);
    std::vector<bool> fixed(len, false);
    for (auto s : slot)
        fixed[s] = true;
    std::vector<std::size_t> gaps;
    for (std::size_t i = 0; i < len; ++i)
        if (!fixed[i])
            gaps.push_back(i);
    std::set<std::vector<Symbol>> seen;
    for (auto& p : x.allowed()) {
        std::vector<Symbol> word(len, 0);
        for (std::size_t i = 0; i < slot.size(); ++i)
            word[slot[i]] = p[i];
        // fill the gaps with every combination
        std::vector<Symbol> fill(gaps.size(), 0);
        while (true) {
            for (std::size_t i = 0; i < gaps.size(); ++i)
                word[gaps[i]] = fill[i];
            seen.insert(word);
            std::size_t i = gaps.size();
            while (i > 0 && fill[i - 1] + 1 == a)
                fill[--i] = 0;
            if (i == 0)
                break;
            ++fill[i - 1];
        }
    }
    for (auto& word : seen) {
        std::size_t from = 0, to = 0;
        for (std::size_t i = 0; i + 1 < len; ++i)
            from = from * a + word[i];
        for (std::size_t i = 1; i < len; ++i)
            to = to * a + word[i];
        tg.out[from].push_back({to, word[0]});
    }
    tg.anything_allowed = !seen.empty();
    return tg;
}

} // namespace

ZNonempty nonempty_z(const SftSpec& x)
{
    TransferGraph tg = transfer_graph(x);
    ZNonempty r;
    if (tg.empty_window) {
        r.nonempty = tg.anything_allowed;
        if (r.nonempty)
            r.witness = {0};
        return r;
    }
    std::size_t best_len = 0;
    for (std::size_t s = 0; s < tg.nodes; ++s) {
        if (tg.out[s].empty())
            continue;
        // BFS from s until an arc returns to s.
        std::vector<std::size_t> dist(tg.nodes, SIZE_MAX), parent(tg.nodes, SIZE_MAX);
        std::vector<Symbol> via(tg.nodes, 0);
        std::deque<std::size_t> q{s};
        dist[s] = 0;
        std::size_t close_from = SIZE_MAX;
        Symbol close_label = 0;
        while (!q.empty() && close_from == SIZE_MAX) {
            std::size_t u = q.front();
            q.pop_front();
            if (best_len && dist[u] + 1 >= best_len)
                break;
            for (auto& arc : tg.out[u]) {
                if (arc.to == s) {
                    close_from = u;
                    close_label = arc.label;
                    break;
                }
                if (dist[arc.to] == SIZE_MAX) {
                    dist[arc.to] = dist[u] + 1;
                    parent[arc.to] = u;
                    via[arc.to] = arc.label;
                    q.push_back(arc.to);
                }
            }
        }
        if (close_from == SIZE_MAX)
            continue;
        std::vector<Symbol> word{close_label};
        for (std::size_t v = close_from; v != s; v = parent[v])
            word.push_back(via[v]);
        std::reverse(word.begin(), word.end());
        if (!best_len || word.size() < best_len) {
            best_len = word.size();
            r.witness = std::move(word);
        }
    }
    r.nonempty = best_len > 0;
    if (r.nonempty) {
        Labelling f{x.alphabet_size(), r.witness};
        if (!verify_hom(f, make_cycle(f.size()), x))
            throw Error("internal: transfer graph witness is not a periodic point");
    }
    return r;
}

bool is_mixing_z(const SftSpec& x)
{
    TransferGraph tg = transfer_graph(x);
    if (tg.empty_window) {
        if (!tg.anything_allowed)
            throw Error("mixing is undefined for the empty SFT");
        return true;
    }
    // Tarjan's strongly connected components.
    const std::size_t n = tg.nodes;
    std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0), comp(n, SIZE_MAX);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::size_t counter = 0, comps = 0;
    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (auto& arc : tg.out[v]) {
            if (index[arc.to] == SIZE_MAX) {
                visit(arc.to);
                low[v] = std::min(low[v], low[arc.to]);
            } else if (on_stack[arc.to]) {
                low[v] = std::min(low[v], index[arc.to]);
            }
        }
        if (low[v] == index[v]) {
            std::size_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp[w] = comps;
            } while (w != v);
            ++comps;
        }
    };
    for (std::size_t v = 0; v < n; ++v)
        if (index[v] == SIZE_MAX)
            visit(v);
    // A component is recurrent when it carries an arc.
    std::vector<bool> recurrent(comps, false);
    for (std::size_t v = 0; v < n; ++v)
        for (auto& arc : tg.out[v])
            if (comp[arc.to] == comp[v])
                recurrent[comp[v]] = true;
    std::size_t count = static_cast<std::size_t>(std::count(recurrent.begin(), recurrent.end(), true));
    if (count == 0)
        throw Error("mixing is undefined for the empty SFT");
    if (count > 1)
        return false;
    std::size_t c = static_cast<std::size_t>(std::find(recurrent.begin(), recurrent.end(), true) - recurrent.begin());
    std::size_t root = 0;
    while (comp[root] != c)
        ++root;
    std::vector<std::int64_t> level(n, -1);
    std::deque<std::size_t> q{root};
    level[root] = 0;
    while (!q.empty()) {
        auto u = q.front();
        q.pop_front();
        for (auto& arc : tg.out[u])
            if (comp[arc.to] == c && level[arc.to] < 0) {
                level[arc.to] = level[u] + 1;
                q.push_back(arc.to);
            }
    }
    std::int64_t period = 0;
    for (std::size_t u = 0; u < n; ++u)
        if (comp[u] == c)
            for (auto& arc : tg.out[u])
                if (comp[arc.to] == c)
                    period = std::gcd(period, level[u] + 1 - level[arc.to]);
    return period == 1;
}

Z2Result nonempty_z2_bounded(const SftSpec& x, std::size_t n_max, std::uint64_t node_budget)
{
    const GroupSpec& g = x.group();
    if (!(g == GroupSpec::free_abelian(2)))
        throw Error("bounded nonemptiness search needs an SFT over Z^2");
    if (n_max == 0)
        throw Error("n_max must be at least 1");
    Z2Result r;

    // Periodic configurations on tori, by increasing area then height.
    for (std::size_t area = 1; area <= n_max * n_max; ++area)
        for (std::size_t m = 1; m <= n_max; ++m) {
            if (area % m || area / m > n_max)
                continue;
            std::size_t n = area / m;
            HomCertificate c = hom_exists(make_torus(m, n), x, {}, node_budget);
            if (c.verdict == Verdict::yes) {
                r.verdict = Verdict::yes;
                r.m = m;
                r.n = n;
                r.labelling = std::move(c.labelling);
                return r;
            }
        }

    // Refutation: no admissible labelling around the centers [-R, R]^2.
    for (std::size_t radius = 0; radius <= n_max; ++radius) {
        const auto R = static_cast<std::int64_t>(radius);
        std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> cell;
        std::vector<std::vector<std::size_t>> scopes;
        for (std::int64_t i = -R; i <= R; ++i)
            for (std::int64_t j = -R; j <= R; ++j) {
                std::vector<std::size_t> scope;
                for (auto& w : x.window()) {
                    auto [it, fresh] = cell.try_emplace({i + w.payload[0], j + w.payload[1]}, cell.size());
                    scope.push_back(it->second);
                }
                scopes.push_back(std::move(scope));
            }
        Csp csp(cell.size(), x.alphabet_size());
        if (x.is_pairwise()) {
            std::size_t id = x.window().index_of(g.identity());
            for (auto& scope : scopes)
                for (auto& rule : x.rules())
                    csp.add_binary(scope[id], scope[x.window().index_of(rule.offset)], rule.compat);
        } else {
            auto tuples = std::make_shared<const std::vector<std::vector<Symbol>>>(x.allowed());
            for (auto& scope : scopes)
                csp.add_table(scope, tuples);
        }
        if (csp.solve(node_budget).verdict == Verdict::no) {
            r.verdict = Verdict::no;
            r.radius = radius;
            return r;
        }
    }
    r.verdict = Verdict::unknown;
    return r;
}

std::string sft_to_text(const SftSpec& x)
{
    std::ostringstream os;
    const GroupSpec& g = x.group();
    os << "group " << g.to_string() << "\n";
    os << "alphabet";
    for (auto& s : x.alphabet())
        os << " " << s;
    os << "\n";
    os << "window " << x.window().to_string() << "\n";
    if (x.is_pairwise()) {
        os << "form pairwise\n";
        for (auto& r : x.rules())
            for (std::size_t s = 0; s < x.alphabet_size(); ++s) {
                std::ostringstream line;
                bool any = false;
                for (std::size_t t = 0; t < x.alphabet_size(); ++t)
                    if (r.compat->allowed(static_cast<Symbol>(s), static_cast<Symbol>(t))) {
                        line << " " << x.alphabet()[t];
                        any = true;
                    }
                if (any)
                    os << "pair " << g.format(r.offset) << " " << x.alphabet()[s] << ":" << line.str() << "\n";
            }
    } else {
        for (auto& p : x.allowed()) {
            os << "allow";
            for (auto s : p)
                os << " " << x.alphabet()[s];
            os << "\n";
        }
    }
    return os.str();
}

SftSpec parse_sft(std::string_view text)
{
    std::optional<GroupSpec> g;
    std::vector<std::string> alphabet;
    std::optional<Window> window;
    bool pairwise = false;
    std::vector<std::vector<std::string>> allow_lines;
    std::vector<std::tuple<std::string, std::string, std::vector<std::string>>> pair_lines;
    std::istringstream is{std::string(text)};
    std::string line;
    while (std::getline(is, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key))
            continue;
        std::vector<std::string> rest;
        std::string tok;
        if (key == "group") {
            std::string spec;
            std::getline(ls, spec);
            g = GroupSpec::parse(spec);
        } else if (key == "alphabet") {
            while (ls >> tok)
                alphabet.push_back(tok);
        } else if (key == "window") {
            if (!g)
                throw Error("window line before group line");
            std::string spec;
            std::getline(ls, spec);
            window = Window::parse(*g, spec);
        } else if (key == "form") {
            ls >> tok;
            if (tok != "pairwise" && tok != "explicit")
                throw Error("unknown SFT form: " + tok);
            pairwise = tok == "pairwise";
        } else if (key == "allow") {
            while (ls >> tok)
                rest.push_back(tok);
            allow_lines.push_back(std::move(rest));
        } else if (key == "pair") {
            std::string offset, sym;
            if (!(ls >> offset >> sym) || sym.size() < 2 || sym.back() != ':')
                throw Error("bad pair line: " + line);
            sym.pop_back();
            while (ls >> tok)
                rest.push_back(tok);
            pair_lines.emplace_back(offset, sym, std::move(rest));
            pairwise = true;
        } else {
            throw Error("unknown SFT file line: " + line);
        }
    }
    if (!g || alphabet.empty() || !window)
        throw Error("SFT file needs group, alphabet and window lines");
    std::map<std::string, Symbol> sym;
    for (std::size_t i = 0; i < alphabet.size(); ++i)
        if (!sym.emplace(alphabet[i], static_cast<Symbol>(i)).second)
            throw Error("duplicate alphabet symbol " + alphabet[i]);
    auto lookup = [&](const std::string& s) {
        auto it = sym.find(s);
        if (it == sym.end())
            throw Error("unknown symbol " + s);
        return it->second;
    };
    if (!pairwise) {
        std::vector<Pattern> allowed;
        for (auto& l : allow_lines) {
            if (l.size() != window->size())
                throw Error("allow line does not fit the window");
            Pattern p;
            for (auto& s : l)
                p.push_back(lookup(s));
            allowed.push_back(std::move(p));
        }
        return SftSpec::explicit_patterns(*g, alphabet, *window, std::move(allowed));
    }
    if (!allow_lines.empty())
        throw Error("allow lines cannot be mixed with pairwise form");
    if (!window->contains(g->identity()))
        throw Error("pairwise SFT window must contain the identity");
    std::map<GroupElem, std::shared_ptr<CompatMatrix>> rules;
    for (auto& d : *window)
        if (!g->is_identity(d))
            rules[d] = std::make_shared<CompatMatrix>(alphabet.size());
    for (auto& [offset, s, ts] : pair_lines) {
        auto it = rules.find(g->parse_elem(offset));
        if (it == rules.end())
            throw Error("pair offset " + offset + " is not in the window");
        for (auto& t : ts)
            it->second->allow(lookup(s), lookup(t));
    }
    std::vector<PairRule> list;
    for (auto& [d, m] : rules)
        list.push_back({d, m});
    return SftSpec::pairwise(*g, alphabet, std::move(list));
}

} // namespace wclab
