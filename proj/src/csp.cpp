#include "wclab/csp.hpp"

#include <bit>
#include <deque>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace wclab {

CompatMatrix::CompatMatrix(std::size_t alphabet)
    : alphabet_(alphabet), words_((alphabet + 63) / 64), fwd_(alphabet * words_, 0),
      bwd_(alphabet * words_, 0)
{
}

void CompatMatrix::allow(Symbol s, Symbol t)
{
    if (s >= alphabet_ || t >= alphabet_)
        throw Error("symbol out of range");
    fwd_[s * words_ + t / 64] |= std::uint64_t{1} << (t % 64);
    bwd_[t * words_ + s / 64] |= std::uint64_t{1} << (s % 64);
}

bool CompatMatrix::allowed(Symbol s, Symbol t) const
{
    return (fwd_[s * words_ + t / 64] >> (t % 64)) & 1;
}

Csp::Csp(std::size_t variables, std::size_t alphabet)
    : n_(variables), alphabet_(alphabet), words_((alphabet + 63) / 64),
      initial_(variables * words_, 0)
{
    if (alphabet == 0)
        throw Error("empty alphabet");
    for (std::size_t v = 0; v < n_; ++v)
        for (std::size_t s = 0; s < alphabet; ++s)
            initial_[v * words_ + s / 64] |= std::uint64_t{1} << (s % 64);
}

void Csp::add_table(std::vector<std::size_t> scope,
                    std::shared_ptr<const std::vector<std::vector<Symbol>>> tuples)
{
    for (auto v : scope)
        if (v >= n_)
            throw Error("table scope variable out of range");
    bool repeats = false;
    for (std::size_t i = 0; i < scope.size() && !repeats; ++i)
        for (std::size_t j = i + 1; j < scope.size(); ++j)
            if (scope[i] == scope[j])
                repeats = true;
    if (repeats) {
        auto filtered = std::make_shared<std::vector<std::vector<Symbol>>>();
        for (auto& t : *tuples) {
            bool ok = true;
            for (std::size_t i = 0; i < scope.size() && ok; ++i)
                for (std::size_t j = i + 1; j < scope.size(); ++j)
                    if (scope[i] == scope[j] && t[i] != t[j])
                        ok = false;
            if (ok)
                filtered->push_back(t);
        }
        tuples = std::move(filtered);
    }
    tables_.push_back({std::move(scope), std::move(tuples)});
}

void Csp::add_binary(std::size_t u, std::size_t v, std::shared_ptr<const CompatMatrix> m)
{
    if (u >= n_ || v >= n_)
        throw Error("binary constraint variable out of range");
    if (m->alphabet() != alphabet_)
        throw Error("compatibility matrix alphabet mismatch");
    if (u == v) {
        for (std::size_t s = 0; s < alphabet_; ++s)
            if (!m->allowed(static_cast<Symbol>(s), static_cast<Symbol>(s)))
                initial_[u * words_ + s / 64] &= ~(std::uint64_t{1} << (s % 64));
        return;
    }
    binaries_.push_back({u, v, std::move(m)});
}

void Csp::add_cover(std::vector<std::vector<std::size_t>> locations, std::vector<Symbol> pattern)
{
    for (auto s : pattern)
        if (s >= alphabet_)
            throw Error("cover pattern symbol out of range");
    std::vector<std::vector<std::size_t>> consistent;
    for (auto& loc : locations) {
        if (loc.size() != pattern.size())
            throw Error("cover location has the wrong arity");
        bool ok = true;
        for (std::size_t i = 0; i < loc.size() && ok; ++i) {
            if (loc[i] >= n_)
                throw Error("cover variable out of range");
            for (std::size_t j = i + 1; j < loc.size(); ++j)
                if (loc[i] == loc[j] && pattern[i] != pattern[j])
                    ok = false;
        }
        if (ok)
            consistent.push_back(std::move(loc));
    }
    covers_.push_back({std::move(consistent), std::move(pattern)});
}

void Csp::set_anchor(std::size_t var)
{
    if (var >= n_)
        throw Error("variable out of range");
    anchor_ = var;
}

void Csp::restrict_domain(std::size_t var, const std::vector<Symbol>& allowed)
{
    if (var >= n_)
        throw Error("variable out of range");
    std::vector<std::uint64_t> mask(words_, 0);
    for (auto s : allowed)
        if (s < alphabet_)
            mask[s / 64] |= std::uint64_t{1} << (s % 64);
    for (std::size_t w = 0; w < words_; ++w)
        initial_[var * words_ + w] &= mask[w];
}

struct Csp::Search {
    const Csp& csp;
    const std::size_t W;
    std::vector<std::vector<std::size_t>> incident; // variable -> constraint ids
    std::map<const CompatMatrix*, std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>>
        full_support;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool exhausted_budget = false;
    std::vector<Symbol> solution;
    bool use_covers = true;
    std::vector<std::size_t> uf; // union-find scratch for components()

    bool memo_enabled = false;
    std::unordered_set<std::string> failed;
    std::size_t memo_bytes = 0;
    static constexpr std::size_t memo_limit = std::size_t{256} << 20;

    // scratch
    std::vector<std::uint64_t> support;
    std::vector<bool> queued;
    std::unordered_map<std::string, std::vector<std::uint64_t>> support_cache;

    Search(const Csp& c, std::uint64_t b) : csp(c), W(c.words_), incident(c.n_), budget(b), uf(c.n_)
    {
        std::size_t id = 0;
        for (auto& t : csp.tables_) {
            for (auto v : t.scope)
                add_incident(v, id);
            ++id;
        }
        for (auto& bc : csp.binaries_) {
            add_incident(bc.u, id);
            add_incident(bc.v, id);
            if (!full_support.count(bc.m.get())) {
                std::vector<std::uint64_t> f(W, 0), r(W, 0);
                for (std::size_t s = 0; s < csp.alphabet_; ++s)
                    for (std::size_t w = 0; w < W; ++w) {
                        f[w] |= bc.m->forward(static_cast<Symbol>(s))[w];
                        r[w] |= bc.m->backward(static_cast<Symbol>(s))[w];
                    }
                full_support[bc.m.get()] = {std::move(f), std::move(r)};
            }
            ++id;
        }
        for (auto& cv : csp.covers_) {
            for (auto& loc : cv.locations)
                for (auto v : loc)
                    add_incident(v, id);
            ++id;
        }
        queued.assign(id, false);
        memo_enabled = csp.tables_.empty() && csp.covers_.empty();
    }

    void add_incident(std::size_t v, std::size_t id)
    {
        auto& l = incident[v];
        if (l.empty() || l.back() != id)
            l.push_back(id);
    }

    std::size_t constraint_count() const { return queued.size(); }

    std::uint64_t* dom(std::vector<std::uint64_t>& d, std::size_t v) const { return &d[v * W]; }

    static bool has(const std::uint64_t* d, Symbol s) { return (d[s / 64] >> (s % 64)) & 1; }

    std::size_t count(const std::uint64_t* d) const
    {
        std::size_t c = 0;
        for (std::size_t w = 0; w < W; ++w)
            c += static_cast<std::size_t>(std::popcount(d[w]));
        return c;
    }

    // d &= mask; returns true when d changed.
    bool intersect(std::uint64_t* d, const std::uint64_t* mask) const
    {
        bool changed = false;
        for (std::size_t w = 0; w < W; ++w) {
            auto nv = d[w] & mask[w];
            changed |= nv != d[w];
            d[w] = nv;
        }
        return changed;
    }

    bool empty(const std::uint64_t* d) const
    {
        for (std::size_t w = 0; w < W; ++w)
            if (d[w])
                return false;
        return true;
    }

    template <class F>
    void for_each_symbol(const std::uint64_t* d, F&& f) const
    {
        for (std::size_t w = 0; w < W; ++w) {
            auto bits = d[w];
            while (bits) {
                auto b = static_cast<std::size_t>(std::countr_zero(bits));
                f(static_cast<Symbol>(w * 64 + b));
                bits &= bits - 1;
            }
        }
    }

    // Revises constraint id; appends variables whose domain shrank.
    bool revise(std::size_t id, std::vector<std::uint64_t>& d, std::vector<std::size_t>& changed)
    {
        const std::size_t nt = csp.tables_.size(), nb = csp.binaries_.size();
        if (id < nt)
            return revise_table(csp.tables_[id], d, changed);
        if (id < nt + nb)
            return revise_binary(csp.binaries_[id - nt], d, changed);
        if (!use_covers)
            return true;
        return revise_cover(csp.covers_[id - nt - nb], d, changed);
    }

    bool revise_binary(const Binary& b, std::vector<std::uint64_t>& d, std::vector<std::size_t>& changed)
    {
        auto& full = full_support.at(b.m.get());
        auto side = [&](std::size_t from, std::size_t to, bool fwd) {
            auto* df = dom(d, from);
            support.assign(W, 0);
            if (count(df) == csp.alphabet_) {
                const auto& f = fwd ? full.first : full.second;
                std::copy(f.begin(), f.end(), support.begin());
            } else if (count(df) > 16) {
                // Large domains recur often; remember their support unions.
                std::string key(reinterpret_cast<const char*>(df), W * sizeof(std::uint64_t));
                key.append(reinterpret_cast<const char*>(&b.m), sizeof b.m);
                key.push_back(fwd ? 'f' : 'b');
                auto it = support_cache.find(key);
                if (it == support_cache.end()) {
                    union_rows(b, df, fwd);
                    if (support_cache.size() > (1u << 20))
                        support_cache.clear();
                    support_cache.emplace(std::move(key), support);
                } else {
                    std::copy(it->second.begin(), it->second.end(), support.begin());
                }
            } else {
                union_rows(b, df, fwd);
            }
            auto* dt = dom(d, to);
            if (intersect(dt, support.data())) {
                changed.push_back(to);
                return !empty(dt);
            }
            return true;
        };
        return side(b.u, b.v, true) && side(b.v, b.u, false);
    }

    void union_rows(const Binary& b, const std::uint64_t* df, bool fwd)
    {
        for_each_symbol(df, [&](Symbol s) {
            const auto* row = fwd ? b.m->forward(s) : b.m->backward(s);
            for (std::size_t w = 0; w < W; ++w)
                support[w] |= row[w];
        });
    }

    bool revise_table(const Table& t, std::vector<std::uint64_t>& d, std::vector<std::size_t>& changed)
    {
        const std::size_t r = t.scope.size();
        std::vector<std::uint64_t> sup(r * W, 0);
        for (auto& tuple : *t.tuples) {
            bool ok = true;
            for (std::size_t i = 0; i < r && ok; ++i)
                ok = has(dom(d, t.scope[i]), tuple[i]);
            if (!ok)
                continue;
            for (std::size_t i = 0; i < r; ++i)
                sup[i * W + tuple[i] / 64] |= std::uint64_t{1} << (tuple[i] % 64);
        }
        for (std::size_t i = 0; i < r; ++i) {
            auto* dv = dom(d, t.scope[i]);
            if (intersect(dv, &sup[i * W])) {
                changed.push_back(t.scope[i]);
                if (empty(dv))
                    return false;
            }
        }
        return true;
    }

    bool revise_cover(const Cover& c, std::vector<std::uint64_t>& d, std::vector<std::size_t>& changed)
    {
        const std::vector<std::size_t>* only = nullptr;
        std::size_t live = 0;
        for (auto& loc : c.locations) {
            bool ok = true;
            for (std::size_t i = 0; i < loc.size() && ok; ++i)
                ok = has(dom(d, loc[i]), c.pattern[i]);
            if (ok) {
                only = &loc;
                if (++live > 1)
                    break;
            }
        }
        if (live == 0)
            return false;
        if (live == 1) {
            std::vector<std::uint64_t> mask(W);
            for (std::size_t i = 0; i < only->size(); ++i) {
                std::fill(mask.begin(), mask.end(), 0);
                mask[c.pattern[i] / 64] = std::uint64_t{1} << (c.pattern[i] % 64);
                if (intersect(dom(d, (*only)[i]), mask.data()))
                    changed.push_back((*only)[i]);
            }
        }
        return true;
    }

    bool propagate(std::vector<std::uint64_t>& d, std::deque<std::size_t> q)
    {
        for (auto id : q)
            queued[id] = true;
        std::vector<std::size_t> changed;
        bool ok = true;
        while (!q.empty()) {
            auto id = q.front();
            q.pop_front();
            queued[id] = false;
            if (!ok)
                continue;
            changed.clear();
            if (!revise(id, d, changed)) {
                ok = false;
                continue;
            }
            for (auto v : changed)
                for (auto c : incident[v])
                    if (!queued[c]) {
                        queued[c] = true;
                        q.push_back(c);
                    }
        }
        return ok;
    }

    // Open variables of scope grouped by the tables and binaries linking them.
    std::vector<std::vector<std::size_t>> components(std::vector<std::uint64_t>& d,
                                                     const std::vector<std::size_t>& scope)
    {
        const std::size_t nt = csp.tables_.size(), nb = csp.binaries_.size();
        std::vector<std::size_t> open;
        for (auto v : scope)
            if (count(dom(d, v)) > 1) {
                uf[v] = v;
                open.push_back(v);
            }
        auto find = [&](std::size_t v) {
            while (uf[v] != v)
                v = uf[v] = uf[uf[v]];
            return v;
        };
        auto link = [&](std::size_t a, std::size_t b) {
            if (count(dom(d, a)) > 1 && count(dom(d, b)) > 1)
                uf[find(a)] = find(b);
        };
        for (auto v : open)
            for (auto c : incident[v]) {
                if (c < nt) {
                    for (auto u : csp.tables_[c].scope)
                        link(v, u);
                } else if (c < nt + nb) {
                    link(csp.binaries_[c - nt].u, csp.binaries_[c - nt].v);
                }
            }
        std::map<std::size_t, std::vector<std::size_t>> parts;
        for (auto v : open)
            parts[find(v)].push_back(v);
        std::vector<std::vector<std::size_t>> out;
        for (auto& [root, vars] : parts)
            out.push_back(std::move(vars));
        return out;
    }

    bool covers_entailed(std::vector<std::uint64_t>& d)
    {
        for (auto& c : csp.covers_) {
            bool hit = false;
            for (auto& loc : c.locations) {
                bool all = true;
                for (std::size_t i = 0; i < loc.size() && all; ++i) {
                    auto* dv = dom(d, loc[i]);
                    all = count(dv) == 1 && has(dv, c.pattern[i]);
                }
                if (all) {
                    hit = true;
                    break;
                }
            }
            if (!hit)
                return false;
        }
        return true;
    }

    // Searches the variables of scope. When the open variables fall apart
    // into independent groups each group is solved on its own; while cover
    // constraints are still open the groups are only checked for
    // satisfiability without covers, which refutes early and avoids
    // retrying one group's values after a failure in another.
    bool dfs(std::vector<std::uint64_t>& d, const std::vector<std::size_t>& scope, std::size_t parent_parts)
    {
        std::size_t best = csp.n_, best_size = csp.alphabet_ + 1;
        for (auto v : scope) {
            auto c = count(dom(d, v));
            if (c == 0)
                return false;
            if (c > 1 && c < best_size) {
                best = v;
                best_size = c;
            }
        }
        if (best == csp.n_) {
            solution.resize(csp.n_);
            for (std::size_t v = 0; v < csp.n_; ++v)
                if (count(dom(d, v)) == 1)
                    for_each_symbol(dom(d, v), [&](Symbol s) { solution[v] = s; });
            return true;
        }
        std::string key;
        if (memo_enabled) {
            key = residual_key(d);
            if (failed.count(key))
                return false;
        }
        auto parts = components(d, scope);
        if (parts.size() > 1) {
            const bool independent = !use_covers || covers_entailed(d);
            if (independent || parts.size() > parent_parts) {
                const bool saved = use_covers;
                use_covers = false;
                bool ok = true;
                for (auto& part : parts) {
                    std::vector<std::uint64_t> sub = d;
                    if (!dfs(sub, part, 1)) {
                        ok = false;
                        break;
                    }
                }
                use_covers = saved;
                if (!ok || independent) {
                    if (!ok && !exhausted_budget)
                        remember(std::move(key));
                    return ok;
                }
            }
        }
        std::vector<Symbol> values;
        for_each_symbol(dom(d, best), [&](Symbol s) { values.push_back(s); });
        for (auto s : values) {
            if (nodes >= budget) {
                exhausted_budget = true;
                return false;
            }
            ++nodes;
            std::vector<std::uint64_t> next = d;
            auto* dv = dom(next, best);
            std::fill(dv, dv + W, 0);
            dv[s / 64] = std::uint64_t{1} << (s % 64);
            std::deque<std::size_t> q(incident[best].begin(), incident[best].end());
            if (propagate(next, std::move(q)) && dfs(next, scope, std::max<std::size_t>(parts.size(), 1)))
                return true;
            if (exhausted_budget)
                return false;
        }
        remember(std::move(key));
        return false;
    }

    void remember(std::string key)
    {
        if (memo_enabled && memo_bytes + key.size() <= memo_limit) {
            memo_bytes += key.size();
            failed.insert(std::move(key));
        }
    }

    // With binary constraints only and arc consistency maintained, a variable
    // with a single value no longer restricts anything beyond the domains of
    // its neighbours. The remaining problem is then determined by the open
    // variables and their domains, so a failed state can be recognised again.
    std::string residual_key(const std::vector<std::uint64_t>& d) const
    {
        std::string key;
        for (std::size_t v = 0; v < csp.n_; ++v) {
            const auto* dv = &d[v * W];
            if (count(dv) == 1)
                continue;
            key.append(reinterpret_cast<const char*>(&v), sizeof v);
            key.append(reinterpret_cast<const char*>(dv), W * sizeof(std::uint64_t));
        }
        return key;
    }
};

CspResult Csp::solve(std::uint64_t node_budget) const
{
    CspResult result;
    if (n_ == 0) {
        bool covers_ok = true;
        for (auto& c : covers_)
            covers_ok = covers_ok && !c.locations.empty();
        result.verdict = covers_ok ? Verdict::yes : Verdict::no;
        return result;
    }
    Search s(*this, node_budget);
    std::vector<std::uint64_t> d = initial_;
    for (std::size_t v = 0; v < n_; ++v)
        if (s.empty(s.dom(d, v))) {
            result.verdict = Verdict::no;
            return result;
        }
    std::deque<std::size_t> all;
    for (std::size_t id = 0; id < s.constraint_count(); ++id)
        all.push_back(id);
    if (!s.propagate(d, std::move(all))) {
        result.verdict = Verdict::no;
        return result;
    }
    std::vector<std::size_t> all_vars(n_);
    for (std::size_t v = 0; v < n_; ++v)
        all_vars[v] = v;
    bool found = false;
    if (!anchor_) {
        found = s.dfs(d, all_vars, 1);
    } else {
        std::vector<Symbol> values;
        s.for_each_symbol(s.dom(d, *anchor_), [&](Symbol v) { values.push_back(v); });
        for (auto v : values) {
            if (s.nodes >= node_budget) {
                s.exhausted_budget = true;
                break;
            }
            ++s.nodes;
            std::vector<std::uint64_t> next = d;
            for (std::size_t u = 0; u < n_; ++u)
                for (std::size_t w = 0; w < words_; ++w) {
                    // keep symbols >= v
                    std::uint64_t keep = w < v / 64 ? 0 : w > v / 64 ? ~std::uint64_t{0}
                                                                     : ~std::uint64_t{0} << (v % 64);
                    next[u * words_ + w] &= keep;
                }
            auto* da = s.dom(next, *anchor_);
            std::fill(da, da + words_, 0);
            da[v / 64] = std::uint64_t{1} << (v % 64);
            std::deque<std::size_t> q;
            for (std::size_t id = 0; id < s.constraint_count(); ++id)
                q.push_back(id);
            if (s.propagate(next, std::move(q)) && s.dfs(next, all_vars, 1)) {
                found = true;
                break;
            }
            if (s.exhausted_budget)
                break;
        }
    }
    result.nodes = s.nodes;
    if (found) {
        result.verdict = Verdict::yes;
        result.assignment = std::move(s.solution);
    } else {
        result.verdict = s.exhausted_budget ? Verdict::unknown : Verdict::no;
    }
    return result;
}

} // namespace wclab
