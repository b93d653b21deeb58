#include "wclab/action.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "wclab/random.hpp"

namespace wclab {

namespace {

Permutation identity_perm(std::size_t n)
{
    Permutation p(n);
    std::iota(p.begin(), p.end(), Point{0});
    return p;
}

Permutation perm_pow(const Permutation& p, std::int64_t e)
{
    Permutation base = e < 0 ? inverse(p) : p;
    std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
    Permutation acc = identity_perm(p.size());
    while (k) {
        if (k & 1)
            acc = compose(base, acc);
        base = compose(base, base);
        k >>= 1;
    }
    return acc;
}

bool commute(const Permutation& p, const Permutation& q)
{
    return compose(p, q) == compose(q, p);
}

void check_relations(const GroupSpec& spec, std::span<const Permutation> gens)
{
    const auto id = identity_perm(gens.empty() ? 0 : gens[0].size());
    auto all_commute = [&] {
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t j = i + 1; j < gens.size(); ++j)
                if (!commute(gens[i], gens[j]))
                    throw Error("generators of an abelian factor do not commute");
    };
    switch (spec.family()) {
    case Family::free_abelian:
        all_commute();
        break;
    case Family::cyclic:
        if (perm_pow(gens[0], spec.params()[0]) != id)
            throw Error("generator order does not divide n");
        break;
    case Family::torus:
        all_commute();
        if (perm_pow(gens[0], spec.params()[0]) != id || perm_pow(gens[1], spec.params()[1]) != id)
            throw Error("torus relation violated");
        break;
    case Family::free:
        break;
    case Family::product: {
        std::size_t offset = 0;
        std::vector<std::size_t> owner;
        for (std::size_t j = 0; j < spec.factors().size(); ++j) {
            auto cnt = spec.factors()[j].generator_count();
            check_relations(spec.factors()[j], gens.subspan(offset, cnt));
            owner.insert(owner.end(), cnt, j);
            offset += cnt;
        }
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t k = i + 1; k < gens.size(); ++k)
                if (owner[i] != owner[k] && !commute(gens[i], gens[k]))
                    throw Error("generators of distinct product factors do not commute");
        break;
    }
    }
}

// Applies g to x where the generators of spec occupy perms[offset...].
Point act_impl(const GroupSpec& spec, const GroupElem& g, std::span<const Permutation> perms,
               std::span<const Permutation> invs, Point x)
{
    auto power = [&](std::size_t gen, std::int64_t e, Point y) {
        // walk |e| steps, or once around the cycle through y and reduce e
        const Permutation& step = e < 0 ? invs[gen] : perms[gen];
        std::uint64_t left = e < 0 ? 0 - static_cast<std::uint64_t>(e) : static_cast<std::uint64_t>(e);
        const Point start = y;
        for (std::uint64_t walked = 1; left > 0; ++walked) {
            y = step[y];
            --left;
            if (y == start && left > 0) {
                left %= walked;
                walked = 0;
            }
        }
        return y;
    };
    switch (spec.family()) {
    case Family::free_abelian:
    case Family::cyclic:
    case Family::torus:
        for (std::size_t i = 0; i < g.payload.size(); ++i)
            x = power(i, g.payload[i], x);
        return x;
    case Family::free:
        for (auto it = g.payload.rbegin(); it != g.payload.rend(); ++it) {
            auto gen = static_cast<std::size_t>(*it / 2);
            x = (*it & 1) ? invs[gen][x] : perms[gen][x];
        }
        return x;
    case Family::product: {
        std::size_t offset = 0;
        for (std::size_t j = 0; j < spec.factors().size(); ++j) {
            auto cnt = spec.factors()[j].generator_count();
            x = act_impl(spec.factors()[j], g.parts[j], perms.subspan(offset, cnt),
                         invs.subspan(offset, cnt), x);
            offset += cnt;
        }
        return x;
    }
    }
    return x;
}

} // namespace

Permutation compose(const Permutation& outer, const Permutation& inner)
{
    Permutation r(inner.size());
    for (std::size_t i = 0; i < inner.size(); ++i)
        r[i] = outer[inner[i]];
    return r;
}

Permutation inverse(const Permutation& p)
{
    Permutation r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        r[p[i]] = static_cast<Point>(i);
    return r;
}

bool is_permutation(const Permutation& p)
{
    std::vector<bool> seen(p.size(), false);
    for (auto v : p) {
        if (v >= p.size() || seen[v])
            return false;
        seen[v] = true;
    }
    return true;
}

FiniteAction::FiniteAction(GroupSpec spec, std::size_t n, std::vector<Permutation> generator_perms)
    : spec_(std::move(spec)), n_(n), perms_(std::move(generator_perms))
{
    if (n_ == 0)
        throw Error("an action needs at least one point");
    if (perms_.size() != spec_.generator_count())
        throw Error("expected " + std::to_string(spec_.generator_count()) +
                    " generator permutations, got " + std::to_string(perms_.size()));
    for (auto& p : perms_) {
        if (p.size() != n_ || !is_permutation(p))
            throw Error("generator image list is not a bijection on " + std::to_string(n_) +
                        " points");
        inverses_.push_back(inverse(p));
    }
    check_relations(spec_, perms_);
}

Point FiniteAction::act(const GroupElem& g, Point x) const
{
    if (x >= n_)
        throw Error("point " + std::to_string(x) + " out of range");
    if (!spec_.contains(g))
        throw Error("element does not belong to " + spec_.to_string());
    return act_impl(spec_, g, perms_, inverses_, x);
}

Permutation FiniteAction::permutation_of(const GroupElem& g) const
{
    if (!spec_.contains(g))
        throw Error("element does not belong to " + spec_.to_string());
    Permutation p(n_);
    for (std::size_t x = 0; x < n_; ++x)
        p[x] = act_impl(spec_, g, perms_, inverses_, static_cast<Point>(x));
    return p;
}

FiniteAction make_cycle(std::size_t n)
{
    if (n == 0)
        throw Error("c_n needs n >= 1");
    Permutation p(n);
    for (std::size_t i = 0; i < n; ++i)
        p[i] = static_cast<Point>((i + 1) % n);
    return FiniteAction(GroupSpec::free_abelian(1), n, {p});
}

FiniteAction make_torus(std::size_t m, std::size_t n)
{
    if (m == 0 || n == 0)
        throw Error("c_{m,n} needs m, n >= 1");
    Permutation e1(m * n), e2(m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            e1[i * n + j] = static_cast<Point>(((i + 1) % m) * n + j);
            e2[i * n + j] = static_cast<Point>(i * n + (j + 1) % n);
        }
    return FiniteAction(GroupSpec::free_abelian(2), m * n, {e1, e2});
}

FiniteAction product(const FiniteAction& a, const FiniteAction& b)
{
    if (!(a.spec() == b.spec()))
        throw Error("product of actions of different groups");
    const std::size_t n = a.size() * b.size();
    std::vector<Permutation> gens;
    for (std::size_t s = 0; s < a.generators().size(); ++s) {
        Permutation p(n);
        for (std::size_t x = 0; x < a.size(); ++x)
            for (std::size_t y = 0; y < b.size(); ++y)
                p[x * b.size() + y] =
                    static_cast<Point>(a.generators()[s][x] * b.size() + b.generators()[s][y]);
        gens.push_back(std::move(p));
    }
    return FiniteAction(a.spec(), n, std::move(gens));
}

FiniteAction regular_action(const GroupSpec& finite_group)
{
    std::function<bool(const GroupSpec&)> finite = [&](const GroupSpec& s) {
        if (s.family() == Family::cyclic || s.family() == Family::torus)
            return true;
        if (s.family() == Family::product)
            return std::all_of(s.factors().begin(), s.factors().end(), finite);
        return false;
    };
    if (!finite(finite_group))
        throw Error("regular_action needs a finite group");
    // the ball of radius |G| covers every element
    std::int64_t order = 1;
    std::function<void(const GroupSpec&)> acc = [&](const GroupSpec& s) {
        if (s.family() == Family::product)
            for (auto& f : s.factors())
                acc(f);
        else
            for (auto p : s.params())
                order *= p;
    };
    acc(finite_group);
    Window all = ball(finite_group, static_cast<int>(order));
    std::vector<Permutation> gens;
    for (auto& s : finite_group.generators()) {
        Permutation p(all.size());
        for (std::size_t i = 0; i < all.size(); ++i)
            p[i] = static_cast<Point>(all.index_of(finite_group.mul(s, all[i])));
        gens.push_back(std::move(p));
    }
    return FiniteAction(finite_group, all.size(), std::move(gens));
}

LocalGraph schreier(const FiniteAction& a)
{
    LocalGraph g(a.size());
    g.label_names = a.spec().generator_names();
    for (std::size_t x = 0; x < a.size(); ++x)
        for (std::size_t s = 0; s < a.generators().size(); ++s)
            g.add_edge(x, a.generators()[s][x], static_cast<int>(s));
    return g;
}

std::vector<std::vector<Point>> orbits(const FiniteAction& a)
{
    std::vector<std::vector<Point>> out;
    std::vector<bool> seen(a.size(), false);
    for (Point start = 0; start < a.size(); ++start) {
        if (seen[start])
            continue;
        std::vector<Point> orbit{start};
        seen[start] = true;
        for (std::size_t i = 0; i < orbit.size(); ++i)
            for (auto& p : a.generators()) {
                Point y = p[orbit[i]];
                if (!seen[y]) {
                    seen[y] = true;
                    orbit.push_back(y);
                }
            }
        std::sort(orbit.begin(), orbit.end());
        out.push_back(std::move(orbit));
    }
    return out;
}

bool is_transitive(const FiniteAction& a)
{
    return orbits(a).size() == 1;
}

bool is_free_up_to(const FiniteAction& a, int radius)
{
    if (radius < 1)
        throw Error("is_free_up_to needs radius >= 1");
    for (auto& g : ball(a.spec(), radius)) {
        if (a.spec().is_identity(g))
            continue;
        auto p = a.permutation_of(g);
        for (std::size_t x = 0; x < p.size(); ++x)
            if (p[x] == x)
                return false;
    }
    return true;
}

ChiValue chi(const FiniteAction& a, const GroupElem& g)
{
    auto p = a.permutation_of(g);
    std::vector<bool> seen(p.size(), false);
    std::uint32_t best = 2;
    for (std::size_t x = 0; x < p.size(); ++x) {
        if (seen[x])
            continue;
        std::size_t len = 0;
        for (std::size_t y = x; !seen[y]; y = p[y]) {
            seen[y] = true;
            ++len;
        }
        if (len == 1)
            return std::nullopt;
        if (len % 2 == 1)
            best = 3;
    }
    return best;
}

std::optional<std::vector<std::uint32_t>> chi_cover(const FiniteAction& a, const GroupElem& g)
{
    auto p = a.permutation_of(g);
    std::vector<std::uint32_t> set(p.size(), 0);
    std::vector<bool> seen(p.size(), false);
    for (std::size_t x = 0; x < p.size(); ++x) {
        if (seen[x])
            continue;
        std::vector<std::size_t> cycle;
        for (std::size_t y = x; !seen[y]; y = p[y]) {
            seen[y] = true;
            cycle.push_back(y);
        }
        if (cycle.size() == 1)
            return std::nullopt;
        for (std::size_t i = 0; i < cycle.size(); ++i)
            set[cycle[i]] = i % 2;
        if (cycle.size() % 2 == 1)
            set[cycle.back()] = 2;
    }
    return set;
}

std::string to_string(const ChiValue& c)
{
    return c ? std::to_string(*c) : std::string("inf");
}

SubgroupInclusion SubgroupInclusion::standard(std::vector<std::int64_t> strides)
{
    SubgroupInclusion inc;
    inc.ambient = GroupSpec::free_abelian(static_cast<int>(strides.size()));
    inc.strides = strides;
    std::vector<std::int64_t> digit(strides.size(), 0);
    while (true) {
        inc.transversal.push_back(inc.ambient.elem(digit));
        std::size_t i = 0;
        for (; i < digit.size(); ++i) {
            if (++digit[i] < strides[i])
                break;
            digit[i] = 0;
        }
        if (i == digit.size())
            break;
    }
    std::sort(inc.transversal.begin(), inc.transversal.end());
    return inc;
}

namespace {

std::vector<std::int64_t> residue(const std::vector<std::int64_t>& v, const std::vector<std::int64_t>& strides)
{
    std::vector<std::int64_t> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        r[i] = ((v[i] % strides[i]) + strides[i]) % strides[i];
    return r;
}

} // namespace

void SubgroupInclusion::validate() const
{
    if (ambient.family() != Family::free_abelian ||
        (ambient.params()[0] != 1 && ambient.params()[0] != 2))
        throw Error("coinduction supports Delta <= Z and Delta <= Z^2 only");
    if (strides.size() != static_cast<std::size_t>(ambient.params()[0]))
        throw Error("one stride per ambient coordinate required");
    std::int64_t index = 1;
    for (auto s : strides) {
        if (s < 1)
            throw Error("strides must be positive");
        index *= s;
    }
    if (static_cast<std::int64_t>(transversal.size()) != index)
        throw Error("transversal size differs from the subgroup index");
    std::set<std::vector<std::int64_t>> seen;
    bool has_identity = false;
    for (auto& r : transversal) {
        if (!ambient.contains(r))
            throw Error("transversal element outside the ambient group");
        if (!seen.insert(residue(r.payload, strides)).second)
            throw Error("transversal has two elements in one coset");
        has_identity = has_identity || ambient.is_identity(r);
    }
    if (!has_identity)
        throw Error("transversal must contain the identity");
}

FiniteAction coinduce(const FiniteAction& a, const SubgroupInclusion& inc)
{
    inc.validate();
    if (!(a.spec() == inc.ambient))
        throw Error("coinduce: the Delta-action must be given as a " + inc.ambient.to_string() +
                    "-action");
    const std::size_t dim = inc.strides.size();
    const std::size_t k = inc.transversal.size();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
        total *= a.size();
        if (total > (1u << 22))
            throw Error("coinduced action too large");
    }
    std::map<std::vector<std::int64_t>, std::size_t> coset;
    for (std::size_t i = 0; i < k; ++i)
        coset[residue(inc.transversal[i].payload, inc.strides)] = i;

    std::vector<Permutation> gens;
    for (std::size_t j = 0; j < dim; ++j) {
        // for each slot i: (e_j x)(r_i) = delta^{-1} . x(r_src)
        std::vector<std::size_t> src(k);
        std::vector<Permutation> twist(k);
        for (std::size_t i = 0; i < k; ++i) {
            auto y = inc.transversal[i].payload; // r - e_j
            y[j] -= 1;
            std::size_t s = coset.at(residue(y, inc.strides));
            src[i] = s;
            std::vector<std::int64_t> delta_inv(dim);
            for (std::size_t c = 0; c < dim; ++c)
                delta_inv[c] = -(y[c] - inc.transversal[s].payload[c]) / inc.strides[c];
            twist[i] = a.permutation_of(a.spec().elem(delta_inv));
        }
        Permutation p(total);
        std::vector<Point> digits(k), out(k);
        for (std::uint64_t code = 0; code < total; ++code) {
            std::uint64_t c = code;
            for (std::size_t i = 0; i < k; ++i) {
                digits[i] = static_cast<Point>(c % a.size());
                c /= a.size();
            }
            std::uint64_t image = 0;
            for (std::size_t i = k; i-- > 0;)
                image = image * a.size() + twist[i][digits[src[i]]];
            p[code] = static_cast<Point>(image);
        }
        gens.push_back(std::move(p));
    }
    return FiniteAction(inc.ambient, total, std::move(gens));
}

FiniteAction restrict_to(const FiniteAction& b, const SubgroupInclusion& inc)
{
    inc.validate();
    if (!(b.spec() == inc.ambient))
        throw Error("restrict_to: action is not over the ambient group");
    std::vector<Permutation> gens;
    for (std::size_t j = 0; j < inc.strides.size(); ++j) {
        std::vector<std::int64_t> v(inc.strides.size(), 0);
        v[j] = inc.strides[j];
        gens.push_back(b.permutation_of(b.spec().elem(v)));
    }
    return FiniteAction(inc.ambient, b.size(), std::move(gens));
}

bool is_equivariant(const FiniteAction& from, const FiniteAction& to, std::span<const Point> map)
{
    if (map.size() != from.size())
        return false;
    for (std::size_t s = 0; s < from.generators().size(); ++s)
        for (std::size_t x = 0; x < from.size(); ++x)
            if (map[from.generators()[s][x]] != to.generators()[s][map[x]])
                return false;
    return true;
}

std::uint64_t count_equivariant_maps(const FiniteAction& from, const FiniteAction& to)
{
    if (!(from.spec() == to.spec()))
        throw Error("equivariant maps between actions of different groups");
    // an equivariant map is fixed orbitwise by the image of one point
    std::uint64_t total = 1;
    std::vector<Point> image(from.size());
    std::vector<bool> set(from.size());
    for (auto& orbit : orbits(from)) {
        std::uint64_t good = 0;
        for (Point y = 0; y < to.size(); ++y) {
            for (auto x : orbit)
                set[x] = false;
            image[orbit[0]] = y;
            set[orbit[0]] = true;
            std::deque<Point> q{orbit[0]};
            bool ok = true;
            while (ok && !q.empty()) {
                Point x = q.front();
                q.pop_front();
                for (std::size_t s = 0; s < from.generators().size() && ok; ++s) {
                    Point fx = from.generators()[s][x];
                    Point ty = to.generators()[s][image[x]];
                    if (!set[fx]) {
                        set[fx] = true;
                        image[fx] = ty;
                        q.push_back(fx);
                    } else if (image[fx] != ty) {
                        ok = false;
                    }
                }
            }
            if (ok)
                ++good;
        }
        total *= good;
        if (total == 0)
            return 0;
    }
    return total;
}

FiniteAction action_from_4regular(const LocalGraph& g)
{
    const std::size_t n = g.size();
    if (n == 0)
        throw Error("empty graph");
    for (auto d : g.degrees())
        if (d != 4)
            throw Error("action_from_4regular: every vertex needs degree 4");
    if (!g.is_connected())
        throw Error("action_from_4regular: graph is disconnected");

    // Hierholzer walk from the vertex of least ID; the traversal direction of
    // each edge gives an orientation with in-degree = out-degree = 2.
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> inc(n);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        auto& e = g.edges[i];
        inc[e.u].emplace_back(i, e.v);
        if (e.u != e.v)
            inc[e.v].emplace_back(i, e.u);
    }
    std::size_t start = static_cast<std::size_t>(
        std::min_element(g.ids.begin(), g.ids.end()) - g.ids.begin());
    std::vector<bool> used(g.edges.size(), false);
    std::vector<std::size_t> ptr(n, 0), tail(g.edges.size()), head(g.edges.size());
    std::vector<std::size_t> stack{start};
    while (!stack.empty()) {
        std::size_t v = stack.back();
        while (ptr[v] < inc[v].size() && used[inc[v][ptr[v]].first])
            ++ptr[v];
        if (ptr[v] == inc[v].size()) {
            stack.pop_back();
            continue;
        }
        auto [id, w] = inc[v][ptr[v]];
        used[id] = true;
        tail[id] = v;
        head[id] = w;
        stack.push_back(w);
    }

    std::vector<std::vector<std::size_t>> out(n), in(n);
    for (std::size_t id = 0; id < g.edges.size(); ++id) {
        out[tail[id]].push_back(id);
        in[head[id]].push_back(id);
    }
    // 2-edge-colour the 2-regular bipartite tail/head graph by walking its
    // alternating cycles.
    std::vector<int> colour(g.edges.size(), -1);
    auto other = [](const std::vector<std::size_t>& two, std::size_t id) {
        return two[0] == id ? two[1] : two[0];
    };
    for (std::size_t e0 = 0; e0 < g.edges.size(); ++e0) {
        if (colour[e0] != -1)
            continue;
        std::size_t e = e0;
        int c = 0;
        while (colour[e] == -1) {
            colour[e] = c;
            std::size_t e2 = other(in[head[e]], e);
            if (colour[e2] != -1)
                break;
            colour[e2] = 1 - c;
            e = other(out[tail[e2]], e2);
        }
    }
    Permutation a(n), b(n);
    for (std::size_t v = 0; v < n; ++v)
        for (auto id : out[v])
            (colour[id] == 0 ? a : b)[v] = static_cast<Point>(head[id]);
    return FiniteAction(GroupSpec::free(2), n, {a, b});
}

std::optional<LocalGraph> random_large_girth_4regular(std::size_t tree_size, std::size_t girth_bound,
                                                      std::uint64_t seed, std::size_t max_retries)
{
    if (tree_size == 0)
        throw Error("tree_size must be positive");
    SplitMix64 rng(seed);
    const std::size_t min_dist = girth_bound > 0 ? girth_bound - 1 : 0;
    for (std::size_t attempt = 0; attempt < std::max<std::size_t>(1, max_retries); ++attempt) {
        LocalGraph g(tree_size);
        std::vector<std::size_t> deficit(tree_size, 4);
        std::vector<std::size_t> open{0};
        for (std::size_t v = 1; v < tree_size; ++v) {
            std::size_t pick = static_cast<std::size_t>(rng.below(open.size()));
            std::size_t parent = open[pick];
            g.add_edge(parent, v);
            --deficit[parent];
            --deficit[v];
            if (deficit[parent] == 0) {
                open[pick] = open.back();
                open.pop_back();
            }
            open.push_back(v);
        }
        std::vector<std::vector<std::size_t>> adj(tree_size);
        for (auto& e : g.edges) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
        bool stuck = false;
        std::vector<std::size_t> dist(tree_size);
        while (!stuck) {
            std::vector<std::size_t> hungry;
            for (std::size_t v = 0; v < tree_size; ++v)
                if (deficit[v] > 0)
                    hungry.push_back(v);
            if (hungry.empty())
                break;
            std::size_t u = hungry[rng.below(hungry.size())];
            // vertices closer than min_dist to u would close a short cycle
            constexpr auto far = std::numeric_limits<std::size_t>::max();
            std::fill(dist.begin(), dist.end(), far);
            dist[u] = 0;
            std::deque<std::size_t> q{u};
            while (!q.empty()) {
                auto v = q.front();
                q.pop_front();
                if (dist[v] + 1 >= min_dist)
                    continue;
                for (auto w : adj[v])
                    if (dist[w] == far) {
                        dist[w] = dist[v] + 1;
                        q.push_back(w);
                    }
            }
            std::vector<std::size_t> candidates;
            for (auto w : hungry) {
                if (w == u) {
                    if (min_dist == 0 && deficit[u] >= 2)
                        candidates.push_back(w);
                } else if (dist[w] == far || dist[w] >= min_dist) {
                    candidates.push_back(w);
                }
            }
            if (candidates.empty()) {
                stuck = true;
                break;
            }
            std::size_t w = candidates[rng.below(candidates.size())];
            g.add_edge(u, w);
            --deficit[u];
            --deficit[w];
            adj[u].push_back(w);
            if (u != w)
                adj[w].push_back(u);
        }
        if (stuck)
            continue;
        auto measured = girth(g);
        if (measured && *measured < girth_bound)
            continue;
        return g;
    }
    return std::nullopt;
}

} // namespace wclab

namespace wclab {

std::string action_to_text(const FiniteAction& a)
{
    std::ostringstream os;
    os << "group " << a.spec().to_string() << "\n";
    os << "points " << a.size() << "\n";
    auto names = a.spec().generator_names();
    for (std::size_t s = 0; s < a.generators().size(); ++s) {
        os << "gen " << names[s] << ":";
        for (auto p : a.generators()[s])
            os << " " << p;
        os << "\n";
    }
    return os.str();
}

FiniteAction parse_action(std::string_view text)
{
    std::optional<GroupSpec> spec;
    std::optional<std::size_t> n;
    std::map<std::string, Permutation> gens;
    std::istringstream is{std::string(text)};
    std::string line;
    while (std::getline(is, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key))
            continue;
        if (key == "group") {
            std::string rest;
            std::getline(ls, rest);
            spec = GroupSpec::parse(rest);
        } else if (key == "points") {
            std::size_t v;
            if (!(ls >> v))
                throw Error("bad points line: " + line);
            n = v;
        } else if (key == "gen") {
            std::string name;
            if (!(ls >> name) || name.empty() || name.back() != ':')
                throw Error("bad gen line: " + line);
            name.pop_back();
            Permutation p;
            long long v;
            while (ls >> v) {
                if (v < 0)
                    throw Error("negative image in gen line");
                p.push_back(static_cast<Point>(v));
            }
            if (!ls.eof())
                throw Error("bad image in gen line: " + line);
            gens[name] = std::move(p);
        } else {
            throw Error("unknown action file line: " + line);
        }
    }
    if (!spec || !n)
        throw Error("action file needs group and points lines");
    std::vector<Permutation> perms;
    for (auto& name : spec->generator_names()) {
        auto it = gens.find(name);
        if (it == gens.end())
            throw Error("action file is missing generator " + name);
        if (it->second.size() != *n)
            throw Error("generator " + name + " has the wrong number of images");
        perms.push_back(it->second);
    }
    if (gens.size() != perms.size())
        throw Error("action file has unknown generators");
    return FiniteAction(*spec, *n, std::move(perms));
}

} // namespace wclab
