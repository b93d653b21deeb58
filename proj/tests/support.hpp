#pragma once

// Random instance generators shared by the tests.

#include <algorithm>
#include <numeric>
#include <vector>

#include "wclab/action.hpp"
#include "wclab/graph.hpp"
#include "wclab/patterns.hpp"
#include "wclab/random.hpp"
#include "wclab/sft.hpp"

namespace support {

using namespace wclab;

inline GroupElem random_elem(const GroupSpec& g, SplitMix64& rng, int max_len = 6)
{
    auto gens = g.symmetric_generators();
    GroupElem e = g.identity();
    auto len = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_len) + 1));
    for (int i = 0; i < len; ++i)
        e = g.mul(e, gens[rng.below(gens.size())]);
    return e;
}

inline Permutation random_perm(std::size_t n, SplitMix64& rng)
{
    Permutation p(n);
    std::iota(p.begin(), p.end(), Point{0});
    for (std::size_t i = n; i > 1; --i)
        std::swap(p[i - 1], p[rng.below(i)]);
    return p;
}

/// Random action of a group whose generators need not satisfy relations (Z, F_k).
inline FiniteAction random_free_action(const GroupSpec& g, std::size_t n, SplitMix64& rng)
{
    std::vector<Permutation> gens;
    for (std::size_t i = 0; i < g.generator_count(); ++i)
        gens.push_back(random_perm(n, rng));
    return FiniteAction(g, n, gens);
}

/// Random Z^2-action: two commuting permutations, from a torus or a product
/// of cycles, relabelled by a random bijection.
inline FiniteAction random_z2_action(std::size_t max_side, SplitMix64& rng)
{
    std::size_t m = 1 + rng.below(max_side), n = 1 + rng.below(max_side);
    FiniteAction t = make_torus(m, n);
    Permutation s = random_perm(t.size(), rng);
    Permutation si = inverse(s);
    std::vector<Permutation> gens;
    for (auto& p : t.generators())
        gens.push_back(compose(s, compose(p, si)));
    return FiniteAction(t.spec(), t.size(), gens);
}

/// Window of the identity plus up to extra random elements.
inline Window random_window(const GroupSpec& g, SplitMix64& rng, std::size_t extra, bool with_identity = true)
{
    std::vector<GroupElem> e;
    if (with_identity)
        e.push_back(g.identity());
    for (std::size_t i = 0; i < extra; ++i)
        e.push_back(random_elem(g, rng, 2));
    if (e.empty())
        e.push_back(g.identity());
    return Window(g, e);
}

/// Explicit SFT keeping each pattern of A^W with probability keep/8.
inline SftSpec random_sft(const GroupSpec& g, std::size_t k, const Window& w, SplitMix64& rng, unsigned keep = 5)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < k; ++i)
        names.push_back(std::to_string(i));
    std::vector<Pattern> allowed;
    Pattern p(w.size(), 0);
    while (true) {
        if (rng.below(8) < keep)
            allowed.push_back(p);
        std::size_t i = p.size();
        while (i > 0 && p[i - 1] + 1 == k)
            p[--i] = 0;
        if (i == 0)
            break;
        ++p[i - 1];
    }
    return SftSpec::explicit_patterns(g, names, w, allowed);
}

inline Labelling random_labelling(std::size_t n, std::size_t k, SplitMix64& rng)
{
    Labelling f{k, std::vector<Symbol>(n)};
    for (auto& c : f.colors)
        c = static_cast<Symbol>(rng.below(k));
    return f;
}

/// Connected 4-regular multigraph by random pairing of half-edges (loops and
/// parallel edges allowed), retried until connected.
inline LocalGraph random_4regular(std::size_t n, SplitMix64& rng)
{
    while (true) {
        std::vector<std::size_t> half;
        for (std::size_t v = 0; v < n; ++v)
            half.insert(half.end(), 4, v);
        for (std::size_t i = half.size(); i > 1; --i)
            std::swap(half[i - 1], half[rng.below(i)]);
        LocalGraph g(n);
        for (std::size_t i = 0; i < half.size(); i += 2)
            g.add_edge(half[i], half[i + 1]);
        if (g.is_connected())
            return g;
    }
}

} // namespace support
