#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wclab/graph.hpp"
#include "wclab/group.hpp"

namespace wclab {

using Point = std::uint32_t;
using Permutation = std::vector<Point>;

/// An action of a finitely generated group on the points 0..n-1, given by one
/// permutation per distinguished generator. The defining relations of the
/// group are checked when the action is built.
class FiniteAction {
public:
    FiniteAction(GroupSpec spec, std::size_t n, std::vector<Permutation> generator_perms);

    const GroupSpec& spec() const { return spec_; }
    std::size_t size() const { return n_; }
    const std::vector<Permutation>& generators() const { return perms_; }

    /// Image of x under g.
    Point act(const GroupElem& g, Point x) const;
    /// The permutation a(g) as an image list.
    Permutation permutation_of(const GroupElem& g) const;

private:
    GroupSpec spec_;
    std::size_t n_;
    std::vector<Permutation> perms_;
    std::vector<Permutation> inverses_;
};

Permutation compose(const Permutation& outer, const Permutation& inner);
Permutation inverse(const Permutation& p);
bool is_permutation(const Permutation& p);

/// c_n: Z acting on Z/nZ by +1.
FiniteAction make_cycle(std::size_t n);
/// c_{m,n}: Z^2 acting on the m x n torus; point (i,j) is i*n + j.
FiniteAction make_torus(std::size_t m, std::size_t n);
/// Diagonal action on pairs; point (x,y) is x*b.size() + y.
FiniteAction product(const FiniteAction& a, const FiniteAction& b);
/// Left translation action of a finite group (cyclic, torus or products of those) on itself.
FiniteAction regular_action(const GroupSpec& finite_group);

/// Sch(a, E): one labelled edge {x, s x} per point per generator.
LocalGraph schreier(const FiniteAction& a);

bool is_transitive(const FiniteAction& a);
std::vector<std::vector<Point>> orbits(const FiniteAction& a);

/// No nonidentity element of word length <= radius fixes a point.
bool is_free_up_to(const FiniteAction& a, int radius);

/// chi(g, a): fewest sets S_i covering the points with g S_i disjoint from S_i.
/// nullopt stands for infinity (g has a fixed point).
using ChiValue = std::optional<std::uint32_t>;
ChiValue chi(const FiniteAction& a, const GroupElem& g);
std::string to_string(const ChiValue& c);
/// A cover attaining chi(g, a), as the index of the set holding each point.
std::optional<std::vector<std::uint32_t>> chi_cover(const FiniteAction& a, const GroupElem& g);

/// Finite-index inclusion of Delta into Z^d given by coordinate strides
/// (Delta = s_1 Z x ... x s_d Z), together with a transversal R of Z^d / Delta
/// that contains the identity. An action of Delta is written as an action of
/// Z^d whose i-th generator stands for s_i e_i.
struct SubgroupInclusion {
    GroupSpec ambient = GroupSpec::free_abelian(1);
    std::vector<std::int64_t> strides;
    std::vector<GroupElem> transversal;

    /// Standard transversal {0..s_1-1} x ... x {0..s_d-1}.
    static SubgroupInclusion standard(std::vector<std::int64_t> strides);
    void validate() const;
};

/// coind(a): Z^d acting on functions R -> points(a) by
/// (g x)(r) = d^{-1} . x(r') where g^{-1} r = r' d.
/// A function x is encoded as sum_i x(r_i) * |a|^i.
FiniteAction coinduce(const FiniteAction& a, const SubgroupInclusion& inc);
/// b restricted to Delta, written as a Z^d-action.
FiniteAction restrict_to(const FiniteAction& b, const SubgroupInclusion& inc);

/// Number of equivariant maps from -> to (exhaustive with orbit propagation).
std::uint64_t count_equivariant_maps(const FiniteAction& from, const FiniteAction& to);
bool is_equivariant(const FiniteAction& from, const FiniteAction& to, std::span<const Point> map);

/// F_2-action whose Schreier graph has the same edge multiset as g.
/// Requires g connected and 4-regular (loops count twice).
FiniteAction action_from_4regular(const LocalGraph& g);

/// Random connected 4-regular graph of girth >= girth containing a random
/// spanning tree of maximum degree <= 4. Deterministic in seed. Returns
/// nullopt when max_retries attempts all fail.
std::optional<LocalGraph> random_large_girth_4regular(std::size_t tree_size, std::size_t girth,
                                                      std::uint64_t seed, std::size_t max_retries);

/// Action file: `group <spec>`, `points <n>`, then `gen <name>: images...`.
std::string action_to_text(const FiniteAction& a);
FiniteAction parse_action(std::string_view text);

} // namespace wclab
