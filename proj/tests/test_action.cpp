#include "doctest.h"

#include <set>

#include "oracles.hpp"
#include "support.hpp"
#include "wclab/action.hpp"

using namespace wclab;

namespace {

std::vector<FiniteAction> sample_actions(SplitMix64& rng)
{
    std::vector<FiniteAction> out{make_cycle(7), make_torus(3, 4), regular_action(GroupSpec::cyclic(6)),
                                  regular_action(GroupSpec::torus(2, 3)),
                                  support::random_free_action(GroupSpec::free(2), 9, rng),
                                  support::random_free_action(GroupSpec::free_abelian(1), 8, rng),
                                  support::random_z2_action(4, rng)};
    out.push_back(product(make_cycle(2), make_cycle(3)));
    out.push_back(regular_action(GroupSpec::parse("Z/2*Z/3")));
    return out;
}

} // namespace

TEST_CASE("act is a left action")
{
    SplitMix64 rng(11);
    for (auto& a : sample_actions(rng)) {
        const GroupSpec& g = a.spec();
        for (int i = 0; i < 1000; ++i) {
            auto x = support::random_elem(g, rng), y = support::random_elem(g, rng);
            Point p = static_cast<Point>(rng.below(a.size()));
            REQUIRE(a.act(g.mul(x, y), p) == a.act(x, a.act(y, p)));
        }
        for (Point p = 0; p < a.size(); ++p)
            CHECK(a.act(g.identity(), p) == p);
    }
}

TEST_CASE("torus and cycle layout")
{
    FiniteAction t = make_torus(2, 3);
    auto z2 = t.spec();
    // point (i, j) = i*3 + j; e1 moves i
    CHECK(t.act(z2.parse_elem("(1,0)"), 0) == 3);
    CHECK(t.act(z2.parse_elem("(0,1)"), 0) == 1);
    CHECK(t.act(z2.parse_elem("(0,-1)"), 0) == 2);
    FiniteAction c = make_cycle(5);
    CHECK(c.act(c.spec().parse_elem("-1"), 0) == 4);
}

TEST_CASE("relations are checked at construction")
{
    Permutation three{1, 2, 0};
    CHECK_THROWS_AS(FiniteAction(GroupSpec::cyclic(2), 3, {three}), Error);
    CHECK_NOTHROW(FiniteAction(GroupSpec::cyclic(6), 3, {three}));
    Permutation swap01{1, 0, 2}, swap12{0, 2, 1};
    CHECK_THROWS_AS(FiniteAction(GroupSpec::free_abelian(2), 3, {swap01, swap12}), Error);
    CHECK_NOTHROW(FiniteAction(GroupSpec::free(2), 3, {swap01, swap12}));
    CHECK_THROWS_AS(FiniteAction(GroupSpec::free(2), 3, {swap01}), Error);
    CHECK_THROWS_AS(FiniteAction(GroupSpec::free_abelian(1), 3, {{0, 0, 1}}), Error);
}

TEST_CASE("chi against the minimum cover oracle")
{
    for (std::size_t n = 1; n <= 12; ++n) {
        FiniteAction c = make_cycle(n);
        GroupElem g = c.spec().generators()[0];
        ChiValue v = chi(c, g);
        auto want = oracle::chi(c, g);
        CHECK(v.has_value() == want.has_value());
        if (v)
            CHECK(*v == *want);
        CHECK(to_string(v) == (n == 1 ? "inf" : n % 2 ? "3" : "2"));
    }
    SplitMix64 rng(3);
    for (int i = 0; i < 60; ++i) {
        std::size_t n = 1 + rng.below(8);
        FiniteAction a = support::random_free_action(GroupSpec::free(2), n, rng);
        GroupElem g = support::random_elem(a.spec(), rng, 4);
        ChiValue v = chi(a, g);
        auto want = oracle::chi(a, g);
        REQUIRE(v.has_value() == want.has_value());
        if (v) {
            CHECK(*v == *want);
            auto cover = chi_cover(a, g);
            REQUIRE(cover);
            std::set<std::uint32_t> used(cover->begin(), cover->end());
            CHECK(used.size() <= *v);
            for (Point x = 0; x < n; ++x)
                CHECK((*cover)[x] != (*cover)[a.act(g, x)]);
        }
    }
}

TEST_CASE("orbits and transitivity")
{
    SplitMix64 rng(5);
    for (int i = 0; i < 50; ++i) {
        FiniteAction a = support::random_free_action(GroupSpec::free_abelian(1), 1 + rng.below(9), rng);
        CHECK(orbits(a).size() == oracle::orbit_count(a));
        CHECK(is_transitive(a) == (oracle::orbit_count(a) == 1));
    }
    CHECK(is_transitive(make_torus(3, 4)));
    CHECK_FALSE(is_transitive(product(make_cycle(2), make_cycle(4))));
}

TEST_CASE("product and its projections")
{
    FiniteAction a = make_cycle(2), b = make_cycle(3);
    FiniteAction p = product(a, b);
    CHECK(p.size() == 6);
    CHECK(oracle::isomorphic(p, make_cycle(6)));
    CHECK_FALSE(oracle::isomorphic(product(make_cycle(2), make_cycle(2)), make_cycle(4)));
    SplitMix64 rng(8);
    FiniteAction c = support::random_free_action(GroupSpec::free(2), 4, rng);
    FiniteAction d = support::random_free_action(GroupSpec::free(2), 3, rng);
    FiniteAction cd = product(c, d);
    std::vector<Point> first(cd.size()), second(cd.size());
    for (Point z = 0; z < cd.size(); ++z) {
        first[z] = z / 3;
        second[z] = z % 3;
    }
    CHECK(is_equivariant(cd, c, first));
    CHECK(is_equivariant(cd, d, second));
    // pointwise check through act()
    for (int i = 0; i < 200; ++i) {
        GroupElem g = support::random_elem(cd.spec(), rng);
        Point z = static_cast<Point>(rng.below(cd.size()));
        CHECK(first[cd.act(g, z)] == c.act(g, first[z]));
        CHECK(second[cd.act(g, z)] == d.act(g, second[z]));
    }
}

TEST_CASE("freeness on a ball")
{
    SplitMix64 rng(9);
    for (int i = 0; i < 30; ++i) {
        FiniteAction a = support::random_free_action(GroupSpec::free(2), 2 + rng.below(10), rng);
        for (int r = 1; r <= 3; ++r) {
            bool want = true;
            for (auto& g : ball(a.spec(), r))
                if (!a.spec().is_identity(g) && !chi(a, g))
                    want = false;
            CHECK(is_free_up_to(a, r) == want);
        }
    }
    CHECK(is_free_up_to(make_torus(5, 5), 4));
    CHECK_FALSE(is_free_up_to(make_torus(5, 5), 5));
}

TEST_CASE("coinduction along 2Z in Z")
{
    SubgroupInclusion inc = SubgroupInclusion::standard({2});
    SplitMix64 rng(4);
    for (int i = 0; i < 20; ++i) {
        FiniteAction a = support::random_free_action(GroupSpec::free_abelian(1), 1 + rng.below(3), rng);
        FiniteAction co = coinduce(a, inc);
        CHECK(co.size() == a.size() * a.size());
        // evaluation at the identity coset is a Delta-map coind(a)|Delta -> a
        FiniteAction back = restrict_to(co, inc);
        std::vector<Point> eval(co.size());
        for (Point x = 0; x < co.size(); ++x)
            eval[x] = static_cast<Point>(x % a.size());
        CHECK(is_equivariant(back, a, eval));
        // adjunction counts
        FiniteAction b = support::random_free_action(GroupSpec::free_abelian(1), 1 + rng.below(3), rng);
        CHECK(oracle::equivariant_maps(restrict_to(b, inc), a) == oracle::equivariant_maps(b, co));
        CHECK(count_equivariant_maps(b, co) == oracle::equivariant_maps(b, co));
    }
}

TEST_CASE("coinduction along a Z^2 sublattice")
{
    SubgroupInclusion inc = SubgroupInclusion::standard({2, 1});
    SplitMix64 rng(12);
    for (int i = 0; i < 10; ++i) {
        FiniteAction a = support::random_z2_action(2, rng);
        FiniteAction co = coinduce(a, inc);
        FiniteAction b = support::random_z2_action(2, rng);
        CHECK(oracle::equivariant_maps(restrict_to(b, inc), a) == oracle::equivariant_maps(b, co));
    }
}

TEST_CASE("Schreier realization of 4-regular graphs")
{
    SplitMix64 rng(21);
    for (int i = 0; i < 50; ++i) {
        std::size_t n = 1 + rng.below(50);
        LocalGraph g = support::random_4regular(n, rng);
        FiniteAction a = action_from_4regular(g);
        CHECK(a.spec() == GroupSpec::free(2));
        CHECK(schreier(a).edge_multiset() == g.edge_multiset());
    }
    LocalGraph bad(3);
    bad.add_edge(0, 1);
    CHECK_THROWS_AS(action_from_4regular(bad), Error);
}

TEST_CASE("random large girth graphs")
{
    for (std::size_t girth = 1; girth <= 6; ++girth)
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            auto g = random_large_girth_4regular(120, girth, seed, 1000);
            REQUIRE(g);
            for (auto d : g->degrees())
                CHECK(d == 4);
            CHECK(g->is_connected());
            auto measured = oracle::girth(*g);
            CHECK((!measured || *measured >= girth));
            auto again = random_large_girth_4regular(120, girth, seed, 1000);
            CHECK(again->edges == g->edges);
        }
}

TEST_CASE("action file round trip")
{
    SplitMix64 rng(2);
    for (auto& a : {make_torus(2, 3), support::random_free_action(GroupSpec::free(2), 5, rng),
                    regular_action(GroupSpec::parse("Z/2*Z/3"))}) {
        FiniteAction b = parse_action(action_to_text(a));
        CHECK(b.spec() == a.spec());
        CHECK(b.generators() == a.generators());
    }
    CHECK_THROWS_AS(parse_action("group Z\npoints 3\ngen e1: 0 0 1\n"), Error);
    CHECK_THROWS_AS(parse_action("group Z\npoints 2\n"), Error);
}

TEST_CASE("graph file formats")
{
    LocalGraph g = schreier(make_torus(2, 3));
    LocalGraph h = parse_graph(to_edge_list(g));
    CHECK(h.edge_multiset() == g.edge_multiset());
    LocalGraph d = parse_graph(to_dot(g));
    CHECK(d.edge_multiset() == g.edge_multiset());
    LocalGraph ids = parse_edge_list("3\n0 1\n1 2\nid 0 17\nid 2 5\n");
    CHECK(ids.ids == std::vector<std::uint64_t>{17, 1, 5});
    CHECK(oracle::girth(schreier(make_cycle(7))) == girth(schreier(make_cycle(7))));
}
