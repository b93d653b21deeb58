#include "doctest.h"

#include <cstdlib>

#include "oracles.hpp"
#include "support.hpp"
#include "wclab/group.hpp"

using namespace wclab;

namespace {

std::vector<GroupSpec> families()
{
    return {GroupSpec::free_abelian(1), GroupSpec::free_abelian(2), GroupSpec::free_abelian(3),
            GroupSpec::cyclic(6),       GroupSpec::torus(2, 3),     GroupSpec::free(2),
            GroupSpec::free(3),         GroupSpec::parse("Z*Z/3")};
}

// Lattice points of Z^d with |x|_1 <= r, counted coordinate by coordinate.
std::size_t l1_ball(int d, int r)
{
    if (d == 0)
        return 1;
    std::size_t total = 0;
    for (int x = -r; x <= r; ++x)
        total += l1_ball(d - 1, r - std::abs(x));
    return total;
}

} // namespace

TEST_CASE("element text forms")
{
    auto z2 = GroupSpec::free_abelian(2);
    CHECK(z2.format(z2.parse_elem("Z2:(1,-2)")) == "Z2:(1,-2)");
    CHECK(z2.format(z2.parse_elem("(1,-2)")) == "Z2:(1,-2)");
    auto c6 = GroupSpec::cyclic(6);
    CHECK(c6.format(c6.parse_elem("Z6:3")) == "Z6:3");
    CHECK(c6.format(c6.parse_elem("9")) == "Z6:3");
    auto t = GroupSpec::torus(2, 3);
    CHECK(t.format(t.parse_elem("T2x3:(1,1)")) == "T2x3:(1,1)");
    auto f2 = GroupSpec::free(2);
    CHECK(f2.format(f2.parse_elem("F2:abA")) == "F2:abA");
    CHECK(f2.format(f2.parse_elem("e")) == "F2:e");
    CHECK(f2.format(f2.parse_elem("aA")) == "F2:e");
    auto p = GroupSpec::parse("Z*Z/3");
    CHECK(p.format(p.parse_elem("P:[Z1:(2);Z3:1]")) == "P:[Z1:(2);Z3:1]");
}

TEST_CASE("group spec text round trips")
{
    for (auto& g : families())
        CHECK(GroupSpec::parse(g.to_string()) == g);
    CHECK_THROWS_AS(GroupSpec::parse("Q8"), Error);
    CHECK_THROWS_AS(GroupSpec::free(2).parse_elem("abc"), Error);
    CHECK_THROWS_AS(GroupSpec::free_abelian(2).parse_elem("(1,2,3)"), Error);
}

TEST_CASE("free group reduction")
{
    auto f = GroupSpec::free(2);
    CHECK(f.format(f.mul(f.parse_elem("ab"), f.parse_elem("Ba"))) == "F2:aa");
    CHECK(f.format(f.inv(f.parse_elem("abA"))) == "F2:aBA");
    CHECK(f.word_length(f.parse_elem("abA")) == 3);
    CHECK(f.format(f.pow(f.parse_elem("ab"), -2)) == "F2:BABA");
}

TEST_CASE("group axioms on random elements")
{
    SplitMix64 rng(7);
    for (auto& g : families())
        for (int i = 0; i < 1000; ++i) {
            auto a = support::random_elem(g, rng), b = support::random_elem(g, rng),
                 c = support::random_elem(g, rng);
            REQUIRE(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)));
            REQUIRE(g.mul(a, g.inv(a)) == g.identity());
            REQUIRE(g.mul(g.identity(), a) == a);
            REQUIRE(g.contains(a));
            REQUIRE(g.parse_elem(g.format(a)) == a);
            if (g.is_abelian())
                REQUIRE(g.mul(a, b) == g.mul(b, a));
        }
}

TEST_CASE("ball sizes against direct counts")
{
    for (int d = 1; d <= 3; ++d)
        for (int r = 0; r <= 4; ++r)
            CHECK(ball(GroupSpec::free_abelian(d), r).size() == l1_ball(d, r));
    for (int r = 0; r <= 4; ++r)
        CHECK(ball(GroupSpec::free(2), r).size() == oracle::free_ball_size(2, r));
    CHECK(ball(GroupSpec::free(2), 3).size() == 53);
    // every element of the ball has word length <= r
    auto f = GroupSpec::free(2);
    for (auto& g : ball(f, 3))
        CHECK(f.word_length(g) <= 3);
}

TEST_CASE("windows are canonical")
{
    auto z = GroupSpec::free_abelian(1);
    Window a = Window::parse(z, "1,0,1,-1");
    CHECK(a.size() == 3);
    CHECK(a.to_string() == Window::parse(z, "-1,0,1").to_string());
    CHECK(a.is_symmetric());
    CHECK_FALSE(Window::parse(z, "0,1").is_symmetric());
    CHECK(a.index_of(z.parse_elem("5")) == a.size());
    CHECK(split_top_level("(1,2),[a;b],3") == std::vector<std::string>{"(1,2)", "[a;b]", "3"});
}

TEST_CASE("cayley graph of a ball")
{
    LocalGraph g = cayley_graph(GroupSpec::free(2), 2);
    CHECK(g.size() == 17);
    CHECK(g.edges.size() == 16); // a tree
    CHECK_FALSE(oracle::girth(g).has_value());
    LocalGraph z2 = cayley_graph(GroupSpec::free_abelian(2), 1);
    CHECK(z2.size() == 5);
}
