#include "doctest.h"

#include <filesystem>
#include <set>

#include "oracles.hpp"
#include "support.hpp"
#include "wclab/certificate.hpp"
#include "wclab/sft.hpp"

using namespace wclab;

namespace {

std::filesystem::path scratch(const std::string& name)
{
    auto p = std::filesystem::temp_directory_path() / ("wclab-test-sft-" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

FiniteAction random_action(SplitMix64& rng, std::size_t max_n)
{
    switch (rng.below(3)) {
    case 0: return support::random_free_action(GroupSpec::free_abelian(1), 1 + rng.below(max_n), rng);
    case 1: return support::random_free_action(GroupSpec::free(2), 1 + rng.below(max_n), rng);
    default: return support::random_z2_action(2, rng);
    }
}

// Z window inside {0, ..., span - 1} containing 0.
Window z_window(SplitMix64& rng, std::size_t span)
{
    const GroupSpec z = GroupSpec::free_abelian(1);
    std::vector<GroupElem> e{z.identity()};
    for (std::size_t i = 1; i < span; ++i)
        if (rng.below(2))
            e.push_back(z.parse_elem(std::to_string(i)));
    return Window(z, e);
}

} // namespace

TEST_CASE("hom search against exhaustive search")
{
    SplitMix64 rng(41);
    int yes = 0, no = 0;
    for (int i = 0; i < 150; ++i) {
        FiniteAction a = random_action(rng, 5);
        Window w = support::random_window(a.spec(), rng, 1 + rng.below(2));
        std::size_t k = 1 + rng.below(3);
        SftSpec x = support::random_sft(a.spec(), k, w, rng, 2 + static_cast<unsigned>(rng.below(5)));
        HomCertificate r = hom_exists(a, x);
        REQUIRE(r.verdict != Verdict::unknown);
        CHECK((r.verdict == Verdict::yes) == oracle::brute_hom(a, x));
        if (r.verdict == Verdict::yes) {
            ++yes;
            REQUIRE(r.labelling);
            CHECK(verify_hom(*r.labelling, a, x));
            CHECK(oracle::admissible(a, x, r.labelling->colors));
        } else {
            ++no;
        }
    }
    CHECK(yes > 10);
    CHECK(no > 10);
}

TEST_CASE("hom search with required patterns")
{
    SplitMix64 rng(42);
    for (int i = 0; i < 100; ++i) {
        FiniteAction a = random_action(rng, 4);
        Window w = support::random_window(a.spec(), rng, 1);
        SftSpec x = support::random_sft(a.spec(), 2, w, rng, 6);
        if (x.allowed().empty())
            continue;
        std::vector<Pattern> hits{x.allowed()[rng.below(x.allowed().size())]};
        if (rng.below(2))
            hits.push_back(x.allowed()[rng.below(x.allowed().size())]);
        HomCertificate r = hom_exists(a, x, hits);
        REQUIRE(r.verdict != Verdict::unknown);
        CHECK((r.verdict == Verdict::yes) == oracle::brute_hom(a, x, hits));
        if (r.verdict == Verdict::yes) {
            auto s = oracle::pattern_set(a, w, r.labelling->colors);
            REQUIRE(r.hit_points.size() == hits.size());
            for (std::size_t h = 0; h < hits.size(); ++h) {
                CHECK(s.count(hits[h]));
                CHECK(oracle::pattern(a, w, r.labelling->colors, r.hit_points[h]) == hits[h]);
            }
        }
    }
}

TEST_CASE("counting refutations are sound")
{
    SplitMix64 rng(43);
    int fired = 0;
    for (int i = 0; i < 300; ++i) {
        FiniteAction a = random_action(rng, 6);
        Window w = support::random_window(a.spec(), rng, 1 + rng.below(2));
        SftSpec x = support::random_sft(a.spec(), 1 + rng.below(3), w, rng, 1 + static_cast<unsigned>(rng.below(4)));
        if (a.size() > 8)
            continue;
        if (auto orbit = counting_obstruction(a, x)) {
            ++fired;
            CHECK_FALSE(oracle::brute_hom(a, x));
            CHECK(*orbit >= 1);
        }
    }
    CHECK(fired > 0);
    // the period SFT on a cycle of length prime to p
    for (std::size_t m = 1; m <= 12; ++m) {
        HomCertificate r = hom_exists(make_cycle(m), period_sft(3));
        CHECK((r.verdict == Verdict::yes) == (m % 3 == 0));
    }
}

TEST_CASE("hom search is invariant under window translation")
{
    SplitMix64 rng(44);
    for (int i = 0; i < 60; ++i) {
        FiniteAction a = random_action(rng, 5);
        Window w = support::random_window(a.spec(), rng, 1 + rng.below(2));
        SftSpec x = support::random_sft(a.spec(), 2, w, rng, 3 + static_cast<unsigned>(rng.below(3)));
        SftSpec y = translate_window(x, support::random_elem(a.spec(), rng, 3));
        CHECK(hom_exists(a, x).verdict == hom_exists(a, y).verdict);
    }
}

TEST_CASE("hom budget yields unknown")
{
    HomCertificate r = hom_exists(make_torus(5, 6), tiling_sft_z2(4), {}, 1);
    CHECK(r.verdict != Verdict::yes);
    CHECK_FALSE(r.labelling);
}

TEST_CASE("proper colorings of Schreier graphs")
{
    SplitMix64 rng(45);
    for (int i = 0; i < 60; ++i) {
        FiniteAction a = random_action(rng, 7);
        Window w = support::random_window(a.spec(), rng, 1 + rng.below(2));
        std::vector<GroupElem> sym;
        for (auto& g : w.elements()) {
            sym.push_back(g);
            sym.push_back(a.spec().inv(g));
        }
        Window s(a.spec(), sym);
        SftSpec x = proper_coloring_sft(s);
        CHECK(x.alphabet_size() == s.size());
        bool loop = false;
        for (auto& g : s.elements())
            if (!a.spec().is_identity(g) && !chi(a, g))
                loop = true;
        HomCertificate r = hom_exists(a, x);
        CHECK((r.verdict == Verdict::yes) == !loop);
        if (r.verdict == Verdict::yes)
            CHECK(verify_hom(*r.labelling, a, x));
    }
    CHECK_THROWS_AS(proper_coloring_sft(Window::parse(GroupSpec::free_abelian(1), "0,1")), Error);
}

TEST_CASE("period SFT and divisibility")
{
    for (std::size_t p : {2, 3, 5, 7})
        for (std::size_t m = 1; m <= 24; ++m) {
            HomCertificate r = hom_exists(make_cycle(m), period_sft(p));
            CHECK((r.verdict == Verdict::yes) == (m % p == 0));
            if (r.verdict == Verdict::yes)
                CHECK(verify_hom(*r.labelling, make_cycle(m), period_sft(p)));
            if (m <= 8)
                CHECK((r.verdict == Verdict::yes) == oracle::brute_hom(make_cycle(m), period_sft(p)));
        }
}

TEST_CASE("polyomino pieces")
{
    const GroupSpec z2 = GroupSpec::free_abelian(2);
    std::vector<std::size_t> fixed{1, 2, 6, 19, 63};
    for (std::size_t p = 1; p <= 5; ++p) {
        auto pieces = enumerate_pieces(z2, p);
        CHECK(pieces.size() == fixed[p - 1]);
        CHECK(pieces.size() == oracle::polyominoes(static_cast<int>(p)).size());
        for (auto& piece : pieces) {
            CHECK(piece.size() == p);
            CHECK(std::find(piece.begin(), piece.end(), z2.identity()) != piece.end());
        }
        CHECK(tiling_sft_z2(p).alphabet_size() == p * fixed[p - 1]);
    }
    std::vector<std::size_t> free_pieces{1, 2, 6};
    for (std::size_t p = 1; p <= 3; ++p) {
        CHECK(enumerate_pieces(GroupSpec::free(2), p).size() == free_pieces[p - 1]);
        CHECK(tiling_sft_free(p).alphabet_size() == p * free_pieces[p - 1]);
    }
    CHECK_THROWS_AS(tiling_sft_z2(tiling_max_p_z2 + 1), Error);
    CHECK_THROWS_AS(tiling_sft_free(tiling_max_p_free + 1), Error);
}

TEST_CASE("torus tilings against exact cover")
{
    for (std::size_t p : {2, 3})
        for (std::size_t m = 1; m <= 4; ++m)
            for (std::size_t n = 1; n <= 4; ++n) {
                FiniteAction t = make_torus(m, n);
                SftSpec x = tiling_sft_z2(p);
                HomCertificate r = hom_exists(t, x);
                bool want = oracle::torus_tileable(static_cast<int>(m), static_cast<int>(n), static_cast<int>(p));
                CHECK((r.verdict == Verdict::yes) == want);
                CHECK(want == (m * n % p == 0));
                if (r.verdict == Verdict::yes)
                    CHECK(verify_hom(*r.labelling, t, x));
            }
}

TEST_CASE("free group tilings against exhaustive search")
{
    SplitMix64 rng(46);
    for (int i = 0; i < 40; ++i) {
        FiniteAction a = support::random_free_action(GroupSpec::free(2), 1 + rng.below(4), rng);
        for (std::size_t p = 1; p <= 2; ++p) {
            SftSpec x = tiling_sft_free(p);
            HomCertificate r = hom_exists(a, x);
            REQUIRE(r.verdict != Verdict::unknown);
            CHECK((r.verdict == Verdict::yes) == oracle::brute_hom(a, x));
            if (r.verdict == Verdict::yes)
                CHECK(verify_hom(*r.labelling, a, x));
        }
    }
}

TEST_CASE("Z nonemptiness against periodic search")
{
    SplitMix64 rng(47);
    int yes = 0, no = 0;
    for (int i = 0; i < 200; ++i) {
        std::size_t k = 1 + rng.below(3);
        Window w = z_window(rng, 3);
        SftSpec x = support::random_sft(GroupSpec::free_abelian(1), k, w, rng, 1 + static_cast<unsigned>(rng.below(5)));
        ZNonempty r = nonempty_z(x);
        // a shortest cycle of the transfer graph has at most k^2 states
        CHECK(r.nonempty == oracle::z_periodic_point(x, k * k));
        if (r.nonempty) {
            ++yes;
            REQUIRE_FALSE(r.witness.empty());
            Labelling f{k, r.witness};
            CHECK(verify_hom(f, make_cycle(r.witness.size()), x));
        } else {
            ++no;
        }
    }
    CHECK(yes > 20);
    CHECK(no > 20);
}

TEST_CASE("mixing examples")
{
    const GroupSpec z = GroupSpec::free_abelian(1);
    CHECK(is_mixing_z(full_shift(z, 2)));
    CHECK(is_mixing_z(golden_mean_sft()));
    SftSpec alternating = SftSpec::explicit_patterns(z, {"0", "1"}, Window::parse(z, "0,1"), {{0, 1}, {1, 0}});
    CHECK_FALSE(is_mixing_z(alternating));
    CHECK_FALSE(is_mixing_z(period_sft(3)));
    SftSpec empty = SftSpec::explicit_patterns(z, {"0"}, Window::parse(z, "0,1"), {});
    CHECK_THROWS_AS(is_mixing_z(empty), Error);
    // a transient symbol does not spoil mixing: 0 may only be followed by 1
    SftSpec transient = SftSpec::explicit_patterns(z, {"0", "1"}, Window::parse(z, "0,1"), {{0, 1}, {1, 1}});
    CHECK(is_mixing_z(transient));
}

TEST_CASE("mixing verdicts pass the independent checker")
{
    SplitMix64 rng(48);
    auto dir = scratch("mixing");
    for (int i = 0; i < 40; ++i) {
        SftSpec x = support::random_sft(GroupSpec::free_abelian(1), 1 + rng.below(3), z_window(rng, 3), rng, 4);
        if (!nonempty_z(x).nonempty)
            continue;
        bool mixing = is_mixing_z(x);
        auto sft_path = dir / ("x" + std::to_string(i) + ".sft");
        write_text_file(sft_path, sft_to_text(x));
        Certificate c;
        c.kind = "mixing";
        c.verdict = mixing ? Verdict::yes : Verdict::no;
        c.add("sft", sft_path.string());
        auto cert = dir / ("c" + std::to_string(i) + ".txt");
        write_text_file(cert, certificate_to_text(c));
        CHECK(check_certificate(cert).ok);
        c.verdict = mixing ? Verdict::no : Verdict::yes;
        write_text_file(cert, certificate_to_text(c));
        CHECK_FALSE(check_certificate(cert).ok);
    }
}

TEST_CASE("Z^2 period forcing and bounded nonemptiness")
{
    for (std::size_t q = 1; q <= 4; ++q) {
        SftSpec x = period_forcing_sft_z2(q);
        for (std::size_t m = 1; m <= 6; ++m)
            for (std::size_t n = 1; n <= 3; ++n)
                CHECK((hom_exists(make_torus(m, n), x).verdict == Verdict::yes) == (m % q == 0));
        Z2Result r = nonempty_z2_bounded(x, 6);
        CHECK(r.verdict == Verdict::yes);
        CHECK(r.m % q == 0);
        REQUIRE(r.labelling);
        CHECK(verify_hom(*r.labelling, make_torus(r.m, r.n), x));
    }
    const GroupSpec z2 = GroupSpec::free_abelian(2);
    // x(g) = 0 and x(e1 g) = 1 everywhere: contradiction one step away
    SftSpec broken = SftSpec::explicit_patterns(z2, {"0", "1"}, Window::parse(z2, "(0,0),(1,0)"), {{0, 1}});
    Z2Result r = nonempty_z2_bounded(broken, 4);
    CHECK(r.verdict == Verdict::no);
    CHECK(r.radius >= 1);
    CHECK(r.radius <= 2);
}

TEST_CASE("SFT file round trip")
{
    SplitMix64 rng(49);
    std::vector<SftSpec> xs{period_sft(4), golden_mean_sft(), tiling_sft_z2(3), tiling_sft_free(2),
                            period_forcing_sft_z2(3),
                            proper_coloring_sft(Window::parse(GroupSpec::free(2), "e,a,A,b,B"))};
    for (int i = 0; i < 10; ++i) {
        FiniteAction a = random_action(rng, 3);
        xs.push_back(support::random_sft(a.spec(), 3, support::random_window(a.spec(), rng, 2), rng));
    }
    for (auto& x : xs) {
        SftSpec y = parse_sft(sft_to_text(x));
        CHECK(sft_to_text(y) == sft_to_text(x));
        CHECK(y.group() == x.group());
        CHECK(y.is_pairwise() == x.is_pairwise());
    }
    CHECK_THROWS_AS(parse_sft("group Z\nalphabet 0 1\nwindow 0,1\nallow 0 2\n"), Error);
    CHECK_THROWS_AS(parse_sft("group Z\nalphabet 0 1\nwindow 0,1\nallow 0\n"), Error);
}

TEST_CASE("pairwise and explicit forms agree")
{
    SftSpec x = period_forcing_sft_z2(2);
    SftSpec e = x.to_explicit();
    CHECK_FALSE(e.is_pairwise());
    for (std::size_t m = 1; m <= 4; ++m)
        for (std::size_t n = 1; n <= 3; ++n) {
            FiniteAction t = make_torus(m, n);
            CHECK(hom_exists(t, x).verdict == hom_exists(t, e).verdict);
            CHECK(oracle::brute_hom(t, e) == (m % 2 == 0));
        }
}
