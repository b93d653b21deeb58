// Acceptance suite: one PASS/FAIL line per criterion, each timed against its
// budget. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "oracles.hpp"
#include "support.hpp"
#include "wclab/certificate.hpp"
#include "wclab/experiments.hpp"
#include "wclab/local.hpp"
#include "wclab/sft.hpp"

using namespace wclab;
namespace fs = std::filesystem;

namespace {

struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<bool(std::ostream&)> run;
};

fs::path work_dir()
{
    static const fs::path dir = [] {
        auto p = fs::temp_directory_path() / "wclab-acceptance";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

// Every certificate written on a Yes outcome, re-checked by criterion 12.
std::vector<fs::path> yes_certificates;

std::string join(const std::vector<Symbol>& v)
{
    std::string s;
    for (auto x : v)
        s += (s.empty() ? "" : " ") + std::to_string(x);
    return s;
}

fs::path fresh_dir(const std::string& name)
{
    auto p = work_dir() / name;
    fs::create_directories(p);
    return p;
}

void record_hom(const std::string& name, const FiniteAction& a, const SftSpec& x, const HomCertificate& r)
{
    if (r.verdict != Verdict::yes)
        return;
    auto dir = fresh_dir(name);
    write_text_file(dir / "a.act", action_to_text(a));
    write_text_file(dir / "x.sft", sft_to_text(x));
    yes_certificates.push_back(write_hom_certificate(dir, r, "a.act", "x.sft"));
}

void record(const std::string& name, const Certificate& c)
{
    auto path = fresh_dir(name) / "certificate.txt";
    write_text_file(path, certificate_to_text(c));
    if (c.verdict == Verdict::yes)
        yes_certificates.push_back(path);
}

// Y on window u containing every image pattern of rule on configurations of x:
// the rule output at u g reads f on v u g, and x constrains f wherever a
// translate of its window fits inside v u.
SftSpec image_sft(const SftSpec& x, const LocalRule& rule, const Window& u)
{
    const GroupSpec& g = x.group();
    std::vector<GroupElem> vu_elems;
    for (auto& v : rule.window)
        for (auto& w : u)
            vu_elems.push_back(g.mul(v, w));
    Window vu(g, vu_elems);
    std::vector<std::vector<std::size_t>> checks;
    for (auto& w0 : x.window())
        for (auto& s : vu) {
            GroupElem t = g.mul(g.inv(w0), s);
            std::vector<std::size_t> idx;
            for (auto& w : x.window()) {
                std::size_t i = vu.index_of(g.mul(w, t));
                if (i == vu.size())
                    break;
                idx.push_back(i);
            }
            if (idx.size() == x.window().size())
                checks.push_back(idx);
        }
    std::vector<std::vector<std::size_t>> reads;
    for (auto& w : u) {
        std::vector<std::size_t> idx;
        for (auto& v : rule.window)
            idx.push_back(vu.index_of(g.mul(v, w)));
        reads.push_back(idx);
    }
    std::set<Pattern> allowed;
    oracle::any_word(vu.size(), x.alphabet_size(), [&](const std::vector<Symbol>& p) {
        for (auto& c : checks) {
            Pattern q;
            for (auto i : c)
                q.push_back(p[i]);
            if (!x.allows(q))
                return false;
        }
        Pattern out;
        for (auto& r : reads) {
            Pattern q;
            for (auto i : r)
                q.push_back(p[i]);
            out.push_back(rule.table.at(q));
        }
        allowed.insert(out);
        return false;
    });
    std::vector<std::string> names;
    for (std::size_t i = 0; i < rule.colors; ++i)
        names.push_back(std::to_string(i));
    return SftSpec::explicit_patterns(g, names, u, {allowed.begin(), allowed.end()});
}

bool odometer(std::ostream& out)
{
    FiniteAction c2 = make_cycle(2);
    PatternSet s = patterns_of(c2, Labelling{2, {0, 1}}, Window::parse(c2.spec(), "0,1"));
    out << s.patterns.size() << " patterns";
    return s.patterns == std::vector<Pattern>{{0, 1}, {1, 0}};
}

bool antichain(std::ostream& out)
{
    bool ok = true;
    std::size_t yes = 0;
    for (std::size_t p : {2, 3, 5, 7})
        for (std::size_t m = 1; m <= 24; ++m) {
            FiniteAction a = make_cycle(m);
            SftSpec x = period_sft(p);
            HomCertificate r = hom_exists(a, x);
            ok &= (r.verdict == Verdict::yes) == (m % p == 0);
            if (r.verdict == Verdict::yes) {
                ++yes;
                ok &= verify_hom(*r.labelling, a, x);
                record_hom("antichain-" + std::to_string(p) + "-" + std::to_string(m), a, x, r);
            }
        }
    out << "96 cells, " << yes << " yes";
    return ok;
}

bool torus_tiling(std::ostream& out)
{
    bool ok = true;
    std::size_t cells = 0, oracle_cells = 0;
    for (std::size_t p : {2, 3, 5}) {
        SftSpec x = tiling_sft_z2(p);
        for (std::size_t n = 1; n <= 6; ++n)
            for (std::size_t m = 1; m <= 6; ++m) {
                FiniteAction t = make_torus(n, m);
                HomCertificate r = hom_exists(t, x);
                ++cells;
                ok &= (r.verdict == Verdict::yes) == (n * m % p == 0);
                if (r.verdict == Verdict::yes) {
                    ok &= verify_hom(*r.labelling, t, x);
                    record_hom("tiling-" + std::to_string(p) + "-" + std::to_string(n) + "x" + std::to_string(m),
                               t, x, r);
                }
                if (n <= 4 && m <= 4) {
                    ++oracle_cells;
                    ok &= (r.verdict == Verdict::yes) ==
                          oracle::torus_tileable(static_cast<int>(n), static_cast<int>(m), static_cast<int>(p));
                }
            }
    }
    out << cells << " cells, " << oracle_cells << " against exact cover";
    return ok;
}

bool chi_values(std::ostream& out)
{
    bool ok = true;
    for (std::size_t n = 1; n <= 12; ++n) {
        FiniteAction c = make_cycle(n);
        GroupElem g = c.spec().generators()[0];
        ChiValue v = chi(c, g);
        auto want = oracle::chi(c, g);
        ok &= v == want;
        ok &= to_string(v) == (n == 1 ? "inf" : n % 2 ? "3" : "2");
        auto dir = fresh_dir("chi-" + std::to_string(n));
        write_text_file(dir / "c.act", action_to_text(c));
        Certificate cert;
        cert.kind = "chi";
        cert.verdict = Verdict::yes;
        cert.add("action", "c.act");
        cert.add("element", c.spec().format(g));
        cert.add("value", to_string(v));
        auto cover = chi_cover(c, g);
        cert.add("map", cover ? join(std::vector<Symbol>(cover->begin(), cover->end())) : "");
        record("chi-" + std::to_string(n), cert);
    }
    out << "n = 1..12";
    return ok;
}

FiniteAction small_action(const GroupSpec& g, SplitMix64& rng)
{
    return support::random_free_action(g, 1 + rng.below(4), rng);
}

bool preorder(std::ostream& out)
{
    SplitMix64 rng(1005);
    bool ok = true;
    const std::vector<GroupSpec> groups{GroupSpec::free_abelian(1), GroupSpec::free(2)};
    for (int i = 0; i < 100; ++i) {
        const GroupSpec& g = groups[rng.below(groups.size())];
        FiniteAction a = small_action(g, rng), b = small_action(g, rng);
        Window w = support::random_window(g, rng, rng.below(2));
        std::size_t k = 1 + rng.below(2);
        ok &= weakly_contains_at(a, a, w, k, Csp::unlimited).verdict == Verdict::yes;
        ok &= weakly_contains_at(product(a, b), a, w, k, Csp::unlimited).verdict == Verdict::yes;
    }
    FiniteAction c2 = make_cycle(2), c3 = make_cycle(3), c4 = make_cycle(4);
    Window w = Window::parse(c2.spec(), "0,1");
    ok &= weakly_contains_at(c4, c2, w, 2, Csp::unlimited).verdict == Verdict::yes;
    ContainmentVerdict no = weakly_contains_at(c2, c3, w, 2, Csp::unlimited);
    ok &= no.verdict == Verdict::no && no.counterexample &&
          realize_pattern_set(c3, *no.counterexample).verdict == Verdict::yes &&
          realize_pattern_set(c2, *no.counterexample).verdict == Verdict::no;
    out << "100 random actions";
    return ok;
}

bool freeness(std::ostream& out)
{
    SplitMix64 rng(1006);
    bool ok = true;
    int pairs = 0, attempts = 0;
    while (pairs < 50 && attempts < 5000) {
        ++attempts;
        const GroupSpec g = rng.below(2) ? GroupSpec::free(2) : GroupSpec::free_abelian(2);
        FiniteAction b = g.is_abelian() ? support::random_z2_action(4, rng)
                                        : support::random_free_action(g, 2 + rng.below(6), rng);
        GroupElem e = support::random_elem(g, rng, 3);
        if (g.is_identity(e))
            continue;
        auto cover = chi_cover(b, e);
        if (!cover)
            continue;
        std::uint32_t sets = 0;
        for (auto c : *cover)
            sets = std::max(sets, c + 1);
        // the cover as a labelling; its pattern set at {id, g} has no constant pattern
        Window w(g, {g.identity(), e});
        PatternSet s = patterns_of(b, Labelling{sets, std::vector<Symbol>(cover->begin(), cover->end())}, w);
        FiniteAction a = rng.below(2) ? product(b, g.is_abelian() ? support::random_z2_action(3, rng)
                                                                  : support::random_free_action(g, 1 + rng.below(3), rng))
                                      : (g.is_abelian() ? support::random_z2_action(4, rng)
                                                        : support::random_free_action(g, 2 + rng.below(8), rng));
        Realization r = realize_pattern_set(a, s);
        if (r.verdict != Verdict::yes)
            continue;
        ++pairs;
        ChiValue ca = chi(a, e), cb = chi(b, e);
        ok &= ca.has_value() && cb.has_value() && *ca <= *cb;
        if (a.size() <= 10)
            ok &= ca == oracle::chi(a, e);
    }
    out << pairs << " realized pairs in " << attempts << " attempts";
    return ok && pairs == 50;
}

LocalRule random_rule(const Window& w, std::size_t k_in, std::size_t k_out, SplitMix64& rng)
{
    LocalRule rule{w, k_out, {}};
    oracle::any_word(w.size(), k_in, [&](const std::vector<Symbol>& p) {
        rule.table[p] = static_cast<Symbol>(rng.below(k_out));
        return false;
    });
    return rule;
}

bool composition(std::ostream& out)
{
    SplitMix64 rng(1007);
    bool ok = true;
    int homs = 0;
    for (int i = 0; i < 100; ++i) {
        FiniteAction a = i % 3 == 0   ? support::random_free_action(GroupSpec::free_abelian(1), 1 + rng.below(8), rng)
                         : i % 3 == 1 ? support::random_z2_action(3, rng)
                                      : support::random_free_action(GroupSpec::free(2), 1 + rng.below(6), rng);
        const GroupSpec& g = a.spec();
        LocalRule rule = random_rule(support::random_window(g, rng, 1 + rng.below(2)), 2, 2, rng);
        Labelling f = support::random_labelling(a.size(), 2, rng);

        // translation is an automorphism of an abelian action
        if (g.is_abelian()) {
            GroupElem t = support::random_elem(g, rng);
            ok &= apply_local_rule(a, rule, translate_labelling(a, t, f)) ==
                  translate_labelling(a, t, apply_local_rule(a, rule, f));
        }
        // pulling back along the projection a x b -> a commutes with the rule
        FiniteAction b = g.is_abelian() && g != GroupSpec::free_abelian(1)
                             ? support::random_z2_action(2, rng)
                             : support::random_free_action(g, 1 + rng.below(3), rng);
        FiniteAction ab = product(a, b);
        Labelling pulled{2, std::vector<Symbol>(ab.size())};
        for (Point z = 0; z < ab.size(); ++z)
            pulled.colors[z] = f.colors[z / b.size()];
        Labelling lhs = apply_local_rule(ab, rule, pulled), rhs = apply_local_rule(a, rule, f);
        for (Point z = 0; z < ab.size(); ++z)
            ok &= lhs.colors[z] == rhs.colors[z / b.size()];

        // hom certificates go to hom certificates
        SftSpec x = support::random_sft(g, 2, support::random_window(g, rng, 1), rng, 6);
        HomCertificate r = hom_exists(a, x);
        ok &= r.verdict != Verdict::unknown;
        if (r.verdict == Verdict::yes) {
            ++homs;
            SftSpec y = image_sft(x, rule, support::random_window(g, rng, 1));
            Labelling image = apply_local_rule(a, rule, *r.labelling);
            ok &= verify_hom(image, a, y);
            HomCertificate mapped{Verdict::yes, image, {}, 0, false};
            record_hom("composition-" + std::to_string(i), a, y, mapped);
        }
    }
    out << "100 instances, " << homs << " hom certificates mapped";
    return ok && homs > 0;
}

std::vector<FiniteAction> z_actions_up_to(std::size_t n)
{
    std::vector<FiniteAction> out;
    for (std::size_t k = 1; k <= n; ++k) {
        Permutation p(k);
        for (std::size_t i = 0; i < k; ++i)
            p[i] = static_cast<Point>(i);
        do
            out.emplace_back(GroupSpec::free_abelian(1), k, std::vector<Permutation>{p});
        while (std::next_permutation(p.begin(), p.end()));
    }
    return out;
}

bool adjunction(std::ostream& out)
{
    SubgroupInclusion inc = SubgroupInclusion::standard({2});
    bool ok = true;
    std::size_t pairs = 0;
    auto all = z_actions_up_to(3);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = 0; j < all.size(); ++j) {
            const FiniteAction &a = all[i], &b = all[j];
            auto left = oracle::equivariant_maps(restrict_to(b, inc), a);
            auto right = oracle::equivariant_maps(b, coinduce(a, inc));
            ok &= left == right;
            ok &= count_equivariant_maps(b, coinduce(a, inc)) == right;
            ++pairs;
            std::string name = "adjunction-" + std::to_string(i) + "-" + std::to_string(j);
            auto dir = fresh_dir(name);
            write_text_file(dir / "a.act", action_to_text(a));
            write_text_file(dir / "b.act", action_to_text(b));
            Certificate c;
            c.kind = "adjunction";
            c.verdict = left == right ? Verdict::yes : Verdict::no;
            c.add("a", "a.act");
            c.add("b", "b.act");
            c.add("strides", "2");
            c.add("left", std::to_string(left));
            c.add("right", std::to_string(right));
            record(name, c);
        }
    out << pairs << " pairs";
    return ok;
}

bool schreier_realization(std::ostream& out)
{
    SplitMix64 rng(1009);
    bool ok = true;
    for (int i = 0; i < 50; ++i) {
        LocalGraph g = support::random_4regular(1 + rng.below(50), rng);
        ok &= schreier(action_from_4regular(g)).edge_multiset() == g.edge_multiset();
    }
    std::size_t graphs = 0;
    for (std::size_t girth = 1; girth <= 6; ++girth)
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            auto g = random_large_girth_4regular(200, girth, seed, 1000);
            if (!g) {
                ok = false;
                continue;
            }
            ++graphs;
            auto measured = oracle::girth(*g);
            ok &= !measured || *measured >= girth;
            std::string name = "girth-" + std::to_string(girth) + "-" + std::to_string(seed);
            auto dir = fresh_dir(name);
            write_text_file(dir / "g.edges", to_edge_list(*g));
            write_text_file(dir / "a.act", action_to_text(action_from_4regular(*g)));
            Certificate c;
            c.kind = "girth";
            c.verdict = Verdict::yes;
            c.add("graph", "g.edges");
            c.add("action", "a.act");
            c.add("girth", std::to_string(girth));
            record(name, c);
        }
    out << "50 graphs realized, " << graphs << " large-girth graphs";
    return ok;
}

bool local_coloring(std::ostream& out)
{
    bool ok = true;
    const SftSpec coloring = proper_coloring_sft(Window::parse(GroupSpec::free_abelian(1), "-1,0,1"));
    std::size_t worst = 0;
    for (std::size_t n : {std::size_t{10}, std::size_t{100}, std::size_t{10000}, std::size_t{1} << 16}) {
        FiniteAction c = make_cycle(n);
        LocalGraph g = schreier(c);
        RoundTrace t = cole_vishkin_color(g);
        std::uint64_t max_id = *std::max_element(g.ids.begin(), g.ids.end());
        const std::size_t bound = log_star(max_id) + 10;
        ok &= is_proper_coloring(g, t.coloring) && t.rounds <= bound;
        for (auto col : t.coloring)
            ok &= col <= 2;
        Labelling f{3, std::vector<Symbol>(t.coloring.begin(), t.coloring.end())};
        ok &= verify_hom(f, c, coloring);
        worst = std::max(worst, t.rounds);
        std::string name = "coloring-" + std::to_string(n);
        auto dir = fresh_dir(name);
        write_text_file(dir / "g.edges", to_edge_list(g));
        Certificate cert;
        cert.kind = "coloring";
        cert.verdict = Verdict::yes;
        cert.add("graph", "g.edges");
        cert.add("rounds", std::to_string(t.rounds));
        cert.add("bound", std::to_string(bound));
        cert.add("map", join(f.colors));
        record(name, cert);
    }
    out << "at most " << worst << " rounds";
    return ok;
}

bool z_decisions(std::ostream& out)
{
    SplitMix64 rng(1011);
    bool ok = true;
    const GroupSpec z = GroupSpec::free_abelian(1);
    std::size_t nonempty = 0;
    for (int i = 0; i < 200; ++i) {
        std::size_t k = 1 + rng.below(3);
        Window w = support::random_window(z, rng, rng.below(3));
        SftSpec x = support::random_sft(z, k, w, rng, 1 + static_cast<unsigned>(rng.below(6)));
        ZNonempty r = nonempty_z(x);
        ok &= r.nonempty == oracle::z_periodic_point(x, 8);
        if (r.nonempty) {
            ++nonempty;
            std::string name = "nonempty-z-" + std::to_string(i);
            auto dir = fresh_dir(name);
            write_text_file(dir / "x.sft", sft_to_text(x));
            Certificate c;
            c.kind = "nonempty-z";
            c.verdict = Verdict::yes;
            c.add("sft", "x.sft");
            c.add("period", join(r.witness));
            record(name, c);
        }
    }
    ok &= is_mixing_z(full_shift(z, 2));
    ok &= is_mixing_z(golden_mean_sft());
    ok &= !is_mixing_z(SftSpec::explicit_patterns(z, {"0", "1"}, Window::parse(z, "0,1"), {{0, 1}, {1, 0}}));
    out << "200 random SFTs, " << nonempty << " nonempty";
    return ok;
}

bool certificate_integrity(std::ostream& out)
{
    // the scripted grids check their own certificates and throw on failure
    ExperimentParams p;
    p.timing = false;
    std::size_t from_reports = 0;
    for (auto& name : experiment_names()) {
        auto dir = work_dir() / "experiments" / name;
        ExperimentReport r = run_experiment(name, p, dir);
        for (auto& cell : r.cells)
            if (cell.verdict == Verdict::yes) {
                yes_certificates.push_back(dir / cell.certificate);
                ++from_reports;
            }
    }
    std::size_t passed = 0;
    for (auto& path : yes_certificates) {
        CheckResult r = check_certificate(path);
        if (r.ok)
            ++passed;
        else
            std::cerr << "certificate " << path << ": " << r.message << "\n";
    }
    out << passed << "/" << yes_certificates.size() << " yes certificates verified (" << from_reports
        << " from experiment grids)";
    return passed == yes_certificates.size() && !yes_certificates.empty();
}

} // namespace

int main()
{
    std::vector<Criterion> criteria{
        {1, "odometer pattern set", 1, odometer},
        {2, "antichain divisibility", 10, antichain},
        {3, "torus tiling", 60, torus_tiling},
        {4, "chi invariant", 10, chi_values},
        {5, "weak containment preorder", 60, preorder},
        {6, "freeness transfer", 30, freeness},
        {7, "local rule composition", 10, composition},
        {8, "coinduction adjunction", 30, adjunction},
        {9, "Schreier realization", 60, schreier_realization},
        {10, "LOCAL coloring", 30, local_coloring},
        {11, "Z-SFT decisions", 30, z_decisions},
        {12, "certificate integrity", 60, certificate_integrity},
    };
    work_dir();
    int failed = 0;
    for (auto& c : criteria) {
        std::ostringstream detail;
        auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail << "exception: " << e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.budget_s) {
            ok = false;
            detail << "; over budget";
        }
        failed += !ok;
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.2f s of %.0f s", secs, c.budget_s);
        std::cout << (ok ? "PASS" : "FAIL") << " " << c.id << " " << c.name << ": " << detail.str() << " ("
                  << timing << ")" << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
