#include "wclab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <functional>
#include <numeric>
#include <sstream>

#include "wclab/action.hpp"
#include "wclab/certificate.hpp"
#include "wclab/graph.hpp"
#include "wclab/sft.hpp"

namespace wclab {

namespace fs = std::filesystem;

std::size_t ExperimentReport::mismatches() const
{
    return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](auto& c) {
        return c.verdict != Verdict::unknown && c.verdict != c.predicted;
    }));
}

std::size_t ExperimentReport::unknowns() const
{
    return static_cast<std::size_t>(
        std::count_if(cells.begin(), cells.end(), [](auto& c) { return c.verdict == Verdict::unknown; }));
}

const std::vector<std::string>& experiment_names()
{
    static const std::vector<std::string> names{"antichain-z", "torus-tiling", "chi-table", "girth-schreier",
                                                "coinduce-adjunction"};
    return names;
}

namespace {

// Caps keep every grid at desk scale.
constexpr std::size_t max_antichain_m = 64;
constexpr std::size_t max_antichain_p = 16;
constexpr std::size_t max_torus_side = 8;
constexpr std::size_t max_chi_n = 64;
constexpr std::size_t max_tree_size = 500;
constexpr std::size_t max_girth = 8;
constexpr std::size_t max_adjunction_points = 4;

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw Error("experiment parameter out of range: " + what);
}

std::string utc_now()
{
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class Runner {
public:
    Runner(const ExperimentParams& p, fs::path out) : p_(p), out_(std::move(out)) {}

    // Times decide(), which returns the verdict and writes the certificate
    // into the given cell directory, then re-checks that certificate.
    void cell(const std::string& params, const std::string& dir, Verdict predicted,
              const std::function<Verdict(const fs::path&)>& decide)
    {
        fs::path cell_dir = out_ / dir;
        fs::create_directories(cell_dir);
        auto t0 = std::chrono::steady_clock::now();
        Verdict v = decide(cell_dir);
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
        fs::path cert = cell_dir / "certificate.txt";
        CheckResult check = check_certificate(cert);
        if (!check.ok)
            throw Error("certificate " + cert.string() + " failed verification: " + check.message);
        ExperimentCell c;
        c.params = params;
        c.verdict = v;
        c.predicted = predicted;
        c.certificate = (fs::path(dir) / "certificate.txt").generic_string();
        c.millis = p_.timing ? static_cast<std::uint64_t>(ms.count()) : 0;
        report.cells.push_back(std::move(c));
    }

    ExperimentReport report;
    const ExperimentParams& p_;
    fs::path out_;
};

Verdict from_bool(bool b) { return b ? Verdict::yes : Verdict::no; }

void antichain_z(Runner& run, const ExperimentParams& p)
{
    const std::size_t max_m = p.max_size ? p.max_size : 24;
    auto primes = p.primes.empty() ? std::vector<std::size_t>{2, 3, 5, 7} : p.primes;
    require(max_m <= max_antichain_m, "m <= " + std::to_string(max_antichain_m));
    for (auto q : primes) {
        require(q >= 1 && q <= max_antichain_p, "period <= " + std::to_string(max_antichain_p));
        std::string sft_file = "period" + std::to_string(q) + ".sft";
        SftSpec x = period_sft(q);
        write_text_file(run.out_ / sft_file, sft_to_text(x));
        for (std::size_t m = 1; m <= max_m; ++m) {
            std::string dir = "p" + std::to_string(q) + "-m" + std::to_string(m);
            run.cell("p=" + std::to_string(q) + " m=" + std::to_string(m), dir, from_bool(m % q == 0),
                     [&](const fs::path& d) {
                         FiniteAction a = make_cycle(m);
                         write_text_file(d / "action.act", action_to_text(a));
                         HomCertificate r = hom_exists(a, x, {}, p.node_budget);
                         write_hom_certificate(d, r, "action.act", "../" + sft_file);
                         return r.verdict;
                     });
        }
    }
}

void torus_tiling(Runner& run, const ExperimentParams& p)
{
    const std::size_t max_n = p.max_size ? p.max_size : 6;
    auto primes = p.primes.empty() ? std::vector<std::size_t>{2, 3, 5} : p.primes;
    require(max_n <= max_torus_side, "torus side <= " + std::to_string(max_torus_side));
    for (auto q : primes) {
        require(q >= 1 && q <= tiling_max_p_z2, "piece size <= " + std::to_string(tiling_max_p_z2));
        std::string sft_file = "T" + std::to_string(q) + ".sft";
        SftSpec x = tiling_sft_z2(q);
        write_text_file(run.out_ / sft_file, sft_to_text(x));
        for (std::size_t n = 1; n <= max_n; ++n)
            for (std::size_t m = 1; m <= max_n; ++m) {
                std::string dir = "p" + std::to_string(q) + "-" + std::to_string(n) + "x" + std::to_string(m);
                run.cell("p=" + std::to_string(q) + " n=" + std::to_string(n) + " m=" + std::to_string(m), dir,
                         from_bool((n * m) % q == 0), [&](const fs::path& d) {
                             FiniteAction a = make_torus(n, m);
                             write_text_file(d / "action.act", action_to_text(a));
                             HomCertificate r = hom_exists(a, x, {}, p.node_budget);
                             write_hom_certificate(d, r, "action.act", "../" + sft_file);
                             return r.verdict;
                         });
            }
    }
}

// A cell is yes when the generator acts with finite chi, no when chi is infinite.
void chi_table(Runner& run, const ExperimentParams& p)
{
    const std::size_t max_n = p.max_size ? p.max_size : 12;
    require(max_n <= max_chi_n, "n <= " + std::to_string(max_chi_n));
    for (std::size_t n = 1; n <= max_n; ++n) {
        FiniteAction a = make_cycle(n);
        GroupElem g = a.spec().generators()[0];
        ChiValue value = chi(a, g);
        std::string dir = "n" + std::to_string(n);
        run.cell("n=" + std::to_string(n) + " chi=" + to_string(value), dir, from_bool(n > 1),
                 [&](const fs::path& d) {
                     write_text_file(d / "action.act", action_to_text(a));
                     Certificate c;
                     c.kind = "chi";
                     c.verdict = from_bool(value.has_value());
                     c.add("action", "action.act");
                     c.add("element", a.spec().format(g));
                     c.add("value", to_string(value));
                     if (auto cover = chi_cover(a, g)) {
                         std::string line;
                         for (auto s : *cover)
                             line += (line.empty() ? "" : " ") + std::to_string(s);
                         c.add("map", line);
                     }
                     write_text_file(d / "certificate.txt", certificate_to_text(c));
                     return c.verdict;
                 });
    }
}

void girth_schreier(Runner& run, const ExperimentParams& p)
{
    auto girths = p.girths.empty() ? std::vector<std::size_t>{3, 4, 5, 6} : p.girths;
    const std::size_t tree = p.tree_size ? p.tree_size : 200;
    require(tree >= 2 && tree <= max_tree_size, "tree size in [2, " + std::to_string(max_tree_size) + "]");
    for (auto g : girths) {
        require(g >= 1 && g <= max_girth, "girth <= " + std::to_string(max_girth));
        std::string dir = "girth" + std::to_string(g);
        run.cell("girth=" + std::to_string(g) + " tree=" + std::to_string(tree) + " seed=" + std::to_string(p.seed),
                 dir, Verdict::yes, [&](const fs::path& d) {
                     Certificate c;
                     c.kind = "girth";
                     c.add("girth", std::to_string(g));
                     auto graph = random_large_girth_4regular(tree, g, p.seed, 1000);
                     if (graph) {
                         write_text_file(d / "graph.txt", to_edge_list(*graph));
                         write_text_file(d / "action.act", action_to_text(action_from_4regular(*graph)));
                         c.add("graph", "graph.txt");
                         c.add("action", "action.act");
                         c.verdict = Verdict::yes;
                     }
                     write_text_file(d / "certificate.txt", certificate_to_text(c));
                     return c.verdict;
                 });
    }
}

// Every Z-action on n points is one permutation.
std::vector<FiniteAction> all_z_actions(std::size_t max_points)
{
    std::vector<FiniteAction> out;
    for (std::size_t n = 1; n <= max_points; ++n) {
        Permutation perm(n);
        std::iota(perm.begin(), perm.end(), Point{0});
        do
            out.emplace_back(GroupSpec::free_abelian(1), n, std::vector<Permutation>{perm});
        while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
}

std::string images(const FiniteAction& a)
{
    std::string s;
    for (auto v : a.generators()[0])
        s += (s.empty() ? "" : ",") + std::to_string(v);
    return s;
}

void coinduce_adjunction(Runner& run, const ExperimentParams& p)
{
    const std::size_t max_points = p.max_size ? p.max_size : 3;
    require(max_points <= max_adjunction_points, "points <= " + std::to_string(max_adjunction_points));
    auto actions = all_z_actions(max_points);
    SubgroupInclusion inc = SubgroupInclusion::standard({2});
    for (std::size_t i = 0; i < actions.size(); ++i)
        for (std::size_t j = 0; j < actions.size(); ++j) {
            const FiniteAction& a = actions[i];
            const FiniteAction& b = actions[j];
            std::string dir = "a" + std::to_string(i) + "-b" + std::to_string(j);
            run.cell("a=" + images(a) + " b=" + images(b), dir, Verdict::yes, [&](const fs::path& d) {
                auto left = count_equivariant_maps(restrict_to(b, inc), a);
                auto right = count_equivariant_maps(b, coinduce(a, inc));
                write_text_file(d / "a.act", action_to_text(a));
                write_text_file(d / "b.act", action_to_text(b));
                Certificate c;
                c.kind = "adjunction";
                c.verdict = from_bool(left == right);
                c.add("a", "a.act");
                c.add("b", "b.act");
                c.add("strides", "2");
                c.add("left", std::to_string(left));
                c.add("right", std::to_string(right));
                write_text_file(d / "certificate.txt", certificate_to_text(c));
                return c.verdict;
            });
        }
}

} // namespace

ExperimentReport run_experiment(std::string_view name, const ExperimentParams& params, const fs::path& out_dir)
{
    Runner run(params, out_dir);
    run.report.name = std::string(name);
    run.report.timestamp = utc_now();
    if (name == "antichain-z")
        antichain_z(run, params);
    else if (name == "torus-tiling")
        torus_tiling(run, params);
    else if (name == "chi-table")
        chi_table(run, params);
    else if (name == "girth-schreier")
        girth_schreier(run, params);
    else if (name == "coinduce-adjunction")
        coinduce_adjunction(run, params);
    else
        throw Error("unknown experiment " + std::string(name));
    write_text_file(out_dir / "report.txt", report_to_text(run.report));
    return run.report;
}

std::string report_to_text(const ExperimentReport& r)
{
    std::ostringstream os;
    os << "wclab-report v1\n";
    os << "experiment " << r.name << "\n";
    os << "timestamp " << r.timestamp << "\n";
    for (auto& c : r.cells)
        os << c.params << " " << to_string(c.verdict) << " " << c.certificate << " " << c.millis << "\n";
    return os.str();
}

ExperimentReport parse_report(std::string_view text)
{
    std::istringstream is{std::string(text)};
    std::string line;
    if (!std::getline(is, line) || line != "wclab-report v1")
        throw Error("not a wclab report");
    ExperimentReport r;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;)
            tok.push_back(t);
        if (tok[0] == "experiment" && tok.size() == 2) {
            r.name = tok[1];
            continue;
        }
        if (tok[0] == "timestamp" && tok.size() == 2) {
            r.timestamp = tok[1];
            continue;
        }
        if (tok.size() < 4)
            throw Error("bad report line: " + line);
        ExperimentCell c;
        const std::string& v = tok[tok.size() - 3];
        if (v == "yes")
            c.verdict = Verdict::yes;
        else if (v == "no")
            c.verdict = Verdict::no;
        else if (v == "unknown")
            c.verdict = Verdict::unknown;
        else
            throw Error("bad verdict in report line: " + line);
        c.certificate = tok[tok.size() - 2];
        c.millis = std::stoull(tok.back());
        for (std::size_t i = 0; i + 3 < tok.size(); ++i)
            c.params += (i ? " " : "") + tok[i];
        r.cells.push_back(std::move(c));
    }
    return r;
}

} // namespace wclab
