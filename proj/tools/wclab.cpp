// wclab command-line tool. Decision commands exit 0/1/2 for yes/no/unknown,
// 3 on errors, 4 when a written certificate fails re-verification, and 64
// on usage errors.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "wclab/action.hpp"
#include "wclab/certificate.hpp"
#include "wclab/experiments.hpp"
#include "wclab/graph.hpp"
#include "wclab/local.hpp"
#include "wclab/patterns.hpp"
#include "wclab/sft.hpp"

namespace fs = std::filesystem;
using namespace wclab;

namespace {

constexpr int exit_error = 3;
constexpr int exit_bad_certificate = 4;
constexpr int exit_usage = 64;

std::uint64_t node_budget()
{
    const char* env = std::getenv("WCLAB_NODE_BUDGET");
    if (!env || !*env)
        return Csp::unlimited;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0')
        throw Error("WCLAB_NODE_BUDGET must be a non-negative integer");
    return v;
}

std::string absolute(const std::string& p) { return fs::absolute(p).lexically_normal().string(); }

FiniteAction load_action(const std::string& p) { return parse_action(read_text_file(p)); }
SftSpec load_sft(const std::string& p) { return parse_sft(read_text_file(p)); }

// Output goes to the file, or to stdout when path is empty or "-".
void emit(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_text_file(path, text);
}

std::string join(const std::vector<Symbol>& v)
{
    std::string s;
    for (auto x : v)
        s += (s.empty() ? "" : " ") + std::to_string(x);
    return s;
}

std::vector<std::size_t> size_list(const std::string& text)
{
    std::vector<std::size_t> out;
    for (auto& part : split_top_level(text))
        out.push_back(std::stoul(part));
    return out;
}

void finish(const fs::path& dir, const Certificate& c)
{
    write_text_file(dir / "certificate.txt", certificate_to_text(c));
}

// Re-checks the written certificate and maps the verdict to the exit code.
int conclude(const fs::path& cert_path, Verdict v)
{
    CheckResult check = check_certificate(cert_path);
    std::cout << "verdict: " << to_string(v) << "\n";
    std::cout << "certificate: " << cert_path.string() << "\n";
    if (!check.ok) {
        std::cerr << "certificate verification failed: " << check.message << "\n";
        return exit_bad_certificate;
    }
    return exit_code(v);
}

struct Options {
    // shared
    std::string out_dir = "wclab-out";
    std::string output;
    std::string action_file, sft_file, labelling_file, patterns_file, graph_file;
    std::string window;
    std::size_t colors = 2;
    std::uint64_t enumeration_budget = 1000000;
    // action make
    std::size_t cycle = 0;
    std::string torus, regular, coinduce_file, restrict_file, from_graph, strides = "2";
    std::vector<std::string> product_files;
    std::size_t random_girth = 0, tree_size = 200, retries = 1000;
    std::uint64_t seed = 1;
    int radius = 2;
    std::string format = "dot";
    // compare
    std::string a_file, b_file;
    // hom
    std::vector<std::string> hits;
    // sft
    std::string group;
    std::size_t p = 2, n_max = 6;
    // color
    std::string partial_file;
    // experiment
    std::string experiment;
    std::size_t max_size = 0;
    std::string primes, girths;
    bool no_timing = false;
};

int cmd_action_make(const Options& o)
{
    int chosen = (o.cycle > 0) + !o.torus.empty() + !o.regular.empty() + !o.product_files.empty() +
                 !o.coinduce_file.empty() + !o.restrict_file.empty() + !o.from_graph.empty() + (o.random_girth > 0);
    if (chosen != 1)
        throw CLI::ValidationError("action make", "choose exactly one construction");
    std::optional<FiniteAction> a;
    if (o.cycle)
        a = make_cycle(o.cycle);
    else if (!o.torus.empty()) {
        auto x = o.torus.find('x');
        if (x == std::string::npos)
            throw CLI::ValidationError("--torus", "expected MxN");
        a = make_torus(std::stoul(o.torus.substr(0, x)), std::stoul(o.torus.substr(x + 1)));
    } else if (!o.regular.empty())
        a = regular_action(GroupSpec::parse(o.regular));
    else if (!o.product_files.empty()) {
        a = load_action(o.product_files[0]);
        for (std::size_t i = 1; i < o.product_files.size(); ++i)
            a = product(*a, load_action(o.product_files[i]));
    } else if (!o.coinduce_file.empty() || !o.restrict_file.empty()) {
        std::vector<std::int64_t> st;
        for (auto s : size_list(o.strides))
            st.push_back(static_cast<std::int64_t>(s));
        auto inc = SubgroupInclusion::standard(st);
        a = o.coinduce_file.empty() ? restrict_to(load_action(o.restrict_file), inc)
                                    : coinduce(load_action(o.coinduce_file), inc);
    } else if (!o.from_graph.empty())
        a = action_from_4regular(parse_graph(read_text_file(o.from_graph)));
    else {
        auto g = random_large_girth_4regular(o.tree_size, o.random_girth, o.seed, o.retries);
        if (!g) {
            std::cerr << "no graph of girth >= " << o.random_girth << " found within " << o.retries << " attempts\n";
            return exit_code(Verdict::unknown);
        }
        a = action_from_4regular(*g);
    }
    emit(o.output, action_to_text(*a));
    return 0;
}

int cmd_action_info(const Options& o)
{
    FiniteAction a = load_action(o.action_file);
    auto orb = orbits(a);
    std::cout << "group " << a.spec().to_string() << "\n";
    std::cout << "points " << a.size() << "\n";
    std::cout << "orbits " << orb.size() << "\n";
    std::cout << "transitive " << (orb.size() == 1 ? "yes" : "no") << "\n";
    std::cout << "free-up-to " << o.radius << " " << (is_free_up_to(a, o.radius) ? "yes" : "no") << "\n";
    auto names = a.spec().generator_names();
    auto gens = a.spec().generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
        std::cout << "chi " << names[i] << " " << to_string(chi(a, gens[i])) << "\n";
    return 0;
}

int cmd_action_schreier(const Options& o)
{
    LocalGraph g = schreier(load_action(o.action_file));
    if (o.format == "dot")
        emit(o.output, to_dot(g, "Sch"));
    else if (o.format == "edges")
        emit(o.output, to_edge_list(g));
    else
        throw CLI::ValidationError("--format", "expected dot or edges");
    return 0;
}

int cmd_patterns_extract(const Options& o)
{
    FiniteAction a = load_action(o.action_file);
    Labelling f = parse_labelling(read_text_file(o.labelling_file)).labelling;
    emit(o.output, pattern_set_to_text(patterns_of(a, f, Window::parse(a.spec(), o.window))));
    return 0;
}

int cmd_patterns_enumerate(const Options& o)
{
    FiniteAction a = load_action(o.action_file);
    auto fam = enumerate_pattern_sets(a, Window::parse(a.spec(), o.window), o.colors, o.enumeration_budget);
    std::cout << "sets " << fam.sets.size() << "\n";
    std::cout << "labellings " << fam.labellings << "\n";
    std::cout << "partial " << (fam.partial ? "yes" : "no") << "\n";
    if (!o.output.empty())
        for (std::size_t i = 0; i < fam.sets.size(); ++i)
            write_text_file(fs::path(o.output) / ("set-" + std::to_string(i) + ".pat"),
                            pattern_set_to_text(fam.sets[i]));
    return 0;
}

int cmd_patterns_realize(const Options& o)
{
    FiniteAction a = load_action(o.action_file);
    PatternSet s = parse_pattern_set(read_text_file(o.patterns_file));
    Realization r = realize_pattern_set(a, s, node_budget());
    fs::path dir = o.out_dir;
    Certificate c;
    c.kind = "realize";
    c.verdict = r.verdict;
    c.add("action", absolute(o.action_file));
    c.add("patterns", absolute(o.patterns_file));
    c.add("nodes", std::to_string(r.nodes));
    if (r.labelling) {
        write_text_file(dir / "witness.lab", labelling_to_text(*r.labelling, absolute(o.action_file)));
        c.add("witness", "witness.lab");
    }
    finish(dir, c);
    return conclude(dir / "certificate.txt", r.verdict);
}

int cmd_compare(const Options& o)
{
    FiniteAction a = load_action(o.a_file);
    FiniteAction b = load_action(o.b_file);
    Window w = Window::parse(a.spec(), o.window);
    ContainmentVerdict v = weakly_contains_at(a, b, w, o.colors, o.enumeration_budget, node_budget());
    fs::path dir = o.out_dir;
    Certificate c;
    c.kind = "compare";
    c.verdict = v.verdict;
    c.add("a", absolute(o.a_file));
    c.add("b", absolute(o.b_file));
    c.add("window", w.to_string());
    c.add("colors", std::to_string(o.colors));
    c.add("report", v.report);
    for (auto& [set, f] : v.witnesses)
        c.add("labelling", join(f.colors));
    if (v.counterexample) {
        write_text_file(dir / "counterexample.pat", pattern_set_to_text(*v.counterexample));
        c.add("counterexample", "counterexample.pat");
        Realization on_b = realize_pattern_set(b, *v.counterexample);
        if (!on_b.labelling)
            throw Error("internal: counterexample is not realized on b");
        c.add("b-map", join(on_b.labelling->colors));
    }
    std::cout << v.report << "\n";
    finish(dir, c);
    return conclude(dir / "certificate.txt", v.verdict);
}

int cmd_hom(const Options& o)
{
    FiniteAction a = load_action(o.action_file);
    SftSpec x = load_sft(o.sft_file);
    std::vector<Pattern> hits;
    for (auto& h : o.hits) {
        std::istringstream is(h);
        Pattern p;
        for (std::string name; is >> name;) {
            auto i = x.symbol_index(name);
            if (i == x.alphabet_size())
                throw Error("unknown symbol in --hit: " + name);
            p.push_back(static_cast<Symbol>(i));
        }
        hits.push_back(std::move(p));
    }
    HomCertificate r = hom_exists(a, x, hits, node_budget());
    fs::path dir = o.out_dir;
    auto path = write_hom_certificate(dir, r, absolute(o.action_file), absolute(o.sft_file), hits);
    if (r.by_counting)
        std::cout << "refuted by counting symbols per orbit\n";
    std::cout << "nodes: " << r.nodes << "\n";
    return conclude(path, r.verdict);
}

int cmd_sft_nonempty(const Options& o)
{
    SftSpec x = load_sft(o.sft_file);
    fs::path dir = o.out_dir;
    Certificate c;
    c.add("sft", absolute(o.sft_file));
    if (x.group() == GroupSpec::free_abelian(1)) {
        ZNonempty r = nonempty_z(x);
        c.kind = "nonempty-z";
        c.verdict = r.nonempty ? Verdict::yes : Verdict::no;
        if (r.nonempty)
            c.add("period", join(r.witness));
    } else if (x.group() == GroupSpec::free_abelian(2)) {
        Z2Result r = nonempty_z2_bounded(x, o.n_max, node_budget());
        c.kind = "nonempty-z2";
        c.verdict = r.verdict;
        if (r.verdict == Verdict::yes) {
            c.add("torus", std::to_string(r.m) + " " + std::to_string(r.n));
            c.add("map", join(r.labelling->colors));
        } else if (r.verdict == Verdict::no) {
            c.add("radius", std::to_string(r.radius));
        }
    } else {
        throw Error("nonemptiness is implemented for Z and Z^2 SFTs only");
    }
    finish(dir, c);
    return conclude(dir / "certificate.txt", c.verdict);
}

int cmd_sft_mixing(const Options& o)
{
    SftSpec x = load_sft(o.sft_file);
    if (!(x.group() == GroupSpec::free_abelian(1)))
        throw Error("mixing is implemented for Z-SFTs only");
    fs::path dir = o.out_dir;
    Certificate c;
    c.kind = "mixing";
    c.verdict = is_mixing_z(x) ? Verdict::yes : Verdict::no;
    c.add("sft", absolute(o.sft_file));
    finish(dir, c);
    return conclude(dir / "certificate.txt", c.verdict);
}

int cmd_sft_make_coloring(const Options& o)
{
    GroupSpec g = GroupSpec::parse(o.group);
    emit(o.output, sft_to_text(proper_coloring_sft(Window::parse(g, o.window))));
    return 0;
}

int cmd_sft_make_tiling(const Options& o)
{
    emit(o.output, sft_to_text(tiling_sft(GroupSpec::parse(o.group), o.p)));
    return 0;
}

int cmd_color_cv(const Options& o)
{
    LocalGraph g = parse_graph(read_text_file(o.graph_file));
    RoundTrace t = cole_vishkin_color(g);
    std::vector<std::set<std::size_t>> nbrs(g.size());
    for (auto& e : g.edges) {
        nbrs[e.u].insert(e.v);
        nbrs[e.v].insert(e.u);
    }
    std::size_t delta = 0;
    for (auto& s : nbrs)
        delta = std::max(delta, s.size());
    std::uint64_t max_id = g.ids.empty() ? 0 : *std::max_element(g.ids.begin(), g.ids.end());
    std::size_t bound = log_star(max_id) + cole_vishkin_constant(delta);
    std::cout << "rounds: " << t.rounds << "\n";
    std::cout << "coloring:";
    for (auto c : t.coloring)
        std::cout << " " << c;
    std::cout << "\n";
    fs::path dir = o.out_dir;
    Certificate c;
    c.kind = "coloring";
    c.verdict = Verdict::yes;
    c.add("graph", absolute(o.graph_file));
    c.add("rounds", std::to_string(t.rounds));
    c.add("bound", std::to_string(bound));
    std::string line;
    for (auto v : t.coloring)
        line += (line.empty() ? "" : " ") + std::to_string(v);
    c.add("map", line);
    finish(dir, c);
    return conclude(dir / "certificate.txt", c.verdict);
}

int cmd_color_greedy(const Options& o)
{
    FiniteAction a = load_action(o.action_file);
    Window w = Window::parse(a.spec(), o.window);
    if (!w.is_symmetric())
        throw Error("greedy coloring needs a symmetric window");
    std::vector<std::optional<Symbol>> partial(a.size());
    if (!o.partial_file.empty()) {
        // a partial labelling uses the color k for "uncolored"
        Labelling p = parse_labelling(read_text_file(o.partial_file)).labelling;
        if (p.colors.size() != a.size())
            throw Error("partial labelling has the wrong number of points");
        for (std::size_t i = 0; i < a.size(); ++i)
            if (p.colors[i] + 1 < p.k)
                partial[i] = p.colors[i];
    }
    Labelling f = greedy_extend_coloring(a, w, partial);
    SftSpec x = proper_coloring_sft(w);
    fs::path dir = o.out_dir;
    write_text_file(dir / "coloring.sft", sft_to_text(x));
    HomCertificate r;
    r.verdict = Verdict::yes;
    r.labelling = f;
    auto path = write_hom_certificate(dir, r, absolute(o.action_file), "coloring.sft");
    return conclude(path, r.verdict);
}

int cmd_experiment(const Options& o)
{
    const auto& names = experiment_names();
    if (std::find(names.begin(), names.end(), o.experiment) == names.end())
        throw CLI::ValidationError("experiment", "unknown experiment " + o.experiment);
    ExperimentParams p;
    p.max_size = o.max_size;
    if (!o.primes.empty())
        p.primes = size_list(o.primes);
    if (!o.girths.empty())
        p.girths = size_list(o.girths);
    p.tree_size = o.tree_size;
    p.seed = o.seed;
    p.node_budget = node_budget();
    p.timing = !o.no_timing;
    fs::path dir = o.out_dir == "wclab-out" ? fs::path("wclab-out") / o.experiment : fs::path(o.out_dir);
    ExperimentReport r = run_experiment(o.experiment, p, dir);
    std::cout << "report: " << (dir / "report.txt").string() << "\n";
    std::cout << "cells " << r.cells.size() << ", mismatches " << r.mismatches() << ", unknown " << r.unknowns()
              << "\n";
    for (auto& c : r.cells)
        if (c.verdict != Verdict::unknown && c.verdict != c.predicted)
            std::cout << "mismatch: " << c.params << " got " << to_string(c.verdict) << "\n";
    if (r.mismatches())
        return exit_code(Verdict::no);
    return exit_code(r.unknowns() ? Verdict::unknown : Verdict::yes);
}

} // namespace

int main(int argc, char** argv)
{
    Options o;
    CLI::App app{"wclab: finite-scale weak containment, SFT homomorphisms and LOCAL coloring"};
    app.require_subcommand(1);
    std::function<int()> run;

    auto out_opt = [&](CLI::App* c) {
        c->add_option("--out", o.out_dir, "directory for the certificate and witness files")->capture_default_str();
    };

    auto* action = app.add_subcommand("action", "build and inspect finite actions");
    action->require_subcommand(1);
    auto* make = action->add_subcommand("make", "write an action file");
    make->add_option("--cycle", o.cycle, "c_n: Z acting on Z/n");
    make->add_option("--torus", o.torus, "c_{m,n} as MxN");
    make->add_option("--regular", o.regular, "left translation action of a finite group, e.g. Z/6");
    make->add_option("--product", o.product_files, "diagonal product of action files")->expected(2, 8);
    make->add_option("--coinduce", o.coinduce_file, "coinduce a Z^d-action along --strides");
    make->add_option("--restrict", o.restrict_file, "restrict a Z^d-action to the subgroup given by --strides");
    make->add_option("--strides", o.strides, "comma list of subgroup strides")->capture_default_str();
    make->add_option("--from-graph", o.from_graph, "F2-action of a connected 4-regular graph file");
    make->add_option("--random-girth", o.random_girth, "random F2-action with Schreier girth at least G");
    make->add_option("--tree-size", o.tree_size, "points of the random action")->capture_default_str();
    make->add_option("--seed", o.seed)->capture_default_str();
    make->add_option("--retries", o.retries)->capture_default_str();
    make->add_option("-o,--output", o.output, "output file (default stdout)");
    make->callback([&] { run = [&] { return cmd_action_make(o); }; });

    auto* info = action->add_subcommand("info", "orbits, freeness and chi of the generators");
    info->add_option("--action", o.action_file)->required();
    info->add_option("--radius", o.radius, "radius for the freeness check")->capture_default_str();
    info->callback([&] { run = [&] { return cmd_action_info(o); }; });

    auto* sch = action->add_subcommand("schreier", "export the Schreier graph");
    sch->add_option("--action", o.action_file)->required();
    sch->add_option("--format", o.format, "dot or edges")->capture_default_str();
    sch->add_option("-o,--output", o.output);
    sch->callback([&] { run = [&] { return cmd_action_schreier(o); }; });

    auto* patterns = app.add_subcommand("patterns", "local pattern sets");
    patterns->require_subcommand(1);
    auto* extract = patterns->add_subcommand("extract", "pattern set of a labelling");
    extract->add_option("--action", o.action_file)->required();
    extract->add_option("--labelling", o.labelling_file)->required();
    extract->add_option("--window", o.window)->required();
    extract->add_option("-o,--output", o.output);
    extract->callback([&] { run = [&] { return cmd_patterns_extract(o); }; });

    auto* enumerate = patterns->add_subcommand("enumerate", "all pattern sets at one scale");
    enumerate->add_option("--action", o.action_file)->required();
    enumerate->add_option("--window", o.window)->required();
    enumerate->add_option("--colors", o.colors)->required();
    enumerate->add_option("--budget", o.enumeration_budget, "labellings to examine")->capture_default_str();
    enumerate->add_option("-o,--output", o.output, "directory receiving one file per set");
    enumerate->callback([&] { run = [&] { return cmd_patterns_enumerate(o); }; });

    auto* realize = patterns->add_subcommand("realize", "find a labelling with exactly the given pattern set");
    realize->add_option("--action", o.action_file)->required();
    realize->add_option("--patterns", o.patterns_file)->required();
    out_opt(realize);
    realize->callback([&] { run = [&] { return cmd_patterns_realize(o); }; });

    auto* compare = app.add_subcommand("compare", "is every (window, colors) pattern set of b realized on a?");
    compare->add_option("--a", o.a_file)->required();
    compare->add_option("--b", o.b_file)->required();
    compare->add_option("--window", o.window)->required();
    compare->add_option("--colors", o.colors)->required();
    compare->add_option("--budget", o.enumeration_budget, "labellings of b to examine")->capture_default_str();
    out_opt(compare);
    compare->callback([&] { run = [&] { return cmd_compare(o); }; });

    auto* hom = app.add_subcommand("hom", "search for an equivariant map from an action into an SFT");
    hom->add_option("--action", o.action_file)->required();
    hom->add_option("--sft", o.sft_file)->required();
    hom->add_option("--hit", o.hits, "pattern that must occur, as one quoted list of symbol names in window order; repeatable")
        ->allow_extra_args(false);
    out_opt(hom);
    hom->callback([&] { run = [&] { return cmd_hom(o); }; });

    auto* sft = app.add_subcommand("sft", "shifts of finite type");
    sft->require_subcommand(1);
    auto* nonempty = sft->add_subcommand("nonempty", "nonemptiness (exact over Z, bounded over Z^2)");
    nonempty->add_option("--sft", o.sft_file)->required();
    nonempty->add_option("--n-max", o.n_max, "largest torus side / box radius over Z^2")->capture_default_str();
    out_opt(nonempty);
    nonempty->callback([&] { run = [&] { return cmd_sft_nonempty(o); }; });

    auto* mixing = sft->add_subcommand("mixing", "topological mixing of a Z-SFT");
    mixing->add_option("--sft", o.sft_file)->required();
    out_opt(mixing);
    mixing->callback([&] { run = [&] { return cmd_sft_mixing(o); }; });

    auto* mkcol = sft->add_subcommand("make-coloring", "proper coloring shift of a symmetric window");
    mkcol->add_option("--group", o.group)->required();
    mkcol->add_option("--window", o.window)->required();
    mkcol->add_option("-o,--output", o.output);
    mkcol->callback([&] { run = [&] { return cmd_sft_make_coloring(o); }; });

    auto* mktile = sft->add_subcommand("make-tiling", "tilings by connected pieces of size p");
    mktile->add_option("--group", o.group, "Z^2 or F2")->required();
    mktile->add_option("--p", o.p)->required();
    mktile->add_option("-o,--output", o.output);
    mktile->callback([&] { run = [&] { return cmd_sft_make_tiling(o); }; });

    auto* color = app.add_subcommand("color", "graph coloring");
    color->require_subcommand(1);
    auto* cv = color->add_subcommand("cv", "deterministic LOCAL coloring with round count");
    cv->add_option("--graph", o.graph_file, "DOT or edge-list file")->required();
    out_opt(cv);
    cv->callback([&] { run = [&] { return cmd_color_cv(o); }; });

    auto* greedy = color->add_subcommand("greedy", "greedy |W|+1 coloring of a Schreier graph");
    greedy->add_option("--action", o.action_file)->required();
    greedy->add_option("--window", o.window, "symmetric window, identity optional")->required();
    greedy->add_option("--partial", o.partial_file, "labelling file; color k-1 marks uncolored points");
    out_opt(greedy);
    greedy->callback([&] { run = [&] { return cmd_color_greedy(o); }; });

    auto* exp = app.add_subcommand("experiment", "run an experiment grid and write a report");
    exp->add_option("name", o.experiment,
                    "antichain-z, torus-tiling, chi-table, girth-schreier or coinduce-adjunction")
        ->required();
    exp->add_option("--max", o.max_size, "largest size parameter (experiment default when 0)");
    exp->add_option("--primes", o.primes, "comma list of periods or piece sizes");
    exp->add_option("--girths", o.girths, "comma list of girth bounds");
    exp->add_option("--tree-size", o.tree_size)->capture_default_str();
    exp->add_option("--seed", o.seed)->capture_default_str();
    exp->add_flag("--no-timing", o.no_timing, "write 0 in every millis column");
    out_opt(exp);
    exp->callback([&] { run = [&] { return cmd_experiment(o); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return exit_usage;
    }
    try {
        return run();
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n" << app.help();
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    }
}
