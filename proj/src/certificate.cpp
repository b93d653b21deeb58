#include "wclab/certificate.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "wclab/action.hpp"
#include "wclab/graph.hpp"
#include "wclab/patterns.hpp"
#include "wclab/sft.hpp"

namespace wclab {

std::string read_text_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw Error("cannot read " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::filesystem::path& p, std::string_view text)
{
    if (p.has_parent_path())
        std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out || !out.write(text.data(), static_cast<std::streamsize>(text.size())))
        throw Error("cannot write " + p.string());
}

bool Certificate::has(std::string_view key) const
{
    return std::any_of(fields.begin(), fields.end(), [&](auto& f) { return f.first == key; });
}

const std::string& Certificate::get(std::string_view key) const
{
    for (auto& f : fields)
        if (f.first == key)
            return f.second;
    throw Error("certificate has no " + std::string(key) + " line");
}

std::vector<std::string> Certificate::all(std::string_view key) const
{
    std::vector<std::string> out;
    for (auto& f : fields)
        if (f.first == key)
            out.push_back(f.second);
    return out;
}

std::string certificate_to_text(const Certificate& c)
{
    std::ostringstream os;
    os << "wclab-certificate v1\n";
    os << "kind " << c.kind << "\n";
    os << "verdict " << to_string(c.verdict) << "\n";
    for (auto& [k, v] : c.fields)
        os << k << " " << v << "\n";
    return os.str();
}

Certificate parse_certificate(std::string_view text)
{
    std::istringstream is{std::string(text)};
    std::string line;
    if (!std::getline(is, line) || line != "wclab-certificate v1")
        throw Error("not a wclab certificate");
    Certificate c;
    bool have_verdict = false;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        auto sp = line.find(' ');
        std::string key = line.substr(0, sp);
        std::string value = sp == std::string::npos ? "" : line.substr(sp + 1);
        if (key == "kind") {
            c.kind = value;
        } else if (key == "verdict") {
            if (value == "yes")
                c.verdict = Verdict::yes;
            else if (value == "no")
                c.verdict = Verdict::no;
            else if (value == "unknown")
                c.verdict = Verdict::unknown;
            else
                throw Error("bad verdict: " + value);
            have_verdict = true;
        } else {
            c.add(std::move(key), std::move(value));
        }
    }
    if (c.kind.empty() || !have_verdict)
        throw Error("certificate needs kind and verdict lines");
    return c;
}

namespace {

namespace fs = std::filesystem;

std::vector<std::uint64_t> numbers(const std::string& s)
{
    std::istringstream is(s);
    std::vector<std::uint64_t> out;
    long long v;
    while (is >> v) {
        if (v < 0)
            throw Error("negative number in certificate");
        out.push_back(static_cast<std::uint64_t>(v));
    }
    if (!is.eof())
        throw Error("bad number list: " + s);
    return out;
}

std::vector<Symbol> symbols(const std::string& s)
{
    std::vector<Symbol> out;
    for (auto v : numbers(s))
        out.push_back(static_cast<Symbol>(v));
    return out;
}

class Checker {
public:
    Checker(const fs::path& path) : dir_(path.parent_path()), c_(parse_certificate(read_text_file(path))) {}

    CheckResult run()
    {
        const std::string& k = c_.kind;
        if (k == "hom")
            return hom();
        if (k == "realize")
            return realize();
        if (k == "compare")
            return compare();
        if (k == "nonempty-z")
            return nonempty_z();
        if (k == "nonempty-z2")
            return nonempty_z2();
        if (k == "mixing")
            return mixing();
        if (k == "coloring")
            return coloring();
        if (k == "chi")
            return chi();
        if (k == "girth")
            return girth();
        if (k == "adjunction")
            return adjunction();
        return fail("unknown certificate kind " + k);
    }

private:
    fs::path dir_;
    Certificate c_;

    static CheckResult pass(std::string m = "ok") { return {true, std::move(m)}; }
    static CheckResult fail(std::string m) { return {false, std::move(m)}; }

    std::string file(std::string_view key) const
    {
        fs::path p = c_.get(key);
        return read_text_file(p.is_absolute() ? p : dir_ / p);
    }
    FiniteAction action(std::string_view key) const { return parse_action(file(key)); }

    // Pattern of f at x with every window element applied through act().
    static std::vector<Symbol> pattern(const FiniteAction& a, const Window& w, const std::vector<Symbol>& f,
                                       Point x)
    {
        std::vector<Symbol> p;
        p.reserve(w.size());
        for (auto& g : w)
            p.push_back(f[a.act(g, x)]);
        return p;
    }

    static std::set<std::vector<Symbol>> pattern_set(const FiniteAction& a, const Window& w,
                                                     const std::vector<Symbol>& f)
    {
        std::set<std::vector<Symbol>> s;
        for (Point x = 0; x < a.size(); ++x)
            s.insert(pattern(a, w, f, x));
        return s;
    }

    static bool satisfies(const FiniteAction& a, const SftSpec& x, const std::vector<Symbol>& f)
    {
        if (f.size() != a.size())
            return false;
        for (auto s : f)
            if (s >= x.alphabet_size())
                return false;
        for (Point p = 0; p < a.size(); ++p)
            if (!x.allows(pattern(a, x.window(), f, p)))
                return false;
        return true;
    }

    CheckResult hom()
    {
        if (c_.verdict != Verdict::yes)
            return pass();
        FiniteAction a = action("action");
        SftSpec x = parse_sft(file("sft"));
        Labelling f = parse_labelling(file("witness")).labelling;
        if (!satisfies(a, x, f.colors))
            return fail("witness violates the SFT");
        auto seen = pattern_set(a, x.window(), f.colors);
        for (auto& h : c_.all("hit"))
            if (!seen.count(symbols(h)))
                return fail("required pattern " + h + " does not occur");
        return pass();
    }

    CheckResult realize()
    {
        if (c_.verdict != Verdict::yes)
            return pass();
        FiniteAction a = action("action");
        PatternSet target = parse_pattern_set(file("patterns"));
        Labelling f = parse_labelling(file("witness")).labelling;
        if (f.colors.size() != a.size())
            return fail("witness has the wrong number of points");
        std::set<std::vector<Symbol>> want(target.patterns.begin(), target.patterns.end());
        if (pattern_set(a, target.window, f.colors) != want)
            return fail("witness pattern set differs from the target");
        return pass();
    }

    CheckResult compare()
    {
        FiniteAction a = action("a");
        FiniteAction b = action("b");
        Window w = Window::parse(a.spec(), c_.get("window"));
        const std::size_t k = std::stoul(c_.get("colors"));
        if (c_.verdict == Verdict::no) {
            PatternSet s = parse_pattern_set(file("counterexample"));
            std::set<std::vector<Symbol>> want(s.patterns.begin(), s.patterns.end());
            auto f = symbols(c_.get("b-map"));
            if (f.size() != b.size() || pattern_set(b, w, f) != want)
                return fail("counterexample is not a pattern set of b");
            return pass();
        }
        if (c_.verdict != Verdict::yes)
            return pass();
        std::set<std::set<std::vector<Symbol>>> realized;
        for (auto& line : c_.all("labelling")) {
            auto f = symbols(line);
            if (f.size() != a.size())
                return fail("labelling of a has the wrong size");
            for (auto s : f)
                if (s >= k)
                    return fail("labelling of a uses too many colors");
            realized.insert(pattern_set(a, w, f));
        }
        std::vector<Symbol> f(b.size(), 0);
        while (true) {
            if (!realized.count(pattern_set(b, w, f)))
                return fail("a pattern set of b is not realized on a");
            std::size_t i = f.size();
            while (i > 0 && f[i - 1] + 1 == k)
                f[--i] = 0;
            if (i == 0)
                break;
            ++f[i - 1];
        }
        return pass();
    }

    CheckResult nonempty_z()
    {
        if (c_.verdict != Verdict::yes)
            return pass();
        SftSpec x = parse_sft(file("sft"));
        auto word = symbols(c_.get("period"));
        if (word.empty())
            return fail("empty period");
        if (!satisfies(make_cycle(word.size()), x, word))
            return fail("periodic point violates the SFT");
        return pass();
    }

    CheckResult nonempty_z2()
    {
        if (c_.verdict != Verdict::yes)
            return pass();
        SftSpec x = parse_sft(file("sft"));
        auto mn = numbers(c_.get("torus"));
        if (mn.size() != 2)
            return fail("bad torus line");
        if (!satisfies(make_torus(mn[0], mn[1]), x, symbols(c_.get("map"))))
            return fail("torus labelling violates the SFT");
        return pass();
    }

    // Mixing from scratch: states are words of length l-1 on the integer
    // window span, restricted to those on bi-infinite paths; the SFT mixes
    // iff that graph is primitive (Wielandt exponent bound).
    CheckResult mixing()
    {
        SftSpec x = parse_sft(file("sft"));
        if (x.group() != GroupSpec::free_abelian(1))
            return fail("mixing certificate needs a Z-SFT");
        const std::size_t k = x.alphabet_size();
        std::vector<std::int64_t> offs;
        for (auto& g : x.window())
            offs.push_back(g.payload[0]);
        bool claim = c_.verdict == Verdict::yes;
        if (c_.verdict == Verdict::unknown)
            return pass();
        if (offs.empty())
            return claim ? pass() : fail("window-free SFT is mixing");
        std::int64_t lo = *std::min_element(offs.begin(), offs.end());
        std::int64_t hi = *std::max_element(offs.begin(), offs.end());
        const std::size_t len = static_cast<std::size_t>(hi - lo + 1);
        auto ok_word = [&](const std::vector<Symbol>& u) {
            std::vector<Symbol> p;
            for (auto o : offs)
                p.push_back(u[static_cast<std::size_t>(o - lo)]);
            return x.allows(p);
        };
        std::size_t states = 1;
        for (std::size_t i = 0; i + 1 < len; ++i) {
            states *= k;
            if (states > 4096)
                return fail("SFT too large for the mixing checker");
        }
        std::vector<std::vector<char>> adj(states, std::vector<char>(states, 0));
        auto decode = [&](std::size_t s) {
            std::vector<Symbol> u(len - 1);
            for (std::size_t i = len - 1; i-- > 0;) {
                u[i] = static_cast<Symbol>(s % k);
                s /= k;
            }
            return u;
        };
        for (std::size_t s = 0; s < states; ++s)
            for (Symbol c = 0; c < k; ++c) {
                auto u = decode(s);
                u.push_back(c);
                if (!ok_word(u))
                    continue;
                std::size_t t = 0;
                for (std::size_t i = 1; i < len; ++i)
                    t = t * k + u[i];
                if (len == 1)
                    t = 0;
                adj[s][t] = 1;
            }
        std::vector<char> alive(states, 1);
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t s = 0; s < states; ++s) {
                if (!alive[s])
                    continue;
                bool in = false, out = false;
                for (std::size_t t = 0; t < states; ++t) {
                    out |= alive[t] && adj[s][t];
                    in |= alive[t] && adj[t][s];
                }
                if (!in || !out) {
                    alive[s] = 0;
                    changed = true;
                }
            }
        }
        std::vector<std::size_t> live;
        for (std::size_t s = 0; s < states; ++s)
            if (alive[s])
                live.push_back(s);
        if (live.empty())
            return fail("SFT is empty");
        const std::size_t m = live.size();
        using Mat = std::vector<std::vector<char>>;
        Mat base(m, std::vector<char>(m, 0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                base[i][j] = adj[live[i]][live[j]];
        auto mul = [&](const Mat& p, const Mat& q) {
            Mat r(m, std::vector<char>(m, 0));
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t l = 0; l < m; ++l)
                    if (p[i][l])
                        for (std::size_t j = 0; j < m; ++j)
                            r[i][j] |= q[l][j];
            return r;
        };
        std::size_t e = (m - 1) * (m - 1) + 1;
        Mat result(m, std::vector<char>(m, 0));
        for (std::size_t i = 0; i < m; ++i)
            result[i][i] = 1;
        for (Mat p = base; e; e >>= 1, p = mul(p, p))
            if (e & 1)
                result = mul(result, p);
        bool primitive = true;
        for (auto& row : result)
            for (char v : row)
                primitive &= v != 0;
        if (primitive != claim)
            return fail(std::string("mixing is ") + (primitive ? "true" : "false"));
        return pass();
    }

    CheckResult coloring()
    {
        if (c_.verdict != Verdict::yes)
            return pass();
        LocalGraph g = parse_graph(file("graph"));
        auto col = numbers(c_.get("map"));
        if (col.size() != g.size())
            return fail("coloring has the wrong number of vertices");
        std::vector<std::set<std::size_t>> nbrs(g.size());
        for (auto& e : g.edges) {
            if (e.u == e.v)
                return fail("graph has a loop");
            if (col[e.u] == col[e.v])
                return fail("edge with equal colors");
            nbrs[e.u].insert(e.v);
            nbrs[e.v].insert(e.u);
        }
        std::size_t delta = 0;
        for (auto& s : nbrs)
            delta = std::max(delta, s.size());
        for (auto c : col)
            if (c > delta)
                return fail("more than D+1 colors");
        if (c_.has("rounds") && std::stoull(c_.get("rounds")) > std::stoull(c_.get("bound")))
            return fail("round bound exceeded");
        return pass();
    }

    CheckResult chi()
    {
        FiniteAction a = action("action");
        GroupElem g = a.spec().parse_elem(c_.get("element"));
        std::vector<Point> img(a.size());
        for (Point x = 0; x < a.size(); ++x)
            img[x] = a.act(g, x);
        const std::string& value = c_.get("value");
        bool fixed = false;
        for (Point x = 0; x < a.size(); ++x)
            fixed |= img[x] == x;
        if (value == "inf")
            return fixed ? pass() : fail("element has no fixed point");
        if (fixed)
            return fail("element has a fixed point");
        auto col = numbers(c_.get("map"));
        const auto c = std::stoull(value);
        if (col.size() != a.size())
            return fail("cover has the wrong number of points");
        for (Point x = 0; x < a.size(); ++x) {
            if (col[x] >= c)
                return fail("cover uses more sets than claimed");
            if (col[x] == col[img[x]])
                return fail("a set meets its translate");
        }
        // Fewer sets: c = 1 only for the empty space; c = 2 iff the graph
        // x -- g x is bipartite.
        if (a.size() > 0 && c == 1)
            return fail("one set cannot work on a nonempty space");
        if (c >= 3) {
            std::vector<int> side(a.size(), -1);
            for (Point s = 0; s < a.size(); ++s) {
                if (side[s] >= 0)
                    continue;
                side[s] = 0;
                for (Point x = s; side[img[x]] < 0; x = img[x])
                    side[img[x]] = 1 - side[x];
            }
            bool bipartite = true;
            for (Point x = 0; x < a.size(); ++x)
                bipartite &= side[x] != side[img[x]];
            if (bipartite)
                return fail("two sets suffice");
        }
        return pass();
    }

    CheckResult girth()
    {
        if (c_.verdict != Verdict::yes)
            return pass();
        LocalGraph g = parse_graph(file("graph"));
        FiniteAction a = action("action");
        const std::size_t want = std::stoull(c_.get("girth"));
        if (!g.is_connected())
            return fail("graph is not connected");
        for (auto d : g.degrees())
            if (d != 4)
                return fail("graph is not 4-regular");
        // girth >= want iff no edge closes a cycle of length < want
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            if (g.edges[e].u == g.edges[e].v)
                return want <= 1 ? pass() : fail("loop");
            std::vector<std::size_t> dist(g.size(), SIZE_MAX);
            std::vector<std::size_t> q{g.edges[e].u};
            dist[g.edges[e].u] = 0;
            std::vector<std::vector<std::pair<std::size_t, std::size_t>>> inc(g.size());
            for (std::size_t f = 0; f < g.edges.size(); ++f)
                if (f != e) {
                    inc[g.edges[f].u].push_back({g.edges[f].v, f});
                    inc[g.edges[f].v].push_back({g.edges[f].u, f});
                }
            for (std::size_t i = 0; i < q.size(); ++i)
                for (auto [y, f] : inc[q[i]])
                    if (dist[y] == SIZE_MAX) {
                        dist[y] = dist[q[i]] + 1;
                        q.push_back(y);
                    }
            std::size_t d = dist[g.edges[e].v];
            if (d != SIZE_MAX && d + 1 < want)
                return fail("cycle of length " + std::to_string(d + 1));
        }
        if (a.size() != g.size())
            return fail("action and graph sizes differ");
        std::multiset<std::pair<std::size_t, std::size_t>> from_action, from_graph;
        for (std::size_t s = 0; s < a.generators().size(); ++s) {
            GroupElem gen = a.spec().generators()[s];
            for (Point x = 0; x < a.size(); ++x) {
                Point y = a.act(gen, x);
                from_action.insert({std::min<std::size_t>(x, y), std::max<std::size_t>(x, y)});
            }
        }
        for (auto& e : g.edges)
            from_graph.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
        if (from_action != from_graph)
            return fail("Schreier graph differs from the input graph");
        return pass();
    }

    // Equivariant maps counted by trying every function on the generators.
    static std::uint64_t count_maps(const FiniteAction& from, const FiniteAction& to)
    {
        std::uint64_t count = 0;
        std::vector<Point> m(from.size(), 0);
        if (to.size() == 0)
            return from.size() == 0;
        while (true) {
            bool ok = true;
            for (std::size_t s = 0; s < from.generators().size() && ok; ++s) {
                GroupElem gen = from.spec().generators()[s];
                for (Point x = 0; x < from.size() && ok; ++x)
                    ok = m[from.act(gen, x)] == to.act(gen, m[x]);
            }
            count += ok;
            std::size_t i = m.size();
            while (i > 0 && m[i - 1] + 1 == to.size())
                m[--i] = 0;
            if (i == 0)
                break;
            ++m[i - 1];
        }
        return count;
    }

    CheckResult adjunction()
    {
        FiniteAction a = action("a");
        FiniteAction b = action("b");
        auto strides = numbers(c_.get("strides"));
        std::vector<std::int64_t> st(strides.begin(), strides.end());
        SubgroupInclusion inc = SubgroupInclusion::standard(st);
        const auto left = count_maps(restrict_to(b, inc), a);
        const auto right = count_maps(b, coinduce(a, inc));
        if (left != std::stoull(c_.get("left")) || right != std::stoull(c_.get("right")))
            return fail("counts are " + std::to_string(left) + " and " + std::to_string(right));
        if ((left == right) != (c_.verdict == Verdict::yes))
            return fail("verdict disagrees with the counts");
        return pass();
    }
};

} // namespace

CheckResult check_certificate(const std::filesystem::path& path)
{
    try {
        return Checker(path).run();
    } catch (const std::exception& e) {
        return {false, e.what()};
    }
}

std::filesystem::path write_hom_certificate(const std::filesystem::path& dir, const HomCertificate& r,
                                            const std::string& action_file, const std::string& sft_file,
                                            const std::vector<Pattern>& hits)
{
    Certificate c;
    c.kind = "hom";
    c.verdict = r.verdict;
    c.add("action", action_file);
    c.add("sft", sft_file);
    for (auto& h : hits) {
        std::string line;
        for (auto s : h)
            line += (line.empty() ? "" : " ") + std::to_string(s);
        c.add("hit", line);
    }
    c.add("nodes", std::to_string(r.nodes));
    if (r.by_counting)
        c.add("refuted-by", "counting");
    if (r.verdict == Verdict::yes) {
        write_text_file(dir / "witness.lab", labelling_to_text(*r.labelling, action_file));
        c.add("witness", "witness.lab");
    }
    auto path = dir / "certificate.txt";
    write_text_file(path, certificate_to_text(c));
    return path;
}

} // namespace wclab
