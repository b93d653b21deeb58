#include "wclab/patterns.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

#include "wclab/sft.hpp"

namespace wclab {

void Labelling::validate(std::size_t points) const
{
    if (k == 0)
        throw Error("labelling with zero colors");
    if (colors.size() != points)
        throw Error("labelling covers " + std::to_string(colors.size()) + " points, action has " +
                    std::to_string(points));
    for (auto c : colors)
        if (c >= k)
            throw Error("labelling color out of range");
}

Labelling constant_labelling(std::size_t points, std::size_t k, Symbol c)
{
    return Labelling{k, std::vector<Symbol>(points, c)};
}

void PatternSet::normalize()
{
    std::sort(patterns.begin(), patterns.end());
    patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
}

bool PatternSet::contains(const Pattern& p) const
{
    return std::binary_search(patterns.begin(), patterns.end(), p);
}

std::vector<Permutation> window_maps(const FiniteAction& a, const Window& w)
{
    if (!(w.spec() == a.spec()))
        throw Error("window group " + w.spec().to_string() + " does not match action group " +
                    a.spec().to_string());
    std::vector<Permutation> maps;
    maps.reserve(w.size());
    for (auto& g : w)
        maps.push_back(a.permutation_of(g));
    return maps;
}

Pattern pattern_at(const std::vector<Permutation>& maps, const Labelling& f, Point x)
{
    Pattern p(maps.size());
    for (std::size_t i = 0; i < maps.size(); ++i)
        p[i] = f.colors[maps[i][x]];
    return p;
}

PatternSet patterns_of(const FiniteAction& a, const Labelling& f, const Window& w)
{
    f.validate(a.size());
    auto maps = window_maps(a, w);
    PatternSet s{w, f.k, {}};
    for (Point x = 0; x < a.size(); ++x)
        s.patterns.push_back(pattern_at(maps, f, x));
    s.normalize();
    return s;
}

PatternSet recolor(const PatternSet& s, const std::vector<Symbol>& perm)
{
    PatternSet out{s.window, s.k, s.patterns};
    for (auto& p : out.patterns)
        for (auto& c : p)
            c = perm.at(c);
    out.normalize();
    return out;
}

namespace {

std::uint64_t saturating_power(std::uint64_t base, std::uint64_t exp)
{
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
            return std::numeric_limits<std::uint64_t>::max();
        r *= base;
    }
    return r;
}

// Calls f on every injection of {0..j-1} into {0..k-1}.
template <class F>
void for_each_injection(std::size_t j, std::size_t k, F&& f)
{
    std::vector<Symbol> img(j);
    std::vector<bool> used(k, false);
    auto rec = [&](auto& self, std::size_t i) -> void {
        if (i == j) {
            f(img);
            return;
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (used[c])
                continue;
            used[c] = true;
            img[i] = static_cast<Symbol>(c);
            self(self, i + 1);
            used[c] = false;
        }
    };
    rec(rec, 0);
}

} // namespace

PatternSetFamily enumerate_pattern_sets(const FiniteAction& a, const Window& w, std::size_t k,
                                        std::uint64_t budget)
{
    if (k == 0)
        throw Error("need at least one color");
    const std::size_t n = a.size();
    auto maps = window_maps(a, w);
    PatternSetFamily out;
    std::set<PatternSet> found;
    Labelling f{k, std::vector<Symbol>(n, 0)};

    auto collect = [&]() {
        PatternSet s{w, k, {}};
        for (Point x = 0; x < n; ++x)
            s.patterns.push_back(pattern_at(maps, f, x));
        s.normalize();
        return s;
    };

    if (saturating_power(k, n) <= budget) {
        // Labellings up to renaming of colors: restricted growth strings.
        // Every labelling is a recoloring of exactly one of them.
        auto rec = [&](auto& self, std::size_t i, std::size_t used) -> void {
            if (i == n) {
                ++out.labellings;
                PatternSet s = collect();
                for_each_injection(used, k, [&](const std::vector<Symbol>& img) {
                    found.insert(recolor(s, img));
                });
                return;
            }
            for (std::size_t c = 0; c <= used && c < k; ++c) {
                f.colors[i] = static_cast<Symbol>(c);
                self(self, i + 1, std::max(used, c + 1));
            }
        };
        rec(rec, 0, 0);
    } else {
        out.partial = true;
        while (out.labellings < budget) {
            found.insert(collect());
            ++out.labellings;
            std::size_t i = n;
            while (i > 0 && f.colors[i - 1] + 1 == k)
                f.colors[--i] = 0;
            if (i == 0)
                break;
            ++f.colors[i - 1];
        }
    }
    out.sets.assign(found.begin(), found.end());
    return out;
}

Realization realize_pattern_set(const FiniteAction& a, const PatternSet& target,
                                std::uint64_t node_budget)
{
    if (!(target.window.spec() == a.spec()))
        throw Error("pattern set group does not match action group");
    Realization r;
    if (target.patterns.empty()) {
        r.verdict = a.size() == 0 ? Verdict::yes : Verdict::no;
        if (a.size() == 0)
            r.labelling = Labelling{target.k, {}};
        return r;
    }
    std::vector<std::string> names;
    for (std::size_t c = 0; c < target.k; ++c)
        names.push_back(std::to_string(c));
    SftSpec x = SftSpec::explicit_patterns(a.spec(), names, target.window, target.patterns);
    HomCertificate cert = hom_exists(a, x, target.patterns, node_budget);
    r.verdict = cert.verdict;
    r.nodes = cert.nodes;
    if (cert.verdict == Verdict::yes) {
        Labelling f = *cert.labelling;
        f.k = target.k;
        if (!(patterns_of(a, f, target.window) == target))
            throw Error("internal: realization witness does not reproduce the target");
        r.labelling = std::move(f);
    }
    return r;
}

ContainmentVerdict weakly_contains_at(const FiniteAction& a, const FiniteAction& b, const Window& w,
                                      std::size_t k, std::uint64_t enumeration_budget,
                                      std::uint64_t node_budget)
{
    if (!(a.spec() == b.spec()))
        throw Error("cannot compare actions of different groups");
    PatternSetFamily family = enumerate_pattern_sets(b, w, k, enumeration_budget);
    ContainmentVerdict v;
    std::size_t unknown = 0;
    for (auto& s : family.sets) {
        Realization r = realize_pattern_set(a, s, node_budget);
        if (r.verdict == Verdict::no) {
            v.verdict = Verdict::no;
            v.counterexample = s;
            v.witnesses.clear();
            v.report = "pattern set of size " + std::to_string(s.patterns.size()) +
                       " is not realizable";
            return v;
        }
        if (r.verdict == Verdict::unknown)
            ++unknown;
        else
            v.witnesses.emplace_back(s, *r.labelling);
    }
    std::ostringstream rep;
    rep << family.sets.size() << " pattern sets from " << family.labellings << " labellings";
    if (family.partial)
        rep << " (partial enumeration)";
    if (unknown)
        rep << ", " << unknown << " undecided within the node budget";
    v.report = rep.str();
    v.verdict = (family.partial || unknown) ? Verdict::unknown : Verdict::yes;
    if (v.verdict != Verdict::yes)
        v.witnesses.clear();
    return v;
}

Labelling apply_local_rule(const FiniteAction& a, const LocalRule& rule, const Labelling& f)
{
    f.validate(a.size());
    auto maps = window_maps(a, rule.window);
    Labelling g{rule.colors, std::vector<Symbol>(a.size())};
    for (Point x = 0; x < a.size(); ++x) {
        auto it = rule.table.find(pattern_at(maps, f, x));
        if (it == rule.table.end())
            throw Error("local rule has no entry for the pattern at point " + std::to_string(x));
        if (it->second >= rule.colors)
            throw Error("local rule output out of range");
        g.colors[x] = it->second;
    }
    return g;
}

Labelling translate_labelling(const FiniteAction& a, const GroupElem& g, const Labelling& f)
{
    f.validate(a.size());
    Permutation back = a.permutation_of(a.spec().inv(g));
    Labelling out{f.k, std::vector<Symbol>(a.size())};
    for (Point x = 0; x < a.size(); ++x)
        out.colors[x] = f.colors[back[x]];
    return out;
}

std::string labelling_to_text(const Labelling& f, std::string_view action_path)
{
    std::ostringstream os;
    os << "action " << action_path << "\n";
    os << "colors " << f.k << "\n";
    os << "map";
    for (auto c : f.colors)
        os << " " << c;
    os << "\n";
    return os.str();
}

LabellingFile parse_labelling(std::string_view text)
{
    LabellingFile out;
    bool have_colors = false, have_map = false;
    std::istringstream is{std::string(text)};
    std::string line;
    while (std::getline(is, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key))
            continue;
        if (key == "action") {
            ls >> out.action_path;
        } else if (key == "colors") {
            if (!(ls >> out.labelling.k))
                throw Error("bad colors line");
            have_colors = true;
        } else if (key == "map") {
            long long c;
            while (ls >> c) {
                if (c < 0)
                    throw Error("negative color");
                out.labelling.colors.push_back(static_cast<Symbol>(c));
            }
            if (!ls.eof())
                throw Error("bad map line");
            have_map = true;
        } else {
            throw Error("unknown labelling file line: " + line);
        }
    }
    if (!have_colors || !have_map)
        throw Error("labelling file needs colors and map lines");
    out.labelling.validate(out.labelling.colors.size());
    return out;
}

std::string pattern_set_to_text(const PatternSet& s)
{
    std::ostringstream os;
    os << "group " << s.window.spec().to_string() << "\n";
    os << "window " << s.window.to_string() << "\n";
    os << "colors " << s.k << "\n";
    for (auto& p : s.patterns) {
        for (std::size_t i = 0; i < p.size(); ++i)
            os << (i ? " " : "") << p[i];
        os << "\n";
    }
    return os.str();
}

PatternSet parse_pattern_set(std::string_view text)
{
    std::optional<GroupSpec> spec;
    std::optional<Window> window;
    std::optional<std::size_t> k;
    std::vector<Pattern> patterns;
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
        } else if (key == "window") {
            if (!spec)
                throw Error("window line before group line");
            std::string rest;
            std::getline(ls, rest);
            window = Window::parse(*spec, rest);
        } else if (key == "colors") {
            std::size_t v;
            if (!(ls >> v) || v == 0)
                throw Error("bad colors line");
            k = v;
        } else {
            if (!window || !k)
                throw Error("pattern line before window and colors lines");
            std::istringstream ps(line);
            Pattern p;
            long long c;
            while (ps >> c) {
                if (c < 0 || static_cast<std::size_t>(c) >= *k)
                    throw Error("pattern color out of range: " + line);
                p.push_back(static_cast<Symbol>(c));
            }
            if (!ps.eof() || p.size() != window->size())
                throw Error("pattern does not fit the window: " + line);
            patterns.push_back(std::move(p));
        }
    }
    if (!window || !k)
        throw Error("pattern set file needs group, window and colors lines");
    PatternSet s{*window, *k, std::move(patterns)};
    s.normalize();
    return s;
}

} // namespace wclab
