#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wclab/action.hpp"
#include "wclab/csp.hpp"

namespace wclab {

/// A map from the points of some action to [k]. The action is passed
/// alongside rather than stored, so labellings stay plain values.
struct Labelling {
    std::size_t k = 1;
    std::vector<Symbol> colors;

    std::size_t size() const { return colors.size(); }
    void validate(std::size_t points) const;
    bool operator==(const Labelling&) const = default;
};

Labelling constant_labelling(std::size_t points, std::size_t k, Symbol c = 0);

/// Values of a pattern listed in the canonical order of its window.
using Pattern = std::vector<Symbol>;

struct PatternSet {
    Window window;
    std::size_t k = 1;
    std::vector<Pattern> patterns; // sorted, unique

    void normalize();
    bool contains(const Pattern& p) const;
    bool operator==(const PatternSet& o) const
    {
        return window == o.window && k == o.k && patterns == o.patterns;
    }
    std::strong_ordering operator<=>(const PatternSet& o) const
    {
        if (auto c = k <=> o.k; c != 0)
            return c;
        return patterns <=> o.patterns;
    }
};

/// maps[i][x] = w_i . x for the elements w_i of the window.
std::vector<Permutation> window_maps(const FiniteAction& a, const Window& w);

Pattern pattern_at(const std::vector<Permutation>& maps, const Labelling& f, Point x);

/// p_W(f, a) = { (w -> f(w x)) : x in X }.
PatternSet patterns_of(const FiniteAction& a, const Labelling& f, const Window& w);

/// Pattern set with every color renamed by perm (perm[c] = new color).
PatternSet recolor(const PatternSet& s, const std::vector<Symbol>& perm);

struct PatternSetFamily {
    std::vector<PatternSet> sets; // sorted
    bool partial = false;
    std::uint64_t labellings = 0; // labellings actually evaluated
};

/// All pattern sets p_W(f, a) over labellings f : X -> [k]. When k^n exceeds
/// the budget only the first `budget` labellings in lexicographic order are
/// examined and the result is flagged partial.
PatternSetFamily enumerate_pattern_sets(const FiniteAction& a, const Window& w, std::size_t k,
                                        std::uint64_t budget);

struct Realization {
    Verdict verdict = Verdict::unknown;
    std::optional<Labelling> labelling;
    std::uint64_t nodes = 0;
};

/// Searches for f with p_W(f, a) = target exactly.
Realization realize_pattern_set(const FiniteAction& a, const PatternSet& target,
                                std::uint64_t node_budget = Csp::unlimited);

struct ContainmentVerdict {
    Verdict verdict = Verdict::unknown;
    /// Yes: one realizing labelling of a for each pattern set of b.
    std::vector<std::pair<PatternSet, Labelling>> witnesses;
    /// No: a pattern set of b that a cannot realize.
    std::optional<PatternSet> counterexample;
    std::string report;
};

/// One-scale comparison: is every (W, k) pattern set of b realized on a?
ContainmentVerdict weakly_contains_at(const FiniteAction& a, const FiniteAction& b, const Window& w,
                                      std::size_t k, std::uint64_t enumeration_budget,
                                      std::uint64_t node_budget = Csp::unlimited);

struct LocalRule {
    Window window;
    std::size_t colors = 1; // output alphabet size
    std::map<Pattern, Symbol> table;
};

/// g(x) = rule(pattern of f at x).
Labelling apply_local_rule(const FiniteAction& a, const LocalRule& rule, const Labelling& f);

/// Labelling on the same action moved by g: (g f)(x) = f(g^{-1} x). For
/// abelian groups x -> g x is an automorphism of the action, so local rules
/// commute with this move.
Labelling translate_labelling(const FiniteAction& a, const GroupElem& g, const Labelling& f);

/// Text forms. The labelling file names its action file; pattern set files
/// carry group, window and color count header lines.
std::string labelling_to_text(const Labelling& f, std::string_view action_path);
struct LabellingFile {
    std::string action_path;
    Labelling labelling;
};
LabellingFile parse_labelling(std::string_view text);

std::string pattern_set_to_text(const PatternSet& s);
PatternSet parse_pattern_set(std::string_view text);

} // namespace wclab
