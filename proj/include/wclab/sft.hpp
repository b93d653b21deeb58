#pragma once

// Shifts of finite type over the supported groups and the homomorphism
// search hom(a, X) from a finite action into them.
//
// An SftSpec comes in one of two forms. The explicit form lists the allowed
// patterns on the window. The pairwise form gives, for a few offsets d, a
// relation R_d on symbols and requires (x(g), x(d g)) in R_d everywhere; its
// window is {id} together with the offsets. Pairwise form keeps large
// alphabets (tiling shifts have hundreds of symbols) tractable, since the
// allowed set on the full window would be far too big to list.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wclab/action.hpp"
#include "wclab/csp.hpp"
#include "wclab/patterns.hpp"

namespace wclab {

struct PairRule {
    GroupElem offset;
    std::shared_ptr<CompatMatrix> compat;
};

class SftSpec {
public:
    static SftSpec explicit_patterns(GroupSpec group, std::vector<std::string> alphabet, Window window,
                                     std::vector<Pattern> allowed);
    static SftSpec pairwise(GroupSpec group, std::vector<std::string> alphabet,
                            std::vector<PairRule> rules);

    const GroupSpec& group() const { return group_; }
    const std::vector<std::string>& alphabet() const { return alphabet_; }
    std::size_t alphabet_size() const { return alphabet_.size(); }
    const Window& window() const { return window_; }
    bool is_pairwise() const { return pairwise_; }
    /// Explicit form only.
    const std::vector<Pattern>& allowed() const { return allowed_; }
    /// Pairwise form only.
    const std::vector<PairRule>& rules() const { return rules_; }

    /// Is p (values in window order) a locally admissible pattern?
    bool allows(const Pattern& p) const;
    /// Index of a symbol name, or alphabet_size() when unknown.
    std::size_t symbol_index(std::string_view name) const;

    /// Converts pairwise form to explicit form by listing A^W; refuses when
    /// that would exceed max_patterns.
    SftSpec to_explicit(std::size_t max_patterns = 1u << 20) const;

private:
    SftSpec(GroupSpec g) : group_(std::move(g)) {}

    GroupSpec group_;
    std::vector<std::string> alphabet_;
    Window window_;
    bool pairwise_ = false;
    std::vector<Pattern> allowed_;
    std::vector<PairRule> rules_;
};

/// Full shift on k symbols over window {id}.
SftSpec full_shift(const GroupSpec& g, std::size_t k);
/// Z-SFT over {0..p-1}, window {0,1}, allowed (i, i+1 mod p).
SftSpec period_sft(std::size_t p);
/// Z-SFT over {0,1}, window {0,1}, forbids (1,1).
SftSpec golden_mean_sft();
/// Proper colorings of Cay(G, W) with |W \ {id}| + 1 colors. W must be symmetric.
SftSpec proper_coloring_sft(const Window& w);

/// Connected pieces of size p: finite sets P containing the identity,
/// connected under left multiplication by the generators, taken up to right
/// translation. Each piece is listed by its lexicographically least
/// translate that contains the identity.
std::vector<std::vector<GroupElem>> enumerate_pieces(const GroupSpec& g, std::size_t p);

inline constexpr std::size_t tiling_max_p_z2 = 6;
inline constexpr std::size_t tiling_max_p_free = 3;

/// T_p: configurations are tilings by connected pieces of size p. A symbol
/// (P, c) says "this point is cell c of a copy of piece P".
SftSpec tiling_sft(const GroupSpec& g, std::size_t p);
SftSpec tiling_sft_z2(std::size_t p);
SftSpec tiling_sft_free(std::size_t p);

/// Z^2-SFT over Z/q with x(e1 g) = x(g) + 1 and x(e2 g) = x(g): every
/// configuration has horizontal period exactly q, so hom(c_{m,n}, X) is
/// nonempty iff q divides m.
SftSpec period_forcing_sft_z2(std::size_t q);

/// Same SFT with every window element w replaced by w t. Explicit form only.
SftSpec translate_window(const SftSpec& x, const GroupElem& t);

struct HomCertificate {
    Verdict verdict = Verdict::unknown;
    std::optional<Labelling> labelling;
    /// For each hit pattern, a point where it occurs.
    std::vector<Point> hit_points;
    std::uint64_t nodes = 0;
    /// Set on a No found without search; see counting_obstruction.
    bool by_counting = false;
};

/// Sound test for hom(a, X) being empty. For each pair of window positions
/// the allowed patterns induce a relation R between x(g) and x(d g). When s
/// has the single R-successor t, the map p -> d p injects the s-points of an
/// orbit into its t-points, so #s <= #t; likewise for single predecessors.
/// Symbols in one strongly connected class of these inequalities occur
/// equally often, so every orbit size must be a sum of class sizes.
/// Returns the size of an orbit that is not, if any.
std::optional<std::size_t> counting_obstruction(const FiniteAction& a, const SftSpec& x);

/// Searches for f : points -> alphabet whose pattern at every point is
/// allowed and in which every hit pattern occurs somewhere.
HomCertificate hom_exists(const FiniteAction& a, const SftSpec& x, const std::vector<Pattern>& hits = {},
                          std::uint64_t node_budget = Csp::unlimited);

bool verify_hom(const Labelling& f, const FiniteAction& a, const SftSpec& x);

struct ZNonempty {
    bool nonempty = false;
    /// One period of a periodic point, when nonempty.
    std::vector<Symbol> witness;
};

/// Z-SFT nonemptiness through a cycle of the de Bruijn transfer graph.
ZNonempty nonempty_z(const SftSpec& x);
/// Primitive transfer graph on its recurrent part. Throws on an empty SFT.
bool is_mixing_z(const SftSpec& x);

struct Z2Result {
    Verdict verdict = Verdict::unknown;
    /// Yes: a periodic configuration on the m x n torus.
    std::size_t m = 0, n = 0;
    std::optional<Labelling> labelling;
    /// No: box radius R at which no admissible labelling of the centers
    /// [-R, R]^2 exists.
    std::size_t radius = 0;
};

Z2Result nonempty_z2_bounded(const SftSpec& x, std::size_t n_max,
                             std::uint64_t node_budget = Csp::unlimited);

/// SFT file: `group`, `alphabet`, `window`, then `allow <symbols>` lines
/// (explicit form) or `pair <offset> <s>: <t...>` lines (pairwise form).
std::string sft_to_text(const SftSpec& x);
SftSpec parse_sft(std::string_view text);

} // namespace wclab
