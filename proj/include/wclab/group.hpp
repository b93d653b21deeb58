#pragma once

// Finitely generated groups from a fixed family: free abelian groups Z^d,
// cyclic groups Z/n, finite tori Z/m x Z/n, free groups F_k and direct
// products of these. Elements are kept in canonical form so that equality
// is structural and windows serialize identically on every run.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wclab/error.hpp"

namespace wclab {

enum class Family { free_abelian, cyclic, torus, free, product };

/// Canonical group element. The payload layout depends on the family:
///   free_abelian(d): d integer coordinates
///   cyclic(n):       one residue in [0,n)
///   torus(m,n):      two residues
///   free(k):         reduced word, letter 2i = generator i, 2i+1 = its inverse
///   product:         payload empty, one part per factor
struct GroupElem {
    std::vector<std::int64_t> payload;
    std::vector<GroupElem> parts;

    std::strong_ordering operator<=>(const GroupElem& other) const;
    bool operator==(const GroupElem& other) const;
};

class GroupSpec {
public:
    static GroupSpec free_abelian(int d);
    static GroupSpec cyclic(std::int64_t n);
    static GroupSpec torus(std::int64_t m, std::int64_t n);
    static GroupSpec free(int k);
    static GroupSpec product(std::vector<GroupSpec> factors);

    /// Parses `Z`, `Z^d`, `Z/n`, `Z/mxZ/n`, `Fk` and `A*B*...` (factors may be parenthesized).
    static GroupSpec parse(std::string_view text);

    Family family() const { return family_; }
    const std::vector<std::int64_t>& params() const { return params_; }
    const std::vector<GroupSpec>& factors() const { return factors_; }

    /// Number of distinguished generators (the generating set E).
    std::size_t generator_count() const;
    std::vector<GroupElem> generators() const;
    /// Short names used in files and DOT labels (`a`, `b` for free groups, `e1`, `e2` otherwise).
    std::vector<std::string> generator_names() const;
    /// Generators followed by their inverses, duplicates removed, canonical order.
    std::vector<GroupElem> symmetric_generators() const;

    GroupElem identity() const;
    bool is_identity(const GroupElem& g) const { return g == identity(); }
    bool is_abelian() const;

    /// True when g has the shape and canonical form required by this group.
    bool contains(const GroupElem& g) const;

    GroupElem mul(const GroupElem& g, const GroupElem& h) const;
    GroupElem inv(const GroupElem& g) const;
    GroupElem pow(const GroupElem& g, std::int64_t e) const;
    /// Word length with respect to the symmetric generating set.
    std::int64_t word_length(const GroupElem& g) const;

    /// Convenience constructors for the common families.
    GroupElem elem(std::vector<std::int64_t> payload) const;
    GroupElem letter(int generator, bool inverse = false) const;

    std::string to_string() const;
    std::string format(const GroupElem& g) const;
    /// Accepts the tagged form produced by format() and, when unambiguous,
    /// the bare payload (`3`, `(1,-2)`, `abA`, `e`, `[..;..]`).
    GroupElem parse_elem(std::string_view text) const;

    bool operator==(const GroupSpec& other) const = default;

private:
    GroupSpec(Family f, std::vector<std::int64_t> p, std::vector<GroupSpec> fs)
        : family_(f), params_(std::move(p)), factors_(std::move(fs)) {}

    void require(const GroupElem& g) const;

    Family family_;
    std::vector<std::int64_t> params_;
    std::vector<GroupSpec> factors_;
};

/// Finite set of group elements in canonical order, duplicates dropped.
/// The identity is not implicitly added.
class Window {
public:
    Window() = default;
    Window(const GroupSpec& spec, std::vector<GroupElem> elements);

    const GroupSpec& spec() const { return spec_; }
    const std::vector<GroupElem>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    const GroupElem& operator[](std::size_t i) const { return elements_[i]; }
    auto begin() const { return elements_.begin(); }
    auto end() const { return elements_.end(); }

    /// Position of g in canonical order, or size() when absent.
    std::size_t index_of(const GroupElem& g) const;
    bool contains(const GroupElem& g) const { return index_of(g) != size(); }
    bool is_symmetric() const;

    std::string to_string() const;
    static Window parse(const GroupSpec& spec, std::string_view text);

    bool operator==(const Window& other) const
    {
        return spec_ == other.spec_ && elements_ == other.elements_;
    }
    std::strong_ordering operator<=>(const Window& other) const
    {
        return elements_ <=> other.elements_;
    }

private:
    GroupSpec spec_ = GroupSpec::free_abelian(1);
    std::vector<GroupElem> elements_;
};

struct LocalGraph;

/// All elements of word length at most radius.
Window ball(const GroupSpec& spec, int radius);

/// Cay(G, E) restricted to ball(spec, radius): edge (v, s v) labelled by the
/// generator index s whenever both ends lie in the ball.
LocalGraph cayley_graph(const GroupSpec& spec, int radius);

/// Splits a comma list at top level (commas inside (), [] are kept).
std::vector<std::string> split_top_level(std::string_view text, char sep = ',');

} // namespace wclab
