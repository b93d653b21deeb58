#pragma once

// Finite-domain constraint solver behind every homomorphism and realization
// query. Chronological backtracking, minimum-remaining-values variable choice
// (ties to the lowest index), symbols tried in increasing order, and
// arc-consistency propagation after every decision. The search is exhaustive,
// so a `no` answer is a proof; `unknown` only results from the node budget.

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "wclab/error.hpp"

namespace wclab {

using Symbol = std::uint32_t;

/// Boolean relation on symbols: allowed(s, t).
class CompatMatrix {
public:
    explicit CompatMatrix(std::size_t alphabet);

    std::size_t alphabet() const { return alphabet_; }
    std::size_t words() const { return words_; }
    void allow(Symbol s, Symbol t);
    bool allowed(Symbol s, Symbol t) const;
    /// Bitset of t with allowed(s, t).
    const std::uint64_t* forward(Symbol s) const { return &fwd_[s * words_]; }
    /// Bitset of s with allowed(s, t).
    const std::uint64_t* backward(Symbol t) const { return &bwd_[t * words_]; }

private:
    std::size_t alphabet_;
    std::size_t words_;
    std::vector<std::uint64_t> fwd_;
    std::vector<std::uint64_t> bwd_;
};

struct CspResult {
    Verdict verdict = Verdict::unknown;
    std::vector<Symbol> assignment;
    std::uint64_t nodes = 0;
};

class Csp {
public:
    static constexpr std::uint64_t unlimited = std::numeric_limits<std::uint64_t>::max();

    Csp(std::size_t variables, std::size_t alphabet);

    std::size_t variables() const { return n_; }
    std::size_t alphabet() const { return alphabet_; }

    /// The values of scope must form one of the tuples. Repeated variables
    /// in scope are handled (tuples disagreeing on them are dropped).
    void add_table(std::vector<std::size_t> scope,
                   std::shared_ptr<const std::vector<std::vector<Symbol>>> tuples);
    /// (value(u), value(v)) must be allowed by m. u == v restricts the diagonal.
    void add_binary(std::size_t u, std::size_t v, std::shared_ptr<const CompatMatrix> m);
    /// At least one location (a scope) must carry exactly pattern.
    void add_cover(std::vector<std::vector<std::size_t>> locations, std::vector<Symbol> pattern);
    /// Intersects the domain of var with the given symbols.
    void restrict_domain(std::size_t var, const std::vector<Symbol>& allowed);

    /// Declares a symmetry: every solution can be moved to one in which var
    /// carries the smallest value used anywhere. This holds, for instance,
    /// for a transitive action of an abelian group, whose translations act
    /// on solutions. The search then tries each value s at var with all
    /// other variables restricted to values >= s.
    void set_anchor(std::size_t var);

    CspResult solve(std::uint64_t node_budget = unlimited) const;

private:
    struct Table {
        std::vector<std::size_t> scope;
        std::shared_ptr<const std::vector<std::vector<Symbol>>> tuples;
    };
    struct Binary {
        std::size_t u, v;
        std::shared_ptr<const CompatMatrix> m;
    };
    struct Cover {
        std::vector<std::vector<std::size_t>> locations;
        std::vector<Symbol> pattern;
    };
    struct Search;

    std::size_t n_;
    std::size_t alphabet_;
    std::size_t words_;
    std::vector<std::uint64_t> initial_;
    std::vector<Table> tables_;
    std::vector<Binary> binaries_;
    std::vector<Cover> covers_;
    std::optional<std::size_t> anchor_;
};

} // namespace wclab
