#pragma once

// Synchronous LOCAL-model computations on graphs with explicit vertex IDs.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wclab/action.hpp"
#include "wclab/graph.hpp"
#include "wclab/patterns.hpp"

namespace wclab {

/// Iterated logarithm: how often log2 must be applied to x to reach a value <= 1.
std::size_t log_star(std::uint64_t x);

struct RoundInfo {
    std::string phase;
    std::uint64_t max_color = 0; // largest color held after the round
    std::size_t message_bits = 0; // size of the largest message sent
};

struct RoundTrace {
    std::size_t rounds = 0;
    std::vector<RoundInfo> per_round;
    std::vector<std::uint32_t> coloring;
};

/// Additive constant in the round bound log*(max ID) + C of cole_vishkin_color.
/// It is 10 for max degree <= 2 and 5 + 3^D - D for max degree D >= 3.
std::size_t cole_vishkin_constant(std::size_t max_degree);

/// Deterministic distributed (D+1)-coloring, D the maximum number of
/// distinct neighbours. Cole-Vishkin color reduction on a decomposition of
/// the edges into rooted forests, followed by one-class-per-round reduction.
/// Throws on duplicate IDs and on loops.
RoundTrace cole_vishkin_color(const LocalGraph& g);

bool is_proper_coloring(const LocalGraph& g, const std::vector<std::uint32_t>& colors);

/// Sequential greedy extension to a proper coloring of Sch(a, W \ {id})
/// with |W \ {id}| + 1 colors. Points are visited in BFS order starting
/// from the least uncolored point; each receives the least color unused by
/// its W-neighbours. Throws when the partial coloring is not proper or an
/// uncolored point is fixed by some element of W \ {id}.
Labelling greedy_extend_coloring(const FiniteAction& a, const Window& w,
                                 const std::vector<std::optional<Symbol>>& partial);

/// The radius-r ball around a vertex, described through IDs only: the
/// vertices at distance <= r, and the edges with an endpoint at distance < r.
struct IdBall {
    std::uint64_t center = 0;
    std::vector<std::uint64_t> vertices;                          // sorted
    std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;   // (smaller, larger), sorted

    bool operator==(const IdBall&) const = default;
};

IdBall id_ball(const LocalGraph& g, std::size_t v, std::size_t r);

using LocalAlgorithm = std::function<std::uint64_t(const IdBall&)>;

/// Output at v is alg(ball of radius r around v). Throws on duplicate IDs.
std::vector<std::uint64_t> simulate_local(const LocalAlgorithm& alg, const LocalGraph& g, std::size_t r);

} // namespace wclab
