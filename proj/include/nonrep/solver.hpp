#ifndef NONREP_SOLVER_HPP
#define NONREP_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "nonrep/graph.hpp"

namespace nonrep {

enum class Verdict { sat, unsat, indeterminate };

std::string_view to_string(Verdict v);

enum class VertexOrder {
    /// Each vertex after the first of its component is adjacent to an earlier
    /// one; among the candidates the highest degree wins, then the lowest index.
    connected_max_degree,
    /// Breadth-first from the lowest-numbered vertex of each component.
    breadth_first,
    /// 0, 1, ..., n-1.
    natural,
};

struct SolveOptions {
    /// Counted in colour assignments tried. Hitting it yields indeterminate.
    std::optional<std::uint64_t> node_budget;
    VertexOrder order = VertexOrder::connected_max_degree;
    /// Explore disjoint subtrees of the search on worker threads. The verdict
    /// and the returned colouring do not depend on this flag.
    bool parallel = false;
    /// Worker count when parallel; 0 picks hardware concurrency.
    unsigned jobs = 0;
};

struct SolveStats {
    std::uint64_t nodes = 0;
    std::uint64_t prunes = 0;
    double elapsed_seconds = 0.0;
};

struct SolveResult {
    Verdict verdict = Verdict::indeterminate;
    /// Present iff verdict == sat; always passes is_nonrepetitive.
    std::optional<VertexColouring> colouring;
    SolveStats stats;
};

/// Exact decision: does g have a non-repetitive colouring with k colours?
/// Backtracking over the chosen vertex order with first-use colour symmetry
/// breaking; each assignment is checked against every coloured simple path
/// through the new vertex.
SolveResult solve(const Graph& g, unsigned k, const SolveOptions& opts = {});

struct ThueNumberResult {
    /// sat: `colours` is the Thue number; unsat: it exceeds k_max;
    /// indeterminate: a budget ran out at `colours`.
    Verdict verdict = Verdict::indeterminate;
    unsigned colours = 0;
    std::optional<VertexColouring> colouring;
    SolveStats stats;
};

ThueNumberResult thue_number(const Graph& g, unsigned k_max, const SolveOptions& opts = {});

/// Non-repetitive colouring of a forest with at most four colours.
/// Throws GraphError on a cyclic input.
VertexColouring colour_forest(const Graph& g);

std::vector<Vertex> vertex_order(const Graph& g, VertexOrder order);

}  // namespace nonrep

#endif
