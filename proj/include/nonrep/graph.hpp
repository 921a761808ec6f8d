#ifndef NONREP_GRAPH_HPP
#define NONREP_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nonrep/words.hpp"

namespace nonrep {

using Vertex = std::uint32_t;

/// Malformed graph or colouring input.
class GraphError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A search ran into its configured node budget before reaching an answer.
class BudgetExhausted : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A result contradicted a fact the library relies on (e.g. a cited theorem).
class InternalError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Undirected edge, normalised so that u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Finite simple undirected graph on the dense vertex set 0..n-1.
/// Immutable once built; neighbour lists are sorted.
class Graph {
  public:
    Graph() = default;

    /// Rejects out-of-range endpoints, self-loops and duplicate edges.
    static Graph from_edges(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges);

    std::size_t vertex_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    std::span<const Vertex> neighbours(Vertex v) const { return adjacency_.at(v); }
    std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }
    bool adjacent(Vertex u, Vertex v) const;

    friend bool operator==(const Graph&, const Graph&) = default;

  private:
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adjacency_;
};

Graph build_graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges);
Graph build_graph(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> edges);

/// One colour per vertex, each below k.
struct VertexColouring {
    std::vector<Colour> colours;
    unsigned k = 0;

    /// Throws GraphError when some entry is >= k.
    static VertexColouring make(std::vector<Colour> colours, unsigned k);

    /// Number of distinct colours that actually occur.
    std::size_t distinct_colours() const;

    friend bool operator==(const VertexColouring&, const VertexColouring&) = default;
};

/// A simple path given by its vertices.
struct PathWitness {
    std::vector<Vertex> vertices;

    Word colour_word(const VertexColouring& c) const;
    friend bool operator==(const PathWitness&, const PathWitness&) = default;
};

struct VerifyOptions {
    /// Maximum number of path extensions; exceeding it throws BudgetExhausted.
    std::optional<std::uint64_t> node_budget;
};

/// Searches for a simple path whose whole colour word is a square. Every
/// repetitive colouring has one, because subpaths of simple paths are simple.
/// The witness is the first one found scanning start vertices in increasing
/// order, with the start the smaller endpoint.
std::optional<PathWitness> find_repetitive_path(const Graph& g, const VertexColouring& c,
                                                const VerifyOptions& opts = {});

bool is_nonrepetitive(const Graph& g, const VertexColouring& c, const VerifyOptions& opts = {});

/// Distinct vertices, consecutive ones adjacent, colour word a square.
bool is_valid_witness(const Graph& g, const VertexColouring& c, const PathWitness& w);

/// Colour word along the unique u-v path of a forest.
Word tree_path_word(const Graph& g, const VertexColouring& c, Vertex u, Vertex v);

// Structural helpers.

std::vector<std::vector<Vertex>> connected_components(const Graph& g);
bool is_connected(const Graph& g);
bool is_forest(const Graph& g);

/// Subgraph induced by `vertices`; local vertex i is vertices[i].
Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

/// Graph with the listed vertices removed, plus the map new index -> old index.
std::pair<Graph, std::vector<Vertex>> delete_vertices(const Graph& g, std::span<const Vertex> removed);

/// Backtracking isomorphism test. Intended for graphs with a few dozen vertices.
bool are_isomorphic(const Graph& a, const Graph& b);

}  // namespace nonrep

#endif
