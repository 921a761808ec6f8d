#ifndef NONREP_GADGETS_HPP
#define NONREP_GADGETS_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "nonrep/graph.hpp"
#include "nonrep/planarmap.hpp"

namespace nonrep {

/// A generated graph with named vertices and, where available, a plane
/// embedding.
struct Gadget {
    std::string name;
    Graph graph;
    std::map<std::string, Vertex> roles;
    std::optional<PlanarMap> embedding;

    /// Throws std::out_of_range for an unknown role.
    Vertex role(std::string_view name) const;
};

/// P_n on 0..n-1 with roles end0, end1.
Gadget path_graph(std::size_t n);

/// P_n on 0..n-1 plus the rivet n, adjacent to every path vertex.
Gadget fan(std::size_t n);

/// Five disjoint copies of F_4 (fan f uses 5f..5f+3 for the path and 5f+4
/// for its rivet) and vertex r = 25 joined to every rivet. 26 vertices,
/// 40 edges, outerplanar embedding included.
Gadget theorem2_graph();

/// Seven disjoint copies of theorem2_graph() ("diamonds") whose r-vertices
/// become centres, and two vertices r, s adjacent to each other and to every
/// centre. Numbering: the 35 fans first (fan f in diamond f / 5, path then
/// rivet), centres 175..181, r = 182, s = 183. 184 vertices, 295 edges.
Gadget theorem3_graph();

/// Variant with the same degree profile around r and s in which each diamond
/// is F_4 plus a centre adjacent to all five fan vertices. Fans 0..34,
/// centres 35..41, r = 42, s = 43. 44 vertices, 99 edges.
Gadget theorem3_double_fan_graph();

/// Uniformly seeded random recursive tree: vertex i > 0 attaches to a random
/// earlier vertex.
Graph random_tree(std::size_t n, std::uint64_t seed);

}  // namespace nonrep

#endif
