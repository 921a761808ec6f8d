#ifndef NONREP_PLANARMAP_HPP
#define NONREP_PLANARMAP_HPP

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "nonrep/graph.hpp"

namespace nonrep {

/// Invalid or unsupported planar map input.
class MapError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Directed edge tail -> head.
struct Dart {
    Vertex tail = 0;
    Vertex head = 0;

    friend auto operator<=>(const Dart&, const Dart&) = default;
};

/// Connected simple graph with a rotation system (cyclic neighbour order per
/// vertex) and a designated outer face, given as a closed vertex walk.
///
/// Faces are traced with the rule: after arriving at v along u -> v, leave
/// along v -> w where w follows u in the rotation of v.
class PlanarMap {
  public:
    /// Checks that the rotation lists describe a connected simple graph with
    /// at least one edge. The outer walk is matched against faces by
    /// trace_faces.
    static PlanarMap make(std::vector<std::vector<Vertex>> rotation, std::vector<Vertex> outer_walk);

    std::size_t vertex_count() const { return rotation_.size(); }
    std::size_t edge_count() const { return graph_.edge_count(); }
    const std::vector<std::vector<Vertex>>& rotation() const { return rotation_; }
    const std::vector<Vertex>& outer_walk() const { return outer_walk_; }
    const Graph& graph() const { return graph_; }

    friend bool operator==(const PlanarMap&, const PlanarMap&) = default;

  private:
    std::vector<std::vector<Vertex>> rotation_;
    std::vector<Vertex> outer_walk_;
    Graph graph_;
};

struct FaceSet {
    /// Boundary walks; every dart lies on exactly one.
    std::vector<std::vector<Dart>> faces;
    /// Per edge of map.graph().edges(): face of u -> v and face of v -> u.
    std::vector<std::array<std::size_t, 2>> incidence;
    /// Index of the designated outer face.
    std::size_t outer = 0;

    std::vector<Vertex> vertex_walk(std::size_t face) const;
};

/// Throws MapError when V - E + F != 2 or the outer walk matches no face
/// (up to rotation, then reflection) or more than one.
FaceSet trace_faces(const PlanarMap& m);

/// A graph whose vertex i stands for face face_of_vertex[i].
struct FaceGraph {
    Graph graph;
    std::vector<std::size_t> face_of_vertex;
};

/// One vertex per face; one edge per pair of distinct faces sharing an edge.
FaceGraph dual_graph(const PlanarMap& m, const FaceSet& fs);

/// The dual without the outer face's vertex.
FaceGraph weak_dual(const PlanarMap& m, const FaceSet& fs);

/// Every vertex of m lies on the outer face.
bool check_outerplanar(const PlanarMap& m, const FaceSet& fs);

struct FaceColouring {
    std::vector<Colour> colours;  // indexed by face
    unsigned k = 0;
};

struct OuterplanarFaceColouring {
    FaceSet faces;
    FaceColouring colouring;
    FaceGraph dual;
};

/// Inner faces get a non-repetitive forest colouring of the weak dual (at
/// most four colours); the outer face gets colour 4. The result is checked
/// on the full dual before it is returned.
OuterplanarFaceColouring colour_faces_outerplanar(const PlanarMap& m);

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Builds the map of a straight-line drawing: rotations sorted by angle,
/// outer face the one with the largest signed area.
PlanarMap map_from_layout(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges,
                          std::span<const Point> positions);

/// Convex n-gon plus a random non-crossing chord set. Candidate chords are
/// visited in a seeded random order and each is kept with probability
/// `density` when it crosses no kept chord; density >= 1 triangulates.
PlanarMap random_outerplanar_map(std::size_t n, double density, std::uint64_t seed);

}  // namespace nonrep

#endif
