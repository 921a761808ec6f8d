#include "nonrep/planarmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>

#include "nonrep/solver.hpp"

namespace nonrep {

PlanarMap PlanarMap::make(std::vector<std::vector<Vertex>> rotation, std::vector<Vertex> outer_walk) {
    const std::size_t n = rotation.size();
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < n; ++u) {
        std::vector<Vertex> sorted = rotation[u];
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw MapError("rotation of vertex " + std::to_string(u) + " repeats a neighbour");
        }
        for (Vertex v : rotation[u]) {
            if (v >= n) throw MapError("rotation of vertex " + std::to_string(u) + " names unknown vertex " + std::to_string(v));
            if (v == u) throw MapError("rotation of vertex " + std::to_string(u) + " contains a loop");
            if (std::find(rotation[v].begin(), rotation[v].end(), u) == rotation[v].end()) {
                throw MapError("rotation inconsistency: " + std::to_string(u) + " lists " + std::to_string(v) +
                               " but not vice versa");
            }
            if (u < v) edges.emplace_back(u, v);
        }
    }
    if (edges.empty()) throw MapError("a map needs at least one edge");
    Graph g = Graph::from_edges(n, edges);
    if (!is_connected(g)) throw MapError("disconnected maps are not supported");
    if (outer_walk.empty()) throw MapError("outer face walk is empty");
    for (Vertex v : outer_walk) {
        if (v >= n) throw MapError("outer face walk names unknown vertex " + std::to_string(v));
    }
    PlanarMap m;
    m.rotation_ = std::move(rotation);
    m.outer_walk_ = std::move(outer_walk);
    m.graph_ = std::move(g);
    return m;
}

std::vector<Vertex> FaceSet::vertex_walk(std::size_t face) const {
    std::vector<Vertex> walk;
    for (const Dart& d : faces.at(face)) walk.push_back(d.tail);
    return walk;
}

namespace {

std::vector<std::vector<Dart>> trace_walks(const std::vector<std::vector<Vertex>>& rotation) {
    const std::size_t n = rotation.size();
    std::vector<std::size_t> offset(n + 1, 0);
    for (std::size_t u = 0; u < n; ++u) offset[u + 1] = offset[u] + rotation[u].size();
    auto position = [&](Vertex at, Vertex nb) {
        const auto& rot = rotation[at];
        return static_cast<std::size_t>(std::find(rot.begin(), rot.end(), nb) - rot.begin());
    };
    std::vector<char> used(offset[n], 0);
    std::vector<std::vector<Dart>> faces;
    for (Vertex u = 0; u < n; ++u) {
        for (std::size_t i = 0; i < rotation[u].size(); ++i) {
            if (used[offset[u] + i]) continue;
            std::vector<Dart> walk;
            Vertex tail = u;
            std::size_t slot = i;
            while (!used[offset[tail] + slot]) {
                used[offset[tail] + slot] = 1;
                const Vertex head = rotation[tail][slot];
                walk.push_back(Dart{tail, head});
                const std::size_t back = position(head, tail);
                slot = (back + 1) % rotation[head].size();
                tail = head;
            }
            faces.push_back(std::move(walk));
        }
    }
    return faces;
}

bool cyclic_match(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    if (a.size() != b.size()) return false;
    const std::size_t n = a.size();
    for (std::size_t shift = 0; shift < n; ++shift) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) ok = a[i] == b[(i + shift) % n];
        if (ok) return true;
    }
    return false;
}

std::size_t edge_index(const Graph& g, Vertex a, Vertex b) {
    const Edge key{std::min(a, b), std::max(a, b)};
    const auto& edges = g.edges();
    return static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), key) - edges.begin());
}

}  // namespace

FaceSet trace_faces(const PlanarMap& m) {
    FaceSet fs;
    fs.faces = trace_walks(m.rotation());
    const long v = static_cast<long>(m.vertex_count());
    const long e = static_cast<long>(m.edge_count());
    const long f = static_cast<long>(fs.faces.size());
    if (v - e + f != 2) {
        throw MapError("not a plane embedding: V - E + F = " + std::to_string(v - e + f) + " (expected 2)");
    }
    fs.incidence.assign(m.edge_count(), {0, 0});
    for (std::size_t face = 0; face < fs.faces.size(); ++face) {
        for (const Dart& d : fs.faces[face]) {
            fs.incidence[edge_index(m.graph(), d.tail, d.head)][d.tail < d.head ? 0 : 1] = face;
        }
    }

    const std::vector<Vertex>& want = m.outer_walk();
    std::vector<Vertex> reflected(want.rbegin(), want.rend());
    const std::vector<Vertex>* targets[] = {&want, &reflected};
    for (const auto* target : targets) {
        std::vector<std::size_t> hits;
        for (std::size_t face = 0; face < fs.faces.size(); ++face) {
            if (cyclic_match(fs.vertex_walk(face), *target)) hits.push_back(face);
        }
        if (hits.size() > 1) throw MapError("outer face walk matches several faces");
        if (hits.size() == 1) {
            fs.outer = hits.front();
            return fs;
        }
    }
    throw MapError("outer face walk matches no face of the embedding");
}

FaceGraph dual_graph(const PlanarMap& m, const FaceSet& fs) {
    (void)m;
    std::set<std::pair<Vertex, Vertex>> adjacent;
    for (const auto& [a, b] : fs.incidence) {
        if (a != b) adjacent.emplace(static_cast<Vertex>(std::min(a, b)), static_cast<Vertex>(std::max(a, b)));
    }
    std::vector<std::pair<Vertex, Vertex>> edges(adjacent.begin(), adjacent.end());
    FaceGraph out;
    out.graph = Graph::from_edges(fs.faces.size(), edges);
    out.face_of_vertex.resize(fs.faces.size());
    for (std::size_t i = 0; i < fs.faces.size(); ++i) out.face_of_vertex[i] = i;
    return out;
}

FaceGraph weak_dual(const PlanarMap& m, const FaceSet& fs) {
    const FaceGraph dual = dual_graph(m, fs);
    const Vertex outer = static_cast<Vertex>(fs.outer);
    auto [graph, kept] = delete_vertices(dual.graph, std::span<const Vertex>(&outer, 1));
    FaceGraph out;
    out.graph = std::move(graph);
    for (Vertex v : kept) out.face_of_vertex.push_back(dual.face_of_vertex[v]);
    return out;
}

bool check_outerplanar(const PlanarMap& m, const FaceSet& fs) {
    std::vector<char> on_outer(m.vertex_count(), 0);
    for (const Dart& d : fs.faces.at(fs.outer)) on_outer[d.tail] = 1;
    return std::all_of(on_outer.begin(), on_outer.end(), [](char c) { return c != 0; });
}

OuterplanarFaceColouring colour_faces_outerplanar(const PlanarMap& m) {
    OuterplanarFaceColouring out;
    out.faces = trace_faces(m);
    if (!check_outerplanar(m, out.faces)) {
        throw MapError("map is not outerplanar: some vertex is missing from the outer face");
    }
    const FaceGraph weak = weak_dual(m, out.faces);
    if (!is_forest(weak.graph)) throw InternalError("weak dual of an outerplanar map has a cycle");
    const VertexColouring inner = colour_forest(weak.graph);

    constexpr Colour outer_colour = 4;
    out.colouring.k = 5;
    out.colouring.colours.assign(out.faces.faces.size(), outer_colour);
    for (std::size_t i = 0; i < weak.face_of_vertex.size(); ++i) {
        out.colouring.colours[weak.face_of_vertex[i]] = inner.colours[i];
    }
    out.dual = dual_graph(m, out.faces);
    std::vector<Colour> by_vertex(out.dual.face_of_vertex.size());
    for (std::size_t i = 0; i < by_vertex.size(); ++i) by_vertex[i] = out.colouring.colours[out.dual.face_of_vertex[i]];
    if (!is_nonrepetitive(out.dual.graph, VertexColouring{std::move(by_vertex), 5})) {
        throw InternalError("face colouring failed verification on the dual graph");
    }
    return out;
}

PlanarMap map_from_layout(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges,
                          std::span<const Point> positions) {
    if (positions.size() != n) throw MapError("layout needs one position per vertex");
    const Graph g = Graph::from_edges(n, edges);
    std::vector<std::vector<Vertex>> rotation(n);
    for (Vertex u = 0; u < n; ++u) {
        auto nb = g.neighbours(u);
        rotation[u].assign(nb.begin(), nb.end());
        auto angle = [&](Vertex w) {
            return std::atan2(positions[w].y - positions[u].y, positions[w].x - positions[u].x);
        };
        std::sort(rotation[u].begin(), rotation[u].end(), [&](Vertex a, Vertex b) { return angle(a) < angle(b); });
    }
    const auto walks = trace_walks(rotation);
    std::size_t outer = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < walks.size(); ++f) {
        double area = 0.0;
        for (const Dart& d : walks[f]) {
            area += positions[d.tail].x * positions[d.head].y - positions[d.head].x * positions[d.tail].y;
        }
        if (area > best) {
            best = area;
            outer = f;
        }
    }
    std::vector<Vertex> walk;
    if (!walks.empty()) {
        for (const Dart& d : walks[outer]) walk.push_back(d.tail);
    }
    return PlanarMap::make(std::move(rotation), std::move(walk));
}

PlanarMap random_outerplanar_map(std::size_t n, double density, std::uint64_t seed) {
    if (n < 3) throw MapError("random_outerplanar_map needs a polygon with at least 3 vertices");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<Vertex, Vertex>> candidates;
    for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = a + 2; b < n; ++b) {
            if (a == 0 && b == n - 1) continue;
            candidates.emplace_back(a, b);
        }
    }
    // Fisher-Yates on raw engine output keeps the sequence identical across
    // standard library implementations.
    for (std::size_t i = candidates.size(); i > 1; --i) {
        std::swap(candidates[i - 1], candidates[rng() % i]);
    }
    auto crosses = [](std::pair<Vertex, Vertex> p, std::pair<Vertex, Vertex> q) {
        return (p.first < q.first && q.first < p.second && p.second < q.second) ||
               (q.first < p.first && p.first < q.second && q.second < p.second);
    };
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex a = 0; a < n; ++a) edges.emplace_back(a, static_cast<Vertex>((a + 1) % n));
    std::vector<std::pair<Vertex, Vertex>> chords;
    for (const auto& cand : candidates) {
        const double draw = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (draw >= density) continue;
        if (std::none_of(chords.begin(), chords.end(), [&](const auto& c) { return crosses(c, cand); })) {
            chords.push_back(cand);
        }
    }
    std::sort(chords.begin(), chords.end());
    edges.insert(edges.end(), chords.begin(), chords.end());
    std::vector<Point> positions(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        positions[i] = Point{std::cos(t), std::sin(t)};
    }
    return map_from_layout(n, edges, positions);
}

}  // namespace nonrep
