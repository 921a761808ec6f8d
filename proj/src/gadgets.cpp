#include "nonrep/gadgets.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace nonrep {

Vertex Gadget::role(std::string_view name) const {
    auto it = roles.find(std::string(name));
    if (it == roles.end()) throw std::out_of_range("gadget " + this->name + " has no role " + std::string(name));
    return it->second;
}

namespace {

using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

struct Builder {
    EdgeList edges;
    std::vector<Point> positions;

    Vertex add(Point p) {
        positions.push_back(p);
        return static_cast<Vertex>(positions.size() - 1);
    }
    void join(Vertex a, Vertex b) { edges.emplace_back(a, b); }

    Gadget finish(std::string name, std::map<std::string, Vertex> roles) const {
        Gadget g;
        g.name = std::move(name);
        g.graph = Graph::from_edges(positions.size(), edges);
        g.roles = std::move(roles);
        if (!edges.empty()) g.embedding = map_from_layout(positions.size(), edges, positions);
        return g;
    }
};

Point along(Point origin, double angle, double forward, double sideways) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return Point{origin.x + forward * c - sideways * s, origin.y + forward * s + sideways * c};
}

/// F_4 hanging off `anchor` in direction `angle`: rivet one unit out, the
/// path on a perpendicular segment two units out. Returns the rivet.
Vertex add_fan(Builder& b, Point anchor, double angle) {
    Vertex path[4];
    for (int j = 0; j < 4; ++j) path[j] = b.add(along(anchor, angle, 2.0, 0.2 * (j - 1.5)));
    const Vertex rivet = b.add(along(anchor, angle, 1.0, 0.0));
    for (int j = 0; j < 3; ++j) b.join(path[j], path[j + 1]);
    for (int j = 0; j < 4; ++j) b.join(path[j], rivet);
    return rivet;
}

// Five directions around a centre, leaving room above and below for edges
// towards r and s in the two-hub layout.
constexpr double fan_angles[5] = {-0.35, 0.0, 0.35, std::numbers::pi - 0.25, std::numbers::pi + 0.25};

Point centre_position(int diamond) { return Point{10.0 + 10.0 * diamond, 0.0}; }

}  // namespace

Gadget path_graph(std::size_t n) {
    if (n == 0) throw std::invalid_argument("path_graph needs n >= 1");
    Builder b;
    for (std::size_t i = 0; i < n; ++i) b.add(Point{static_cast<double>(i), 0.0});
    for (Vertex i = 0; i + 1 < n; ++i) b.join(i, i + 1);
    return b.finish("P" + std::to_string(n), {{"end0", 0}, {"end1", static_cast<Vertex>(n - 1)}});
}

Gadget fan(std::size_t n) {
    if (n == 0) throw std::invalid_argument("fan needs n >= 1");
    Builder b;
    for (std::size_t i = 0; i < n; ++i) b.add(Point{static_cast<double>(i), 0.0});
    const Vertex rivet = b.add(Point{(static_cast<double>(n) - 1.0) / 2.0, 1.0});
    for (Vertex i = 0; i + 1 < n; ++i) b.join(i, i + 1);
    for (Vertex i = 0; i < n; ++i) b.join(i, rivet);
    return b.finish("F" + std::to_string(n),
                    {{"rivet", rivet}, {"end0", 0}, {"end1", static_cast<Vertex>(n - 1)}});
}

Gadget theorem2_graph() {
    Builder b;
    const Point origin{0.0, 0.0};
    std::map<std::string, Vertex> roles;
    Vertex rivets[5];
    for (int f = 0; f < 5; ++f) {
        rivets[f] = add_fan(b, origin, fan_angles[f]);
        roles["rivet" + std::to_string(f)] = rivets[f];
    }
    const Vertex r = b.add(origin);
    for (Vertex rivet : rivets) b.join(r, rivet);
    roles["r"] = r;
    return b.finish("theorem2", std::move(roles));
}

Gadget theorem3_graph() {
    Builder b;
    std::map<std::string, Vertex> roles;
    Vertex rivets[7][5];
    for (int d = 0; d < 7; ++d) {
        for (int f = 0; f < 5; ++f) {
            rivets[d][f] = add_fan(b, centre_position(d), fan_angles[f]);
            roles["rivet" + std::to_string(5 * d + f)] = rivets[d][f];
        }
    }
    Vertex centres[7];
    for (int d = 0; d < 7; ++d) {
        centres[d] = b.add(centre_position(d));
        for (Vertex rivet : rivets[d]) b.join(centres[d], rivet);
        roles["centre" + std::to_string(d)] = centres[d];
    }
    const Vertex r = b.add(Point{0.0, 100.0});
    const Vertex s = b.add(Point{0.0, -100.0});
    for (Vertex c : centres) {
        b.join(r, c);
        b.join(s, c);
    }
    b.join(r, s);
    roles["r"] = r;
    roles["s"] = s;
    return b.finish("theorem3", std::move(roles));
}

Gadget theorem3_double_fan_graph() {
    Builder b;
    std::map<std::string, Vertex> roles;
    // Local frame per diamond: centre at the origin, rivet two units along
    // the axis, the path on a segment halfway, bowed off the axis so that the
    // rivet-centre edge runs beneath it.
    constexpr double axis = -0.27;
    constexpr double offsets[4] = {0.1, 0.25, 0.4, 0.6};
    Vertex paths[7][4];
    Vertex rivets[7];
    for (int d = 0; d < 7; ++d) {
        for (int j = 0; j < 4; ++j) paths[d][j] = b.add(along(centre_position(d), axis, 1.0, offsets[j]));
        rivets[d] = b.add(along(centre_position(d), axis, 2.0, 0.0));
        for (int j = 0; j < 3; ++j) b.join(paths[d][j], paths[d][j + 1]);
        for (int j = 0; j < 4; ++j) b.join(paths[d][j], rivets[d]);
        roles["rivet" + std::to_string(d)] = rivets[d];
    }
    Vertex centres[7];
    for (int d = 0; d < 7; ++d) {
        centres[d] = b.add(centre_position(d));
        for (Vertex p : paths[d]) b.join(centres[d], p);
        b.join(centres[d], rivets[d]);
        roles["centre" + std::to_string(d)] = centres[d];
    }
    const Vertex r = b.add(Point{0.0, 100.0});
    const Vertex s = b.add(Point{0.0, -100.0});
    for (Vertex c : centres) {
        b.join(r, c);
        b.join(s, c);
    }
    b.join(r, s);
    roles["r"] = r;
    roles["s"] = s;
    return b.finish("theorem3-double-fan", std::move(roles));
}

Graph random_tree(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    EdgeList edges;
    for (std::size_t v = 1; v < n; ++v) {
        edges.emplace_back(static_cast<Vertex>(rng() % v), static_cast<Vertex>(v));
    }
    return Graph::from_edges(n, edges);
}

}  // namespace nonrep
