#include "nonrep/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace nonrep {

Graph Graph::from_edges(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) {
    Graph g;
    g.adjacency_.resize(n);
    g.edges_.reserve(edges.size());
    for (const auto& [a, b] : edges) {
        if (a >= n || b >= n) {
            throw GraphError("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                             ") has an endpoint outside 0.." + std::to_string(n == 0 ? 0 : n - 1));
        }
        if (a == b) throw GraphError("self-loop at vertex " + std::to_string(a));
        g.edges_.push_back(Edge{std::min(a, b), std::max(a, b)});
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    if (auto dup = std::adjacent_find(g.edges_.begin(), g.edges_.end()); dup != g.edges_.end()) {
        throw GraphError("duplicate edge (" + std::to_string(dup->u) + ", " + std::to_string(dup->v) + ")");
    }
    for (const Edge& e : g.edges_) {
        g.adjacency_[e.u].push_back(e.v);
        g.adjacency_[e.v].push_back(e.u);
    }
    for (auto& nb : g.adjacency_) std::sort(nb.begin(), nb.end());
    return g;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
    const auto& nb = adjacency_.at(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

Graph build_graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) {
    return Graph::from_edges(n, edges);
}

Graph build_graph(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> edges) {
    return Graph::from_edges(n, std::span<const std::pair<Vertex, Vertex>>(edges.begin(), edges.size()));
}

VertexColouring VertexColouring::make(std::vector<Colour> colours, unsigned k) {
    for (std::size_t i = 0; i < colours.size(); ++i) {
        if (colours[i] >= k) {
            throw GraphError("vertex " + std::to_string(i) + " has colour " + std::to_string(colours[i]) +
                             " but only " + std::to_string(k) + " colours are available");
        }
    }
    return VertexColouring{std::move(colours), k};
}

std::size_t VertexColouring::distinct_colours() const {
    std::vector<Colour> sorted = colours;
    std::sort(sorted.begin(), sorted.end());
    return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

Word PathWitness::colour_word(const VertexColouring& c) const {
    Word w;
    w.reserve(vertices.size());
    for (Vertex v : vertices) w.push_back(c.colours.at(v));
    return w;
}

namespace {

void require_covering(const Graph& g, const VertexColouring& c) {
    if (c.colours.size() != g.vertex_count()) {
        throw GraphError("colouring has " + std::to_string(c.colours.size()) + " entries for a graph with " +
                         std::to_string(g.vertex_count()) + " vertices");
    }
}

class PathSearch {
  public:
    PathSearch(const Graph& g, const VertexColouring& c, const VerifyOptions& opts)
        : g_(g), colours_(c.colours), budget_(opts.node_budget), on_path_(g.vertex_count(), 0) {}

    std::optional<PathWitness> run() {
        for (Vertex s = 0; s < g_.vertex_count(); ++s) {
            start_ = s;
            path_.assign(1, s);
            word_.assign(1, colours_[s]);
            on_path_[s] = 1;
            const bool found = extend(s);
            on_path_[s] = 0;
            if (found) return PathWitness{path_};
        }
        return std::nullopt;
    }

  private:
    bool extend(Vertex tip) {
        for (Vertex next : g_.neighbours(tip)) {
            if (on_path_[next]) continue;
            if (budget_ && ++nodes_ > *budget_) throw BudgetExhausted("path search exceeded its node budget");
            path_.push_back(next);
            word_.push_back(colours_[next]);
            if (next > start_ && is_square(word_)) return true;
            on_path_[next] = 1;
            const bool found = extend(next);
            on_path_[next] = 0;
            if (found) return true;
            path_.pop_back();
            word_.pop_back();
        }
        return false;
    }

    const Graph& g_;
    const std::vector<Colour>& colours_;
    std::optional<std::uint64_t> budget_;
    std::uint64_t nodes_ = 0;
    Vertex start_ = 0;
    std::vector<char> on_path_;
    std::vector<Vertex> path_;
    Word word_;
};

}  // namespace

std::optional<PathWitness> find_repetitive_path(const Graph& g, const VertexColouring& c,
                                                const VerifyOptions& opts) {
    require_covering(g, c);
    return PathSearch(g, c, opts).run();
}

bool is_nonrepetitive(const Graph& g, const VertexColouring& c, const VerifyOptions& opts) {
    return !find_repetitive_path(g, c, opts).has_value();
}

bool is_valid_witness(const Graph& g, const VertexColouring& c, const PathWitness& w) {
    if (c.colours.size() != g.vertex_count() || w.vertices.size() < 2) return false;
    std::vector<char> seen(g.vertex_count(), 0);
    for (std::size_t i = 0; i < w.vertices.size(); ++i) {
        const Vertex v = w.vertices[i];
        if (v >= g.vertex_count() || seen[v]) return false;
        seen[v] = 1;
        if (i > 0 && !g.adjacent(w.vertices[i - 1], v)) return false;
    }
    return is_square(w.colour_word(c));
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<char> seen(n, 0);
    std::vector<std::vector<Vertex>> out;
    for (Vertex s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<Vertex> comp{s};
        seen[s] = 1;
        for (std::size_t head = 0; head < comp.size(); ++head) {
            for (Vertex w : g.neighbours(comp[head])) {
                if (!seen[w]) {
                    seen[w] = 1;
                    comp.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

bool is_forest(const Graph& g) {
    return g.edge_count() + connected_components(g).size() == g.vertex_count();
}

Word tree_path_word(const Graph& g, const VertexColouring& c, Vertex u, Vertex v) {
    require_covering(g, c);
    if (u >= g.vertex_count() || v >= g.vertex_count()) throw GraphError("vertex out of range");
    if (!is_forest(g)) throw GraphError("tree_path_word needs an acyclic graph");
    constexpr Vertex none = static_cast<Vertex>(-1);
    std::vector<Vertex> parent(g.vertex_count(), none);
    parent[u] = u;
    std::queue<Vertex> queue;
    queue.push(u);
    while (!queue.empty()) {
        const Vertex x = queue.front();
        queue.pop();
        for (Vertex y : g.neighbours(x)) {
            if (parent[y] == none) {
                parent[y] = x;
                queue.push(y);
            }
        }
    }
    if (parent[v] == none) {
        throw GraphError("vertices " + std::to_string(u) + " and " + std::to_string(v) + " are disconnected");
    }
    Word w;
    for (Vertex x = v;; x = parent[x]) {
        w.push_back(c.colours[x]);
        if (x == u) break;
    }
    std::reverse(w.begin(), w.end());
    return w;
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
    std::vector<Vertex> local(g.vertex_count(), static_cast<Vertex>(-1));
    for (std::size_t i = 0; i < vertices.size(); ++i) local.at(vertices[i]) = static_cast<Vertex>(i);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (const Edge& e : g.edges()) {
        if (local[e.u] != static_cast<Vertex>(-1) && local[e.v] != static_cast<Vertex>(-1)) {
            edges.emplace_back(local[e.u], local[e.v]);
        }
    }
    return Graph::from_edges(vertices.size(), edges);
}

std::pair<Graph, std::vector<Vertex>> delete_vertices(const Graph& g, std::span<const Vertex> removed) {
    std::vector<char> gone(g.vertex_count(), 0);
    for (Vertex v : removed) gone.at(v) = 1;
    std::vector<Vertex> kept;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (!gone[v]) kept.push_back(v);
    }
    Graph h = induced_subgraph(g, kept);
    return {std::move(h), std::move(kept)};
}

namespace {

class IsomorphismSearch {
  public:
    IsomorphismSearch(const Graph& a, const Graph& b)
        : a_(a), b_(b), map_(a.vertex_count(), none), used_(b.vertex_count(), 0) {
        // Connected order in a: every vertex after the first of its component
        // has an already-placed neighbour, which keeps candidate sets small.
        std::vector<char> placed(a.vertex_count(), 0);
        for (Vertex s = 0; s < a.vertex_count(); ++s) {
            if (placed[s]) continue;
            const std::size_t from = order_.size();
            order_.push_back(s);
            placed[s] = 1;
            for (std::size_t head = from; head < order_.size(); ++head) {
                for (Vertex w : a.neighbours(order_[head])) {
                    if (!placed[w]) {
                        placed[w] = 1;
                        order_.push_back(w);
                    }
                }
            }
        }
    }

    bool run() { return place(0); }

  private:
    static constexpr Vertex none = static_cast<Vertex>(-1);

    bool consistent(Vertex x, Vertex y) const {
        if (a_.degree(x) != b_.degree(y)) return false;
        for (Vertex xn : a_.neighbours(x)) {
            if (map_[xn] != none && !b_.adjacent(y, map_[xn])) return false;
        }
        std::size_t mapped_a = 0;
        std::size_t mapped_b = 0;
        for (Vertex xn : a_.neighbours(x)) mapped_a += map_[xn] != none;
        for (Vertex yn : b_.neighbours(y)) mapped_b += used_[yn];
        return mapped_a == mapped_b;
    }

    bool place(std::size_t i) {
        if (i == order_.size()) return true;
        const Vertex x = order_[i];
        // Candidates: neighbours of an already-mapped neighbour, else anything.
        Vertex anchor = none;
        for (Vertex xn : a_.neighbours(x)) {
            if (map_[xn] != none) {
                anchor = map_[xn];
                break;
            }
        }
        auto try_vertex = [&](Vertex y) {
            if (used_[y] || !consistent(x, y)) return false;
            map_[x] = y;
            used_[y] = 1;
            if (place(i + 1)) return true;
            map_[x] = none;
            used_[y] = 0;
            return false;
        };
        if (anchor != none) {
            for (Vertex y : b_.neighbours(anchor)) {
                if (try_vertex(y)) return true;
            }
        } else {
            for (Vertex y = 0; y < b_.vertex_count(); ++y) {
                if (try_vertex(y)) return true;
            }
        }
        return false;
    }

    const Graph& a_;
    const Graph& b_;
    std::vector<Vertex> order_;
    std::vector<Vertex> map_;
    std::vector<char> used_;
};

std::vector<std::size_t> degree_sequence(const Graph& g) {
    std::vector<std::size_t> d;
    for (Vertex v = 0; v < g.vertex_count(); ++v) d.push_back(g.degree(v));
    std::sort(d.begin(), d.end());
    return d;
}

}  // namespace

bool are_isomorphic(const Graph& a, const Graph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    if (degree_sequence(a) != degree_sequence(b)) return false;
    return IsomorphismSearch(a, b).run();
}

}  // namespace nonrep
