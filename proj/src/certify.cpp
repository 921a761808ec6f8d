#include "nonrep/certify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "nonrep/gadgets.hpp"

namespace nonrep {

namespace {

// Words of at most 15 symbols below 16, packed 4 bits per symbol with the
// length in the top nibble. Symbol i sits at bits 4i..4i+3.
using Packed = std::uint64_t;
constexpr unsigned max_packed_len = 15;
constexpr std::size_t max_kernel = 48;

unsigned packed_len(Packed p) { return static_cast<unsigned>(p >> 60); }
Colour packed_at(Packed p, unsigned i) { return static_cast<Colour>((p >> (4 * i)) & 0xF); }
Packed symbol_mask(unsigned len) { return (Packed{1} << (4 * len)) - 1; }

Packed pack(std::span<const Colour> w) {
    if (w.size() > max_packed_len) throw SizeGuardExceeded("path word longer than 15 symbols");
    Packed p = Packed{w.size()} << 60;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] >= 16) throw SizeGuardExceeded("colour index above 15");
        p |= Packed{w[i]} << (4 * i);
    }
    return p;
}

Word unpack(Packed p) {
    Word w(packed_len(p));
    for (unsigned i = 0; i < w.size(); ++i) w[i] = packed_at(p, i);
    return w;
}

/// c followed by w.
Packed prepend(Colour c, Packed w) {
    const unsigned len = packed_len(w);
    if (len + 1 > max_packed_len) throw SizeGuardExceeded("path word longer than 15 symbols");
    return (Packed{len + 1} << 60) | ((w & symbol_mask(len)) << 4) | c;
}

bool is_proper_prefix(Packed a, Packed b) {
    const unsigned la = packed_len(a);
    return la < packed_len(b) && ((a ^ b) & symbol_mask(la)) == 0;
}

std::vector<Packed> maximal_words(const std::vector<Packed>& words) {
    std::vector<Packed> out;
    for (Packed w : words) {
        bool extended = false;
        for (Packed x : words) {
            if (is_proper_prefix(w, x)) {
                extended = true;
                break;
            }
        }
        if (!extended) out.push_back(w);
    }
    return out;
}

/// Whether reverse(a) · middle · b[skip..] contains a square.
bool junction_has_square(Packed a, std::span<const Colour> middle, Packed b, unsigned skip) {
    std::array<Colour, 2 * max_packed_len + max_kernel> buf;
    std::size_t n = 0;
    for (unsigned i = packed_len(a); i-- > 0;) buf[n++] = packed_at(a, i);
    for (Colour c : middle) buf[n++] = c;
    for (unsigned i = skip; i < packed_len(b); ++i) buf[n++] = packed_at(b, i);
    return find_square(std::span<const Colour>(buf.data(), n)).has_value();
}

/// Sorted words of all simple paths from root.
std::vector<Packed> path_words(const Graph& g, Vertex root, std::span<const Colour> colours) {
    std::vector<Packed> out;
    std::vector<char> on_path(g.vertex_count(), 0);
    Word word;
    auto dfs = [&](auto& self, Vertex v) -> void {
        on_path[v] = 1;
        word.push_back(colours[v]);
        out.push_back(pack(word));
        for (Vertex w : g.neighbours(v)) {
            if (!on_path[w]) self(self, w);
        }
        word.pop_back();
        on_path[v] = 0;
    };
    dfs(dfs, root);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct PackedProfile {
    Colour root = 0;
    std::vector<Packed> words;
    std::vector<Packed> maximal;
    std::vector<Colour> colouring;
};

bool profile_less(const PackedProfile& a, const PackedProfile& b) {
    if (a.root != b.root) return a.root < b.root;
    return a.words < b.words;
}

/// Keeps the members whose word set contains no other member's set. Input
/// must be free of duplicates.
template <class T, class Words>
std::vector<T> antichain(std::vector<T> items, Words words_of) {
    std::stable_sort(items.begin(), items.end(), [&](const T& a, const T& b) {
        return words_of(a).size() < words_of(b).size();
    });
    std::vector<T> kept;
    for (T& item : items) {
        const auto& w = words_of(item);
        bool dominated = false;
        for (const T& k : kept) {
            const auto& kw = words_of(k);
            if (kw.size() < w.size() && std::includes(w.begin(), w.end(), kw.begin(), kw.end())) {
                dominated = true;
                break;
            }
        }
        if (!dominated) kept.push_back(std::move(item));
    }
    return kept;
}

std::vector<PackedProfile> enumerate_packed(const Graph& g, Vertex root, unsigned k, std::uint64_t max_colourings,
                                            DedupMode dedup, std::uint64_t& colourings_seen) {
    const std::size_t n = g.vertex_count();
    if (root >= n) throw GraphError("root outside the component");
    if (k == 0) return {};
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (total > max_colourings / k) throw SizeGuardExceeded("component has too many colourings to enumerate");
        total *= k;
    }
    std::vector<PackedProfile> found;
    std::vector<Colour> colours(n, 0);
    const auto& edges = g.edges();
    while (true) {
        ++colourings_seen;
        bool proper = true;
        for (const Edge& e : edges) {
            if (colours[e.u] == colours[e.v]) {
                proper = false;
                break;
            }
        }
        if (proper && is_nonrepetitive(g, VertexColouring{colours, k})) {
            PackedProfile p;
            p.root = colours[root];
            p.words = path_words(g, root, colours);
            p.colouring = colours;
            found.push_back(std::move(p));
        }
        std::size_t i = 0;
        while (i < n && ++colours[i] == k) colours[i++] = 0;
        if (i == n) break;
    }
    if (dedup != DedupMode::none) {
        std::stable_sort(found.begin(), found.end(), profile_less);
        found.erase(std::unique(found.begin(), found.end(),
                                [](const PackedProfile& a, const PackedProfile& b) {
                                    return a.root == b.root && a.words == b.words;
                                }),
                    found.end());
    }
    if (dedup == DedupMode::subsumption) {
        std::vector<PackedProfile> kept;
        for (Colour c = 0; c < k; ++c) {
            std::vector<PackedProfile> same;
            for (auto& p : found) {
                if (p.root == c) same.push_back(std::move(p));
            }
            auto reduced = antichain(std::move(same), [](const PackedProfile& p) -> const std::vector<Packed>& {
                return p.words;
            });
            std::move(reduced.begin(), reduced.end(), std::back_inserter(kept));
        }
        found = std::move(kept);
        std::stable_sort(found.begin(), found.end(), profile_less);
    }
    for (auto& p : found) p.maximal = maximal_words(p.words);
    return found;
}

BoundaryProfile to_profile(Colour root, const std::vector<Packed>& words) {
    BoundaryProfile p;
    p.root = root;
    for (Packed w : words) p.words.push_back(unpack(w));
    std::sort(p.words.begin(), p.words.end());
    return p;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::string_view to_string(DedupMode m) {
    switch (m) {
        case DedupMode::none: return "none";
        case DedupMode::exact: return "exact";
        case DedupMode::subsumption: return "subsumption";
    }
    return "?";
}

std::optional<DedupMode> parse_dedup_mode(std::string_view s) {
    if (s == "none") return DedupMode::none;
    if (s == "exact") return DedupMode::exact;
    if (s == "subsumption") return DedupMode::subsumption;
    return std::nullopt;
}

std::optional<BoundaryProfile> profile_of(const Graph& component, Vertex root, const VertexColouring& c) {
    if (root >= component.vertex_count()) throw GraphError("root outside the component");
    if (c.colours.size() != component.vertex_count()) throw GraphError("colouring length does not match the graph");
    if (!is_nonrepetitive(component, c)) return std::nullopt;
    return to_profile(c.colours[root], path_words(component, root, c.colours));
}

std::vector<RealisedProfile> enumerate_realised_profiles(const Graph& component, Vertex root, unsigned k,
                                                         const EnumerateOptions& opts) {
    std::uint64_t seen = 0;
    auto packed = enumerate_packed(component, root, k, opts.max_colourings, opts.dedup, seen);
    std::vector<RealisedProfile> out;
    out.reserve(packed.size());
    for (auto& p : packed) {
        out.push_back({to_profile(p.root, p.words), VertexColouring{std::move(p.colouring), k}});
    }
    return out;
}

std::vector<BoundaryProfile> enumerate_profiles(const Graph& component, Vertex root, unsigned k,
                                                const EnumerateOptions& opts) {
    EnumerateOptions exact = opts;
    exact.dedup = DedupMode::exact;
    std::vector<BoundaryProfile> out;
    for (auto& rp : enumerate_realised_profiles(component, root, k, exact)) out.push_back(std::move(rp.profile));
    return out;
}

std::optional<BoundaryProfile> compose_star(Colour centre, std::span<const BoundaryProfile> children) {
    std::vector<std::vector<Packed>> maximal;
    std::vector<Packed> composed{pack(std::span<const Colour>(&centre, 1))};
    const Packed centre_word = composed.front();
    for (const auto& child : children) {
        std::vector<Packed> words;
        for (const Word& w : child.words) {
            if (w.empty() || w.front() != child.root || !is_square_free(w)) return std::nullopt;
            words.push_back(pack(w));
        }
        std::sort(words.begin(), words.end());
        words.erase(std::unique(words.begin(), words.end()), words.end());
        auto max_words = maximal_words(words);
        for (Packed v : max_words) {
            if (junction_has_square(centre_word, {}, v, 0)) return std::nullopt;
        }
        for (const auto& earlier : maximal) {
            for (Packed u : earlier) {
                for (Packed v : max_words) {
                    if (junction_has_square(u, std::span<const Colour>(&centre, 1), v, 0)) return std::nullopt;
                }
            }
        }
        maximal.push_back(std::move(max_words));
        for (Packed w : words) composed.push_back(prepend(centre, w));
    }
    std::sort(composed.begin(), composed.end());
    composed.erase(std::unique(composed.begin(), composed.end()), composed.end());
    return to_profile(centre, composed);
}

// ---------------------------------------------------------------------------
// Hierarchies

void validate(const Hierarchy& h) {
    const Graph& g = h.graph;
    const std::size_t n = g.vertex_count();
    if (h.kernel.empty()) throw GraphError("hierarchy has an empty kernel");
    if (h.kernel.size() > max_kernel) throw GraphError("hierarchy kernel is too large");
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    // owner: kernel vertices -> none - 1, slot vertices -> slot index.
    std::vector<std::size_t> owner(n, none);
    constexpr std::size_t kernel_owner = none - 1;
    for (Vertex v : h.kernel) {
        if (v >= n || owner[v] != none) throw GraphError("kernel vertex out of range or repeated");
        owner[v] = kernel_owner;
    }
    std::size_t expected_edges = induced_subgraph(g, h.kernel).edge_count();
    for (std::size_t s = 0; s < h.slots.size(); ++s) {
        const BranchSlot& slot = h.slots[s];
        if (slot.shape >= h.shapes.size()) throw GraphError("slot names an unknown shape");
        const BranchShape& shape = h.shapes[slot.shape];
        if (slot.hook >= n || owner[slot.hook] != kernel_owner) throw GraphError("slot hook is not a kernel vertex");
        if (slot.vertices.size() != shape.component.vertex_count() || shape.root >= slot.vertices.size()) {
            throw GraphError("slot does not match its shape");
        }
        for (std::size_t i = 0; i < slot.vertices.size(); ++i) {
            const Vertex v = slot.vertices[i];
            if (shape.root_is_hook && i == shape.root) {
                if (v != slot.hook) throw GraphError("slot root must be its hook");
                continue;
            }
            if (v >= n || owner[v] != none) throw GraphError("slot vertex out of range or shared");
            owner[v] = s;
        }
        for (const Edge& e : shape.component.edges()) {
            if (!g.adjacent(slot.vertices[e.u], slot.vertices[e.v])) throw GraphError("shape edge missing from graph");
        }
        expected_edges += shape.component.edge_count();
        if (!shape.root_is_hook) {
            if (!g.adjacent(slot.hook, slot.vertices[shape.root])) throw GraphError("slot root is not joined to its hook");
            ++expected_edges;
        }
    }
    for (Vertex v = 0; v < n; ++v) {
        if (owner[v] == none) throw GraphError("vertex belongs to neither kernel nor a slot");
    }
    if (expected_edges != g.edge_count()) throw GraphError("graph has edges outside the declared structure");

    std::vector<std::size_t> position(n, none);
    for (std::size_t i = 0; i < h.kernel.size(); ++i) position[h.kernel[i]] = i;
    auto slot_shapes = [&](Vertex hook) {
        std::vector<std::size_t> out;
        for (const auto& slot : h.slots) {
            if (slot.hook == hook) out.push_back(slot.shape);
        }
        return out;
    };
    std::vector<char> grouped(n, 0);
    for (const auto& group : h.interchangeable) {
        if (group.empty()) continue;
        for (std::size_t i = 0; i < group.size(); ++i) {
            const Vertex v = group[i];
            if (v >= n || position[v] == none) throw GraphError("group member is not a kernel vertex");
            if (grouped[v]) throw GraphError("kernel vertex in two groups");
            grouped[v] = 1;
            if (i > 0 && position[v] != position[group[i - 1]] + 1) {
                throw GraphError("group is not a contiguous run of the kernel order");
            }
        }
        const auto shapes0 = slot_shapes(group[0]);
        const bool joined = group.size() > 1 && g.adjacent(group[0], group[1]);
        for (Vertex v : group) {
            if (slot_shapes(v) != shapes0) throw GraphError("group members carry different branches");
            for (Vertex w : group) {
                if (v != w && g.adjacent(v, w) != joined) throw GraphError("group members are not uniformly joined");
            }
            for (Vertex x : h.kernel) {
                if (std::find(group.begin(), group.end(), x) != group.end()) continue;
                if (g.adjacent(v, x) != g.adjacent(group[0], x)) {
                    throw GraphError("group members have different kernel neighbourhoods");
                }
            }
        }
    }
}

namespace {

BranchShape fan_shape() { return BranchShape{fan(4).graph, 4, false}; }

std::vector<Vertex> fan_vertices(Vertex first) {
    std::vector<Vertex> out(5);
    std::iota(out.begin(), out.end(), first);
    return out;
}

}  // namespace

Hierarchy theorem2_hierarchy() {
    Hierarchy h;
    h.name = "theorem2";
    h.graph = theorem2_graph().graph;
    h.kernel = {25};
    h.shapes = {fan_shape()};
    for (Vertex f = 0; f < 5; ++f) h.slots.push_back({25, 0, fan_vertices(5 * f)});
    return h;
}

Hierarchy theorem3_hierarchy() {
    Hierarchy h;
    h.name = "theorem3";
    const Gadget gadget = theorem3_graph();
    h.graph = gadget.graph;
    const Vertex r = gadget.role("r");
    const Vertex s = gadget.role("s");
    h.kernel = {r, s};
    std::vector<Vertex> centres;
    for (int d = 0; d < 7; ++d) centres.push_back(gadget.role("centre" + std::to_string(d)));
    h.kernel.insert(h.kernel.end(), centres.begin(), centres.end());
    h.shapes = {fan_shape()};
    for (Vertex f = 0; f < 35; ++f) h.slots.push_back({centres[f / 5], 0, fan_vertices(5 * f)});
    h.interchangeable = {centres};
    return h;
}

Hierarchy theorem3_double_fan_hierarchy() {
    Hierarchy h;
    h.name = "theorem3-double-fan";
    const Gadget gadget = theorem3_double_fan_graph();
    h.graph = gadget.graph;
    h.kernel = {gadget.role("r"), gadget.role("s")};
    std::vector<Vertex> centres;
    for (int d = 0; d < 7; ++d) centres.push_back(gadget.role("centre" + std::to_string(d)));
    h.kernel.insert(h.kernel.end(), centres.begin(), centres.end());
    // Diamond: F_4 on 0..4 plus the centre 5 joined to all of them.
    const Graph f4 = fan(4).graph;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (const Edge& e : f4.edges()) edges.emplace_back(e.u, e.v);
    for (Vertex v = 0; v < 5; ++v) edges.emplace_back(v, 5);
    h.shapes = {BranchShape{build_graph(6, edges), 5, true}};
    for (Vertex d = 0; d < 7; ++d) {
        auto vertices = fan_vertices(5 * d);
        vertices.push_back(centres[d]);
        h.slots.push_back({centres[d], 0, std::move(vertices)});
    }
    h.interchangeable = {centres};
    return h;
}

namespace {

/// A branch profile seen from its hook: every word starts with the hook colour.
struct Candidate {
    std::vector<Packed> maximal;
    const std::vector<Colour>* colouring = nullptr;
};

class HierarchySearch {
  public:
    HierarchySearch(const Hierarchy& h, unsigned k, const CertifyOptions& opts, CertificateCounts& counts)
        : h_(h), k_(k), opts_(opts), counts_(counts) {
        const std::size_t kn = h.kernel.size();
        kernel_graph_ = induced_subgraph(h.graph, h.kernel);
        local_.assign(h.graph.vertex_count(), static_cast<std::size_t>(-1));
        for (std::size_t i = 0; i < kn; ++i) local_[h.kernel[i]] = i;
        group_of_.assign(kn, static_cast<std::size_t>(-1));
        for (std::size_t g = 0; g < h.interchangeable.size(); ++g) {
            for (Vertex v : h.interchangeable[g]) group_of_[local_[v]] = g;
        }
        kernel_paths_.assign(kn * kn, {});
        for (std::size_t a = 0; a < kn; ++a) collect_paths(a);
        slots_at_.assign(kn, {});
        for (std::size_t s = 0; s < h.slots.size(); ++s) slots_at_[local_[h.slots[s].hook]].push_back(s);
        build_pools();
    }

    std::optional<VertexColouring> run() {
        kernel_colours_.assign(h_.kernel.size(), 0);
        if (enumerate_kernel(0, 0)) return witness_;
        return std::nullopt;
    }

  private:
    void collect_paths(std::size_t a) {
        std::vector<std::size_t> path{a};
        std::vector<char> on(h_.kernel.size(), 0);
        on[a] = 1;
        auto dfs = [&](auto& self, std::size_t v) -> void {
            for (Vertex w : kernel_graph_.neighbours(static_cast<Vertex>(v))) {
                if (on[w]) continue;
                on[w] = 1;
                path.push_back(w);
                kernel_paths_[a * h_.kernel.size() + w].emplace_back(path.begin() + 1, path.end() - 1);
                self(self, w);
                path.pop_back();
                on[w] = 0;
            }
        };
        dfs(dfs, a);
    }

    void build_pools() {
        // base_[shape][hook colour] = candidates, ids unique across pools.
        base_.assign(h_.shapes.size(), std::vector<std::vector<Candidate>>(k_));
        profiles_.resize(h_.shapes.size());
        for (std::size_t s = 0; s < h_.shapes.size(); ++s) {
            const BranchShape& shape = h_.shapes[s];
            profiles_[s] = enumerate_packed(shape.component, shape.root, k_, opts_.max_colourings, opts_.dedup,
                                            counts_.component_colourings);
            counts_.profiles += profiles_[s].size();
            for (Colour hc = 0; hc < k_; ++hc) {
                for (const PackedProfile& p : profiles_[s]) {
                    std::vector<Packed> words;
                    if (shape.root_is_hook) {
                        if (p.root != hc) continue;
                        words = p.words;
                    } else {
                        if (p.root == hc) continue;
                        words.push_back(pack(std::span<const Colour>(&hc, 1)));
                        for (Packed w : p.words) words.push_back(prepend(hc, w));
                        std::sort(words.begin(), words.end());
                    }
                    auto maximal = maximal_words(words);
                    bool ok = true;
                    for (Packed w : maximal) {
                        if (find_square(unpack(w)).has_value()) {
                            ok = false;
                            break;
                        }
                    }
                    if (!ok) continue;
                    base_[s][hc].push_back(Candidate{std::move(maximal), &p.colouring});
                }
            }
        }
        pool_offset_.assign(h_.shapes.size() * k_, 0);
        std::uint64_t next = 0;
        for (std::size_t s = 0; s < h_.shapes.size(); ++s) {
            for (unsigned c = 0; c < k_; ++c) {
                pool_offset_[s * k_ + c] = next;
                next += base_[s][c].size();
            }
        }
    }

    bool kernel_valid() {
        VertexColouring c{kernel_colours_, k_};
        return is_nonrepetitive(kernel_graph_, c);
    }

    bool enumerate_kernel(std::size_t i, unsigned used) {
        const std::size_t kn = h_.kernel.size();
        if (i == kn) {
            if (!kernel_valid()) return false;
            ++counts_.kernel_colourings;
            return search_branches();
        }
        Colour lo = 0;
        if (i > 0 && group_of_[i] != static_cast<std::size_t>(-1) && group_of_[i - 1] == group_of_[i]) {
            lo = kernel_colours_[i - 1];
        }
        const unsigned hi = std::min(k_, used + 1);
        for (unsigned c = lo; c < hi; ++c) {
            bool clash = false;
            for (Vertex w : kernel_graph_.neighbours(static_cast<Vertex>(i))) {
                if (w < i && kernel_colours_[w] == c) clash = true;
            }
            if (clash) continue;
            kernel_colours_[i] = static_cast<Colour>(c);
            if (enumerate_kernel(i + 1, std::max(used, c + 1))) return true;
        }
        return false;
    }

    const std::vector<std::vector<Colour>>& interiors(std::size_t a, std::size_t b) {
        return interior_words_[a * h_.kernel.size() + b];
    }

    bool search_branches() {
        const std::size_t kn = h_.kernel.size();
        interior_words_.assign(kn * kn, {});
        for (std::size_t a = 0; a < kn; ++a) {
            for (std::size_t b = 0; b < kn; ++b) {
                for (const auto& p : kernel_paths_[a * kn + b]) {
                    std::vector<Colour> w;
                    for (std::size_t v : p) w.push_back(kernel_colours_[v]);
                    interior_words_[a * kn + b].push_back(std::move(w));
                }
            }
        }
        // Candidates per hook after the check against every kernel path.
        filtered_.assign(kn, std::vector<std::vector<std::size_t>>(h_.shapes.size()));
        for (std::size_t x = 0; x < kn; ++x) {
            if (slots_at_[x].empty()) continue;
            const Colour hc = kernel_colours_[x];
            for (std::size_t s = 0; s < h_.shapes.size(); ++s) {
                const auto& pool = base_[s][hc];
                for (std::size_t i = 0; i < pool.size(); ++i) {
                    if (fits_kernel(x, pool[i])) filtered_[x][s].push_back(i);
                }
            }
        }
        // Hooks in decreasing colour-class size, so that equal colours meet early.
        std::vector<std::size_t> class_size(k_, 0);
        for (Colour c : kernel_colours_) ++class_size[c];
        std::vector<std::size_t> hooks;
        for (std::size_t x = 0; x < kn; ++x) {
            if (!slots_at_[x].empty()) hooks.push_back(x);
        }
        std::stable_sort(hooks.begin(), hooks.end(), [&](std::size_t a, std::size_t b) {
            const Colour ca = kernel_colours_[a];
            const Colour cb = kernel_colours_[b];
            if (class_size[ca] != class_size[cb]) return class_size[ca] > class_size[cb];
            return ca < cb;
        });
        order_.clear();
        rank_.clear();
        for (std::size_t x : hooks) {
            for (std::size_t r = 0; r < slots_at_[x].size(); ++r) {
                order_.push_back(slots_at_[x][r]);
                rank_.push_back(r);
            }
        }
        // Symmetry links: same shape earlier at the same hook; the previous
        // equally coloured member of the hook's group.
        const std::size_t depth_count = order_.size();
        prev_same_.assign(depth_count, static_cast<std::size_t>(-1));
        lex_prev_hook_.assign(kn, static_cast<std::size_t>(-1));
        for (std::size_t d = 0; d < depth_count; ++d) {
            for (std::size_t e = d; e-- > 0;) {
                const auto& a = h_.slots[order_[d]];
                const auto& b = h_.slots[order_[e]];
                if (a.hook == b.hook && a.shape == b.shape) {
                    prev_same_[d] = e;
                    break;
                }
            }
        }
        for (std::size_t x = 0; x < kn; ++x) {
            if (group_of_[x] == static_cast<std::size_t>(-1) || slots_at_[x].empty()) continue;
            for (std::size_t y = x; y-- > 0;) {
                if (group_of_[y] == group_of_[x] && kernel_colours_[y] == kernel_colours_[x]) {
                    lex_prev_hook_[x] = y;
                    break;
                }
            }
        }
        chosen_.assign(h_.slots.size(), 0);
        pair_cache_.clear();
        return place(0);
    }

    bool fits_kernel(std::size_t x, const Candidate& cand) {
        const std::size_t kn = h_.kernel.size();
        for (std::size_t y = 0; y < kn; ++y) {
            if (y == x) continue;
            const Colour end = kernel_colours_[y];
            const Packed tail = pack(std::span<const Colour>(&end, 1));
            for (const auto& mid : interiors(x, y)) {
                for (Packed u : cand.maximal) {
                    if (junction_has_square(u, mid, tail, 0)) return false;
                }
            }
        }
        return true;
    }

    bool compatible(std::size_t slot_a, std::size_t cand_a, std::size_t slot_b, std::size_t cand_b) {
        const BranchSlot& sa = h_.slots[slot_a];
        const BranchSlot& sb = h_.slots[slot_b];
        const std::size_t x = local_[sa.hook];
        const std::size_t y = local_[sb.hook];
        const Colour cx = kernel_colours_[x];
        const Colour cy = kernel_colours_[y];
        const std::uint64_t ida = pool_offset_[sa.shape * k_ + cx] + cand_a;
        const std::uint64_t idb = pool_offset_[sb.shape * k_ + cy] + cand_b;
        const std::uint64_t key = (((ida << 24) | idb) << 16) | (x << 8) | y;
        if (auto it = pair_cache_.find(key); it != pair_cache_.end()) return it->second;
        const Candidate& a = base_[sa.shape][cx][cand_a];
        const Candidate& b = base_[sb.shape][cy][cand_b];
        bool ok = true;
        if (x == y) {
            for (Packed u : a.maximal) {
                for (Packed v : b.maximal) {
                    if (junction_has_square(u, {}, v, 1)) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) break;
            }
        } else {
            for (const auto& mid : interiors(x, y)) {
                for (Packed u : a.maximal) {
                    for (Packed v : b.maximal) {
                        if (junction_has_square(u, mid, v, 0)) {
                            ok = false;
                            break;
                        }
                    }
                    if (!ok) break;
                }
                if (!ok) break;
            }
        }
        if (pair_cache_.size() > 20'000'000) pair_cache_.clear();
        pair_cache_.emplace(key, ok);
        return ok;
    }

    /// Candidate chosen for the slot of rank r at kernel vertex x.
    std::size_t chosen_at(std::size_t x, std::size_t r) const { return chosen_[slots_at_[x][r]]; }

    bool place(std::size_t depth) {
        if (depth == order_.size()) {
            build_witness();
            return true;
        }
        const std::size_t slot = order_[depth];
        const BranchSlot& bs = h_.slots[slot];
        const std::size_t x = local_[bs.hook];
        std::size_t lo = 0;
        if (prev_same_[depth] != static_cast<std::size_t>(-1)) lo = chosen_[order_[prev_same_[depth]]];
        if (const std::size_t p = lex_prev_hook_[x]; p != static_cast<std::size_t>(-1)) {
            const std::size_t r = rank_[depth];
            bool tied = true;
            for (std::size_t q = 0; q < r && tied; ++q) tied = chosen_at(x, q) == chosen_at(p, q);
            if (tied) lo = std::max(lo, chosen_at(p, r));
        }
        const auto& cands = filtered_[x][bs.shape];
        for (auto it = std::lower_bound(cands.begin(), cands.end(), lo); it != cands.end(); ++it) {
            if (opts_.node_budget && counts_.search_nodes >= *opts_.node_budget) {
                throw BudgetExhausted("hierarchy search node budget exhausted");
            }
            ++counts_.search_nodes;
            bool ok = true;
            for (std::size_t e = 0; e < depth && ok; ++e) ok = compatible(slot, *it, order_[e], chosen_[order_[e]]);
            if (!ok) continue;
            chosen_[slot] = *it;
            if (place(depth + 1)) return true;
        }
        return false;
    }

    void build_witness() {
        std::vector<Colour> colours(h_.graph.vertex_count(), 0);
        for (std::size_t i = 0; i < h_.kernel.size(); ++i) colours[h_.kernel[i]] = kernel_colours_[i];
        for (std::size_t s = 0; s < h_.slots.size(); ++s) {
            const BranchSlot& slot = h_.slots[s];
            const Colour hc = kernel_colours_[local_[slot.hook]];
            const auto& cols = *base_[slot.shape][hc][chosen_[s]].colouring;
            for (std::size_t i = 0; i < slot.vertices.size(); ++i) colours[slot.vertices[i]] = cols[i];
        }
        witness_ = VertexColouring{std::move(colours), k_};
    }

    const Hierarchy& h_;
    unsigned k_;
    const CertifyOptions& opts_;
    CertificateCounts& counts_;
    Graph kernel_graph_;
    std::vector<std::size_t> local_;
    std::vector<std::size_t> group_of_;
    std::vector<std::vector<std::vector<std::size_t>>> kernel_paths_;
    std::vector<std::vector<std::size_t>> slots_at_;
    std::vector<std::vector<PackedProfile>> profiles_;
    std::vector<std::vector<std::vector<Candidate>>> base_;
    std::vector<std::uint64_t> pool_offset_;

    std::vector<Colour> kernel_colours_;
    std::vector<std::vector<std::vector<Colour>>> interior_words_;
    std::vector<std::vector<std::vector<std::size_t>>> filtered_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> rank_;
    std::vector<std::size_t> prev_same_;
    std::vector<std::size_t> lex_prev_hook_;
    std::vector<std::size_t> chosen_;
    std::unordered_map<std::uint64_t, bool> pair_cache_;
    std::optional<VertexColouring> witness_;
};

}  // namespace

HierarchyOutcome solve_hierarchy(const Hierarchy& h, unsigned k, const CertifyOptions& opts) {
    if (k == 0) throw std::invalid_argument("k must be at least 1");
    if (k > 16) throw std::invalid_argument("k must be at most 16");
    validate(h);
    HierarchyOutcome out;
    try {
        HierarchySearch search(h, k, opts, out.counts);
        out.colouring = search.run();
    } catch (const SizeGuardExceeded& e) {
        out.note = e.what();
        return out;
    } catch (const BudgetExhausted& e) {
        out.note = e.what();
        return out;
    }
    if (out.colouring) {
        if (!is_nonrepetitive(h.graph, *out.colouring)) {
            throw InternalError("hierarchy search produced a repetitive colouring");
        }
        out.verdict = Verdict::sat;
    } else {
        out.verdict = Verdict::unsat;
    }
    return out;
}

std::string_view to_string(CertifyTarget t) {
    switch (t) {
        case CertifyTarget::theorem2: return "theorem2";
        case CertifyTarget::theorem3: return "theorem3";
        case CertifyTarget::theorem3_double_fan: return "theorem3-double-fan";
    }
    return "?";
}

std::optional<CertifyTarget> parse_certify_target(std::string_view s) {
    if (s == "theorem2") return CertifyTarget::theorem2;
    if (s == "theorem3") return CertifyTarget::theorem3;
    if (s == "theorem3-double-fan") return CertifyTarget::theorem3_double_fan;
    return std::nullopt;
}

namespace {

/// Partial star around r: the words of every path that starts at r.
struct StarState {
    std::vector<Packed> words;
    std::vector<Packed> maximal;
    std::size_t parent = 0;
    std::size_t child = 0;
};

/// Fan profiles composed one child at a time around r (colour 0), keeping the
/// reduced set of partial-star word sets at each level.
Verdict compose_theorem2(unsigned k, const CertifyOptions& opts, CertificateCounts& counts,
                         std::optional<VertexColouring>& witness) {
    const Gadget g = theorem2_graph();
    const Gadget f4 = fan(4);
    const Vertex rivet = f4.role("rivet");
    const auto children =
        enumerate_packed(f4.graph, rivet, k, opts.max_colourings, opts.dedup, counts.component_colourings);
    counts.profiles = children.size();

    constexpr Colour centre = 0;
    std::vector<std::vector<StarState>> levels(1);
    {
        StarState root;
        root.words = {pack(std::span<const Colour>(&centre, 1))};
        root.maximal = root.words;
        levels[0].push_back(std::move(root));
    }
    counts.states_per_level.push_back(1);
    for (int level = 1; level <= 5; ++level) {
        std::vector<StarState> next;
        std::unordered_set<std::string> seen;
        const auto& prev = levels.back();
        for (std::size_t si = 0; si < prev.size(); ++si) {
            const StarState& st = prev[si];
            const std::size_t first = opts.dedup == DedupMode::none && level > 1 ? st.child : 0;
            for (std::size_t ci = first; ci < children.size(); ++ci) {
                const PackedProfile& child = children[ci];
                if (child.root == centre) continue;
                ++counts.compositions_checked;
                bool ok = true;
                for (Packed x : st.maximal) {
                    for (Packed v : child.maximal) {
                        if (junction_has_square(x, {}, v, 0)) {
                            ok = false;
                            break;
                        }
                    }
                    if (!ok) break;
                }
                if (!ok) continue;
                StarState s;
                s.words = st.words;
                for (Packed w : child.words) s.words.push_back(prepend(centre, w));
                std::sort(s.words.begin(), s.words.end());
                s.words.erase(std::unique(s.words.begin(), s.words.end()), s.words.end());
                if (opts.dedup != DedupMode::none) {
                    std::string key(reinterpret_cast<const char*>(s.words.data()), s.words.size() * sizeof(Packed));
                    if (!seen.insert(std::move(key)).second) continue;
                }
                s.parent = si;
                s.child = ci;
                next.push_back(std::move(s));
                if (next.size() > opts.max_states) {
                    throw SizeGuardExceeded("partial-star states exceed the configured limit");
                }
                // One complete star is enough for the witness.
                if (level == 5) break;
            }
            if (level == 5 && !next.empty()) break;
        }
        if (opts.dedup == DedupMode::subsumption) {
            next = antichain(std::move(next), [](const StarState& s) -> const std::vector<Packed>& { return s.words; });
        }
        for (auto& s : next) s.maximal = maximal_words(s.words);
        counts.states_per_level.push_back(next.size());
        levels.push_back(std::move(next));
        if (levels.back().empty()) return Verdict::unsat;
    }
    // Walk one surviving state back to the root of the composition.
    std::vector<Colour> colours(g.graph.vertex_count(), 0);
    colours[g.role("r")] = centre;
    std::size_t idx = 0;
    for (int level = 5; level >= 1; --level) {
        const StarState& s = levels[level][idx];
        const auto& cols = children[s.child].colouring;
        for (Vertex i = 0; i < 5; ++i) colours[5 * (level - 1) + i] = cols[i];
        idx = s.parent;
    }
    witness = VertexColouring{std::move(colours), k};
    return Verdict::sat;
}

std::string agreement(Verdict mine, Verdict theirs) {
    std::string out = mine == theirs ? "agree: " : "DISAGREE: ";
    out += to_string(theirs);
    return out;
}

}  // namespace

Certificate certify(CertifyTarget target, unsigned k, const CertifyOptions& opts) {
    if (k == 0) throw std::invalid_argument("k must be at least 1");
    if (k > 16) throw std::invalid_argument("k must be at most 16");
    const auto t0 = std::chrono::steady_clock::now();
    Certificate cert;
    cert.graph_id = std::string(to_string(target));
    cert.k = k;
    cert.dedup = opts.dedup;

    const Graph graph = target == CertifyTarget::theorem2   ? theorem2_graph().graph
                        : target == CertifyTarget::theorem3 ? theorem3_graph().graph
                                                            : theorem3_double_fan_graph().graph;
    if (target == CertifyTarget::theorem2) {
        cert.method = "profile composition";
        try {
            cert.verdict = compose_theorem2(k, opts, cert.counts, cert.witness);
        } catch (const SizeGuardExceeded& e) {
            cert.verdict = Verdict::indeterminate;
            cert.note = e.what();
        }
        if (cert.witness && !is_nonrepetitive(graph, *cert.witness)) {
            throw InternalError("composed theorem2 witness is repetitive");
        }
        if (opts.cross_check) {
            const auto other = solve_hierarchy(theorem2_hierarchy(), k, opts);
            cert.cross_checks["hierarchy_search"] = agreement(cert.verdict, other.verdict);
            SolveOptions so;
            so.node_budget = opts.node_budget;
            const auto flat = solve(graph, k, so);
            cert.cross_checks["flat_solver"] = agreement(cert.verdict, flat.verdict);
        }
    } else {
        cert.method = "hierarchy search";
        const Hierarchy h = target == CertifyTarget::theorem3 ? theorem3_hierarchy() : theorem3_double_fan_hierarchy();
        auto out = solve_hierarchy(h, k, opts);
        cert.verdict = out.verdict;
        cert.counts = std::move(out.counts);
        cert.witness = std::move(out.colouring);
        cert.note = std::move(out.note);
    }
    if (cert.witness) {
        cert.cross_checks["witness_verified"] = is_nonrepetitive(graph, *cert.witness) ? "passed" : "FAILED";
    }
    cert.elapsed_seconds = seconds_since(t0);
    return cert;
}

}  // namespace nonrep
