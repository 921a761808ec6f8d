#include "nonrep/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

namespace nonrep {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::sat: return "SAT";
        case Verdict::unsat: return "UNSAT";
        case Verdict::indeterminate: return "INDETERMINATE";
    }
    return "?";
}

std::vector<Vertex> vertex_order(const Graph& g, VertexOrder order) {
    const std::size_t n = g.vertex_count();
    std::vector<Vertex> out;
    out.reserve(n);
    if (order == VertexOrder::natural) {
        for (Vertex v = 0; v < n; ++v) out.push_back(v);
        return out;
    }
    if (order == VertexOrder::breadth_first) {
        std::vector<char> seen(n, 0);
        for (Vertex s = 0; s < n; ++s) {
            if (seen[s]) continue;
            seen[s] = 1;
            const std::size_t from = out.size();
            out.push_back(s);
            for (std::size_t head = from; head < out.size(); ++head) {
                for (Vertex w : g.neighbours(out[head])) {
                    if (!seen[w]) {
                        seen[w] = 1;
                        out.push_back(w);
                    }
                }
            }
        }
        return out;
    }
    std::vector<char> placed(n, 0);
    std::vector<char> frontier(n, 0);
    auto better = [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b) || (g.degree(a) == g.degree(b) && a < b); };
    while (out.size() < n) {
        Vertex pick = static_cast<Vertex>(-1);
        for (Vertex v = 0; v < n; ++v) {
            if (placed[v] || !frontier[v]) continue;
            if (pick == static_cast<Vertex>(-1) || better(v, pick)) pick = v;
        }
        if (pick == static_cast<Vertex>(-1)) {
            // New component.
            for (Vertex v = 0; v < n; ++v) {
                if (placed[v]) continue;
                if (pick == static_cast<Vertex>(-1) || better(v, pick)) pick = v;
            }
        }
        placed[pick] = 1;
        out.push_back(pick);
        for (Vertex w : g.neighbours(pick)) frontier[w] = 1;
    }
    return out;
}

namespace {

constexpr Colour uncoloured = 0xFF;

struct SharedState {
    std::optional<std::uint64_t> budget;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<std::uint64_t> prunes{0};
    std::atomic<bool> out_of_budget{false};
};

/// Depth-first colouring search over a fixed vertex order.
class Search {
  public:
    Search(const Graph& g, unsigned k, const std::vector<Vertex>& order, SharedState& shared)
        : g_(g), k_(k), order_(order), shared_(shared), colours_(g.vertex_count(), uncoloured),
          on_path_(g.vertex_count(), 0), buffer_(2 * g.vertex_count() + 1) {}

    /// Resets to the given prefix assignment (colours of order_[0..prefix.size())).
    void load(const std::vector<Colour>& prefix) {
        std::fill(colours_.begin(), colours_.end(), uncoloured);
        used_ = 0;
        for (std::size_t i = 0; i < prefix.size(); ++i) {
            colours_[order_[i]] = prefix[i];
            used_ = std::max<unsigned>(used_, prefix[i] + 1u);
        }
    }

    /// Finds the first completion in DFS order. `stop` lets a caller abandon
    /// the subtree early; returns false then.
    bool complete(std::size_t depth, const std::atomic<bool>* stop = nullptr) {
        if (depth == order_.size()) return true;
        if (stop && stop->load(std::memory_order_relaxed)) return false;
        const Vertex v = order_[depth];
        const unsigned limit = std::min(used_ + 1, k_);
        for (unsigned c = 0; c < limit; ++c) {
            if (!count_node()) return false;
            colours_[v] = static_cast<Colour>(c);
            if (creates_square(v)) {
                shared_.prunes.fetch_add(1, std::memory_order_relaxed);
                continue;
            }
            const unsigned saved = used_;
            used_ = std::max(used_, c + 1);
            if (complete(depth + 1, stop)) return true;
            used_ = saved;
            if (shared_.out_of_budget.load(std::memory_order_relaxed)) break;
        }
        colours_[v] = uncoloured;
        return false;
    }

    /// Enumerates legal prefixes of the given length in DFS order.
    void prefixes(std::size_t depth, std::size_t target, std::vector<Colour>& current,
                  std::vector<std::vector<Colour>>& out) {
        if (depth == target || depth == order_.size()) {
            out.push_back(current);
            return;
        }
        const Vertex v = order_[depth];
        const unsigned limit = std::min(used_ + 1, k_);
        for (unsigned c = 0; c < limit; ++c) {
            if (!count_node()) return;
            colours_[v] = static_cast<Colour>(c);
            if (creates_square(v)) {
                shared_.prunes.fetch_add(1, std::memory_order_relaxed);
                continue;
            }
            const unsigned saved = used_;
            used_ = std::max(used_, c + 1);
            current.push_back(static_cast<Colour>(c));
            prefixes(depth + 1, target, current, out);
            current.pop_back();
            used_ = saved;
        }
        colours_[v] = uncoloured;
    }

    const std::vector<Colour>& colours() const { return colours_; }

  private:
    bool count_node() {
        const std::uint64_t n = shared_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
        if (shared_.budget && n > *shared_.budget) {
            shared_.out_of_budget.store(true, std::memory_order_relaxed);
            return false;
        }
        return true;
    }

    // Every simple path through v inside the coloured subgraph is split into a
    // left arm and a right arm around v. The colour word lives in buffer_ with
    // v at index centre_, so the current path word is one contiguous span.
    bool creates_square(Vertex v) {
        const Colour cv = colours_[v];
        for (Vertex w : g_.neighbours(v)) {
            if (colours_[w] == cv) return true;
        }
        checked_ = v;
        centre_ = g_.vertex_count();
        buffer_[centre_] = cv;
        on_path_[v] = 1;
        const bool found = left_arm(v, 0);
        on_path_[v] = 0;
        return found;
    }

    bool left_arm(Vertex tip, std::size_t left_len) {
        if (right_arm(checked_, centre_ - left_len, centre_ + 1)) return true;
        for (Vertex w : g_.neighbours(tip)) {
            if (on_path_[w] || colours_[w] == uncoloured) continue;
            on_path_[w] = 1;
            buffer_[centre_ - left_len - 1] = colours_[w];
            const bool found = left_arm(w, left_len + 1);
            on_path_[w] = 0;
            if (found) return true;
        }
        return false;
    }

    bool right_arm(Vertex tip, std::size_t begin, std::size_t end) {
        // Length-2 squares through v were ruled out by the neighbour scan.
        if (end - begin >= 4 && is_square(std::span<const Colour>(buffer_.data() + begin, end - begin))) return true;
        for (Vertex w : g_.neighbours(tip)) {
            if (on_path_[w] || colours_[w] == uncoloured) continue;
            on_path_[w] = 1;
            buffer_[end] = colours_[w];
            const bool found = right_arm(w, begin, end + 1);
            on_path_[w] = 0;
            if (found) return true;
        }
        return false;
    }

    const Graph& g_;
    unsigned k_;
    const std::vector<Vertex>& order_;
    SharedState& shared_;
    std::vector<Colour> colours_;
    std::vector<char> on_path_;
    std::vector<Colour> buffer_;
    std::size_t centre_ = 0;
    Vertex checked_ = 0;
    unsigned used_ = 0;
};

}  // namespace

SolveResult solve(const Graph& g, unsigned k, const SolveOptions& opts) {
    if (k == 0) throw std::invalid_argument("solve needs at least one colour");
    if (k > uncoloured) throw std::invalid_argument("too many colours");
    const auto started = std::chrono::steady_clock::now();
    SolveResult result;
    SharedState shared;
    shared.budget = opts.node_budget;
    const std::vector<Vertex> order = vertex_order(g, opts.order);

    std::optional<std::vector<Colour>> found;
    unsigned jobs = opts.jobs != 0 ? opts.jobs : std::max(1u, std::thread::hardware_concurrency());
    if (!opts.parallel || jobs <= 1 || g.vertex_count() < 8) {
        Search search(g, k, order, shared);
        search.load({});
        if (search.complete(0)) found = search.colours();
    } else {
        // Split the tree into prefixes in DFS order. The answer is the first
        // completion of the lowest-indexed prefix that has one, which is the
        // completion the sequential search would return.
        std::vector<std::vector<Colour>> prefixes;
        std::size_t depth = 1;
        {
            Search splitter(g, k, order, shared);
            while (true) {
                prefixes.clear();
                splitter.load({});
                std::vector<Colour> current;
                splitter.prefixes(0, depth, current, prefixes);
                if (shared.out_of_budget || prefixes.size() >= 8 * jobs || depth >= order.size()) break;
                ++depth;
            }
        }
        std::atomic<std::size_t> next{0};
        std::atomic<std::size_t> best{prefixes.size()};
        std::vector<std::atomic<bool>> cancel(prefixes.size());
        std::vector<std::vector<Colour>> completions(prefixes.size());
        std::mutex mutex;
        auto worker = [&] {
            Search search(g, k, order, shared);
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= prefixes.size() || shared.out_of_budget) return;
                if (i > best.load()) continue;
                search.load(prefixes[i]);
                if (search.complete(prefixes[i].size(), &cancel[i])) {
                    std::lock_guard lock(mutex);
                    completions[i] = search.colours();
                    if (i < best.load()) {
                        best.store(i);
                        for (std::size_t j = i + 1; j < prefixes.size(); ++j) cancel[j].store(true);
                    }
                }
            }
        };
        std::vector<std::thread> threads;
        for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
        if (best.load() < prefixes.size()) found = completions[best.load()];
    }

    result.stats.nodes = shared.nodes.load();
    result.stats.prunes = shared.prunes.load();
    if (found) {
        VertexColouring c{*found, k};
        if (!is_nonrepetitive(g, c)) throw InternalError("solver produced a colouring the verifier rejects");
        result.verdict = Verdict::sat;
        result.colouring = std::move(c);
    } else {
        result.verdict = shared.out_of_budget ? Verdict::indeterminate : Verdict::unsat;
    }
    result.stats.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

ThueNumberResult thue_number(const Graph& g, unsigned k_max, const SolveOptions& opts) {
    if (k_max == 0) throw std::invalid_argument("thue_number needs k_max >= 1");
    ThueNumberResult out;
    for (unsigned k = 1; k <= k_max; ++k) {
        SolveResult r = solve(g, k, opts);
        out.stats.nodes += r.stats.nodes;
        out.stats.prunes += r.stats.prunes;
        out.stats.elapsed_seconds += r.stats.elapsed_seconds;
        out.colours = k;
        if (r.verdict == Verdict::indeterminate) {
            out.verdict = Verdict::indeterminate;
            return out;
        }
        if (r.verdict == Verdict::sat) {
            out.verdict = Verdict::sat;
            out.colouring = std::move(r.colouring);
            return out;
        }
    }
    out.verdict = Verdict::unsat;
    return out;
}

VertexColouring colour_forest(const Graph& g) {
    if (!is_forest(g)) throw GraphError("colour_forest needs an acyclic graph");
    SolveOptions opts;
    opts.order = VertexOrder::breadth_first;
    SolveResult r = solve(g, 4, opts);
    if (r.verdict != Verdict::sat) {
        // Trees are known to be non-repetitively 4-colourable.
        throw InternalError("no non-repetitive 4-colouring found for a forest");
    }
    return std::move(*r.colouring);
}

}  // namespace nonrep
