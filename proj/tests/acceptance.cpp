// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>

#include "nonrep/certify.hpp"
#include "nonrep/gadgets.hpp"
#include "nonrep/planarmap.hpp"
#include "nonrep/solver.hpp"
#include "oracles.hpp"

using namespace nonrep;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::printf("%s %2d %s [%.2f s] %s\n", o.pass ? "PASS" : "FAIL", id, title, s, o.detail.c_str());
    std::fflush(stdout);
}

std::string verdict(Verdict v) { return std::string(to_string(v)); }

bool sat_verified(const Graph& g, const SolveResult& r) {
    return r.verdict == Verdict::sat && r.colouring && oracle::nonrepetitive(g, *r.colouring);
}

}  // namespace

int main() {
    criterion(1, "every binary word of length 4 contains a square", [] {
        int with_square = 0;
        for (auto& w : oracle::all_colourings(4, 2)) with_square += find_square(w).has_value();
        return Outcome{with_square == 16, std::to_string(with_square) + "/16"};
    });

    criterion(2, "thue_word(10000) is square-free in under 1 s", [] {
        const auto t0 = std::chrono::steady_clock::now();
        const Word w = thue_word(10000);
        const bool free = !find_square(w).has_value();
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return Outcome{w.size() == 10000 && free && s < 1.0, "square-free " + std::to_string(free)};
    });

    criterion(3, "P4 needs three colours", [] {
        const Graph p4 = path_graph(4).graph;
        const auto two = solve(p4, 2);
        const auto three = solve(p4, 3);
        return Outcome{two.verdict == Verdict::unsat && sat_verified(p4, three),
                       "k=2 " + verdict(two.verdict) + ", k=3 " + verdict(three.verdict)};
    });

    criterion(4, "F4 needs four colours", [] {
        const Graph f4 = fan(4).graph;
        const auto three = solve(f4, 3);
        const auto four = solve(f4, 4);
        return Outcome{three.verdict == Verdict::unsat && three.stats.nodes <= 243 && sat_verified(f4, four),
                       "k=3 " + verdict(three.verdict) + " in " + std::to_string(three.stats.nodes) +
                           " assignments, k=4 " + verdict(four.verdict)};
    });

    const Graph t2 = theorem2_graph().graph;
    CertifyOptions quick;
    quick.cross_check = false;

    criterion(5, "theorem2 gadget needs five colours", [&] {
        const Certificate c4 = certify(CertifyTarget::theorem2, 4, quick);
        const auto s4 = solve(t2, 4);
        const Certificate c5 = certify(CertifyTarget::theorem2, 5, quick);
        const bool witness_ok = c5.witness && oracle::nonrepetitive(t2, *c5.witness) && is_nonrepetitive(t2, *c5.witness);
        return Outcome{c4.verdict == Verdict::unsat && s4.verdict == Verdict::unsat && c5.verdict == Verdict::sat &&
                           witness_ok,
                       "certify k=4 " + verdict(c4.verdict) + " (" + std::to_string(c4.elapsed_seconds) +
                           " s), solve k=4 " + verdict(s4.verdict) + " (" + std::to_string(s4.stats.elapsed_seconds) +
                           " s), certify k=5 " + verdict(c5.verdict) + ", witness verified " +
                           std::to_string(witness_ok)};
    });

    criterion(6, "theorem3 gadget: certify k=6 is UNSAT", [&] {
        const Certificate c = certify(CertifyTarget::theorem3, 6);
        std::string detail = "verdict " + verdict(c.verdict);
        if (c.witness) {
            detail += ", witness with " + std::to_string(c.witness->distinct_colours()) + " colours verified " +
                      std::to_string(is_nonrepetitive(theorem3_graph().graph, *c.witness));
        }
        if (!c.note.empty()) detail += "; " + c.note;
        detail += "; k=4 " + verdict(certify(CertifyTarget::theorem3, 4).verdict) + ", k=5 " +
                  verdict(certify(CertifyTarget::theorem3, 5).verdict);
        return Outcome{c.verdict == Verdict::unsat, detail};
    });

    criterion(7, "100 random outerplanar maps face-coloured with at most 5 colours", [] {
        std::mt19937_64 rng(2024);
        int good = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const std::size_t n = 3 + rng() % 10;
            const double density = (rng() % 101) / 100.0;
            const PlanarMap m = random_outerplanar_map(n, density, seed);
            const auto fc = colour_faces_outerplanar(m);
            const auto& cols = fc.colouring.colours;
            std::set<Colour> used(cols.begin(), cols.end());
            bool outer_unique = true;
            for (std::size_t f = 0; f < cols.size(); ++f) {
                if (f != fc.faces.outer && cols[f] == cols[fc.faces.outer]) outer_unique = false;
            }
            const bool forest = is_forest(weak_dual(m, fc.faces).graph);
            VertexColouring dual_colours{{}, fc.colouring.k};
            for (std::size_t f : fc.dual.face_of_vertex) dual_colours.colours.push_back(cols[f]);
            const bool verified = oracle::nonrepetitive(fc.dual.graph, dual_colours);
            good += used.size() <= 5 && fc.colouring.k <= 5 && outer_unique && forest && verified;
        }
        return Outcome{good == 100, std::to_string(good) + "/100 maps"};
    });

    criterion(8, "profile abstraction agrees with direct verification", [&] {
        std::mt19937_64 rng(8);
        int cases = 0, disagreements = 0, present = 0;
        while (cases < 1500) {
            const Graph g = oracle::random_graph(1 + rng() % 9, 0.5, rng);
            const auto comps = connected_components(g);
            std::vector<Graph> children;
            std::vector<Vertex> roots;
            std::vector<std::pair<Vertex, Vertex>> edges;
            std::vector<std::vector<Vertex>> blocks;
            Vertex next = 1;
            for (const auto& c : comps) {
                const Graph sub = induced_subgraph(g, c);
                std::vector<Vertex> block;
                for (Vertex v = 0; v < sub.vertex_count(); ++v) block.push_back(next++);
                for (const Edge& e : sub.edges()) edges.emplace_back(block[e.u], block[e.v]);
                const Vertex root = static_cast<Vertex>(rng() % sub.vertex_count());
                edges.emplace_back(0, block[root]);
                children.push_back(sub);
                roots.push_back(root);
                blocks.push_back(block);
            }
            const Graph star = build_graph(next, edges);
            const unsigned k = 2 + rng() % 3;
            const auto colouring = oracle::random_colouring(next, k, rng);
            std::vector<BoundaryProfile> profiles;
            bool children_ok = true;
            for (std::size_t i = 0; i < children.size() && children_ok; ++i) {
                VertexColouring cc{{}, k};
                for (Vertex v : blocks[i]) cc.colours.push_back(colouring.colours[v]);
                auto p = profile_of(children[i], roots[i], cc);
                if (p) {
                    profiles.push_back(*p);
                } else {
                    children_ok = false;
                }
            }
            const bool direct = oracle::nonrepetitive(star, colouring);
            const bool composed = children_ok && compose_star(colouring.colours[0], profiles).has_value();
            disagreements += direct != composed;
            present += direct;
            ++cases;
        }
        std::string detail = std::to_string(cases) + " glued stars (" + std::to_string(present) + " non-repetitive), " +
                             std::to_string(disagreements) + " disagreements";
        bool ok = disagreements == 0;
        for (unsigned k = 3; k <= 5; ++k) {
            const Verdict c = certify(CertifyTarget::theorem2, k, quick).verdict;
            const Verdict s = solve(t2, k).verdict;
            ok = ok && c == s && c != Verdict::indeterminate;
            detail += "; k=" + std::to_string(k) + " certify " + verdict(c) + " solve " + verdict(s);
        }
        return Outcome{ok, detail};
    });

    criterion(9, "verifier matches brute-force path enumeration", [] {
        std::mt19937_64 rng(9);
        int cases = 0, disagreements = 0;
        auto compare = [&](const Graph& g, const VertexColouring& c) {
            const auto w = find_repetitive_path(g, c);
            const bool ok = w ? is_valid_witness(g, c, *w) : true;
            disagreements += (w.has_value() == oracle::nonrepetitive(g, c)) || !ok;
            ++cases;
        };
        for (std::size_t n = 1; n <= 5; ++n) {
            for (const Graph& g : oracle::all_graphs(n)) {
                for (auto& c : oracle::all_colourings(n, 2)) compare(g, VertexColouring{c, 2});
                for (int t = 0; t < 4; ++t) compare(g, oracle::random_colouring(n, 3, rng));
            }
        }
        const int exhaustive = cases;
        for (int t = 0; t < 2000; ++t) {
            const std::size_t n = 1 + rng() % 7;
            const Graph g = oracle::random_graph(n, (rng() % 101) / 100.0, rng);
            compare(g, oracle::random_colouring(n, 1 + rng() % 3, rng));
        }
        return Outcome{disagreements == 0, std::to_string(exhaustive) + " exhaustive + " +
                                               std::to_string(cases - exhaustive) + " random cases, " +
                                               std::to_string(disagreements) + " disagreements"};
    });

    criterion(10, "theorem3 gadget structure", [] {
        const Gadget g = theorem3_graph();
        std::size_t deg8 = 0, deg7 = 0;
        for (Vertex v = 0; v < g.graph.vertex_count(); ++v) {
            deg8 += g.graph.degree(v) == 8;
            deg7 += g.graph.degree(v) == 7;
        }
        const Vertex rs[] = {g.role("r"), g.role("s")};
        const auto [rest, kept] = delete_vertices(g.graph, rs);
        const auto comps = connected_components(rest);
        const Graph t2g = theorem2_graph().graph;
        std::size_t iso = 0;
        for (const auto& c : comps) iso += are_isomorphic(induced_subgraph(rest, c), t2g);
        const FaceSet fs = trace_faces(*g.embedding);
        const long euler = static_cast<long>(g.graph.vertex_count()) - static_cast<long>(g.graph.edge_count()) +
                           static_cast<long>(fs.faces.size());
        const bool ok = deg8 == 2 && deg7 == 7 && g.graph.vertex_count() == 184 && g.graph.edge_count() == 295 &&
                        comps.size() == 7 && iso == 7 && euler == 2;
        return Outcome{ok, "deg8 " + std::to_string(deg8) + ", deg7 " + std::to_string(deg7) + ", V " +
                               std::to_string(g.graph.vertex_count()) + ", E " + std::to_string(g.graph.edge_count()) +
                               ", components " + std::to_string(comps.size()) + " (" + std::to_string(iso) +
                               " isomorphic), V-E+F " + std::to_string(euler)};
    });

    criterion(11, "50 random trees coloured with at most 4 colours", [] {
        int good = 0;
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const std::size_t n = 1 + (seed * 7919) % 40;
            const Graph t = random_tree(n, seed);
            const VertexColouring c = colour_forest(t);
            good += c.k <= 4 && c.distinct_colours() <= 4 && is_nonrepetitive(t, c);
        }
        return Outcome{good == 50, std::to_string(good) + "/50 trees"};
    });

    const auto t0 = std::chrono::steady_clock::now();
    const Verdict df6 = certify(CertifyTarget::theorem3_double_fan, 6, quick).verdict;
    const Verdict df7 = certify(CertifyTarget::theorem3_double_fan, 7, quick).verdict;
    std::printf("INFO    double-fan variant of the theorem3 gadget: k=6 %s, k=7 %s [%.2f s]\n", verdict(df6).c_str(),
                verdict(df7).c_str(),
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
