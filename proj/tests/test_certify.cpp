#include <doctest.h>

#include <set>

#include "nonrep/certify.hpp"
#include "nonrep/gadgets.hpp"
#include "oracles.hpp"

using namespace nonrep;

namespace {

/// Random connected graph on m vertices: a random tree plus extra edges.
Graph small_connected(std::size_t m, std::mt19937_64& rng) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex v = 1; v < m; ++v) e.emplace_back(static_cast<Vertex>(rng() % v), v);
    for (Vertex u = 0; u < m; ++u) {
        for (Vertex v = u + 1; v < m; ++v) {
            if (rng() % 3 == 0 && std::find(e.begin(), e.end(), std::pair{u, v}) == e.end()) e.emplace_back(u, v);
        }
    }
    return build_graph(m, e);
}

struct Glued {
    Graph graph;
    std::vector<Graph> children;
    std::vector<Vertex> roots;
    std::vector<std::vector<Vertex>> offsets;
};

/// Centre 0 joined to the root of each child; child i occupies a contiguous block.
Glued glue(std::vector<Graph> children, std::vector<Vertex> roots) {
    Glued out;
    std::vector<std::pair<Vertex, Vertex>> e;
    Vertex next = 1;
    for (std::size_t i = 0; i < children.size(); ++i) {
        std::vector<Vertex> map;
        for (Vertex v = 0; v < children[i].vertex_count(); ++v) map.push_back(next++);
        for (const Edge& x : children[i].edges()) e.emplace_back(map[x.u], map[x.v]);
        e.emplace_back(0, map[roots[i]]);
        out.offsets.push_back(std::move(map));
    }
    out.graph = build_graph(next, e);
    out.children = std::move(children);
    out.roots = std::move(roots);
    return out;
}

struct RandomShape {
    Graph g;
    Vertex root;
    bool root_is_hook;
};

RandomShape random_shape(std::mt19937_64& rng) {
    const bool hooked = rng() % 2;
    const std::size_t m = hooked ? 2 + rng() % 2 : 1 + rng() % 3;
    return {small_connected(m, rng), static_cast<Vertex>(rng() % m), hooked};
}

/// Random hierarchy with at most 10 vertices; sometimes with an
/// interchangeable group of kernel vertices.
Hierarchy random_hierarchy(std::mt19937_64& rng) {
    Hierarchy h;
    std::vector<std::pair<Vertex, Vertex>> kernel_edges;
    std::size_t kn;
    std::vector<std::vector<std::size_t>> slot_shapes;
    const bool symmetric = rng() % 2;
    h.shapes.clear();
    if (symmetric) {
        const std::size_t members = 2 + rng() % 2;
        const bool apex = rng() % 2;
        const bool clique = rng() % 2;
        kn = members + (apex ? 1 : 0);
        const Vertex first = apex ? 1 : 0;
        for (Vertex i = first; i < kn; ++i) {
            if (apex) kernel_edges.emplace_back(0, i);
            if (clique) {
                for (Vertex j = i + 1; j < kn; ++j) kernel_edges.emplace_back(i, j);
            }
        }
        if (!apex && !clique) kernel_edges.clear();
        const RandomShape sh = random_shape(rng);
        h.shapes.push_back({sh.g, sh.root, sh.root_is_hook});
        slot_shapes.assign(kn, {});
        std::vector<Vertex> group;
        for (Vertex i = first; i < kn; ++i) {
            slot_shapes[i] = {0};
            group.push_back(i);
        }
        h.interchangeable = {group};
    } else {
        kn = 1 + rng() % 3;
        const Graph k = small_connected(kn, rng);
        for (const Edge& x : k.edges()) kernel_edges.emplace_back(x.u, x.v);
        const std::size_t shapes = 1 + rng() % 2;
        for (std::size_t s = 0; s < shapes; ++s) {
            const RandomShape sh = random_shape(rng);
            h.shapes.push_back({sh.g, sh.root, sh.root_is_hook});
        }
        slot_shapes.assign(kn, {});
        for (std::size_t i = 0; i < kn; ++i) {
            const std::size_t count = rng() % 3;
            for (std::size_t c = 0; c < count; ++c) slot_shapes[i].push_back(rng() % shapes);
        }
    }
    Vertex next = static_cast<Vertex>(kn);
    std::vector<std::pair<Vertex, Vertex>> edges = kernel_edges;
    for (Vertex x = 0; x < kn; ++x) {
        h.kernel.push_back(x);
        for (std::size_t s : slot_shapes[x]) {
            const BranchShape& shape = h.shapes[s];
            const std::size_t extra = shape.component.vertex_count() - (shape.root_is_hook ? 1 : 0);
            if (next + extra > 10) continue;
            BranchSlot slot{x, s, {}};
            for (Vertex v = 0; v < shape.component.vertex_count(); ++v) {
                slot.vertices.push_back(shape.root_is_hook && v == shape.root ? x : next++);
            }
            for (const Edge& e : shape.component.edges()) edges.emplace_back(slot.vertices[e.u], slot.vertices[e.v]);
            if (!shape.root_is_hook) edges.emplace_back(x, slot.vertices[shape.root]);
            h.slots.push_back(std::move(slot));
        }
    }
    h.graph = build_graph(next, edges);
    // A size cut may have left group members with different branches.
    if (!h.interchangeable.empty()) {
        try {
            validate(h);
        } catch (const GraphError&) {
            h.interchangeable.clear();
        }
    }
    return h;
}

}  // namespace

TEST_CASE("profile_of") {
    const Graph k1 = build_graph(1, {});
    const auto p = profile_of(k1, 0, VertexColouring{{2}, 3});
    REQUIRE(p);
    CHECK(p->root == 2);
    CHECK(p->words == std::vector<Word>{{2}});

    const Gadget f4 = fan(4);
    const Vertex rivet = f4.role("rivet");
    const auto fp = profile_of(f4.graph, rivet, VertexColouring{{0, 1, 2, 0, 3}, 4});
    REQUIRE(fp);
    CHECK(fp->root == 3);
    std::set<Colour> second;
    for (const Word& w : fp->words) {
        CHECK(w.front() == 3);
        CHECK_FALSE(oracle::has_square(w));
        if (w.size() >= 2) second.insert(w[1]);
    }
    CHECK(second == std::set<Colour>{0, 1, 2});
    CHECK(std::find(fp->words.begin(), fp->words.end(), Word{3, 0, 1, 2, 0}) != fp->words.end());

    for (auto& c : oracle::all_colourings(5, 3)) CHECK_FALSE(profile_of(f4.graph, rivet, VertexColouring{c, 3}));
    CHECK_THROWS_AS(profile_of(f4.graph, 9, VertexColouring{{0, 1, 2, 0, 3}, 4}), GraphError);
}

TEST_CASE("enumerate_profiles") {
    const Gadget f4 = fan(4);
    const Vertex rivet = f4.role("rivet");
    CHECK(enumerate_profiles(f4.graph, rivet, 3).empty());
    CHECK(enumerate_profiles(build_graph(1, {}), 0, 2).size() == 2);

    const auto ps = enumerate_profiles(f4.graph, rivet, 4);
    REQUIRE_FALSE(ps.empty());
    for (const auto& p : ps) {
        for (const Word& w : p.words) {
            if (w.size() >= 2) CHECK(w[1] != p.root);
        }
    }
    // Same set as profiling every colouring one by one.
    std::set<BoundaryProfile> expected;
    for (auto& c : oracle::all_colourings(5, 4)) {
        if (auto p = profile_of(f4.graph, rivet, VertexColouring{c, 4})) expected.insert(*p);
    }
    CHECK(std::set<BoundaryProfile>(ps.begin(), ps.end()) == expected);
    CHECK(ps.size() == expected.size());

    EnumerateOptions tight;
    tight.max_colourings = 100;
    CHECK_THROWS_AS(enumerate_profiles(f4.graph, rivet, 4, tight), SizeGuardExceeded);
}

TEST_CASE("realised profiles carry colourings that produce them") {
    const Gadget f4 = fan(4);
    for (DedupMode mode : {DedupMode::none, DedupMode::exact, DedupMode::subsumption}) {
        EnumerateOptions opts;
        opts.dedup = mode;
        const auto rps = enumerate_realised_profiles(f4.graph, 4, 5, opts);
        for (const auto& rp : rps) CHECK(profile_of(f4.graph, 4, rp.colouring) == rp.profile);
        if (mode == DedupMode::subsumption) {
            for (const auto& a : rps) {
                for (const auto& b : rps) {
                    if (&a == &b || a.profile.root != b.profile.root) continue;
                    CHECK_FALSE(std::includes(b.profile.words.begin(), b.profile.words.end(), a.profile.words.begin(),
                                              a.profile.words.end()));
                }
            }
        }
    }
}

TEST_CASE("compose_star examples") {
    const BoundaryProfile single{1, {{1}}};
    const BoundaryProfile two[] = {single, single};
    const auto ok = compose_star(0, two);
    REQUIRE(ok);
    CHECK(ok->words == std::vector<Word>{{0}, {0, 1}});

    const BoundaryProfile same_colour{0, {{0}}};
    CHECK_FALSE(compose_star(0, std::span(&same_colour, 1)));

    // x = 0, y = 1: reverse((0)) . 1 . (0 1 0) = 0 1 0 1 0.
    const BoundaryProfile u{0, {{0}}};
    const BoundaryProfile v{0, {{0}, {0, 1}, {0, 1, 0}}};
    const BoundaryProfile uv[] = {u, v};
    CHECK_FALSE(compose_star(1, uv));
    CHECK(compose_star(2, std::span(&u, 1)).has_value());
}

TEST_CASE("compose_star matches direct verification on random glued stars") {
    std::mt19937_64 rng(31);
    std::size_t present = 0, absent = 0;
    for (int t = 0; t < 3000; ++t) {
        const std::size_t count = 1 + rng() % 3;
        std::vector<Graph> children;
        std::vector<Vertex> roots;
        std::size_t total = 1;
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t m = 1 + rng() % 3;
            if (total + m > 10) break;
            total += m;
            children.push_back(small_connected(m, rng));
            roots.push_back(static_cast<Vertex>(rng() % m));
        }
        const Glued g = glue(children, roots);
        const unsigned k = 3 + rng() % 2;
        const auto c = oracle::random_colouring(g.graph.vertex_count(), k, rng);
        std::vector<BoundaryProfile> profiles;
        bool children_ok = true;
        for (std::size_t i = 0; i < g.children.size(); ++i) {
            std::vector<Colour> cc;
            for (Vertex v : g.offsets[i]) cc.push_back(c.colours[v]);
            auto p = profile_of(g.children[i], g.roots[i], VertexColouring{cc, k});
            if (!p) {
                children_ok = false;
                break;
            }
            profiles.push_back(*p);
        }
        const bool direct = oracle::nonrepetitive(g.graph, c);
        if (!children_ok) {
            REQUIRE_FALSE(direct);
            continue;
        }
        const auto composed = compose_star(c.colours[0], profiles);
        REQUIRE(composed.has_value() == direct);
        if (composed) {
            REQUIRE(*composed == *profile_of(g.graph, 0, c));
            ++present;
        } else {
            ++absent;
        }
    }
    CHECK(present >= 300);
    CHECK(absent >= 300);
    CHECK(present + absent >= 1000);
}

TEST_CASE("validate rejects malformed hierarchies") {
    Hierarchy h = theorem2_hierarchy();
    CHECK_NOTHROW(validate(h));
    Hierarchy missing = h;
    missing.slots.pop_back();
    CHECK_THROWS_AS(validate(missing), GraphError);
    Hierarchy extra = h;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (const Edge& e : h.graph.edges()) edges.emplace_back(e.u, e.v);
    edges.emplace_back(4, 9);
    extra.graph = build_graph(26, edges);
    CHECK_THROWS_AS(validate(extra), GraphError);

    Hierarchy t3 = theorem3_hierarchy();
    CHECK_NOTHROW(validate(t3));
    Hierarchy split = t3;
    split.interchangeable = {{t3.kernel[2], t3.kernel[4]}};
    CHECK_THROWS_AS(validate(split), GraphError);
    Hierarchy mixed = t3;
    mixed.interchangeable = {{t3.kernel[1], t3.kernel[2]}};
    CHECK_THROWS_AS(validate(mixed), GraphError);
    CHECK_NOTHROW(validate(theorem3_double_fan_hierarchy()));
}

TEST_CASE("hierarchy search agrees with the flat solver on random small hierarchies") {
    std::mt19937_64 rng(41);
    std::size_t sat = 0, unsat = 0, grouped = 0;
    for (int t = 0; t < 400; ++t) {
        const Hierarchy h = random_hierarchy(rng);
        REQUIRE_NOTHROW(validate(h));
        grouped += !h.interchangeable.empty();
        for (unsigned k = 1; k <= 4; ++k) {
            const Verdict flat = solve(h.graph, k).verdict;
            for (DedupMode mode : {DedupMode::none, DedupMode::exact, DedupMode::subsumption}) {
                CertifyOptions opts;
                opts.dedup = mode;
                const auto out = solve_hierarchy(h, k, opts);
                CAPTURE(t);
                CAPTURE(k);
                REQUIRE(out.verdict == flat);
                if (out.colouring) REQUIRE(oracle::nonrepetitive(h.graph, *out.colouring));
            }
            (flat == Verdict::sat ? sat : unsat) += 1;
        }
    }
    CHECK(sat > 100);
    CHECK(unsat > 100);
    CHECK(grouped > 50);
}

TEST_CASE("certify theorem2 matches the flat solver and the hierarchy search") {
    for (unsigned k = 3; k <= 5; ++k) {
        const Certificate c = certify(CertifyTarget::theorem2, k);
        CAPTURE(k);
        CHECK(c.verdict == (k == 5 ? Verdict::sat : Verdict::unsat));
        CHECK(c.verdict == solve(theorem2_graph().graph, k).verdict);
        CHECK(c.cross_checks.at("flat_solver").rfind("agree", 0) == 0);
        CHECK(c.cross_checks.at("hierarchy_search").rfind("agree", 0) == 0);
        CHECK(c.witness.has_value() == (k == 5));
        if (c.witness) CHECK(is_nonrepetitive(theorem2_graph().graph, *c.witness));
    }
}

TEST_CASE("dedup modes give identical verdicts") {
    for (unsigned k = 3; k <= 4; ++k) {
        std::set<Verdict> seen;
        for (DedupMode mode : {DedupMode::none, DedupMode::exact, DedupMode::subsumption}) {
            CertifyOptions opts;
            opts.dedup = mode;
            opts.cross_check = false;
            seen.insert(certify(CertifyTarget::theorem2, k, opts).verdict);
            seen.insert(solve_hierarchy(theorem2_hierarchy(), k, opts).verdict);
        }
        CHECK(seen.size() == 1);
    }
}

TEST_CASE("size guards and budgets give indeterminate") {
    CertifyOptions opts;
    opts.max_colourings = 1000;
    opts.cross_check = false;
    const Certificate c = certify(CertifyTarget::theorem2, 5, opts);
    CHECK(c.verdict == Verdict::indeterminate);
    CHECK_FALSE(c.note.empty());

    CertifyOptions states;
    states.max_states = 10;
    states.cross_check = false;
    CHECK(certify(CertifyTarget::theorem2, 5, states).verdict == Verdict::indeterminate);

    CertifyOptions budget;
    budget.node_budget = 3;
    CHECK(certify(CertifyTarget::theorem3, 5, budget).verdict == Verdict::indeterminate);
}

TEST_CASE("theorem3 gadget: 4 colours fail, 5 colours suffice") {
    const Certificate four = certify(CertifyTarget::theorem3, 4);
    CHECK(four.verdict == Verdict::unsat);
    const Certificate five = certify(CertifyTarget::theorem3, 5);
    REQUIRE(five.verdict == Verdict::sat);
    REQUIRE(five.witness);
    const Gadget g = theorem3_graph();
    CHECK(is_nonrepetitive(g.graph, *five.witness));
    CHECK(five.witness->distinct_colours() == 5);
    CHECK(five.cross_checks.at("witness_verified") == "passed");
}

TEST_CASE("double-fan variant needs seven colours") {
    CHECK(certify(CertifyTarget::theorem3_double_fan, 5).verdict == Verdict::unsat);
    CHECK(certify(CertifyTarget::theorem3_double_fan, 6).verdict == Verdict::unsat);
    const Certificate seven = certify(CertifyTarget::theorem3_double_fan, 7);
    REQUIRE(seven.verdict == Verdict::sat);
    CHECK(is_nonrepetitive(theorem3_double_fan_graph().graph, *seven.witness));
}

TEST_CASE("target names") {
    for (CertifyTarget t : {CertifyTarget::theorem2, CertifyTarget::theorem3, CertifyTarget::theorem3_double_fan}) {
        CHECK(parse_certify_target(to_string(t)) == t);
    }
    CHECK_FALSE(parse_certify_target("theorem4"));
    CHECK(parse_dedup_mode("exact") == DedupMode::exact);
    CHECK_FALSE(parse_dedup_mode("fuzzy"));
}
