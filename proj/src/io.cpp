#include "nonrep/io.hpp"

#include <limits>

#include <json.hpp>

namespace nonrep {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
}

const json& field(const json& j, const char* name) {
    if (!j.is_object()) throw FormatError("expected a JSON object");
    auto it = j.find(name);
    if (it == j.end()) throw FormatError(std::string("missing field \"") + name + "\"");
    return *it;
}

std::uint64_t as_index(const json& j, const char* what) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
        throw FormatError(std::string(what) + " must be a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

std::vector<Vertex> as_vertices(const json& j, const char* what) {
    if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
    std::vector<Vertex> out;
    for (const auto& x : j) {
        const auto v = as_index(x, what);
        if (v > std::numeric_limits<Vertex>::max()) throw FormatError(std::string(what) + " out of range");
        out.push_back(static_cast<Vertex>(v));
    }
    return out;
}

std::vector<Colour> as_colours(const json& j, const char* what) {
    if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
    std::vector<Colour> out;
    for (const auto& x : j) {
        const auto c = as_index(x, what);
        if (c > 255) throw FormatError(std::string(what) + " entry above 255");
        out.push_back(static_cast<Colour>(c));
    }
    return out;
}

json embedding_json(const PlanarMap& m) {
    json rot = json::array();
    for (const auto& r : m.rotation()) rot.push_back(r);
    return json{{"n", m.vertex_count()}, {"rotation", rot}, {"outer_face", m.outer_walk()}};
}

PlanarMap embedding_from(const json& j) {
    const json& rot = field(j, "rotation");
    if (!rot.is_array()) throw FormatError("rotation must be an array");
    std::vector<std::vector<Vertex>> rotation;
    for (const auto& r : rot) rotation.push_back(as_vertices(r, "rotation entry"));
    if (j.contains("n") && as_index(j.at("n"), "n") != rotation.size()) {
        throw FormatError("n does not match the rotation length");
    }
    auto m = PlanarMap::make(std::move(rotation), as_vertices(field(j, "outer_face"), "outer_face"));
    trace_faces(m);
    return m;
}

json colours_json(std::span<const Colour> cs) {
    json a = json::array();
    for (Colour c : cs) a.push_back(static_cast<unsigned>(c));
    return a;
}

json counts_json(const CertificateCounts& c) {
    return json{{"component_colourings", c.component_colourings},
                {"profiles", c.profiles},
                {"compositions_checked", c.compositions_checked},
                {"states_per_level", c.states_per_level},
                {"kernel_colourings", c.kernel_colourings},
                {"search_nodes", c.search_nodes}};
}

Verdict parse_verdict(const std::string& s) {
    if (s == "SAT") return Verdict::sat;
    if (s == "UNSAT") return Verdict::unsat;
    if (s == "INDETERMINATE") return Verdict::indeterminate;
    throw FormatError("unknown verdict \"" + s + "\"");
}

}  // namespace

GraphFile graph_file_of(const Gadget& g) { return GraphFile{g.graph, g.roles, g.embedding}; }

GraphFile parse_graph_file(std::string_view text) {
    const json j = parse_json(text);
    const auto n = as_index(field(j, "n"), "n");
    const json& edges = field(j, "edges");
    if (!edges.is_array()) throw FormatError("edges must be an array");
    std::vector<std::pair<Vertex, Vertex>> list;
    for (const auto& e : edges) {
        const auto uv = as_vertices(e, "edge endpoint");
        if (uv.size() != 2) throw FormatError("each edge must have two endpoints");
        list.emplace_back(uv[0], uv[1]);
    }
    GraphFile f;
    f.graph = build_graph(n, list);
    if (j.contains("names")) {
        const json& names = j.at("names");
        if (!names.is_object()) throw FormatError("names must be an object");
        for (const auto& [name, v] : names.items()) {
            const auto idx = as_index(v, "name target");
            if (idx >= n) throw FormatError("name \"" + name + "\" points outside the graph");
            f.names[name] = static_cast<Vertex>(idx);
        }
    }
    if (j.contains("embedding")) {
        f.embedding = embedding_from(j.at("embedding"));
        if (!(f.embedding->graph() == f.graph)) throw FormatError("embedding does not describe the listed edges");
    }
    return f;
}

std::string dump_graph_file(const GraphFile& f) {
    json edges = json::array();
    for (const Edge& e : f.graph.edges()) edges.push_back({e.u, e.v});
    json j{{"n", f.graph.vertex_count()}, {"edges", edges}};
    if (!f.names.empty()) j["names"] = f.names;
    if (f.embedding) {
        json e = embedding_json(*f.embedding);
        e.erase("n");
        j["embedding"] = e;
    }
    return j.dump(2) + "\n";
}

VertexColouring parse_colouring(std::string_view text) {
    const json j = parse_json(text);
    const auto k = as_index(field(j, "k"), "k");
    if (k == 0 || k > 256) throw FormatError("k must be between 1 and 256");
    try {
        return VertexColouring::make(as_colours(field(j, "colours"), "colours"), static_cast<unsigned>(k));
    } catch (const GraphError& e) {
        throw FormatError(e.what());
    }
}

std::string dump_colouring(const VertexColouring& c) {
    return json{{"k", c.k}, {"colours", colours_json(c.colours)}}.dump(2) + "\n";
}

PlanarMap parse_embedding(std::string_view text) { return embedding_from(parse_json(text)); }

std::string dump_embedding(const PlanarMap& m) { return embedding_json(m).dump(2) + "\n"; }

std::string dump_face_colouring(const OuterplanarFaceColouring& fc) {
    json faces = json::array();
    for (std::size_t f = 0; f < fc.faces.faces.size(); ++f) faces.push_back(fc.faces.vertex_walk(f));
    json dual = json::array();
    for (const Edge& e : fc.dual.graph.edges()) {
        dual.push_back({fc.dual.face_of_vertex[e.u], fc.dual.face_of_vertex[e.v]});
    }
    json j{{"k", fc.colouring.k},
           {"colours", colours_json(fc.colouring.colours)},
           {"faces", faces},
           {"outer_face", fc.faces.outer},
           {"dual_edges", dual},
           {"verified", true}};
    return j.dump(2) + "\n";
}

FaceColouring parse_face_colouring(std::string_view text) {
    const json j = parse_json(text);
    FaceColouring fc;
    fc.k = static_cast<unsigned>(as_index(field(j, "k"), "k"));
    fc.colours = as_colours(field(j, "colours"), "colours");
    for (Colour c : fc.colours) {
        if (c >= fc.k) throw FormatError("face colour not below k");
    }
    return fc;
}

std::string dump_witness(const PathWitness& w, const VertexColouring& c) {
    return json{{"vertices", w.vertices}, {"colour_word", colours_json(w.colour_word(c))}}.dump(2) + "\n";
}

std::string dump_certificate(const Certificate& c) {
    json j{{"graph", c.graph_id},
           {"k", c.k},
           {"verdict", std::string(to_string(c.verdict))},
           {"method", c.method},
           {"dedup", std::string(to_string(c.dedup))},
           {"counts", counts_json(c.counts)},
           {"cross_checks", c.cross_checks},
           {"elapsed_seconds", c.elapsed_seconds}};
    if (c.witness) j["witness"] = json{{"k", c.witness->k}, {"colours", colours_json(c.witness->colours)}};
    if (!c.note.empty()) j["note"] = c.note;
    return j.dump(2) + "\n";
}

Certificate parse_certificate(std::string_view text) {
    const json j = parse_json(text);
    Certificate c;
    try {
        c.graph_id = field(j, "graph").get<std::string>();
        c.k = static_cast<unsigned>(as_index(field(j, "k"), "k"));
        c.verdict = parse_verdict(field(j, "verdict").get<std::string>());
        c.method = field(j, "method").get<std::string>();
        if (j.contains("dedup")) {
            auto d = parse_dedup_mode(j.at("dedup").get<std::string>());
            if (!d) throw FormatError("unknown dedup mode");
            c.dedup = *d;
        }
        if (j.contains("counts")) {
            const json& k = j.at("counts");
            c.counts.component_colourings = k.value("component_colourings", std::uint64_t{0});
            c.counts.profiles = k.value("profiles", std::uint64_t{0});
            c.counts.compositions_checked = k.value("compositions_checked", std::uint64_t{0});
            c.counts.states_per_level = k.value("states_per_level", std::vector<std::uint64_t>{});
            c.counts.kernel_colourings = k.value("kernel_colourings", std::uint64_t{0});
            c.counts.search_nodes = k.value("search_nodes", std::uint64_t{0});
        }
        if (j.contains("cross_checks")) c.cross_checks = j.at("cross_checks").get<std::map<std::string, std::string>>();
        c.elapsed_seconds = j.value("elapsed_seconds", 0.0);
        c.note = j.value("note", std::string{});
        if (j.contains("witness")) {
            const json& w = j.at("witness");
            c.witness = VertexColouring::make(as_colours(field(w, "colours"), "colours"),
                                              static_cast<unsigned>(as_index(field(w, "k"), "k")));
        }
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed certificate: ") + e.what());
    } catch (const GraphError& e) {
        throw FormatError(e.what());
    }
    return c;
}

std::string dump_word(const Word& w) { return json{{"word", colours_json(w)}}.dump() + "\n"; }

Word parse_word(std::string_view text) { return as_colours(field(parse_json(text), "word"), "word"); }

}  // namespace nonrep
