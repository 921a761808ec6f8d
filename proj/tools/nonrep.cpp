// nonrep: command-line front end for the non-repetitive colouring toolkit.
//
// Exit codes: 0 success / VALID / SAT, 1 repetition found / UNSAT,
// 2 input error, 3 budget exhausted / INDETERMINATE.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nonrep/certify.hpp"
#include "nonrep/gadgets.hpp"
#include "nonrep/io.hpp"
#include "nonrep/planarmap.hpp"
#include "nonrep/solver.hpp"
#include "nonrep/words.hpp"

namespace {

using namespace nonrep;

enum Exit : int { exit_ok = 0, exit_no = 1, exit_input = 2, exit_budget = 3 };

// NONREP_LOG=error|warn|info|debug (default warn); messages go to stderr.
enum class Level { error, warn, info, debug };

Level log_level() {
    static const Level level = [] {
        const char* env = std::getenv("NONREP_LOG");
        const std::string s = env ? env : "";
        if (s == "error") return Level::error;
        if (s == "info") return Level::info;
        if (s == "debug") return Level::debug;
        return Level::warn;
    }();
    return level;
}

void log(Level level, const std::string& msg) {
    static const char* names[] = {"error", "warn", "info", "debug"};
    if (level <= log_level()) std::cerr << "nonrep: " << names[static_cast<int>(level)] << ": " << msg << "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& output) {
    if (output.empty() || output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(output, std::ios::binary);
    if (!out) throw FormatError("cannot write " + output);
    out << text;
    log(Level::info, "wrote " + output);
}

std::string word_string(std::span<const Colour> w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(w[i]);
    }
    return s;
}

std::string vertex_string(std::span<const Vertex> vs) {
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(vs[i]);
    }
    return s;
}

std::string stats_line(const SolveStats& st) {
    std::ostringstream ss;
    ss << "nodes " << st.nodes << ", prunes " << st.prunes << ", " << st.elapsed_seconds << " s";
    return ss.str();
}

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::sat: return exit_ok;
        case Verdict::unsat: return exit_no;
        case Verdict::indeterminate: return exit_budget;
    }
    return exit_input;
}

/// A planar map from an embedding file or from a graph file with an embedding.
PlanarMap read_map(const std::string& path) {
    const std::string text = read_file(path);
    if (text.find("\"edges\"") != std::string::npos) {
        GraphFile f = parse_graph_file(text);
        if (!f.embedding) throw FormatError(path + " has no embedding");
        return *f.embedding;
    }
    return parse_embedding(text);
}

struct Common {
    std::string format = "text";
    std::string output;
    std::optional<std::uint64_t> budget;
    unsigned jobs = 1;
};

void add_common(CLI::App* sub, Common& c, bool with_search) {
    sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("-o,--output", c.output, "Write the result file here instead of stdout");
    if (with_search) {
        sub->add_option("--budget", c.budget, "Node budget; exhausting it gives INDETERMINATE (exit 3)");
        sub->add_option("--jobs", c.jobs, "Worker threads for the search (0 = all cores)");
    }
}

SolveOptions solve_options(const Common& c, const std::string& order) {
    SolveOptions o;
    o.node_budget = c.budget;
    o.parallel = c.jobs != 1;
    o.jobs = c.jobs;
    if (order == "bfs") o.order = VertexOrder::breadth_first;
    if (order == "natural") o.order = VertexOrder::natural;
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Non-repetitive colourings of graphs and planar maps"};
    app.require_subcommand(1);
    Common common;

    // check
    std::string graph_path, colouring_path;
    auto* check = app.add_subcommand("check", "Verify a vertex colouring; print VALID or a repetitive path");
    check->add_option("graph", graph_path, "Graph file")->required();
    check->add_option("colouring", colouring_path, "Colouring file")->required();
    add_common(check, common, false);

    // solve
    unsigned colours = 0;
    std::string order = "connected";
    auto* solve_cmd = app.add_subcommand("solve", "Decide non-repetitive k-colourability exactly");
    solve_cmd->add_option("graph", graph_path, "Graph file")->required();
    solve_cmd->add_option("-k,--colours", colours, "Number of colours")->required()->check(CLI::Range(1u, 255u));
    solve_cmd->add_option("--order", order, "Vertex order")->check(CLI::IsMember({"connected", "bfs", "natural"}));
    add_common(solve_cmd, common, true);

    // thue-number
    unsigned max_colours = 8;
    auto* thue = app.add_subcommand("thue-number", "Smallest k with a non-repetitive k-colouring");
    thue->add_option("graph", graph_path, "Graph file")->required();
    thue->add_option("--max-colours", max_colours, "Largest k to try")->check(CLI::Range(1u, 255u));
    thue->add_option("--order", order, "Vertex order")->check(CLI::IsMember({"connected", "bfs", "natural"}));
    add_common(thue, common, true);

    // faces
    std::string map_path, face_colouring_path;
    auto* faces = app.add_subcommand("faces", "Five-colour the faces of an outerplanar map");
    faces->add_option("map", map_path, "Embedding file, or a graph file with an embedding")->required();
    faces->add_option("--verify", face_colouring_path, "Check this face colouring file instead of producing one");
    add_common(faces, common, false);

    // gadget
    std::string gadget_name;
    std::size_t gadget_n = 4;
    std::uint64_t seed = 1;
    double density = 0.5;
    auto* gadget = app.add_subcommand("gadget", "Emit a generated graph as a graph file");
    gadget->add_option("name", gadget_name, "Gadget")
        ->required()
        ->check(CLI::IsMember({"path", "fan", "theorem2", "theorem3", "theorem3-double-fan", "random-outerplanar",
                               "random-tree"}));
    gadget->add_option("n", gadget_n, "Size for path, fan, random-outerplanar and random-tree");
    gadget->add_option("--seed", seed, "Seed for the random generators");
    gadget->add_option("--density", density, "Chord density for random-outerplanar")->check(CLI::Range(0.0, 1.0));
    add_common(gadget, common, false);

    // certify
    std::string target_name, verify_path, dedup_name = "subsumption";
    bool no_cross_check = false;
    auto* certify_cmd = app.add_subcommand("certify", "Certify the colour bound of a gadget by profile composition");
    certify_cmd->add_option("target", target_name, "theorem2, theorem3 or theorem3-double-fan");
    certify_cmd->add_option("-k,--colours", colours, "Number of colours")->check(CLI::Range(1u, 16u));
    certify_cmd->add_option("--dedup", dedup_name, "Profile reduction")
        ->check(CLI::IsMember({"none", "exact", "subsumption"}));
    certify_cmd->add_flag("--no-cross-check", no_cross_check, "Skip the second method");
    certify_cmd->add_option("--verify", verify_path, "Re-check the witness of a certificate file");
    add_common(certify_cmd, common, true);

    // words
    auto* words = app.add_subcommand("words", "Square-free words");
    words->require_subcommand(1);
    std::size_t word_len = 0;
    auto* words_thue = words->add_subcommand("thue", "Prefix of the ternary square-free fixed point");
    words_thue->add_option("n", word_len, "Length")->required();
    add_common(words_thue, common, false);
    std::vector<unsigned> word_symbols;
    std::string word_file;
    auto* words_square = words->add_subcommand("square", "Find the leftmost shortest square");
    words_square->add_option("symbols", word_symbols, "Word as separate symbols, e.g. 0 1 0 1");
    words_square->add_option("--file", word_file, "Word file {\"word\": [...]}");
    add_common(words_square, common, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }
    const bool json_out = common.format == "json";

    try {
        if (*check) {
            const GraphFile g = parse_graph_file(read_file(graph_path));
            const VertexColouring c = parse_colouring(read_file(colouring_path));
            const auto w = find_repetitive_path(g.graph, c);
            if (!w) {
                emit(json_out ? std::string("{\"result\": \"VALID\"}\n") : std::string("VALID\n"), common.output);
                return exit_ok;
            }
            if (json_out) {
                emit(dump_witness(*w, c), common.output);
            } else {
                emit("REPETITIVE path " + vertex_string(w->vertices) +
                         " colours " + word_string(w->colour_word(c)) + "\n",
                     common.output);
            }
            return exit_no;
        }

        if (*solve_cmd) {
            const GraphFile g = parse_graph_file(read_file(graph_path));
            const auto r = solve(g.graph, colours, solve_options(common, order));
            log(Level::info, stats_line(r.stats));
            if (r.verdict == Verdict::sat) {
                if (json_out || !common.output.empty()) {
                    emit(dump_colouring(*r.colouring), common.output);
                } else {
                    std::cout << "SAT " << word_string(r.colouring->colours) << "\n";
                }
            } else if (json_out) {
                std::cout << "{\"verdict\": \"" << to_string(r.verdict) << "\"}\n";
            } else {
                std::cout << to_string(r.verdict) << "\n";
            }
            return verdict_exit(r.verdict);
        }

        if (*thue) {
            const GraphFile g = parse_graph_file(read_file(graph_path));
            const auto r = thue_number(g.graph, max_colours, solve_options(common, order));
            log(Level::info, stats_line(r.stats));
            if (r.verdict == Verdict::sat) {
                if (!common.output.empty()) emit(dump_colouring(*r.colouring), common.output);
                std::cout << (json_out ? "{\"thue_number\": " + std::to_string(r.colours) + "}\n"
                                       : "thue number " + std::to_string(r.colours) + "\n");
            } else if (r.verdict == Verdict::unsat) {
                std::cout << (json_out ? "{\"thue_number_above\": " + std::to_string(max_colours) + "}\n"
                                       : "thue number > " + std::to_string(max_colours) + "\n");
            } else {
                std::cout << (json_out ? std::string("{\"verdict\": \"INDETERMINATE\", \"colours\": ") +
                                             std::to_string(r.colours) + "}\n"
                                       : "INDETERMINATE at k = " + std::to_string(r.colours) + "\n");
            }
            return verdict_exit(r.verdict);
        }

        if (*faces) {
            const PlanarMap m = read_map(map_path);
            if (!face_colouring_path.empty()) {
                const FaceColouring fc = parse_face_colouring(read_file(face_colouring_path));
                const FaceSet fs = trace_faces(m);
                const FaceGraph dual = dual_graph(m, fs);
                if (fc.colours.size() != fs.faces.size()) throw FormatError("face colouring has the wrong length");
                VertexColouring vc;
                vc.k = fc.k;
                for (std::size_t f : dual.face_of_vertex) vc.colours.push_back(fc.colours[f]);
                const bool ok = is_nonrepetitive(dual.graph, vc);
                std::cout << (ok ? "VALID\n" : "REPETITIVE\n");
                return ok ? exit_ok : exit_no;
            }
            const FaceSet fs = trace_faces(m);
            if (!check_outerplanar(m, fs)) {
                log(Level::error, "map is not outerplanar: some vertex misses the outer face");
                return exit_input;
            }
            const auto fc = colour_faces_outerplanar(m);
            if (json_out || !common.output.empty()) {
                emit(dump_face_colouring(fc), common.output);
            } else {
                for (std::size_t f = 0; f < fc.faces.faces.size(); ++f) {
                    std::cout << "face " << f << (f == fc.faces.outer ? " (outer)" : "") << " colour "
                              << static_cast<unsigned>(fc.colouring.colours[f]) << " walk "
                              << vertex_string(fc.faces.vertex_walk(f)) << "\n";
                }
                std::cout << "verified, " << fc.colouring.k << " colours available\n";
            }
            return exit_ok;
        }

        if (*gadget) {
            GraphFile f;
            if (gadget_name == "path") {
                f = graph_file_of(path_graph(gadget_n));
            } else if (gadget_name == "fan") {
                f = graph_file_of(fan(gadget_n));
            } else if (gadget_name == "theorem2") {
                f = graph_file_of(theorem2_graph());
            } else if (gadget_name == "theorem3") {
                f = graph_file_of(theorem3_graph());
            } else if (gadget_name == "theorem3-double-fan") {
                f = graph_file_of(theorem3_double_fan_graph());
            } else if (gadget_name == "random-outerplanar") {
                const PlanarMap m = random_outerplanar_map(gadget_n, density, seed);
                f = GraphFile{m.graph(), {}, m};
            } else {
                f = GraphFile{random_tree(gadget_n, seed), {}, std::nullopt};
            }
            emit(dump_graph_file(f), common.output);
            return exit_ok;
        }

        if (*certify_cmd) {
            if (!verify_path.empty()) {
                const Certificate cert = parse_certificate(read_file(verify_path));
                const auto target = parse_certify_target(cert.graph_id);
                if (!target) throw FormatError("unknown graph \"" + cert.graph_id + "\"");
                if (!cert.witness) {
                    std::cout << "no witness to check; recorded verdict " << to_string(cert.verdict) << "\n";
                    return verdict_exit(cert.verdict);
                }
                const Graph g = *target == CertifyTarget::theorem2   ? theorem2_graph().graph
                                : *target == CertifyTarget::theorem3 ? theorem3_graph().graph
                                                                     : theorem3_double_fan_graph().graph;
                if (cert.witness->colours.size() != g.vertex_count()) throw FormatError("witness has the wrong length");
                const bool ok = is_nonrepetitive(g, *cert.witness);
                std::cout << (ok ? "VALID\n" : "REPETITIVE\n");
                return ok ? exit_ok : exit_no;
            }
            const auto target = parse_certify_target(target_name);
            if (!target) throw FormatError("certify needs a target: theorem2, theorem3 or theorem3-double-fan");
            if (colours == 0) throw FormatError("certify needs --colours");
            CertifyOptions opts;
            opts.dedup = *parse_dedup_mode(dedup_name);
            opts.node_budget = common.budget;
            opts.cross_check = !no_cross_check;
            const Certificate cert = certify(*target, colours, opts);
            if (json_out || !common.output.empty()) {
                emit(dump_certificate(cert), common.output);
            } else {
                std::cout << cert.graph_id << " k=" << cert.k << " " << to_string(cert.verdict) << " (" << cert.method
                          << ", " << cert.elapsed_seconds << " s)\n";
                for (const auto& [name, outcome] : cert.cross_checks) std::cout << "  " << name << ": " << outcome << "\n";
                if (!cert.note.empty()) std::cout << "  note: " << cert.note << "\n";
            }
            return verdict_exit(cert.verdict);
        }

        if (*words_thue) {
            const Word w = thue_word(word_len);
            emit(json_out || !common.output.empty() ? dump_word(w) : word_string(w) + "\n", common.output);
            return exit_ok;
        }

        if (*words_square) {
            Word w;
            if (!word_file.empty()) {
                w = parse_word(read_file(word_file));
            } else {
                for (unsigned s : word_symbols) {
                    if (s > 255) throw FormatError("symbol above 255");
                    w.push_back(static_cast<Colour>(s));
                }
            }
            const auto sq = find_square(w);
            if (json_out) {
                std::cout << (sq ? "{\"start\": " + std::to_string(sq->start) +
                                       ", \"half_len\": " + std::to_string(sq->half_len) + "}\n"
                                 : std::string("{\"square\": null}\n"));
            } else {
                std::cout << (sq ? "square at " + std::to_string(sq->start) + ", half length " +
                                       std::to_string(sq->half_len) + "\n"
                                 : std::string("square-free\n"));
            }
            return sq ? exit_no : exit_ok;
        }
    } catch (const BudgetExhausted& e) {
        log(Level::error, e.what());
        std::cout << "INDETERMINATE\n";
        return exit_budget;
    } catch (const InternalError& e) {
        log(Level::error, std::string("internal error: ") + e.what());
        return exit_input;
    } catch (const std::invalid_argument& e) {
        log(Level::error, e.what());
        return exit_input;
    } catch (const std::exception& e) {
        log(Level::error, e.what());
        return exit_input;
    }
    return exit_input;
}
