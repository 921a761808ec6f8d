#ifndef NONREP_IO_HPP
#define NONREP_IO_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nonrep/certify.hpp"
#include "nonrep/gadgets.hpp"
#include "nonrep/graph.hpp"
#include "nonrep/planarmap.hpp"

namespace nonrep {

/// Malformed JSON or a document of the wrong shape.
class FormatError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// {"n": int, "edges": [[u, v], ...], "names": {role: vertex}?,
///  "embedding": {"rotation": [[...], ...], "outer_face": [...]}?}
struct GraphFile {
    Graph graph;
    std::map<std::string, Vertex> names;
    std::optional<PlanarMap> embedding;

    friend bool operator==(const GraphFile&, const GraphFile&) = default;
};

GraphFile graph_file_of(const Gadget& g);

GraphFile parse_graph_file(std::string_view text);
std::string dump_graph_file(const GraphFile& f);

/// {"k": int, "colours": [...]}
VertexColouring parse_colouring(std::string_view text);
std::string dump_colouring(const VertexColouring& c);

/// {"n": int, "rotation": [[...], ...], "outer_face": [...]}
PlanarMap parse_embedding(std::string_view text);
std::string dump_embedding(const PlanarMap& m);

/// {"k", "colours" (per face), "faces" (vertex walks), "outer_face", "dual_edges", "verified"}
std::string dump_face_colouring(const OuterplanarFaceColouring& fc);
FaceColouring parse_face_colouring(std::string_view text);

/// {"vertices": [...], "colour_word": [...]}
std::string dump_witness(const PathWitness& w, const VertexColouring& c);

std::string dump_certificate(const Certificate& c);
Certificate parse_certificate(std::string_view text);

/// {"word": [...]}
std::string dump_word(const Word& w);
Word parse_word(std::string_view text);

}  // namespace nonrep

#endif
