#ifndef NONREP_CERTIFY_HPP
#define NONREP_CERTIFY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nonrep/graph.hpp"
#include "nonrep/solver.hpp"

namespace nonrep {

/// An enumeration or composition grew past its configured limit.
class SizeGuardExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Colour words of all simple paths that start at the attachment vertex of a
/// component and stay inside it, the single-vertex path included. Every word
/// starts with `root`; the set is sorted and prefix-closed.
struct BoundaryProfile {
    Colour root = 0;
    std::vector<Word> words;

    friend auto operator<=>(const BoundaryProfile&, const BoundaryProfile&) = default;
};

/// Absent when c is repetitive on the component.
std::optional<BoundaryProfile> profile_of(const Graph& component, Vertex root, const VertexColouring& c);

/// How profile sets are reduced during composition.
enum class DedupMode {
    /// Every colouring is its own profile (tiny instances only).
    none,
    /// Identical word sets are merged.
    exact,
    /// Additionally, a word set that contains another one is dropped: anything
    /// compatible with the larger set is compatible with the smaller.
    subsumption,
};

std::string_view to_string(DedupMode m);
std::optional<DedupMode> parse_dedup_mode(std::string_view s);

struct EnumerateOptions {
    /// Largest k^n the exhaustive enumeration accepts.
    std::uint64_t max_colourings = 50'000'000;
    DedupMode dedup = DedupMode::exact;
};

/// A profile together with one component colouring that realises it.
struct RealisedProfile {
    BoundaryProfile profile;
    VertexColouring colouring;
};

/// Profiles over every non-repetitive k-colouring of the component, sorted,
/// reduced per opts.dedup. Throws SizeGuardExceeded when k^n is too large.
std::vector<RealisedProfile> enumerate_realised_profiles(const Graph& component, Vertex root, unsigned k,
                                                         const EnumerateOptions& opts = {});

/// The distinct profiles of enumerate_realised_profiles with exact dedup.
std::vector<BoundaryProfile> enumerate_profiles(const Graph& component, Vertex root, unsigned k,
                                                const EnumerateOptions& opts = {});

/// Profile of the component made by a new centre vertex joined to the root of
/// every child. Absent when some path through the centre is repetitive:
/// (centre)·v, or reverse(u)·(centre)·v with u, v from different children.
std::optional<BoundaryProfile> compose_star(Colour centre, std::span<const BoundaryProfile> children);

/// Component shape hanging off one kernel vertex (the hook). When
/// root_is_hook, the shape's root vertex is the hook itself; otherwise the
/// root is joined to the hook by a single edge.
struct BranchShape {
    Graph component;
    Vertex root = 0;
    bool root_is_hook = false;
};

struct BranchSlot {
    Vertex hook = 0;
    std::size_t shape = 0;
    /// Graph vertex of each shape vertex.
    std::vector<Vertex> vertices;
};

/// A graph split into a kernel and branches that each meet the rest of the
/// graph in a single kernel vertex.
struct Hierarchy {
    std::string name;
    Graph graph;
    std::vector<Vertex> kernel;
    std::vector<BranchShape> shapes;
    std::vector<BranchSlot> slots;
    /// Kernel vertices that can be permuted together with their branches by
    /// an automorphism. Each group is a contiguous run of `kernel`.
    std::vector<std::vector<Vertex>> interchangeable;
};

/// Throws GraphError when the slots do not partition the non-kernel vertices,
/// the edges do not match the declared structure, or a group is not
/// interchangeable.
void validate(const Hierarchy& h);

Hierarchy theorem2_hierarchy();
Hierarchy theorem3_hierarchy();
Hierarchy theorem3_double_fan_hierarchy();

struct CertifyOptions {
    DedupMode dedup = DedupMode::subsumption;
    std::uint64_t max_colourings = 50'000'000;
    /// Largest number of partial-star states kept at one composition level.
    std::uint64_t max_states = 2'000'000;
    /// Branch-placement nodes in the kernel search; exhausting it gives
    /// indeterminate.
    std::optional<std::uint64_t> node_budget;
    /// Run the independent second method where one exists.
    bool cross_check = true;
};

struct CertificateCounts {
    std::uint64_t component_colourings = 0;
    std::uint64_t profiles = 0;
    std::uint64_t compositions_checked = 0;
    std::vector<std::uint64_t> states_per_level;
    std::uint64_t kernel_colourings = 0;
    std::uint64_t search_nodes = 0;
};

struct HierarchyOutcome {
    Verdict verdict = Verdict::indeterminate;
    std::optional<VertexColouring> colouring;
    CertificateCounts counts;
    std::string note;
};

/// Exact decision for k-colourability of a hierarchy: every kernel colouring
/// up to colour renaming and group symmetry, then branch profiles placed slot
/// by slot, checking every path through the kernel between placed branches.
/// A colouring found is verified on the whole graph.
HierarchyOutcome solve_hierarchy(const Hierarchy& h, unsigned k, const CertifyOptions& opts = {});

enum class CertifyTarget { theorem2, theorem3, theorem3_double_fan };

std::string_view to_string(CertifyTarget t);
std::optional<CertifyTarget> parse_certify_target(std::string_view s);

struct Certificate {
    std::string graph_id;
    unsigned k = 0;
    Verdict verdict = Verdict::indeterminate;
    std::string method;
    DedupMode dedup = DedupMode::subsumption;
    CertificateCounts counts;
    /// Name of each cross-check -> its outcome.
    std::map<std::string, std::string> cross_checks;
    std::optional<VertexColouring> witness;
    double elapsed_seconds = 0.0;
    std::string note;
};

/// theorem2: fan profiles composed child by child around r, with dedup after
/// each child; cross-checked by the hierarchy search. theorem3 and its
/// variant: hierarchy search. Size guards yield indeterminate.
Certificate certify(CertifyTarget target, unsigned k, const CertifyOptions& opts = {});

}  // namespace nonrep

#endif
