#pragma once

#include <atomic>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coxpoly/diagram.hpp"
#include "coxpoly/gale.hpp"

namespace coxpoly {

// Label class standing for every angle label m >= 7 during combinatorial search.
inline constexpr int kUnbounded = 7;
inline constexpr int kDefaultMaxMult = 101;

// Consecutive Gale vertices with the given labels; every run of `window`
// consecutive vertices is a missing face.
struct ArcSpec {
    std::vector<int> labels;
    int window = 2;

    int nodes() const;
    std::vector<std::vector<int>> windows() const;  // node sets, nodes numbered along the arc
    std::string to_string() const;                  // "x1,...,xl:w"
    static ArcSpec parse(const std::string& text);  // throws ParseError
};

struct SearchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// A determinant that is not quadratic in an edge weight, or similar broken invariant.
struct InternalSearchError : std::logic_error {
    using std::logic_error::logic_error;
};

// Constraints for attaching one node (the last node of the extended diagram).
struct SearchConstraints {
    // Node sets that must be Lanner once all their nodes exist.
    std::vector<std::vector<int>> required;
    // Every subdiagram through the new node that contains no required set must be elliptic.
    bool faces_elliptic = true;
    // No subdiagram through the new node may be parabolic in the matrix sense.
    bool forbid_parabolic = true;
    // Orders of Lanner subdiagrams through the new node that are rejected unless required.
    std::vector<int> forbidden_lanner_orders;
    // Label codes allowed on pairs (i, new); pairs not listed use default_labels.
    std::map<int, std::vector<int>> allowed;
    std::vector<int> default_labels{2, 3, 4, 5};
    // The new node must be joined to at least one old node.
    bool connected = true;
    // Node sets (of the extended diagram) whose determinant must vanish.
    std::vector<std::vector<int>> det_zero;
    // Edge (i, new) whose angle label is solved from the first det_zero condition
    // instead of being enumerated; roots must be cos(pi/m) with 2 <= m <= max_mult.
    std::optional<int> solved_neighbour;
    int max_mult = kDefaultMaxMult;
};

// All one-node extensions of s meeting the constraints. Nodes of s keep their identity,
// so extensions differing only by an automorphism of s are listed separately.
// Sorted by canonical form, then by the labels of the new edges.
std::vector<CoxeterDiagram> attach_candidates(const CoxeterDiagram& s, const SearchConstraints& c);

// Diagrams realising an arc whose windows all have order at least 4, up to isomorphism.
// Throws SearchError for windows of order at most 3 (unbounded labels).
std::vector<CoxeterDiagram> search_arc(const ArcSpec& spec);

// One attachment step of a staged arc search: a partial arc diagram and the constraints
// for its next node.
struct AttachInstance {
    CoxeterDiagram base;
    SearchConstraints constraints;
};

// The attachment steps of search_arc(spec) producing diagrams of order at most max_order,
// starting from every labeling of the catalog Lanner diagrams on the first window.
std::vector<AttachInstance> arc_attach_instances(const ArcSpec& spec, int max_order);

struct DegenerateWeightError : SearchError {
    DegenerateWeightError() : SearchError("identically degenerate: determinant does not depend on the weight") {}
};

// Real roots (ascending) of det = 0 as a function of the weight w on edge i-j,
// with the Gram entry at (i, j) set to -w.
std::vector<AlgebraicReal> solve_unknown_weight(const CoxeterDiagram& s, int i, int j);
// The quadratic det(w) = a w^2 + b w + c as {c, b, a}.
std::vector<AlgebraicReal> weight_polynomial(const CoxeterDiagram& s, int i, int j);

struct Assignment {
    std::vector<int> node_to_facet;
    std::vector<std::vector<int>> lanner;  // Lanner node sets, sorted
    std::vector<int> lanner_to_face;       // index into missing_faces(G)
};

// Signature (n,1,2) and a node-to-facet bijection carrying the Lanner subdiagrams
// exactly onto the missing faces; nullopt otherwise. Throws std::invalid_argument when the
// order differs from the facet count and SymbolicDiagramError for unknown weights.
std::optional<Assignment> verify_polytope(const CoxeterDiagram& s, const GaleDiagram& g);

struct CatalogEntry {
    int dim = 0;
    GaleDiagram gale;
    CoxeterDiagram diagram;
    Signature signature;
    Assignment assignment;
};

// Declarative plan for one Gale diagram.
struct Strategy {
    std::string gale;
    std::vector<int> vertex_order;  // Gale vertices in attachment order; the seed arc comes first
    int seed_length = 0;            // number of leading vertices forming the seed arc
    // Arc axiom: the Gale diagram contains an arc with these labels, window 1, known to be unrealisable.
    std::vector<int> trusted_empty_arc;
    std::vector<std::string> notes;
};

const Strategy& strategy_for(const std::string& gale_name);
Strategy parse_strategy(const std::string& text);
std::string write_strategy(const Strategy& s);

struct SearchOptions {
    int jobs = 1;
    int max_mult = kDefaultMaxMult;
    bool corroborate = false;        // search even where an arc axiom applies
    std::ostream* trace = nullptr;   // JSON lines
};

std::vector<CatalogEntry> enumerate_polytopes(const GaleDiagram& g, const SearchOptions& opt = {});
std::vector<CatalogEntry> run_classification(int n_min, int n_max, const SearchOptions& opt = {});

// Deterministic order: dimension, Gale id, canonical form, weights.
bool entry_less(const CatalogEntry& a, const CatalogEntry& b);
int gale_id(const std::string& name);

}  // namespace coxpoly
