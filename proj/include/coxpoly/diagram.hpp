#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "coxpoly/algebraic.hpp"

namespace coxpoly {

struct EdgeLabel {
    enum class Kind : std::uint8_t { Orthogonal, Angle, Bold, Dotted };

    Kind kind = Kind::Orthogonal;
    int m = 2;  // meaningful for Angle
    std::optional<AlgebraicReal> weight;  // Dotted only; must exceed 1

    static EdgeLabel orthogonal() { return {}; }
    static EdgeLabel angle(int m);  // m == 2 gives Orthogonal
    static EdgeLabel bold() { return {Kind::Bold, 0, std::nullopt}; }
    static EdgeLabel dotted(std::optional<AlgebraicReal> w = std::nullopt);

    bool is_orthogonal() const { return kind == Kind::Orthogonal; }
    bool is_dotted() const { return kind == Kind::Dotted; }
    bool known() const { return kind != Kind::Dotted || weight.has_value(); }
    // Edge weight: 0, cos(pi/m), 1, or the dotted weight. Throws for symbolic dotted edges.
    AlgebraicReal value() const;
    // Combinatorial code: 2 orthogonal, m for angles, -1 bold, -2 dotted.
    int code() const;
    bool same_shape(const EdgeLabel& o) const { return code() == o.code(); }
};

class CoxeterDiagram {
public:
    explicit CoxeterDiagram(int order = 0, std::string name = {});

    int order() const { return d_; }
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    const std::string& node_name(int i) const { return node_names_[i]; }
    void set_node_name(int i, std::string n) { node_names_[i] = std::move(n); }

    const EdgeLabel& edge(int i, int j) const { return edges_[idx(i, j)]; }
    void set_edge(int i, int j, EdgeLabel e);
    int code(int i, int j) const { return i == j ? 0 : edge(i, j).code(); }

    bool is_concrete() const;
    bool is_connected() const;
    CoxeterDiagram subdiagram(const std::vector<int>& nodes) const;
    CoxeterDiagram without(const std::vector<int>& nodes) const;
    CoxeterDiagram permuted(const std::vector<int>& perm) const;  // node i -> perm[i]
    // Adds one node; returns its index.
    int add_node(std::string name = {});

    bool operator==(const CoxeterDiagram& o) const;

private:
    size_t idx(int i, int j) const { return static_cast<size_t>(i) * d_ + j; }
    int d_;
    std::string name_;
    std::vector<std::string> node_names_;
    std::vector<EdgeLabel> edges_;
};

struct Signature {
    int n_plus = 0, n_minus = 0, n_zero = 0;
    bool operator==(const Signature& o) const = default;
    std::string to_string() const;
};

enum class DiagramClass { Elliptic, Parabolic, Lanner, Hyperbolic, Superhyperbolic };
const char* to_string(DiagramClass c);

struct SymbolicDiagramError : std::runtime_error {
    SymbolicDiagramError() : std::runtime_error("symbolic diagram: a dotted edge has no weight") {}
};

using Matrix = std::vector<std::vector<AlgebraicReal>>;

Matrix gram_matrix(const CoxeterDiagram& s);
AlgebraicReal determinant(const Matrix& m);
AlgebraicReal determinant(const CoxeterDiagram& s);
Signature signature(const Matrix& m);
Signature signature(const CoxeterDiagram& s);
// Classification by exact signatures of the diagram and its maximal subdiagrams.
// Degenerate positive semidefinite matrices are reported as Parabolic.
DiagramClass classify(const CoxeterDiagram& s);
// Matrix sense: positive semidefinite and degenerate on every connected component.
bool is_matrix_parabolic(const CoxeterDiagram& s);

// Inclusion-minimal non-elliptic subdiagrams that are Lannér (orders 2..5), sorted.
// Works on symbolic diagrams: any dotted pair counts as an order-2 Lannér diagram.
std::vector<std::vector<int>> lanner_subdiagrams(const CoxeterDiagram& s);

// det(S) / det(S \ T); throws std::domain_error when det(S \ T) = 0.
AlgebraicReal local_det(const CoxeterDiagram& s, const std::vector<int>& t);
// 1 - (cos^2(pi/p) + cos^2(pi/q) + 2cos(pi/p)cos(pi/q)cos(pi/r)) / sin^2(pi/r).
AlgebraicReal d_pqr(int p, int q, int r);
// Triangle v, a, b with [v,a] = p, [v,b] = q, [a,b] = r; v is node 0.
CoxeterDiagram lanner_triangle(int p, int q, int r);

// Label-preserving isomorphism (dotted weights compared only when requested).
std::optional<std::vector<int>> is_isomorphic(const CoxeterDiagram& a, const CoxeterDiagram& b,
                                              bool compare_weights = false);
struct CanonicalForm {
    std::vector<int> code;  // order followed by the upper triangle of label codes
    std::vector<int> perm;  // perm[i] = canonical position of node i
    bool operator==(const CanonicalForm& o) const { return code == o.code; }
    bool operator<(const CanonicalForm& o) const { return code < o.code; }
};
// Canonical labeling on label codes; dotted weights are ignored.
CanonicalForm canonical_form(const CoxeterDiagram& s);
std::string canonical_string(const CoxeterDiagram& s);

// Text format: diagram/nodes/edge lines. Multiple diagrams may share a stream.
std::vector<CoxeterDiagram> read_diagrams(std::istream& in);
CoxeterDiagram parse_diagram(const std::string& text);
std::string write_diagram(const CoxeterDiagram& s);
std::string to_dot(const CoxeterDiagram& s);

}  // namespace coxpoly
