#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coxpoly {

// Standard Gale diagram: labeled vertices of a regular k-gon, k odd.
// Vertex i with label mu_i owns mu_i consecutive facet indices.
struct GaleDiagram {
    std::string name;
    std::vector<int> labels;

    int k() const { return static_cast<int>(labels.size()); }
    int facets() const;
    int dim() const { return facets() - 3; }
    int window() const { return (k() - 1) / 2; }
    int first_facet(int vertex) const;
    int vertex_of(int facet) const;
};

struct GaleValidation {
    bool ok = true;
    std::vector<std::string> violations;
};

GaleValidation validate(const GaleDiagram& g, int n);

struct MissingFace {
    int first_vertex = 0;       // start of the generating arc
    std::vector<int> facets;    // sorted facet indices
    int size() const { return static_cast<int>(facets.size()); }
};

// One face per arc of (k-1)/2 consecutive vertices, in order of the arc start.
std::vector<MissingFace> missing_faces(const GaleDiagram& g);

// True iff the facets in J meet in a face: the vertices still carrying a facet
// outside J have the origin in the interior of their convex hull.
bool face_test(const GaleDiagram& g, const std::vector<int>& j);

bool congruent(const GaleDiagram& a, const GaleDiagram& b);

// Congruence classes for dimension n, named G1..G20 for 4 <= n <= 7.
std::vector<GaleDiagram> enumerate_admissible(int n);
// All admissible diagrams for 4..7 in id order.
const std::vector<GaleDiagram>& admissible_table();
// Lookup by id ("G14"); throws std::invalid_argument if unknown.
const GaleDiagram& gale_by_name(const std::string& name);

std::string write_gale(const GaleDiagram& g);
GaleDiagram parse_gale(const std::string& line);
std::vector<GaleDiagram> read_gales(std::istream& in);

}  // namespace coxpoly
