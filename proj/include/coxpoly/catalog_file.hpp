#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "coxpoly/search.hpp"

namespace coxpoly {

inline constexpr int kCatalogVersion = 1;

// Line-oriented text: a "coxpoly-catalog <version>" header, then one block per entry
// from "entry" to "end" holding the Gale line, signature, assignment and diagram lines.
void write_catalog(std::ostream& os, const std::vector<CatalogEntry>& entries);
std::string write_catalog(const std::vector<CatalogEntry>& entries);
// Throws ParseError with the line of the offending record.
std::vector<CatalogEntry> read_catalog(std::istream& in);

struct CatalogDiff {
    std::vector<CatalogEntry> only_a, only_b;
    bool equal() const { return only_a.empty() && only_b.empty(); }
};

// Entries match when their Gale diagrams are congruent and their diagrams are
// isomorphic with equal dotted weights.
CatalogDiff diff_catalogs(const std::vector<CatalogEntry>& a, const std::vector<CatalogEntry>& b);

// Published number of polytopes per Gale diagram G1..G20.
const std::map<std::string, int>& expected_counts();

struct CountSummary {
    std::map<int, int> per_dim;
    std::map<std::string, int> per_gale;  // every admissible Gale diagram of the dimensions run
};
CountSummary summarize(const std::vector<CatalogEntry>& entries, int n_min, int n_max);

}  // namespace coxpoly
