#include "coxpoly/catalog_file.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "coxpoly/expr.hpp"

namespace coxpoly {

namespace {

std::string join(const std::vector<int>& v, const char* sep) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
    return out;
}

std::vector<int> ints(const std::string& text, char sep, int lineno, int col) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, sep)) {
        if (tok.empty()) continue;
        try {
            size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::logic_error&) {
            throw ParseError("bad integer '" + tok + "'", lineno, col);
        }
    }
    return out;
}

std::string strip(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

}  // namespace

void write_catalog(std::ostream& os, const std::vector<CatalogEntry>& entries) {
    os << "coxpoly-catalog " << kCatalogVersion << "\n";
    for (const auto& e : entries) {
        os << "\nentry\n";
        os << "dim " << e.dim << "\n";
        os << write_gale(e.gale) << "\n";
        os << "signature " << e.signature.n_plus << " " << e.signature.n_minus << " " << e.signature.n_zero << "\n";
        os << "facets " << join(e.assignment.node_to_facet, " ") << "\n";
        for (size_t i = 0; i < e.assignment.lanner.size(); ++i)
            os << "lanner " << join(e.assignment.lanner[i], ",") << " face=" << e.assignment.lanner_to_face[i] << "\n";
        os << write_diagram(e.diagram);
        os << "end\n";
    }
}

std::string write_catalog(const std::vector<CatalogEntry>& entries) {
    std::ostringstream os;
    write_catalog(os, entries);
    return os.str();
}

std::vector<CatalogEntry> read_catalog(std::istream& in) {
    std::vector<CatalogEntry> out;
    std::string raw;
    int lineno = 0;
    bool header = false, inside = false;
    CatalogEntry cur;
    std::string diagram_text;
    int entry_line = 0, diagram_line = 0;
    bool have_gale = false;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (!header) {
            int version = 0;
            if (kw != "coxpoly-catalog" || !(ls >> version)) throw ParseError("expected 'coxpoly-catalog <version>'", lineno, 1);
            if (version != kCatalogVersion)
                throw ParseError("unsupported catalog version " + std::to_string(version), lineno, 17);
            header = true;
            continue;
        }
        if (!inside) {
            if (kw != "entry") throw ParseError("expected 'entry'", lineno, 1);
            inside = true;
            cur = CatalogEntry();
            diagram_text.clear();
            entry_line = lineno;
            diagram_line = 0;
            have_gale = false;
            continue;
        }
        if (kw == "end") {
            if (!have_gale) throw ParseError("entry has no gale line", entry_line, 1);
            if (diagram_line == 0) throw ParseError("entry has no diagram", entry_line, 1);
            try {
                cur.diagram = parse_diagram(diagram_text);
            } catch (const ParseError& e) {
                std::string msg = e.what();
                throw ParseError(msg.substr(0, msg.find(" at line")), diagram_line + e.line - 1, e.column);
            }
            if (cur.diagram.order() != cur.gale.facets())
                throw ParseError("diagram order does not match the Gale diagram", diagram_line, 1);
            if (cur.dim != cur.gale.dim()) throw ParseError("dim does not match the Gale diagram", entry_line, 1);
            auto& a = cur.assignment;
            if (a.node_to_facet.size() != static_cast<size_t>(cur.diagram.order()))
                throw ParseError("facet assignment has the wrong length", entry_line, 1);
            out.push_back(std::move(cur));
            inside = false;
        } else if (diagram_line != 0 || kw == "diagram") {
            if (diagram_line == 0) diagram_line = lineno;
            diagram_text += line + "\n";
        } else if (kw == "dim") {
            if (!(ls >> cur.dim)) throw ParseError("bad dim", lineno, 5);
        } else if (kw == "gale") {
            try {
                cur.gale = parse_gale(line);
            } catch (const ParseError& e) {
                std::string msg = e.what();
                throw ParseError(msg.substr(0, msg.find(" at line")), lineno, e.column);
            }
            have_gale = true;
        } else if (kw == "signature") {
            auto& s = cur.signature;
            if (!(ls >> s.n_plus >> s.n_minus >> s.n_zero)) throw ParseError("bad signature", lineno, 11);
        } else if (kw == "facets") {
            std::string rest;
            std::getline(ls, rest);
            cur.assignment.node_to_facet = ints(rest, ' ', lineno, 8);
        } else if (kw == "lanner") {
            std::string set, face;
            if (!(ls >> set >> face) || face.rfind("face=", 0) != 0) throw ParseError("expected 'lanner <nodes> face=<i>'", lineno, 1);
            cur.assignment.lanner.push_back(ints(set, ',', lineno, 8));
            auto f = ints(face.substr(5), ',', lineno, static_cast<int>(line.find(face)) + 6);
            if (f.size() != 1) throw ParseError("bad face index", lineno, static_cast<int>(line.find(face)) + 6);
            cur.assignment.lanner_to_face.push_back(f[0]);
        } else {
            throw ParseError("unknown record '" + kw + "'", lineno, 1);
        }
    }
    if (!header) throw ParseError("empty catalog", std::max(lineno, 1), 1);
    if (inside) throw ParseError("unterminated entry", entry_line, 1);
    return out;
}

CatalogDiff diff_catalogs(const std::vector<CatalogEntry>& a, const std::vector<CatalogEntry>& b) {
    CatalogDiff d;
    std::vector<bool> used(b.size(), false);
    std::vector<std::vector<int>> codes_b;
    for (const auto& e : b) codes_b.push_back(canonical_form(e.diagram).code);
    for (const auto& e : a) {
        auto code = canonical_form(e.diagram).code;
        bool found = false;
        for (size_t j = 0; j < b.size() && !found; ++j) {
            if (used[j] || codes_b[j] != code || !congruent(e.gale, b[j].gale)) continue;
            if (is_isomorphic(e.diagram, b[j].diagram, true)) found = used[j] = true;
        }
        if (!found) d.only_a.push_back(e);
    }
    for (size_t j = 0; j < b.size(); ++j)
        if (!used[j]) d.only_b.push_back(b[j]);
    return d;
}

const std::map<std::string, int>& expected_counts() {
    static const std::map<std::string, int> table{
        {"G1", 3},  {"G2", 29}, {"G3", 0},  {"G4", 8},  {"G5", 0},  {"G6", 0},  {"G7", 0},
        {"G8", 0},  {"G9", 15}, {"G10", 1}, {"G11", 0}, {"G12", 0}, {"G13", 2}, {"G14", 1},
        {"G15", 0}, {"G16", 0}, {"G17", 0}, {"G18", 0}, {"G19", 0}, {"G20", 0},
    };
    return table;
}

CountSummary summarize(const std::vector<CatalogEntry>& entries, int n_min, int n_max) {
    CountSummary s;
    for (int n = n_min; n <= n_max; ++n) {
        s.per_dim[n] = 0;
        for (const auto& g : enumerate_admissible(n)) s.per_gale[g.name] = 0;
    }
    for (const auto& e : entries) {
        ++s.per_dim[e.dim];
        ++s.per_gale[e.gale.name];
    }
    return s;
}

}  // namespace coxpoly
