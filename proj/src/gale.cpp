#include "coxpoly/gale.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "coxpoly/expr.hpp"

namespace coxpoly {

int GaleDiagram::facets() const { return std::accumulate(labels.begin(), labels.end(), 0); }

int GaleDiagram::first_facet(int vertex) const {
    return std::accumulate(labels.begin(), labels.begin() + vertex, 0);
}

int GaleDiagram::vertex_of(int facet) const {
    for (int v = 0, acc = 0; v < k(); ++v) {
        acc += labels[v];
        if (facet < acc) return v;
    }
    throw std::out_of_range("facet index out of range");
}

namespace {

int arc_sum(const GaleDiagram& g, int start, int len) {
    int s = 0;
    for (int i = 0; i < len; ++i) s += g.labels[(start + i) % g.k()];
    return s;
}

std::string join(const std::vector<int>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out;
}

}  // namespace

GaleValidation validate(const GaleDiagram& g, int n) {
    GaleValidation r;
    auto fail = [&](std::string msg) {
        r.ok = false;
        r.violations.push_back(std::move(msg));
    };
    if (g.k() < 3 || g.k() % 2 == 0) fail("k must be odd and at least 3");
    for (int x : g.labels)
        if (x < 1) fail("labels must be positive");
    if (!r.ok) return r;
    if (g.facets() != n + 3)
        fail("labels sum to " + std::to_string(g.facets()) + ", expected " + std::to_string(n + 3));
    for (int i = 0; i < g.k(); ++i)
        if (arc_sum(g, i, g.window()) < 2)
            fail("arc of " + std::to_string(g.window()) + " vertices from vertex " + std::to_string(i) + " sums to less than 2");
    return r;
}

std::vector<MissingFace> missing_faces(const GaleDiagram& g) {
    GaleValidation v = validate(g, g.dim());
    if (!v.ok) throw std::invalid_argument("invalid Gale diagram: " + v.violations.front());
    std::vector<MissingFace> out;
    for (int s = 0; s < g.k(); ++s) {
        MissingFace f;
        f.first_vertex = s;
        for (int i = 0; i < g.window(); ++i) {
            int vtx = (s + i) % g.k();
            for (int t = 0; t < g.labels[vtx]; ++t) f.facets.push_back(g.first_facet(vtx) + t);
        }
        std::sort(f.facets.begin(), f.facets.end());
        out.push_back(std::move(f));
    }
    return out;
}

bool face_test(const GaleDiagram& g, const std::vector<int>& j) {
    // Vertices keeping at least one facet outside J, by angular position 2*pi*i/k.
    std::vector<int> left(g.labels);
    for (int f : j) --left[g.vertex_of(f)];
    std::vector<int> pts;
    for (int i = 0; i < g.k(); ++i)
        if (left[i] > 0) pts.push_back(i);
    if (pts.empty()) return false;
    // The origin is interior iff every angular gap between consecutive points is below pi.
    for (size_t i = 0; i < pts.size(); ++i) {
        int gap = (pts[(i + 1) % pts.size()] - pts[i] + g.k()) % g.k();
        if (gap == 0) gap = g.k();
        if (2 * gap >= g.k()) return false;
    }
    return true;
}

bool congruent(const GaleDiagram& a, const GaleDiagram& b) {
    if (a.k() != b.k()) return false;
    int k = a.k();
    for (int dir : {1, -1})
        for (int s = 0; s < k; ++s) {
            bool same = true;
            for (int i = 0; i < k && same; ++i) same = a.labels[i] == b.labels[((s + dir * i) % k + k) % k];
            if (same) return true;
        }
    return false;
}

const std::vector<GaleDiagram>& admissible_table() {
    static const std::vector<GaleDiagram> table{
        {"G1", {3, 2, 2}},          {"G2", {1, 3, 1, 1, 1}},    {"G3", {2, 2, 1, 1, 1}},    {"G4", {2, 1, 2, 1, 1}},
        {"G5", {2, 2, 4}},          {"G6", {3, 3, 2}},          {"G7", {1, 3, 1, 2, 1}},    {"G8", {3, 2, 1, 1, 1}},
        {"G9", {1, 4, 1, 1, 1}},    {"G10", {2, 2, 2, 1, 1}},   {"G11", {5, 2, 2}},         {"G12", {2, 3, 4}},
        {"G13", {1, 4, 1, 1, 2}},   {"G14", {1, 1, 2, 3, 2}},   {"G15", {1, 1, 3, 2, 2}},   {"G16", {3, 1, 3, 1, 1}},
        {"G17", {2, 3, 5}},         {"G18", {2, 4, 4}},         {"G19", {1, 1, 4, 1, 3}},   {"G20", {1, 1, 3, 2, 3}},
    };
    return table;
}

const GaleDiagram& gale_by_name(const std::string& name) {
    for (const auto& g : admissible_table())
        if (g.name == name) return g;
    throw std::invalid_argument("unknown Gale diagram '" + name + "'");
}

namespace {

void compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (parts == 0) {
        if (total == 0) out.push_back(cur);
        return;
    }
    for (int x = 1; x <= total - (parts - 1); ++x) {
        cur.push_back(x);
        compositions(total - x, parts - 1, cur, out);
        cur.pop_back();
    }
}

bool admissible(const GaleDiagram& g, int n) {
    if (!validate(g, n).ok) return false;
    for (int i = 0; i < g.k(); ++i)
        if (arc_sum(g, i, g.window()) > 5) return false;
    if (g.k() == 3) return std::count(g.labels.begin(), g.labels.end(), 2) > 0;
    for (int i = 0; i < g.k(); ++i)
        if (g.labels[i] == 1 && g.labels[(i + 1) % g.k()] == 1) return true;
    return false;
}

}  // namespace

std::vector<GaleDiagram> enumerate_admissible(int n) {
    std::vector<GaleDiagram> found;
    for (int k : {3, 5}) {
        std::vector<std::vector<int>> all;
        std::vector<int> cur;
        compositions(n + 3, k, cur, all);
        for (auto& labels : all) {
            GaleDiagram g{"", labels};
            if (!admissible(g, n)) continue;
            if (std::any_of(found.begin(), found.end(), [&](const GaleDiagram& h) { return congruent(g, h); })) continue;
            found.push_back(g);
        }
    }
    // Use the reference labeling and id where one exists.
    for (auto& g : found)
        for (const auto& ref : admissible_table())
            if (congruent(g, ref)) g = ref;
    auto id = [](const GaleDiagram& g) { return g.name.empty() ? 1000 : std::stoi(g.name.substr(1)); };
    std::stable_sort(found.begin(), found.end(), [&](const auto& a, const auto& b) { return id(a) < id(b); });
    int extra = 0;
    for (auto& g : found)
        if (g.name.empty()) g.name = "n" + std::to_string(n) + "_" + std::to_string(++extra);
    return found;
}

std::string write_gale(const GaleDiagram& g) {
    return "gale " + g.name + " k=" + std::to_string(g.k()) + " labels=" + join(g.labels) + " dim=" + std::to_string(g.dim());
}

GaleDiagram parse_gale(const std::string& line) {
    std::istringstream in(line);
    std::string kw, name, tok;
    if (!(in >> kw) || kw != "gale") throw ParseError("expected 'gale'", 1, 1);
    if (!(in >> name)) throw ParseError("expected a name", 1, 6);
    GaleDiagram g{name, {}};
    int k = -1, dim = -1;
    while (in >> tok) {
        int col = static_cast<int>(line.find(tok)) + 1;
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value", 1, col);
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        try {
            if (key == "k") {
                k = std::stoi(val);
            } else if (key == "dim") {
                dim = std::stoi(val);
            } else if (key == "labels") {
                std::stringstream ls(val);
                std::string x;
                while (std::getline(ls, x, ',')) g.labels.push_back(std::stoi(x));
            } else {
                throw ParseError("unknown key '" + key + "'", 1, col);
            }
        } catch (const std::logic_error&) {
            throw ParseError("bad value for '" + key + "'", 1, col + static_cast<int>(eq) + 1);
        }
    }
    if (g.labels.empty()) throw ParseError("missing labels", 1, 1);
    if (k >= 0 && k != g.k()) throw ParseError("k does not match the number of labels", 1, 1);
    if (dim >= 0 && dim != g.dim()) throw ParseError("dim does not match the label sum", 1, 1);
    return g;
}

std::vector<GaleDiagram> read_gales(std::istream& in) {
    std::vector<GaleDiagram> out;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(parse_gale(line));
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()).substr(0, std::string(e.what()).find(" at line")), lineno, e.column);
        }
    }
    return out;
}

}  // namespace coxpoly
