#include "oracle.hpp"

#include <algorithm>
#include <map>

#include "coxpoly/diagram.hpp"

namespace oracle {

using namespace coxpoly;

namespace {

struct Memo {
    std::map<std::string, DiagramClass> cls;
    std::map<std::string, bool> parabolic;

    DiagramClass classify_of(const CoxeterDiagram& s) {
        auto key = canonical_string(s);
        auto it = cls.find(key);
        if (it == cls.end()) it = cls.emplace(key, classify(s)).first;
        return it->second;
    }
    bool parabolic_of(const CoxeterDiagram& s) {
        auto key = canonical_string(s);
        auto it = parabolic.find(key);
        if (it == parabolic.end()) it = parabolic.emplace(key, is_matrix_parabolic(s)).first;
        return it->second;
    }
};

Memo& memo() {
    static Memo m;
    return m;
}

std::vector<int> row_of(const CoxeterDiagram& t) {
    int v = t.order() - 1;
    std::vector<int> row;
    for (int i = 0; i < v; ++i) row.push_back(t.code(i, v));
    return row;
}

bool admissible(const CoxeterDiagram& t, const SearchConstraints& c) {
    int v = t.order() - 1;
    if (c.connected) {
        bool joined = false;
        for (int i = 0; i < v; ++i) joined |= t.code(i, v) != 2;
        if (!joined) return false;
    }
    for (unsigned m = 1; m < (1u << v); ++m) {
        std::vector<int> nodes;
        for (int i = 0; i < v; ++i)
            if (m >> i & 1) nodes.push_back(i);
        nodes.push_back(v);
        CoxeterDiagram sub = t.subdiagram(nodes);
        bool required = false, contains = false;
        for (const auto& q : c.required) {
            if (q == nodes) required = true;
            if (std::includes(nodes.begin(), nodes.end(), q.begin(), q.end())) contains = true;
        }
        if (required) {
            if (memo().classify_of(sub) != DiagramClass::Lanner) return false;
            continue;
        }
        if (contains) continue;
        DiagramClass k = memo().classify_of(sub);
        int order = static_cast<int>(nodes.size());
        if (k == DiagramClass::Lanner &&
            std::count(c.forbidden_lanner_orders.begin(), c.forbidden_lanner_orders.end(), order))
            return false;
        if (c.faces_elliptic) {
            if (k != DiagramClass::Elliptic) return false;
            continue;
        }
        if (c.forbid_parabolic && sub.is_connected() && memo().parabolic_of(sub)) return false;
    }
    for (const auto& z : c.det_zero)
        if (!determinant(t.subdiagram(z)).is_zero()) return false;
    return true;
}

}  // namespace

std::set<Extension> extensions(const std::vector<CoxeterDiagram>& found) {
    std::set<Extension> out;
    for (const auto& t : found) out.emplace(canonical_string(t), row_of(t));
    return out;
}

std::set<Extension> brute_attach(const CoxeterDiagram& s, const SearchConstraints& c) {
    int v = s.order();
    std::vector<std::vector<int>> choices(v);
    for (int i = 0; i < v; ++i) {
        auto it = c.allowed.find(i);
        choices[i] = it != c.allowed.end() ? it->second : c.default_labels;
        if (c.solved_neighbour && *c.solved_neighbour == i) {
            choices[i].clear();
            for (int m = 2; m <= c.max_mult; ++m) choices[i].push_back(m);
        }
    }
    CoxeterDiagram t = s;
    t.add_node();
    std::set<Extension> out;
    std::vector<size_t> at(v, 0);
    if (std::any_of(choices.begin(), choices.end(), [](const auto& x) { return x.empty(); })) return out;
    while (true) {
        for (int i = 0; i < v; ++i) {
            int code = choices[i][at[i]];
            t.set_edge(i, v, code == -2 ? EdgeLabel::dotted() : code == -1 ? EdgeLabel::bold() : EdgeLabel::angle(code));
        }
        if (admissible(t, c)) out.emplace(canonical_string(t), row_of(t));
        int i = 0;
        while (i < v && ++at[i] == choices[i].size()) at[i++] = 0;
        if (i == v) break;
    }
    return out;
}

CoxeterDiagram chain(const std::vector<int>& labels) {
    CoxeterDiagram s(static_cast<int>(labels.size()) + 1);
    for (size_t i = 0; i < labels.size(); ++i) s.set_edge(static_cast<int>(i), static_cast<int>(i) + 1, EdgeLabel::angle(labels[i]));
    return s;
}

std::vector<std::pair<std::string, AttachInstance>> strategy_instances() {
    std::vector<std::pair<std::string, AttachInstance>> out;
    for (const char* arc : {"2,2,2:2", "2,3,2:2", "3,2,3:2"})
        for (auto& inst : arc_attach_instances(ArcSpec::parse(arc), 7)) out.emplace_back(arc, std::move(inst));
    // u7 joins the G10 arc chain at u1 and closes the Lanner triangle <u7, u1, u2>.
    AttachInstance g10{chain({5, 3, 4, 3, 5}), {}};
    g10.constraints.required = {{0, 1, 2, 3}, {2, 3, 4, 5}, {0, 1, 6}};
    g10.constraints.det_zero = {{0, 1, 2, 3, 4, 5, 6}};
    out.emplace_back("G10 u7", std::move(g10));
    return out;
}

}  // namespace oracle
