#include "coxpoly/catalog.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

namespace coxpoly {

LabelMatrix::LabelMatrix(const CoxeterDiagram& s) : d(s.order()) {
    if (d > kMaxNodes) throw std::invalid_argument("diagram too large for label matrix");
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a[i][j] = static_cast<std::int16_t>(s.code(i, j));
}

namespace catalog {

namespace {

struct Component {
    int v[kMaxNodes];
    int k = 0;
};

inline bool linked(int c) { return c != kOrth; }

template <class F>
void for_components(const LabelMatrix& l, std::uint32_t mask, F&& f) {
    std::uint32_t left = mask;
    while (left) {
        Component c;
        std::uint32_t frontier = left & (~left + 1);
        std::uint32_t comp = 0;
        while (frontier) {
            int u = std::countr_zero(frontier);
            frontier &= frontier - 1;
            if (comp >> u & 1) continue;
            comp |= 1u << u;
            c.v[c.k++] = u;
            for (std::uint32_t rest = mask & ~comp; rest; rest &= rest - 1) {
                int w = std::countr_zero(rest);
                if (linked(l(u, w))) frontier |= 1u << w;
            }
        }
        left &= ~comp;
        std::sort(c.v, c.v + c.k);
        if (!f(c)) return;
    }
}

struct Shape {
    int edges = 0;
    int deg[kMaxNodes] = {};
    int max_deg = 0;
    int branch = 0;  // nodes of degree >= 3
    int c4 = 0, c5 = 0, c6plus = 0, c6 = 0;
    bool exotic = false;  // bold or dotted present
};

Shape shape_of(const LabelMatrix& l, const Component& c) {
    Shape s;
    for (int i = 0; i < c.k; ++i)
        for (int j = i + 1; j < c.k; ++j) {
            int x = l(c.v[i], c.v[j]);
            if (!linked(x)) continue;
            ++s.edges;
            ++s.deg[i];
            ++s.deg[j];
            if (x < 0) s.exotic = true;
            else if (x == 4) ++s.c4;
            else if (x == 5) ++s.c5;
            else if (x >= 6) {
                ++s.c6plus;
                if (x == 6) ++s.c6;
            }
        }
    for (int i = 0; i < c.k; ++i) {
        s.max_deg = std::max(s.max_deg, s.deg[i]);
        if (s.deg[i] >= 3) ++s.branch;
    }
    return s;
}

// Labels along a path component, starting from an end node.
std::vector<int> path_labels(const LabelMatrix& l, const Component& c, const Shape& s) {
    int start = 0;
    while (s.deg[start] != 1) ++start;
    std::vector<int> labels;
    int prev = -1, cur = start;
    for (int step = 1; step < c.k; ++step) {
        for (int j = 0; j < c.k; ++j) {
            if (j == cur || j == prev || !linked(l(c.v[cur], c.v[j]))) continue;
            labels.push_back(l(c.v[cur], c.v[j]));
            prev = cur;
            cur = j;
            break;
        }
    }
    return labels;
}

// Arms hanging off the branch node b (component-local indices): labels from b outwards.
std::vector<std::vector<int>> arms(const LabelMatrix& l, const Component& c, int b) {
    std::vector<std::vector<int>> out;
    for (int first = 0; first < c.k; ++first) {
        if (first == b || !linked(l(c.v[b], c.v[first]))) continue;
        std::vector<int> arm{l(c.v[b], c.v[first])};
        int prev = b, cur = first;
        for (;;) {
            int next = -1;
            for (int j = 0; j < c.k; ++j)
                if (j != cur && j != prev && linked(l(c.v[cur], c.v[j]))) {
                    next = j;
                    break;
                }
            if (next < 0) break;
            arm.push_back(l(c.v[cur], c.v[next]));
            prev = cur;
            cur = next;
        }
        out.push_back(std::move(arm));
    }
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.size() < b.size(); });
    return out;
}

std::string elliptic_component(const LabelMatrix& l, const Component& c) {
    if (c.k == 1) return "A1";
    Shape s = shape_of(l, c);
    if (s.exotic) return {};
    if (c.k == 2) {
        int m = l(c.v[0], c.v[1]);
        if (m == 3) return "A2";
        if (m == 4) return "B2";
        return "G2(" + std::to_string(m) + ")";
    }
    if (s.edges != c.k - 1 || s.c6plus > 0 || s.max_deg > 3 || s.c4 + s.c5 > 1) return {};
    std::string n = std::to_string(c.k);
    if (s.branch == 1) {
        if (s.c4 + s.c5 > 0) return {};
        int b = 0;
        while (s.deg[b] != 3) ++b;
        auto a = arms(l, c, b);
        size_t x = a[0].size(), y = a[1].size(), z = a[2].size();
        if (x == 1 && y == 1) return "D" + n;
        if (x == 1 && y == 2 && z <= 4) return "E" + n;
        return {};
    }
    if (s.branch > 1) return {};
    auto lab = path_labels(l, c, s);
    int pos = -1;
    for (size_t i = 0; i < lab.size(); ++i)
        if (lab[i] != 3) pos = static_cast<int>(i);
    if (pos < 0) return "A" + n;
    bool end = pos == 0 || pos == static_cast<int>(lab.size()) - 1;
    if (lab[pos] == 5) return end && c.k <= 4 ? "H" + n : std::string();
    if (end) return "B" + n;
    return c.k == 4 ? "F4" : std::string();
}

bool parabolic_component(const LabelMatrix& l, const Component& c) {
    if (c.k == 1) return false;
    if (c.k == 2) return l(c.v[0], c.v[1]) == kBold;
    Shape s = shape_of(l, c);
    if (s.exotic || s.c5 > 0 || s.c6plus > s.c6) return false;
    if (s.edges == c.k) {
        if (s.c4 + s.c6 > 0) return false;
        for (int i = 0; i < c.k; ++i)
            if (s.deg[i] != 2) return false;
        return true;
    }
    if (s.edges != c.k - 1) return false;
    if (s.c6 > 0) {
        if (c.k != 3 || s.c6 != 1 || s.c4 > 0) return false;
        return true;  // path 6,3
    }
    if (s.max_deg == 4) return c.k == 5 && s.c4 == 0;
    if (s.max_deg > 4) return false;
    if (s.branch == 0) {
        auto lab = path_labels(l, c, s);
        if (s.c4 == 2) return lab.front() == 4 && lab.back() == 4;
        if (s.c4 == 1 && c.k == 5) return lab == std::vector<int>{3, 3, 4, 3} || lab == std::vector<int>{3, 4, 3, 3};
        return false;
    }
    if (s.branch == 1) {
        int b = 0;
        while (s.deg[b] != 3) ++b;
        auto a = arms(l, c, b);
        size_t x = a[0].size(), y = a[1].size(), z = a[2].size();
        if (s.c4 == 0) return (x == 2 && y == 2 && z == 2) || (x == 1 && y == 3 && z == 3) || (x == 1 && y == 2 && z == 5);
        if (s.c4 != 1 || x != 1 || y != 1) return false;
        // The 4 sits on the outermost edge of one arm; with three unit arms any arm will do.
        for (auto& arm : a)
            if (arm.back() == 4) return arm.size() == z;
        return false;
    }
    if (s.branch == 2) {
        if (s.c4 > 0) return false;
        for (int i = 0; i < c.k; ++i) {
            if (s.deg[i] != 3) continue;
            int leaves = 0;
            for (int j = 0; j < c.k; ++j)
                if (j != i && linked(l(c.v[i], c.v[j])) && s.deg[j] == 1) ++leaves;
            if (leaves != 2) return false;
        }
        return true;
    }
    return false;
}

// Order-4 and order-5 Lannér diagrams keyed by their label codes (labels 2..5).
struct LannerTables {
    std::vector<bool> t4, t5;
    LannerTables() : t4(1u << 12), t5(1u << 20) {
        for (int order : {4, 5}) {
            auto& t = order == 4 ? t4 : t5;
            for (auto& dgm : lanner_catalog(order)) {
                std::vector<int> p(order);
                std::iota(p.begin(), p.end(), 0);
                do {
                    std::uint32_t key = 0, sh = 0;
                    for (int i = 0; i < order; ++i)
                        for (int j = i + 1; j < order; ++j, sh += 2)
                            key |= static_cast<std::uint32_t>(dgm.code(p[i], p[j]) - 2) << sh;
                    t[key] = true;
                } while (std::next_permutation(p.begin(), p.end()));
            }
        }
    }
};

const LannerTables& tables() {
    static const LannerTables t;
    return t;
}

}  // namespace

bool connected(const LabelMatrix& l, std::uint32_t mask) {
    if (!mask) return false;
    int count = 0;
    for_components(l, mask, [&](const Component&) { return ++count < 2; });
    return count == 1;
}

bool elliptic(const LabelMatrix& l, std::uint32_t mask) {
    bool ok = true;
    for_components(l, mask, [&](const Component& c) { return ok = !elliptic_component(l, c).empty(); });
    return ok;
}

bool parabolic(const LabelMatrix& l, std::uint32_t mask) {
    if (!mask) return false;
    bool ok = true;
    for_components(l, mask, [&](const Component& c) { return ok = parabolic_component(l, c); });
    return ok;
}

bool hyperbolic_triple(long p, long q, long r) { return p * q + q * r + r * p < p * q * r; }

bool lanner(const LabelMatrix& l, std::uint32_t mask) {
    int k = std::popcount(mask);
    int v[kMaxNodes], n = 0;
    for (std::uint32_t m = mask; m; m &= m - 1) v[n++] = std::countr_zero(m);
    if (k == 2) return l(v[0], v[1]) == kDotted;
    if (k < 2 || k > 5) return false;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (l(v[i], v[j]) < 0) return false;
    if (k == 3) {
        long p = l(v[0], v[1]), q = l(v[0], v[2]), r = l(v[1], v[2]);
        if ((p == kOrth) + (q == kOrth) + (r == kOrth) > 1) return false;
        return hyperbolic_triple(p, q, r);
    }
    std::uint32_t key = 0, sh = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j, sh += 2) {
            int x = l(v[i], v[j]);
            if (x > 5) return false;
            key |= static_cast<std::uint32_t>(x - 2) << sh;
        }
    return k == 4 ? tables().t4[key] : tables().t5[key];
}

std::string elliptic_type(const LabelMatrix& l, std::uint32_t component_mask) {
    std::string out;
    for_components(l, component_mask, [&](const Component& c) {
        std::string t = elliptic_component(l, c);
        if (t.empty()) {
            out.clear();
            return false;
        }
        out += (out.empty() ? "" : "+") + t;
        return true;
    });
    return out;
}

}  // namespace catalog

namespace {
std::uint32_t full_mask(int d) { return d >= 32 ? ~0u : (1u << d) - 1; }
}  // namespace

bool is_elliptic_catalog(const CoxeterDiagram& s) { return catalog::elliptic(LabelMatrix(s), full_mask(s.order())); }
bool is_parabolic_catalog(const CoxeterDiagram& s) { return catalog::parabolic(LabelMatrix(s), full_mask(s.order())); }
bool is_lanner_catalog(const CoxeterDiagram& s) { return catalog::lanner(LabelMatrix(s), full_mask(s.order())); }

namespace {

CoxeterDiagram path(const std::vector<int>& labels, const std::string& name) {
    CoxeterDiagram s(static_cast<int>(labels.size()) + 1, name);
    for (size_t i = 0; i < labels.size(); ++i) s.set_edge(int(i), int(i) + 1, EdgeLabel::angle(labels[i]));
    return s;
}

CoxeterDiagram cycle(const std::vector<int>& labels, const std::string& name) {
    int k = static_cast<int>(labels.size());
    CoxeterDiagram s(k, name);
    for (int i = 0; i < k; ++i) s.set_edge(i, (i + 1) % k, EdgeLabel::angle(labels[i]));
    return s;
}

// Tree with a branch node 0 and arms given as label lists.
CoxeterDiagram tree(const std::vector<std::vector<int>>& arm_labels, const std::string& name) {
    int k = 1;
    for (auto& a : arm_labels) k += static_cast<int>(a.size());
    CoxeterDiagram s(k, name);
    int next = 1;
    for (auto& a : arm_labels) {
        int prev = 0;
        for (int lab : a) {
            s.set_edge(prev, next, EdgeLabel::angle(lab));
            prev = next++;
        }
    }
    return s;
}

std::vector<CoxeterDiagram> dedup(std::vector<CoxeterDiagram> v) {
    std::vector<CoxeterDiagram> out;
    std::set<std::vector<int>> seen;
    for (auto& s : v)
        if (seen.insert(canonical_form(s).code).second) out.push_back(std::move(s));
    return out;
}

}  // namespace

std::vector<CoxeterDiagram> lanner_catalog(int order) {
    if (order == 4)
        return {path({3, 5, 3}, "[3,5,3]"),
                path({5, 3, 5}, "[5,3,5]"),
                path({4, 3, 5}, "[4,3,5]"),
                tree({{5}, {3}, {3}}, "[5,3^{1,1}]"),
                cycle({3, 3, 3, 4}, "[(3^3,4)]"),
                cycle({3, 3, 3, 5}, "[(3^3,5)]"),
                cycle({3, 4, 3, 4}, "[(3,4)^[2]]"),
                cycle({3, 4, 3, 5}, "[(3,4,3,5)]"),
                cycle({3, 5, 3, 5}, "[(3,5)^[2]]")};
    if (order == 5)
        return {path({5, 3, 3, 3}, "[5,3,3,3]"),
                path({5, 3, 3, 4}, "[5,3,3,4]"),
                path({5, 3, 3, 5}, "[5,3,3,5]"),
                tree({{3, 5}, {3}, {3}}, "[5,3,3^{1,1}]"),
                cycle({3, 3, 3, 3, 4}, "[(3^4,4)]")};
    throw std::invalid_argument("concrete Lannér catalog exists for orders 4 and 5 only");
}

std::vector<CoxeterDiagram> elliptic_catalog(int order, int max_label) {
    std::vector<CoxeterDiagram> out;
    int k = order;
    if (k == 1) return {CoxeterDiagram(1, "A1")};
    if (k == 2) {
        for (int m = 3; m <= max_label; ++m) out.push_back(path({m}, "G2(" + std::to_string(m) + ")"));
        return out;
    }
    std::string n = std::to_string(k);
    out.push_back(path(std::vector<int>(k - 1, 3), "A" + n));
    if (max_label >= 4) {
        std::vector<int> b(k - 1, 3);
        b[0] = 4;
        out.push_back(path(b, "B" + n));
    }
    if (k >= 4) out.push_back(tree({{3}, {3}, std::vector<int>(k - 3, 3)}, "D" + n));
    if (k >= 6 && k <= 8) out.push_back(tree({{3}, {3, 3}, std::vector<int>(k - 4, 3)}, "E" + n));
    if (k == 4 && max_label >= 4) out.push_back(path({3, 4, 3}, "F4"));
    if ((k == 3 || k == 4) && max_label >= 5) {
        std::vector<int> h(k - 1, 3);
        h[0] = 5;
        out.push_back(path(h, "H" + n));
    }
    return dedup(std::move(out));
}

std::vector<CoxeterDiagram> parabolic_catalog(int order) {
    std::vector<CoxeterDiagram> out;
    int k = order;
    if (k == 2) {
        CoxeterDiagram s(2, "A~1");
        s.set_edge(0, 1, EdgeLabel::bold());
        return {s};
    }
    if (k < 3) return {};
    std::string n = std::to_string(k - 1);
    out.push_back(cycle(std::vector<int>(k, 3), "A~" + n));
    {
        std::vector<int> c(k - 1, 3);
        c.front() = c.back() = 4;
        out.push_back(path(c, "C~" + n));
    }
    if (k >= 4) {
        std::vector<int> arm(k - 3, 3);
        arm.back() = 4;
        out.push_back(tree({{3}, {3}, arm}, "B~" + n));
    }
    if (k == 5) out.push_back(tree({{3}, {3}, {3}, {3}}, "D~4"));
    if (k >= 6) {
        // Two forks joined by a path of k - 5 edges.
        CoxeterDiagram s(k, "D~" + n);
        s.set_edge(0, 1, EdgeLabel::angle(3));
        s.set_edge(0, 2, EdgeLabel::angle(3));
        int prev = 0;
        for (int v = 3; v < k - 2; ++v) {
            s.set_edge(prev, v, EdgeLabel::angle(3));
            prev = v;
        }
        s.set_edge(prev, k - 2, EdgeLabel::angle(3));
        s.set_edge(prev, k - 1, EdgeLabel::angle(3));
        out.push_back(s);
    }
    if (k == 7) out.push_back(tree({{3, 3}, {3, 3}, {3, 3}}, "E~6"));
    if (k == 8) out.push_back(tree({{3}, {3, 3, 3}, {3, 3, 3}}, "E~7"));
    if (k == 9) out.push_back(tree({{3}, {3, 3}, {3, 3, 3, 3, 3}}, "E~8"));
    if (k == 5) out.push_back(path({3, 3, 4, 3}, "F~4"));
    if (k == 3) out.push_back(path({6, 3}, "G~2"));
    return dedup(std::move(out));
}

}  // namespace coxpoly
