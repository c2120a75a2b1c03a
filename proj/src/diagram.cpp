#include "coxpoly/diagram.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "coxpoly/catalog.hpp"
#include "coxpoly/expr.hpp"

namespace coxpoly {

EdgeLabel EdgeLabel::angle(int m) {
    if (m == 2) return orthogonal();
    if (m < 3) throw std::invalid_argument("angle label must be at least 3");
    return {Kind::Angle, m, std::nullopt};
}

EdgeLabel EdgeLabel::dotted(std::optional<AlgebraicReal> w) {
    if (w && *w <= AlgebraicReal(1)) throw std::invalid_argument("dotted weight must exceed 1");
    return {Kind::Dotted, 0, std::move(w)};
}

AlgebraicReal EdgeLabel::value() const {
    switch (kind) {
        case Kind::Orthogonal: return AlgebraicReal(0);
        case Kind::Angle: return AlgebraicReal::cos_pi_over(m);
        case Kind::Bold: return AlgebraicReal(1);
        case Kind::Dotted:
            if (!weight) throw SymbolicDiagramError();
            return *weight;
    }
    return AlgebraicReal(0);
}

int EdgeLabel::code() const {
    switch (kind) {
        case Kind::Orthogonal: return kOrth;
        case Kind::Angle: return m;
        case Kind::Bold: return kBold;
        case Kind::Dotted: return kDotted;
    }
    return kOrth;
}

CoxeterDiagram::CoxeterDiagram(int order, std::string name)
    : d_(order), name_(std::move(name)), node_names_(order), edges_(static_cast<size_t>(order) * order) {
    if (order < 0) throw std::invalid_argument("negative diagram order");
}

void CoxeterDiagram::set_edge(int i, int j, EdgeLabel e) {
    if (i == j) throw std::invalid_argument("self-loop in Coxeter diagram");
    if (i < 0 || j < 0 || i >= d_ || j >= d_) throw std::out_of_range("node index out of range");
    edges_[idx(i, j)] = e;
    edges_[idx(j, i)] = std::move(e);
}

bool CoxeterDiagram::is_concrete() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const EdgeLabel& e) { return e.known(); });
}

bool CoxeterDiagram::is_connected() const {
    if (d_ == 0) return false;
    std::vector<bool> seen(d_);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v = 0; v < d_; ++v)
            if (!seen[v] && u != v && !edge(u, v).is_orthogonal()) {
                seen[v] = true;
                ++count;
                stack.push_back(v);
            }
    }
    return count == d_;
}

CoxeterDiagram CoxeterDiagram::subdiagram(const std::vector<int>& nodes) const {
    CoxeterDiagram s(static_cast<int>(nodes.size()), name_);
    for (size_t i = 0; i < nodes.size(); ++i) {
        s.node_names_[i] = node_names_[nodes[i]];
        for (size_t j = i + 1; j < nodes.size(); ++j) s.set_edge(int(i), int(j), edge(nodes[i], nodes[j]));
    }
    return s;
}

CoxeterDiagram CoxeterDiagram::without(const std::vector<int>& nodes) const {
    std::vector<int> keep;
    for (int i = 0; i < d_; ++i)
        if (std::find(nodes.begin(), nodes.end(), i) == nodes.end()) keep.push_back(i);
    return subdiagram(keep);
}

CoxeterDiagram CoxeterDiagram::permuted(const std::vector<int>& perm) const {
    CoxeterDiagram s(d_, name_);
    for (int i = 0; i < d_; ++i) {
        s.node_names_[perm[i]] = node_names_[i];
        for (int j = i + 1; j < d_; ++j) s.set_edge(perm[i], perm[j], edge(i, j));
    }
    return s;
}

int CoxeterDiagram::add_node(std::string name) {
    CoxeterDiagram s(d_ + 1, name_);
    for (int i = 0; i < d_; ++i) {
        s.node_names_[i] = node_names_[i];
        for (int j = i + 1; j < d_; ++j) s.set_edge(i, j, edge(i, j));
    }
    s.node_names_[d_] = std::move(name);
    *this = std::move(s);
    return d_ - 1;
}

bool CoxeterDiagram::operator==(const CoxeterDiagram& o) const {
    if (d_ != o.d_) return false;
    for (int i = 0; i < d_; ++i)
        for (int j = i + 1; j < d_; ++j) {
            const EdgeLabel &a = edge(i, j), &b = o.edge(i, j);
            if (a.code() != b.code() || a.weight.has_value() != b.weight.has_value()) return false;
            if (a.weight && *a.weight != *b.weight) return false;
        }
    return true;
}

std::string Signature::to_string() const {
    return "(" + std::to_string(n_plus) + "," + std::to_string(n_minus) + "," + std::to_string(n_zero) + ")";
}

const char* to_string(DiagramClass c) {
    switch (c) {
        case DiagramClass::Elliptic: return "Elliptic";
        case DiagramClass::Parabolic: return "Parabolic";
        case DiagramClass::Lanner: return "Lanner";
        case DiagramClass::Hyperbolic: return "Hyperbolic";
        case DiagramClass::Superhyperbolic: return "Superhyperbolic";
    }
    return "?";
}

Matrix gram_matrix(const CoxeterDiagram& s) {
    int d = s.order();
    Matrix g(d, std::vector<AlgebraicReal>(d));
    std::vector<AlgebraicReal*> all;
    for (int i = 0; i < d; ++i) {
        g[i][i] = AlgebraicReal(1);
        for (int j = i + 1; j < d; ++j) g[i][j] = -s.edge(i, j).value();
    }
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) all.push_back(&g[i][j]);
    unify_all(all);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < i; ++j) g[i][j] = g[j][i];
    return g;
}

namespace {

// Divides the listed entries by the positive rational content of all their coefficients.
void strip_content(const std::vector<AlgebraicReal*>& xs) {
    Integer g = 0, l = 1;
    for (const AlgebraicReal* x : xs)
        for (const Rational& c : x->coeffs()) {
            if (sgn(c) == 0) continue;
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
        }
    if (g == 0 || (g == 1 && l == 1)) return;
    Rational f = make_q(l, g);
    for (AlgebraicReal* x : xs) {
        Coeffs c = x->coeffs();
        for (Rational& v : c) v *= f;
        *x = AlgebraicReal(x->field(), std::move(c));
    }
}

}  // namespace

// Division-free elimination: the working block equals lambda times the true Schur
// complement, and lambda is tracked as a product of pivots.
AlgebraicReal determinant(const Matrix& m0) {
    Matrix m = m0;
    int n = static_cast<int>(m.size());
    std::vector<AlgebraicReal*> all;
    for (auto& row : m)
        for (auto& x : row) all.push_back(&x);
    unify_all(all);
    AlgebraicReal num(1), den(1), lambda(1);
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && m[p][c].is_zero()) ++p;
        if (p == n) return AlgebraicReal(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            num = -num;
        }
        AlgebraicReal piv = m[c][c];
        num *= piv;
        den *= lambda;
        for (int r = c + 1; r < n; ++r)
            for (int k = c + 1; k < n; ++k) m[r][k] = piv * m[r][k] - m[r][c] * m[c][k];
        lambda *= piv;
    }
    return num / den;
}

AlgebraicReal determinant(const CoxeterDiagram& s) { return determinant(gram_matrix(s)); }

Signature signature(const Matrix& m0) {
    // Symmetric elimination: 1x1 pivots when a diagonal entry is nonzero,
    // otherwise a 2x2 block [[0,b],[b,0]] contributing one positive and one negative index.
    // The working block is a nonzero multiple of the true Schur complement; only the
    // sign of that multiple is tracked, and rational content is stripped each step.
    Matrix a = m0;
    std::vector<int> live(a.size());
    std::iota(live.begin(), live.end(), 0);
    Signature sig;
    int lambda_sign = 1;
    auto tidy = [&]() {
        std::vector<AlgebraicReal*> xs;
        for (int i : live)
            for (int j : live)
                if (j >= i) xs.push_back(&a[i][j]);
        unify_all(xs);
        strip_content(xs);
        for (int i : live)
            for (int j : live)
                if (j < i) a[i][j] = a[j][i];
    };
    tidy();
    while (!live.empty()) {
        int piv = -1;
        for (int i : live)
            if (!a[i][i].is_zero()) {
                piv = i;
                break;
            }
        if (piv >= 0) {
            int s = a[piv][piv].sign();
            (s * lambda_sign > 0 ? sig.n_plus : sig.n_minus)++;
            live.erase(std::find(live.begin(), live.end(), piv));
            const AlgebraicReal p = a[piv][piv];
            for (int i : live)
                for (int j : live)
                    if (j >= i) a[i][j] = p * a[i][j] - a[i][piv] * a[piv][j];
            lambda_sign *= s;
            tidy();
            continue;
        }
        int pi = -1, pj = -1;
        for (int i : live) {
            for (int j : live)
                if (j > i && !a[i][j].is_zero()) {
                    pi = i;
                    pj = j;
                    break;
                }
            if (pi >= 0) break;
        }
        if (pi < 0) {
            sig.n_zero += static_cast<int>(live.size());
            break;
        }
        ++sig.n_plus;
        ++sig.n_minus;
        live.erase(std::find(live.begin(), live.end(), pi));
        live.erase(std::find(live.begin(), live.end(), pj));
        const AlgebraicReal b = a[pi][pj];
        // b*A - (c_i c_j^T + c_j c_i^T) for the two pivot columns.
        for (int i : live)
            for (int j : live)
                if (j >= i) a[i][j] = b * a[i][j] - (a[i][pi] * a[pj][j] + a[i][pj] * a[pi][j]);
        lambda_sign *= b.sign();
        tidy();
    }
    return sig;
}

Signature signature(const CoxeterDiagram& s) { return signature(gram_matrix(s)); }

DiagramClass classify(const CoxeterDiagram& s) {
    if (!s.is_concrete()) throw SymbolicDiagramError();
    Signature sig = signature(s);
    int d = s.order();
    if (sig.n_plus == d) return DiagramClass::Elliptic;
    if (sig.n_minus >= 2) return DiagramClass::Superhyperbolic;
    bool proper_elliptic = true;
    for (int v = 0; v < d && proper_elliptic; ++v) {
        Signature t = signature(s.without({v}));
        proper_elliptic = t.n_plus == d - 1;
    }
    if (sig.n_minus == 0) return DiagramClass::Parabolic;
    return proper_elliptic ? DiagramClass::Lanner : DiagramClass::Hyperbolic;
}

bool is_matrix_parabolic(const CoxeterDiagram& s) {
    LabelMatrix l(s);
    std::uint32_t left = (1u << s.order()) - 1;
    if (!left) return false;
    while (left) {
        // Grow the component of the lowest remaining node.
        std::uint32_t comp = left & (~left + 1), prev = 0;
        while (comp != prev) {
            prev = comp;
            for (std::uint32_t m = comp; m; m &= m - 1) {
                int u = std::countr_zero(m);
                for (std::uint32_t r = left & ~comp; r; r &= r - 1) {
                    int w = std::countr_zero(r);
                    if (l(u, w) != kOrth) comp |= 1u << w;
                }
            }
        }
        left &= ~comp;
        std::vector<int> nodes;
        for (std::uint32_t m = comp; m; m &= m - 1) nodes.push_back(std::countr_zero(m));
        Signature sig = signature(s.subdiagram(nodes));
        if (sig.n_minus != 0 || sig.n_zero == 0) return false;
    }
    return true;
}

std::vector<std::vector<int>> lanner_subdiagrams(const CoxeterDiagram& s) {
    LabelMatrix l(s);
    int d = s.order();
    std::vector<std::vector<int>> out;
    for (std::uint32_t m = 1; m < (1u << d); ++m) {
        int k = std::popcount(m);
        if (k < 2 || k > 5) continue;
        if (!catalog::lanner(l, m)) continue;
        std::vector<int> nodes;
        for (std::uint32_t r = m; r; r &= r - 1) nodes.push_back(std::countr_zero(r));
        out.push_back(nodes);
    }
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
    return out;
}

AlgebraicReal local_det(const CoxeterDiagram& s, const std::vector<int>& t) {
    AlgebraicReal den = determinant(s.without(t));
    if (den.is_zero()) throw std::domain_error("local determinant: det of the complement vanishes");
    return determinant(s) / den;
}

AlgebraicReal d_pqr(int p, int q, int r) {
    if (r < 3 || p < 2 || q < 2) throw std::domain_error("d_pqr requires p, q >= 2 and r >= 3");
    AlgebraicReal cp = AlgebraicReal::cos_pi_over(p), cq = AlgebraicReal::cos_pi_over(q), cr = AlgebraicReal::cos_pi_over(r);
    AlgebraicReal sin2 = AlgebraicReal(1) - cr * cr;
    return AlgebraicReal(1) - (cp * cp + cq * cq + AlgebraicReal(2) * cp * cq * cr) / sin2;
}

CoxeterDiagram lanner_triangle(int p, int q, int r) {
    CoxeterDiagram s(3, "L(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + ")");
    s.set_edge(0, 1, EdgeLabel::angle(p));
    s.set_edge(0, 2, EdgeLabel::angle(q));
    s.set_edge(1, 2, EdgeLabel::angle(r));
    return s;
}

namespace {

// Colour refinement on label codes; returns a colour per node (isomorphism invariant).
std::vector<int> refine_colours(const LabelMatrix& l, int d) {
    std::vector<int> colour(d, 0);
    for (int round = 0; round <= d; ++round) {
        std::vector<std::pair<std::vector<int>, int>> sig(d);
        for (int i = 0; i < d; ++i) {
            std::vector<int> key{colour[i]};
            std::vector<int> nb;
            for (int j = 0; j < d; ++j)
                if (j != i) nb.push_back(l(i, j) * 1024 + colour[j]);
            std::sort(nb.begin(), nb.end());
            key.insert(key.end(), nb.begin(), nb.end());
            sig[i] = {std::move(key), i};
        }
        std::vector<std::vector<int>> keys;
        for (auto& s : sig) keys.push_back(s.first);
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        std::vector<int> next(d);
        for (int i = 0; i < d; ++i)
            next[i] = static_cast<int>(std::lower_bound(keys.begin(), keys.end(), sig[i].first) - keys.begin());
        int before = *std::max_element(colour.begin(), colour.end());
        int after = *std::max_element(next.begin(), next.end());
        colour = next;
        if (after == before && round > 0) break;
    }
    return colour;
}

struct CanonSearch {
    const LabelMatrix& l;
    int d;
    std::vector<int> colour;
    std::vector<int> order, best_order;
    std::vector<int> code, best_code;
    std::vector<bool> used;
    bool have_best = false;

    bool twins(int u, int v) const {
        for (int w = 0; w < d; ++w)
            if (w != u && w != v && l(u, w) != l(v, w)) return false;
        return true;
    }

    // state: 0 = prefix equal to best so far, -1 = already smaller.
    void run(int depth, int state) {
        if (depth == d) {
            if (!have_best || state < 0) {
                best_code = code;
                best_order = order;
                have_best = true;
            }
            return;
        }
        int min_colour = 1 << 30;
        for (int v = 0; v < d; ++v)
            if (!used[v]) min_colour = std::min(min_colour, colour[v]);
        std::vector<int> tried;
        for (int v = 0; v < d; ++v) {
            if (used[v] || colour[v] != min_colour) continue;
            bool dup = false;
            for (int u : tried)
                if (twins(u, v)) {
                    dup = true;
                    break;
                }
            if (dup) continue;
            tried.push_back(v);
            size_t mark = code.size();
            code.push_back(colour[v]);
            for (int k = 0; k < depth; ++k) code.push_back(l(v, order[k]));
            int st = state;
            if (have_best && st == 0) {
                for (size_t i = mark; i < code.size(); ++i) {
                    if (code[i] < best_code[i]) {
                        st = -1;
                        break;
                    }
                    if (code[i] > best_code[i]) {
                        st = 1;
                        break;
                    }
                }
            }
            if (st <= 0) {
                used[v] = true;
                order.push_back(v);
                run(depth + 1, st);
                order.pop_back();
                used[v] = false;
            }
            code.resize(mark);
        }
    }
};

}  // namespace

CanonicalForm canonical_form(const CoxeterDiagram& s) {
    LabelMatrix l(s);
    int d = s.order();
    CanonSearch cs{l, d, refine_colours(l, d), {}, {}, {}, {}, std::vector<bool>(d), false};
    cs.run(0, 0);
    CanonicalForm cf;
    cf.code.push_back(d);
    cf.perm.assign(d, 0);
    for (int k = 0; k < d; ++k) cf.perm[cs.best_order[k]] = k;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) cf.code.push_back(l(cs.best_order[i], cs.best_order[j]));
    return cf;
}

std::string canonical_string(const CoxeterDiagram& s) {
    CanonicalForm cf = canonical_form(s);
    std::string out = std::to_string(cf.code[0]) + ":";
    for (size_t i = 1; i < cf.code.size(); ++i) {
        int c = cf.code[i];
        if (i > 1) out += ',';
        if (c == kOrth) out += '.';
        else if (c == kBold) out += 'b';
        else if (c == kDotted) out += 'd';
        else out += std::to_string(c);
    }
    return out;
}

std::optional<std::vector<int>> is_isomorphic(const CoxeterDiagram& a, const CoxeterDiagram& b, bool compare_weights) {
    int d = a.order();
    if (d != b.order()) return std::nullopt;
    CanonicalForm ca = canonical_form(a), cb = canonical_form(b);
    if (ca.code != cb.code) return std::nullopt;
    std::vector<int> inv_b(d);
    for (int j = 0; j < d; ++j) inv_b[cb.perm[j]] = j;
    std::vector<int> map(d);
    for (int i = 0; i < d; ++i) map[i] = inv_b[ca.perm[i]];
    if (!compare_weights) return map;

    // Search all label-preserving bijections for one that also matches dotted weights.
    LabelMatrix la(a), lb(b);
    std::vector<int> colour_a = refine_colours(la, d), colour_b = refine_colours(lb, d);
    std::vector<int> m(d, -1);
    std::vector<bool> used(d);
    std::function<bool(int)> go = [&](int i) -> bool {
        if (i == d) return true;
        for (int j = 0; j < d; ++j) {
            if (used[j] || colour_a[i] != colour_b[j]) continue;
            bool ok = true;
            for (int k = 0; k < i && ok; ++k) {
                const EdgeLabel &ea = a.edge(i, k), &eb = b.edge(j, m[k]);
                if (ea.code() != eb.code()) ok = false;
                else if (ea.is_dotted() && ea.weight.has_value() != eb.weight.has_value()) ok = false;
                else if (ea.is_dotted() && ea.weight && *ea.weight != *eb.weight) ok = false;
            }
            if (!ok) continue;
            used[j] = true;
            m[i] = j;
            if (go(i + 1)) return true;
            used[j] = false;
        }
        return false;
    };
    if (go(0)) return m;
    return std::nullopt;
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

std::vector<CoxeterDiagram> read_diagrams(std::istream& in) {
    std::vector<CoxeterDiagram> out;
    std::string raw;
    int lineno = 0;
    bool have = false, sized = false;
    CoxeterDiagram cur;
    std::string pending_name;
    auto flush = [&]() {
        if (have) out.push_back(std::move(cur));
        have = sized = false;
    };
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        if (trim(line).empty()) continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        int col = static_cast<int>(line.find(kw)) + 1;
        if (kw == "diagram") {
            flush();
            std::string name;
            std::getline(ls, name);
            pending_name = trim(name);
            have = true;
            cur = CoxeterDiagram(0, pending_name);
        } else if (kw == "nodes") {
            if (!have) {
                have = true;
                cur = CoxeterDiagram(0, "");
            }
            int d;
            if (!(ls >> d) || d < 1 || d > kMaxNodes) throw ParseError("bad node count", lineno, col);
            std::string name = cur.name();
            cur = CoxeterDiagram(d, name);
            sized = true;
            std::string nm;
            int i = 0;
            while (ls >> nm && i < d) cur.set_node_name(i++, nm);
        } else if (kw == "edge") {
            if (!sized) throw ParseError("edge before nodes", lineno, col);
            int i, j;
            if (!(ls >> i >> j)) throw ParseError("expected two node indices", lineno, col);
            if (i < 0 || j < 0 || i >= cur.order() || j >= cur.order() || i == j)
                throw ParseError("node index out of range", lineno, col);
            std::string rest;
            std::getline(ls, rest);
            rest = trim(rest);
            int rcol = static_cast<int>(line.find(rest.empty() ? std::string(" ") : rest)) + 1;
            if (rest.rfind("m=", 0) == 0) {
                int m;
                try {
                    m = std::stoi(rest.substr(2));
                } catch (...) {
                    throw ParseError("bad label", lineno, rcol);
                }
                if (m < 2) throw ParseError("label must be at least 2", lineno, rcol);
                cur.set_edge(i, j, EdgeLabel::angle(m));
            } else if (rest == "bold") {
                cur.set_edge(i, j, EdgeLabel::bold());
            } else if (rest.rfind("dotted", 0) == 0) {
                std::string w = trim(rest.substr(6));
                if (w.empty()) {
                    cur.set_edge(i, j, EdgeLabel::dotted());
                } else {
                    if (w.rfind("w=", 0) != 0) throw ParseError("expected w=<expr>", lineno, rcol + 7);
                    int ecol = static_cast<int>(line.find("w=")) + 2;
                    AlgebraicReal v = parse_expr(w.substr(2), lineno, ecol);
                    if (v <= AlgebraicReal(1)) throw ParseError("dotted weight must exceed 1", lineno, ecol + 1);
                    cur.set_edge(i, j, EdgeLabel::dotted(v));
                }
            } else {
                throw ParseError("expected m=<k>, bold or dotted", lineno, rcol);
            }
        } else {
            throw ParseError("unknown keyword '" + kw + "'", lineno, col);
        }
    }
    flush();
    return out;
}

CoxeterDiagram parse_diagram(const std::string& text) {
    std::istringstream in(text);
    auto v = read_diagrams(in);
    if (v.size() != 1) throw ParseError("expected exactly one diagram", 1, 1);
    return v.front();
}

std::string write_diagram(const CoxeterDiagram& s) {
    std::ostringstream os;
    os << "diagram " << s.name() << "\n";
    os << "nodes " << s.order();
    bool named = false;
    for (int i = 0; i < s.order(); ++i) named |= !s.node_name(i).empty();
    if (named)
        for (int i = 0; i < s.order(); ++i) os << " " << (s.node_name(i).empty() ? "u" + std::to_string(i) : s.node_name(i));
    os << "\n";
    for (int i = 0; i < s.order(); ++i)
        for (int j = i + 1; j < s.order(); ++j) {
            const EdgeLabel& e = s.edge(i, j);
            switch (e.kind) {
                case EdgeLabel::Kind::Orthogonal: break;
                case EdgeLabel::Kind::Angle: os << "edge " << i << " " << j << " m=" << e.m << "\n"; break;
                case EdgeLabel::Kind::Bold: os << "edge " << i << " " << j << " bold\n"; break;
                case EdgeLabel::Kind::Dotted:
                    os << "edge " << i << " " << j << " dotted";
                    if (e.weight) os << " w=" << format_expr(*e.weight);
                    os << "\n";
                    break;
            }
        }
    return os.str();
}

std::string to_dot(const CoxeterDiagram& s) {
    std::ostringstream os;
    std::string name = s.name().empty() ? "coxeter" : s.name();
    os << "graph \"" << name << "\" {\n  node [shape=circle];\n";
    for (int i = 0; i < s.order(); ++i) {
        std::string lab = s.node_name(i).empty() ? std::to_string(i) : s.node_name(i);
        os << "  n" << i << " [label=\"" << lab << "\"];\n";
    }
    for (int i = 0; i < s.order(); ++i)
        for (int j = i + 1; j < s.order(); ++j) {
            const EdgeLabel& e = s.edge(i, j);
            if (e.is_orthogonal()) continue;
            os << "  n" << i << " -- n" << j;
            if (e.kind == EdgeLabel::Kind::Angle && e.m > 3) os << " [label=\"" << e.m << "\"]";
            else if (e.kind == EdgeLabel::Kind::Bold) os << " [penwidth=3]";
            else if (e.kind == EdgeLabel::Kind::Dotted)
                os << " [style=dashed" << (e.weight ? ", label=\"" + format_expr(*e.weight) + "\"" : std::string()) << "]";
            os << ";\n";
        }
    os << "}\n";
    return os.str();
}

}  // namespace coxpoly
