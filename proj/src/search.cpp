#include "coxpoly/search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <Eigen/Dense>
#include "json.hpp"

#include "coxpoly/catalog.hpp"
#include "coxpoly/expr.hpp"
#include "strategies.hpp"

namespace coxpoly {

namespace {

using Mask = std::uint32_t;
inline Mask bit(int i) { return Mask{1} << i; }

constexpr double kTol = 1e-7;

// ---------------------------------------------------------------- rules

struct Stats {
    long face = 0, lanner = 0, parabolic = 0, symmetry = 0, arc = 0;
    void merge(const Stats& o) {
        face += o.face;
        lanner += o.lanner;
        parabolic += o.parabolic;
        symmetry += o.symmetry;
        arc += o.arc;
    }
};

struct Rules {
    int d = 0;
    std::vector<Mask> required;
    std::vector<std::vector<int>> allowed;  // index u * d + v
    bool faces_elliptic = true;
    bool forbid_parabolic = true;
    std::uint32_t forbidden_sizes = 0;  // bit k: Lanner sets of order k are rejected unless required
    int solved = -1;  // pair (solved, new) is left open during enumeration
    std::vector<std::vector<int>> groups;  // interchangeable nodes

    const std::vector<int>& labels(int u, int v) const { return allowed[static_cast<size_t>(u) * d + v]; }
};

// S contains the pair just assigned.
bool check_subset(const Rules& r, const LabelMatrix& l, Mask s, Stats& st) {
    bool contains = false;
    for (Mask q : r.required) {
        if (q == s) {
            if (catalog::lanner(l, s)) return true;
            ++st.lanner;
            return false;
        }
        if ((q & s) == q) contains = true;
    }
    if (contains) return true;
    if (r.forbidden_sizes >> __builtin_popcount(s) & 1 && catalog::lanner(l, s)) {
        ++st.lanner;
        return false;
    }
    if (r.faces_elliptic) {
        if (catalog::elliptic(l, s)) return true;
        ++st.face;
        return false;
    }
    if (r.forbid_parabolic && catalog::connected(l, s) && catalog::parabolic(l, s)) {
        ++st.parabolic;
        return false;
    }
    return true;
}

bool check_pair(const Rules& r, const LabelMatrix& l, int u, int v, Mask others, Stats& st) {
    Mask base = bit(u) | bit(v);
    for (Mask sub = others;; sub = (sub - 1) & others) {
        if (!check_subset(r, l, base | sub, st)) return false;
        if (!sub) break;
    }
    return true;
}

// Assigns the pairs (olds[idx..], v) in turn.
template <class Emit>
void extend_pairs(const Rules& r, LabelMatrix& l, const std::vector<int>& olds, int v, size_t idx, Mask prefix,
                  Stats& st, Emit& emit) {
    if (idx == olds.size()) {
        emit(l);
        return;
    }
    int u = olds[idx];
    if (u == r.solved) {
        extend_pairs(r, l, olds, v, idx + 1, prefix, st, emit);
        return;
    }
    for (int c : r.labels(u, v)) {
        l.set(u, v, c);
        if (check_pair(r, l, u, v, prefix, st)) extend_pairs(r, l, olds, v, idx + 1, prefix | bit(u), st, emit);
    }
    l.set(u, v, kOrth);
}

// Labeling restricted to `placed` is lexicographically minimal under the permutations of `group`.
bool lex_min(const LabelMatrix& l, const std::vector<int>& placed, const std::vector<int>& group) {
    if (group.size() < 2) return true;
    std::vector<int> sigma(l.d);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<int> img = group;
    while (std::next_permutation(img.begin(), img.end())) {
        for (size_t i = 0; i < group.size(); ++i) sigma[group[i]] = img[i];
        int cmp = 0;
        for (size_t q = 1; q < placed.size() && cmp == 0; ++q)
            for (size_t p = 0; p < q && cmp == 0; ++p) {
                int a = l(placed[p], placed[q]), b = l(sigma[placed[p]], sigma[placed[q]]);
                if (a != b) cmp = a < b ? -1 : 1;
            }
        if (cmp > 0) return false;
    }
    return true;
}

// ---------------------------------------------------------------- packed candidates

using Packed = std::vector<std::int8_t>;

Packed pack(const LabelMatrix& l) {
    Packed p;
    p.reserve(static_cast<size_t>(l.d) * (l.d - 1) / 2);
    for (int i = 0; i < l.d; ++i)
        for (int j = i + 1; j < l.d; ++j) p.push_back(static_cast<std::int8_t>(l(i, j)));
    return p;
}

LabelMatrix unpack(const Packed& p, int d) {
    LabelMatrix l;
    l.d = d;
    size_t k = 0;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) l.set(i, j, p[k++]);
    return l;
}

template <class F>
void parallel_chunks(size_t n, int jobs, F f) {
    int t = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
    if (t <= 1) {
        f(0, n, 0);
        return;
    }
    std::vector<std::thread> pool;
    for (int i = 0; i < t; ++i) pool.emplace_back(f, n * i / t, n * (i + 1) / t, i);
    for (auto& th : pool) th.join();
}

void emit_trace(std::ostream* os, const std::string& gale, const nlohmann::json& j) {
    if (!os) return;
    nlohmann::json line = j;
    line["gale"] = gale;
    (*os) << line.dump() << std::endl;
}

// Staged extension: seeds, then one node at a time along `order`.
struct StagedProblem {
    Rules rules;
    std::vector<int> order;
    int group_of_node[kMaxNodes] = {};
    int seed_nodes = 0;         // Lanner seed on order[0..seed_nodes)
    int arc_nodes = 0;          // arc filter applied once order[0..arc_nodes) is placed
};

bool arc_filter(const LabelMatrix& l, Mask m) {
    if (!catalog::connected(l, m)) return false;
    std::vector<int> nodes;
    for (int i = 0; i < l.d; ++i)
        if (m & bit(i)) nodes.push_back(i);
    int k = static_cast<int>(nodes.size());
    Eigen::MatrixXd g(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            int c = l(nodes[i], nodes[j]);
            g(i, j) = i == j ? 1.0 : (c == kOrth ? 0.0 : -std::cos(M_PI / c));
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
    int neg = 0;
    bool close = false;
    for (int i = 0; i < k; ++i) {
        double e = es.eigenvalues()(i);
        if (std::abs(e) < 1e-8) close = true;
        if (e < 0) ++neg;
    }
    if (!close) return neg <= 1;
    CoxeterDiagram s(k);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) s.set_edge(i, j, EdgeLabel::angle(l(nodes[i], nodes[j])));
    return signature(s).n_minus <= 1;
}

std::vector<Packed> staged_search(const StagedProblem& p, int jobs, Stats& total, std::ostream* trace, const std::string& tag) {
    const Rules& r = p.rules;
    int d = r.d;
    std::vector<Packed> cur;
    auto group_done = [&](size_t pos) {
        int g = p.group_of_node[p.order[pos]];
        return pos + 1 == p.order.size() || p.group_of_node[p.order[pos + 1]] != g;
    };
    size_t start = 0;
    if (p.seed_nodes > 0) {
        std::vector<int> nodes(p.order.begin(), p.order.begin() + p.seed_nodes);
        std::set<Packed> seen;
        for (const auto& cat : lanner_catalog(p.seed_nodes)) {
            std::vector<int> perm(p.seed_nodes);
            std::iota(perm.begin(), perm.end(), 0);
            do {
                LabelMatrix l;
                l.d = d;
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) l.a[i][j] = i == j ? 0 : kOrth;
                for (int i = 0; i < p.seed_nodes; ++i)
                    for (int j = i + 1; j < p.seed_nodes; ++j) l.set(nodes[i], nodes[j], cat.code(perm[i], perm[j]));
                bool ok = true;
                for (int i = 0; i < p.seed_nodes && ok; ++i)
                    for (int j = i + 1; j < p.seed_nodes && ok; ++j) {
                        const auto& al = r.labels(nodes[i], nodes[j]);
                        ok = std::find(al.begin(), al.end(), l(nodes[i], nodes[j])) != al.end();
                    }
                for (int pos = 0; pos < p.seed_nodes && ok; ++pos)
                    if (group_done(pos)) {
                        std::vector<int> placed(nodes.begin(), nodes.begin() + pos + 1);
                        ok = lex_min(l, placed, r.groups[p.group_of_node[nodes[pos]]]);
                        if (!ok) ++total.symmetry;
                    }
                if (ok) seen.insert(pack(l));
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        cur.assign(seen.begin(), seen.end());
        start = p.seed_nodes;
        emit_trace(trace, tag, {{"stage", "seed"}, {"nodes", p.seed_nodes}, {"out", cur.size()}});
    } else {
        LabelMatrix l;
        l.d = d;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) l.a[i][j] = i == j ? 0 : kOrth;
        cur.push_back(pack(l));
        start = 1;
    }
    for (size_t pos = start; pos < p.order.size(); ++pos) {
        int v = p.order[pos];
        std::vector<int> olds(p.order.begin(), p.order.begin() + pos);
        std::vector<int> placed(p.order.begin(), p.order.begin() + pos + 1);
        bool sym = group_done(pos);
        bool arc = static_cast<int>(pos) + 1 == p.arc_nodes;
        Mask arc_mask = 0;
        for (int x : placed) arc_mask |= bit(x);
        std::vector<std::vector<Packed>> parts(std::max(1, jobs));
        std::vector<Stats> stats(parts.size());
        parallel_chunks(cur.size(), jobs, [&](size_t b, size_t e, int t) {
            auto emit = [&](const LabelMatrix& l) {
                if (sym && !lex_min(l, placed, r.groups[p.group_of_node[v]])) {
                    ++stats[t].symmetry;
                    return;
                }
                if (arc && !arc_filter(l, arc_mask)) {
                    ++stats[t].arc;
                    return;
                }
                parts[t].push_back(pack(l));
            };
            for (size_t i = b; i < e; ++i) {
                LabelMatrix l = unpack(cur[i], d);
                extend_pairs(r, l, olds, v, 0, 0, stats[t], emit);
            }
        });
        size_t in = cur.size();
        cur.clear();
        Stats st;
        for (size_t t = 0; t < parts.size(); ++t) {
            cur.insert(cur.end(), parts[t].begin(), parts[t].end());
            st.merge(stats[t]);
        }
        total.merge(st);
        emit_trace(trace, tag, {{"stage", "attach"},
                              {"node", v},
                              {"in", in},
                              {"out", cur.size()},
                              {"rejected", {{"face", st.face}, {"lanner", st.lanner}, {"parabolic", st.parabolic},
                                            {"symmetry", st.symmetry}, {"arc", st.arc}}}});
    }
    return cur;
}

CoxeterDiagram to_diagram(const LabelMatrix& l) {
    CoxeterDiagram s(l.d);
    for (int i = 0; i < l.d; ++i)
        for (int j = i + 1; j < l.d; ++j) {
            int c = l(i, j);
            if (c == kDotted)
                s.set_edge(i, j, EdgeLabel::dotted());
            else if (c == kBold)
                s.set_edge(i, j, EdgeLabel::bold());
            else
                s.set_edge(i, j, EdgeLabel::angle(c));
        }
    return s;
}

std::string join(const std::vector<int>& v, char sep = ',') {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) out += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
    return out;
}

}  // namespace

// ---------------------------------------------------------------- arcs

int ArcSpec::nodes() const { return std::accumulate(labels.begin(), labels.end(), 0); }

std::vector<std::vector<int>> ArcSpec::windows() const {
    std::vector<int> first(labels.size() + 1, 0);
    for (size_t i = 0; i < labels.size(); ++i) first[i + 1] = first[i] + labels[i];
    std::vector<std::vector<int>> out;
    for (int s = 0; s + window <= static_cast<int>(labels.size()); ++s) {
        std::vector<int> w;
        for (int x = first[s]; x < first[s + window]; ++x) w.push_back(x);
        out.push_back(std::move(w));
    }
    return out;
}

std::string ArcSpec::to_string() const { return join(labels) + ":" + std::to_string(window); }

ArcSpec ArcSpec::parse(const std::string& text) {
    ArcSpec a;
    auto colon = text.find(':');
    std::string body = text.substr(0, colon);
    size_t pos = 0;
    while (pos <= body.size()) {
        size_t next = body.find(',', pos);
        if (next == std::string::npos) next = body.size();
        std::string tok = body.substr(pos, next - pos);
        try {
            size_t used = 0;
            int x = std::stoi(tok, &used);
            if (used != tok.size() || x < 1) throw std::invalid_argument("label");
            a.labels.push_back(x);
        } catch (const std::logic_error&) {
            throw ParseError("bad arc label '" + tok + "'", 1, static_cast<int>(pos) + 1);
        }
        pos = next + 1;
    }
    if (colon != std::string::npos) {
        std::string w = text.substr(colon + 1);
        try {
            size_t used = 0;
            a.window = std::stoi(w, &used);
            if (used != w.size() || a.window < 1) throw std::invalid_argument("window");
        } catch (const std::logic_error&) {
            throw ParseError("bad window '" + w + "'", 1, static_cast<int>(colon) + 2);
        }
    }
    if (static_cast<int>(a.labels.size()) < a.window) throw ParseError("arc shorter than its window", 1, 1);
    return a;
}

std::vector<CoxeterDiagram> search_arc(const ArcSpec& spec) {
    int d = spec.nodes();
    if (d > kMaxNodes) throw SearchError("arc too large");
    auto windows = spec.windows();
    for (const auto& w : windows)
        if (w.size() <= 3)
            throw SearchError("arc " + spec.to_string() + " has a window of order " + std::to_string(w.size()) +
                              "; labels are unbounded");
    for (const auto& w : windows)
        if (w.size() > 5) return {};
    StagedProblem p;
    p.rules.d = d;
    for (const auto& w : windows) {
        Mask m = 0;
        for (int x : w) m |= bit(x);
        p.rules.required.push_back(m);
    }
    p.rules.allowed.assign(static_cast<size_t>(d) * d, {2, 3, 4, 5});
    int node = 0;
    for (size_t v = 0; v < spec.labels.size(); ++v) {
        std::vector<int> g;
        for (int t = 0; t < spec.labels[v]; ++t) {
            p.group_of_node[node] = static_cast<int>(v);
            g.push_back(node++);
        }
        p.rules.groups.push_back(g);
    }
    p.order.resize(d);
    std::iota(p.order.begin(), p.order.end(), 0);
    p.seed_nodes = static_cast<int>(windows.front().size());
    p.arc_nodes = d;
    Stats st;
    auto found = staged_search(p, 1, st, nullptr, "");
    std::map<std::vector<int>, CoxeterDiagram> classes;
    for (const auto& pk : found) {
        CoxeterDiagram s = to_diagram(unpack(pk, d));
        CanonicalForm cf = canonical_form(s);
        classes.emplace(cf.code, s.permuted(cf.perm));
    }
    std::vector<CoxeterDiagram> out;
    for (auto& [code, s] : classes) out.push_back(std::move(s));
    return out;
}

// ---------------------------------------------------------------- attaching one node

std::vector<CoxeterDiagram> attach_candidates(const CoxeterDiagram& s, const SearchConstraints& c) {
    int d0 = s.order(), d = d0 + 1;
    if (d > kMaxNodes) throw SearchError("diagram too large");
    Rules r;
    r.d = d;
    r.faces_elliptic = c.faces_elliptic;
    r.forbid_parabolic = c.forbid_parabolic;
    for (int k : c.forbidden_lanner_orders)
        if (k >= 2 && k < 32) r.forbidden_sizes |= bit(k);
    for (const auto& q : c.required) {
        Mask m = 0;
        for (int x : q) {
            if (x < 0 || x >= d) throw std::invalid_argument("required set node out of range");
            m |= bit(x);
        }
        r.required.push_back(m);
    }
    r.allowed.assign(static_cast<size_t>(d) * d, {});
    for (int i = 0; i < d0; ++i) {
        auto it = c.allowed.find(i);
        r.allowed[static_cast<size_t>(i) * d + d0] = it != c.allowed.end() ? it->second : c.default_labels;
    }
    if (c.solved_neighbour) {
        if (*c.solved_neighbour < 0 || *c.solved_neighbour >= d0) throw std::invalid_argument("solved neighbour out of range");
        if (c.det_zero.empty()) throw std::invalid_argument("a solved neighbour needs a det_zero set");
        r.solved = *c.solved_neighbour;
    }
    CoxeterDiagram base = s;
    base.add_node();
    LabelMatrix l0(base);
    std::vector<int> olds(d0);
    std::iota(olds.begin(), olds.end(), 0);

    std::vector<LabelMatrix> partial;
    Stats st;
    auto emit = [&](const LabelMatrix& l) { partial.push_back(l); };
    LabelMatrix l = l0;
    extend_pairs(r, l, olds, d0, 0, 0, st, emit);

    auto build = [&](const LabelMatrix& lm) {
        CoxeterDiagram t = base;
        for (int i = 0; i < d0; ++i) {
            int code = lm(i, d0);
            if (code == kDotted)
                t.set_edge(i, d0, EdgeLabel::dotted());
            else if (code == kBold)
                t.set_edge(i, d0, EdgeLabel::bold());
            else
                t.set_edge(i, d0, EdgeLabel::angle(code));
        }
        return t;
    };

    std::map<std::pair<std::vector<int>, std::vector<int>>, CoxeterDiagram> found;
    for (auto& lm : partial) {
        std::vector<LabelMatrix> full;
        if (r.solved >= 0) {
            CoxeterDiagram t = build(lm);
            const auto& z = c.det_zero.front();
            auto ui = std::find(z.begin(), z.end(), r.solved), vi = std::find(z.begin(), z.end(), d0);
            if (ui == z.end() || vi == z.end()) throw std::invalid_argument("det_zero set must contain the solved edge");
            CoxeterDiagram sub = t.subdiagram(z);
            std::vector<AlgebraicReal> roots;
            try {
                roots = solve_unknown_weight(sub, static_cast<int>(ui - z.begin()), static_cast<int>(vi - z.begin()));
            } catch (const DegenerateWeightError&) {
                continue;
            }
            std::set<int> ms;
            for (const auto& root : roots)
                if (auto m = recognize_cos_pi(root, c.max_mult)) ms.insert(*m);
            for (int m : ms) {
                LabelMatrix f = lm;
                f.set(r.solved, d0, m);
                Rules all = r;
                all.solved = -1;
                Mask others = 0;
                for (int i = 0; i < d0; ++i)
                    if (i != r.solved) others |= bit(i);
                if (check_pair(all, f, r.solved, d0, others, st)) full.push_back(f);
            }
        } else {
            full.push_back(lm);
        }
        for (auto& f : full) {
            if (c.connected) {
                bool joined = false;
                for (int i = 0; i < d0; ++i) joined |= f(i, d0) != kOrth;
                if (!joined) continue;
            }
            CoxeterDiagram t = build(f);
            bool ok = true;
            for (const auto& z : c.det_zero) {
                CoxeterDiagram sub = t.subdiagram(z);
                if (!sub.is_concrete() || !determinant(sub).is_zero()) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            std::vector<int> row;
            for (int i = 0; i < d0; ++i) row.push_back(f(i, d0));
            found.emplace(std::make_pair(canonical_form(t).code, row), t);
        }
    }
    std::vector<CoxeterDiagram> out;
    for (auto& [key, t] : found) out.push_back(std::move(t));
    return out;
}

std::vector<AttachInstance> arc_attach_instances(const ArcSpec& spec, int max_order) {
    auto windows = spec.windows();
    int first = static_cast<int>(windows.front().size());
    if (first < 4 || first > 5) throw SearchError("first window must have order 4 or 5");
    std::vector<CoxeterDiagram> stage;
    std::set<std::vector<int>> seen;
    for (const auto& l : lanner_catalog(first)) {
        std::vector<int> perm(first);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            CoxeterDiagram s = l.permuted(perm);
            std::vector<int> key;
            for (int i = 0; i < first; ++i)
                for (int j = i + 1; j < first; ++j) key.push_back(s.code(i, j));
            if (seen.insert(key).second) stage.push_back(s);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    std::vector<AttachInstance> out;
    for (int k = first; k < std::min(max_order, spec.nodes()); ++k) {
        SearchConstraints c;
        for (const auto& w : windows)
            if (w.back() <= k) c.required.push_back(w);
        c.connected = false;
        std::vector<CoxeterDiagram> next;
        for (const auto& s : stage) {
            out.push_back({s, c});
            for (auto& t : attach_candidates(s, c)) next.push_back(std::move(t));
        }
        stage = std::move(next);
    }
    return out;
}

// ---------------------------------------------------------------- unknown weights

std::vector<AlgebraicReal> weight_polynomial(const CoxeterDiagram& s, int i, int j) {
    if (i == j || i < 0 || j < 0 || i >= s.order() || j >= s.order()) throw std::invalid_argument("bad edge");
    CoxeterDiagram t = s;
    t.set_edge(i, j, EdgeLabel::orthogonal());
    Matrix g = gram_matrix(t);
    auto det_at = [&](long w) {
        Matrix m = g;
        m[i][j] = m[j][i] = AlgebraicReal(-w);
        return determinant(m);
    };
    AlgebraicReal p0 = det_at(0), p1 = det_at(1), pm = det_at(-1), p2 = det_at(2);
    AlgebraicReal half(Rational(1, 2));
    AlgebraicReal c = p0, a = (p1 + pm) * half - p0, b = (p1 - pm) * half;
    if (a * AlgebraicReal(4) + b * AlgebraicReal(2) + c != p2)
        throw InternalSearchError("determinant is not quadratic in an edge weight");
    return {c, b, a};
}

std::vector<AlgebraicReal> solve_unknown_weight(const CoxeterDiagram& s, int i, int j) {
    auto p = weight_polynomial(s, i, j);
    if (p[0].is_zero() && p[1].is_zero() && p[2].is_zero()) throw DegenerateWeightError();
    auto roots = solve_quadratic(p[2], p[1], p[0]);
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

// ---------------------------------------------------------------- verification

std::optional<Assignment> verify_polytope(const CoxeterDiagram& s, const GaleDiagram& g) {
    int d = s.order();
    if (d != g.facets())
        throw std::invalid_argument("diagram has " + std::to_string(d) + " nodes, Gale diagram has " +
                                    std::to_string(g.facets()) + " facets");
    if (!s.is_concrete()) throw SymbolicDiagramError();
    int n = g.dim();
    if (!(signature(s) == Signature{n, 1, 2})) return std::nullopt;
    LabelMatrix l(s);
    Mask all = d == 32 ? ~Mask{0} : bit(d) - 1;
    auto lanner = lanner_subdiagrams(s);
    std::vector<Mask> lm;
    for (const auto& q : lanner) {
        Mask m = 0;
        for (int x : q) m |= bit(x);
        lm.push_back(m);
    }
    // Faces: subsets free of Lanner diagrams must be elliptic.
    for (Mask m = 1; m <= all; ++m) {
        bool free = std::none_of(lm.begin(), lm.end(), [&](Mask q) { return (q & m) == q; });
        if (free && !catalog::elliptic(l, m)) return std::nullopt;
        if (m == all) break;
    }
    auto faces = missing_faces(g);
    if (faces.size() != lanner.size()) return std::nullopt;
    std::map<Mask, int> face_index;
    for (size_t f = 0; f < faces.size(); ++f) {
        Mask m = 0;
        for (int x : faces[f].facets) m |= bit(x);
        face_index[m] = static_cast<int>(f);
    }
    std::vector<int> perm(d, -1);
    std::vector<bool> used(d, false);
    auto image = [&](Mask q) {
        Mask m = 0;
        for (int x = 0; x < d; ++x)
            if (q & bit(x)) m |= bit(perm[x]);
        return m;
    };
    // Lanner sets whose largest node is x are checked once x is assigned.
    std::vector<std::vector<Mask>> closing(d);
    for (Mask q : lm) closing[31 - __builtin_clz(q)].push_back(q);
    std::function<bool(int)> assign = [&](int x) {
        if (x == d) return true;
        for (int t = 0; t < d; ++t) {
            int f = (x + t) % d;  // identity first
            if (used[f]) continue;
            perm[x] = f;
            used[f] = true;
            bool ok = std::all_of(closing[x].begin(), closing[x].end(), [&](Mask q) { return face_index.count(image(q)) > 0; });
            if (ok && assign(x + 1)) return true;
            used[f] = false;
        }
        perm[x] = -1;
        return false;
    };
    if (!assign(0)) return std::nullopt;
    Assignment a;
    a.node_to_facet = perm;
    a.lanner = lanner;
    for (Mask q : lm) a.lanner_to_face.push_back(face_index.at(image(q)));
    return a;
}

// ---------------------------------------------------------------- strategies

Strategy parse_strategy(const std::string& text) {
    Strategy s;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_order = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = line.substr(0, line.find('#'));
        std::istringstream ls(body);
        std::string key;
        if (!(ls >> key)) continue;
        auto ints = [&](std::vector<int>& out) {
            int x;
            while (ls >> x) out.push_back(x);
            if (!ls.eof()) throw ParseError("expected integers after '" + key + "'", lineno, 1);
        };
        if (key == "gale") {
            if (!(ls >> s.gale)) throw ParseError("expected a Gale diagram name", lineno, 1);
        } else if (key == "order") {
            ints(s.vertex_order);
            have_order = true;
        } else if (key == "seed") {
            if (!(ls >> s.seed_length)) throw ParseError("expected the seed length", lineno, 1);
        } else if (key == "trusted-empty-arc") {
            ints(s.trusted_empty_arc);
        } else if (key == "note") {
            std::string rest;
            std::getline(ls, rest);
            s.notes.push_back(rest.substr(std::min(rest.size(), rest.find_first_not_of(' '))));
        } else {
            throw ParseError("unknown strategy key '" + key + "'", lineno, 1);
        }
    }
    if (s.gale.empty() || !have_order) throw ParseError("strategy needs 'gale' and 'order'", lineno, 1);
    std::vector<int> sorted = s.vertex_order;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != static_cast<int>(i)) throw ParseError("order must be a permutation of the vertices", lineno, 1);
    if (s.seed_length < 0 || s.seed_length > static_cast<int>(s.vertex_order.size()))
        throw ParseError("seed length out of range", lineno, 1);
    return s;
}

std::string write_strategy(const Strategy& s) {
    std::string out = "gale " + s.gale + "\norder " + join(s.vertex_order, ' ') + "\nseed " + std::to_string(s.seed_length) + "\n";
    if (!s.trusted_empty_arc.empty()) out += "trusted-empty-arc " + join(s.trusted_empty_arc, ' ') + "\n";
    for (const auto& n : s.notes) out += "note " + n + "\n";
    return out;
}

const Strategy& strategy_for(const std::string& gale_name) {
    static const std::map<std::string, Strategy> table = [] {
        std::map<std::string, Strategy> t;
        for (const auto& [stem, text] : detail::embedded_strategies()) {
            Strategy s = parse_strategy(text);
            t[s.gale] = s;
        }
        return t;
    }();
    auto it = table.find(gale_name);
    if (it == table.end()) throw std::invalid_argument("no strategy for '" + gale_name + "'");
    return it->second;
}

int gale_id(const std::string& name) {
    if (name.size() > 1 && name[0] == 'G' && std::all_of(name.begin() + 1, name.end(), ::isdigit)) return std::stoi(name.substr(1));
    return 1000;
}

// ---------------------------------------------------------------- metric phase

namespace {

struct DottedSolve {
    int i, j;
    double w;
    std::vector<int> nodes;  // solved from det = 0 on these nodes
};

struct Realisation {
    LabelMatrix labels;  // all angles concrete, dotted pairs kDotted
    std::vector<DottedSolve> dotted;
};

struct MetricStats {
    long leaves = 0, disconnected = 0, steps = 0, enumerated = 0, unresolved = 0, solutions = 0;
    void merge(const MetricStats& o) {
        leaves += o.leaves;
        disconnected += o.disconnected;
        steps += o.steps;
        enumerated += o.enumerated;
        unresolved += o.unresolved;
        solutions += o.solutions;
    }
};

double gram_value(int code) { return code == kOrth ? 0.0 : -std::cos(M_PI / code); }

std::vector<int> recognize_angle(double t, int cap) {
    std::vector<int> out;
    if (t <= 0 || t >= 1) return out;
    long g = std::lround(M_PI / std::acos(t));
    for (long m = std::max<long>(kUnbounded, g - 1); m <= std::min<long>(cap, g + 1); ++m)
        if (std::abs(std::cos(M_PI / m) - t) < kTol) out.push_back(static_cast<int>(m));
    return out;
}

// Real solutions t of a t^2 + b t + c = 0; sets degenerate when identically zero.
std::vector<double> quad_roots(double a, double b, double c, double scale, bool& degenerate) {
    degenerate = false;
    if (std::abs(a) < 1e-9 * scale) {
        if (std::abs(b) < 1e-9 * scale) {
            degenerate = std::abs(c) < 1e-9 * scale;
            return {};
        }
        return {-c / b};
    }
    double disc = b * b - 4 * a * c;
    if (disc < 0) {
        if (disc > -1e-8 * (b * b + std::abs(4 * a * c)) - 1e-14 * scale * scale) disc = 0;
        else return {};
    }
    double sq = std::sqrt(disc);
    if (sq == 0) return {-b / (2 * a)};
    return {(-b - sq) / (2 * a), (-b + sq) / (2 * a)};
}

// Every principal minor of order n+2 vanishes on the Gram matrix of a polytope with
// n+3 facets. Unknown entries are solved one at a time from such minors, in which
// the determinant is quadratic in the entry; what cannot be solved is enumerated.
class Metric {
public:
    Metric(int cap, MetricStats& st, std::vector<Realisation>& out) : cap_(cap), st_(st), out_(out) {}

    void solve(const LabelMatrix& l) {
        ++st_.leaves;
        Mask all = bit(l.d) - 1;
        if (!catalog::connected(l, all)) {
            ++st_.disconnected;
            return;
        }
        Eigen::MatrixXd g = Eigen::MatrixXd::Identity(l.d, l.d);
        std::vector<std::pair<int, int>> open;
        for (int i = 0; i < l.d; ++i)
            for (int j = i + 1; j < l.d; ++j) {
                int c = l(i, j);
                if (c == kDotted || c == kUnbounded)
                    open.emplace_back(i, j);
                else
                    g(i, j) = g(j, i) = gram_value(c);
            }
        Realisation re{l, {}};
        step(g, open, re);
    }

private:
    static double det_without(const Eigen::MatrixXd& g, int z) {
        int d = static_cast<int>(g.rows());
        Eigen::MatrixXd s(d - 1, d - 1);
        for (int i = 0, a = 0; i < d; ++i) {
            if (i == z) continue;
            for (int j = 0, b = 0; j < d; ++j) {
                if (j == z) continue;
                s(a, b++) = g(i, j);
            }
            ++a;
        }
        return s.partialPivLu().determinant();
    }

    // Hadamard bound of the minor, for relative tolerances.
    static double scale_without(const Eigen::MatrixXd& g, int z) {
        double p = 1;
        for (int i = 0; i < g.rows(); ++i) {
            if (i == z) continue;
            double r = 0;
            for (int j = 0; j < g.cols(); ++j)
                if (j != z) r += g(i, j) * g(i, j);
            p *= std::sqrt(r);
        }
        return p;
    }

    void set(Eigen::MatrixXd& g, int i, int j, double t) { g(i, j) = g(j, i) = -t; }

    void step(Eigen::MatrixXd& g, const std::vector<std::pair<int, int>>& open, Realisation& re) {
        ++st_.steps;
        int d = static_cast<int>(g.rows());
        // Minors free of unknowns must vanish; a minor with one unknown solves it.
        int best_z = -1, best_e = -1;
        for (int z = 0; z < d; ++z) {
            int cnt = 0, which = -1;
            for (size_t k = 0; k < open.size(); ++k)
                if (open[k].first != z && open[k].second != z) {
                    ++cnt;
                    which = static_cast<int>(k);
                }
            if (cnt == 0) {
                if (std::abs(det_without(g, z)) > 1e-8 * scale_without(g, z)) return;
            } else if (cnt == 1 && best_z < 0) {
                best_z = z;
                best_e = which;
            }
        }
        if (open.empty()) {
            finish(g, re);
            return;
        }
        if (best_z >= 0 && try_solve(g, open, re, best_z, best_e)) return;
        // Enumerate an angle whose value lets some minor be solved.
        int pick = -1;
        for (size_t k = 0; k < open.size() && pick < 0; ++k) {
            if (re.labels(open[k].first, open[k].second) != kUnbounded) continue;
            for (int z = 0; z < d && pick < 0; ++z) {
                int cnt = 0;
                for (size_t q = 0; q < open.size(); ++q)
                    if (q != k && open[q].first != z && open[q].second != z) ++cnt;
                if (cnt <= 1) pick = static_cast<int>(k);
            }
        }
        for (size_t k = 0; k < open.size() && pick < 0; ++k)
            if (re.labels(open[k].first, open[k].second) == kUnbounded) pick = static_cast<int>(k);
        if (pick < 0) {
            ++st_.unresolved;
            return;
        }
        auto [i, j] = open[pick];
        std::vector<std::pair<int, int>> rest = open;
        rest.erase(rest.begin() + pick);
        for (int m = kUnbounded; m <= cap_; ++m) {
            ++st_.enumerated;
            set(g, i, j, std::cos(M_PI / m));
            re.labels.set(i, j, m);
            step(g, rest, re);
        }
        re.labels.set(i, j, kUnbounded);
        g(i, j) = g(j, i) = 0;
    }

    // Solves open[e] from the minor without z; false when that minor is degenerate.
    bool try_solve(Eigen::MatrixXd& g, const std::vector<std::pair<int, int>>& open, Realisation& re, int z, int e) {
        auto [i, j] = open[e];
        double p[3];
        for (int t = -1; t <= 1; ++t) {
            set(g, i, j, t);
            p[t + 1] = det_without(g, z);
        }
        set(g, i, j, 2);
        double scale = scale_without(g, z);
        double c = p[1], b = (p[2] - p[0]) / 2, a = (p[2] + p[0]) / 2 - c;
        bool degenerate = false;
        auto roots = quad_roots(a, b, c, scale, degenerate);
        g(i, j) = g(j, i) = 0;
        if (degenerate) return false;
        std::vector<std::pair<int, int>> rest = open;
        rest.erase(rest.begin() + e);
        bool dotted = re.labels(i, j) == kDotted;
        std::vector<int> nodes;
        for (int x = 0; x < static_cast<int>(g.rows()); ++x)
            if (x != z) nodes.push_back(x);
        for (double t : roots) {
            if (dotted) {
                if (t <= 1 + 1e-9) continue;
                set(g, i, j, t);
                re.dotted.push_back({i, j, t, nodes});
                step(g, rest, re);
                re.dotted.pop_back();
            } else {
                for (int m : recognize_angle(t, cap_)) {
                    set(g, i, j, std::cos(M_PI / m));
                    re.labels.set(i, j, m);
                    step(g, rest, re);
                }
                re.labels.set(i, j, kUnbounded);
            }
        }
        g(i, j) = g(j, i) = 0;
        return true;
    }

    void finish(const Eigen::MatrixXd& g, const Realisation& re) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
        const auto& ev = es.eigenvalues();
        double top = ev.cwiseAbs().maxCoeff();
        int neg = 0, zero = 0;
        for (int k = 0; k < ev.size(); ++k) {
            if (std::abs(ev(k)) < 1e-7 * top) ++zero;
            else if (ev(k) < 0) ++neg;
        }
        if (neg != 1 || zero != 2) return;
        ++st_.solutions;
        out_.push_back(re);
    }

    int cap_;
    MetricStats& st_;
    std::vector<Realisation>& out_;
};

// Exact diagram for a numeric realisation, or nullopt when an exact root is missing.
std::optional<CoxeterDiagram> exact_diagram(const Realisation& re) {
    CoxeterDiagram s = to_diagram(re.labels);
    for (const auto& ds : re.dotted) {
        CoxeterDiagram sub = s.subdiagram(ds.nodes);
        int i = static_cast<int>(std::find(ds.nodes.begin(), ds.nodes.end(), ds.i) - ds.nodes.begin());
        int j = static_cast<int>(std::find(ds.nodes.begin(), ds.nodes.end(), ds.j) - ds.nodes.begin());
        sub.set_edge(i, j, EdgeLabel::orthogonal());
        std::vector<AlgebraicReal> roots;
        try {
            roots = solve_unknown_weight(sub, i, j);
        } catch (const DegenerateWeightError&) {
            return std::nullopt;
        }
        std::optional<AlgebraicReal> pick;
        double err = 1e-6 * std::max(1.0, ds.w);
        for (const auto& r : roots) {
            double e = std::abs(r.to_double() - ds.w);
            if (e < err && r > AlgebraicReal(1)) {
                err = e;
                pick = r;
            }
        }
        if (!pick) return std::nullopt;
        s.set_edge(ds.i, ds.j, EdgeLabel::dotted(*pick));
    }
    return s;
}

std::vector<int> realisation_key(const Realisation& re) {
    CoxeterDiagram s = to_diagram(re.labels);
    CanonicalForm cf = canonical_form(s);
    std::vector<int> key = cf.code;
    std::vector<std::pair<std::pair<int, int>, long>> w;
    for (const auto& ds : re.dotted) {
        int a = cf.perm[ds.i], b = cf.perm[ds.j];
        w.push_back({{std::min(a, b), std::max(a, b)}, std::lround(ds.w * 1e6)});
    }
    std::sort(w.begin(), w.end());
    for (const auto& [e, v] : w) {
        key.push_back(e.first);
        key.push_back(e.second);
        key.push_back(static_cast<int>(v));
    }
    return key;
}

}  // namespace

bool entry_less(const CatalogEntry& a, const CatalogEntry& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    int ga = gale_id(a.gale.name), gb = gale_id(b.gale.name);
    if (ga != gb) return ga < gb;
    if (a.gale.name != b.gale.name) return a.gale.name < b.gale.name;
    CanonicalForm ca = canonical_form(a.diagram), cb = canonical_form(b.diagram);
    if (ca.code != cb.code) return ca.code < cb.code;
    return write_diagram(a.diagram) < write_diagram(b.diagram);
}

std::vector<CatalogEntry> enumerate_polytopes(const GaleDiagram& g, const SearchOptions& opt) {
    GaleValidation val = validate(g, g.dim());
    if (!val.ok) throw std::invalid_argument("invalid Gale diagram: " + val.violations.front());
    const Strategy* strat = nullptr;
    Strategy fallback;
    try {
        strat = &strategy_for(g.name);
    } catch (const std::invalid_argument&) {
        fallback.gale = g.name;
        fallback.vertex_order.resize(g.k());
        std::iota(fallback.vertex_order.begin(), fallback.vertex_order.end(), 0);
        strat = &fallback;
    }
    const Strategy& sg = *strat;
    if (static_cast<int>(sg.vertex_order.size()) != g.k()) throw std::invalid_argument("strategy does not match " + g.name);
    int cap = opt.max_mult;
    if (cap < kUnbounded) throw std::invalid_argument("max_mult must be at least 7");
    if (!sg.trusted_empty_arc.empty() && !opt.corroborate) {
        emit_trace(opt.trace, g.name, {{"stage", "arc-axiom"}, {"arc", join(sg.trusted_empty_arc)}, {"out", 0}});
        return {};
    }
    int d = g.facets();
    if (d > kMaxNodes) throw SearchError("too many facets");
    StagedProblem p;
    Rules& r = p.rules;
    r.d = d;
    auto faces = missing_faces(g);
    for (const auto& f : faces) {
        Mask m = 0;
        for (int x : f.facets) m |= bit(x);
        r.required.push_back(m);
    }
    for (int v = 0; v < g.k(); ++v) {
        std::vector<int> grp;
        for (int t = 0; t < g.labels[v]; ++t) {
            grp.push_back(g.first_facet(v) + t);
            p.group_of_node[g.first_facet(v) + t] = v;
        }
        r.groups.push_back(grp);
    }
    for (int v : sg.vertex_order)
        for (int t = 0; t < g.labels[v]; ++t) p.order.push_back(g.first_facet(v) + t);
    // Seed arc: windows inside the leading vertices; capped labels when all have order >= 4.
    int w = g.window();
    std::vector<int> arc_nodes;
    for (int i = 0; i < sg.seed_length; ++i)
        for (int t = 0; t < g.labels[sg.vertex_order[i]]; ++t) arc_nodes.push_back(g.first_facet(sg.vertex_order[i]) + t);
    bool capped = false;
    if (sg.seed_length >= w && w >= 1) {
        capped = true;
        bool contiguous = true;
        for (int i = 1; i < sg.seed_length; ++i) {
            int a = sg.vertex_order[i - 1], b = sg.vertex_order[i];
            contiguous &= (b - a + g.k()) % g.k() == 1 || (a - b + g.k()) % g.k() == 1;
        }
        if (!contiguous) throw std::invalid_argument("seed vertices of " + g.name + " are not an arc");
        for (int s = 0; s + w <= sg.seed_length; ++s) {
            int size = 0;
            for (int i = 0; i < w; ++i) size += g.labels[sg.vertex_order[s + i]];
            if (size < 4) capped = false;
        }
        int first = 0;
        for (int i = 0; i < w; ++i) first += g.labels[sg.vertex_order[i]];
        if (first == 4 || first == 5) p.seed_nodes = first;
    }
    Mask arc_mask = 0;
    for (int x : arc_nodes) arc_mask |= bit(x);
    if (capped) p.arc_nodes = static_cast<int>(arc_nodes.size());
    r.allowed.assign(static_cast<size_t>(d) * d, {});
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (i == j) continue;
            Mask pm = bit(i) | bit(j);
            auto& al = r.allowed[static_cast<size_t>(i) * d + j];
            if (std::find(r.required.begin(), r.required.end(), pm) != r.required.end())
                al = {kDotted};
            else if (capped && (arc_mask & pm) == pm)
                al = {2, 3, 4, 5};
            else
                al = {2, 3, 4, 5, 6, kUnbounded};
        }

    Stats st;
    auto leaves = staged_search(p, opt.jobs, st, opt.trace, g.name);

    // Metric phase.
    std::vector<std::vector<Realisation>> found(std::max(1, opt.jobs));
    std::vector<MetricStats> mstats(found.size());
    parallel_chunks(leaves.size(), opt.jobs, [&](size_t b, size_t e, int t) {
        Metric m(cap, mstats[t], found[t]);
        for (size_t i = b; i < e; ++i) m.solve(unpack(leaves[i], d));
    });
    MetricStats ms;
    std::map<std::vector<int>, Realisation> distinct;
    for (size_t t = 0; t < found.size(); ++t) {
        ms.merge(mstats[t]);
        for (auto& re : found[t]) {
            auto key = realisation_key(re);
            auto it = distinct.find(key);
            if (it == distinct.end() || pack(re.labels) < pack(it->second.labels)) distinct[key] = re;
        }
    }
    emit_trace(opt.trace, g.name,
               {{"stage", "metric"}, {"leaves", ms.leaves}, {"disconnected", ms.disconnected}, {"steps", ms.steps},
                {"enumerated", ms.enumerated}, {"unresolved", ms.unresolved}, {"solutions", ms.solutions},
                {"distinct", distinct.size()}});

    // Exact phase.
    std::vector<const Realisation*> todo;
    for (const auto& [k, re] : distinct) todo.push_back(&re);
    std::vector<std::optional<CatalogEntry>> verified(todo.size());
    parallel_chunks(todo.size(), opt.jobs, [&](size_t b, size_t e, int) {
        for (size_t i = b; i < e; ++i) {
            auto s = exact_diagram(*todo[i]);
            if (!s) continue;
            auto a = verify_polytope(*s, g);
            if (!a) continue;
            CatalogEntry ce;
            ce.dim = g.dim();
            ce.gale = g;
            ce.diagram = *s;
            ce.signature = Signature{g.dim(), 1, 2};
            ce.assignment = *a;
            verified[i] = std::move(ce);
        }
    });
    std::vector<CatalogEntry> out;
    for (auto& v : verified) {
        if (!v) continue;
        bool dup = false;
        for (auto& o : out) {
            if (canonical_form(o.diagram).code != canonical_form(v->diagram).code) continue;
            if (is_isomorphic(o.diagram, v->diagram, true)) {
                if (write_diagram(v->diagram) < write_diagram(o.diagram)) o = *v;
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(std::move(*v));
    }
    std::sort(out.begin(), out.end(), entry_less);
    for (size_t i = 0; i < out.size(); ++i) out[i].diagram.set_name(g.name + "." + std::to_string(i + 1));
    emit_trace(opt.trace, g.name, {{"stage", "exact"}, {"checked", todo.size()}, {"out", out.size()}});
    return out;
}

std::vector<CatalogEntry> run_classification(int n_min, int n_max, const SearchOptions& opt) {
    if (n_min < 4 || n_max > 7 || n_min > n_max) throw std::invalid_argument("dimensions must satisfy 4 <= min <= max <= 7");
    std::vector<CatalogEntry> all;
    for (int n = n_min; n <= n_max; ++n)
        for (const auto& g : enumerate_admissible(n)) {
            auto part = enumerate_polytopes(g, opt);
            all.insert(all.end(), part.begin(), part.end());
        }
    std::stable_sort(all.begin(), all.end(), entry_less);
    return all;
}

}  // namespace coxpoly
