// One PASS/FAIL line per acceptance criterion; exit status is nonzero if any fails.
// Usage: acceptance [criterion numbers...]

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "coxpoly/catalog.hpp"
#include "coxpoly/catalog_file.hpp"
#include "coxpoly/expr.hpp"
#include "coxpoly/search.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace coxpoly;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

AlgebraicReal rt(long n) { return AlgebraicReal(n).sqrt_nonneg(); }
AlgebraicReal cpi(int m) { return AlgebraicReal::cos_pi_over(m); }

struct Result {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        if (ok) detail.clear();
        ok = false;
        detail += (detail.empty() ? "" : "; ") + why;
    }
};

// The full catalog, timed per Gale diagram.
struct Run {
    std::vector<CatalogEntry> entries;
    std::map<std::string, double> seconds;
    double total = 0;
};

Run classify_all(int max_mult) {
    Run r;
    SearchOptions opt;
    opt.max_mult = max_mult;
    auto t0 = Clock::now();
    for (int n = 4; n <= 7; ++n)
        for (const auto& g : enumerate_admissible(n)) {
            auto t = Clock::now();
            auto part = enumerate_polytopes(g, opt);
            r.seconds[g.name] = seconds_since(t);
            r.entries.insert(r.entries.end(), part.begin(), part.end());
        }
    std::stable_sort(r.entries.begin(), r.entries.end(), entry_less);
    r.total = seconds_since(t0);
    return r;
}

const Run& default_run() {
    static const Run r = classify_all(kDefaultMaxMult);
    return r;
}

Result counts() {
    Result res;
    const Run& run = default_run();
    CountSummary s = summarize(run.entries, 4, 7);
    const std::map<int, int> per_dim{{4, 40}, {5, 16}, {6, 3}, {7, 0}};
    for (const auto& [n, want] : per_dim)
        if (s.per_dim[n] != want) res.fail("n=" + std::to_string(n) + ": " + std::to_string(s.per_dim[n]));
    for (const auto& [g, want] : expected_counts())
        if (s.per_gale[g] != want) res.fail(g + ": " + std::to_string(s.per_gale[g]) + " != " + std::to_string(want));
    double slowest = 0;
    std::string which;
    for (const auto& [g, t] : run.seconds)
        if (t > slowest) slowest = t, which = g;
    if (slowest > 600) res.fail(which + " took " + std::to_string(slowest) + "s");
    if (res.ok) {
        std::ostringstream os;
        os.precision(3);
        os << "40/16/3/0, per-Gale counts match; " << run.total << "s total, slowest " << which << " " << slowest << "s";
        res.detail = os.str();
    }
    return res;
}

Result gales() {
    Result res;
    const int want[] = {4, 6, 6, 4};
    std::string got;
    for (int n = 4; n <= 7; ++n) {
        int k = static_cast<int>(enumerate_admissible(n).size());
        got += (n > 4 ? "/" : "") + std::to_string(k);
        if (k != want[n - 4]) res.fail("n=" + std::to_string(n) + ": " + std::to_string(k));
    }
    if (res.ok) res.detail = got;
    return res;
}

Result arcs() {
    Result res;
    const std::pair<const char*, size_t> expect[] = {
        {"3,1,3:2", 0}, {"3,2,2:2", 0}, {"3,1,4,1:2", 0}, {"2,2,2:2", 1},
        {"2,3,2:2", 1}, {"3,2,3:2", 1}, {"4,1,3:2", 1},   {"1,4,1:2", 3},
    };
    double slowest = 0;
    for (const auto& [arc, count] : expect) {
        auto t = Clock::now();
        size_t got = search_arc(ArcSpec::parse(arc)).size();
        slowest = std::max(slowest, seconds_since(t));
        if (got != count) res.fail(std::string(arc) + " -> " + std::to_string(got));
    }
    if (slowest > 300) res.fail("a search took " + std::to_string(slowest) + "s");
    if (res.ok) res.detail = "8 arcs match; slowest " + std::to_string(slowest) + "s";
    return res;
}

Result identities() {
    Result res;
    CoxeterDiagram tri = lanner_triangle(2, 3, 7);
    if (determinant(tri) != AlgebraicReal(Rational(3, 4)) - cpi(7) * cpi(7)) res.fail("(2,3,7) determinant");
    CoxeterDiagram g14 = parse_diagram(fixtures::kG14Symbolic);
    auto p = weight_polynomial(g14, 0, 1);
    AlgebraicReal a = (rt(5) - AlgebraicReal(2)) / AlgebraicReal(32), r = rt(5) + AlgebraicReal(2);
    if (p[2] != a || p[1] != AlgebraicReal(-2) * a * r || p[0] != a * r * r) res.fail("G14 polynomial");
    if (signature(parse_diagram(fixtures::kG14)) != Signature{6, 1, 2}) res.fail("G14 signature");
    CoxeterDiagram ex = parse_diagram(fixtures::kExample);
    if (signature(ex) != Signature{4, 1, 2}) res.fail("example signature");
    if (!verify_polytope(ex, GaleDiagram{"ex", {1, 1, 2, 1, 2}})) res.fail("example is not a polytope");
    if (res.ok) res.detail = "(2,3,7) det, G14 polynomial and signature, example signature";
    return res;
}

CoxeterDiagram random_diagram(std::mt19937& rng, int d) {
    static const std::vector<int> labels{2, 3, 3, 4, 5, 6};
    CoxeterDiagram s(d);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) s.set_edge(i, j, EdgeLabel::angle(labels[rng() % labels.size()]));
    return s;
}

Result local_determinants() {
    Result res;
    auto absd = [](int p, int q, int r) {
        AlgebraicReal d = local_det(lanner_triangle(p, q, r), {0});
        return d.sign() < 0 ? -d : d;
    };
    if (absd(2, 4, 5) != AlgebraicReal(1) / rt(5)) res.fail("|D(2,4,5)|");
    if (absd(2, 4, 6) != AlgebraicReal(1)) res.fail("|D(2,4,6)|");
    if (absd(3, 4, 3) != rt(2) / AlgebraicReal(3)) res.fail("|D(3,4,3)|");
    int triples = 0;
    for (int p = 2; p <= 10; ++p)
        for (int q = 2; q <= 10; ++q)
            for (int r = 2; r <= 10; ++r) {
                if (!catalog::hyperbolic_triple(p, q, r) || r == 2) continue;
                ++triples;
                if (d_pqr(p, q, r) != local_det(lanner_triangle(p, q, r), {0}))
                    res.fail("D(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + ")");
            }
    std::mt19937 rng(2024);
    int sums = 0, products = 0;
    while (sums < 500 || products < 500) {
        int d1 = 2 + static_cast<int>(rng() % 2), d2 = 2 + static_cast<int>(rng() % 2);
        CoxeterDiagram a = random_diagram(rng, d1), b = random_diagram(rng, d2);
        AlgebraicReal da = determinant(a.without({0})), db = determinant(b.without({0}));
        if (da.is_zero() || db.is_zero()) continue;
        AlgebraicReal la = determinant(a) / da, lb = determinant(b) / db;
        if (sums < 500) {
            CoxeterDiagram g(d1 + d2 - 1);
            for (int i = 0; i < d1; ++i)
                for (int j = i + 1; j < d1; ++j) g.set_edge(i, j, a.edge(i, j));
            auto at = [&](int i) { return i == 0 ? 0 : d1 - 1 + i; };
            for (int i = 0; i < d2; ++i)
                for (int j = i + 1; j < d2; ++j) g.set_edge(at(i), at(j), b.edge(i, j));
            if (local_det(g, {0}) != la + lb - AlgebraicReal(1)) res.fail("loc_sum");
            ++sums;
        }
        if (products < 500) {
            int m = 3 + static_cast<int>(rng() % 4);
            CoxeterDiagram g(d1 + d2);
            for (int i = 0; i < d1; ++i)
                for (int j = i + 1; j < d1; ++j) g.set_edge(i, j, a.edge(i, j));
            for (int i = 0; i < d2; ++i)
                for (int j = i + 1; j < d2; ++j) g.set_edge(d1 + i, d1 + j, b.edge(i, j));
            g.set_edge(0, d1, EdgeLabel::angle(m));
            if (local_det(g, {0, d1}) != la * lb - cpi(m) * cpi(m)) res.fail("loc_product");
            ++products;
        }
    }
    if (res.ok)
        res.detail = "three values exact; " + std::to_string(triples) + " triples; 500 sums and 500 products";
    return res;
}

Result cross_validation() {
    Result res;
    if (lanner_catalog(4).size() != 9) res.fail("order-4 Lanner count");
    if (lanner_catalog(5).size() != 5) res.fail("order-5 Lanner count");
    const std::vector<int> labels{2, 3, 4, 5, 6};
    std::vector<CoxeterDiagram> layer{CoxeterDiagram(1)};
    int compared = 0;
    auto t0 = Clock::now();
    for (int d = 2; d <= 5; ++d) {
        std::vector<CoxeterDiagram> next;
        std::set<std::vector<int>> seen;
        for (const auto& base : layer) {
            int combos = 1;
            for (int k = 0; k < d - 1; ++k) combos *= static_cast<int>(labels.size());
            for (int c = 0; c < combos; ++c) {
                CoxeterDiagram s = base;
                s.add_node();
                for (int k = 0, x = c; k < d - 1; ++k, x /= static_cast<int>(labels.size()))
                    s.set_edge(k, d - 1, EdgeLabel::angle(labels[x % labels.size()]));
                if (!seen.insert(canonical_form(s).code).second) continue;
                next.push_back(s);
                if (!s.is_connected()) continue;
                DiagramClass cls = classify(s);
                if ((cls == DiagramClass::Elliptic) != is_elliptic_catalog(s) ||
                    (cls == DiagramClass::Parabolic) != is_parabolic_catalog(s) ||
                    (cls == DiagramClass::Lanner) != is_lanner_catalog(s))
                    res.fail("disagreement on " + canonical_string(s));
                ++compared;
            }
        }
        layer = std::move(next);
    }
    double t = seconds_since(t0);
    if (t > 600) res.fail("took " + std::to_string(t) + "s");
    if (res.ok) res.detail = std::to_string(compared) + " connected diagrams agree; Lanner counts 9 and 5";
    return res;
}

Result weights() {
    Result res;
    std::map<std::string, std::vector<std::vector<AlgebraicReal>>> by_gale;
    for (const auto& e : default_run().entries) {
        std::vector<AlgebraicReal> ws;
        const auto& s = e.diagram;
        for (int i = 0; i < s.order(); ++i)
            for (int j = i + 1; j < s.order(); ++j)
                if (s.edge(i, j).is_dotted()) ws.push_back(*s.edge(i, j).weight);
        by_gale[e.gale.name].push_back(ws);
    }
    auto has = [](const std::vector<AlgebraicReal>& ws, const AlgebraicReal& w) {
        return std::any_of(ws.begin(), ws.end(), [&](const AlgebraicReal& x) { return x == w; });
    };
    auto in_all = [&](const std::string& g, const AlgebraicReal& w, const std::string& what) {
        if (by_gale[g].empty()) res.fail(g + " has no entries");
        for (const auto& ws : by_gale[g])
            if (!has(ws, w)) res.fail(what + " missing from an entry of " + g);
    };
    auto in_some = [&](const std::string& g, const AlgebraicReal& w, const std::string& what) {
        if (std::none_of(by_gale[g].begin(), by_gale[g].end(), [&](const auto& ws) { return has(ws, w); }))
            res.fail(what + " missing from " + g);
    };
    AlgebraicReal one(1), two(2), four(4);
    AlgebraicReal golden = (one + rt(5)) / two, g10w = rt(2) * (rt(5) + one) / four;
    in_all("G14", rt(5) + two, "sqrt(5)+2");
    in_all("G13", golden, "(1+sqrt(5))/2");
    in_all("G10", g10w, "sqrt(2)(sqrt(5)+1)/4");
    in_all("G1", g10w, "sqrt(2)(sqrt(5)+1)/4");
    in_some("G4", rt(2) * cpi(8), "sqrt(2)cos(pi/8)");
    in_some("G4", golden, "(sqrt(5)+1)/2");
    in_some("G4", one + rt(2), "1+sqrt(2)");
    if (res.ok) res.detail = "G14, G13, G10, G1 and G4 weights equal the published values";
    return res;
}

Result oracle_equivalence() {
    Result res;
    auto t0 = Clock::now();
    auto instances = oracle::strategy_instances();
    std::map<std::string, int> per;
    for (const auto& [tag, inst] : instances) {
        ++per[tag];
        auto staged = oracle::extensions(attach_candidates(inst.base, inst.constraints));
        if (staged != oracle::brute_attach(inst.base, inst.constraints))
            res.fail(tag + " on " + canonical_string(inst.base));
    }
    if (res.ok) {
        std::ostringstream os;
        os.precision(3);
        os << instances.size() << " instances (";
        bool first = true;
        for (const auto& [tag, n] : per) os << (first ? "" : ", ") << tag << ": " << n, first = false;
        os << ") identical; " << seconds_since(t0) << "s";
        res.detail = os.str();
    }
    return res;
}

Result robustness() {
    Result res;
    std::string a = write_catalog(default_run().entries);
    Run raised = classify_all(151);
    std::string b = write_catalog(raised.entries);
    if (a != b) res.fail("catalog changed with cap 151");
    if (res.ok) res.detail = "cap 151 catalog byte-identical (" + std::to_string(a.size()) + " bytes)";
    return res;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<const char*, std::function<Result()>>> criteria{
        {"classification counts", counts},
        {"Gale enumeration", gales},
        {"arc searches", arcs},
        {"exact identities", identities},
        {"local determinants", local_determinants},
        {"catalog cross-validation", cross_validation},
        {"final weights", weights},
        {"oracle equivalence", oracle_equivalence},
        {"robustness", robustness},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        int k = static_cast<int>(i) + 1;
        if (!only.empty() && !only.count(k)) continue;
        Result r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r.fail(std::string("exception: ") + e.what());
        }
        failed += !r.ok;
        std::cout << "criterion " << k << " " << (r.ok ? "PASS" : "FAIL") << "  " << criteria[i].first << ": " << r.detail
                  << std::endl;
    }
    return failed ? 1 : 0;
}
