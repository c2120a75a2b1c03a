#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "coxpoly/catalog_file.hpp"
#include "coxpoly/expr.hpp"
#include "coxpoly/search.hpp"

using namespace coxpoly;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kUsage = 2, kInternal = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool is_catalog(const std::string& text) {
    std::istringstream in(text);
    std::string kw;
    while (in >> kw) {
        if (kw[0] == '#') {
            std::getline(in, kw);
            continue;
        }
        return kw == "coxpoly-catalog";
    }
    return false;
}

std::vector<CoxeterDiagram> load_diagrams(const std::string& path) {
    std::string text = slurp(path);
    std::istringstream in(text);
    if (!is_catalog(text)) return read_diagrams(in);
    std::vector<CoxeterDiagram> out;
    for (auto& e : read_catalog(in)) out.push_back(std::move(e.diagram));
    return out;
}

std::vector<CatalogEntry> load_catalog(const std::string& path) {
    std::istringstream in(slurp(path));
    return read_catalog(in);
}

std::string node_list(const std::vector<int>& v) {
    std::string out = "<";
    for (size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out + ">";
}

std::string value_text(const AlgebraicReal& x) { return format_expr(x) + " ~ " + x.decimal(12); }

int cmd_classify(const std::string& path) {
    for (const auto& s : load_diagrams(path)) {
        if (!s.name().empty()) std::cout << "diagram " << s.name() << "\n";
        std::cout << "order " << s.order() << "\n";
        std::cout << "lanner";
        for (const auto& l : lanner_subdiagrams(s)) std::cout << " " << node_list(l);
        std::cout << "\n";
        if (!s.is_concrete()) throw SymbolicDiagramError();
        std::cout << "det " << value_text(determinant(s)) << "\n";
        std::cout << "signature " << signature(s).to_string() << "\n";
        std::cout << "class " << to_string(classify(s)) << "\n";
    }
    return kOk;
}

int cmd_det(const std::string& path, const std::string& unknown) {
    for (const auto& s : load_diagrams(path)) {
        if (!s.name().empty()) std::cout << "diagram " << s.name() << "\n";
        if (unknown.empty()) {
            std::cout << "det " << value_text(determinant(s)) << "\n";
            continue;
        }
        int i = -1, j = -1;
        char dash = 0;
        std::istringstream u(unknown);
        if (!(u >> i >> dash >> j) || dash != '-' || i < 0 || j < 0 || i >= s.order() || j >= s.order() || i == j)
            throw UsageError("--unknown expects i-j with two distinct node indices");
        auto p = weight_polynomial(s, i, j);
        std::cout << "det(w) = (" << format_expr(p[2]) << ")*w^2 + (" << format_expr(p[1]) << ")*w + ("
                  << format_expr(p[0]) << ")\n";
        try {
            auto roots = solve_unknown_weight(s, i, j);
            if (roots.empty()) std::cout << "roots none\n";
            for (const auto& r : roots) {
                std::cout << "root " << value_text(r);
                if (r > AlgebraicReal(1)) std::cout << " (dotted)";
                if (auto m = recognize_cos_pi(r, kDefaultMaxMult)) std::cout << " (m=" << *m << ")";
                std::cout << "\n";
            }
        } catch (const DegenerateWeightError& e) {
            std::cout << e.what() << "\n";
        }
    }
    return kOk;
}

int cmd_gale(int dim) {
    if (dim < 4) throw UsageError("--dim must be at least 4");
    for (const auto& g : enumerate_admissible(dim)) {
        std::cout << write_gale(g) << "\n";
        for (const auto& f : missing_faces(g)) std::cout << "  missing face " << node_list(f.facets) << "\n";
    }
    return kOk;
}

int cmd_search_arc(const std::string& text) {
    ArcSpec spec = ArcSpec::parse(text);
    std::vector<CoxeterDiagram> found;
    try {
        found = search_arc(spec);
    } catch (const InternalSearchError&) {
        throw;
    } catch (const SearchError& e) {
        throw UsageError(e.what());
    }
    std::cout << "arc " << spec.to_string() << ": " << found.size() << " diagram" << (found.size() == 1 ? "" : "s") << "\n";
    for (size_t i = 0; i < found.size(); ++i) {
        found[i].set_name("arc" + std::to_string(i + 1));
        std::cout << "\n" << write_diagram(found[i]);
    }
    return kOk;
}

std::pair<int, int> parse_dims(const std::string& text) {
    auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            int n = std::stoi(text);
            return {n, n};
        }
        return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
    } catch (const std::logic_error&) {
        throw UsageError("--dim expects N or A..B");
    }
}

struct ReproduceArgs {
    std::string dims = "4..7";
    std::string gale;
    int jobs = 1;
    int max_mult = 0;
    std::string out;
    std::string trace;
    bool trace_given = false;
    bool corroborate = false;
};

int cmd_reproduce(const ReproduceArgs& a) {
    auto [lo, hi] = parse_dims(a.dims);
    if (lo < 4 || hi > 7 || lo > hi) throw UsageError("dimensions must lie in 4..7");
    SearchOptions opt;
    opt.jobs = a.jobs;
    if (a.max_mult > 0) {
        opt.max_mult = a.max_mult;
    } else if (const char* env = std::getenv("COXPOLY_MAX_MULT")) {
        opt.max_mult = std::atoi(env);
    }
    opt.corroborate = a.corroborate;
    std::ofstream trace_file;
    if (a.trace_given) {
        if (a.trace.empty() || a.trace == "-") {
            opt.trace = &std::cerr;
        } else {
            trace_file.open(a.trace);
            if (!trace_file) throw UsageError("cannot write '" + a.trace + "'");
            opt.trace = &trace_file;
        }
    }
    std::vector<CatalogEntry> entries;
    CountSummary sum;
    if (!a.gale.empty()) {
        const GaleDiagram* g = nullptr;
        try {
            g = &gale_by_name(a.gale);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        if (g->dim() < lo || g->dim() > hi) throw UsageError(a.gale + " is not in the requested dimensions");
        entries = enumerate_polytopes(*g, opt);
        sum.per_dim[g->dim()] = static_cast<int>(entries.size());
        sum.per_gale[g->name] = static_cast<int>(entries.size());
    } else {
        entries = run_classification(lo, hi, opt);
        sum = summarize(entries, lo, hi);
    }
    if (!a.out.empty()) {
        std::ofstream f(a.out);
        if (!f) throw UsageError("cannot write '" + a.out + "'");
        write_catalog(f, entries);
    }
    bool match = true;
    std::cout << "gale   found  expected\n";
    std::vector<std::string> names;
    for (const auto& [name, count] : sum.per_gale) names.push_back(name);
    std::sort(names.begin(), names.end(), [](const auto& x, const auto& y) { return gale_id(x) < gale_id(y); });
    for (const auto& name : names) {
        int found = sum.per_gale[name], expect = expected_counts().at(name);
        match &= found == expect;
        std::cout << std::left << std::setw(7) << name << std::setw(7) << found << expect
                  << (found == expect ? "" : "  MISMATCH") << "\n";
    }
    int total = 0;
    for (const auto& [n, count] : sum.per_dim) {
        std::cout << "n=" << n << ": " << count << " polytope" << (count == 1 ? "" : "s");
        std::string parts;
        for (const auto& name : names)
            if (gale_by_name(name).dim() == n && sum.per_gale[name] > 0)
                parts += (parts.empty() ? "" : ", ") + name + ": " + std::to_string(sum.per_gale[name]);
        if (!parts.empty()) std::cout << " (" << parts << ")";
        std::cout << "\n";
        total += count;
    }
    if (sum.per_dim.size() > 1) std::cout << "total: " << total << " polytopes\n";
    if (!match) std::cout << "counts differ from the published classification\n";
    return match ? kOk : kMismatch;
}

void print_entry(const char* side, const CatalogEntry& e) {
    std::cout << side << " " << e.gale.name << " " << canonical_string(e.diagram) << "\n";
}

int cmd_diff(const std::string& pa, const std::string& pb) {
    auto d = diff_catalogs(load_catalog(pa), load_catalog(pb));
    if (d.equal()) {
        std::cout << "catalogs are equal\n";
        return kOk;
    }
    for (const auto& e : d.only_a) print_entry("-", e);
    for (const auto& e : d.only_b) print_entry("+", e);
    std::cout << d.only_a.size() << " only in " << pa << ", " << d.only_b.size() << " only in " << pb << "\n";
    return kMismatch;
}

int cmd_export_dot(const std::string& path) {
    for (const auto& s : load_diagrams(path)) std::cout << to_dot(s);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compact hyperbolic Coxeter n-polytopes with n+3 facets"};
    app.require_subcommand(1);

    std::string file, unknown, arc, cat_a, cat_b;
    int gale_dim = 0;
    ReproduceArgs rep;

    auto* classify_cmd = app.add_subcommand("classify", "Order, determinant, signature, class and Lanner subdiagrams");
    classify_cmd->add_option("file", file, "Diagram or catalog file")->required();

    auto* det_cmd = app.add_subcommand("det", "Exact determinant, or its quadratic dependence on one edge weight");
    det_cmd->add_option("file", file, "Diagram or catalog file")->required();
    det_cmd->add_option("--unknown", unknown, "Edge i-j whose weight is unknown");

    auto* gale_cmd = app.add_subcommand("gale", "Standard Gale diagrams");
    auto* gale_enum = gale_cmd->add_subcommand("enumerate", "Admissible Gale diagrams of one dimension");
    gale_enum->add_option("--dim", gale_dim, "Dimension n")->required();
    gale_cmd->require_subcommand(1);

    auto* arc_cmd = app.add_subcommand("search-arc", "Diagrams realising an arc \"x1,...,xl:w\"");
    arc_cmd->add_option("arc", arc, "Arc labels and window")->required();

    auto* rep_cmd = app.add_subcommand("reproduce", "Run the classification and compare with the published counts");
    rep_cmd->add_option("--dim", rep.dims, "Dimension N or range A..B")->capture_default_str();
    rep_cmd->add_option("--gale", rep.gale, "Restrict to one Gale diagram, e.g. G4");
    rep_cmd->add_option("--jobs", rep.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    rep_cmd->add_option("--max-mult", rep.max_mult, "Guard cap on angle labels (default 101, or COXPOLY_MAX_MULT)")
        ->check(CLI::Range(7, 100000));
    rep_cmd->add_option("--out", rep.out, "Write the catalog here");
    auto* trace_opt = rep_cmd->add_option("--trace", rep.trace, "JSON-lines search trace (file, or stderr when omitted)")
                          ->expected(0, 1);
    rep_cmd->add_flag("--corroborate", rep.corroborate, "Also search where an arc axiom applies");

    auto* diff_cmd = app.add_subcommand("diff", "Isomorphism-aware comparison of two catalogs");
    diff_cmd->add_option("a", cat_a, "First catalog")->required();
    diff_cmd->add_option("b", cat_b, "Second catalog")->required();

    auto* dot_cmd = app.add_subcommand("export-dot", "Graphviz source for each diagram");
    dot_cmd->add_option("file", file, "Diagram or catalog file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }
    rep.trace_given = trace_opt->count() > 0;

    try {
        if (*classify_cmd) return cmd_classify(file);
        if (*det_cmd) return cmd_det(file, unknown);
        if (*gale_enum) return cmd_gale(gale_dim);
        if (*arc_cmd) return cmd_search_arc(arc);
        if (*rep_cmd) return cmd_reproduce(rep);
        if (*diff_cmd) return cmd_diff(cat_a, cat_b);
        if (*dot_cmd) return cmd_export_dot(file);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const SymbolicDiagramError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
    return kUsage;
}
