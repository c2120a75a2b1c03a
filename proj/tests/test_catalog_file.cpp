#include <sstream>

#include "coxpoly/catalog_file.hpp"
#include "coxpoly/expr.hpp"
#include "doctest.h"

using namespace coxpoly;

namespace {

const std::vector<CatalogEntry>& six() {
    static const std::vector<CatalogEntry> entries = run_classification(6, 6);
    return entries;
}

std::vector<CatalogEntry> reread(const std::string& text) {
    std::istringstream in(text);
    return read_catalog(in);
}

}  // namespace

TEST_CASE("catalog round trip") {
    std::string text = write_catalog(six());
    CHECK(text.rfind("coxpoly-catalog 1\n", 0) == 0);
    auto back = reread(text);
    REQUIRE(back.size() == six().size());
    for (size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].dim == six()[i].dim);
        CHECK(back[i].gale.labels == six()[i].gale.labels);
        CHECK(back[i].signature == six()[i].signature);
        CHECK(back[i].assignment.node_to_facet == six()[i].assignment.node_to_facet);
        CHECK(back[i].assignment.lanner == six()[i].assignment.lanner);
        CHECK(back[i].assignment.lanner_to_face == six()[i].assignment.lanner_to_face);
        CHECK(back[i].diagram == six()[i].diagram);
    }
    CHECK(write_catalog(back) == text);
    CHECK(reread("coxpoly-catalog 1\n").empty());
}

TEST_CASE("catalog diff") {
    CHECK(diff_catalogs(six(), six()).equal());
    auto permuted = six();
    auto& s = permuted[1].diagram;
    std::vector<int> perm(s.order());
    for (int i = 0; i < s.order(); ++i) perm[i] = (i + 3) % s.order();
    s = s.permuted(perm);
    CHECK(diff_catalogs(six(), permuted).equal());

    auto fewer = six();
    fewer.erase(fewer.begin());
    auto d = diff_catalogs(six(), fewer);
    REQUIRE(d.only_a.size() == 1);
    CHECK(d.only_b.empty());
    CHECK(canonical_string(d.only_a[0].diagram) == canonical_string(six()[0].diagram));

    // Same combinatorics, different dotted weight.
    auto reweighted = six();
    auto& t = reweighted.back().diagram;
    for (int i = 0; i < t.order(); ++i)
        for (int j = i + 1; j < t.order(); ++j)
            if (t.edge(i, j).is_dotted()) t.set_edge(i, j, EdgeLabel::dotted(AlgebraicReal(7)));
    d = diff_catalogs(six(), reweighted);
    CHECK(d.only_a.size() == 1);
    CHECK(d.only_b.size() == 1);
}

TEST_CASE("catalog parse errors") {
    auto line_of = [](const std::string& text) {
        try {
            reread(text);
        } catch (const ParseError& e) {
            return e.line;
        }
        return 0;
    };
    std::string text = write_catalog(six());
    CHECK(line_of("catalog 1\n") == 1);
    CHECK(line_of("coxpoly-catalog 2\n") == 1);
    CHECK(line_of("coxpoly-catalog 1\nentry\ndim 6\n") == 2);
    CHECK(line_of("coxpoly-catalog 1\n\nentry\nbogus\n") == 4);
    std::string bad = text;
    bad.replace(bad.find("edge"), 4, "edgy");
    int expect = 1;
    for (size_t i = 0; i < bad.find("edgy"); ++i) expect += bad[i] == '\n';
    CHECK(line_of(bad) == expect);
}

TEST_CASE("count summaries") {
    auto s = summarize(six(), 6, 6);
    CHECK(s.per_dim.at(6) == 3);
    CHECK(s.per_gale.size() == 6);
    CHECK(s.per_gale.at("G13") == 2);
    CHECK(s.per_gale.at("G11") == 0);
    int total = 0;
    for (const auto& [g, n] : expected_counts()) total += n;
    CHECK(total == 59);
}
