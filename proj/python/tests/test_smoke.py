import pytest

import coxpoly

G14 = """diagram G14
nodes 9
edge 0 1 dotted
edge 0 8 m=4
edge 1 3 m=4
edge 2 3 m=5
edge 3 6 m=3
edge 4 5 m=3
edge 4 8 m=3
edge 5 6 m=3
edge 7 8 m=5
"""


def test_algebra():
    golden = coxpoly.parse_expr("(1+sqrt(5))/2")
    assert str(golden) == "1/2 + (1/2)*sqrt(5)"
    assert golden * golden == golden + coxpoly.Algebraic(1)
    assert float(coxpoly.cos_pi_over(3)) == pytest.approx(0.5)
    with pytest.raises(coxpoly.ParseError):
        coxpoly.parse_expr("sqrt(")


def test_diagram_basics():
    tri = coxpoly.lanner_triangle(2, 3, 7)
    assert tri.classify() == "Lanner"
    assert tri.signature() == (2, 1, 0)
    assert tri.determinant() == coxpoly.parse_expr("3/4 - cospi(7)*cospi(7)")
    one = coxpoly.Diagram(1)
    assert one.classify() == "Elliptic"
    assert [len(coxpoly.lanner_catalog(k)) for k in (4, 5)] == [9, 5]
    back = coxpoly.Diagram.parse(tri.text())
    assert back == tri


def test_gale():
    assert [len(coxpoly.enumerate_admissible(n)) for n in range(4, 8)] == [4, 6, 6, 4]
    ex = coxpoly.Gale("ex", [1, 1, 2, 1, 2])
    assert [len(f) for f in coxpoly.missing_faces(ex)] == [2, 3, 3, 3, 3]
    assert coxpoly.congruent(ex, coxpoly.gale_by_name("G4"))
    assert coxpoly.validate(coxpoly.Gale("t", [1, 1, 5]), 4)


def test_arcs_and_weights():
    assert len(coxpoly.search_arc("1,4,1:2")) == 3
    assert coxpoly.search_arc("3,1,3:2") == []
    with pytest.raises(coxpoly.SearchError):
        coxpoly.search_arc("1,2,1:2")
    s = coxpoly.Diagram.parse(G14)
    roots = coxpoly.solve_unknown_weight(s, 0, 1)
    assert [str(r) for r in roots] == ["2 + sqrt(5)"]
    s.set_dotted(0, 1, roots[0])
    assert s.signature() == (6, 1, 2)
    assert coxpoly.verify_polytope(s, coxpoly.gale_by_name("G14")) is not None


def test_classification_and_catalog():
    entries = coxpoly.run_classification(6, 6)
    assert len(entries) == 3
    assert all(e.signature == (6, 1, 2) for e in entries)
    text = coxpoly.write_catalog(entries)
    back = coxpoly.read_catalog(text)
    assert coxpoly.write_catalog(back) == text
    only_a, only_b = coxpoly.diff_catalogs(entries, back[1:])
    assert len(only_a) == 1 and only_b == []
    assert len(coxpoly.enumerate_polytopes(coxpoly.gale_by_name("G13"), jobs=2)) == 2
    assert coxpoly.expected_counts()["G2"] == 29
