"""Compact hyperbolic Coxeter n-polytopes with n+3 facets."""

from ._coxpoly import (
    Algebraic,
    Diagram,
    Entry,
    Gale,
    ParseError,
    SearchError,
    SymbolicDiagramError,
    congruent,
    cos_pi_over,
    diff_catalogs,
    enumerate_admissible,
    enumerate_polytopes,
    expected_counts,
    face_test,
    gale_by_name,
    lanner_catalog,
    lanner_triangle,
    local_det,
    missing_faces,
    parse_expr,
    read_catalog,
    read_diagrams,
    run_classification,
    search_arc,
    solve_unknown_weight,
    validate,
    verify_polytope,
    weight_polynomial,
    write_catalog,
)

__all__ = [
    "Algebraic",
    "Diagram",
    "Entry",
    "Gale",
    "ParseError",
    "SearchError",
    "SymbolicDiagramError",
    "congruent",
    "cos_pi_over",
    "diff_catalogs",
    "enumerate_admissible",
    "enumerate_polytopes",
    "expected_counts",
    "face_test",
    "gale_by_name",
    "lanner_catalog",
    "lanner_triangle",
    "local_det",
    "missing_faces",
    "parse_expr",
    "read_catalog",
    "read_diagrams",
    "run_classification",
    "search_arc",
    "solve_unknown_weight",
    "validate",
    "verify_polytope",
    "weight_polynomial",
    "write_catalog",
]
