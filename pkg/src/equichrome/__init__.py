"""Equitable list colorings of squares and total graphs of subdivided stars and theta graphs."""

from .coloring import (
    CapContext,
    Coloring,
    ListAssignment,
    ValidationReport,
    cap_context,
    color_usage_histogram,
    equitable_cap,
    is_equitable_k_coloring,
    is_proper,
    validate_equitable_list_coloring,
)
from .errors import EquichromeError
from .graphs import (
    Graph,
    LabelMap,
    build_basic,
    build_star_subdivision,
    build_theta,
    doubled_label_map,
    graph_power,
    graphs_isomorphic,
    subdivide,
    total_graph,
)
from .labels import Label, parse_label
from .oracle import exact_equitable_k_colorable, exact_equitable_list_coloring
from .reduction import ReductionStep, SolveTrace, kpw_check, kpw_extend, rainbow_color
from .star import solve_B133, solve_star_square, solve_star_total
from .theta import (
    NoEquitableColoring,
    solve_staged,
    solve_star_square_plus_edge,
    solve_theta_244,
    solve_theta_2444,
    solve_theta_square,
    solve_theta_total,
)
from .verifier import (
    AuditReport,
    Verdict,
    audit_constructive,
    classic_equitable_facts,
    exhaustive_choosability_over_pool,
    find_bad_assignment,
)

__version__ = "0.1.0"

__all__ = [
    "solve_B133",
    "solve_star_square",
    "solve_star_total",
    "CapContext",
    "Coloring",
    "ListAssignment",
    "ValidationReport",
    "cap_context",
    "color_usage_histogram",
    "equitable_cap",
    "is_equitable_k_coloring",
    "is_proper",
    "validate_equitable_list_coloring",
    "EquichromeError",
    "Graph",
    "LabelMap",
    "build_basic",
    "build_star_subdivision",
    "build_theta",
    "doubled_label_map",
    "graph_power",
    "graphs_isomorphic",
    "subdivide",
    "total_graph",
    "Label",
    "parse_label",
    "exact_equitable_k_colorable",
    "exact_equitable_list_coloring",
    "ReductionStep",
    "SolveTrace",
    "kpw_check",
    "kpw_extend",
    "rainbow_color",
    "NoEquitableColoring",
    "solve_staged",
    "solve_star_square_plus_edge",
    "solve_theta_244",
    "solve_theta_2444",
    "solve_theta_square",
    "solve_theta_total",
    "AuditReport",
    "Verdict",
    "audit_constructive",
    "classic_equitable_facts",
    "exhaustive_choosability_over_pool",
    "find_bad_assignment",
]
