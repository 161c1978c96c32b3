"""Exact-arithmetic tools for log surfaces built from blow-ups of the plane
and from hypersurfaces in weighted projective 3-space."""

from logsurf.dualgraph import (
    CyclicType,
    DualGraph,
    GermClassification,
    GraphVertex,
    adjunction_degree,
    classify_germ,
    contract_and_square,
    cyclic_type,
    enumerate_fork_squares,
    graph_determinant,
    parse_graph,
    residue_search,
)
from logsurf.exact import (
    QMatrix,
    QuadraticForm1D,
    Rational,
    determinant,
    is_negative_definite,
    lp_feasible,
    minimize_quadratic,
    rat,
    solve_linear,
)
from logsurf.lattice import (
    BlowupRecipe,
    QDivisor,
    SurfaceModel,
    build_from_recipe,
    divisor_class,
    germ_of_cluster,
    log_pullback,
    parse_recipe,
    qdiv,
)
from logsurf.positivity import (
    ContractionReport,
    ThresholdResult,
    ZariskiResult,
    contraction_report,
    nef_certificate,
    nef_threshold,
    pet,
    psef_test,
    pullback_after_contraction,
    volume,
    zariski,
)
from logsurf.wps import (
    ChartDossier,
    WeightedPoly,
    Weights,
    analyze_origin,
    chart_poly,
    check_homogeneous,
    classify_hypersurface,
    coordinate_membership,
    hilbert_series,
    monomial_basis,
    node_only_certificate,
    normal_form,
    projective_equivalence,
    wps_volume,
)

__all__ = [
    "BlowupRecipe",
    "ChartDossier",
    "ContractionReport",
    "CyclicType",
    "DualGraph",
    "GermClassification",
    "GraphVertex",
    "QDivisor",
    "QMatrix",
    "QuadraticForm1D",
    "Rational",
    "SurfaceModel",
    "ThresholdResult",
    "WeightedPoly",
    "Weights",
    "ZariskiResult",
    "adjunction_degree",
    "analyze_origin",
    "build_from_recipe",
    "chart_poly",
    "check_homogeneous",
    "classify_germ",
    "classify_hypersurface",
    "contract_and_square",
    "contraction_report",
    "coordinate_membership",
    "cyclic_type",
    "determinant",
    "divisor_class",
    "enumerate_fork_squares",
    "germ_of_cluster",
    "graph_determinant",
    "hilbert_series",
    "is_negative_definite",
    "log_pullback",
    "lp_feasible",
    "minimize_quadratic",
    "monomial_basis",
    "nef_certificate",
    "nef_threshold",
    "node_only_certificate",
    "normal_form",
    "parse_graph",
    "parse_recipe",
    "pet",
    "projective_equivalence",
    "psef_test",
    "pullback_after_contraction",
    "qdiv",
    "rat",
    "residue_search",
    "solve_linear",
    "volume",
    "wps_volume",
    "zariski",
]

__version__ = "0.1.0"
