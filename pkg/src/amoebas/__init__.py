"""Amoebas of complex Laurent polynomials.

Exact-arithmetic-free but certificate-driven computation of amoebas in
two variables: fiber membership, four-way point classification, order
and lopsidedness certificates, contour tracing through the logarithmic
Gauss map, Betti and classification rasters, and amoeba bases for
full-rank linear systems.
"""

__version__ = "0.1.0"

from .errors import (
    AmoebaError,
    AxiomFailure,
    DegenerateFiber,
    DegenerateSlice,
    EmptyInput,
    IdenticallyZero,
    InconsistentOrder,
    NegativeExponent,
    NoConvergence,
    NotLinear,
    Overflow,
    ParseError,
    PolySyntaxError,
    SingularMatrix,
    UnknownVariable,
    ZeroCoordinate,
)
from .laurent import (
    LaurentPoly,
    NewtonPolytope,
    RealPoly,
    RealPolyPair,
    evaluate,
    fiber_restrict,
    log_gauss_numerator,
    monomial_clear,
    newton_polytope,
    partial,
    realify,
)
from .parsing import format_poly, parse_poly
from .numeric import (
    RootCluster,
    UniPoly,
    conj_reciprocal,
    det,
    roots,
    solve_linear,
    sylvester_resultant,
)
from .fiber import (
    FiberSolution,
    PointClass,
    classify,
    fiber_solutions,
    is_critical,
    lopsided,
    order,
)
from .contour import ContourPoint, classify_contour, contour_slice, trace_contour
from .linear import (
    AmoebaBasis,
    BasisReport,
    LinearSystem,
    amoeba_basis,
    linear_classify,
    verify_basis,
)
from .raster import (
    Raster,
    amoeba_grids,
    betti_grid,
    cell_walls,
    classification_grid,
    lopsided_grid,
)

__all__ = [
    "__version__",
    "AmoebaError", "AxiomFailure", "DegenerateFiber", "DegenerateSlice",
    "EmptyInput", "IdenticallyZero", "InconsistentOrder", "NegativeExponent",
    "NoConvergence", "NotLinear", "Overflow", "ParseError", "PolySyntaxError",
    "SingularMatrix", "UnknownVariable", "ZeroCoordinate",
    "LaurentPoly", "NewtonPolytope", "RealPoly", "RealPolyPair",
    "evaluate", "fiber_restrict", "log_gauss_numerator", "monomial_clear",
    "newton_polytope", "partial", "realify",
    "format_poly", "parse_poly",
    "RootCluster", "UniPoly", "conj_reciprocal", "det", "roots",
    "solve_linear", "sylvester_resultant",
    "FiberSolution", "PointClass", "classify", "fiber_solutions",
    "is_critical", "lopsided", "order",
    "ContourPoint", "classify_contour", "contour_slice", "trace_contour",
    "AmoebaBasis", "BasisReport", "LinearSystem", "amoeba_basis",
    "linear_classify", "verify_basis",
    "Raster", "amoeba_grids", "betti_grid", "cell_walls",
    "classification_grid", "lopsided_grid",
]
