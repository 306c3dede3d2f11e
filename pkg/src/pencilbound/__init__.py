"""Exact remarkable values, reducibility orders and Newton-polygon bounds
for rational first integrals of planar polynomial vector fields."""

from .bipoly import (
    BiPoly,
    RationalFunctionPair,
    SquarefreeDecomposition,
    bi_gcd,
    homogeneous_linear_change,
    resultant_y,
    squarefree_decompose,
    squarefree_part,
)
from .derivation import (
    CofactorResult,
    Derivation,
    apply,
    cofactor_of,
    cofactor_polygon_check,
    is_first_integral,
    jacobian_derivation,
)
from .errors import (
    ConstantFunctionError,
    CoordinateChangeError,
    DecomposableError,
    Falsification,
    NotCoprimeError,
    NotDarbouxError,
    NotFirstIntegralError,
    PencilError,
)
from .field import ExtScope, SplitEvent, SplitRequired, UniPoly, ext_invert, squarefree_part_uni, uni_gcd
from .newton import LatticePolygon, NewtonReport, bcount, convex_hull, count_lattice_nn, nd_support
from .parser import PolySyntaxError, parse_polynomial
from .ruppert import CandidatePolynomial, RuppertSystem, absolute_factor_count, build_ruppert, pencil_candidates
from .spectrum import (
    Indecomposability,
    PencilReport,
    SpectrumEntry,
    SpectrumValue,
    analyze_pencil,
    is_indecomposable_probabilistic,
    poincare_relation_check,
    verify_remarkable_bounds,
)

X = BiPoly.x()
Y = BiPoly.y()
