"""Lie point-symmetry machinery for the nonlinear wave equation

    u_xy + alpha*u_x + beta*u_y + gamma*u_x*u_y = 0

covering prolongation, determining equations, the symmetry algebra and its
adjoint representation, classification of one-dimensional subalgebras,
invariant reduction to ODEs, and numerically verified closed-form solution
families.
"""

__version__ = "1.0.0"

from .expr import (
    ALPHA,
    BETA,
    GAMMA,
    Expr,
    ExprError,
    Rat,
    Sym,
    U,
    U_X,
    U_XX,
    U_XY,
    U_Y,
    U_YY,
    UFunc,
    X,
    Y,
    differentiate,
    evaluate,
    substitute,
)
from .algebra import (
    AlgebraElement,
    GroupElement,
    GroupWord,
    adjoint,
    adjoint_table,
    basis_element,
    commutator,
    commutator_table,
    g_element,
    group_action,
    lie_series_adjoint,
    transform_solution,
)
from .classifier import CanonicalCase, classify, orbit_invariance_check
from .determining import (
    ThomasParams,
    check_symmetry,
    determining_equations,
    exponential_g,
    general_symmetry,
    thomas_delta,
    v1,
    v2,
    v3,
    v4,
    v_g,
)
from .families import (
    SolutionFamily,
    case1_solution,
    case21a_solution,
    case21b_solution,
    case22_solution,
    case31a_solution,
    case31b_solution,
    from_descriptor,
    trivial_solutions,
)
from .fuchs import FuchsSeries, fuchs_series, fuchs_solution
from .hyperdual import HyperDual
from .parser import ParseError, parse
from .printer import to_latex, to_text
from .reduction import invariants, reduced_ode, verify_reduction
from .vectorfield import VectorField, prolong
from .verification import GridSpec, oracle_solutions, residual, residual_grid

__all__ = [
    "AlgebraElement",
    "CanonicalCase",
    "FuchsSeries",
    "GridSpec",
    "GroupElement",
    "GroupWord",
    "HyperDual",
    "SolutionFamily",
    "ThomasParams",
    "VectorField",
    "adjoint",
    "adjoint_table",
    "basis_element",
    "case1_solution",
    "case21a_solution",
    "case21b_solution",
    "case22_solution",
    "case31a_solution",
    "case31b_solution",
    "check_symmetry",
    "classify",
    "commutator",
    "commutator_table",
    "determining_equations",
    "exponential_g",
    "from_descriptor",
    "fuchs_series",
    "fuchs_solution",
    "g_element",
    "general_symmetry",
    "group_action",
    "invariants",
    "lie_series_adjoint",
    "oracle_solutions",
    "orbit_invariance_check",
    "prolong",
    "reduced_ode",
    "residual",
    "residual_grid",
    "thomas_delta",
    "transform_solution",
    "trivial_solutions",
    "v1",
    "v2",
    "v3",
    "v4",
    "v_g",
    "verify_reduction",
    "ALPHA",
    "BETA",
    "GAMMA",
    "Expr",
    "ExprError",
    "ParseError",
    "Rat",
    "Sym",
    "U",
    "U_X",
    "U_XX",
    "U_XY",
    "U_Y",
    "U_YY",
    "UFunc",
    "X",
    "Y",
    "differentiate",
    "evaluate",
    "parse",
    "substitute",
    "to_latex",
    "to_text",
    "__version__",
]
