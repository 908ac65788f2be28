"""Exact reduced power algebras R_F, C_F and step-function quantum mechanics over them."""

from .errors import (
    DomainError,
    FilterMismatch,
    GridMismatch,
    IncomparableBreakpoints,
    KindError,
    NonIncreasingBreakpoints,
    NotInvertible,
    NotNonneg,
    NotNormalizable,
    ParseError,
    RpaError,
    UnboundName,
    Unrepresentable,
)
from .index_filters import (
    EVENS,
    ODDS,
    Frechet,
    IndexSet,
    PrincipalAt,
    SupersetOf,
    is_member,
    parse_filter,
    parse_index_set,
    set_algebra,
)
from .operators import (
    BoundCertificate,
    GridOperator,
    apply,
    bound_certificate,
    bound_combinators,
    center,
    commutator,
    expectation,
    expectation_is_real,
    heisenberg_holds,
    identity,
    is_hermitian,
    make_operator,
    power_commutator_residual,
    trace,
    uncertainty_approx,
    variance,
    wintner_residual,
    wintner_witness,
)
from .puiseux import Germ, PuiseuxPoly
from .scalars import (
    Classification,
    RpaComplex,
    RpaReal,
    compare,
    embed_complex,
    embed_real,
    eventual_max,
    from_spec,
    omega,
    piecewise,
)
from .waves import (
    Grid,
    StepWave,
    inner_product,
    integrate,
    make_grid,
    make_wave,
    norm_approx,
    norm_squared,
    refine_common,
    schwarz_holds,
    wave_algebra,
)

from .parser import parse, parse_expr
from .render import render_json, render_text, to_jsonable, value_from_json
from .session import Output, Session, execute, run_line
from .suites import SUITES, run_suite

__version__ = "0.1.0"


__all__ = [
    "DomainError",
    "FilterMismatch",
    "GridMismatch",
    "IncomparableBreakpoints",
    "KindError",
    "NonIncreasingBreakpoints",
    "NotInvertible",
    "NotNonneg",
    "NotNormalizable",
    "ParseError",
    "RpaError",
    "UnboundName",
    "Unrepresentable",
    "EVENS",
    "ODDS",
    "Frechet",
    "IndexSet",
    "PrincipalAt",
    "SupersetOf",
    "is_member",
    "parse_filter",
    "parse_index_set",
    "set_algebra",
    "BoundCertificate",
    "GridOperator",
    "apply",
    "bound_certificate",
    "bound_combinators",
    "center",
    "commutator",
    "expectation",
    "expectation_is_real",
    "heisenberg_holds",
    "identity",
    "is_hermitian",
    "make_operator",
    "power_commutator_residual",
    "trace",
    "uncertainty_approx",
    "variance",
    "wintner_residual",
    "wintner_witness",
    "Classification",
    "RpaComplex",
    "RpaReal",
    "compare",
    "embed_complex",
    "embed_real",
    "eventual_max",
    "from_spec",
    "omega",
    "piecewise",
    "Grid",
    "StepWave",
    "inner_product",
    "integrate",
    "make_grid",
    "make_wave",
    "norm_approx",
    "norm_squared",
    "refine_common",
    "schwarz_holds",
    "wave_algebra",
    "Germ",
    "PuiseuxPoly",
    "parse",
    "parse_expr",
    "render_json",
    "render_text",
    "to_jsonable",
    "value_from_json",
    "Output",
    "Session",
    "execute",
    "run_line",
    "SUITES",
    "run_suite",
]
