"""Sequential evaluation of parsed commands against a session."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Mapping

from . import operators as ops
from . import waves
from .errors import KindError, UnboundName
from .index_filters import FilterSpec, Frechet
from .parser import (BinOp, Call, ClassLit, Classify, Cmp, Command, EvalAt, Fuzz, Heisenberg,
                     Let, Neg, Num, OpLit, Patch, Pow, Show, Sym, WaveLit, Wintner, parse)
from .puiseux import Germ, PuiseuxPoly
from .scalars import RpaComplex, RpaReal, compare, embed_real, from_spec, piecewise
from .waves import StepWave

__all__ = ["Session", "Output", "evaluate", "execute", "run_line"]

Value = Any  # RpaComplex | StepWave | GridOperator


@dataclass(frozen=True)
class Session:
    filter: FilterSpec = field(default_factory=Frechet)
    trunc: int = 4
    bindings: Mapping[str, Value] = field(default_factory=dict)
    seed: int = 0


@dataclass(frozen=True)
class Output:
    """``kind`` names the command; ``payload`` is what gets rendered."""

    kind: str
    payload: Any
    exit_code: int = 0


RESERVED = {"n", "omega", "i"}


def _real(v: Value, what: str) -> RpaReal:
    if not isinstance(v, RpaComplex):
        raise KindError(f"{what} needs a scalar")
    if v.im:
        raise KindError(f"{what} needs a real scalar")
    return v.re


def _scalar(v: Value, what: str) -> RpaComplex:
    if not isinstance(v, RpaComplex):
        raise KindError(f"{what} needs a scalar, got a {_kind(v)}")
    return v


def _kind(v: Value) -> str:
    if isinstance(v, RpaComplex):
        return "scalar"
    if isinstance(v, StepWave):
        return "wave"
    if isinstance(v, ops.GridOperator):
        return "operator"
    return type(v).__name__


def _lift_real(x: RpaReal) -> RpaComplex:
    return RpaComplex(x)


def _germ_value(poly: PuiseuxPoly, F: FilterSpec) -> RpaComplex:
    return RpaComplex(RpaReal(Germ.of(poly), F))


def _mul(a: Value, b: Value) -> Value:
    if isinstance(a, RpaComplex) and isinstance(b, RpaComplex):
        return a * b
    if isinstance(a, RpaComplex) and isinstance(b, (StepWave, ops.GridOperator)):
        return b.scale(a)
    if isinstance(b, RpaComplex) and isinstance(a, (StepWave, ops.GridOperator)):
        return a.scale(b)
    if isinstance(a, ops.GridOperator) and isinstance(b, (StepWave, ops.GridOperator)):
        return a * b
    if isinstance(a, StepWave) and isinstance(b, StepWave):
        return a * b
    raise KindError(f"cannot multiply {_kind(a)} by {_kind(b)}")


def _add(a: Value, b: Value, sign: int) -> Value:
    if type(a) is not type(b):
        raise KindError(f"cannot add {_kind(a)} and {_kind(b)}")
    return a + b if sign > 0 else a - b


_FUNCS = {
    "re": 1, "im": 1, "conj": 1, "abs2": 1, "sqrt": 1, "abs": 1, "abs1": 1, "inv": 1,
    "integrate": 1, "norm2": 1, "trace": 1, "inner": 2, "expect": 2, "var": 2,
    "center": 2, "comm": 2, "apply": 2,
}


def evaluate(expr, session: Session) -> Value:
    F = session.filter
    ev = lambda e: evaluate(e, session)  # noqa: E731

    if isinstance(expr, Num):
        return RpaComplex(embed_real(expr.value, F))
    if isinstance(expr, Sym):
        if expr.name in ("n", "omega"):
            return _germ_value(PuiseuxPoly.monomial(1, 1), F)
        if expr.name == "i":
            return RpaComplex(embed_real(0, F), embed_real(1, F))
        try:
            return session.bindings[expr.name]
        except KeyError:
            raise UnboundName(f"name {expr.name!r} is not bound") from None
    if isinstance(expr, Neg):
        v = ev(expr.operand)
        return -v
    if isinstance(expr, BinOp):
        a, b = ev(expr.left), ev(expr.right)
        if expr.op == "+":
            return _add(a, b, 1)
        if expr.op == "-":
            return _add(a, b, -1)
        if expr.op == "*":
            return _mul(a, b)
        inv = _scalar(b, "division").try_invert()
        return _mul(a, inv)
    if isinstance(expr, Pow):
        if isinstance(expr.base, Sym) and expr.base.name in ("n", "omega"):
            return _germ_value(PuiseuxPoly.monomial(1, expr.exponent), F)
        base = ev(expr.base)
        if expr.exponent.denominator != 1:
            raise KindError("fractional powers are only defined for n; use sqrt()")
        k = int(expr.exponent)
        if isinstance(base, ops.GridOperator):
            if k < 0:
                raise KindError("negative operator powers are not supported")
            return base ** k
        return _scalar(base, "power") ** k
    if isinstance(expr, ClassLit):
        parts = [_scalar(ev(p), "class literal") for p in expr.parts]
        re = piecewise([p.re for p in parts])
        im = piecewise([p.im for p in parts])
        return RpaComplex(re, im)
    if isinstance(expr, Patch):
        v = _real(ev(expr.operand), "patch")
        patched = from_spec(v.germ, dict(expr.patches), F)
        return RpaComplex(patched)
    if isinstance(expr, WaveLit):
        breaks = [_real(ev(b), "breakpoint") for b in expr.breaks]
        coeffs = [_scalar(ev(c), "wave coefficient") for c in expr.coeffs]
        return waves.make_wave(breaks, coeffs, F)
    if isinstance(expr, OpLit):
        grid = [_real(ev(b), "grid point") for b in expr.grid]
        matrix = [[_scalar(ev(x), "matrix entry") for x in row] for row in expr.matrix]
        return ops.make_operator(grid, matrix, F)
    if isinstance(expr, Call):
        return _call(expr, [ev(a) for a in expr.args], session)
    raise TypeError(f"unknown expression node {expr!r}")


def _call(expr: Call, args: list, session: Session) -> Value:
    fn = expr.fn
    if fn not in _FUNCS:
        raise UnboundName(f"unknown function {fn!r}")
    if len(args) != _FUNCS[fn]:
        raise KindError(f"{fn} takes {_FUNCS[fn]} argument(s)")
    a = args[0]
    if fn == "re":
        return _lift_real(_scalar(a, fn).re)
    if fn == "im":
        return _lift_real(_scalar(a, fn).im)
    if fn == "conj":
        return _scalar(a, fn).conj()
    if fn == "abs2":
        return _lift_real(_scalar(a, fn).abs_squared())
    if fn == "abs1":
        return _lift_real(_scalar(a, fn).abs_one_norm())
    if fn == "abs":
        return _lift_real(_real(a, fn).real_abs())
    if fn == "sqrt":
        return _lift_real(_real(a, fn).sqrt_nonneg(session.trunc))
    if fn == "inv":
        return _scalar(a, fn).try_invert()
    if fn == "integrate":
        return waves.integrate(_wave(a, fn))
    if fn == "norm2":
        return _lift_real(waves.norm_squared(_wave(a, fn)))
    if fn == "trace":
        return ops.trace(_op(a, fn))
    b = args[1]
    if fn == "inner":
        return waves.inner_product(_wave(a, fn), _wave(b, fn))
    if fn == "expect":
        return ops.expectation(_op(a, fn), _wave(b, fn))
    if fn == "var":
        return _lift_real(ops.variance(_op(a, fn), _wave(b, fn)))
    if fn == "center":
        return ops.center(_op(a, fn), _wave(b, fn))
    if fn == "comm":
        return ops.commutator(_op(a, fn), _op(b, fn))
    return ops.apply(_op(a, fn), _wave(b, fn))


def _wave(v, what) -> StepWave:
    if not isinstance(v, StepWave):
        raise KindError(f"{what} needs a wave, got a {_kind(v)}")
    return v


def _op(v, what) -> ops.GridOperator:
    if not isinstance(v, ops.GridOperator):
        raise KindError(f"{what} needs an operator, got a {_kind(v)}")
    return v


def execute(session: Session, cmd: Command) -> tuple[Session, Output]:
    if isinstance(cmd, Let):
        if cmd.name in RESERVED:
            raise KindError(f"{cmd.name!r} is reserved")
        value = evaluate(cmd.expr, session)
        bindings = dict(session.bindings)
        bindings[cmd.name] = value
        return replace(session, bindings=bindings), Output("let", {"name": cmd.name, "value": value})
    if isinstance(cmd, Show):
        return session, Output("show", evaluate(cmd.expr, session))
    if isinstance(cmd, Classify):
        x = _real(evaluate(cmd.expr, session), "classify")
        return session, Output("classify", {"classification": x.classify()})
    if isinstance(cmd, Cmp):
        a = _real(evaluate(cmd.left, session), "cmp")
        b = _real(evaluate(cmd.right, session), "cmp")
        return session, Output("cmp", {"relation": compare(a, b)})
    if isinstance(cmd, Heisenberg):
        A = _op(evaluate(cmd.a, session), "heisenberg")
        B = _op(evaluate(cmd.b, session), "heisenberg")
        psi = _wave(evaluate(cmd.psi, session), "heisenberg")
        verdict = ops.heisenberg_holds(A, B, psi)
        return session, Output("heisenberg", {
            "holds": verdict.holds,
            "residual": verdict.residual,
            "classification": verdict.residual.classify(),
        })
    if isinstance(cmd, Wintner):
        A = _op(evaluate(cmd.a, session), "wintner")
        B = _op(evaluate(cmd.b, session), "wintner")
        c = _scalar(evaluate(cmd.c, session), "wintner")
        w = ops.wintner_witness(A, B, c)
        return session, Output("wintner", {"trace": w.trace, "nonzero": w.nonzero})
    if isinstance(cmd, EvalAt):
        if cmd.index < 1:
            raise KindError("evalat needs an index n >= 1")
        v = _scalar(evaluate(cmd.expr, session), "evalat")
        re, im = v.eval_at(cmd.index)
        value = RpaComplex(embed_real(re, session.filter), embed_real(im, session.filter)) \
            if im else RpaComplex(embed_real(re, session.filter))
        return session, Output("evalat", {"index": cmd.index, "value": value})
    if isinstance(cmd, Fuzz):
        from .suites import run_suite
        report = run_suite(cmd.suite, cmd.cases, session.seed if cmd.seed is None else cmd.seed)
        return session, Output("fuzz", report, 0 if report["failed"] == 0 else 4)
    raise TypeError(f"unknown command {cmd!r}")


def run_line(session: Session, line: str) -> tuple[Session, Output]:
    return execute(session, parse(line))
