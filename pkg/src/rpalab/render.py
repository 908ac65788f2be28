"""Text and JSON renderings of scalars, waves and operators.

Text output uses the command grammar, so ``parse(render_text(x))`` rebuilds
``x``.  JSON germs look like
``{"modulus": 1, "classes": [[{"exp": "-1", "coef": "1"}]]}``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from numbers import Rational
from typing import Any

from .index_filters import FilterSpec
from .puiseux import Germ, PuiseuxPoly
from .scalars import Classification, RpaComplex, RpaReal

__all__ = ["render_text", "render_json", "to_jsonable", "germ_from_json", "value_from_json"]


def _monomial(e: Fraction) -> str:
    if e == 1:
        return "n"
    if e.denominator == 1 and e > 0:
        return f"n^{e}"
    return f"n^({e})"


def _term(e: Fraction, c: Fraction) -> str:
    if e == 0:
        return str(c)
    mono = _monomial(e)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"


def poly_text(p: PuiseuxPoly) -> str:
    if not p:
        return "0"
    out = ""
    for k, (e, c) in enumerate(p.terms):
        t = _term(e, c)
        if k == 0:
            out = t
        elif t.startswith("-"):
            out += " - " + t[1:]
        else:
            out += " + " + t
    return out


def germ_text(g: Germ) -> str:
    if g.modulus == 1:
        return poly_text(g.polys[0])
    return f"class mod {g.modulus} {{ " + "; ".join(poly_text(p) for p in g.polys) + " }"


def _complex_text(z: RpaComplex) -> str:
    re = germ_text(z.re.germ)
    if not z.im:
        return re
    im = germ_text(z.im.germ)
    if im in ("1", "-1"):
        imag = im[:-1] + "i"
    elif " " in im or im.startswith("class"):
        imag = f"({im})*i"
    else:
        imag = f"{im}*i"
    if not z.re:
        return imag
    if imag.startswith("-"):
        return f"{re} - {imag[1:]}"
    return f"{re} + {imag}"


def render_text(value: Any) -> str:
    from .operators import GridOperator
    from .waves import StepWave

    if isinstance(value, RpaReal):
        return germ_text(value.germ)
    if isinstance(value, RpaComplex):
        return _complex_text(value)
    if isinstance(value, StepWave):
        breaks = ", ".join(render_text(b) for b in value.grid.breakpoints)
        coeffs = ", ".join(render_text(c) for c in value.coeffs)
        return f"wave {{ breaks = [{breaks}]; coeffs = [{coeffs}] }}"
    if isinstance(value, GridOperator):
        grid = ", ".join(render_text(b) for b in value.grid.breakpoints)
        rows = ", ".join("[" + ", ".join(render_text(x) for x in row) + "]"
                         for row in value.matrix)
        return f"op {{ grid = [{grid}]; matrix = [{rows}] }}"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (Classification, Rational, str)):
        return str(value)
    if isinstance(value, dict):
        return " ".join(f"{k}={render_text(v)}" for k, v in value.items())
    raise TypeError(f"cannot render {type(value).__name__}")


def _germ_json(g: Germ) -> dict:
    return {
        "modulus": g.modulus,
        "classes": [[{"exp": str(e), "coef": str(c)} for e, c in p.terms] for p in g.polys],
    }


def to_jsonable(value: Any) -> Any:
    from .operators import GridOperator
    from .waves import StepWave

    if isinstance(value, RpaReal):
        return _germ_json(value.germ)
    if isinstance(value, RpaComplex):
        if not value.im:
            return _germ_json(value.re.germ)
        return {"re": _germ_json(value.re.germ), "im": _germ_json(value.im.germ)}
    if isinstance(value, StepWave):
        return {"breaks": [to_jsonable(b) for b in value.grid.breakpoints],
                "coeffs": [to_jsonable(c) for c in value.coeffs]}
    if isinstance(value, GridOperator):
        return {"grid": [to_jsonable(b) for b in value.grid.breakpoints],
                "matrix": [[to_jsonable(x) for x in row] for row in value.matrix]}
    if isinstance(value, Classification) or (isinstance(value, Rational) and not isinstance(value, int)):
        return str(value)
    if isinstance(value, dict):
        return {k: to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return value


def render_json(value: Any) -> str:
    return json.dumps(to_jsonable(value), separators=(",", ":"))


def germ_from_json(obj: dict) -> Germ:
    polys = [PuiseuxPoly((Fraction(t["exp"]), Fraction(t["coef"])) for t in cls)
             for cls in obj["classes"]]
    return Germ(polys, int(obj["modulus"]))


def value_from_json(obj: dict, F: FilterSpec):
    """Inverse of :func:`to_jsonable` for scalars, waves and operators."""
    from .operators import make_operator
    from .waves import make_wave

    if "modulus" in obj:
        return RpaComplex(RpaReal(germ_from_json(obj), F))
    if "re" in obj:
        return RpaComplex(RpaReal(germ_from_json(obj["re"]), F),
                          RpaReal(germ_from_json(obj["im"]), F))
    if "breaks" in obj:
        return make_wave([value_from_json(b, F).re for b in obj["breaks"]],
                         [value_from_json(c, F) for c in obj["coeffs"]])
    if "matrix" in obj:
        return make_operator([value_from_json(b, F).re for b in obj["grid"]],
                             [[value_from_json(x, F) for x in row] for row in obj["matrix"]])
    raise ValueError("unrecognised JSON value")
