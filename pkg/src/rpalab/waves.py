"""Step-function waves with values in C_F.

A wave is ``sum_h gamma_h * 1[a_{h-1}, a_h)`` with breakpoints in R_F.
Because breakpoints may be infinitely large (``omega``), intervals of
"infinite length" have an honest length in R_F and every integral below is
a finite algebraic expression.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (FilterMismatch, IncomparableBreakpoints, KindError,
                     NonIncreasingBreakpoints)
from .scalars import RpaComplex, RpaReal, embed_real, eventual_max

__all__ = [
    "Grid",
    "StepWave",
    "make_grid",
    "make_wave",
    "refine_common",
    "integrate",
    "inner_product",
    "schwarz_holds",
    "norm_squared",
    "norm_approx",
]


def _as_complex(c, F) -> RpaComplex:
    if isinstance(c, RpaComplex):
        return c
    if isinstance(c, RpaReal):
        return RpaComplex(c)
    if isinstance(c, complex):
        return RpaComplex(embed_real(Fraction(c.real), F), embed_real(Fraction(c.imag), F))
    return RpaComplex(embed_real(Fraction(c), F))


def _strict_order(x: RpaReal, y: RpaReal) -> int:
    """-1 if x < y strictly on every relevant class, 0 if equal, 1 if x > y."""
    d = y - x
    if not d:
        return 0
    if d.is_strictly_positive():
        return -1
    if (-d).is_strictly_positive():
        return 1
    raise IncomparableBreakpoints(f"{x!r} and {y!r} are not strictly ordered")


@dataclass(frozen=True, eq=False)
class Grid:
    breakpoints: tuple[RpaReal, ...]
    lengths: tuple[RpaReal, ...]

    @property
    def filter(self):
        return self.breakpoints[0].filter

    @property
    def size(self) -> int:
        return len(self.lengths)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Grid) and len(self.breakpoints) == len(other.breakpoints)
                and all(a == b for a, b in zip(self.breakpoints, other.breakpoints)))

    def __hash__(self) -> int:
        return hash(self.breakpoints)


def make_grid(breakpoints: Sequence, F=None) -> Grid:
    """Grid from increasing breakpoints; plain numbers are embedded into ``F``."""
    if len(breakpoints) < 2:
        raise KindError("a grid needs at least two breakpoints")
    if F is None:
        F = next((b.filter for b in breakpoints if isinstance(b, (RpaReal, RpaComplex))),
                 None)
    if F is None:
        raise ValueError("breakpoints need a filter")
    pts = []
    for b in breakpoints:
        if not isinstance(b, RpaReal):
            if isinstance(b, RpaComplex):
                if b.im:
                    raise KindError("breakpoints must be real")
                b = b.re
            else:
                b = embed_real(Fraction(b), F)
        if b.filter != F:
            raise FilterMismatch("breakpoints over different filters")
        pts.append(b)
    lengths = []
    for a, b in zip(pts, pts[1:]):
        w = b - a
        if not w.is_strictly_positive():
            signs = {p.sign() for p in w.relevant_polys()}
            if 1 in signs and -1 in signs:
                raise IncomparableBreakpoints(f"breakpoints {a!r}, {b!r} are incomparable")
            raise NonIncreasingBreakpoints(f"breakpoint {b!r} does not exceed {a!r}")
        lengths.append(w)
    return Grid(tuple(pts), tuple(lengths))


@dataclass(frozen=True, eq=False)
class StepWave:
    grid: Grid
    coeffs: tuple[RpaComplex, ...]

    @property
    def filter(self):
        return self.grid.filter

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StepWave):
            return NotImplemented
        _, a, b = refine_common(self, other)
        return all(x == y for x, y in zip(a, b))

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "StepWave") -> "StepWave":
        return wave_algebra(self, other, "add")

    def __sub__(self, other: "StepWave") -> "StepWave":
        return wave_algebra(self, other, "sub")

    def __neg__(self) -> "StepWave":
        return StepWave(self.grid, tuple(-c for c in self.coeffs))

    def scale(self, c) -> "StepWave":
        c = _as_complex(c, self.filter)
        return StepWave(self.grid, tuple(c * g for g in self.coeffs))

    def __rmul__(self, c) -> "StepWave":
        return self.scale(c)

    def __mul__(self, other) -> "StepWave":
        if isinstance(other, StepWave):
            return wave_algebra(self, other, "mul")
        return self.scale(other)


def make_wave(grid, coeffs: Sequence, F=None) -> StepWave:
    if not isinstance(grid, Grid):
        if F is None:
            F = next((c.filter for c in coeffs if isinstance(c, (RpaReal, RpaComplex))), None)
        grid = make_grid(grid, F)
    if len(coeffs) != grid.size:
        raise KindError(f"{grid.size} intervals but {len(coeffs)} coefficients")
    F = grid.filter
    cs = tuple(_as_complex(c, F) for c in coeffs)
    if any(c.filter != F for c in cs):
        raise FilterMismatch("coefficients and grid over different filters")
    return StepWave(grid, cs)


def _merge(a: Sequence[RpaReal], b: Sequence[RpaReal]):
    """Sorted union of two increasing breakpoint lists, with source positions."""
    out: list[tuple[RpaReal, int | None, int | None]] = []
    i = j = 0
    while i < len(a) or j < len(b):
        if j == len(b):
            out.append((a[i], i, None)); i += 1
        elif i == len(a):
            out.append((b[j], None, j)); j += 1
        else:
            s = _strict_order(a[i], b[j])
            if s == 0:
                out.append((a[i], i, j)); i += 1; j += 1
            elif s < 0:
                out.append((a[i], i, None)); i += 1
            else:
                out.append((b[j], None, j)); j += 1
    return out


def _spread(wave: StepWave, positions: list[int], size: int) -> tuple[RpaComplex, ...]:
    zero = wave.coeffs[0].zero()
    out = [zero] * size
    for h, c in enumerate(wave.coeffs):
        for k in range(positions[h], positions[h + 1]):
            out[k] = c
    return tuple(out)


def refine_common(psi: StepWave, chi: StepWave):
    """Common refinement: ``(grid, psi_coeffs, chi_coeffs)`` on the merged grid."""
    if psi.filter != chi.filter:
        raise FilterMismatch("waves over different filters")
    if psi.grid is chi.grid or psi.grid == chi.grid:
        return psi.grid, psi.coeffs, chi.coeffs
    merged = _merge(psi.grid.breakpoints, chi.grid.breakpoints)
    pos_a = [k for k, (_, i, _j) in enumerate(merged) if i is not None]
    pos_b = [k for k, (_, _i, j) in enumerate(merged) if j is not None]
    grid = make_grid([p for p, _, _ in merged])
    return grid, _spread(psi, pos_a, grid.size), _spread(chi, pos_b, grid.size)


def wave_algebra(psi: StepWave, chi: StepWave, op: str) -> StepWave:
    grid, a, b = refine_common(psi, chi)
    if op == "add":
        cs = [x + y for x, y in zip(a, b)]
    elif op == "sub":
        cs = [x - y for x, y in zip(a, b)]
    elif op == "mul":
        cs = [x * y for x, y in zip(a, b)]
    else:
        raise ValueError(f"unknown wave operation {op!r}")
    return StepWave(grid, tuple(cs))


def integrate(psi: StepWave) -> RpaComplex:
    total = psi.coeffs[0].zero()
    for w, c in zip(psi.grid.lengths, psi.coeffs):
        total = total + c * w
    return total


def _weighted_dot(lengths, a, b) -> RpaComplex:
    total = a[0].zero()
    for w, x, y in zip(lengths, a, b):
        total = total + x.conj() * y * w
    return total


def inner_product(psi: StepWave, chi: StepWave) -> RpaComplex:
    """``integral of conj(psi) * chi``, conjugate-linear in the first slot."""
    grid, a, b = refine_common(psi, chi)
    return _weighted_dot(grid.lengths, a, b)


def schwarz_holds(psi: StepWave, chi: StepWave) -> bool:
    grid, a, b = refine_common(psi, chi)
    pp = _weighted_dot(grid.lengths, a, a).re
    cc = _weighted_dot(grid.lengths, b, b).re
    pc = _weighted_dot(grid.lengths, a, b)
    return (pp * cc - pc.abs_squared()).is_nonneg()


def norm_squared(psi: StepWave) -> RpaReal:
    """Square of the sup-coefficient norm, as a pointwise-eventual maximum."""
    return eventual_max(c.abs_squared() for c in psi.coeffs)


def norm_approx(psi: StepWave, order: int = 4) -> RpaReal:
    return norm_squared(psi).sqrt_nonneg(order)
