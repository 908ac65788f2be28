"""Seeded random generators for germs, scalars, waves and operators.

Everything takes an explicit :class:`random.Random`, so a case is fully
determined by its seed.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import isqrt

from .index_filters import EVENS, Frechet, PrincipalAt, SupersetOf
from .operators import GridOperator, make_operator
from .puiseux import Germ, PuiseuxPoly
from .scalars import RpaComplex, RpaReal, embed_real, piecewise
from .waves import StepWave, make_grid, make_wave

FILTERS = (Frechet(), PrincipalAt(5), SupersetOf(EVENS))

INT_EXPONENTS = (-2, -1, 0, 1, 2)
HALF_EXPONENTS = (Fraction(-1, 2), Fraction(1, 2), Fraction(3, 2))
SMALL_MODULI = (1, 1, 1, 2)


def exponents_for(F) -> tuple:
    """Exponents whose values stay rational under ``F``."""
    if isinstance(F, PrincipalAt):
        r = isqrt(F.k)
        return INT_EXPONENTS + (HALF_EXPONENTS if r * r == F.k else ())
    return INT_EXPONENTS + HALF_EXPONENTS


def rational(rng: random.Random, span: int = 5, nonzero: bool = False) -> Fraction:
    while True:
        x = Fraction(rng.randint(-span, span), rng.choice((1, 1, 2, 3)))
        if x or not nonzero:
            return x


def terms(rng: random.Random, exps, max_terms: int = 3) -> list[tuple[Fraction, Fraction]]:
    k = rng.randint(0, max_terms)
    chosen = rng.sample(list(exps), min(k, len(exps)))
    return [(Fraction(e), rational(rng, nonzero=True)) for e in chosen]


def poly(rng: random.Random, exps=INT_EXPONENTS, max_terms: int = 3) -> PuiseuxPoly:
    return PuiseuxPoly(terms(rng, exps, max_terms))


def germ(rng: random.Random, exps=INT_EXPONENTS, moduli=(1, 1, 1, 2, 3), max_terms=3) -> Germ:
    m = rng.choice(moduli)
    return Germ([poly(rng, exps, max_terms) for _ in range(m)], m)


def real(rng: random.Random, F, max_terms: int = 3, moduli=(1, 1, 1, 2, 3), exps=None) -> RpaReal:
    return RpaReal(germ(rng, exps or exponents_for(F), moduli, max_terms), F)


def cplx(rng: random.Random, F, max_terms: int = 3, moduli=(1, 1, 1, 2, 3), exps=None) -> RpaComplex:
    re = real(rng, F, max_terms, moduli, exps)
    im = real(rng, F, max_terms, moduli, exps) if rng.random() < 0.6 else re.zero()
    return RpaComplex(re, im)


def nonzero_real(rng: random.Random, F, max_terms: int = 2) -> RpaReal:
    while True:
        x = real(rng, F, max_terms)
        if x:
            return x


def positive(rng: random.Random, F, max_terms: int = 2, exps=None) -> RpaReal:
    """A strictly positive element: every relevant class eventually positive."""
    x = real(rng, F, max_terms, exps=exps).real_abs()
    if x.is_strictly_positive():
        return x
    return embed_real(Fraction(rng.randint(1, 6), rng.choice((1, 2))), F)


def monomial_real(rng: random.Random, F, moduli=(1, 1, 2)) -> RpaReal:
    """Invertible element whose classes are single terms."""
    m = rng.choice(moduli)
    exps = [e for e in exponents_for(F)]
    return RpaReal(Germ([PuiseuxPoly.monomial(rational(rng, nonzero=True), rng.choice(exps))
                         for _ in range(m)], m), F)


# -- grids and waves --------------------------------------------------------

def grid_points(rng: random.Random, F, m: int, start=None, exps=None) -> list[RpaReal]:
    a = real(rng, F, 2, exps=exps) if start is None else start
    pts = [a]
    for _ in range(m):
        a = a + positive(rng, F, exps=exps)
        pts.append(a)
    return pts


def wave(rng: random.Random, F, m: int | None = None, grid=None, max_terms: int = 2,
         exps=None) -> StepWave:
    if grid is None:
        grid = make_grid(grid_points(rng, F, m or rng.randint(1, 4), exps=exps), F)
    coeffs = [cplx(rng, F, max_terms, exps=exps) if rng.random() < 0.85 else RpaComplex(embed_real(0, F))
              for _ in range(grid.size)]
    return make_wave(grid, coeffs)


def related_wave(rng: random.Random, psi: StepWave, max_terms: int = 2, exps=None) -> StepWave:
    """A wave whose breakpoints interleave comparably with ``psi``'s."""
    F = psi.filter
    old = list(psi.grid.breakpoints)
    pts = []
    for a, b in zip(old, old[1:]):
        if rng.random() < 0.6:
            pts.append(a)
        if rng.random() < 0.5:
            pts.append((a + b) * Fraction(1, 2))
    if rng.random() < 0.6:
        pts.append(old[-1])
    if rng.random() < 0.3:
        pts.insert(0, old[0] - positive(rng, F, exps=exps))
    if rng.random() < 0.3:
        pts.append(old[-1] + positive(rng, F, exps=exps))
    if len(pts) < 2:
        pts = [old[0], old[-1]]
    return wave(rng, F, grid=make_grid(pts, F), max_terms=max_terms, exps=exps)


def admissible_state(rng: random.Random, F, m: int) -> StepWave:
    """A wave whose ``<psi, psi>`` is a single term on every residue class.

    Coefficients and interval lengths are classwise monomials with a common
    exponent per class, so the norm can be divided out exactly.
    """
    M = rng.choice((1, 1, 2))
    exps = [e for e in INT_EXPONENTS if abs(e) <= 1]
    e_cls = [rng.choice(exps) for _ in range(M)]
    f_cls = [rng.choice(exps) for _ in range(M)]
    one_poly = lambda c, e: RpaReal(Germ.of(PuiseuxPoly.monomial(c, e)), F)  # noqa: E731

    lengths, coeffs = [], []
    nonzero_at = [rng.randrange(m) for _ in range(M)]
    for h in range(m):
        lengths.append(piecewise([
            one_poly(Fraction(rng.randint(1, 5), rng.choice((1, 2))), f_cls[r]) for r in range(M)]))
        re_parts, im_parts = [], []
        for r in range(M):
            cr = rational(rng, 3, nonzero=(h == nonzero_at[r]))
            ci = rational(rng, 3) if rng.random() < 0.5 else Fraction(0)
            re_parts.append(one_poly(cr, e_cls[r]))
            im_parts.append(one_poly(ci, e_cls[r]))
        coeffs.append(RpaComplex(piecewise(re_parts), piecewise(im_parts)))
    a = real(rng, F, 2)
    pts = [a]
    for w in lengths:
        a = a + w
        pts.append(a)
    return make_wave(make_grid(pts, F), coeffs)


def matrix(rng: random.Random, F, m: int, max_terms: int = 2, density: float = 0.8):
    zero = RpaComplex(embed_real(0, F))
    return [[cplx(rng, F, max_terms) if rng.random() < density else zero for _ in range(m)]
            for _ in range(m)]


def operator(rng: random.Random, grid, max_terms: int = 2) -> GridOperator:
    return make_operator(grid, matrix(rng, grid.filter, grid.size, max_terms))


def hermitian(rng: random.Random, grid, max_terms: int = 2) -> GridOperator:
    """``H W`` with ``H`` conjugate-symmetric and ``W`` the diagonal of lengths."""
    F = grid.filter
    m = grid.size
    zero = RpaComplex(embed_real(0, F))
    H = [[zero] * m for _ in range(m)]
    # moduli 1 and 2 keep products on at most two residue classes
    for i in range(m):
        H[i][i] = RpaComplex(real(rng, F, max_terms, SMALL_MODULI))
        for j in range(i + 1, m):
            if rng.random() < 0.8:
                h = cplx(rng, F, max_terms, SMALL_MODULI)
                H[i][j], H[j][i] = h, h.conj()
    w = grid.lengths
    return make_operator(grid, [[H[i][j] * w[j] for j in range(m)] for i in range(m)])


def nonzero_scalar(rng: random.Random, F) -> RpaComplex:
    """Nonzero scalar, sometimes infinitesimal or infinitely large."""
    kind = rng.choice(("any", "small", "large"))
    if kind == "small":
        return RpaComplex(RpaReal(Germ.of(PuiseuxPoly.monomial(
            rational(rng, nonzero=True), -rng.randint(1, 2))), F))
    if kind == "large":
        return RpaComplex(RpaReal(Germ.of(PuiseuxPoly.monomial(
            rational(rng, nonzero=True), rng.randint(1, 2))), F))
    while True:
        c = cplx(rng, F, 2)
        if c:
            return c
