"""Exact arithmetic in the reduced powers R_F and C_F.

An :class:`RpaReal` is a residue class of real sequences modulo the ideal of
sequences vanishing on a filter set.  It is stored as a :class:`Germ` in
normal form relative to its filter, so equality in the quotient is
structural identity:

* Frechet: the germ as is (finite patches never survive);
* PrincipalAt(k): the constant germ holding the value at ``k``;
* SupersetOf(A): residue classes meeting ``A`` only finitely are zeroed.

Order, sign and classification are decided per *relevant* residue class
from leading terms, which is exactly the eventual behaviour the filter
sees.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from .errors import FilterMismatch, NotInvertible, NotNonneg, Unrepresentable
from .index_filters import FilterSpec, Frechet, PrincipalAt, SupersetOf, lcm
from .puiseux import ZERO_POLY, Germ, PuiseuxPoly, to_q

__all__ = [
    "RpaReal",
    "RpaComplex",
    "Classification",
    "INFINITESIMAL",
    "FINITE",
    "INFINITELY_LARGE",
    "MIXED",
    "normalize",
    "embed_real",
    "embed_complex",
    "from_spec",
    "omega",
    "eventual_max",
    "compare",
]

INFINITESIMAL = "Infinitesimal"
FINITE = "Finite"
INFINITELY_LARGE = "InfinitelyLarge"
MIXED = "Mixed"


def normalize(germ: Germ, F: FilterSpec) -> Germ:
    """Normal form of the class of ``germ`` in R_F."""
    if isinstance(F, Frechet):
        return germ
    if isinstance(F, PrincipalAt):
        return Germ.const(germ(F.k) if F.k else _value_at_zero(germ))
    if isinstance(F, SupersetOf):
        base = F.base
        m = lcm(germ.modulus, base.modulus)
        polys = germ.refined(m)
        return Germ([p if r % base.modulus in base.residues else ZERO_POLY
                     for r, p in enumerate(polys)], m)
    raise TypeError(f"not a filter: {F!r}")


def _value_at_zero(germ: Germ):
    """Class-0 polynomial continued to ``n = 0``; defined unless a negative power occurs."""
    p = germ.polys[0]
    if any(e < 0 for e, _ in p.terms):
        raise Unrepresentable("a negative power of n has no value at index 0")
    return sum((c for e, c in p.terms if e == 0), to_q(0))


@lru_cache(maxsize=4096)
def relevant_residues(F: FilterSpec, modulus: int) -> tuple[int, ...]:
    """Residues mod ``modulus`` whose classes the filter sees infinitely often."""
    if isinstance(F, SupersetOf):
        return tuple(r for r in range(modulus)
                     if F.base.meets_class_infinitely(r, modulus))
    if isinstance(F, PrincipalAt):
        # normal forms under a principal filter are constants
        return (0,) if modulus == 1 else (F.k % modulus,)
    return tuple(range(modulus))


def _coerce_filter(a, b) -> FilterSpec:
    if a.filter != b.filter:
        raise FilterMismatch(f"{a.filter} vs {b.filter}")
    return a.filter


def _kind(p: PuiseuxPoly) -> str:
    if not p or p.degree < 0:
        return INFINITESIMAL
    return FINITE if p.degree == 0 else INFINITELY_LARGE


@dataclass(frozen=True)
class Classification:
    kind: str
    per_class: tuple[str, ...] = ()

    def __str__(self) -> str:
        if self.kind == MIXED:
            return f"Mixed({', '.join(self.per_class)})"
        return self.kind


class RpaReal:
    """Element of R_F.  Construct via :func:`embed_real`, :func:`from_spec` or
    ``RpaReal(germ, F)`` (which normalizes)."""

    __slots__ = ("filter", "germ")

    def __init__(self, germ: Germ, F: FilterSpec):
        self.filter = F
        self.germ = normalize(germ, F)

    @classmethod
    def _trusted(cls, germ: Germ, F: FilterSpec) -> "RpaReal":
        x = object.__new__(cls)
        x.filter, x.germ = F, germ
        return x

    # -- construction helpers -------------------------------------------------

    def _lift(self, other) -> "RpaReal":
        if isinstance(other, RpaReal):
            return other
        if isinstance(other, Rational):
            return embed_real(other, self.filter)
        return NotImplemented

    def zero(self) -> "RpaReal":
        return embed_real(0, self.filter)

    def one(self) -> "RpaReal":
        return embed_real(1, self.filter)

    # -- ring operations ------------------------------------------------------

    def __add__(self, other) -> "RpaReal":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        # normal forms are closed under ring operations
        return RpaReal._trusted(self.germ + other.germ, _coerce_filter(self, other))

    __radd__ = __add__

    def __sub__(self, other) -> "RpaReal":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return RpaReal._trusted(self.germ - other.germ, _coerce_filter(self, other))

    def __rsub__(self, other) -> "RpaReal":
        return self._lift(other) - self

    def __mul__(self, other) -> "RpaReal":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return RpaReal._trusted(self.germ * other.germ, _coerce_filter(self, other))

    __rmul__ = __mul__

    def __neg__(self) -> "RpaReal":
        return RpaReal._trusted(-self.germ, self.filter)

    def __pow__(self, k: int) -> "RpaReal":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.try_invert() ** (-k)
        out = self.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, other) -> "RpaReal":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.try_invert()

    def __eq__(self, other) -> bool:
        if isinstance(other, RpaComplex):
            return other == self
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        _coerce_filter(self, other)
        return self.germ == other.germ

    def __hash__(self) -> int:
        return hash((self.filter, self.germ))

    def __repr__(self) -> str:
        from .render import render_text
        return f"RpaReal({render_text(self)!r}, {self.filter})"

    def __bool__(self) -> bool:
        return bool(self.germ)

    # -- per-class views ------------------------------------------------------

    def relevant_polys(self) -> list[PuiseuxPoly]:
        g = self.germ
        return [g.polys[r] for r in relevant_residues(self.filter, g.modulus)]

    def is_nonneg(self) -> bool:
        return all(p.sign() >= 0 for p in self.relevant_polys())

    def is_strictly_positive(self) -> bool:
        return all(p.sign() > 0 for p in self.relevant_polys())

    def leq(self, other) -> bool:
        return (self._lift(other) - self).is_nonneg()

    def __le__(self, other) -> bool:
        return self.leq(other)

    def __ge__(self, other) -> bool:
        return self._lift(other).leq(self)

    def eval_at(self, n: int) -> Fraction:
        return self.germ(n)

    # -- inversion, classification, rescaling ---------------------------------

    def is_invertible(self) -> bool:
        return all(self.relevant_polys())

    def try_invert(self) -> "RpaReal":
        g = self.germ
        rel = set(relevant_residues(self.filter, g.modulus))
        out = []
        for r, p in enumerate(g.polys):
            if r not in rel:
                out.append(ZERO_POLY)
                continue
            if not p:
                raise NotInvertible("zero or zero divisor")
            if not p.is_monomial:
                raise Unrepresentable(
                    "inverse of a multi-term class polynomial is an infinite series")
            e, c = p.leading
            out.append(PuiseuxPoly.monomial(1 / c, -e))
        return RpaReal(Germ(out, g.modulus), self.filter)

    def classify(self) -> Classification:
        kinds = tuple(_kind(p) for p in self.relevant_polys())
        distinct = set(kinds)
        if len(distinct) == 1:
            return Classification(kinds[0])
        return Classification(MIXED, kinds)

    def rescale(self, unit: "RpaReal") -> "RpaReal":
        return self * unit.try_invert()

    def real_abs(self) -> "RpaReal":
        return RpaReal._trusted(
            self.germ.map(lambda p: -p if p.sign() < 0 else p), self.filter)

    def sqrt_nonneg(self, order: int = 4) -> "RpaReal":
        if not self.is_nonneg():
            raise NotNonneg("square root of an element outside the positive cone")
        g = self.germ
        rel = set(relevant_residues(self.filter, g.modulus))
        polys = [_sqrt_poly(p, order) if r in rel else ZERO_POLY
                 for r, p in enumerate(g.polys)]
        return RpaReal(Germ(polys, g.modulus), self.filter)


def _binomial_half(k: int) -> Fraction:
    out = Fraction(1)
    for j in range(k):
        out *= (Fraction(1, 2) - j) / (j + 1)
    return out


def _sqrt_rational(c: Fraction) -> Fraction:
    from .puiseux import exact_power
    return exact_power(c, Fraction(1, 2))


def _sqrt_poly(p: PuiseuxPoly, order: int) -> PuiseuxPoly:
    """First ``order`` terms of the binomial expansion of sqrt(p) about its leading term."""
    if not p:
        return ZERO_POLY
    if order < 1:
        raise ValueError("order must be positive")
    e, c = p.leading
    root = PuiseuxPoly.monomial(_sqrt_rational(c), e / 2)
    if p.is_monomial:
        return root
    # p = L (1 + x), x has only negative exponents
    x = PuiseuxPoly._raw({ei - e: ci / c for ei, ci in p.terms[1:]})
    gap = -x.degree
    K = order
    while True:
        cutoff = -K * gap
        series = PuiseuxPoly.const(1)
        power = PuiseuxPoly.const(1)
        for k in range(1, K + 1):
            power = (power * x).truncate_below(cutoff)
            if not power:
                break
            series = series + power.scale(_binomial_half(k))
        series = series.truncate_below(cutoff)
        if len(series.terms) >= order or K > 8 * order + 16:
            break
        K *= 2
    return PuiseuxPoly(series.terms[:order]) * root


class RpaComplex:
    """Element of C_F as a pair of RpaReal components over one filter."""

    __slots__ = ("re", "im")

    def __init__(self, re: RpaReal, im: RpaReal | None = None):
        if im is None:
            im = re.zero()
        _coerce_filter(re, im)
        self.re = re
        self.im = im

    @property
    def filter(self) -> FilterSpec:
        return self.re.filter

    def _lift(self, other) -> "RpaComplex":
        if isinstance(other, RpaComplex):
            return other
        if isinstance(other, RpaReal):
            return RpaComplex(other)
        if isinstance(other, Rational):
            return RpaComplex(embed_real(other, self.filter))
        if isinstance(other, complex):
            return embed_complex(Fraction(other.real), Fraction(other.imag), self.filter)
        return NotImplemented

    def zero(self) -> "RpaComplex":
        return RpaComplex(self.re.zero())

    def one(self) -> "RpaComplex":
        return RpaComplex(self.re.one())

    def __add__(self, other) -> "RpaComplex":
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RpaComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other) -> "RpaComplex":
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RpaComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other) -> "RpaComplex":
        return self._lift(other) - self

    def __mul__(self, other) -> "RpaComplex":
        o = self._lift(other)
        if o is NotImplemented:
            return o
        a, b, c, d = self.re, self.im, o.re, o.im
        if not d:
            return RpaComplex(a * c, b * c) if b else RpaComplex(a * c, b)
        if not b:
            return RpaComplex(a * c, a * d)
        return RpaComplex(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __neg__(self) -> "RpaComplex":
        return RpaComplex(-self.re, -self.im)

    def __pow__(self, k: int) -> "RpaComplex":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.try_invert() ** (-k)
        out = self.one()
        for _ in range(k):
            out = out * self
        return out

    def __truediv__(self, other) -> "RpaComplex":
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.try_invert()

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __repr__(self) -> str:
        from .render import render_text
        return f"RpaComplex({render_text(self)!r}, {self.filter})"

    def re_part(self) -> RpaReal:
        return self.re

    def im_part(self) -> RpaReal:
        return self.im

    def conj(self) -> "RpaComplex":
        return RpaComplex(self.re, -self.im)

    def is_real(self) -> bool:
        return not self.im

    def abs_squared(self) -> RpaReal:
        return self.re * self.re + self.im * self.im

    def abs_one_norm(self) -> RpaReal:
        return self.re.real_abs() + self.im.real_abs()

    def try_invert(self) -> "RpaComplex":
        if not self.im:
            return RpaComplex(self.re.try_invert())
        inv = self.abs_squared().try_invert()
        return RpaComplex(self.re * inv, -self.im * inv)

    def is_invertible(self) -> bool:
        return self.abs_squared().is_invertible()

    def eval_at(self, n: int) -> tuple[Fraction, Fraction]:
        return self.re.eval_at(n), self.im.eval_at(n)


def embed_real(x, F: FilterSpec) -> RpaReal:
    x = to_q(x)
    if isinstance(F, SupersetOf):
        return RpaReal(Germ.const(x), F)
    return RpaReal._trusted(Germ.const(x), F)


def embed_complex(re, im, F: FilterSpec) -> RpaComplex:
    return RpaComplex(embed_real(re, F), embed_real(im, F))


def omega(F: FilterSpec) -> RpaReal:
    """The class of the sequence ``(n)``: the canonical infinitely large element."""
    return RpaReal(Germ.of(PuiseuxPoly.monomial(1, 1)), F)


def from_spec(germ: Germ, patches: Mapping[int, object] | None, F: FilterSpec) -> RpaReal:
    """Class of ``germ`` edited at finitely many indices."""
    patches = patches or {}
    if isinstance(F, PrincipalAt) and F.k in patches:
        return embed_real(Fraction(patches[F.k]), F)
    return RpaReal(germ, F)


def piecewise(parts: Sequence[RpaReal]) -> RpaReal:
    """Element whose residue class ``r`` mod ``len(parts)`` follows ``parts[r]``."""
    F = parts[0].filter
    for p in parts:
        _coerce_filter(parts[0], p)
    m = len(parts)
    L = m
    for p in parts:
        L = lcm(L, p.germ.modulus)
    polys = [parts[r % m].germ.poly_for(r) for r in range(L)]
    return RpaReal(Germ(polys, L), F)


def eventual_max(values: Iterable[RpaReal]) -> RpaReal:
    """Pointwise-eventual maximum: per relevant class, the dominating polynomial."""
    values = list(values)
    if not values:
        raise ValueError("eventual_max of nothing")
    F = values[0].filter
    L = 1
    for v in values:
        _coerce_filter(values[0], v)
        L = lcm(L, v.germ.modulus)
    rel = set(relevant_residues(F, L))
    refined = [v.germ.refined(L) for v in values]
    out = []
    for r in range(L):
        if r not in rel:
            out.append(ZERO_POLY)
            continue
        best = refined[0][r]
        for polys in refined[1:]:
            if (polys[r] - best).sign() > 0:
                best = polys[r]
        out.append(best)
    return RpaReal(Germ(out, L), F)


def compare(u: RpaReal, v: RpaReal) -> str:
    """``equal``, ``less``, ``greater`` or ``incomparable`` under the partial order."""
    if u == v:
        return "equal"
    if u.leq(v):
        return "less"
    if v.leq(u):
        return "greater"
    return "incomparable"
