"""Puiseux polynomials in the index variable ``n`` and residue-class germs.

A :class:`PuiseuxPoly` is a finite sum ``sum c_i * n**e_i`` with rational
coefficients and rational exponents, read as a function of ``n >= 1``.  A
:class:`Germ` assigns one such polynomial to every residue class of ``n``
modulo ``modulus``; it is the finite description of a sequence
representative.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence, Union

from .errors import Unrepresentable

try:  # GMP rationals are an order of magnitude faster than Fraction
    from gmpy2 import iroot as _gmp_iroot
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    Q = Fraction
    _gmp_iroot = None

__all__ = ["PuiseuxPoly", "Germ", "ZERO_POLY", "ONE_POLY", "exact_power", "Q", "to_q"]

Number = Union[Fraction, int]


def to_q(x) -> "Q":
    """Coerce an int, Fraction, mpq or rational string to the internal rational type."""
    if type(x) is Q:
        return x
    if isinstance(x, Fraction):
        return Q(x.numerator, x.denominator)
    return Q(x)


_frac = to_q


def _iroot(a: int, q: int) -> int | None:
    """Exact integer q-th root of ``a >= 0`` or None."""
    if _gmp_iroot is not None:
        r, exact = _gmp_iroot(a, q)
        return int(r) if exact else None
    lo, hi = 0, 1 << (a.bit_length() // q + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** q <= a:
            lo = mid
        else:
            hi = mid - 1
    return lo if lo ** q == a else None


def exact_power(base: Fraction, exp: Fraction) -> Fraction:
    """``base ** exp`` for rational ``base > 0``; raises if the result is irrational."""
    base = _frac(base)
    exp = _frac(exp)
    if exp.denominator == 1:
        return base ** int(exp)
    q = exp.denominator
    num = _iroot(base.numerator, q)
    den = _iroot(base.denominator, q)
    if num is None or den is None:
        raise Unrepresentable(f"{base}^({exp}) is irrational")
    return Q(num, den) ** exp.numerator


class PuiseuxPoly:
    """Immutable ``sum c * n**e``; ``terms`` sorted by strictly decreasing exponent."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[tuple[Number, Number]] = ()):
        acc: dict[Fraction, Fraction] = {}
        for e, c in terms:
            e = _frac(e)
            acc[e] = acc.get(e, 0) + _frac(c)
        self.terms = tuple(sorted(((e, c) for e, c in acc.items() if c),
                                  reverse=True))
        self._hash = None

    @classmethod
    def _raw(cls, items) -> "PuiseuxPoly":
        # items: dict exponent -> coefficient, zeros allowed
        p = object.__new__(cls)
        p.terms = tuple(sorted(((e, c) for e, c in items.items() if c), reverse=True))
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Number) -> "PuiseuxPoly":
        return cls(((0, c),))

    @classmethod
    def monomial(cls, c: Number, e: Number) -> "PuiseuxPoly":
        return cls(((e, c),))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, PuiseuxPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def __repr__(self) -> str:
        return f"PuiseuxPoly({list(self.terms)!r})"

    @property
    def leading(self) -> tuple[Fraction, Fraction] | None:
        return self.terms[0] if self.terms else None

    @property
    def degree(self) -> Fraction | None:
        return self.terms[0][0] if self.terms else None

    def sign(self) -> int:
        """Eventual sign for large ``n``: sign of the leading coefficient."""
        if not self.terms:
            return 0
        return 1 if self.terms[0][1] > 0 else -1

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def exponent_denominator(self) -> int:
        d = 1
        for e, _ in self.terms:
            d = d * e.denominator // gcd(d, e.denominator)
        return d

    def __add__(self, other: "PuiseuxPoly") -> "PuiseuxPoly":
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return PuiseuxPoly._raw(acc)

    def __neg__(self) -> "PuiseuxPoly":
        p = object.__new__(PuiseuxPoly)
        p.terms = tuple((e, -c) for e, c in self.terms)
        p._hash = None
        return p

    def __sub__(self, other: "PuiseuxPoly") -> "PuiseuxPoly":
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) - c
        return PuiseuxPoly._raw(acc)

    def __mul__(self, other: "PuiseuxPoly") -> "PuiseuxPoly":
        if not self.terms or not other.terms:
            return ZERO_POLY
        if len(other.terms) == 1:
            (e2, c2), = other.terms
            p = object.__new__(PuiseuxPoly)
            p.terms = tuple((e + e2, c * c2) for e, c in self.terms)
            p._hash = None
            return p
        acc: dict[Fraction, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                acc[e] = acc.get(e, 0) + c1 * c2
        return PuiseuxPoly._raw(acc)

    def scale(self, c: Number) -> "PuiseuxPoly":
        c = _frac(c)
        if not c:
            return ZERO_POLY
        return PuiseuxPoly._raw({e: c * k for e, k in self.terms})

    def shift(self, de: Number) -> "PuiseuxPoly":
        """Multiply by ``n**de``."""
        de = _frac(de)
        return PuiseuxPoly._raw({e + de: c for e, c in self.terms})

    def truncate_below(self, cutoff: Fraction) -> "PuiseuxPoly":
        return PuiseuxPoly._raw({e: c for e, c in self.terms if e >= cutoff})

    def __call__(self, n: int) -> Fraction:
        """Exact value at index ``n >= 1``."""
        if n < 1:
            raise ValueError("Puiseux polynomials are evaluated at n >= 1")
        total = Q(0)
        base = Q(n)
        for e, c in self.terms:
            total += c * exact_power(base, e)
        return total


ZERO_POLY = PuiseuxPoly()
ONE_POLY = PuiseuxPoly.const(1)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class Germ:
    """One polynomial per residue class of ``n`` mod ``modulus``, modulus minimal."""

    __slots__ = ("modulus", "polys", "_hash")

    def __init__(self, polys: Sequence[PuiseuxPoly], modulus: int | None = None):
        polys = tuple(polys)
        if modulus is None:
            modulus = len(polys)
        if modulus < 1 or len(polys) != modulus:
            raise ValueError("need one polynomial per residue class")
        self.modulus, self.polys = _minimize(modulus, polys)
        self._hash = None

    @classmethod
    def const(cls, c: Number) -> "Germ":
        return cls((PuiseuxPoly.const(c),))

    @classmethod
    def of(cls, poly: PuiseuxPoly) -> "Germ":
        return cls((poly,))

    @classmethod
    def _trusted(cls, modulus: int, polys: tuple) -> "Germ":
        g = object.__new__(cls)
        g.modulus, g.polys, g._hash = modulus, polys, None
        return g

    def __eq__(self, other) -> bool:
        return (isinstance(other, Germ) and self.modulus == other.modulus
                and self.polys == other.polys)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.modulus, self.polys))
        return self._hash

    def __repr__(self) -> str:
        return f"Germ(modulus={self.modulus}, polys={list(self.polys)!r})"

    def __bool__(self) -> bool:
        return any(self.polys)

    def poly_for(self, r: int) -> PuiseuxPoly:
        """Polynomial governing residue ``r`` (taken mod the germ's modulus)."""
        return self.polys[r % self.modulus]

    def refined(self, m: int) -> tuple[PuiseuxPoly, ...]:
        if m % self.modulus:
            raise ValueError(f"{m} is not a multiple of {self.modulus}")
        if m == self.modulus:
            return self.polys
        return tuple(self.polys[r % self.modulus] for r in range(m))

    def combine(self, other: "Germ", op) -> "Germ":
        if self.modulus == 1 and other.modulus == 1:
            return Germ._trusted(1, (op(self.polys[0], other.polys[0]),))
        m = _lcm(self.modulus, other.modulus)
        a, b = self.refined(m), other.refined(m)
        return Germ([op(x, y) for x, y in zip(a, b)], m)

    def map(self, op) -> "Germ":
        return Germ([op(p) for p in self.polys], self.modulus)

    def __add__(self, other: "Germ") -> "Germ":
        return self.combine(other, PuiseuxPoly.__add__)

    def __sub__(self, other: "Germ") -> "Germ":
        return self.combine(other, PuiseuxPoly.__sub__)

    def __mul__(self, other: "Germ") -> "Germ":
        return self.combine(other, PuiseuxPoly.__mul__)

    def __neg__(self) -> "Germ":
        return Germ._trusted(self.modulus, tuple(-p for p in self.polys))

    def __call__(self, n: int) -> Fraction:
        return self.polys[n % self.modulus](n)

    def exponent_denominator(self) -> int:
        d = 1
        for p in self.polys:
            d = _lcm(d, p.exponent_denominator())
        return d

    def evaluate_patched(self, n: int, patches: Mapping[int, Number]) -> Fraction:
        if n in patches:
            return _frac(patches[n])
        return self(n)


def _minimize(m: int, polys: tuple) -> tuple[int, tuple]:
    for d in range(1, m):
        if m % d == 0 and all(polys[r] == polys[r % d] for r in range(d, m)):
            return d, polys[:d]
    return m, polys
