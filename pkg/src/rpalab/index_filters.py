"""Eventually periodic subsets of the naturals and computable filters on them.

An :class:`IndexSet` is a finite union of residue classes modulo some
``modulus``, edited by finitely many additions and removals.  The family is
closed under the Boolean operations, which is all the filters below need to
decide membership ``S in F``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Callable, FrozenSet, Iterable, Union

__all__ = [
    "IndexSet",
    "Frechet",
    "PrincipalAt",
    "SupersetOf",
    "FilterSpec",
    "is_member",
    "set_algebra",
    "parse_index_set",
    "parse_filter",
    "EVENS",
    "ODDS",
]


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


@dataclass(frozen=True)
class IndexSet:
    """``(U residue classes mod modulus) | added - removed``, canonical.

    Build instances with :meth:`build`; the raw constructor trusts its input.
    """

    modulus: int
    residues: FrozenSet[int]
    added: FrozenSet[int] = frozenset()
    removed: FrozenSet[int] = frozenset()

    @classmethod
    def build(cls, modulus: int, residues: Iterable[int] = (),
              added: Iterable[int] = (), removed: Iterable[int] = ()) -> "IndexSet":
        if modulus < 1:
            raise ValueError("modulus must be positive")
        res = {r % modulus for r in residues}
        for d in _divisors(modulus):
            if all(((r + d) % modulus in res) for r in res):
                modulus, res = d, {r % d for r in res}
                break
        added = {int(a) for a in added}
        removed = {int(b) for b in removed} - added
        if any(x < 0 for x in added | removed):
            raise ValueError("index sets live in the naturals")
        add = frozenset(a for a in added if a % modulus not in res)
        rem = frozenset(b for b in removed if b % modulus in res)
        return cls(modulus, frozenset(res), add, rem)

    @classmethod
    def finite(cls, elements: Iterable[int]) -> "IndexSet":
        return cls.build(1, (), elements)

    @classmethod
    def everything(cls) -> "IndexSet":
        return cls.build(1, (0,))

    def __contains__(self, n: int) -> bool:
        if n < 0:
            return False
        if n in self.added:
            return True
        if n in self.removed:
            return False
        return n % self.modulus in self.residues

    @property
    def is_finite(self) -> bool:
        return not self.residues

    @property
    def is_cofinite(self) -> bool:
        return len(self.residues) == self.modulus

    def _horizon(self) -> int:
        return max(self.added | self.removed, default=-1) + 1

    def meets_class_infinitely(self, r: int, m: int) -> bool:
        """Whether ``{n : n = r mod m}`` and this set share infinitely many points."""
        g = gcd(m, self.modulus)
        return any((s - r) % g == 0 for s in self.residues)

    def complement(self) -> "IndexSet":
        return set_algebra(self, None, "complement")

    def __or__(self, other: "IndexSet") -> "IndexSet":
        return set_algebra(self, other, "union")

    def __and__(self, other: "IndexSet") -> "IndexSet":
        return set_algebra(self, other, "intersection")

    def __sub__(self, other: "IndexSet") -> "IndexSet":
        return set_algebra(self, other.complement(), "intersection")

    def __str__(self) -> str:
        out = f"mod {self.modulus} {_fmt_set(self.residues)}"
        if self.added:
            out += f" + {_fmt_set(self.added)}"
        if self.removed:
            out += f" - {_fmt_set(self.removed)}"
        return out


def _fmt_set(xs: Iterable[int]) -> str:
    return "{" + ", ".join(str(x) for x in sorted(xs)) + "}"


_BOOL_OPS: dict[str, Callable[[bool, bool], bool]] = {
    "union": lambda a, b: a or b,
    "intersection": lambda a, b: a and b,
    "complement": lambda a, b: not a,
}


def set_algebra(s: IndexSet, t: IndexSet | None, op: str) -> IndexSet:
    """Exact union / intersection / complement, returned in canonical form."""
    try:
        f = _BOOL_OPS[op]
    except KeyError:
        raise ValueError(f"unknown set operation {op!r}") from None
    if t is None:
        if op != "complement":
            raise ValueError(f"{op} needs two operands")
        t = s
    m = lcm(s.modulus, t.modulus)
    residues = [r for r in range(m)
                if f(r % s.modulus in s.residues, r % t.modulus in t.residues)]
    horizon = max(s._horizon(), t._horizon())
    added, removed = [], []
    for n in range(horizon):
        periodic = (n % m) in residues
        actual = f(n in s, n in t)
        if actual and not periodic:
            added.append(n)
        elif periodic and not actual:
            removed.append(n)
    return IndexSet.build(m, residues, added, removed)


EVENS = IndexSet.build(2, (0,))
ODDS = IndexSet.build(2, (1,))


@dataclass(frozen=True)
class Frechet:
    """The cofinite filter."""

    def __str__(self) -> str:
        return "frechet"


@dataclass(frozen=True)
class PrincipalAt:
    """All sets containing ``k``; the quotient collapses onto evaluation at ``k``."""

    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("principal index must be a natural number")

    def __str__(self) -> str:
        return f"principal:{self.k}"


@dataclass(frozen=True)
class SupersetOf:
    """Filter generated by an infinite eventually periodic ``base`` and the cofinite sets."""

    base: IndexSet

    def __post_init__(self):
        if self.base.is_finite:
            raise ValueError("SupersetOf needs an infinite base set")
        # finite edits of the base generate the same filter; keep the periodic part
        if self.base.added or self.base.removed:
            object.__setattr__(self, "base", IndexSet(self.base.modulus, self.base.residues))

    def __str__(self) -> str:
        res = ",".join(str(r) for r in sorted(self.base.residues))
        return f"superset:{self.base.modulus}:{res}"


FilterSpec = Union[Frechet, PrincipalAt, SupersetOf]


def is_member(F: FilterSpec, S: IndexSet) -> bool:
    if isinstance(F, Frechet):
        return S.is_cofinite
    if isinstance(F, PrincipalAt):
        return F.k in S
    if isinstance(F, SupersetOf):
        return (F.base - S).is_finite
    raise TypeError(f"not a filter: {F!r}")


_SET_RE = re.compile(r"\{([^}]*)\}")


def _parse_braced(body: str) -> list[int]:
    body = body.strip()
    return [int(x) for x in body.split(",")] if body else []


def parse_index_set(text: str) -> IndexSet:
    """Parse ``mod 2 {0} + {7} - {2}`` (or a bare finite set ``{1, 4}``)."""
    src = text.strip()
    m = re.fullmatch(
        r"(?:mod\s+(\d+)\s*)?\{([^}]*)\}((?:\s*[+-]\s*\{[^}]*\})*)", src)
    if not m:
        raise ValueError(f"cannot parse index set: {text!r}")
    added: list[int] = []
    removed: list[int] = []
    for sign, body in re.findall(r"([+-])\s*\{([^}]*)\}", m.group(3)):
        (added if sign == "+" else removed).extend(_parse_braced(body))
    if m.group(1) is None:
        return IndexSet.build(1, (), _parse_braced(m.group(2)) + added, removed)
    return IndexSet.build(int(m.group(1)), _parse_braced(m.group(2)), added, removed)


def parse_filter(text: str) -> FilterSpec:
    """Parse the CLI filter flag: ``frechet``, ``principal:K``, ``superset:M:R1,R2``."""
    parts = text.strip().lower().split(":")
    if parts == ["frechet"]:
        return Frechet()
    if parts[0] == "principal" and len(parts) == 2:
        return PrincipalAt(int(parts[1]))
    if parts[0] == "superset" and len(parts) == 3:
        residues = [int(r) for r in parts[2].split(",") if r.strip()]
        return SupersetOf(IndexSet.build(int(parts[1]), residues))
    raise ValueError(f"unknown filter {text!r}")
