"""Linear operators on waves sharing one grid, as matrices over C_F.

Waves on a fixed grid with ``m`` intervals form a free C_F-module with basis
the interval indicators, so an operator is an ``m x m`` matrix acting on the
coefficient vector.  The scalar product weights coordinate ``h`` by the
interval length ``w_h``; consequently an operator is Hermitian exactly when
``w_i * conj(a_ij) == w_j * a_ji`` for all ``i, j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import GridMismatch, KindError, NotInvertible, NotNormalizable, Unrepresentable
from .scalars import RpaComplex, RpaReal, eventual_max
from .waves import Grid, StepWave, _as_complex, _weighted_dot, make_grid

__all__ = [
    "GridOperator",
    "BoundCertificate",
    "HeisenbergVerdict",
    "make_operator",
    "identity",
    "apply",
    "is_hermitian",
    "expectation",
    "expectation_is_real",
    "variance",
    "uncertainty_approx",
    "center",
    "commutator",
    "trace",
    "heisenberg_holds",
    "bound_certificate",
    "bound_combinators",
    "wintner_residual",
    "wintner_witness",
    "power_commutator_residual",
]

Matrix = tuple[tuple[RpaComplex, ...], ...]


@dataclass(frozen=True, eq=False)
class GridOperator:
    grid: Grid
    matrix: Matrix

    @property
    def size(self) -> int:
        return len(self.matrix)

    @property
    def filter(self):
        return self.grid.filter

    def _check(self, other: "GridOperator") -> None:
        if not (self.grid is other.grid or self.grid == other.grid):
            raise GridMismatch("operators live on different grids")

    def __eq__(self, other) -> bool:
        if not isinstance(other, GridOperator):
            return NotImplemented
        self._check(other)
        return all(x == y for r, s in zip(self.matrix, other.matrix) for x, y in zip(r, s))

    def __hash__(self) -> int:
        return hash(self.matrix)

    def is_zero(self) -> bool:
        return not any(x for row in self.matrix for x in row)

    def _zip(self, other: "GridOperator", f) -> "GridOperator":
        self._check(other)
        return GridOperator(self.grid, tuple(
            tuple(f(x, y) for x, y in zip(r, s)) for r, s in zip(self.matrix, other.matrix)))

    def __add__(self, other: "GridOperator") -> "GridOperator":
        return self._zip(other, lambda x, y: x + y)

    def __sub__(self, other: "GridOperator") -> "GridOperator":
        return self._zip(other, lambda x, y: x - y)

    def __neg__(self) -> "GridOperator":
        return GridOperator(self.grid, tuple(tuple(-x for x in r) for r in self.matrix))

    def scale(self, c) -> "GridOperator":
        c = _as_complex(c, self.filter)
        return GridOperator(self.grid, tuple(tuple(c * x for x in r) for r in self.matrix))

    def compose(self, other: "GridOperator") -> "GridOperator":
        self._check(other)
        m = self.size
        cols = list(zip(*other.matrix))
        zero = self.matrix[0][0].zero()
        rows = []
        for i in range(m):
            row = []
            for j in range(m):
                acc = zero
                for a, b in zip(self.matrix[i], cols[j]):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            rows.append(tuple(row))
        return GridOperator(self.grid, tuple(rows))

    def __mul__(self, other):
        if isinstance(other, GridOperator):
            return self.compose(other)
        if isinstance(other, StepWave):
            return apply(self, other)
        return self.scale(other)

    def __rmul__(self, c) -> "GridOperator":
        return self.scale(c)

    def __pow__(self, k: int) -> "GridOperator":
        out = identity(self.grid)
        for _ in range(k):
            out = out.compose(self)
        return out

    def apply_vector(self, v: Sequence[RpaComplex]) -> tuple[RpaComplex, ...]:
        zero = v[0].zero()
        out = []
        for row in self.matrix:
            acc = zero
            for a, x in zip(row, v):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)


def make_operator(grid, matrix: Sequence[Sequence], F=None) -> GridOperator:
    if F is None:
        F = next((x.filter for row in matrix for x in row
                  if isinstance(x, (RpaReal, RpaComplex))), None)
    if not isinstance(grid, Grid):
        grid = make_grid(grid, F)
    m = grid.size
    if len(matrix) != m or any(len(row) != m for row in matrix):
        raise GridMismatch(f"matrix must be {m}x{m} for this grid")
    F = grid.filter
    return GridOperator(grid, tuple(tuple(_as_complex(x, F) for x in row) for row in matrix))


def identity(grid: Grid) -> GridOperator:
    return make_operator(grid, [[1 if i == j else 0 for j in range(grid.size)]
                                for i in range(grid.size)])


def apply(A: GridOperator, psi: StepWave) -> StepWave:
    if not (A.grid is psi.grid or A.grid == psi.grid):
        raise GridMismatch("wave and operator live on different grids")
    return StepWave(psi.grid, A.apply_vector(psi.coeffs))


def is_hermitian(A: GridOperator) -> bool:
    w = A.grid.lengths
    M = A.matrix
    for i in range(A.size):
        for j in range(i, A.size):
            if M[i][j].conj() * w[i] != M[j][i] * w[j]:
                return False
    return True


def _dot(A: GridOperator, u, v) -> RpaComplex:
    return _weighted_dot(A.grid.lengths, u, v)


def _normalizer(A: GridOperator, psi: StepWave) -> RpaReal:
    """Inverse of <psi, psi>, or NotNormalizable."""
    if not (A.grid is psi.grid or A.grid == psi.grid):
        raise GridMismatch("wave and operator live on different grids")
    norm = _dot(A, psi.coeffs, psi.coeffs).re
    try:
        return norm.try_invert()
    except (NotInvertible, Unrepresentable) as exc:
        raise NotNormalizable(f"<psi, psi> cannot be divided out: {exc}") from exc


def expectation(A: GridOperator, psi: StepWave) -> RpaComplex:
    """``<psi, A psi> / <psi, psi>``; equals ``<psi, A psi>`` for unit states."""
    inv = _normalizer(A, psi)
    return _dot(A, psi.coeffs, A.apply_vector(psi.coeffs)) * inv


def expectation_is_real(A: GridOperator, psi: StepWave) -> bool:
    e = expectation(A, psi)
    return e.conj() == e


def _variance(A: GridOperator, psi: StepWave, inv: RpaReal, av=None) -> RpaComplex:
    v = psi.coeffs
    av = A.apply_vector(v) if av is None else av
    mean = _dot(A, v, av) * inv
    second = _dot(A, v, A.apply_vector(av)) * inv
    return second - mean * mean


def variance(A: GridOperator, psi: StepWave) -> RpaReal:
    """``<A^2> - <A>^2``; real for Hermitian ``A``."""
    inv = _normalizer(A, psi)
    var = _variance(A, psi, inv)
    if var.im:
        raise KindError("variance is not real; is the operator Hermitian?")
    return var.re


def uncertainty_approx(A: GridOperator, psi: StepWave, order: int = 4) -> RpaReal:
    return variance(A, psi).sqrt_nonneg(order)


def center(A: GridOperator, psi: StepWave) -> GridOperator:
    return A - identity(A.grid).scale(expectation(A, psi))


def commutator(A: GridOperator, B: GridOperator) -> GridOperator:
    return A.compose(B) - B.compose(A)


def trace(A: GridOperator) -> RpaComplex:
    total = A.matrix[0][0].zero()
    for i in range(A.size):
        total = total + A.matrix[i][i]
    return total


class HeisenbergVerdict(NamedTuple):
    holds: bool
    residual: RpaReal


def heisenberg_holds(A: GridOperator, B: GridOperator, psi: StepWave) -> HeisenbergVerdict:
    """Squared uncertainty relation ``4 Var(A) Var(B) >= |<[A, B]>|^2``.

    Returns the residual ``4 Var(A) Var(B) - |<[A, B]>|^2`` together with the
    verdict ``residual >= 0``.
    """
    A._check(B)
    if not (is_hermitian(A) and is_hermitian(B)):
        raise KindError("the uncertainty relation is stated for Hermitian operators")
    inv = _normalizer(A, psi)
    v = psi.coeffs
    av, bv = A.apply_vector(v), B.apply_vector(v)
    var_a = _variance(A, psi, inv, av)
    var_b = _variance(B, psi, inv, bv)
    # <psi, (AB - BA) psi> = <psi, A(B psi)> - <psi, B(A psi)>
    comm = (_dot(A, v, A.apply_vector(bv)) - _dot(A, v, B.apply_vector(av))) * inv
    residual = (var_a * var_b).re * 4 - comm.abs_squared()
    return HeisenbergVerdict(residual.is_nonneg(), residual)


@dataclass(frozen=True)
class BoundCertificate:
    """A member ``bound`` of the set of admissible constants in
    ``||A psi|| <= bound * ||psi||``."""

    operator: GridOperator
    bound: RpaReal
    method: str = "row-sum-l1"

    def certifies(self, psi: StepWave) -> bool:
        from .waves import norm_squared
        lhs = norm_squared(apply(self.operator, psi))
        rhs = self.bound * self.bound * norm_squared(psi)
        return lhs.leq(rhs)

    def raised_to(self, bound: RpaReal) -> "BoundCertificate":
        """Upward closure: any larger nonnegative constant is again admissible."""
        if not self.bound.leq(bound):
            raise ValueError("new bound does not dominate the certified one")
        return BoundCertificate(self.operator, bound, self.method)


def bound_certificate(A: GridOperator) -> BoundCertificate:
    rows = []
    for row in A.matrix:
        acc = row[0].re.zero()
        for x in row:
            acc = acc + x.abs_one_norm()
        rows.append(acc)
    return BoundCertificate(A, eventual_max(rows))


class CombinedBounds(NamedTuple):
    total: BoundCertificate
    scaled: BoundCertificate
    product: BoundCertificate


def bound_combinators(A: GridOperator, B: GridOperator, c) -> CombinedBounds:
    """Certificates for ``A + B``, ``c A`` and ``A B``."""
    A._check(B)
    return CombinedBounds(
        bound_certificate(A + B),
        bound_certificate(A.scale(c)),
        bound_certificate(A.compose(B)),
    )


def wintner_residual(A: GridOperator, B: GridOperator, c) -> GridOperator:
    """``[A, B] - c I``; never zero when ``c != 0`` (its trace is ``-m c``)."""
    return commutator(A, B) - identity(A.grid).scale(c)


class WintnerWitness(NamedTuple):
    residual: GridOperator
    trace: RpaComplex
    nonzero: bool


def wintner_witness(A: GridOperator, B: GridOperator, c) -> WintnerWitness:
    res = wintner_residual(A, B, c)
    tr = trace(res)
    return WintnerWitness(res, tr, bool(tr) or not res.is_zero())


def power_commutator_residual(A: GridOperator, B: GridOperator, n: int) -> GridOperator:
    """``(A B^n - B^n A) - sum_k B^k [A, B] B^(n-1-k)``, identically zero."""
    if n < 1:
        raise ValueError("n must be at least 1")
    A._check(B)
    powers = [identity(A.grid)]
    for _ in range(n):
        powers.append(powers[-1].compose(B))
    lhs = A.compose(powers[n]) - powers[n].compose(A)
    comm = commutator(A, B)
    rhs = None
    for k in range(n):
        term = powers[k].compose(comm).compose(powers[n - 1 - k])
        rhs = term if rhs is None else rhs + term
    return lhs - rhs
