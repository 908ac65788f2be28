from __future__ import annotations

import random
from fractions import Fraction as Fr

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rpalab import gen
from rpalab.errors import FilterMismatch, NotInvertible, NotNonneg, Unrepresentable
from rpalab.index_filters import EVENS, Frechet, PrincipalAt, SupersetOf
from rpalab.puiseux import Germ, PuiseuxPoly
from rpalab.scalars import (RpaComplex, RpaReal, compare, embed_complex, embed_real,
                            eventual_max, from_spec, omega, piecewise)

FR = Frechet()
P4 = PrincipalAt(4)


def g(*terms, F=FR):
    """Real from ``(exponent, coefficient)`` pairs."""
    return RpaReal(Germ.of(PuiseuxPoly(terms)), F)


def cls(*parts, F=FR):
    """Real whose residue class r mod len(parts) is ``parts[r]`` (lists of terms)."""
    return RpaReal(Germ([PuiseuxPoly(p) for p in parts]), F)


N = g((1, 1))
INV_N = g((-1, 1))
EVEN = cls([(0, 1)], [])
ODD = cls([], [(0, 1)])

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=6)
seeds = st.integers(0, 10**6)


def test_embedding():
    x = embed_real(Fr(5, 2), FR)
    assert x.germ.modulus == 1 and x.germ.polys[0].terms == ((0, Fr(5, 2)),)
    assert embed_real(2, FR) + embed_real(3, FR) == embed_real(5, FR)


@given(rationals, rationals)
def test_embedding_is_an_injective_homomorphism(x, y):
    for F in gen.FILTERS:
        ex, ey = embed_real(x, F), embed_real(y, F)
        assert ex * ey == embed_real(x * y, F)
        assert ex + ey == embed_real(x + y, F)
        assert (ex == ey) == (x == y)


def test_from_spec_patches():
    n = Germ.of(PuiseuxPoly.monomial(1, 1))
    assert from_spec(n, {1: 99}, FR) == N
    assert from_spec(n, {4: 99}, P4) == embed_real(99, P4)
    assert from_spec(n, {1: 99}, SupersetOf(EVENS)) == RpaReal(n, SupersetOf(EVENS))
    zero = Germ.of(PuiseuxPoly())
    for F in gen.FILTERS:
        assert not from_spec(zero, {}, F)


def test_ring_examples():
    assert INV_N * N == embed_real(1, FR)
    assert (N + 1) - N == embed_real(1, FR)
    assert EVEN and ODD and not (EVEN * ODD)
    # the product representative vanishes at every index
    assert all((EVEN * ODD).eval_at(k) == 0 for k in range(1, 50))


def test_equality_depends_on_filter():
    assert EVEN.__class__(EVEN.germ, P4) == embed_real(1, P4)
    assert EVEN != embed_real(1, FR)
    x = g((2, 3), (0, -1))
    assert x == x


def test_superset_normal_form_zeroes_irrelevant_classes():
    F = SupersetOf(EVENS)
    x = RpaReal(Germ([PuiseuxPoly.const(1), PuiseuxPoly.const(5)]), F)
    assert x == embed_real(1, F)
    assert x.germ.polys[1] == PuiseuxPoly()
    assert RpaReal(ODD.germ, F) == embed_real(0, F)


def test_principal_normal_form_is_the_value_at_k():
    x = RpaReal(Germ.of(PuiseuxPoly([(2, 1), (0, -3)])), P4)
    assert x.germ == Germ.const(13)
    assert RpaReal(Germ.of(PuiseuxPoly([(2, 1), (0, -3)])), PrincipalAt(0)) == \
        embed_real(-3, PrincipalAt(0))
    with pytest.raises(Unrepresentable):
        RpaReal(INV_N.germ, PrincipalAt(0))
    with pytest.raises(Unrepresentable):
        RpaReal(Germ.of(PuiseuxPoly.monomial(1, Fr(1, 2))), PrincipalAt(2))


def test_mixing_filters_is_an_error():
    with pytest.raises(FilterMismatch):
        embed_real(1, FR) + embed_real(1, P4)


def test_positivity():
    big = g((2, 1), (0, -1000))
    assert big.is_nonneg()
    assert all(big.eval_at(k) >= 0 for k in range(32, 200))
    assert not (-INV_N).is_nonneg()
    assert embed_real(0, FR).is_nonneg()


def test_order_examples():
    assert INV_N.leq(embed_real(1, FR))
    assert all(Fr(1, k) <= 1 for k in range(1, 100))
    u = cls([(0, 1)], [(0, -1)])
    zero = embed_real(0, FR)
    assert not u.leq(zero) and not zero.leq(u)
    assert u.leq(u)
    assert compare(u, zero) == "incomparable"
    assert compare(INV_N, N) == "less" and compare(N, INV_N) == "greater"
    assert compare(N, N) == "equal"
    assert INV_N <= N and N >= INV_N


def test_inversion():
    assert (N * N).try_invert() == g((-2, 1))
    assert not EVEN.is_invertible()
    with pytest.raises(NotInvertible):
        EVEN.try_invert()
    with pytest.raises(Unrepresentable):
        (embed_real(1, FR) + INV_N).try_invert()
    # classwise monomials invert classwise
    x = cls([(1, 2)], [(-1, 3)])
    assert x * x.try_invert() == embed_real(1, FR)
    assert N / N == embed_real(1, FR)
    assert N ** -2 == g((-2, 1))


def test_classification():
    assert str(INV_N.classify()) == "Infinitesimal"
    assert str(g((2, 1), (1, 1)).classify()) == "InfinitelyLarge"
    assert str(embed_real(3, FR).classify()) == "Finite"
    assert str(embed_real(0, FR).classify()) == "Infinitesimal"
    mixed = cls([(-1, 1)], [(1, 1)]).classify()
    assert mixed.kind == "Mixed"
    assert str(mixed) == "Mixed(Infinitesimal, InfinitelyLarge)"
    # the same germ is not mixed once one class is irrelevant
    assert RpaReal(cls([(-1, 1)], [(1, 1)]).germ, SupersetOf(EVENS)).classify().kind \
        == "Infinitesimal"


def test_rescaling_is_unit_relative():
    one = embed_real(1, FR)
    assert one.rescale(N) == INV_N
    assert N.rescale(N) == one
    h0 = INV_N
    assert str(h0.rescale(INV_N).classify()) == "Finite"


def test_complex_parts():
    z = RpaComplex(INV_N, N)
    assert z.conj().conj() == z
    assert z.re_part() == INV_N and z.im_part() == N
    assert embed_complex(1, 1, FR).abs_squared() == embed_real(2, FR)
    assert z.abs_squared() == g((-2, 1), (2, 1))
    assert not RpaComplex(embed_real(0, FR)).abs_squared()


def test_complex_inverse():
    z = RpaComplex(embed_real(1, FR), N)
    with pytest.raises(Unrepresentable):
        z.try_invert()  # 1 / (1 + n^2) is an infinite series
    w = embed_complex(3, 4, FR)
    assert w * w.try_invert() == embed_complex(1, 0, FR)


@given(seeds)
def test_conjugation_laws(seed):
    rng = random.Random(seed)
    for F in gen.FILTERS:
        z, w = gen.cplx(rng, F), gen.cplx(rng, F)
        assert z.conj().conj() == z
        assert (z * w).conj() == z.conj() * w.conj()
        if z.conj() == z:
            assert not z.im
        assert (not z.abs_squared()) == (not z)


def test_abs_values():
    u = cls([(0, -2)], [(1, 3)])
    assert u.real_abs() == cls([(0, 2)], [(1, 3)])
    z = embed_complex(-3, 4, FR)
    assert z.abs_one_norm() == embed_real(7, FR)


def test_square_roots():
    for F in gen.FILTERS:
        assert embed_real(4, F).sqrt_nonneg() == embed_real(2, F)
    assert (N * N).sqrt_nonneg() == N
    r = g((2, 1), (0, 1)).sqrt_nonneg(2)
    assert r == g((1, 1), (-1, Fr(1, 2)))
    # oracle: (n + n^-1/2)^2 - (n^2 + 1) = n^-2/4
    assert r * r - g((2, 1), (0, 1)) == g((-2, Fr(1, 4)))
    with pytest.raises(NotNonneg):
        (-N).sqrt_nonneg()
    with pytest.raises(Unrepresentable):
        embed_real(2, FR).sqrt_nonneg()


def test_sqrt_truncation_order():
    x = g((2, 1), (0, 1))
    for order in range(1, 6):
        assert len(x.sqrt_nonneg(order).germ.polys[0].terms) == order


def test_eval_at():
    assert (N * N).eval_at(3) == 9
    assert EVEN.eval_at(4) == 1
    assert RpaComplex(N, INV_N).eval_at(2) == (2, Fr(1, 2))


@given(seeds, st.integers(1, 200))
def test_eval_at_is_a_ring_map(seed, k):
    rng = random.Random(seed)
    x = gen.real(rng, FR, exps=gen.INT_EXPONENTS)
    y = gen.real(rng, FR, exps=gen.INT_EXPONENTS)
    assert (x + y).eval_at(k) == x.eval_at(k) + y.eval_at(k)
    assert (x * y).eval_at(k) == x.eval_at(k) * y.eval_at(k)


def test_omega_and_piecewise():
    assert omega(FR) == N
    assert piecewise([embed_real(1, FR), embed_real(0, FR)]) == EVEN
    assert piecewise([N]) == N


def test_eventual_max():
    u = cls([(0, 1)], [(1, 1)])
    assert eventual_max([u, embed_real(2, FR)]) == cls([(0, 2)], [(1, 1)])
    assert eventual_max([INV_N, -N]) == INV_N
