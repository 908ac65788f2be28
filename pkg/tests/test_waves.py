from __future__ import annotations

import random
from fractions import Fraction as Fr

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rpalab import gen
from rpalab.errors import (FilterMismatch, GridMismatch, IncomparableBreakpoints, KindError,
                           NonIncreasingBreakpoints)
from rpalab.index_filters import Frechet, PrincipalAt
from rpalab.puiseux import Germ, PuiseuxPoly
from rpalab.scalars import RpaComplex, RpaReal, embed_complex, embed_real, omega
from rpalab.waves import (inner_product, integrate, make_grid, make_wave, norm_approx,
                          norm_squared, refine_common, schwarz_holds, wave_algebra)

FR = Frechet()
N = omega(FR)
INV_N = RpaReal(Germ.of(PuiseuxPoly.monomial(1, -1)), FR)
I = embed_complex(0, 1, FR)
seeds = st.integers(0, 10**6)


def c(x) -> RpaComplex:
    return x if isinstance(x, RpaComplex) else RpaComplex(x if isinstance(x, RpaReal)
                                                          else embed_real(x, FR))


def test_grid_construction():
    ind = make_wave([0, 1], [1], FR)
    assert ind.grid.size == 1 and integrate(ind) == c(1)
    inf = make_wave([embed_real(0, FR), N], [c(INV_N)])
    assert inf.grid.lengths[0] == N
    mixed = RpaReal(Germ([PuiseuxPoly.const(1), PuiseuxPoly.const(-1)]), FR)
    with pytest.raises(IncomparableBreakpoints):
        make_grid([embed_real(0, FR), mixed])
    with pytest.raises(NonIncreasingBreakpoints):
        make_grid([1, 0], FR)
    with pytest.raises(NonIncreasingBreakpoints):
        make_grid([0, 0], FR)
    with pytest.raises(KindError):
        make_grid([0], FR)
    with pytest.raises(KindError):
        make_wave([0, 1, 2], [1], FR)


def test_refinement():
    psi = make_wave([0, 1, 2], [2, 3], FR)
    chi = make_wave([0, 2], [5], FR)
    grid, a, b = refine_common(psi, chi)
    assert [x.eval_at(1) for x in grid.breakpoints] == [0, 1, 2]
    assert b == (c(5), c(5)) and a == psi.coeffs
    g2, a2, b2 = refine_common(psi, psi)
    assert g2 == psi.grid and a2 == b2 == psi.coeffs


def test_algebra():
    psi = make_wave([0, 1, 2], [2, 3], FR)
    zero = make_wave([0, 2], [0], FR)
    assert psi + zero == psi
    left = make_wave([0, 1, 2], [1, 0], FR)
    right = make_wave([0, 1, 2], [0, 1], FR)
    assert (left * right).is_zero()
    assert wave_algebra(left, right, "add") == make_wave([0, 2], [1], FR)
    assert psi - psi == zero


def test_integrals():
    assert integrate(make_wave([0, 1], [1], FR)) == c(1)
    assert integrate(make_wave([embed_real(0, FR), N], [c(INV_N)])) == c(1)
    assert integrate(make_wave([0, 1, 2], [2, 3], FR)) == c(5)


def test_inner_product_examples():
    ind = make_wave([0, 1], [1], FR)
    assert inner_product(ind, ind) == c(1)
    psi = make_wave([0, 1, 2], [1, 0], FR)
    chi = make_wave([0, 1, 2], [0, 1], FR)
    assert not inner_product(psi, chi)
    assert schwarz_holds(psi, chi) and schwarz_holds(psi, psi)
    z = make_wave([0, 1], [I], FR)
    # conjugate-linear in the first slot
    assert inner_product(z, ind) == -I and inner_product(ind, z) == I


def test_inner_product_against_pointwise_oracle():
    # psi = 1 + i*n on [0, 1), 1/n on [1, 3); chi = 2 on [0, 2), i on [2, 3)
    psi = make_wave([0, 1, 3], [c(1) + I * c(N), c(INV_N)], FR)
    chi = make_wave([0, 2, 3], [c(2), I], FR)
    got = inner_product(psi, chi)
    for k in range(1, 12):
        # sum over [0,1), [1,2), [2,3) of conj(psi) * chi, all lengths 1
        re = 2 + Fr(2, k)
        im = -2 * k + Fr(1, k)
        assert got.eval_at(k) == (re, im)


def test_norms():
    assert norm_squared(make_wave([0, 1, 2], [2, 3 * I], FR)) == embed_real(9, FR)
    assert norm_squared(make_wave([0, 1, 2], [c(N), c(INV_N)])) == N * N
    zero = make_wave([0, 1, 2], [0, 0], FR)
    assert not norm_squared(zero)
    assert norm_approx(make_wave([0, 1], [c(N)])) == N


def test_grid_mismatch_between_filters():
    psi = make_wave([0, 1], [1], FR)
    chi = make_wave([0, 1], [1], PrincipalAt(3))
    with pytest.raises((FilterMismatch, GridMismatch)):
        inner_product(psi, chi)


@given(seeds)
def test_scalar_product_laws(seed):
    rng = random.Random(seed)
    for F in gen.FILTERS:
        psi = gen.wave(rng, F)
        chi = gen.related_wave(rng, psi)
        chi2 = gen.wave(rng, F, grid=chi.grid)
        k = gen.cplx(rng, F, 2)
        assert inner_product(psi, chi.scale(k) + chi2) == \
            k * inner_product(psi, chi) + inner_product(psi, chi2)
        assert inner_product(chi, psi) == inner_product(psi, chi).conj()
        pp = inner_product(psi, psi)
        assert pp.is_real() and pp.re.is_nonneg()
        assert (not pp) == psi.is_zero() == (not norm_squared(psi))
        assert schwarz_holds(psi, chi)
        grid, a, _ = refine_common(psi, chi)
        assert integrate(make_wave(grid, a)) == integrate(psi)


@given(seeds)
def test_module_axioms(seed):
    rng = random.Random(seed)
    F = FR
    psi = gen.wave(rng, F)
    chi = gen.related_wave(rng, psi)
    a, b = gen.cplx(rng, F, 2), gen.cplx(rng, F, 2)
    assert (psi + chi).scale(a) == psi.scale(a) + chi.scale(a)
    assert psi.scale(a + b) == psi.scale(a) + psi.scale(b)
    assert psi.scale(a * b) == psi.scale(b).scale(a)
    assert norm_squared(psi.scale(a)) == a.abs_squared() * norm_squared(psi)
