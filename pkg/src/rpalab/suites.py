"""Deterministic property suites behind ``fuzz`` and the acceptance tests.

A suite is a function ``case(rng, F)`` that raises :class:`Counterexample`
when a law fails.  :func:`run_suite` derives one RNG per case from
``(suite, seed, index)``, so reports are reproducible and cases are
independent of each other.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import isqrt
from typing import Callable

from . import gen
from .errors import RpaError, UnboundName
from .index_filters import Frechet, PrincipalAt
from .operators import (apply, bound_certificate, bound_combinators, center, commutator,
                        expectation, heisenberg_holds, is_hermitian,
                        power_commutator_residual, trace, variance, wintner_witness)
from .puiseux import Germ, PuiseuxPoly
from .render import render_text, to_jsonable
from .scalars import RpaComplex, RpaReal, embed_real, eventual_max
from .waves import (StepWave, inner_product, integrate, norm_squared, refine_common,
                    schwarz_holds)

__all__ = ["Counterexample", "SUITES", "run_suite", "zero_divisor_demo", "relativity_demo"]


class Counterexample(Exception):
    def __init__(self, claim: str, **values):
        super().__init__(claim)
        self.claim = claim
        self.values = values


def check(cond: bool, claim: str, **values) -> None:
    if not cond:
        raise Counterexample(claim, **values)


# -- scalars ---------------------------------------------------------------

def _element(rng, F):
    return gen.cplx(rng, F) if rng.random() < 0.5 else RpaComplex(gen.real(rng, F))


def suite_ring(rng, F):
    a, b, c = (_element(rng, F) for _ in range(3))
    zero, one = a.zero(), a.one()
    v = dict(a=a, b=b, c=c)
    check((a + b) + c == a + (b + c), "addition is associative", **v)
    check((a * b) * c == a * (b * c), "multiplication is associative", **v)
    check(a + b == b + a, "addition is commutative", **v)
    check(a * b == b * a, "multiplication is commutative", **v)
    check(a * (b + c) == a * b + a * c, "multiplication distributes over addition", **v)
    check(a + zero == a and a * one == a, "0 and 1 are units", **v)
    check(a + (-a) == zero and a - b == a + (-b), "negation is an additive inverse", **v)
    x, y = gen.rational(rng), gen.rational(rng)
    ex, ey = embed_real(x, F), embed_real(y, F)
    check(ex + ey == embed_real(x + y, F) and ex * ey == embed_real(x * y, F),
          "embedding of rationals is a ring homomorphism", x=ex, y=ey)
    check((ex == ey) == (x == y), "embedding is injective", x=ex, y=ey)


def suite_order(rng, F):
    a = gen.real(rng, F)
    p = gen.real(rng, F).real_abs()
    q = gen.real(rng, F).real_abs()
    b = a + p if rng.random() < 0.7 else gen.real(rng, F)
    c = b + q if rng.random() < 0.7 else gen.real(rng, F)
    d = gen.real(rng, F)
    v = dict(a=a, b=b, c=c, d=d)
    check(a.leq(a), "reflexive", **v)
    if a.leq(b) and b.leq(a):
        check(a == b, "antisymmetric", **v)
    if a.leq(b) and b.leq(c):
        check(a.leq(c), "transitive", **v)
    if a.leq(b):
        check((a + d).leq(b + d), "compatible with addition", **v)
        check((a * p).leq(b * p), "compatible with multiplication by nonnegatives", **v)
    check(p.is_nonneg() and (p * q).is_nonneg() and (p + q).is_nonneg(),
          "the positive cone is closed under + and *", p=p, q=q)
    check((a * a).is_nonneg(), "squares are nonnegative", a=a)


def _leaf_terms(rng, exps):
    m = rng.choice((1, 1, 2))
    return m, [gen.terms(rng, exps, 3) for _ in range(m)]


def _oracle_poly(ts, k: int) -> Fraction:
    total = Fraction(0)
    for e, c in ts:
        if e.denominator == 1:
            total += c * Fraction(k) ** int(e)
        else:
            r = isqrt(k)
            assert r * r == k and e.denominator == 2
            total += c * Fraction(r) ** int(2 * e)
    return total


class _Q:
    """Plain exact complex rational for the oracle side."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=Fraction(0)):
        self.re, self.im = Fraction(re), Fraction(im)

    def __add__(self, o):
        return _Q(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return _Q(self.re - o.re, self.im - o.im)

    def __mul__(self, o):
        return _Q(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def conj(self):
        return _Q(self.re, -self.im)

    def abs2(self):
        return _Q(self.re * self.re + self.im * self.im)

    def inv(self):
        n = self.re * self.re + self.im * self.im
        return _Q(self.re / n, -self.im / n)


def _random_tree(rng, depth: int):
    if depth == 0 or rng.random() < 0.3:
        return ("leaf",)
    op = rng.choice(("add", "sub", "mul", "mul", "neg", "conj", "re", "im", "abs2", "div"))
    if op in ("neg", "conj", "re", "im", "abs2"):
        return (op, _random_tree(rng, depth - 1))
    if op == "div":
        return (op, _random_tree(rng, depth - 1), ("mono",))
    return (op, _random_tree(rng, depth - 1), _random_tree(rng, depth - 1))


def _build(tree, rng, F, exps):
    """Build ``tree`` in C_F alongside an oracle ``n -> _Q`` over plain rationals."""
    tag = tree[0]
    if tag == "leaf":
        m, cls_terms = _leaf_terms(rng, exps)
        re = RpaReal(Germ([PuiseuxPoly(t) for t in cls_terms], m), F)
        im_m, im_terms = _leaf_terms(rng, exps) if rng.random() < 0.5 else (1, [[]])
        im = RpaReal(Germ([PuiseuxPoly(t) for t in im_terms], im_m), F)
        orc = lambda n: _Q(_oracle_poly(cls_terms[n % m], n),  # noqa: E731
                           _oracle_poly(im_terms[n % im_m], n))
        return RpaComplex(re, im), orc
    if tag == "mono":
        m = rng.choice((1, 2))
        mons = [(rng.choice(gen.INT_EXPONENTS),
                 gen.rational(rng, nonzero=True)) for _ in range(m)]
        x = RpaReal(Germ([PuiseuxPoly.monomial(c, e) for e, c in mons], m), F)
        orc = lambda n: _Q(Fraction(mons[n % m][1]) * Fraction(n) ** mons[n % m][0])  # noqa: E731
        return RpaComplex(x), orc
    subs = [_build(t, rng, F, exps) for t in tree[1:]]
    vals = [s[0] for s in subs]
    fns = [s[1] for s in subs]
    if tag == "add":
        return vals[0] + vals[1], lambda n: fns[0](n) + fns[1](n)
    if tag == "sub":
        return vals[0] - vals[1], lambda n: fns[0](n) - fns[1](n)
    if tag == "mul":
        return vals[0] * vals[1], lambda n: fns[0](n) * fns[1](n)
    if tag == "neg":
        return -vals[0], lambda n: _Q(0) - fns[0](n)
    if tag == "conj":
        return vals[0].conj(), lambda n: fns[0](n).conj()
    if tag == "re":
        return RpaComplex(vals[0].re), lambda n: _Q(fns[0](n).re)
    if tag == "im":
        return RpaComplex(vals[0].im), lambda n: _Q(fns[0](n).im)
    if tag == "abs2":
        return RpaComplex(vals[0].abs_squared()), lambda n: fns[0](n).abs2()
    if tag == "div":
        return vals[0] / vals[1], lambda n: fns[0](n) * fns[1](n).inv()
    raise ValueError(tag)


def suite_principal(rng, F):
    if not isinstance(F, PrincipalAt):
        F = PrincipalAt(rng.choice((1, 7, 100)))
    tree = _random_tree(rng, 3)
    value, orc = _build(tree, rng, F, gen.exponents_for(F))
    expect = orc(F.k)
    got_re, got_im = value.re.germ, value.im.germ
    check(got_re.modulus == 1 and got_im.modulus == 1,
          "principal normal forms are constants", value=value)
    check(value.eval_at(F.k) == (expect.re, expect.im),
          "agrees with plain rational arithmetic at k", value=value,
          expected=f"{expect.re} + {expect.im}*i", tree=repr(tree))
    check(value.re.is_nonneg() == (expect.re >= 0),
          "sign agrees with the rational sign at k", value=value)
    zero = value.re.classify().kind == "Infinitesimal"
    check(zero == (expect.re == 0), "classification of a constant", value=value)


def _sample_indices(rng, modulus: int, count: int = 40) -> list[int]:
    pool = [k * modulus + r for k in range(10, 31) for r in range(modulus)]
    pool = [n for n in pool if n >= 1]
    return sorted(rng.sample(pool, min(count, len(pool))))


def suite_pointwise(rng, F):
    # integer exponents keep every sampled value rational
    tree = _random_tree(rng, 3)
    value, orc = _build(tree, rng, F, gen.INT_EXPONENTS)
    for n in _sample_indices(rng, 6):
        o = orc(n)
        check(value.eval_at(n) == (o.re, o.im), "identity holds pointwise", value=value,
              index=n, tree=repr(tree))
        # squared |Re z| <= |z| and |Im z| <= |z|, literally pointwise
        a2 = value.abs_squared().eval_at(n)
        check(a2 - value.re.eval_at(n) ** 2 >= 0 and a2 - value.im.eval_at(n) ** 2 >= 0,
              "|Re z|^2, |Im z|^2 <= |z|^2 pointwise", value=value, index=n)
        l1 = value.abs_one_norm().eval_at(n)
        check(a2 <= l1 * l1 <= 2 * a2, "|z|^2 <= |z|_1^2 <= 2|z|^2 pointwise",
              value=value, index=n)


def suite_complex(rng, F):
    z = gen.cplx(rng, F)
    w = gen.cplx(rng, F)
    u = gen.real(rng, F)
    v = dict(z=z, w=w)
    zero = z.zero()
    check((z == zero) == (not z.re and not z.im), "complex zero iff both parts zero", **v)
    check(z.conj().conj() == z, "conjugation is an involution", **v)
    check((z + w).re == z.re + w.re and (z + w).im == z.im + w.im,
          "Re and Im are additive", **v)
    check((z * w).conj() == z.conj() * w.conj(), "conjugation is multiplicative", **v)
    real_w = RpaComplex(u)
    check(real_w.conj() == real_w, "embedded reals are conjugation-fixed", u=u)
    if z.conj() == z:
        check(not z.im, "conj(z) = z forces Im z = 0", **v)
    check((z.abs_squared() == z.abs_squared().zero()) == (z == zero), "|z|^2 = 0 iff z = 0", **v)
    check((z.abs_squared() - z.re * z.re).is_nonneg(), "|Re z|^2 <= |z|^2", **v)
    check((z.abs_squared() - z.im * z.im).is_nonneg(), "|Im z|^2 <= |z|^2", **v)
    check(RpaComplex(u, u.zero()).re == u and RpaComplex(u.zero(), u).im == u,
          "Re/Im invert the real and imaginary embeddings", u=u)
    if u.is_nonneg():
        check(u.real_abs() == u, "|u| = u on the positive cone", u=u)


def zero_divisor_demo(F) -> dict:
    """Even and odd indicators: their product is 0; are the factors nonzero?"""
    even = RpaReal(Germ([PuiseuxPoly.const(1), PuiseuxPoly()], 2), F)
    odd = RpaReal(Germ([PuiseuxPoly(), PuiseuxPoly.const(1)], 2), F)
    return {"even": even, "odd": odd, "product_zero": not (even * odd),
            "factors_nonzero": bool(even) and bool(odd)}


def relativity_demo(F=None) -> dict:
    F = F or Frechet()
    one = embed_real(1, F)
    n = RpaReal(Germ.of(PuiseuxPoly.monomial(1, 1)), F)
    return {
        "1": one.classify(),
        "rescale(1, n)": one.rescale(n).classify(),
        "rescale(n^2, n)": (n * n).rescale(n).classify(),
    }


# -- waves and operators ----------------------------------------------------

def suite_wave(rng, F):
    psi = gen.wave(rng, F)
    chi = gen.related_wave(rng, psi)
    chi2 = gen.wave(rng, F, grid=chi.grid)
    c = gen.cplx(rng, F, 2)
    v = dict(psi=psi, chi=chi, chi2=chi2, c=c)
    lhs = inner_product(psi, chi.scale(c) + chi2)
    check(lhs == c * inner_product(psi, chi) + inner_product(psi, chi2),
          "scalar product is linear in the second slot", **v)
    check(inner_product(chi, psi) == inner_product(psi, chi).conj(),
          "scalar product is conjugate symmetric", **v)
    pp = inner_product(psi, psi)
    check(not pp.im and pp.re.is_nonneg(), "<psi, psi> lies in the positive cone", **v)
    check((pp == pp.zero()) == psi.is_zero(), "<psi, psi> = 0 iff psi = 0", **v)
    grid, a, _ = refine_common(psi, chi)
    check(integrate(StepWave(grid, a)) == integrate(psi), "integral is refinement invariant", **v)
    check(inner_product(StepWave(grid, a), chi) == inner_product(psi, chi),
          "scalar product is refinement invariant", **v)
    zero = psi.scale(0)
    check(inner_product(zero, zero) == pp.zero(), "<0, 0> = 0", psi=psi)


def suite_schwarz(rng, F):
    psi = gen.wave(rng, F)
    chi = gen.related_wave(rng, psi) if rng.random() < 0.7 else psi.scale(gen.cplx(rng, F, 2))
    check(schwarz_holds(psi, chi), "|<psi, chi>|^2 <= <psi, psi><chi, chi>", psi=psi, chi=chi)


def _state_and_ops(rng, F, dims=(2, 5)):
    m = rng.randint(*dims)
    psi = gen.admissible_state(rng, F, m)
    A = gen.hermitian(rng, psi.grid)
    B = gen.hermitian(rng, psi.grid)
    return psi, A, B


def suite_heisenberg(rng, F):
    psi, A, B = _state_and_ops(rng, F)
    check(is_hermitian(A) and is_hermitian(B), "generated operators are Hermitian", A=A, B=B)
    verdict = heisenberg_holds(A, B, psi)
    check(verdict.holds, "4 Var(A) Var(B) >= |<[A, B]>|^2", A=A, B=B, psi=psi,
          residual=verdict.residual)
    check(variance(A, psi).is_nonneg(), "variance is nonnegative", A=A, psi=psi)


def suite_proof_chain(rng, F):
    psi, A, B = _state_and_ops(rng, F, (2, 4))
    v = dict(A=A, B=B, psi=psi)
    e = expectation(A, psi)
    check(e.conj() == e, "expectation of a Hermitian operator is real", **v)
    A1, B1 = center(A, psi), center(B, psi)
    check(is_hermitian(A1) and is_hermitian(B1), "centering preserves hermiticity", **v)
    check(commutator(A1, B1) == commutator(A, B), "centering leaves the commutator unchanged", **v)
    a1 = apply(A1, psi)
    spread = inner_product(a1, a1) * inner_product(psi, psi).re.try_invert()
    check(spread == RpaComplex(variance(A, psi)), "<A1 psi, A1 psi> / <psi, psi> = Var(A)", **v)
    check(expectation(A1, psi) == e.zero(), "centered operator has zero mean", **v)


# -- norms, bounds, Wintner --------------------------------------------------

def suite_norm(rng, F):
    psi = gen.wave(rng, F)
    c = gen.cplx(rng, F, 2)
    v = dict(psi=psi, c=c)
    check(norm_squared(psi.scale(c)) == c.abs_squared() * norm_squared(psi),
          "||c psi||^2 = |c|^2 ||psi||^2", **v)
    ns = norm_squared(psi)
    check((ns == ns.zero()) == psi.is_zero(), "||psi|| = 0 iff psi = 0", **v)
    check(ns.is_nonneg(), "norm is nonnegative", **v)
    check(norm_squared(psi.scale(0)) == ns.zero(), "||0|| = 0", **v)


def _sqrt_le_sum(x: Fraction, y: Fraction, z: Fraction) -> bool:
    """sqrt(x) <= sqrt(y) + sqrt(z) for nonnegative rationals, exactly."""
    d = x - y - z
    return d <= 0 or d * d <= 4 * y * z


def suite_triangle(rng, F):
    psi = gen.wave(rng, F, exps=gen.INT_EXPONENTS)
    chi = gen.related_wave(rng, psi, exps=gen.INT_EXPONENTS)
    grid, a, b = refine_common(psi, chi)
    total = [x + y for x, y in zip(a, b)]
    M = 6
    for n in _sample_indices(rng, M):
        def sup(cs):
            return max(c.abs_squared().eval_at(n) for c in cs)
        check(_sqrt_le_sum(sup(total), sup(a), sup(b)),
              "||psi + chi|| <= ||psi|| + ||chi|| at a sampled index", psi=psi, chi=chi, index=n)
    # exact on real nonnegative coefficients, where |gamma| = gamma
    pos = [RpaComplex(c.re.real_abs()) for c in a]
    pos2 = [RpaComplex(c.re.real_abs()) for c in b]
    lhs = eventual_max((x + y).re for x, y in zip(pos, pos2))
    rhs = eventual_max(x.re for x in pos) + eventual_max(y.re for y in pos2)
    check(lhs.leq(rhs), "triangle inequality, real nonnegative coefficients", psi=psi, chi=chi)


def suite_bounds(rng, F):
    m = rng.randint(1, 4)
    psi = gen.wave(rng, F, m)
    A = gen.operator(rng, psi.grid)
    cert = bound_certificate(A)
    check(cert.bound.is_nonneg(), "bound is nonnegative", A=A)
    check(cert.certifies(psi), "||A psi||^2 <= M^2 ||psi||^2", A=A, psi=psi, bound=cert.bound)
    bigger = cert.bound + gen.real(rng, F).real_abs()
    check(cert.raised_to(bigger).certifies(psi), "larger constants also certify", A=A, psi=psi)


def suite_combinators(rng, F):
    m = rng.randint(1, 4)
    grid = gen.wave(rng, F, m).grid
    A, B = gen.operator(rng, grid), gen.operator(rng, grid)
    c = gen.cplx(rng, F, 2)
    ka, kb = bound_certificate(A).bound, bound_certificate(B).bound
    comb = bound_combinators(A, B, c)
    v = dict(A=A, B=B, c=c)
    check(comb.total.bound.leq(ka + kb), "M(A+B) <= M(A) + M(B)", **v)
    check(comb.scaled.bound.leq(c.abs_one_norm() * ka), "M(cA) <= |c|_1 M(A)", **v)
    check(comb.product.bound.leq(ka * kb), "M(AB) <= M(A) M(B)", **v)


def suite_trace(rng, F):
    m = rng.randint(1, 4)
    grid = gen.wave(rng, F, m).grid
    A, B = gen.operator(rng, grid), gen.operator(rng, grid)
    tr = trace(commutator(A, B))
    check(not tr, "trace of a commutator vanishes", A=A, B=B)


def suite_wintner(rng, F):
    m = rng.randint(1, 4)
    grid = gen.wave(rng, F, m).grid
    A, B = gen.operator(rng, grid), gen.operator(rng, grid)
    c = gen.nonzero_scalar(rng, F)
    w = wintner_witness(A, B, c)
    check(w.trace == c * (-m), "trace([A,B] - cI) = -m c", A=A, B=B, c=c)
    check(w.nonzero and not w.residual.is_zero(), "[A,B] - cI is never zero for c != 0",
          A=A, B=B, c=c)


def suite_power_commutator(rng, F):
    m = rng.randint(2, 4)
    grid = gen.wave(rng, F, m).grid
    A = gen.operator(rng, grid, 1)
    B = gen.operator(rng, grid, 1)
    k = rng.randint(1, 5)
    res = power_commutator_residual(A, B, k)
    check(res.is_zero(), "A B^k - B^k A = sum B^j [A,B] B^(k-1-j)", A=A, B=B, k=k)


# -- CLI round trip and a deliberately false claim --------------------------

def suite_roundtrip(rng, F):
    from .parser import parse_expr
    from .session import Session, evaluate
    kind = rng.choice(("scalar", "scalar", "wave", "op"))
    if kind == "scalar":
        x = gen.cplx(rng, F)
    elif kind == "wave":
        x = gen.wave(rng, F, rng.randint(1, 3))
    else:
        x = gen.operator(rng, gen.wave(rng, F, rng.randint(1, 3)).grid)
    text = render_text(x)
    y = evaluate(parse_expr(text), Session(filter=F))
    check(_same(x, y), "parse(render(x)) == x", x=x, text=text)


def _same(x, y) -> bool:
    from .operators import GridOperator
    if type(x) is not type(y):
        return False
    if isinstance(x, StepWave):
        return x.grid == y.grid and all(a == b for a, b in zip(x.coeffs, y.coeffs))
    if isinstance(x, GridOperator):
        return x.grid == y.grid and x == y
    return x == y


def suite_broken(rng, F):
    """Claims the order is total; false whenever residue classes disagree in sign."""
    a, b = gen.real(rng, F), gen.real(rng, F)
    check(a.leq(b) or b.leq(a), "any two elements are comparable (false claim)", a=a, b=b)


Suite = Callable[[random.Random, object], None]

SUITES: dict[str, tuple[Suite, tuple]] = {
    "ring": (suite_ring, gen.FILTERS),
    "order": (suite_order, gen.FILTERS),
    "principal": (suite_principal, (PrincipalAt(1), PrincipalAt(7), PrincipalAt(100))),
    "pointwise": (suite_pointwise, (Frechet(),)),
    "complex": (suite_complex, gen.FILTERS),
    "wave": (suite_wave, gen.FILTERS),
    "schwarz": (suite_schwarz, gen.FILTERS),
    "heisenberg": (suite_heisenberg, gen.FILTERS),
    "proof_chain": (suite_proof_chain, gen.FILTERS),
    "norm": (suite_norm, gen.FILTERS),
    "triangle": (suite_triangle, (Frechet(),)),
    "bounds": (suite_bounds, gen.FILTERS),
    "combinators": (suite_combinators, gen.FILTERS),
    "trace": (suite_trace, gen.FILTERS),
    "wintner": (suite_wintner, gen.FILTERS),
    "power_commutator": (suite_power_commutator, gen.FILTERS),
    "roundtrip": (suite_roundtrip, gen.FILTERS),
    "broken": (suite_broken, (Frechet(),)),
}

DEFAULT_CASES = 100


def _serialize(exc: Counterexample) -> dict:
    out = {"claim": exc.claim, "values": {}, "text": {}}
    for k, v in exc.values.items():
        try:
            out["values"][k] = to_jsonable(v)
            out["text"][k] = render_text(v)
        except TypeError:
            out["values"][k] = out["text"][k] = str(v)
    return out


def run_suite(name: str, cases: int | None = None, seed: int = 0, filters=None) -> dict:
    """Run ``cases`` seeded cases of suite ``name``; report counts and the first failure."""
    if name not in SUITES:
        raise UnboundName(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}")
    fn, default_filters = SUITES[name]
    filters = tuple(filters) if filters else default_filters
    cases = DEFAULT_CASES if cases is None else cases
    passed = failed = 0
    first = None
    for i in range(cases):
        F = filters[i % len(filters)]
        rng = random.Random(f"{name}:{seed}:{i}")
        try:
            fn(rng, F)
        except Counterexample as exc:
            failed += 1
            if first is None:
                first = {"case": i, "filter": str(F), **_serialize(exc)}
        except RpaError as exc:
            failed += 1
            if first is None:
                first = {"case": i, "filter": str(F), "claim": "no domain error",
                         "error": exc.code, "message": str(exc)}
        else:
            passed += 1
    return {"suite": name, "cases": cases, "seed": seed, "passed": passed,
            "failed": failed, "counterexample": first}
