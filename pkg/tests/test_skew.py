from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from drinfeld.fields import field
from drinfeld.skew import (
    SkewCapExceeded,
    SkewPoly,
    kernel_basis,
    kernel_poly,
    partial_derivative,
    skew_right_divmod,
    splitting_degree,
)

L16 = field(2, 4)
L27 = field(3, 3)


def skews(L, q, max_deg=4):
    return st.lists(st.integers(0, L.order - 1), max_size=max_deg + 1).map(lambda c: SkewPoly(L, q, tuple(c)))


@given(skews(L16, 2), skews(L16, 2), skews(L16, 2))
def test_associative_and_distributive(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert (f + g) * h == f * h + g * h


@given(skews(L16, 2), skews(L16, 2), st.integers(0, 15))
def test_composition_is_evaluation(f, g, x):
    # (f g)(x) = f(g(x)) for additive polynomials
    assert (f * g)(x) == f(g(x))


def test_tau_commutation_rule():
    tau = SkewPoly.tau(L27, 3)
    for a in range(L27.order):
        assert tau * SkewPoly.constant(L27, 3, a) == SkewPoly(L27, 3, (0, L27.pow(a, 3)))


def test_tau_is_frobenius_over_f4():
    # q = 4 inside F_16: tau acts as x -> x^4
    tau = SkewPoly.tau(L16, 4)
    assert all(tau(x) == L16.pow(x, 4) for x in range(16))


@given(skews(L27, 3, 5), skews(L27, 3, 3))
def test_right_division(f, g):
    if g.is_zero():
        with pytest.raises(ZeroDivisionError):
            skew_right_divmod(f, g)
        return
    quo, rem = skew_right_divmod(f, g)
    assert quo * g + rem == f
    assert rem.deg < g.deg


def test_kernel_poly_roots_and_derivative():
    rng = random.Random(4)
    L = field(2, 6)
    for _ in range(20):
        basis = [L.random(rng, nonzero=True) for _ in range(3)]
        u = kernel_poly(L, 2, basis)
        assert u.coeffs[-1] == 1
        span = {0}
        for b in basis:
            span |= {L.add(s, b) for s in span}
        assert all(u(x) == 0 for x in span)
        assert u.deg == {1: 0, 2: 1, 4: 2, 8: 3}[len(span)]
        # du = prod of nonzero kernel elements (characteristic 2, so signs vanish)
        assert partial_derivative(u) == L.prod(x for x in span if x)


def test_kernel_basis_counts():
    # X + X^2 + X^4 over F_2: roots 0 and the roots of 1 + X + X^3, which live in F_8
    f = SkewPoly(field(2, 1), 2, (1, 1, 1))
    assert splitting_degree(f) == 3
    M, basis = kernel_basis(f, 3)
    assert M.order == 8 and len(basis) == 2
    assert all(f.change_field(M)(b) == 0 for b in basis)


def test_splitting_degree_cap():
    f = SkewPoly(field(2, 1), 2, (1, 1, 0, 0, 0, 1))
    with pytest.raises(SkewCapExceeded):
        splitting_degree(f, cap=2)
