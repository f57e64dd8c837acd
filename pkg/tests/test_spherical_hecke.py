from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drinfeld.fields import field
from drinfeld.polya import gaussian_binomial
from drinfeld.spherical_hecke import (
    DoubleCoset,
    HeckeElement,
    cocharacters,
    commutativity_check,
    convolve,
    coset_degree,
    coset_reps,
    elementary_divisors,
    elementary_divisors_by_minors,
    lattice_count,
    structure_constants_by_pairs,
    _structure_constants,
)


def test_coset_reps_examples():
    assert len(coset_reps((0, 0, 0), 2)) == 1
    assert len(coset_reps((1, 0), 2)) == 3
    assert len(coset_reps((1, 0, 0), 2)) == 7 == gaussian_binomial(3, 1, 2)
    assert coset_degree((0, 0), 3) == 1
    assert coset_degree((1, 0), 3) == 4
    assert coset_degree((1, 1), 3) == 1


@pytest.mark.parametrize("q_w", [2, 3])
@pytest.mark.parametrize("r", [1, 2, 3])
def test_coset_reps_against_lattice_oracle(q_w, r):
    for mu in cocharacters(r, 3):
        reps = coset_reps(mu, q_w)
        assert len(set(map(repr, reps))) == len(reps)
        assert len(reps) == lattice_count(mu, q_w), mu


@pytest.mark.parametrize("q_w", [2, 3])
@pytest.mark.parametrize("r", [2, 3])
def test_reps_have_the_right_type(q_w, r):
    F = field(*{2: (2, 1), 3: (3, 1)}[q_w])
    for mu in cocharacters(r, 2):
        for m in coset_reps(mu, q_w):
            assert elementary_divisors(F, m) == mu


def random_matrix(rng, F, r, deg):
    return [[tuple(rng.randrange(F.order) for _ in range(rng.randint(0, deg))) for _ in range(r)] for _ in range(r)]


@pytest.mark.parametrize("p", [2, 3])
def test_elementary_divisor_routes_agree(p):
    F = field(p, 1)
    rng = random.Random(p)
    checked = 0
    while checked < 150:
        r = rng.randint(1, 3)
        m = random_matrix(rng, F, r, 3)
        try:
            a = elementary_divisors_by_minors(F, m)
        except (ValueError, ArithmeticError):
            continue  # singular
        assert elementary_divisors(F, m) == a
        checked += 1


def test_convolution_unit_and_square():
    for q_w in (2, 3):
        one = HeckeElement.unit(q_w, 2)
        h = HeckeElement(q_w, 2, {(1, 0): 2, (2, 1): 1})
        assert one * h == h == h * one
        sq = convolve(HeckeElement.basis((1, 0), q_w), HeckeElement.basis((1, 0), q_w))
        # the coefficient of (1,1) is computed, then compared to the coset oracle
        assert set(sq.coeffs) == {(2, 0), (1, 1)} and sq.coeffs[(2, 0)] == 1
        c = sq.coeffs[(1, 1)]
        assert coset_degree((2, 0), q_w) + c * coset_degree((1, 1), q_w) == coset_degree((1, 0), q_w) ** 2
        assert c == q_w + 1


@pytest.mark.parametrize("q_w, r, size", [(2, 2, 2), (3, 2, 2), (2, 3, 2), (3, 3, 2)])
def test_structure_constant_routes_agree(q_w, r, size):
    mus = cocharacters(r, size)
    for lam, mu in itertools.product(mus, repeat=2):
        assert _structure_constants(lam, mu, q_w) == structure_constants_by_pairs(lam, mu, q_w), (lam, mu)


@pytest.mark.parametrize("q_w, r, size", [(2, 2, 2), (3, 2, 2), (2, 3, 2), (3, 3, 2), (2, 2, 4)])
def test_commutativity_and_degree(q_w, r, size):
    mus = cocharacters(r, size)
    for lam, mu in itertools.combinations_with_replacement(mus, 2):
        a, b = HeckeElement.basis(lam, q_w), HeckeElement.basis(mu, q_w)
        assert commutativity_check(a, b)
        assert (a * b).total_degree() == a.total_degree() * b.total_degree()


def elements(q_w, r, size):
    mus = cocharacters(r, size)
    return st.dictionaries(st.sampled_from(mus), st.integers(-3, 3), max_size=3).map(lambda d: HeckeElement(q_w, r, d))


@settings(max_examples=15)
@given(st.data())
def test_associativity(data):
    q_w, r = data.draw(st.sampled_from([(2, 2), (3, 2), (2, 3), (3, 3)]))
    a, b, c = (data.draw(elements(q_w, r, 2)) for _ in range(3))
    assert (a * b) * c == a * (b * c)


@given(st.sampled_from([(2, 2), (3, 3)]), st.integers(-2, 3), st.integers(-2, 3))
def test_central_shift(cfg, s1, s2):
    q_w, r = cfg
    lam, mu = (1,) + (0,) * (r - 1), (1, 1) + (0,) * (r - 2)
    base = convolve(HeckeElement.basis(lam, q_w), HeckeElement.basis(mu, q_w))
    shifted = convolve(HeckeElement.basis(tuple(x + s1 for x in lam), q_w), HeckeElement.basis(tuple(x + s2 for x in mu), q_w))
    assert shifted.coeffs == {tuple(x + s1 + s2 for x in nu): c for nu, c in base.coeffs.items()}


def test_double_coset_validation():
    assert DoubleCoset((3, 1, 1)).base == (2, 0, 0)
    with pytest.raises(ValueError):
        DoubleCoset((0, 1))
    with pytest.raises(ValueError):
        HeckeElement(2, 2, {(1, 0): 1}) * HeckeElement(3, 2, {(1, 0): 1})
