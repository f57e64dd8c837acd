from __future__ import annotations

import functools

import pytest

from drinfeld.brandt import (
    brandt_matrix,
    eigensystems,
    jl_compare,
    moduli_eigensystems,
    randomized_charpolys,
    restriction_equivariance,
    row_sums,
    verify_periodicity,
)
from drinfeld.drinfeld import DrinfeldError
from drinfeld.eigen import CanonicalValue, charpoly_multiset
from drinfeld.fields import field
from drinfeld.linalg import mat_mul
from drinfeld.moduli import ModuliSpace
from drinfeld.polya import PolyA, PrimeP, gaussian_binomial
from drinfeld.supersingular import dim_formula, leveled_ss_set


def A(text, q=2):
    return PolyA.parse(text, q)


@functools.lru_cache(maxsize=None)
def leveled(q, r, P, n):
    return leveled_ss_set(r, PrimeP(A(P, q)), A(n, q))


CONFIGS = [(2, 2, "t+1", "t", ["t^2+t+1", "t^3+t+1"]), (2, 2, "t", "t+1", ["t^2+t+1", "t^3+t+1"]),
           (3, 2, "t", "t+1", ["t+2", "t^2+1"]), (2, 3, "t", "t+1", ["t^2+t+1"])]


@pytest.mark.parametrize("q, r, P, n, ws", CONFIGS)
def test_row_sums_weight_zero(q, r, P, n, ws):
    S = leveled(q, r, P, n)
    for w in ws:
        qw = q ** A(w, q).deg
        for j in range(1, r + 1):
            B = brandt_matrix(S, A(w, q), j, 0)
            assert set(row_sums(B)) == {gaussian_binomial(r, j, qw) % S.M.p}


def test_small_example_and_central_operator():
    S = leveled(2, 2, "t+1", "t")
    B = brandt_matrix(S, A("t^2+t+1"), 1, 1)
    assert B.size == 2
    Z = brandt_matrix(S, A("t^2+t+1"), 2, 1)
    for row in Z.entries:
        assert sum(1 for x in row if x) == 1
    cp = charpoly_multiset(S.M, Z.entries)
    assert cp


@pytest.mark.parametrize("q, r, P, n, ws", CONFIGS)
def test_commutation(q, r, P, n, ws):
    S = leveled(q, r, P, n)
    M = S.M
    for k in (0, 1, 2):
        mats = [brandt_matrix(S, A(w, q), j, k).entries for w in ws for j in range(1, r + 1)]
        for a in mats:
            for b in mats:
                assert mat_mul(M, a, b) == mat_mul(M, b, a)


@pytest.mark.parametrize("q, r, P, n, ws", CONFIGS[:3])
def test_normalization_independence(q, r, P, n, ws):
    S = leveled(q, r, P, n)
    for k in (1, 2):
        for j in range(1, r + 1):
            base = charpoly_multiset(S.M, brandt_matrix(S, A(ws[0], q), j, k).entries)
            for seed in range(3):
                assert randomized_charpolys(S, A(ws[0], q), j, k, seed) == base


@pytest.mark.parametrize("q, r, P, n, ws", CONFIGS)
def test_periodicity(q, r, P, n, ws):
    S = leveled(q, r, P, n)
    for k in (0, 1, 2):
        assert verify_periodicity(S, [A(w, q) for w in ws[:1]], k)


def test_eigensystems_examples():
    q, r = 2, 2
    S = leveled(q, r, "t", "t+1")
    ws = [A("t^2+t+1"), A("t^3+t+1")]
    period = S.P.qv**r - 1
    rep = eigensystems(S, ws, range(1, period + 1))
    assert 1 <= len(rep.systems) <= dim_formula(r, S.P, S.n)
    F2 = field(2, 1)
    const = tuple(sorted(((str(PrimeP(w)), j), CanonicalValue.of(F2, gaussian_binomial(r, j, 2 ** w.deg) % 2))
                         for w in ws for j in (1, 2)))
    weights = [info["weights"] for sysv, info in rep.systems.items() if tuple(sorted(sysv)) == const]
    assert weights and period in weights[0]
    empty = eigensystems(S, [], [1, 2])
    assert list(empty.systems) == [()]
    with pytest.raises(DrinfeldError):
        eigensystems(S, [ws[0], ws[0]], [1])
    with pytest.raises(DrinfeldError):
        brandt_matrix(S, A("t"), 1, 1)


def test_restriction_equivariance():
    space = ModuliSpace(2, 2, A("t+1"))
    S = leveled(2, 2, "t+1", "t")
    for k in (1, 2, 3):
        for j in (1, 2):
            assert restriction_equivariance(space, S, A("t^2+t+1"), j, k)


def test_jl_small_and_prime_list_mismatch():
    space = ModuliSpace(2, 2, A("t+1"))
    S = leveled(2, 2, "t+1", "t")
    ws = [A("t^2+t+1")]
    b = eigensystems(S, ws, range(1, 4))
    m, _ = moduli_eigensystems(space, ws, range(1, 7))
    rep = jl_compare(m, b)
    assert rep["brandt_subset_of_moduli"]
    with pytest.raises(DrinfeldError):
        jl_compare(m, eigensystems(S, [A("t^3+t+1")], range(1, 4)))
