from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from drinfeld.drinfeld import DrinfeldError, DrinfeldModule, height_at_v, motive_charpoly, phi_of, v_rank
from drinfeld.fields import embed, field
from drinfeld.polya import PolyA, PrimeP, gl_order, monic_irreducibles
from drinfeld.skew import SkewPoly
from drinfeld.supersingular import (
    canonical_model,
    dim_formula,
    enumerate_ss,
    fbar_isomorphic,
    frobenius_is_scalar_power,
    leveled_ss_set,
    mass,
)


def pr(text, q):
    return PrimeP(PolyA.parse(text, q))


def rank2_mass_by_j(P: PrimeP) -> Fraction:
    """Sum of 1/#Aut over supersingular j-invariants, from a direct scan of j in F_{q_v^2}."""
    q = P.q
    K = field(P.Fv.p, P.Fv.n * 2)
    gamma = embed(P.gamma_t, P.Fv, K)
    total = Fraction(0)
    if height_at_v(DrinfeldModule(K, q, gamma, (0, 1)), P) == 2:
        total += Fraction(1, q * q - 1)
    for j in range(1, K.order):
        if height_at_v(DrinfeldModule(K, q, gamma, (1, K.inv(j))), P) == 2:
            total += Fraction(1, q - 1)
    return total


def test_mass_examples():
    assert mass(2, pr("t", 2)) == Fraction(1, 3)
    assert mass(2, pr("t^2+t+1", 2)) == 1
    assert mass(3, pr("t", 2)) == Fraction(1, 7)
    assert mass(1, pr("t+1", 3)) == Fraction(1, 2)


@pytest.mark.parametrize("q, d", [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1)])
def test_rank2_mass_against_j_invariants(q, d):
    for P in monic_irreducibles(q, d)[:2]:
        P = PrimeP(P)
        assert rank2_mass_by_j(P) == mass(2, P)


def test_enumerate_small():
    (c,) = enumerate_ss(2, pr("t", 2))
    assert c.module.coeffs == (0, 1) and c.aut_order == 3
    cls = enumerate_ss(3, pr("t", 2))
    assert sum(Fraction(1, c.aut_order) for c in cls) == Fraction(1, 7)


CONFIGS = [(q, r, d) for q in (2, 3) for r in (1, 2, 3) for d in (1, 2) if (q, r, d) != (3, 3, 2)]


@pytest.mark.parametrize("q, r, d", CONFIGS)
def test_enumeration_invariants(q, r, d):
    P = PrimeP(monic_irreducibles(q, d)[0])
    classes = enumerate_ss(r, P)
    assert sum(Fraction(1, c.aut_order) for c in classes) == mass(r, P)
    for c in classes:
        assert v_rank(c.module, P) == 0
        assert c.aut_order == q**c.aut_m - 1 and r % c.aut_m == 0
        assert frobenius_is_scalar_power(c, P)
        x = PolyA.t(q)
        # charpoly (x - P)^r over A, low degree first
        expected = [PolyA(q, (1,))]
        for _ in range(r):
            expected = [(-P.P) * expected[0]] + [expected[i] - P.P * expected[i + 1] for i in range(len(expected) - 1)] + [expected[-1]]
        assert motive_charpoly(c.module) == expected
        assert x.deg == 1
    for a, b in itertools.combinations(classes, 2):
        assert not fbar_isomorphic(a.module, b.module)


@pytest.mark.slow
def test_enumeration_largest_config():
    P = PrimeP(monic_irreducibles(3, 2)[0])
    classes = enumerate_ss(3, P)
    assert sum(Fraction(1, c.aut_order) for c in classes) == mass(3, P)


def test_leveled_examples():
    S = leveled_ss_set(2, pr("t+1", 2), PolyA.parse("t", 2))
    assert len(S) == 2
    assert len(leveled_ss_set(1, pr("t+1", 2), PolyA.parse("t", 2))) == 1
    with pytest.raises(DrinfeldError):
        leveled_ss_set(2, pr("t+1", 2), PolyA.parse("t^2+1", 2))


@pytest.mark.parametrize("q, r, P, n", [(2, 2, "t", "t+1"), (2, 2, "t^2+t+1", "t"), (3, 2, "t", "t+1"),
                                        (2, 3, "t", "t+1"), (2, 2, "t+1", "t^2")])
def test_leveled_size_and_dim(q, r, P, n):
    Pp, nn = pr(P, q), PolyA.parse(n, q)
    S = leveled_ss_set(r, Pp, nn)
    assert len(S) == gl_order(r, nn) * mass(r, Pp)
    assert dim_formula(r, Pp, nn) == (Pp.qv**r - 1) * len(S)
    # every level structure is a basis of phi[n]
    for i, pt in enumerate(S.points):
        phi = S.module(i)
        fn = phi_of(phi, nn)
        assert all(fn(x) == 0 for x in pt.lam)


def test_dim_examples():
    assert dim_formula(2, pr("t", 2), PolyA.parse("t+1", 2)) == 6
    assert dim_formula(1, pr("t", 2), PolyA.parse("t+1", 2)) == 1
    P = pr("t", 3)
    n1, n2 = PolyA.parse("t+1", 3), PolyA.parse("t+2", 3)
    assert dim_formula(2, P, n1 * n2) == dim_formula(2, P, n1) * gl_order(2, n2)


def test_canonical_model_examples():
    P = pr("t", 2)
    phi = DrinfeldModule(field(2, 2), 2, 0, (0, 1))
    assert canonical_model(phi, P) == phi
    assert phi_of(phi, P.P) == SkewPoly.tau(phi.L, 2, 2)
    P1 = pr("t+1", 2)
    (c,) = enumerate_ss(1, P1)
    model = canonical_model(c, P1)
    assert phi_of(model, P1.P) == SkewPoly.tau(model.L, 2, 1)
    # a conjugate over a larger field maps back to the same representative
    L = field(2, 4)
    for cls in enumerate_ss(2, pr("t^2+t+1", 2)):
        other = cls.module.change_field(L).conjugate(L.gen)
        assert canonical_model(other, pr("t^2+t+1", 2)) == cls.module
