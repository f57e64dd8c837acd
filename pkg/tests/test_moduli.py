from __future__ import annotations

import math
import random

import pytest

from drinfeld.drinfeld import DrinfeldError, height_at_v, phi_of
from drinfeld.fields import embed, field
from drinfeld.moduli import (
    DegenerationPath,
    GradedForm,
    HeckeEvaluator,
    ModuliPoint,
    ModuliSpace,
    component_count,
    elementary_symmetric,
    limit_module,
    module_from_point,
    ss_points_level_t,
)
from drinfeld.polya import PolyA, gaussian_binomial
from drinfeld.ratfunc import RatFunc
from drinfeld.skew import kernel_poly

CONFIGS = [(2, 2, "t+1"), (3, 2, "t+1"), (2, 3, "t+1"), (2, 2, "t^2+t+1"), (3, 3, "t^2+1")]


def space(q, r, P):
    return ModuliSpace(q, r, PolyA.parse(P, q))


def point_field(S):
    m = 1
    while S.F.order**m < 256:
        m += 1
    return S.point_field(m)


def span(L, q, basis):
    out = {0}
    Fq = field(L.p, int(math.log(q, L.p) + 0.5))
    for b in basis:
        out = {L.add(s, L.mul(embed(c, Fq, L), b)) for s in out for c in range(q)}
    return out


def test_module_from_point_rank_one():
    L = field(2, 4)
    for g in range(1, 16):
        for mu in range(1, 16):
            phi, _ = module_from_point(ModuliPoint(L, 2, g, (mu,)))
            assert phi.coeffs == (L.div(g, mu),) and phi.gamma_t == g


def test_module_from_point_rank_two_leading():
    L = field(2, 4)
    rng = random.Random(1)
    for _ in range(30):
        a, b, g = (L.random(rng, nonzero=True) for _ in range(3))
        if a == b:
            continue
        phi, _ = module_from_point(ModuliPoint(L, 2, g, (a, b)))
        assert phi.coeffs[-1] == L.div(g, L.prod([a, b, L.add(a, b)]))


def test_module_from_point_errors():
    L = field(2, 4)
    with pytest.raises(DrinfeldError):
        module_from_point(ModuliPoint(L, 2, 1, (0, 3)))
    with pytest.raises(DrinfeldError):
        module_from_point(ModuliPoint(L, 2, 0, (2, 3)))
    with pytest.raises(DrinfeldError):
        space(2, 2, "t+1").point(L, (5, 5))


@pytest.mark.parametrize("cfg", CONFIGS)
def test_reconstruction_and_coefficient_forms(cfg):
    q, r, P = cfg
    S = space(q, r, P)
    L = point_field(S)
    rng = random.Random(str(cfg))
    forms = [S.coefficient_form(i) for i in range(1, r + 1)]
    allowed = {q**i - 1 for i in range(r + 1)}
    for _ in range(25):
        x = S.random_point(rng, L)
        phi, lam = module_from_point(x)
        pt = phi.phi_t
        assert pt.coeff(0) == x.gamma_t
        kernel = span(L, q, lam)
        assert len(kernel) == q**r and all(pt(z) == 0 for z in kernel)
        # uniqueness: any module with this kernel and derivative is gamma/du * u
        u = kernel_poly(L, q, list(lam))
        assert pt == u.scale(L.div(x.gamma_t, u.coeff(0)))
        for i, f in enumerate(forms, 1):
            assert f.weight == q**i - 1
            assert f.evaluate(x) == phi.coeffs[i - 1]
        e = elementary_symmetric(L, x.u_values(), q**r - 1)
        assert all(e[j] == 0 for j in range(q**r) if j not in allowed)


@pytest.mark.parametrize("q", [2, 3])
def test_coefficient_form_top_and_first(q):
    S = space(q, 2, "t+1")
    L = point_field(S)
    x = S.random_point(random.Random(0), L)
    u = x.u_values()
    g = x.gamma_t
    assert S.coefficient_form(2).evaluate(x) == L.mul(g, L.prod(u))
    e = elementary_symmetric(L, u, q - 1)
    assert S.coefficient_form(1).evaluate(x) == L.mul(g, e[q - 1])
    if q == 2:
        assert e[1] == L.sum(u)
    with pytest.raises(DrinfeldError):
        S.coefficient_form(3)


def test_hasse_examples():
    S = space(2, 2, "t+1")
    a = S.P.P
    assert S.hasse_invariant(a, 0).is_zero()
    H1 = S.hasse_invariant(a, 1)
    target = S.u_form(0) + S.u_form(1) + S.u_form(2)
    fs = S.form_space(1)
    assert fs.coordinates(H1) == fs.coordinates(target)
    with pytest.raises(DrinfeldError):
        S.hasse_invariant(a * a, 1)


@pytest.mark.parametrize("cfg", CONFIGS)
def test_hasse_matches_phi_a_and_strata(cfg):
    q, r, P = cfg
    S = space(q, r, P)
    L = point_field(S)
    rng = random.Random("h" + str(cfg))
    a = S.P.P
    a2 = a * (PolyA(q, (1,)) + a * PolyA.t(q))  # another uniformizer
    assert a2.valuation(a) == 1
    d = S.P.d
    Hs = [S.hasse_invariant(a, i) for i in range(r)]
    for _ in range(15):
        x = S.random_point(rng, L)
        phi, _ = module_from_point(x)
        fa = phi_of(phi, a)
        for i, H in enumerate(Hs):
            assert H.weight == q ** (i * d) - 1
            assert H.evaluate(x) == fa.coeff(i * d)
        h = S.stratum_of_point(x)
        assert 1 <= h <= r
        assert h == S.stratum_of_point(x, a2) == height_at_v(phi, S.P)


def test_stratum_examples():
    S = space(2, 2, "t+1")
    L = field(2, 4)
    omega = embed(field(2, 2).gen, field(2, 2), L)
    rng = random.Random(2)
    for _ in range(10):
        alpha = L.random(rng, nonzero=True)
        x = S.point(L, (alpha, L.mul(omega, alpha)))
        assert S.stratum_of_point(x) == 2
    generic = [S.stratum_of_point(S.random_point(rng, L)) for _ in range(40)]
    assert generic.count(1) > 30


def test_ss_points_level_t_small():
    S = space(2, 2, "t+1")
    pts = ss_points_level_t(S)
    assert pts
    for x in pts:
        L = x.L
        beta = x.lam[1]
        assert x.lam[0] == 1 and L.add(L.add(L.mul(beta, beta), beta), 1) == 0
        assert S.stratum_of_point(x) == 2
    assert len(pts) == 2


def test_form_space_dims():
    S = space(2, 2, "t+1")
    assert S.form_space(0).dim == 1
    assert S.form_space(1).dim == 3
    for k in range(4):
        n = S.n_u
        assert S.form_space(k).dim <= math.comb(k + n - 1, n - 1)


def test_hecke_weight_zero_constant():
    for q, r, P, w in [(2, 2, "t+1", "t^2+t+1"), (3, 2, "t+1", "t+2"), (2, 3, "t+1", "t^2+t+1")]:
        S = space(q, r, P)
        W = PolyA.parse(w, q)
        T = HeckeEvaluator(S, W, 1)
        one = GradedForm.constant(S.F, q, r, 1)
        out = T.apply(one)
        qw = q**W.deg
        assert S.form_space(0).coordinates(out) == [gaussian_binomial(r, 1, qw) % S.F.p]


def test_hecke_rejects_bad_w():
    S = space(2, 2, "t+1")
    with pytest.raises(DrinfeldError):
        HeckeEvaluator(S, PolyA.parse("t", 2), 1)
    with pytest.raises(DrinfeldError):
        HeckeEvaluator(S, PolyA.parse("t+1", 2), 1)


@pytest.mark.parametrize("q, r, P, w", [(2, 2, "t+1", "t^2+t+1"), (3, 2, "t+1", "t+2")])
def test_hecke_fixes_hasse_and_commutes_with_multiplication(q, r, P, w):
    S = space(q, r, P)
    W = PolyA.parse(w, q)
    qw = q**W.deg
    H = S.hasse_invariant(S.P.P, 1)
    fsH = S.form_space(H.weight)
    for j in range(1, r + 1):
        T = HeckeEvaluator(S, W, j)
        scalar = gaussian_binomial(r, j, qw) % S.F.p
        assert fsH.coordinates(T.apply(H, fsH)) == fsH.coordinates(H.scale(scalar))
        # H * T f = T (H f) on weight-1 forms
        fs1 = S.form_space(1)
        fs2 = S.form_space(1 + H.weight)
        for f in fs1.basis_forms():
            lhs = H * T.apply(f, fs1)
            rhs = T.apply(H * f, fs2)
            assert fs2.coordinates(lhs) == fs2.coordinates(rhs)


def test_hecke_operators_commute():
    S = space(2, 2, "t+1")
    T1 = HeckeEvaluator(S, PolyA.parse("t^2+t+1", 2), 1)
    T2 = HeckeEvaluator(S, PolyA.parse("t^3+t+1", 2), 1)
    for k in (1, 2):
        fs = S.form_space(k)
        for f in fs.basis_forms():
            a = T1.apply(T2.apply(f, fs), fs)
            b = T2.apply(T1.apply(f, fs), fs)
            assert fs.coordinates(a) == fs.coordinates(b)


def test_limit_module():
    F = field(2, 4)
    B = RatFunc.monomial(F, 1, 1)
    for alpha in range(1, 16):
        gamma = 7
        path = DegenerationPath(2, gamma, (RatFunc.const(F, alpha), B))
        assert limit_module(path) == [F.div(gamma, alpha), 0]
    # constant path gives the interior coefficients
    S = space(2, 2, "t+1")
    x = ModuliPoint(F, 2, 1, (3, 5))
    phi, _ = module_from_point(x)
    path = DegenerationPath(2, 1, (RatFunc.const(F, 3), RatFunc.const(F, 5)))
    assert limit_module(path) == list(phi.coeffs)
    assert S.r == 2


def test_component_count():
    assert component_count(PolyA.parse("t", 2)) == 1
    assert component_count(PolyA.parse("t^2+t+1", 2)) == 3
    assert component_count(PolyA.parse("t", 3)) == 1
    with pytest.raises(DrinfeldError):
        component_count(PolyA.parse("1", 2))
