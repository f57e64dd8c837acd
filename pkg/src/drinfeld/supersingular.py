"""Supersingular Drinfeld modules: enumeration, mass, level structures, canonical models."""

from __future__ import annotations

import functools
import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .drinfeld import (
    ConsistencyError,
    DrinfeldError,
    DrinfeldModule,
    ResourceCap,
    automorphisms,
    phi_of,
    torsion_module,
)
from .fields import GF, embed, field
from .linalg import mat_vec, rank
from .polya import PolyA, PrimeP, gl_order, prime_power, zeta_partial
from .skew import SkewPoly, splitting_degree

log = logging.getLogger(__name__)

DEFAULT_CAP = 20_000_000


def mass(r: int, P: PrimeP | PolyA) -> Fraction:
    """Sum of 1/#Aut over supersingular classes: (1/(q-1)) prod_{i<r} |zeta(-i)|."""
    pr = P if isinstance(P, PrimeP) else PrimeP(P)
    out = Fraction(1, pr.q - 1)
    for i in range(1, r):
        out *= zeta_partial(i, pr.q, pr.d)
    return out


def dim_formula(r: int, P: PrimeP | PolyA, n: PolyA) -> int:
    pr = P if isinstance(P, PrimeP) else PrimeP(P)
    val = gl_order(r, n) * Fraction(pr.qv**r - 1, pr.q - 1) * mass(r, pr) * (pr.q - 1)
    if val.denominator != 1:
        raise ConsistencyError(f"non-integral dimension {val}")
    return int(val)


# ---------------------------------------------------------------------------
# isomorphism over the algebraic closure


def _int_kernel_basis(a: Sequence[int]) -> list[list[int]]:
    """Z-basis of {e in Z^n : sum e_i a_i = 0} by unimodular column operations."""
    n = len(a)
    a = list(a)
    U = [[int(i == j) for j in range(n)] for i in range(n)]  # columns track combinations
    while sum(1 for x in a if x) > 1:
        nz = [i for i in range(n) if a[i]]
        piv = min(nz, key=lambda i: abs(a[i]))
        for j in nz:
            if j != piv:
                f = a[j] // a[piv]
                a[j] -= f * a[piv]
                for row in U:
                    row[j] -= f * row[piv]
    return [[U[i][j] for i in range(n)] for j in range(n) if a[j] == 0]


def fbar_isomorphic(phi: DrinfeldModule, psi: DrinfeldModule) -> bool:
    """Whether some c in the algebraic closure has psi = c^{-1} phi c.

    The image of c -> (c^{q^i-1})_i is a connected torus, cut out by the
    characters vanishing on the exponent vector, so it suffices to test those.
    """
    if phi.rank != psi.rank or phi.L != psi.L or phi.q != psi.q:
        raise DrinfeldError("incomparable modules")
    if phi.gamma_t != psi.gamma_t:
        return False
    L = phi.L
    support = []
    for i, (g, h) in enumerate(zip(phi.coeffs, psi.coeffs), 1):
        if (g == 0) != (h == 0):
            return False
        if g:
            support.append((i, L.div(h, g)))
    exps = [phi.q**i - 1 for i, _ in support]
    for e in _int_kernel_basis(exps):
        val = 1
        for (_, ratio), k in zip(support, e):
            val = L.mul(val, L.pow(ratio, k))
        if val != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# enumeration


@dataclass(frozen=True)
class SSClass:
    index: int
    module: DrinfeldModule
    aut_order: int
    aut_m: int

    def to_json(self) -> dict:
        return {"index": self.index, "module": self.module.to_json(), "aut_order": self.aut_order, "aut_m": self.aut_m}


def search_field(r: int, P: PrimeP) -> GF:
    p, e = prime_power(P.q)
    return field(p, e * P.d * r)


def _is_canonical_ss(phi: DrinfeldModule, P: PolyA, dr: int) -> bool:
    fp = phi_of(phi, P)
    return fp.coeffs == (0,) * dr + (1,)


def _scan_chunk(args) -> list[tuple[int, ...]]:
    r, P, q, gr_list = args
    pr = PrimeP(P)
    K = search_field(r, pr)
    gamma = embed(pr.gamma_t, pr.Fv, K)
    dr = pr.d * r
    if K.tables and r > 1:
        return _scan_vectorized(K, q, gamma, P, r, dr, gr_list)
    out = []
    for gr in gr_list:
        for rest in itertools.product(range(K.order), repeat=r - 1):
            phi = DrinfeldModule(K, q, gamma, tuple(rest) + (gr,))
            if _is_canonical_ss(phi, P, dr):
                out.append(tuple(rest) + (gr,))
    return out


def _scan_vectorized(K: GF, q: int, gamma: int, P: PolyA, r: int, dr: int, gr_list) -> list[tuple[int, ...]]:
    """Same filter as the scalar loop, evaluated on all (g_1..g_{r-1}) at once."""
    Fq = P.Fq
    grid = np.array(list(itertools.product(range(K.order), repeat=r - 1)), dtype=np.int64).reshape(-1, r - 1)
    n = grid.shape[0]
    out = []

    def const(c):
        return np.full(n, c, dtype=np.int64)

    def smul(f, g):
        res = [const(0) for _ in range(len(f) + len(g) - 1)]
        for i, a in enumerate(f):
            for j, b in enumerate(g):
                res[i + j] = K.vadd(res[i + j], K.vmul(a, K.vpow(b, q**i)))
        return res

    for gr in gr_list:
        phit = [const(gamma)] + [grid[:, i] for i in range(r - 1)] + [const(gr)]
        acc = [const(0)]
        for c in reversed(P.coeffs):
            acc = smul(acc, phit) if len(acc) > 1 or acc[0].any() else [const(0)]
            acc[0] = K.vadd(acc[0], const(embed(c, Fq, K)))
        mask = acc[dr] == 1
        for k in range(dr):
            mask &= acc[k] == 0
        for row in grid[mask]:
            out.append(tuple(int(x) for x in row) + (gr,))
    return out


def scan_size(r: int, P: PrimeP) -> int:
    K = search_field(r, P)
    return (K.order ** (r - 1)) * ((K.order - 1) // (P.q**r - 1))


def enumerate_ss(r: int, P: PrimeP | PolyA, q: int | None = None, cap: int = DEFAULT_CAP,
                 workers: int = 1) -> list[SSClass]:
    """All supersingular classes over the algebraic closure, as canonical models over F_{q_v^r}.

    Only modules with Frobenius tau^{r deg P} = phi_P are scanned; every class has
    such a model, and completeness is certified against the mass formula.
    """
    pr = P if isinstance(P, PrimeP) else PrimeP(P)
    if q is not None and q != pr.q:
        raise DrinfeldError("q does not match the prime")
    if r < 1:
        raise DrinfeldError("rank must be positive")
    q = pr.q
    K = search_field(r, pr)
    size = scan_size(r, pr)
    if size > cap:
        raise ResourceCap(f"search space {size} exceeds cap {cap}")
    # g_r must have norm 1 down to F_{q^r} for the Frobenius to equal phi_P exactly
    norm_exp = (K.order - 1) // (q**r - 1)
    gr_list = [g for g in range(1, K.order) if K.pow(g, norm_exp) == 1]
    log.info("scanning %d tuples over %s", len(gr_list) * K.order ** (r - 1), K)
    if workers > 1 and len(gr_list) > 1:
        chunks = [gr_list[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(workers) as ex:
            found = [t for part in ex.map(_scan_chunk, [(r, pr.P, q, c) for c in chunks]) for t in part]
    else:
        found = _scan_chunk((r, pr.P, q, gr_list))
    gamma = embed(pr.gamma_t, pr.Fv, K)
    reps: list[DrinfeldModule] = []
    for coeffs in sorted(found, key=lambda c: (K.log(c[-1]), c)):
        phi = DrinfeldModule(K, q, gamma, coeffs)
        if not any(fbar_isomorphic(phi, other) for other in reps):
            reps.append(phi)
    classes = []
    for i, phi in enumerate(reps):
        aut = automorphisms(phi)
        classes.append(SSClass(i, phi, aut.order, aut.m))
    got = sum(Fraction(1, c.aut_order) for c in classes)
    if got != mass(r, pr):
        raise ConsistencyError(f"enumerated mass {got} differs from {mass(r, pr)}")
    return classes


def canonical_model(c: SSClass | DrinfeldModule, P: PrimeP | PolyA) -> DrinfeldModule:
    """The enumerated representative over F_{q_v^r} (Frobenius = phi_P) of the class of c.

    Conjugates by scalars of F_{q_v^r} are canonical too, so the answer is always
    the normalized representative produced by enumeration.
    """
    pr = P if isinstance(P, PrimeP) else PrimeP(P)
    phi = c.module if isinstance(c, SSClass) else c
    r = phi.rank
    K = search_field(r, pr)
    common = _common(phi.L, K)
    target = phi.change_field(common) if phi.L != common else phi
    for other in _class_modules(r, pr):
        cand = other.change_field(common) if common != K else other
        if fbar_isomorphic(cand, target):
            return other
    raise ConsistencyError("no canonical model found")


@functools.lru_cache(maxsize=32)
def _class_modules(r: int, P: PrimeP) -> tuple[DrinfeldModule, ...]:
    return tuple(c.module for c in enumerate_ss(r, P))


def _common(A: GF, B: GF) -> GF:
    return field(A.p, math.lcm(A.n, B.n))


# ---------------------------------------------------------------------------
# level structures


@dataclass(frozen=True)
class LeveledPoint:
    cls: int
    lam: tuple[int, ...]  # images of the standard basis e_1..e_r of (A/n)^r, in M


@dataclass
class SSLeveledSet:
    r: int
    P: PrimeP
    n: PolyA
    M: GF
    classes: list[SSClass]
    modules: list[DrinfeldModule]  # class representatives over M
    points: list[LeveledPoint]

    @property
    def q(self) -> int:
        return self.P.q

    def __len__(self) -> int:
        return len(self.points)

    def module(self, i: int) -> DrinfeldModule:
        return self.modules[self.points[i].cls]

    def to_json(self) -> dict:
        M = self.M
        return {
            "r": self.r,
            "P": str(self.P),
            "n": str(self.n),
            "field": M.descriptor(),
            "classes": [c.to_json() for c in self.classes],
            "points": [{"class": pt.cls, "lambda": [M.to_digits(x) for x in pt.lam]} for pt in self.points],
        }


def _level_bases(tm, r: int, n: PolyA) -> list[list[list[int]]]:
    """All ordered A/n-bases of the torsion module, as F_q-coordinate vectors."""
    Fq = tm.phi.Fq
    dim = tm.dim
    T = tm.t_matrix
    d = n.deg
    vecs = [list(v) for v in itertools.product(range(Fq.order), repeat=dim)]

    def orbit(v):
        out, x = [], v
        for _ in range(d):
            out.append(x)
            x = mat_vec(Fq, T, x)
        return out

    orbits = {tuple(v): orbit(v) for v in vecs}
    bases = []

    def extend(prefix, span_rows):
        if len(prefix) == r:
            bases.append(list(prefix))
            return
        for v in vecs:
            rows = span_rows + orbits[tuple(v)]
            if rank(Fq, rows) == len(rows):
                extend(prefix + [v], rows)

    extend([], [])
    return bases


def leveled_ss_set(r: int, P: PrimeP | PolyA, n: PolyA, classes: list[SSClass] | None = None,
                   cap: int = DEFAULT_CAP) -> SSLeveledSet:
    pr = P if isinstance(P, PrimeP) else PrimeP(P)
    n = n.monic()
    if n.deg < 1:
        raise DrinfeldError("level must be a nonunit")
    if n.gcd(pr.P).deg > 0:
        raise DrinfeldError("level not coprime to P")
    if classes is None:
        classes = enumerate_ss(r, pr, cap=cap)
    K = classes[0].module.L
    e = prime_power(pr.q)[1]
    Ns = [splitting_degree(phi_of(c.module, n)) for c in classes]
    Mdeg = math.lcm(K.n // e, *Ns)
    M = field(K.p, e * Mdeg)
    mods = [c.module.change_field(M) for c in classes]
    points: list[LeveledPoint] = []
    for ci, (c, phi) in enumerate(zip(classes, mods)):
        tm = torsion_module(phi, n, N=Mdeg)
        if tm.dim != r * n.deg:  # pragma: no cover
            raise ConsistencyError("torsion is not free")
        bases = _level_bases(tm, r, n)
        if len(bases) != gl_order(r, n):  # pragma: no cover
            raise ConsistencyError("basis count differs from #GL_r(A/n)")
        Fq = phi.Fq
        aut = automorphisms(phi)
        gen = aut.generator
        auts = [M.pow(gen, k) for k in range(aut.order)]
        seen = set()
        for b in bases:
            lam = tuple(_element(tm, Fq, v) for v in b)
            orbit = [tuple(M.mul(a, x) for x in lam) for a in auts]
            key = min(orbit)
            if key in seen:
                continue
            if len(set(orbit)) != len(orbit):
                raise ConsistencyError("automorphisms do not act freely")
            seen.add(key)
            points.append(LeveledPoint(ci, key))
    points.sort(key=lambda pt: (pt.cls, pt.lam))
    expected = gl_order(r, n) * mass(r, pr)
    if len(points) != expected:
        raise ConsistencyError(f"{len(points)} points, expected {expected}")
    return SSLeveledSet(r, pr, n, M, classes, mods, points)


def _element(tm, Fq: GF, coords: Sequence[int]) -> int:
    M = tm.M
    x = 0
    for c, b in zip(coords, tm.basis):
        if c:
            x = M.add(x, M.mul(embed(c, Fq, M), b))
    return x


def frobenius_is_scalar_power(c: SSClass, P: PrimeP) -> bool:
    """Over F_{q_v^r} the Frobenius tau^{r deg P} equals phi_P."""
    phi = c.module
    return phi_of(phi, P.P) == SkewPoly.tau(phi.L, phi.q, P.d * phi.rank)
