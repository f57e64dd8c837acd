"""Brandt (Hecke) matrices on leveled supersingular sets, eigensystems and the moduli comparison."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .drinfeld import ConsistencyError, DrinfeldError, DrinfeldModule, phi_of, torsion_module
from .eigen import canonical_system, charpoly_multiset, simultaneous_eigensystems
from .fields import GF, FieldError, embed, restrict
from .linalg import mat_vec
from .moduli import HeckeEvaluator, ModuliPoint, ModuliSpace
from .polya import PolyA, PrimeP, gaussian_binomial
from .skew import kernel_poly, skew_right_divmod, splitting_degree
from .supersingular import LeveledPoint, SSLeveledSet

log = logging.getLogger(__name__)


def _label(w: PrimeP, j: int) -> tuple[str, int]:
    return (str(w), j)


@dataclass
class BrandtMatrix:
    w: PrimeP
    j: int
    k: int
    M: GF
    entries: list[list[int]]
    scalars: list[int] = dc_field(default_factory=list)  # representative rescaling used (1 = canonical)

    @property
    def size(self) -> int:
        return len(self.entries)

    def to_json(self) -> dict:
        M = self.M
        return {"w": str(self.w), "j": self.j, "k": self.k, "field": M.descriptor(),
                "matrix": [[M.to_digits(a) for a in row] for row in self.entries]}


def rescale(S: SSLeveledSet, scalars: Sequence[int]) -> SSLeveledSet:
    """Replace each point (phi, lambda) by the isomorphic (c phi c^{-1}, c lambda)."""
    M = S.M
    mods, pts = [], []
    for i, (pt, c) in enumerate(zip(S.points, scalars)):
        phi = S.modules[pt.cls]
        # lambda' = c lambda is a level structure on psi = c phi c^{-1}: psi_i = c^{1-q^i} g_i
        ci = M.inv(c)
        psi = phi.conjugate(ci)
        mods.append(psi)
        pts.append(LeveledPoint(i, tuple(M.mul(c, x) for x in pt.lam)))
    return SSLeveledSet(S.r, S.P, S.n, M, S.classes, mods, pts)


def _point_key(M: GF, phi: DrinfeldModule, lam: Sequence[int]) -> tuple:
    c0 = M.inv(lam[0])
    return (tuple(M.mul(x, c0) for x in lam),
            tuple(M.mul(g, M.pow(c0, 1 - phi.q ** (i + 1))) for i, g in enumerate(phi.coeffs)))


def _pow_signed(M: GF, a: int, e: int) -> int:
    return M.pow(a, e) if e >= 0 else M.pow(M.inv(a), -e)


def brandt_matrix(S: SSLeveledSet, w: PrimeP | PolyA, j: int, k: int) -> BrandtMatrix:
    """entry (i, target) accumulates (c * du_C)^k over free rank-j submodules C of phi_i[w]."""
    wp = w if isinstance(w, PrimeP) else PrimeP(w)
    if wp.q != S.q:
        raise DrinfeldError("w over a different constant field")
    if wp.P.gcd(S.P.P).deg > 0 or wp.P.gcd(S.n).deg > 0:
        raise DrinfeldError("w must be coprime to P and the level")
    if not 1 <= j <= S.r:
        raise DrinfeldError("j out of range")
    M = S.M
    npts = len(S.points)
    mods = [S.module(i) for i in range(npts)]
    entries = [[0] * npts for _ in range(npts)]
    keys_M = {_point_key(M, mods[i], S.points[i].lam): i for i in range(npts)}
    cache_keys: dict[int, dict] = {}
    n_sub = gaussian_binomial(S.r, j, wp.qv)
    for i in range(npts):
        phi = mods[i]
        Nt = splitting_degree(phi_of(phi, wp.P))
        tm = torsion_module(phi, wp.P, N=Nt)
        K = tm.M
        if K.n not in cache_keys:
            cache_keys[K.n] = {tuple(tuple(embed(x, M, K) for x in part) for part in key): idx
                               for key, idx in keys_M.items()}
        lookup = cache_keys[K.n]
        phiK = tm.phi
        lamK = [embed(x, M, K) for x in S.points[i].lam]
        acc = [0] * npts
        subs = tm.submodules(j)
        if len(subs) != n_sub:  # pragma: no cover
            raise ConsistencyError("submodule count mismatch")
        for C in subs:
            u = kernel_poly(K, S.q, C)
            quo, rem = skew_right_divmod(u * phiK.phi_t, u)
            if not rem.is_zero():  # pragma: no cover
                raise ConsistencyError("kernel is not A-stable")
            psi = DrinfeldModule(K, S.q, quo.coeff(0), quo.coeffs[1:])
            lamC = [u(x) for x in lamK]
            key = _point_key(K, psi, lamC)
            tgt = lookup.get(key)
            if tgt is None:
                raise ConsistencyError("quotient does not match any point")
            c = K.div(embed(S.points[tgt].lam[0], M, K), lamC[0])
            acc[tgt] = K.add(acc[tgt], _pow_signed(K, K.mul(c, u.coeff(0)), k))
        for tgt, val in enumerate(acc):
            try:
                entries[i][tgt] = restrict(val, M, K)
            except FieldError as exc:  # pragma: no cover
                raise ConsistencyError("Brandt entry not rational over the point field") from exc
    return BrandtMatrix(wp, j, k, M, entries)


def row_sums(B: BrandtMatrix) -> list[int]:
    M = B.M
    return [M.sum(row) for row in B.entries]


# ---------------------------------------------------------------------------
# eigensystems


@dataclass
class EigenReport:
    labels: list[tuple[str, int]]
    systems: dict[tuple, dict]  # canonical system -> {"weights": [...], "dims": {k: dim}}

    def to_json(self) -> list[dict]:
        out = []
        for sysv, info in sorted(self.systems.items(), key=lambda kv: _sys_sort(kv[0])):
            out.append({
                "weights": sorted(info["weights"]),
                "entries": [{"w": lab[0], "j": lab[1], "eigenvalue": val.to_json()} for lab, val in sysv],
            })
        return out


def _sys_sort(sysv: tuple) -> tuple:
    return tuple((lab, v.n, v.value) for lab, v in sysv)


def operator_labels(ws: Sequence[PrimeP], r: int) -> list[tuple[str, int]]:
    return [_label(w, j) for w in ws for j in range(1, r + 1)]


def _systems_from_ops(F: GF, ops: dict, n: int) -> list[tuple[tuple, int]]:
    if not ops:
        return [((), n)] if n else []
    M, syss = simultaneous_eigensystems(F, ops)
    return [(canonical_system(M, s), d) for s, d in syss]


def eigensystems(S: SSLeveledSet, ws: Sequence[PrimeP | PolyA], k_range: Sequence[int],
                 js: Sequence[int] | None = None) -> EigenReport:
    wps = [w if isinstance(w, PrimeP) else PrimeP(w) for w in ws]
    if len({str(w) for w in wps}) != len(wps):
        raise DrinfeldError("repeated primes")
    js = list(js) if js else list(range(1, S.r + 1))
    labels = [_label(w, j) for w in wps for j in js]
    report = EigenReport(labels, {})
    for k in k_range:
        ops = {_label(w, j): brandt_matrix(S, w, j, k).entries for w in wps for j in js}
        for sysv, d in _systems_from_ops(S.M, ops, len(S.points)):
            info = report.systems.setdefault(sysv, {"weights": set(), "dims": {}})
            info["weights"].add(k)
            info["dims"][k] = d
    return report


def verify_periodicity(S: SSLeveledSet, ws: Sequence[PrimeP | PolyA], k: int,
                       js: Sequence[int] | None = None) -> bool:
    period = S.P.qv**S.r - 1
    js = list(js) if js else list(range(1, S.r + 1))
    for w in ws:
        for j in js:
            a = brandt_matrix(S, w, j, k)
            b = brandt_matrix(S, w, j, k + period)
            if charpoly_multiset(S.M, a.entries) != charpoly_multiset(S.M, b.entries):
                return False
    return True


def randomized_charpolys(S: SSLeveledSet, w, j: int, k: int, seed: int) -> tuple:
    rng = random.Random(f"brandt-{seed}")
    scal = [S.M.random(rng, nonzero=True) for _ in S.points]
    B = brandt_matrix(rescale(S, scal), w, j, k)
    return charpoly_multiset(S.M, B.entries)


# ---------------------------------------------------------------------------
# moduli side and comparison


def moduli_eigensystems(space: ModuliSpace, ws: Sequence[PrimeP | PolyA], k_range: Sequence[int],
                        js: Sequence[int] | None = None, seed: int = 0) -> tuple[EigenReport, dict]:
    wps = [w if isinstance(w, PrimeP) else PrimeP(w) for w in ws]
    js = list(js) if js else list(range(1, space.r + 1))
    labels = [_label(w, j) for w in wps for j in js]
    evals = {(str(w), j): HeckeEvaluator(space, w, j, seed=seed) for w in wps for j in js}
    report = EigenReport(labels, {})
    dims = {}
    for k in k_range:
        fs = space.form_space(k, seed)
        dims[k] = fs.dim
        ops = {lab: ev.matrix(k, fs) for lab, ev in evals.items()}
        for sysv, d in _systems_from_ops(space.F, ops, fs.dim):
            info = report.systems.setdefault(sysv, {"weights": set(), "dims": {}})
            info["weights"].add(k)
            info["dims"][k] = d
    return report, dims


def jl_compare(moduli: EigenReport, brandt: EigenReport) -> dict:
    if sorted(moduli.labels) != sorted(brandt.labels):
        raise DrinfeldError("the two sides use different operator lists")
    ms, bs = set(moduli.systems), set(brandt.systems)
    only_b = sorted(bs - ms, key=_sys_sort)
    only_m = sorted(ms - bs, key=_sys_sort)

    def show(sysv, rep):
        return {"weights": sorted(rep.systems[sysv]["weights"]),
                "entries": [{"w": lab[0], "j": lab[1], "eigenvalue": v.to_json()} for lab, v in sysv]}

    return {
        "brandt_count": len(bs),
        "moduli_count": len(ms),
        "brandt_subset_of_moduli": not only_b,
        "moduli_subset_of_brandt": not only_m,
        "coincide": not only_b and not only_m,
        "brandt_only": [show(s, brandt) for s in only_b],
        "moduli_only": [show(s, moduli) for s in only_m],
    }


def supersingular_points_as_moduli(S: SSLeveledSet, space: ModuliSpace) -> list[ModuliPoint]:
    if S.n != PolyA.t(S.q):
        raise DrinfeldError("restriction needs level (t)")
    M = S.M
    gamma = embed(space.gamma, space.F, M)
    return [ModuliPoint(M, S.q, gamma, pt.lam) for pt in S.points]


def restriction_equivariance(space: ModuliSpace, S: SSLeveledSet, w: PrimeP | PolyA, j: int, k: int,
                             seed: int = 0) -> bool:
    """(T f)|_ss = B (f|_ss) for every basis form f of weight k."""
    ev = HeckeEvaluator(space, w, j, seed=seed)
    fs = space.form_space(k, seed)
    B = brandt_matrix(S, w, j, k)
    pts = supersingular_points_as_moduli(S, space)
    M = S.M
    for f in fs.basis_forms():
        Tf = ev.apply(f, fs)
        lhs = [Tf.evaluate(x) for x in pts]
        rhs = mat_vec(M, B.entries, [f.evaluate(x) for x in pts])
        if lhs != rhs:
            return False
    return True
