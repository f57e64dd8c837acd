"""The level-(t) moduli space for A = F_q[t] in characteristic v, its universal family and forms.

A point is an injective F_q-linear map lambda: F_q^r -> L, recorded by the images of
the standard basis. The universal module has kernel lambda(F_q^r) and derivative gamma_t.
Forms are polynomials in the reciprocals u_v = 1/lambda(v) of the nonzero values; the
elementary symmetric atom E_i = e_{q^i - 1}({u_v}) is kept unexpanded.
"""

from __future__ import annotations

import functools
import itertools
import logging
import random
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .drinfeld import ConsistencyError, DrinfeldError, DrinfeldModule, FqCoords, height_at_v, phi_of, torsion_module
from .fields import GF, FieldError, embed, field, restrict
from .linalg import rank, solve
from .polya import PolyA, PrimeP, prime_power, unit_count
from .ratfunc import RatFunc
from .skew import SkewError, kernel_poly, splitting_degree

log = logging.getLogger(__name__)


class InterpolationResidual(ArithmeticError):
    """A translated form does not lie in the modeled space of forms."""


# ---------------------------------------------------------------------------
# V_r and points


@functools.lru_cache(maxsize=None)
def nonzero_vectors(q: int, r: int) -> tuple[tuple[int, ...], ...]:
    """V_r^0 in the order v = 1..q^r-1 of base-q digits (digit k is the e_{k+1} coordinate)."""
    out = []
    for v in range(1, q**r):
        digits, x = [], v
        for _ in range(r):
            digits.append(x % q)
            x //= q
        out.append(tuple(digits))
    return tuple(out)


@dataclass(frozen=True)
class ModuliPoint:
    L: GF
    q: int
    gamma_t: int
    lam: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.lam)

    def value(self, v: Sequence[int]) -> int:
        L = self.L
        Fq = field(L.p, prime_power(self.q)[1])
        x = 0
        for c, b in zip(v, self.lam):
            if c:
                x = L.add(x, L.mul(embed(c, Fq, L), b))
        return x

    def values(self) -> list[int]:
        return [self.value(v) for v in nonzero_vectors(self.q, self.r)]

    def is_injective(self) -> bool:
        return all(self.values())

    def u_values(self) -> list[int]:
        vals = self.values()
        if not all(vals):
            raise DrinfeldError("lambda is not injective")
        return [self.L.inv(x) for x in vals]

    def normalized(self) -> ModuliPoint:
        c = self.L.inv(self.lam[0])
        return ModuliPoint(self.L, self.q, self.gamma_t, tuple(self.L.mul(c, x) for x in self.lam))

    def to_json(self) -> dict:
        L = self.L
        return {"field": L.descriptor(), "q": self.q, "gamma_t": L.to_digits(self.gamma_t),
                "lambda": [L.to_digits(x) for x in self.lam]}


def module_from_point(x: ModuliPoint) -> tuple[DrinfeldModule, tuple[int, ...]]:
    """phi_t = gamma_t X prod_{v != 0} (1 - X/lambda(v)), with its level structure."""
    if x.gamma_t == 0:
        raise DrinfeldError("gamma_t = 0: level (t) needs t invertible")
    L = x.L
    u = kernel_poly(L, x.q, list(x.lam))
    if u.deg != x.r:
        raise DrinfeldError("lambda is not injective")
    c = L.div(x.gamma_t, u.coeff(0))
    coeffs = tuple(L.mul(c, a) for a in u.coeffs[1:])
    return DrinfeldModule(L, x.q, x.gamma_t, coeffs), x.lam


def elementary_symmetric(L: GF, vals: Sequence[int], top: int) -> list[int]:
    e = [1] + [0] * top
    for v in vals:
        for m in range(top, 0, -1):
            if e[m - 1]:
                e[m] = L.add(e[m], L.mul(e[m - 1], v))
    return e


# ---------------------------------------------------------------------------
# graded forms

Key = tuple[tuple[int, ...], tuple[int, ...]]  # (exponents of u_v, exponents of E_1..E_r)


@dataclass(frozen=True)
class GradedForm:
    F: GF
    q: int
    r: int
    weight: int
    terms: tuple[tuple[Key, int], ...]

    @staticmethod
    def _key_weight(q: int, key: Key) -> int:
        return sum(key[0]) + sum(e * (q ** (i + 1) - 1) for i, e in enumerate(key[1]))

    @classmethod
    def make(cls, F: GF, q: int, r: int, weight: int, terms: dict[Key, int]) -> GradedForm:
        clean = tuple(sorted((k, c) for k, c in terms.items() if c))
        for k, _ in clean:
            if cls._key_weight(q, k) != weight:
                raise ValueError("inhomogeneous form")
        return cls(F, q, r, weight, clean)

    @classmethod
    def zero(cls, F: GF, q: int, r: int, weight: int) -> GradedForm:
        return cls(F, q, r, weight, ())

    @classmethod
    def constant(cls, F: GF, q: int, r: int, c: int) -> GradedForm:
        n = q**r - 1
        return cls.make(F, q, r, 0, {((0,) * n, (0,) * r): c})

    @classmethod
    def u_monomial(cls, F: GF, q: int, r: int, uexp: Sequence[int], c: int = 1) -> GradedForm:
        return cls.make(F, q, r, sum(uexp), {(tuple(uexp), (0,) * r): c})

    @classmethod
    def e_atom(cls, F: GF, q: int, r: int, i: int, c: int = 1) -> GradedForm:
        n = q**r - 1
        ee = [0] * r
        ee[i - 1] = 1
        return cls.make(F, q, r, q**i - 1, {((0,) * n, tuple(ee)): c})

    def is_zero(self) -> bool:
        return not self.terms

    def _same(self, o: GradedForm) -> None:
        if (self.F, self.q, self.r) != (o.F, o.q, o.r):
            raise ValueError("forms over different spaces")

    def __add__(self, o: GradedForm) -> GradedForm:
        self._same(o)
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        if self.weight != o.weight:
            raise ValueError("adding forms of different weights")
        F = self.F
        d = dict(self.terms)
        for k, c in o.terms:
            d[k] = F.add(d.get(k, 0), c)
        return GradedForm.make(F, self.q, self.r, self.weight, d)

    def __neg__(self) -> GradedForm:
        return self.scale(self.F.neg(1))

    def __sub__(self, o: GradedForm) -> GradedForm:
        return self + (-o)

    def scale(self, c: int) -> GradedForm:
        F = self.F
        return GradedForm.make(F, self.q, self.r, self.weight, {k: F.mul(c, v) for k, v in self.terms})

    def __mul__(self, o: GradedForm) -> GradedForm:
        self._same(o)
        F = self.F
        d: dict[Key, int] = {}
        for (ka, ca) in self.terms:
            for (kb, cb) in o.terms:
                k = (tuple(a + b for a, b in zip(ka[0], kb[0])), tuple(a + b for a, b in zip(ka[1], kb[1])))
                d[k] = F.add(d.get(k, 0), F.mul(ca, cb))
        return GradedForm.make(F, self.q, self.r, self.weight + o.weight, d)

    def __pow__(self, e: int) -> GradedForm:
        out = GradedForm.constant(self.F, self.q, self.r, 1)
        for _ in range(e):
            out = out * self
        return out

    def evaluate(self, x: ModuliPoint, data: PointData | None = None) -> int:
        data = data or PointData.of(x, self.r)
        L = x.L
        total = 0
        for (ue, ee), c in self.terms:
            val = embed(c, self.F, L)
            for i, a in enumerate(ue):
                if a:
                    val = L.mul(val, L.pow(data.u[i], a))
            for i, a in enumerate(ee):
                if a:
                    val = L.mul(val, L.pow(data.E[i + 1], a))
            total = L.add(total, val)
        return total

    def to_json(self) -> dict:
        F = self.F
        return {"weight": self.weight, "field": F.descriptor(),
                "terms": [{"u": list(k[0]), "E": list(k[1]), "coeff": F.to_digits(c)} for k, c in self.terms]}


@dataclass
class PointData:
    u: list[int]
    E: dict[int, int]

    @classmethod
    def of(cls, x: ModuliPoint, r: int | None = None) -> PointData:
        u = x.u_values()
        r = r or x.r
        e = elementary_symmetric(x.L, u, x.q**r - 1)
        return cls(u, {i: e[x.q**i - 1] for i in range(0, r + 1)})


# ---------------------------------------------------------------------------
# the moduli space in characteristic v


def _coords_over(F: GF, L: GF) -> FqCoords:
    return _coords_cache(F.p, F.n, L.n)


@functools.lru_cache(maxsize=None)
def _coords_cache(p: int, fn: int, ln: int) -> FqCoords:
    F, L = field(p, fn), field(p, ln)
    m = L.n // F.n
    g = L.gen
    return FqCoords(L, F.order, [L.pow(g, i) for i in range(m)])


class ModuliSpace:
    """Level-(t) moduli of rank r over F_v = A/P (P coprime to t)."""

    def __init__(self, q: int, r: int, P: PrimeP | PolyA):
        self.q, self.r = q, r
        self.P = P if isinstance(P, PrimeP) else PrimeP(P)
        if self.P.q != q:
            raise DrinfeldError("P is over a different constant field")
        if self.P.P == PolyA.t(q):
            raise DrinfeldError("P must be coprime to t")
        if r < 1:
            raise DrinfeldError("rank must be positive")
        self.F = self.P.Fv
        self.gamma = self.P.gamma_t
        self.vr0 = nonzero_vectors(q, r)
        self.n_u = q**r - 1

    def __repr__(self) -> str:
        return f"ModuliSpace(q={self.q}, r={self.r}, P={self.P})"

    # -- points ---------------------------------------------------------------
    def point_field(self, m: int) -> GF:
        """F_{q_v^m}."""
        return field(self.F.p, self.F.n * m)

    def point(self, L: GF, lam: Sequence[int]) -> ModuliPoint:
        if L.n % self.F.n:
            raise DrinfeldError(f"{L} does not contain F_v")
        if len(lam) != self.r:
            raise DrinfeldError("wrong number of coordinates")
        x = ModuliPoint(L, self.q, embed(self.gamma, self.F, L), tuple(lam))
        if not x.is_injective():
            raise DrinfeldError("lambda is not injective")
        return x

    def random_point(self, rng: random.Random, L: GF, normalized: bool = False) -> ModuliPoint:
        while True:
            lam = [1 if (normalized and i == 0) else L.random(rng, nonzero=True) for i in range(self.r)]
            x = ModuliPoint(L, self.q, embed(self.gamma, self.F, L), tuple(lam))
            if x.is_injective():
                return x

    # -- forms ----------------------------------------------------------------
    def coefficient_form(self, i: int) -> GradedForm:
        if not 1 <= i <= self.r:
            raise DrinfeldError("coefficient index out of range")
        return GradedForm.e_atom(self.F, self.q, self.r, i, self.gamma)

    def u_form(self, v_index: int) -> GradedForm:
        e = [0] * self.n_u
        e[v_index] = 1
        return GradedForm.u_monomial(self.F, self.q, self.r, e)

    def hasse_invariant(self, a: PolyA, i: int) -> GradedForm:
        if a.valuation(self.P.P) != 1:
            raise DrinfeldError("a must have valuation 1 at P")
        if not 0 <= i <= self.r - 1:
            raise DrinfeldError("Hasse index out of range")
        d = self.P.d
        weight = self.q ** (i * d) - 1
        coeff = _symbolic_phi_a(self.q, self.r, self.P.P, a)[i * d]
        terms = {((0,) * self.n_u, ge): c for ge, c in coeff.items()}
        return GradedForm.make(self.F, self.q, self.r, weight, terms)

    def stratum_of_point(self, x: ModuliPoint, a: PolyA | None = None) -> int:
        a = a or self.P.P
        data = PointData.of(x, self.r)
        for h in range(1, self.r):
            if self.hasse_invariant(a, h).evaluate(x, data) != 0:
                return h
        return self.r

    def height(self, x: ModuliPoint) -> int:
        return height_at_v(module_from_point(x)[0], self.P)

    # -- spaces of forms ------------------------------------------------------
    def monomials(self, k: int) -> list[tuple[int, ...]]:
        out = []
        for combo in itertools.combinations_with_replacement(range(self.n_u), k):
            e = [0] * self.n_u
            for c in combo:
                e[c] += 1
            out.append(tuple(e))
        return sorted(out, reverse=True)

    def form_space(self, k: int, seed: int = 0) -> FormSpace:
        return _form_space(self.q, self.r, self.P.P, k, seed)


def _smul_symbolic(F: GF, q: int, f: list[dict], g: list[dict], top: int) -> list[dict]:
    """Skew product over F[g_1..g_r]: tau acts by Frobenius on F and multiplies exponents by q."""
    out: list[dict] = [dict() for _ in range(min(len(f) + len(g) - 1, top + 1))]
    e = prime_power(q)[1]
    for i, A in enumerate(f):
        if not A or i > top:
            continue
        qi = q**i
        for j, B in enumerate(g):
            if i + j > top or not B:
                continue
            tgt = out[i + j]
            for ka, ca in A.items():
                for kb, cb in B.items():
                    k = tuple(x + qi * y for x, y in zip(ka, kb))
                    val = F.mul(ca, F.frob(cb, e * i))
                    tgt[k] = F.add(tgt.get(k, 0), val)
                    if tgt[k] == 0:
                        del tgt[k]
    return out


@functools.lru_cache(maxsize=None)
def _symbolic_phi_a(q: int, r: int, P: PolyA, a: PolyA) -> tuple[dict, ...]:
    """phi_a in characteristic P, truncated at tau^{(r-1) deg P}; coefficients in F_v[g]."""
    pr = PrimeP(P)
    F, gamma = pr.Fv, pr.gamma_t
    top = (r - 1) * pr.d
    Fq = P.Fq
    zero = (0,) * r
    phit: list[dict] = [{zero: gamma}]
    for i in range(1, r + 1):
        k = [0] * r
        k[i - 1] = 1
        phit.append({tuple(k): 1})
    phit = phit[: top + 1]
    acc: list[dict] = [dict()]
    for c in reversed(a.coeffs):
        acc = _smul_symbolic(F, q, acc, phit, top) if any(acc) else [dict()]
        cc = embed(c, Fq, F)
        if cc:
            acc[0] = dict(acc[0])
            acc[0][zero] = F.add(acc[0].get(zero, 0), cc)
            if acc[0][zero] == 0:
                del acc[0][zero]
    acc += [dict() for _ in range(top + 1 - len(acc))]
    # substitute g_i = gamma * E_i
    out = []
    for coeff in acc:
        new = {}
        for k, c in coeff.items():
            new[k] = F.mul(c, F.pow(gamma, sum(k)))
        out.append(new)
    return tuple(out)


# ---------------------------------------------------------------------------
# interpolation


def _f_coordinates(F: GF, L: GF, y: int) -> list[int]:
    c = _coords_over(F, L).coords(y)
    if c is None:  # pragma: no cover
        raise FieldError("coordinate failure")
    return c


def _monomial_value(L: GF, u: Sequence[int], e: Sequence[int]) -> int:
    v = 1
    for a, b in zip(u, e):
        if b:
            v = L.mul(v, L.pow(a, b))
    return v


class FormSpace:
    """Basis of the degree-k span of the u_v, found by evaluation rank at seeded random points."""

    def __init__(self, space: ModuliSpace, k: int, seed: int = 0):
        self.space, self.k, self.seed = space, k, seed
        self.monomials = space.monomials(k)
        F = space.F
        m = 1
        while F.order**m < 256:
            m += 1
        self.L = space.point_field(m)
        ranks = []
        npts = len(self.monomials) + 2
        attempt = 0
        while True:
            rng = random.Random(f"forms-{seed}-{k}-{attempt}")
            pts = [space.random_point(rng, self.L, normalized=True) for _ in range(npts)]
            basis, rows = self._greedy(pts)
            ranks.append(len(basis))
            if len(ranks) >= 2 and ranks[-1] == ranks[-2]:
                break
            attempt += 1
            npts *= 2
        self.points = pts
        self.basis = basis
        self._rows = rows

    def _greedy(self, pts):
        space = self.space
        F, L = space.F, self.L
        datas = [x.u_values() for x in pts]
        cols = []
        for mono in self.monomials:
            col = []
            for u in datas:
                col.extend(_f_coordinates(F, L, _monomial_value(L, u, mono)))
            cols.append(col)
        basis, chosen = [], []
        for mono, col in zip(self.monomials, cols):
            if rank(F, chosen + [col]) > len(chosen):
                chosen.append(col)
                basis.append(mono)
        return basis, chosen

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_forms(self) -> list[GradedForm]:
        s = self.space
        return [GradedForm.u_monomial(s.F, s.q, s.r, e) for e in self.basis]

    def coordinates(self, f: GradedForm) -> list[int]:
        """Coordinates of f in the basis (exact; InterpolationResidual when f is outside the span)."""
        if f.weight != self.k and not f.is_zero():
            raise ValueError("weight mismatch")
        vals = [f.evaluate(x) for x in self.points]
        return self.solve_values(self.points, vals)

    def solve_values(self, pts: Sequence[ModuliPoint], vals: Sequence[int]) -> list[int]:
        return interpolate(self.space, self.basis, pts, vals)

    def form(self, coords: Sequence[int]) -> GradedForm:
        s = self.space
        out = GradedForm.zero(s.F, s.q, s.r, self.k)
        for c, e in zip(coords, self.basis):
            if c:
                out = out + GradedForm.u_monomial(s.F, s.q, s.r, e, c)
        return out


@functools.lru_cache(maxsize=None)
def _form_space(q: int, r: int, P: PolyA, k: int, seed: int) -> FormSpace:
    return FormSpace(ModuliSpace(q, r, P), k, seed)


def interpolate(space: ModuliSpace, basis: Sequence[tuple[int, ...]], pts: Sequence[ModuliPoint],
                vals: Sequence[int]) -> list[int]:
    F = space.F
    A: list[list[int]] = []
    b: list[list[int]] = []
    for x, y in zip(pts, vals):
        L = x.L
        u = x.u_values()
        cols = [_f_coordinates(F, L, _monomial_value(L, u, e)) for e in basis]
        rhs = _f_coordinates(F, L, y)
        for i in range(len(rhs)):
            A.append([c[i] for c in cols])
            b.append([rhs[i]])
    if rank(F, A) < len(basis):
        raise InterpolationResidual("sample points do not separate the basis")
    X = solve(F, A, b)
    if X is None:
        raise InterpolationResidual("values are not those of a form in the span")
    return [row[0] for row in X]


# ---------------------------------------------------------------------------
# Hecke operators by evaluation and interpolation


@dataclass
class Translate:
    du: int  # derivative of u_C, in K
    u_vals: list[int]  # u-coordinates of the translated point, in K
    K: GF


@dataclass
class HeckePoint:
    x: ModuliPoint
    K: GF
    translates: list[Translate]


class HeckeEvaluator:
    """T_{w,j} on forms: (T f)(x) = sum_C (du_C)^k f(x_C) over free rank-j A/w-submodules C of phi_x[w]."""

    def __init__(self, space: ModuliSpace, w: PrimeP | PolyA, j: int, max_degree: int | None = None, seed: int = 0):
        self.space = space
        self.w = w if isinstance(w, PrimeP) else PrimeP(w)
        if self.w.q != space.q:
            raise DrinfeldError("w over a different constant field")
        if self.w.P == PolyA.t(space.q) or self.w.P == space.P.P:
            raise DrinfeldError("w must be coprime to t and P")
        if not 1 <= j <= space.r:
            raise DrinfeldError("j out of range")
        self.j = j
        self.seed = seed
        p = space.F.p
        self.max_degree = max_degree or (96 if p == 2 else 24)
        self._cache: dict[tuple, HeckePoint] = {}
        self._sample: list[HeckePoint] = []
        self._sample_gen = self._sample_points()

    def hecke_point(self, x: ModuliPoint, N_total: int | None = None) -> HeckePoint:
        key = (x.L.n, x.lam)
        if key in self._cache:
            return self._cache[key]
        s = self.space
        phi, _ = module_from_point(x)
        if N_total is None:
            N_total = splitting_degree(phi_of(phi, self.w.P), cap=10**6)
        tm = torsion_module(phi, self.w.P, N=N_total)
        K = tm.M
        lamK = [embed(a, x.L, K) for a in x.lam]
        trans = []
        for C in tm.submodules(self.j):
            u = kernel_poly(K, s.q, C)
            lamC = ModuliPoint(K, s.q, embed(x.gamma_t, x.L, K), tuple(u(a) for a in lamK))
            trans.append(Translate(u.coeff(0), lamC.u_values(), K))
        hp = HeckePoint(x, K, trans)
        self._cache[key] = hp
        return hp

    def _sample_points(self):
        """Normalized points whose w-torsion splits over a small field, in a seeded order."""
        s = self.space
        d = s.P.d
        e = prime_power(s.q)[1]
        for mult in itertools.count(1):
            N = d * mult
            if N > self.max_degree:
                return
            L = field(s.F.p, e * N)
            rng = random.Random(f"hecke-{self.seed}-{self.w}-{N}")
            cands = list(itertools.product(range(L.order), repeat=s.r - 1)) if L.order ** (s.r - 1) <= 4096 else None
            if cands is not None:
                rng.shuffle(cands)
            else:
                cands = (tuple(L.random(rng) for _ in range(s.r - 1)) for _ in range(4096))
            gamma = embed(s.gamma, s.F, L)
            for rest in cands:
                x = ModuliPoint(L, s.q, gamma, (1,) + tuple(rest))
                if not x.is_injective():
                    continue
                phi, _ = module_from_point(x)
                try:
                    Nt = splitting_degree(phi_of(phi, self.w.P), cap=self.max_degree)
                except SkewError:
                    continue
                yield self.hecke_point(x, Nt)

    def sample(self, dim: int, basis: Sequence[tuple[int, ...]]) -> list[HeckePoint]:
        """Enough sample points to determine and over-determine forms of the given basis."""
        s = self.space
        F = s.F

        def enough() -> bool:
            rows = sum((hp.x.L.n // F.n) for hp in self._sample)
            if rows < 2 * dim + 4:
                return False
            A = []
            for hp in self._sample:
                L = hp.x.L
                u = hp.x.u_values()
                cols = [_f_coordinates(F, L, _monomial_value(L, u, e)) for e in basis]
                for i in range(L.n // F.n):
                    A.append([c[i] for c in cols])
            return rank(F, A) == dim

        while not enough():
            try:
                self._sample.append(next(self._sample_gen))
            except StopIteration:
                raise InterpolationResidual("not enough sample points with small splitting fields") from None
        return self._sample

    def value(self, hp: HeckePoint, k: int, f_eval: Callable[[Translate], int]) -> int:
        K = hp.K
        tot = 0
        for tr in hp.translates:
            tot = K.add(tot, K.mul(K.pow(tr.du, k), f_eval(tr)))
        try:
            return restrict(tot, hp.x.L, K)
        except FieldError as exc:  # pragma: no cover
            raise ConsistencyError("Hecke value not rational over the point field") from exc

    def apply(self, f: GradedForm, fs: FormSpace | None = None) -> GradedForm:
        s = self.space
        k = f.weight
        fs = fs or s.form_space(k)
        pts = self.sample(fs.dim, fs.basis)
        vals = []
        for hp in pts:
            K = hp.K

            vals.append(self.value(hp, k, lambda tr, K=K: _eval_with_u(f, K, tr.u_vals, s)))
        coords = interpolate(s, fs.basis, [hp.x for hp in pts], vals)
        return fs.form(coords)

    def matrix(self, k: int, fs: FormSpace | None = None) -> list[list[int]]:
        """Matrix (columns = images of basis monomials) of T_{w,j} on the weight-k span."""
        s = self.space
        fs = fs or s.form_space(k)
        pts = self.sample(fs.dim, fs.basis)
        cols = []
        for e in fs.basis:
            vals = []
            for hp in pts:
                K = hp.K
                vals.append(self.value(hp, k, lambda tr, e=e, K=K: _monomial_value(K, tr.u_vals, e)))
            cols.append(interpolate(s, fs.basis, [hp.x for hp in pts], vals))
        return [list(r) for r in zip(*cols)] if cols else []


def _eval_with_u(f: GradedForm, K: GF, u: Sequence[int], space: ModuliSpace) -> int:
    e = elementary_symmetric(K, u, space.n_u) if any(any(k[1]) for k, _ in f.terms) else None
    tot = 0
    for (ue, ee), c in f.terms:
        val = embed(c, f.F, K)
        val = K.mul(val, _monomial_value(K, u, ue))
        for i, a in enumerate(ee):
            if a:
                val = K.mul(val, K.pow(e[space.q ** (i + 1) - 1], a))
        tot = K.add(tot, val)
    return tot


def hecke_on_form(space: ModuliSpace, f: GradedForm, w: PrimeP | PolyA, j: int, seed: int = 0) -> GradedForm:
    return HeckeEvaluator(space, w, j, seed=seed).apply(f)


# ---------------------------------------------------------------------------
# supersingular points at level (t)


def ss_search_field(space: ModuliSpace) -> GF:
    P = space.P
    c0 = P.P.coeffs[0]
    Fq = P.P.Fq
    o = 1
    x = c0
    while x != 1:
        x = Fq.mul(x, c0)
        o += 1
    e = prime_power(space.q)[1]
    return field(Fq.p, e * P.d * space.r * o)


def ss_points_level_t(space: ModuliSpace, cross_check: bool = True) -> list[ModuliPoint]:
    """All normalized points (lambda(e_1) = 1) whose module is supersingular."""
    S = ss_search_field(space)
    q, r = space.q, space.r
    gamma = embed(space.gamma, space.F, S)
    hasse = [space.hasse_invariant(space.P.P, h) for h in range(1, r)]
    found: list[ModuliPoint] = []
    if r == 1:
        cands = [()]
    elif S.tables:
        cands = _ss_candidates_vectorized(space, S, gamma, hasse)
    else:
        cands = list(itertools.product(range(S.order), repeat=r - 1))
    for rest in cands:
        x = ModuliPoint(S, q, gamma, (1,) + tuple(rest))
        if not x.is_injective():
            continue
        if space.stratum_of_point(x) == r:
            found.append(x)
    if cross_check:
        for x in found:
            if space.height(x) != r:
                raise ConsistencyError("Hasse invariants and height disagree")
    return found


def _ss_candidates_vectorized(space: ModuliSpace, S: GF, gamma: int, hasse: list[GradedForm]) -> list[tuple[int, ...]]:
    q, r = space.q, space.r
    Fq = field(S.p, prime_power(q)[1])
    grid = np.array(list(itertools.product(range(S.order), repeat=r - 1)), dtype=np.int64).reshape(-1, r - 1)
    n = grid.shape[0]
    lam = [np.ones(n, dtype=np.int64)] + [grid[:, i] for i in range(r - 1)]
    # injectivity
    ok = np.ones(n, dtype=bool)
    for v in nonzero_vectors(q, r):
        acc = np.zeros(n, dtype=np.int64)
        for c, col in zip(v, lam):
            if c:
                acc = S.vadd(acc, S.vmul(np.full(n, embed(c, Fq, S), dtype=np.int64), col))
        ok &= acc != 0
    # kernel polynomial u, then phi_t = (gamma / du) u
    u = [np.ones(n, dtype=np.int64)]
    for col in lam:
        val = np.zeros(n, dtype=np.int64)
        xp = col
        for i, c in enumerate(u):
            if i:
                xp = S.vpow(xp, q)
            val = S.vadd(val, S.vmul(c, xp))
        a = S.vpow(val, q - 1)
        na = S.vmul(np.full(n, S.neg(1), dtype=np.int64), a)
        new = [S.vmul(na, u[0])]
        for i in range(1, len(u)):
            new.append(S.vadd(S.vpow(u[i - 1], q), S.vmul(na, u[i])))
        new.append(S.vpow(u[-1], q))
        u = new
    safe = np.where(ok, u[0], 1)
    scale = S.vmul(np.full(n, gamma, dtype=np.int64), S.vinv(safe))
    g = [S.vmul(scale, u[i]) for i in range(1, r + 1)]
    # E_i = g_i / gamma
    ginv = S.inv(gamma)
    E = [S.vmul(np.full(n, ginv, dtype=np.int64), gi) for gi in g]
    mask = ok.copy()
    for H in hasse:
        tot = np.zeros(n, dtype=np.int64)
        for (ue, ee), c in H.terms:
            term = np.full(n, embed(c, space.F, S), dtype=np.int64)
            for i, a in enumerate(ee):
                if a:
                    term = S.vmul(term, S.vpow(E[i], a))
            tot = S.vadd(tot, term)
        mask &= tot == 0
    return [tuple(int(v) for v in row) for row in grid[mask]]


# ---------------------------------------------------------------------------
# boundary and components


@dataclass(frozen=True)
class DegenerationPath:
    """lambda_i(B) as rational functions over F_{q^N}; the limit is taken as B -> infinity."""

    q: int
    gamma: int
    lam: tuple[RatFunc, ...]

    @property
    def F(self) -> GF:
        return self.lam[0].F


def limit_module(path: DegenerationPath) -> list[int]:
    """Limits of the coefficient forms g_1..g_r along the path."""
    F = path.F
    q, r = path.q, len(path.lam)
    Fq = field(F.p, prime_power(q)[1])
    us = []
    for v in nonzero_vectors(q, r):
        val = RatFunc.const(F, 0)
        for c, lf in zip(v, path.lam):
            if c:
                val = val + RatFunc.const(F, embed(c, Fq, F)) * lf
        if val.is_zero():
            raise DrinfeldError("path is not injective")
        us.append(val.inv())
    top = q**r - 1
    e = [RatFunc.const(F, 1)] + [RatFunc.const(F, 0)] * top
    for u in us:
        for m in range(top, 0, -1):
            e[m] = e[m] + e[m - 1] * u
    out = []
    for i in range(1, r + 1):
        gi = e[q**i - 1] * RatFunc.const(F, path.gamma)
        try:
            out.append(gi.limit_infinity())
        except ArithmeticError as exc:
            raise DrinfeldError(f"coefficient {i} diverges along the path") from exc
    if not any(out):
        raise DrinfeldError("all limit coefficients vanish")
    return out


def component_count(n: PolyA) -> int:
    if n.is_zero() or n.deg == 0:
        raise DrinfeldError("level must be a nonzero nonunit")
    return unit_count(n) // (n.q - 1)
