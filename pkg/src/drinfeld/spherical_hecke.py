"""Spherical Hecke algebra of GL_r over F_{q_w}((z)) with K = GL_r(F_{q_w}[[z]]).

Matrices have entries in F_{q_w}[z] (coefficient lists, low degree first).
"""

from __future__ import annotations

import functools
import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .fields import GF, field, padd, pmul, psub, ptrim
from .linalg import rank
from .polya import prime_power

PMat = tuple[tuple[tuple[int, ...], ...], ...]


def _check_mu(mu: Sequence[int]) -> tuple[int, ...]:
    mu = tuple(int(m) for m in mu)
    if any(a < b for a, b in zip(mu, mu[1:])):
        raise ValueError(f"cocharacter {mu} is not weakly decreasing")
    return mu


@dataclass(frozen=True, order=True)
class DoubleCoset:
    mu: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mu", _check_mu(self.mu))

    @property
    def r(self) -> int:
        return len(self.mu)

    @property
    def shift(self) -> int:
        return self.mu[-1] if self.mu else 0

    @property
    def base(self) -> tuple[int, ...]:
        c = self.shift
        return tuple(m - c for m in self.mu)


class HeckeElement:
    """Finitely supported Z-valued function on double cosets."""

    def __init__(self, q_w: int, r: int, coeffs: Mapping[Sequence[int], int] | None = None):
        self.q_w, self.r = q_w, r
        self.coeffs: dict[tuple[int, ...], int] = {}
        for mu, c in (coeffs or {}).items():
            mu = _check_mu(mu)
            if len(mu) != r:
                raise ValueError("cocharacter length differs from r")
            if c:
                self.coeffs[mu] = self.coeffs.get(mu, 0) + c

    @classmethod
    def basis(cls, mu: Sequence[int], q_w: int) -> HeckeElement:
        return cls(q_w, len(mu), {tuple(mu): 1})

    @classmethod
    def unit(cls, q_w: int, r: int) -> HeckeElement:
        return cls(q_w, r, {(0,) * r: 1})

    def _same(self, o: HeckeElement) -> None:
        if (self.q_w, self.r) != (o.q_w, o.r):
            raise ValueError("Hecke elements for different (q_w, r)")

    def __add__(self, o: HeckeElement) -> HeckeElement:
        self._same(o)
        c = Counter(self.coeffs)
        c.update(o.coeffs)
        return HeckeElement(self.q_w, self.r, {k: v for k, v in c.items() if v})

    def scale(self, a: int) -> HeckeElement:
        return HeckeElement(self.q_w, self.r, {k: a * v for k, v in self.coeffs.items()})

    def __mul__(self, o: HeckeElement) -> HeckeElement:
        return convolve(self, o)

    def __eq__(self, o) -> bool:
        return isinstance(o, HeckeElement) and (self.q_w, self.r, self.coeffs) == (o.q_w, o.r, o.coeffs)

    def __repr__(self) -> str:
        return f"HeckeElement(q_w={self.q_w}, {dict(sorted(self.coeffs.items(), reverse=True))})"

    def total_degree(self) -> int:
        return sum(c * coset_degree(mu, self.q_w, self.r) for mu, c in self.coeffs.items())

    def to_json(self) -> list[dict]:
        return [{"mu": list(mu), "coeff": c} for mu, c in sorted(self.coeffs.items(), reverse=True)]


def _Fw(q_w: int) -> GF:
    p, e = prime_power(q_w)
    return field(p, e)


def _polys_below(F: GF, deg: int) -> Iterable[tuple[int, ...]]:
    for cs in itertools.product(range(F.order), repeat=deg):
        yield tuple(ptrim(list(cs)))


@functools.lru_cache(maxsize=None)
def coset_reps(mu: tuple[int, ...], q_w: int, r: int | None = None) -> tuple[PMat, ...]:
    """Upper-triangular Hermite representatives of K z^mu K / K (requires mu_r >= 0)."""
    mu = _check_mu(mu)
    r = r or len(mu)
    if len(mu) != r:
        raise ValueError("cocharacter length differs from r")
    if mu and mu[-1] < 0:
        raise ValueError("shift mu to mu_r >= 0 first")
    F = _Fw(q_w)
    out = []
    n = sum(mu)
    for diag in itertools.product(range(max(mu, default=0) + 1), repeat=r):
        if sum(diag) != n:
            continue
        slots = [(i, j) for i in range(r) for j in range(i + 1, r)]
        choices = [list(_polys_below(F, diag[i])) for i, j in slots]
        for vals in itertools.product(*choices):
            m = [[() for _ in range(r)] for _ in range(r)]
            for i in range(r):
                m[i][i] = (0,) * diag[i] + (1,)
            for (i, j), v in zip(slots, vals):
                m[i][j] = v
            mat = tuple(tuple(row) for row in m)
            if elementary_divisors(F, mat) == mu:
                out.append(mat)
    return tuple(out)


def coset_degree(mu: Sequence[int], q_w: int, r: int | None = None) -> int:
    dc = DoubleCoset(tuple(mu))
    return len(coset_reps(dc.base, q_w, r or dc.r))


def _ord(c: Sequence[int]) -> int | None:
    for i, a in enumerate(c):
        if a:
            return i
    return None


def _det(F: GF, m: list[list[tuple[int, ...]]]) -> list[int]:
    n = len(m)
    if n == 0:
        return [1]
    if n == 1:
        return list(m[0][0])
    acc: list[int] = []
    for j in range(n):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = pmul(F, m[0][j], _det(F, minor))
        acc = padd(F, acc, term) if j % 2 == 0 else psub(F, acc, term)
    return ptrim(acc)


def elementary_divisors_by_minors(F: GF, mat: PMat) -> tuple[int, ...]:
    """Smith exponents from minimal valuations of k x k minors (slow reference route)."""
    r = len(mat)
    d = [0]
    for k in range(1, r + 1):
        best = None
        for rows in itertools.combinations(range(r), k):
            for cols in itertools.combinations(range(r), k):
                v = _ord(_det(F, [[mat[i][j] for j in cols] for i in rows]))
                if v is not None and (best is None or v < best):
                    best = v
                    if best == d[-1]:
                        break
            if best == d[-1]:
                break
        if best is None:
            raise ValueError("singular matrix")
        d.append(best)
    ed = [d[k] - d[k - 1] for k in range(1, r + 1)]
    return tuple(sorted(ed, reverse=True))


def _series_inv(F: GF, u: list[int], N: int) -> list[int]:
    inv0 = F.inv(u[0])
    out = [inv0] + [0] * (N - 1)
    for n in range(1, N):
        acc = 0
        for k in range(1, min(n, len(u) - 1) + 1):
            if u[k] and out[n - k]:
                acc = F.add(acc, F.mul(u[k], out[n - k]))
        out[n] = F.neg(F.mul(acc, inv0))
    return out


def _series_mul(F: GF, a: list[int], b: list[int], N: int) -> list[int]:
    out = [0] * N
    for i, x in enumerate(a[:N]):
        if x:
            for j in range(N - i):
                if b[j]:
                    out[i + j] = F.add(out[i + j], F.mul(x, b[j]))
    return out


def elementary_divisors(F: GF, mat: PMat) -> tuple[int, ...]:
    """Exponents of z in the Smith form over F[[z]], weakly decreasing.

    Pivoting on a minimal-valuation entry modulo z^N with N > deg det, which bounds every divisor.
    """
    N = 1
    for row in mat:
        degs = [len(e) - 1 for e in row if e]
        if not degs:
            raise ValueError("singular matrix")
        N += max(degs)
    A = [[(list(e) + [0] * N)[:N] for e in row] for row in mat]
    ed = []
    while A:
        best = None
        for i, row in enumerate(A):
            for j, e in enumerate(row):
                v = _ord(e)
                if v is not None and (best is None or v < best[0]):
                    best = (v, i, j)
                    if v == 0:
                        break
            if best and best[0] == 0:
                break
        if best is None:
            raise ValueError("singular matrix")
        v, pi, pj = best
        ed.append(v)
        prow = A[pi]
        uinv = _series_inv(F, prow[pj][v:], N)
        rest = []
        for i, row in enumerate(A):
            if i == pi:
                continue
            f = _series_mul(F, row[pj][v:] + [0] * v, uinv, N)  # row[pj] / pivot
            new = []
            for j, e in enumerate(row):
                if j == pj:
                    continue
                sub = _series_mul(F, f, prow[j], N)
                new.append([F.sub(x, y) for x, y in zip(e, sub)])
            rest.append(new)
        A = rest
    return tuple(sorted(ed, reverse=True))


def _mat_mul(F: GF, a: PMat, b: PMat) -> PMat:
    r = len(a)
    out = []
    for i in range(r):
        row = []
        for j in range(r):
            s: list[int] = []
            for k in range(r):
                if a[i][k] and b[k][j]:
                    s = padd(F, s, pmul(F, a[i][k], b[k][j]))
            row.append(tuple(ptrim(s)))
        out.append(tuple(row))
    return tuple(out)


def _diag_mul(F: GF, nu: Sequence[int], b: PMat) -> PMat:
    """z^nu * b (row scaling)."""
    return tuple(tuple(tuple([0] * n + list(e)) if e else () for e in row) for n, row in zip(nu, b))


def _dominant_between(total: int, r: int, lo: int, hi: int) -> list[tuple[int, ...]]:
    out = []
    for nu in itertools.combinations_with_replacement(range(hi, lo - 1, -1), r):
        if sum(nu) == total:
            out.append(nu)
    return out


def _adjugate(F: GF, m: PMat) -> PMat:
    r = len(m)
    if r == 1:
        return (((1,),),)
    rows = [list(row) for row in m]
    out = [[() for _ in range(r)] for _ in range(r)]
    for i in range(r):
        for j in range(r):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(rows) if k != i]
            d = _det(F, minor)
            out[j][i] = tuple(d if (i + j) % 2 == 0 else ptrim([F.neg(c) for c in d]))
    return tuple(tuple(row) for row in out)


@functools.lru_cache(maxsize=None)
def _adjugates(lam: tuple[int, ...], q_w: int) -> tuple[PMat, ...]:
    F = _Fw(q_w)
    return tuple(_adjugate(F, a) for a in coset_reps(lam, q_w))


@functools.lru_cache(maxsize=None)
def _structure_constants(lam: tuple[int, ...], mu: tuple[int, ...], q_w: int) -> dict[tuple[int, ...], int]:
    """c^nu with 1_lam * 1_mu = sum c^nu 1_nu, for lam, mu with nonnegative last entry.

    c^nu = (1_lam * 1_mu)(z^nu) is counted over the cosets of whichever factor is smaller:
      over a in K lam K / K:  a^{-1} z^nu in K mu K, i.e. adj(a) z^nu has divisors mu + |lam|;
      over w in K mu* K / K (mu* = -w0 mu, shifted by mu_1):  z^nu w in K lam K.
    """
    F = _Fw(q_w)
    r = len(lam)
    dual = tuple(mu[0] - m for m in reversed(mu))
    left = _size_proxy(lam) <= _size_proxy(dual)
    if left:
        mats, target = _adjugates(lam, q_w), tuple(x + sum(lam) for x in mu)
    else:
        mats, target = coset_reps(dual, q_w, r), tuple(x + mu[0] for x in lam)
    out = {}
    for nu in _dominant_between(sum(lam) + sum(mu), r, lam[-1] + mu[-1], lam[0] + mu[0]):
        if left:
            c = sum(1 for a in mats if elementary_divisors(F, _mat_mul(F, a, _diag(nu))) == target)
        else:
            c = sum(1 for b in mats if elementary_divisors(F, _diag_mul(F, nu, b)) == target)
        if c:
            out[nu] = c
    return out


def _size_proxy(mu: Sequence[int]) -> int:
    """<mu, 2 rho>: log_q of the leading term of the coset count, used only to pick the cheaper side."""
    return sum(a - b for a, b in itertools.combinations(mu, 2))


def _diag(nu: Sequence[int]) -> PMat:
    r = len(nu)
    return tuple(tuple(((0,) * n + (1,)) if i == j else () for j in range(r)) for i, n in enumerate(nu))


def structure_constants_by_pairs(lam: tuple[int, ...], mu: tuple[int, ...], q_w: int) -> dict[tuple[int, ...], int]:
    """Independent route: count pairs of cosets by the type of the product, then divide by deg(nu)."""
    F = _Fw(q_w)
    counts: Counter = Counter()
    for a in coset_reps(lam, q_w):
        for b in coset_reps(mu, q_w):
            counts[elementary_divisors(F, _mat_mul(F, a, b))] += 1
    out = {}
    for nu, c in counts.items():
        deg = len(coset_reps(nu, q_w))
        if c % deg:  # pragma: no cover
            raise ArithmeticError("non-integral structure constant")
        out[nu] = c // deg
    return out


def convolve(h1: HeckeElement, h2: HeckeElement, q_w: int | None = None, r: int | None = None) -> HeckeElement:
    h1._same(h2)
    qw, rr = h1.q_w, h1.r
    if (q_w is not None and q_w != qw) or (r is not None and r != rr):
        raise ValueError("parameters do not match the Hecke elements")
    out: Counter = Counter()
    for lam, a in h1.coeffs.items():
        dl = DoubleCoset(lam)
        for mu, b in h2.coeffs.items():
            dm = DoubleCoset(mu)
            shift = dl.shift + dm.shift
            for nu, c in _structure_constants(dl.base, dm.base, qw).items():
                out[tuple(x + shift for x in nu)] += a * b * c
    return HeckeElement(qw, rr, {k: v for k, v in out.items() if v})


def commutativity_check(h1: HeckeElement, h2: HeckeElement, q_w: int | None = None, r: int | None = None) -> bool:
    return convolve(h1, h2, q_w, r) == convolve(h2, h1, q_w, r)


def cocharacters(r: int, max_size: int) -> list[tuple[int, ...]]:
    """All mu with mu_1 >= ... >= mu_r >= 0 and |mu| <= max_size."""
    out = []
    for n in range(max_size + 1):
        for mu in itertools.combinations_with_replacement(range(n, -1, -1), r):
            if sum(mu) == n:
                out.append(tuple(mu))
    return sorted(set(out))


# ---------------------------------------------------------------------------
# independent oracle: counting sublattices via surjections onto the quotient


def lattice_count(mu: Sequence[int], q_w: int) -> int:
    """#{lattices L in O^r with O^r/L = sum O/z^{mu_i}}, as #Surj(O^r, Q) / #Aut(Q)."""
    mu = _check_mu(mu)
    F = _Fw(q_w)
    parts = [m for m in mu if m > 0]
    r = len(mu)
    size = sum(parts)
    if size == 0:
        return 1
    elems = list(itertools.product(range(F.order), repeat=size))

    def zmul(x: tuple[int, ...]) -> tuple[int, ...]:
        out, pos = [], 0
        for m in parts:
            comp = x[pos:pos + m]
            out.extend((0,) + comp[:-1])
            pos += m
        return tuple(out)

    def generates(gens: Sequence[tuple[int, ...]]) -> bool:
        rows = []
        for g in gens:
            x = g
            for _ in range(max(parts)):
                rows.append(list(x))
                x = zmul(x)
        return rank(F, rows) == size

    def killed(x: tuple[int, ...], k: int) -> bool:
        for _ in range(k):
            x = zmul(x)
        return not any(x)

    surj = sum(1 for gens in itertools.product(elems, repeat=r) if generates(gens))
    pools = [[x for x in elems if killed(x, m)] for m in parts]
    aut = sum(1 for gens in itertools.product(*pools) if generates(gens))
    return surj // aut
