"""The twisted polynomial ring L{tau} with tau*a = a^q*tau."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .fields import GF, embed, field
from .polya import prime_power


class SkewError(ValueError):
    pass


class SkewCapExceeded(SkewError):
    pass


def _frob_q(L: GF, q: int):
    _, e = prime_power(q)
    frob = L.frob

    def f(a: int, i: int = 1) -> int:
        return frob(a, e * i)

    return f


@dataclass(frozen=True)
class SkewPoly:
    """sum c_i tau^i over L; q is the size of the constant field F_q."""

    L: GF
    q: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))
        p, e = prime_power(self.q)
        if p != self.L.p or self.L.n % e:
            raise SkewError(f"F_{self.q} is not a subfield of {self.L}")

    @classmethod
    def make(cls, L: GF, q: int, coeffs: Sequence[int]) -> SkewPoly:
        return cls(L, q, tuple(coeffs))

    @classmethod
    def tau(cls, L: GF, q: int, k: int = 1) -> SkewPoly:
        return cls(L, q, (0,) * k + (1,))

    @classmethod
    def constant(cls, L: GF, q: int, c: int) -> SkewPoly:
        return cls(L, q, (c,))

    @property
    def deg(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def _check(self, other: SkewPoly) -> None:
        if other.L != self.L or other.q != self.q:
            raise SkewError("field mismatch")

    def __add__(self, other: SkewPoly) -> SkewPoly:
        self._check(other)
        L = self.L
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return SkewPoly(L, self.q, tuple(L.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)))

    def __neg__(self) -> SkewPoly:
        return SkewPoly(self.L, self.q, tuple(self.L.neg(c) for c in self.coeffs))

    def __sub__(self, other: SkewPoly) -> SkewPoly:
        return self + (-other)

    def __mul__(self, other: SkewPoly) -> SkewPoly:
        return skew_mul(self, other)

    def scale(self, c: int) -> SkewPoly:
        """Left multiplication by the constant c."""
        mul = self.L.mul
        return SkewPoly(self.L, self.q, tuple(mul(c, x) for x in self.coeffs))

    def __call__(self, x: int) -> int:
        """Evaluate the additive polynomial sum c_i x^{q^i}."""
        L = self.L
        fq = _frob_q(L, self.q)
        r, xp = 0, x
        for i, c in enumerate(self.coeffs):
            if i:
                xp = fq(xp)
            if c:
                r = L.add(r, L.mul(c, xp))
        return r

    def change_field(self, M: GF) -> SkewPoly:
        return SkewPoly(M, self.q, tuple(embed(c, self.L, M) for c in self.coeffs))

    def to_json(self) -> dict:
        return {"field": self.L.descriptor(), "q": self.q, "coeffs": [self.L.to_digits(c) for c in self.coeffs]}

    def __repr__(self) -> str:
        return f"SkewPoly({self.L}, q={self.q}, {list(self.coeffs)})"


def skew_mul(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    f._check(g)
    if f.is_zero() or g.is_zero():
        return SkewPoly(f.L, f.q, ())
    L = f.L
    add, mul = L.add, L.mul
    fq = _frob_q(L, f.q)
    out = [0] * (len(f.coeffs) + len(g.coeffs) - 1)
    twisted = list(g.coeffs)
    for i, a in enumerate(f.coeffs):
        if i:
            twisted = [fq(c) for c in twisted]
        if a:
            for j, b in enumerate(twisted):
                if b:
                    out[i + j] = add(out[i + j], mul(a, b))
    return SkewPoly(L, f.q, tuple(out))


def skew_right_divmod(f: SkewPoly, g: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
    """f = Q*g + R with deg R < deg g."""
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("right division by zero skew polynomial")
    L = f.L
    fq = _frob_q(L, f.q)
    r = list(f.coeffs)
    m = g.deg
    quo = [0] * max(0, len(r) - m)
    gc = g.coeffs
    while len(r) - 1 >= m and r:
        shift = len(r) - 1 - m
        a = L.div(r[-1], fq(gc[-1], shift))
        quo[shift] = a
        na = L.neg(a)
        for j, b in enumerate(gc):
            if b:
                r[shift + j] = L.add(r[shift + j], L.mul(na, fq(b, shift)))
        while r and r[-1] == 0:
            r.pop()
    return SkewPoly(L, f.q, tuple(quo)), SkewPoly(L, f.q, tuple(r))


def to_additive_poly(f: SkewPoly) -> dict[int, int]:
    """Sparse ordinary polynomial {exponent q^i: c_i}."""
    return {f.q**i: c for i, c in enumerate(f.coeffs) if c}


def partial_derivative(f: SkewPoly) -> int:
    return f.coeff(0)


def kernel_basis(f: SkewPoly, N: int) -> tuple[GF, list[int]]:
    """F_q-basis of the roots of f in F_{q^N}.

    The coefficient field of f must embed in F_{q^N}.
    """
    if f.is_zero():
        raise SkewError("kernel of the zero polynomial")
    p, e = prime_power(f.q)
    M = field(p, e * N)
    if M.n % f.L.n:
        raise SkewError(f"{f.L} does not embed in F_{f.q}^{N}")
    g = f.change_field(M) if M != f.L else f
    images = [g(_basis_elt(M, i)) for i in range(M.n)]
    null = _fp_nullspace(M, images)
    vecs = [_combine(M, c) for c in null]
    return M, fq_basis(M, f.q, vecs)


def _basis_elt(M: GF, i: int) -> int:
    return M.p**i


def _combine(M: GF, coeffs: Sequence[int]) -> int:
    return M.from_digits(list(coeffs))


def _fp_nullspace(M: GF, images: Sequence[int]) -> list[list[int]]:
    """Null space of the F_p-linear map sending the i-th basis vector to images[i]."""
    p = M.p
    k = len(images)
    if p == 2:
        pivots: list[tuple[int, int, int]] = []  # (bit, vec, comb)
        null = []
        for i, v in enumerate(images):
            comb = 1 << i
            for bit, pv, pc in pivots:
                if (v >> bit) & 1:
                    v ^= pv
                    comb ^= pc
            if v:
                pivots.append((v.bit_length() - 1, v, comb))
            else:
                null.append([(comb >> j) & 1 for j in range(k)])
        return null
    rows = [(M.to_digits(v), [1 if j == i else 0 for j in range(k)]) for i, v in enumerate(images)]
    pivots_o: list[tuple[int, list[int], list[int]]] = []
    null = []
    for vec, comb in rows:
        for piv, pv, pc in pivots_o:
            c = vec[piv]
            if c:
                fct = c * pow(pv[piv], p - 2, p) % p
                vec = [(a - fct * b) % p for a, b in zip(vec, pv)]
                comb = [(a - fct * b) % p for a, b in zip(comb, pc)]
        lead = next((i for i in range(len(vec) - 1, -1, -1) if vec[i]), None)
        if lead is None:
            null.append(comb)
        else:
            pivots_o.append((lead, vec, comb))
    return null


def fq_basis(M: GF, q: int, vecs: Sequence[int]) -> list[int]:
    """Extract an F_q-basis from an F_q-stable F_p-spanning set (greedy, canonical order)."""
    p, e = prime_power(q)
    if e == 1:
        return sorted(_greedy_fp(M, sorted(vecs)))
    Fq = field(p, e)
    scalars = [embed(Fq.p**i, Fq, M) for i in range(e)]
    chosen: list[int] = []
    span: list[int] = []
    for v in sorted(vecs):
        cand = [M.mul(s, v) for s in scalars]
        if len(_greedy_fp(M, span + cand)) > len(span):
            chosen.append(v)
            span = _greedy_fp(M, span + cand)
    return chosen


def _greedy_fp(M: GF, vecs: Sequence[int]) -> list[int]:
    out: list[int] = []
    for v in vecs:
        if not _fp_nullspace(M, out + [v]):
            out.append(v)
    return out


def splitting_degree(f: SkewPoly, cap: int = 64) -> int:
    """Minimal N (a multiple of [L:F_q]) such that all q^deg roots of f lie in F_{q^N}."""
    if f.coeff(0) == 0:
        raise SkewError("inseparable input: constant coefficient vanishes")
    if f.deg == 0:
        return f.L.n // prime_power(f.q)[1]
    _, e = prime_power(f.q)
    base = f.L.n // e
    # tau^N mod_right f, iterated; f right-divides tau^N - 1 iff all roots lie in F_{q^N}
    L = f.L
    r = SkewPoly(L, f.q, (1,))
    tau = SkewPoly.tau(L, f.q)
    one = SkewPoly(L, f.q, (1,))
    for N in range(1, cap + 1):
        r = skew_right_divmod(tau * r, f)[1]
        if N % base == 0 and r == one:
            _, basis = kernel_basis(f, N)
            if len(basis) != f.deg:  # pragma: no cover - contradiction with theory
                raise SkewError("kernel dimension mismatch")
            return N
    raise SkewCapExceeded(f"splitting degree exceeds cap {cap}")


def kernel_poly(L: GF, q: int, basis: Sequence[int]) -> SkewPoly:
    """Monic u with kernel the F_q-span of basis (iterated (tau - a^{q-1})*u)."""
    u = SkewPoly(L, q, (1,))
    for c in basis:
        val = u(c)
        if val == 0:
            continue
        a = L.pow(val, q - 1)
        u = SkewPoly(L, q, (L.neg(a), 1)) * u
    return u
