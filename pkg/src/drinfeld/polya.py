"""The ring A = F_q[t], its primes and residue fields, and closed-form zeta values."""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from sympy import factorint

from .fields import GF, FieldError, embed, field, proots

Rational = Fraction


def prime_power(q: int) -> tuple[int, int]:
    f = factorint(q)
    if len(f) != 1:
        raise ValueError(f"q = {q} is not a prime power")
    (p, e), = f.items()
    return p, e


@dataclass(frozen=True)
class PolyA:
    """Element of F_q[t]; coefficients (low degree first) are elements of F_q."""

    q: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    # -- construction ------------------------------------------------------
    @property
    def Fq(self) -> GF:
        p, e = prime_power(self.q)
        return field(p, e)

    @classmethod
    def from_ints(cls, q: int, coeffs: Sequence[int]) -> PolyA:
        return cls(q, tuple(coeffs))

    @classmethod
    def t(cls, q: int) -> PolyA:
        return cls(q, (0, 1))

    @classmethod
    def const(cls, q: int, c: int) -> PolyA:
        return cls(q, (c,))

    @classmethod
    def parse(cls, text: str, q: int) -> PolyA:
        """Parse ASCII like 't^2+t+1' or '2t+1' (coefficients in the prime field)."""
        p, _ = prime_power(q)
        s = text.replace(" ", "").replace("*", "")
        if not s:
            raise ValueError("empty polynomial")
        if s[0] not in "+-":
            s = "+" + s
        terms = re.findall(r"([+-])([^+-]+)", s)
        if "".join(sign + body for sign, body in terms) != s:
            raise ValueError(f"cannot parse polynomial {text!r}")
        coeffs: dict[int, int] = {}
        for sign, body in terms:
            m = re.fullmatch(r"(\d*)(t(?:\^(\d+))?)?", body)
            if not m or (not m.group(1) and not m.group(2)):
                raise ValueError(f"cannot parse term {body!r}")
            c = int(m.group(1)) if m.group(1) else 1
            if m.group(2):
                deg = int(m.group(3)) if m.group(3) else 1
            else:
                deg = 0
            if sign == "-":
                c = -c
            coeffs[deg] = (coeffs.get(deg, 0) + c) % p
        n = max(coeffs) + 1 if coeffs else 0
        return cls(q, tuple(coeffs.get(i, 0) for i in range(n)))

    # -- basic properties --------------------------------------------------
    @property
    def deg(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.lead() == 1

    def monic(self) -> PolyA:
        if self.is_zero():
            return self
        F = self.Fq
        inv = F.inv(self.lead())
        return PolyA(self.q, tuple(F.mul(inv, c) for c in self.coeffs))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        p = self.Fq.p
        for i in range(self.deg, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            cs = "" if (c == 1 and i > 0) else (str(c) if c < p else f"[{c}]")
            if i == 0:
                parts.append(str(c) if c < p else f"[{c}]")
            elif i == 1:
                parts.append(f"{cs}t")
            else:
                parts.append(f"{cs}t^{i}")
        return "+".join(parts)

    def sort_key(self) -> tuple:
        return (self.deg, tuple(reversed(self.coeffs)))

    # -- arithmetic --------------------------------------------------------
    def _check(self, other: PolyA) -> None:
        if not isinstance(other, PolyA) or other.q != self.q:
            raise TypeError("incompatible polynomials")

    def __add__(self, other: PolyA) -> PolyA:
        self._check(other)
        F = self.Fq
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return PolyA(self.q, tuple(F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)))

    def __neg__(self) -> PolyA:
        F = self.Fq
        return PolyA(self.q, tuple(F.neg(c) for c in self.coeffs))

    def __sub__(self, other: PolyA) -> PolyA:
        return self + (-other)

    def __mul__(self, other: PolyA) -> PolyA:
        self._check(other)
        if self.is_zero() or other.is_zero():
            return PolyA(self.q, ())
        F = self.Fq
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
        return PolyA(self.q, tuple(out))

    def __pow__(self, e: int) -> PolyA:
        r = PolyA.const(self.q, 1)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __divmod__(self, other: PolyA) -> tuple[PolyA, PolyA]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        F = self.Fq
        r = list(self.coeffs)
        db = other.deg
        inv = F.inv(other.lead())
        quo = [0] * max(0, len(r) - db)
        while len(r) - 1 >= db and r:
            shift = len(r) - 1 - db
            c = F.mul(r[-1], inv)
            quo[shift] = c
            for i, y in enumerate(other.coeffs):
                r[shift + i] = F.sub(r[shift + i], F.mul(c, y))
            while r and r[-1] == 0:
                r.pop()
        return PolyA(self.q, tuple(quo)), PolyA(self.q, tuple(r))

    def __floordiv__(self, other: PolyA) -> PolyA:
        return divmod(self, other)[0]

    def __mod__(self, other: PolyA) -> PolyA:
        return divmod(self, other)[1]

    def scale(self, c: int) -> PolyA:
        F = self.Fq
        return PolyA(self.q, tuple(F.mul(c, x) for x in self.coeffs))

    def gcd(self, other: PolyA) -> PolyA:
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def divides(self, other: PolyA) -> bool:
        return (other % self).is_zero()

    def valuation(self, P: PolyA) -> int:
        if self.is_zero():
            raise ValueError("valuation of zero")
        v, a = 0, self
        while True:
            quo, rem = divmod(a, P)
            if not rem.is_zero():
                return v
            a, v = quo, v + 1

    def evaluate(self, L: GF, x: int) -> int:
        """Value at x in a field L containing F_q (compatible embedding)."""
        Fq = self.Fq
        r = 0
        for c in reversed(self.coeffs):
            r = L.add(L.mul(r, x), embed(c, Fq, L))
        return r

    def is_irreducible(self) -> bool:
        if self.deg <= 0:
            return False
        if self.deg == 1:
            return True
        return _is_irreducible(self.q, self.monic().coeffs)

    def factor(self) -> list[tuple[PolyA, int]]:
        """Monic irreducible factorization (trial division; desk-scale degrees)."""
        if self.is_zero():
            raise ValueError("factor of zero")
        a = self.monic()
        out = []
        d = 1
        while a.deg > 0:
            if 2 * d > a.deg:
                out.append((a, 1))
                break
            for P in monic_irreducibles(self.q, d):
                e = 0
                while True:
                    quo, rem = divmod(a, P)
                    if not rem.is_zero():
                        break
                    a, e = quo, e + 1
                if e:
                    out.append((P, e))
            d += 1
        merged: dict[PolyA, int] = {}
        for P, e in out:
            merged[P] = merged.get(P, 0) + e
        return sorted(merged.items(), key=lambda pe: pe[0].sort_key())

    def to_json(self) -> list[int]:
        return list(self.coeffs)


@functools.lru_cache(maxsize=None)
def _is_irreducible(q: int, coeffs: tuple[int, ...]) -> bool:
    p, e = prime_power(q)
    Fq = field(p, e)
    d = len(coeffs) - 1
    # irreducible of degree d over F_q iff it has d distinct roots in F_{q^d} and one of them
    # generates F_{q^d} over F_q, i.e. lcm(e, degree over F_p) = e d
    L = field(p, e * d)
    f = [embed(c, Fq, L) for c in coeffs]
    roots = proots(L, f)
    if not roots:
        return False
    r0 = roots[0]
    return math.lcm(e, L.element_degree(r0)) == e * d and len(roots) == d


@functools.lru_cache(maxsize=None)
def monic_irreducibles(q: int, d: int) -> tuple[PolyA, ...]:
    out = []
    for tail in _tails(q, d):
        P = PolyA(q, tail + (1,))
        if P.is_irreducible():
            out.append(P)
    return tuple(sorted(out, key=PolyA.sort_key))


def _tails(q: int, d: int) -> Iterator[tuple[int, ...]]:
    for code in range(q**d):
        digits = []
        for _ in range(d):
            code, c = divmod(code, q)
            digits.append(c)
        yield tuple(digits)


def monic_polys(q: int, d: int) -> Iterator[PolyA]:
    for tail in _tails(q, d):
        yield PolyA(q, tail + (1,))


@dataclass(frozen=True)
class PrimeP:
    """A monic irreducible P with its residue field F_v = A/P."""

    P: PolyA

    def __post_init__(self):
        if not self.P.is_monic() or not self.P.is_irreducible():
            raise ValueError(f"{self.P} is not a monic irreducible")

    @property
    def q(self) -> int:
        return self.P.q

    @property
    def d(self) -> int:
        return self.P.deg

    @property
    def qv(self) -> int:
        return self.q**self.d

    @property
    def Fv(self) -> GF:
        p, e = prime_power(self.q)
        return field(p, e * self.d)

    @property
    def gamma_t(self) -> int:
        return residue_root(self.P)

    def reduce(self, a: PolyA, L: GF | None = None) -> int:
        """gamma_P(a), optionally embedded into a larger field L."""
        Fv = self.Fv
        val = a.evaluate(Fv, self.gamma_t)
        return val if L is None else embed(val, Fv, L)

    def __str__(self) -> str:
        return str(self.P)


@functools.lru_cache(maxsize=None)
def residue_root(P: PolyA) -> int:
    p, e = prime_power(P.q)
    Fq = field(p, e)
    L = field(p, e * P.deg)
    roots = proots(L, [embed(c, Fq, L) for c in P.coeffs])
    if not roots:
        raise FieldError(f"{P} has no root in its residue field")
    return roots[0]


def residue_field(P: PolyA | PrimeP):
    """(F_v, reduction map A -> F_v) with t sent to the smallest root of P."""
    pr = P if isinstance(P, PrimeP) else PrimeP(P)
    return pr.Fv, pr.reduce


def primes_up_to(q: int, d_max: int) -> list[PrimeP]:
    if d_max < 1:
        raise ValueError("d_max must be >= 1")
    out = []
    for d in range(1, d_max + 1):
        out.extend(PrimeP(P) for P in monic_irreducibles(q, d))
    return out


def zeta_partial(i: int, q: int, d: int) -> Fraction:
    """|zeta^{inf v}(-i)| for F_q(t) with deg v = d: (q^{di} - 1)/(q^{1+i} - 1)."""
    if i < 1:
        raise ValueError("i must be >= 1")
    return Fraction(q ** (d * i) - 1, q ** (1 + i) - 1)


def gaussian_binomial(r: int, j: int, Q: int) -> int:
    if not 0 <= j <= r:
        return 0
    num = den = 1
    for i in range(j):
        num *= Q ** (r - i) - 1
        den *= Q ** (i + 1) - 1
    return num // den


def gl_order_field(r: int, Q: int) -> int:
    out = 1
    for i in range(r):
        out *= Q**r - Q**i
    return out


def gl_order(r: int, n: PolyA) -> int:
    """#GL_r(A/n)."""
    out = 1
    for P, e in n.factor():
        Qp = n.q**P.deg
        out *= Qp ** (r * r * (e - 1)) * gl_order_field(r, Qp)
    return out


def unit_count(n: PolyA) -> int:
    """#(A/n)^x."""
    out = 1
    for P, e in n.factor():
        Qp = n.q**P.deg
        out *= Qp ** (e - 1) * (Qp - 1)
    return out
