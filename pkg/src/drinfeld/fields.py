"""Finite fields F_{p^n} with deterministic moduli and compatible embeddings.

Elements are plain Python ints: the base-p digits of an int are the
coefficients (low degree first) of a polynomial in the generator x of
F_p[x]/(m).  For p = 2 the digits are bits, so addition is XOR.

Three arithmetic backends are chosen automatically:

* log/antilog tables (with Zech logarithms for odd p) when p^n <= TABLE_CAP,
* carry-less integer multiplication for large binary fields,
* digit-list polynomial arithmetic for large odd-characteristic fields.
"""

from __future__ import annotations

import functools
import math
import random
from typing import Iterable, Sequence

import numpy as np
from sympy import factorint

TABLE_CAP = 1 << 16


class FieldError(ValueError):
    pass


# ---------------------------------------------------------------------------
# polynomial helpers over F_p (used to pick moduli)


def _int_to_digits(a: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        a, d = divmod(a, p)
        out.append(d)
    return out


def _digits_to_int(ds: Sequence[int], p: int) -> int:
    a = 0
    for d in reversed(ds):
        a = a * p + d
    return a


def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _fp_rem(prod, m, p)


def _fp_rem(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(_fp_trim(a)) - 1 >= dm:
        shift = len(a) - 1 - dm
        c = a[-1] * inv_lead % p
        for i, y in enumerate(m):
            a[shift + i] = (a[shift + i] - c * y) % p
    return a


def _fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    while b:
        a, b = b, _fp_trim(_fp_rem(a, b, p))
    return a


def _fp_powx_frob(m: list[int], p: int, k: int) -> list[int]:
    """x^(p^k) mod m over F_p."""
    r = [0, 1]
    for _ in range(k):
        base, e, acc = r, p, [1]
        while e:
            if e & 1:
                acc = _fp_mulmod(acc, base, m, p)
            base = _fp_mulmod(base, base, m, p)
            e >>= 1
        r = acc
    return _fp_trim(r)


def _clmul(a: int, b: int) -> int:
    if a.bit_length() < b.bit_length():
        a, b = b, a
    r = 0
    while b:
        low = b & -b
        r ^= a << (low.bit_length() - 1)
        b ^= low
    return r


def _clmod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def _gf2_irreducible(m: int) -> bool:
    n = m.bit_length() - 1
    if n == 1:
        return True

    def xpow2k(k: int) -> int:
        r = 2
        for _ in range(k):
            r = _clmod(_clmul(r, r), m)
        return r

    if xpow2k(n) != 2:
        return False
    for ell in factorint(n):
        g = xpow2k(n // ell) ^ 2
        a, b = m, g
        while b:
            a, b = b, _clmod(a, b)
        if a != 1:
            return False
    return True


def _fp_irreducible(m: list[int], p: int) -> bool:
    n = len(m) - 1
    if n == 1:
        return True
    if _fp_powx_frob(m, p, n) != [0, 1]:
        return False
    for ell in factorint(n):
        g = _fp_powx_frob(m, p, n // ell)
        g = g + [0] * max(0, 2 - len(g))
        g[1] = (g[1] - 1) % p
        if len(_fp_gcd(m, _fp_trim(g), p)) != 1:
            return False
    return True


@functools.lru_cache(maxsize=None)
def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Monic irreducible of degree n over F_p with the smallest tail encoding."""
    for tail in range(p**n):
        if p == 2:
            if tail & 1 == 0 and n > 1:
                continue
            m = tail | (1 << n)
            if _gf2_irreducible(m):
                return tuple(_int_to_digits(tail, 2, n)) + (1,)
        else:
            digits = _int_to_digits(tail, p, n)
            if digits[0] == 0 and n > 1:
                continue
            if _fp_irreducible(digits + [1], p):
                return tuple(digits) + (1,)
    raise FieldError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------


class GF:
    """The field F_{p^n}."""

    def __init__(self, p: int, n: int):
        if p < 2 or factorint(p) != {p: 1}:
            raise FieldError(f"{p} is not prime")
        if n < 1:
            raise FieldError("degree must be positive")
        self.p = p
        self.n = n
        self.order = p**n
        self.modulus = smallest_irreducible(p, n)
        self._mod_int = _digits_to_int(self.modulus, p)
        self.tables = self.order <= TABLE_CAP
        self._group_factors = sorted(factorint(self.order - 1)) if self.order > 2 else []
        if self.tables:
            self._build_tables()
            self.mul = self._mul_table
            self.add = self._add_xor if p == 2 else self._add_zech
        else:
            self.add = self._add_xor if p == 2 else self._add_digits
            self.mul = self._mul_clmul if p == 2 else self._mul_digits
            self.gen = self._find_generator()
        self.zero = 0
        self.one = 1

    def __reduce__(self):
        return (field, (self.p, self.n))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.n})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and other.p == self.p and other.n == self.n

    def __hash__(self) -> int:
        return hash(("GF", self.p, self.n))

    # -- construction -------------------------------------------------------
    def _mul_slow(self, a: int, b: int) -> int:
        if self.p == 2:
            return _clmod(_clmul(a, b), self._mod_int)
        return self._mul_digits(a, b)

    def _is_generator_slow(self, g: int) -> bool:
        q1 = self.order - 1
        return all(self._pow_slow(g, q1 // ell) != 1 for ell in self._group_factors)

    def _pow_slow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_slow(r, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return r

    def _find_generator(self) -> int:
        if self.order == 2:
            return 1
        for g in range(2 if self.p == 2 else 1, self.order):
            if self._is_generator_slow(g):
                return g
        raise FieldError("no generator")  # pragma: no cover

    def _build_tables(self) -> None:
        Q = self.order
        q1 = Q - 1
        self.gen = self._find_generator()
        exp = [0] * (2 * q1 + 1)
        log = [0] * Q
        a = 1
        for i in range(q1):
            exp[i] = a
            log[a] = i
            a = self._mul_slow(a, self.gen)
        for i in range(q1, 2 * q1 + 1):
            exp[i] = exp[i - q1]
        log[0] = -1
        self._exp = exp
        self._log = log
        self._np_exp = np.array(exp, dtype=np.int64)
        self._np_log = np.array(log, dtype=np.int64)
        if self.p != 2:
            # zech[d] = log(1 + g^d), -1 when 1 + g^d = 0
            zech = [0] * q1
            for d in range(q1):
                s = self._add_digits(1, exp[d])
                zech[d] = log[s] if s else -1
            self._zech = zech
            self._np_zech = np.array(zech, dtype=np.int64)

    # -- addition -----------------------------------------------------------
    @staticmethod
    def _add_xor(a: int, b: int) -> int:
        return a ^ b

    def _add_zech(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        log = self._log
        la = log[a]
        d = log[b] - la
        if d < 0:
            d += self.order - 1
        z = self._zech[d]
        if z < 0:
            return 0
        return self._exp[la + z]

    def _add_digits(self, a: int, b: int) -> int:
        p = self.p
        r, place = 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            r += ((da + db) % p) * place
            place *= p
        return r

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        if self.tables:
            return self._mul_table(a, self._exp[(self.order - 1) // 2])
        p = self.p
        r, place = 0, 1
        while a:
            a, d = divmod(a, p)
            r += ((-d) % p) * place
            place *= p
        return r

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    # -- multiplication -----------------------------------------------------
    def _mul_table(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def _mul_clmul(self, a: int, b: int) -> int:
        return _clmod(_clmul(a, b), self._mod_int)

    def _mul_digits(self, a: int, b: int) -> int:
        p, n = self.p, self.n
        da = _int_to_digits(a, p, n)
        db = _int_to_digits(b, p, n)
        return _digits_to_int(_fp_mulmod(da, db, list(self.modulus), p), p)

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 0
        q1 = self.order - 1
        e %= q1
        if self.tables:
            return self._exp[(self._log[a] * e) % q1]
        r = 1
        mul = self.mul
        while e:
            if e & 1:
                r = mul(r, a)
            a = mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.tables:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frob(self, a: int, k: int = 1) -> int:
        """a^(p^k)."""
        k %= self.n
        if k == 0 or a < self.p:
            return a
        if self.tables:
            return self._exp[(self._log[a] * self.p**k) % (self.order - 1)]
        if self.p == 2:
            for _ in range(k):
                a = self._mul_clmul(a, a)
            return a
        return self.pow(a, self.p**k)

    def sum(self, xs: Iterable[int]) -> int:
        add = self.add
        s = 0
        for x in xs:
            s = add(s, x)
        return s

    def prod(self, xs: Iterable[int]) -> int:
        mul = self.mul
        s = 1
        for x in xs:
            s = mul(s, x)
        return s

    def scalar(self, c: int) -> int:
        """Image of the integer c in the prime field."""
        return c % self.p

    # -- structure ----------------------------------------------------------
    def log(self, a: int) -> int:
        """Discrete logarithm with respect to self.gen."""
        if a == 0:
            raise ZeroDivisionError("log of zero")
        if self.tables:
            return self._log[a]
        return _pohlig_hellman(self, a)

    def element_degree(self, a: int) -> int:
        """Degree over F_p of the smallest subfield containing a."""
        for d in sorted(_divisors(self.n)):
            if self.frob(a, d) == a:
                return d
        return self.n  # pragma: no cover

    def random(self, rng: random.Random, nonzero: bool = False) -> int:
        lo = 1 if nonzero else 0
        return rng.randrange(lo, self.order)

    def to_digits(self, a: int) -> list[int]:
        return _int_to_digits(a, self.p, self.n)

    def from_digits(self, ds: Sequence[int]) -> int:
        if len(ds) > self.n or any(not 0 <= d < self.p for d in ds):
            raise FieldError("bad digit vector")
        return _digits_to_int(ds, self.p)

    def descriptor(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    # -- vectorised (numpy) arithmetic, table backend only ------------------
    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        la, lb = self._np_log[a], self._np_log[b]
        out = self._np_exp[(la + lb) % (self.order - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return a ^ b
        q1 = self.order - 1
        la, lb = self._np_log[a], self._np_log[b]
        d = (lb - la) % q1
        z = self._np_zech[d]
        out = np.where(z < 0, 0, self._np_exp[(la + np.maximum(z, 0)) % q1])
        out = np.where(a == 0, b, out)
        return np.where(b == 0, a, out)

    def vpow(self, a: np.ndarray, e: int) -> np.ndarray:
        q1 = self.order - 1
        out = self._np_exp[(self._np_log[a] * (e % q1)) % q1]
        if e == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, out)

    def vinv(self, a: np.ndarray) -> np.ndarray:
        q1 = self.order - 1
        return self._np_exp[(q1 - self._np_log[a]) % q1]


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _pohlig_hellman(F: GF, a: int) -> int:
    q1 = F.order - 1
    residues, moduli = [], []
    for ell, k in factorint(q1).items():
        pe = ell**k
        g0 = F.pow(F.gen, q1 // pe)
        h0 = F.pow(a, q1 // pe)
        gamma = F.pow(g0, pe // ell)
        x = 0
        for i in range(k):
            hk = F.pow(F.mul(F.pow(g0, -x % pe), h0), pe // ell ** (i + 1))
            d = _bsgs(F, gamma, hk, ell)
            x += d * ell**i
        residues.append(x)
        moduli.append(pe)
    x, m = 0, 1
    for r, pe in zip(residues, moduli):
        # combine x mod m with r mod pe
        t = ((r - x) * pow(m, -1, pe)) % pe
        x += m * t
        m *= pe
    return x % q1


def _bsgs(F: GF, g: int, h: int, order: int) -> int:
    s = math.isqrt(order) + 1
    table = {}
    e = 1
    for j in range(s):
        table.setdefault(e, j)
        e = F.mul(e, g)
    factor = F.inv(F.pow(g, s))
    y = h
    for i in range(s + 1):
        if y in table:
            return (i * s + table[y]) % order
        y = F.mul(y, factor)
    raise FieldError("discrete log failed")  # pragma: no cover


@functools.lru_cache(maxsize=None)
def field(p: int, n: int) -> GF:
    """Cached constructor; fields are immutable after construction."""
    return GF(p, n)


# ---------------------------------------------------------------------------
# univariate polynomials over a GF (dense lists, low degree first)


def ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def padd(F: GF, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    add = F.add
    for i, y in enumerate(b):
        out[i] = add(out[i], y)
    return ptrim(out)


def psub(F: GF, a: Sequence[int], b: Sequence[int]) -> list[int]:
    return padd(F, a, [F.neg(y) for y in b])


def pscale(F: GF, a: Sequence[int], c: int) -> list[int]:
    mul = F.mul
    return ptrim([mul(c, x) for x in a])


def pmul(F: GF, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    add, mul = F.add, F.mul
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add(out[i + j], mul(x, y))
    return ptrim(out)


def pdivmod(F: GF, a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    b = ptrim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = ptrim(list(a))
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    inv_lead = F.inv(b[-1])
    qt = [0] * (len(r) - db)
    add, mul, neg = F.add, F.mul, F.neg
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        c = mul(r[-1], inv_lead)
        qt[shift] = c
        nc = neg(c)
        for i, y in enumerate(b):
            if y:
                r[shift + i] = add(r[shift + i], mul(nc, y))
        ptrim(r)
    return ptrim(qt), r


def pmod(F: GF, a: Sequence[int], b: Sequence[int]) -> list[int]:
    return pdivmod(F, a, b)[1]


def pmonic(F: GF, a: Sequence[int]) -> list[int]:
    a = ptrim(list(a))
    if not a:
        return a
    return pscale(F, a, F.inv(a[-1]))


def pgcd(F: GF, a: Sequence[int], b: Sequence[int]) -> list[int]:
    a, b = ptrim(list(a)), ptrim(list(b))
    while b:
        a, b = b, pmod(F, a, b)
    return pmonic(F, a)


def peval(F: GF, a: Sequence[int], x: int) -> int:
    r = 0
    add, mul = F.add, F.mul
    for c in reversed(a):
        r = add(mul(r, x), c)
    return r


def ppowmod(F: GF, a: Sequence[int], e: int, m: Sequence[int]) -> list[int]:
    result = [1]
    base = pmod(F, a, m)
    while e:
        if e & 1:
            result = pmod(F, pmul(F, result, base), m)
        base = pmod(F, pmul(F, base, base), m)
        e >>= 1
    return result


def pfrob_x(F: GF, m: Sequence[int], k: int) -> list[int]:
    """x^(|F|^k) mod m."""
    r = [0, 1]
    for _ in range(k):
        r = ppowmod(F, r, F.order, m)
    return r


def _compose_mod(F: GF, a: Sequence[int], b: Sequence[int], m: Sequence[int]) -> list[int]:
    """a(b(x)) mod m."""
    r: list[int] = []
    for c in reversed(a):
        r = padd(F, pmod(F, pmul(F, r, b), m), [c] if c else [])
    return r


def proots(F: GF, f: Sequence[int]) -> list[int]:
    """Distinct roots of f in F, sorted."""
    f = pmonic(F, f)
    if len(f) <= 1:
        return []
    xq = ppowmod(F, [0, 1], F.order, f)
    g = pgcd(F, f, psub(F, xq, [0, 1]))
    roots: list[int] = []
    _split_linear(F, g, roots, random.Random(len(g) * 7919 + F.order))
    return sorted(roots)


def _split_linear(F: GF, g: list[int], out: list[int], rng: random.Random) -> None:
    d = len(g) - 1
    if d <= 0:
        return
    if d == 1:
        out.append(F.neg(F.div(g[0], g[1])))
        return
    while True:
        if F.p == 2:
            beta = F.random(rng, nonzero=True)
            t = [0, beta]
            acc = list(t)
            for _ in range(F.n - 1):
                t = pmod(F, pmul(F, t, t), g)
                acc = padd(F, acc, t)
            h = pgcd(F, g, acc)
        else:
            delta = F.random(rng)
            h = ppowmod(F, [delta, 1], (F.order - 1) // 2, g)
            h = pgcd(F, g, psub(F, h, [1]))
        if 0 < len(h) - 1 < d:
            _split_linear(F, h, out, rng)
            _split_linear(F, pdivmod(F, g, h)[0], out, rng)
            return


def pfactor_degrees(F: GF, f: Sequence[int]) -> list[tuple[int, list[int]]]:
    """Distinct-degree factorization of a squarefree-part-agnostic monic f.

    Returns (degree, product of irreducible factors of that degree) pairs,
    computed on the squarefree decomposition of f; repeated factors are
    reported once per distinct irreducible.
    """
    f = pmonic(F, f)
    f = _squarefree_part(F, f)
    out = []
    h = [0, 1]
    d = 0
    while len(f) - 1 > 0:
        d += 1
        if 2 * d > len(f) - 1:
            out.append((len(f) - 1, f))
            break
        h = ppowmod(F, h, F.order, f)
        g = pgcd(F, f, psub(F, h, [0, 1]))
        if len(g) > 1:
            out.append((d, g))
            f = pdivmod(F, f, g)[0]
            h = pmod(F, h, f)
    return out


def pderiv(F: GF, f: Sequence[int]) -> list[int]:
    return ptrim([F.mul(F.scalar(i), c) for i, c in enumerate(f)][1:])


def _squarefree_part(F: GF, f: list[int]) -> list[int]:
    """Product of the distinct monic irreducible factors of f."""
    if len(f) <= 1:
        return f
    df = pderiv(F, f)
    if not df:
        # f = g(x^p); take the p-th root coefficientwise
        p = F.p
        g = [F.frob(f[i], F.n - 1) for i in range(0, len(f), p)]
        return _squarefree_part(F, g)
    g = pgcd(F, f, df)
    rad = pdivmod(F, f, g)[0]
    if len(g) == 1:
        return pmonic(F, f)
    rest = _squarefree_part(F, g)
    # radical = lcm(rad, rest)
    common = pgcd(F, rad, rest)
    return pmonic(F, pmul(F, rad, pdivmod(F, rest, common)[0]))


# ---------------------------------------------------------------------------
# compatible embeddings


class _FpSpan:
    """Echelon basis for F_p-linear relations among field elements."""

    def __init__(self, F: GF, vectors: Sequence[int]):
        self.F = F
        self.k = len(vectors)
        p = F.p
        rows = []
        for i, v in enumerate(vectors):
            rows.append((F.to_digits(v) if p != 2 else v, [1 if j == i else 0 for j in range(self.k)]))
        self.pivots: list[tuple[int, object, list[int]]] = []
        for vec, comb in rows:
            vec, comb = self._reduce(vec, comb)
            piv = self._lead(vec)
            if piv is None:
                raise FieldError("vectors are dependent")
            self.pivots.append((piv, vec, comb))

    def _lead(self, vec):
        if self.F.p == 2:
            return vec.bit_length() - 1 if vec else None
        for i in range(len(vec) - 1, -1, -1):
            if vec[i]:
                return i
        return None

    def _reduce(self, vec, comb):
        p = self.F.p
        for piv, pv, pc in self.pivots:
            if p == 2:
                if (vec >> piv) & 1:
                    vec ^= pv
                    comb = [(a + b) % 2 for a, b in zip(comb, pc)]
            else:
                c = vec[piv]
                if c:
                    f = c * pow(pv[piv], p - 2, p) % p
                    vec = [(a - f * b) % p for a, b in zip(vec, pv)]
                    comb = [(a - f * b) % p for a, b in zip(comb, pc)]
        return vec, comb

    def express(self, y: int) -> list[int] | None:
        p = self.F.p
        vec = y if p == 2 else self.F.to_digits(y)
        comb = [0] * self.k
        vec, comb = self._reduce(vec, comb)
        if (vec if p == 2 else any(vec)):
            return None
        return [(-c) % p for c in comb]


class Embedding:
    """Field homomorphism F_{p^m} -> F_{p^n} sending x to `image`."""

    def __init__(self, src: GF, dst: GF, image: int):
        self.src, self.dst, self.image = src, dst, image
        pw = [1]
        for _ in range(1, src.n):
            pw.append(dst.mul(pw[-1], image))
        self._powers = pw
        self._span: _FpSpan | None = None

    def __call__(self, a: int) -> int:
        if a < self.src.p:
            return a
        dst = self.dst
        if dst.p == 2:
            r = 0
            i = 0
            while a:
                if a & 1:
                    r ^= self._powers[i]
                a >>= 1
                i += 1
            return r
        r = 0
        for d, pw in zip(self.src.to_digits(a), self._powers):
            if d:
                r = dst.add(r, dst.mul(d, pw))
        return r

    def preimage(self, b: int) -> int:
        """Inverse on the image; raises FieldError outside it."""
        if b < self.dst.p:
            return b
        if self._span is None:
            self._span = _FpSpan(self.dst, self._powers)
        c = self._span.express(b)
        if c is None:
            raise FieldError("element not in the subfield")
        return self.src.from_digits(c)

    def contains(self, b: int) -> bool:
        return self.dst.frob(b, self.src.n) == b


@functools.lru_cache(maxsize=None)
def embedding(p: int, m: int, n: int) -> Embedding:
    """The canonical compatible embedding F_{p^m} -> F_{p^n} (m | n).

    The image of x is the smallest root of the degree-m modulus that agrees
    with the already chosen embeddings of every maximal proper subfield.
    """
    if n % m:
        raise FieldError(f"F_{p}^{m} does not embed in F_{p}^{n}")
    src, dst = field(p, m), field(p, n)
    if m == 1:
        return Embedding(src, dst, 0)
    if m == n:
        return Embedding(src, dst, src.p)
    mod = list(src.modulus)
    roots = proots(dst, mod)
    constraints = []
    for ell in factorint(m):
        mp = m // ell
        inner = embedding(p, mp, m)
        outer = embedding(p, mp, n)
        if mp == 1:
            continue
        poly = src.to_digits(inner.image)
        constraints.append((ptrim(list(poly)), outer.image))
    for rho in roots:
        if all(peval(dst, c, rho) == target for c, target in constraints):
            return Embedding(src, dst, rho)
    raise FieldError("no compatible embedding")  # pragma: no cover


def embed(a: int, src: GF, dst: GF) -> int:
    if src == dst:
        return a
    return embedding(src.p, src.n, dst.n)(a)


def restrict(b: int, src: GF, dst: GF) -> int:
    """Inverse of embed: b in dst lying in the subfield src."""
    if src == dst:
        return b
    return embedding(src.p, src.n, dst.n).preimage(b)


def minimal_field(F: GF, values: Sequence[int]) -> tuple[GF, list[int]]:
    """Smallest subfield containing all values, and the values restricted to it."""
    d = 1
    for v in values:
        d = math.lcm(d, F.element_degree(v))
    K = field(F.p, d)
    return K, [restrict(v, K, F) for v in values]
