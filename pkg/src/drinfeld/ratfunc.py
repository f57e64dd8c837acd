"""Exact rational functions F(x) over a finite field, with valuations at 0 and infinity."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .fields import GF, padd, pdivmod, pgcd, pmul, pscale, psub, ptrim


@dataclass(frozen=True)
class RatFunc:
    F: GF
    num: tuple[int, ...]
    den: tuple[int, ...]

    def __post_init__(self):
        F = self.F
        num, den = ptrim(list(self.num)), ptrim(list(self.den))
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            num, den = [], [1]
        else:
            g = pgcd(F, num, den)
            if len(g) > 1:
                num = pdivmod(F, num, g)[0]
                den = pdivmod(F, den, g)[0]
            lc = F.inv(den[-1])
            num, den = pscale(F, num, lc), pscale(F, den, lc)
        object.__setattr__(self, "num", tuple(num))
        object.__setattr__(self, "den", tuple(den))

    @classmethod
    def poly(cls, F: GF, coeffs: Sequence[int]) -> RatFunc:
        return cls(F, tuple(coeffs), (1,))

    @classmethod
    def const(cls, F: GF, c: int) -> RatFunc:
        return cls(F, (c,), (1,))

    @classmethod
    def monomial(cls, F: GF, c: int, k: int) -> RatFunc:
        """c * x^k for any integer k."""
        if k >= 0:
            return cls(F, (0,) * k + (c,), (1,))
        return cls(F, (c,), (0,) * (-k) + (1,))

    def is_zero(self) -> bool:
        return not self.num

    def __add__(self, o: RatFunc) -> RatFunc:
        F = self.F
        return RatFunc(F, tuple(padd(F, pmul(F, self.num, o.den), pmul(F, o.num, self.den))), tuple(pmul(F, self.den, o.den)))

    def __neg__(self) -> RatFunc:
        return RatFunc(self.F, tuple(self.F.neg(c) for c in self.num), self.den)

    def __sub__(self, o: RatFunc) -> RatFunc:
        return self + (-o)

    def __mul__(self, o: RatFunc) -> RatFunc:
        F = self.F
        return RatFunc(F, tuple(pmul(F, self.num, o.num)), tuple(pmul(F, self.den, o.den)))

    def inv(self) -> RatFunc:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.F, self.den, self.num)

    def __truediv__(self, o: RatFunc) -> RatFunc:
        return self * o.inv()

    def __pow__(self, e: int) -> RatFunc:
        if e < 0:
            return self.inv() ** (-e)
        r = RatFunc.const(self.F, 1)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def frob(self, k: int) -> RatFunc:
        """Apply x -> x^(p^k) to the coefficients (the field automorphism of F fixed on x)."""
        F = self.F
        return RatFunc(F, tuple(F.frob(c, k) for c in self.num), tuple(F.frob(c, k) for c in self.den))

    def val0(self) -> int:
        """Order of vanishing at x = 0."""
        if self.is_zero():
            raise ValueError("valuation of zero")
        return _ord0(self.num) - _ord0(self.den)

    def deg(self) -> int:
        """deg num - deg den (minus the valuation at infinity)."""
        if self.is_zero():
            raise ValueError("degree of zero")
        return (len(self.num) - 1) - (len(self.den) - 1)

    def limit_infinity(self) -> int:
        """Value at x = infinity; raises when it diverges."""
        if self.is_zero():
            return 0
        d = self.deg()
        if d > 0:
            raise ArithmeticError("diverges at infinity")
        if d < 0:
            return 0
        return self.F.div(self.num[-1], self.den[-1])

    def substitute_power(self, e: int) -> RatFunc:
        """f(x^e)."""
        def spread(c):
            out = [0] * ((len(c) - 1) * e + 1) if c else []
            for i, a in enumerate(c):
                out[i * e] = a
            return tuple(out)

        return RatFunc(self.F, spread(self.num), spread(self.den))

    def evaluate(self, x: int) -> int:
        from .fields import peval

        d = peval(self.F, self.den, x)
        if d == 0:
            raise ZeroDivisionError("pole")
        return self.F.div(peval(self.F, self.num, x), d)

    def to_json(self) -> dict:
        return {"num": [self.F.to_digits(c) for c in self.num], "den": [self.F.to_digits(c) for c in self.den]}


def _ord0(c: Sequence[int]) -> int:
    for i, a in enumerate(c):
        if a:
            return i
    raise ValueError("zero polynomial")


__all__ = ["RatFunc", "psub"]
