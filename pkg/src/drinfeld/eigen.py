"""Simultaneous eigensystems of commuting matrices over a finite field."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence

from .fields import GF, embed, field, minimal_field, pfactor_degrees, proots
from .linalg import Matrix, charpoly, commute, identity, mat_sub, mat_map, nullspace, restrict_operator, transpose, mat_mul


class NonCommuting(ArithmeticError):
    pass


@dataclass(frozen=True)
class CanonicalValue:
    """A finite-field element recorded in the smallest field containing it."""

    p: int
    n: int
    value: int

    @classmethod
    def of(cls, F: GF, x: int) -> CanonicalValue:
        K, (v,) = minimal_field(F, [x])
        return cls(K.p, K.n, v)

    def to_json(self) -> dict:
        K = field(self.p, self.n)
        return {"field_degree": self.n, "digits": K.to_digits(self.value)}


def splitting_degree_of(F: GF, mats: Sequence[Matrix]) -> int:
    """Degree over F of a field containing every eigenvalue of every matrix."""
    deg = 1
    for A in mats:
        if not A:
            continue
        for d, _ in pfactor_degrees(F, charpoly(F, A)):
            deg = math.lcm(deg, d)
    return deg


def eigenvalues(F: GF, A: Matrix) -> list[int]:
    return sorted(set(proots(F, charpoly(F, A))))


def simultaneous_eigensystems(
    F: GF, ops: Mapping[Hashable, Matrix], check: bool = True
) -> tuple[GF, list[tuple[dict, int]]]:
    """Joint eigenvalue tuples of commuting operators with joint eigenspace dimensions.

    Returns the splitting field M and a list of ({label: eigenvalue in M}, dim).
    """
    labels = list(ops)
    mats = [ops[k] for k in labels]
    if check:
        for i in range(len(mats)):
            for j in range(i + 1, len(mats)):
                if not commute(F, mats[i], mats[j]):
                    raise NonCommuting(f"operators {labels[i]} and {labels[j]} do not commute")
    n = len(mats[0]) if mats else 0
    ext = splitting_degree_of(F, mats)
    M = field(F.p, F.n * ext)
    mats_M = [mat_map(A, lambda a: embed(a, F, M)) for A in mats]
    out: list[tuple[dict, int]] = []

    def recurse(idx: int, basis: list[list[int]], acc: dict):
        if idx == len(mats_M):
            out.append((dict(acc), len(basis)))
            return
        B = restrict_operator(M, mats_M[idx], basis)
        for lam in eigenvalues(M, B):
            shifted = mat_sub(M, B, [[lam if i == j else 0 for j in range(len(B))] for i in range(len(B))])
            ker = nullspace(M, shifted)
            if not ker:
                continue
            # back to ambient coordinates
            amb = transpose(mat_mul(M, transpose(basis), transpose(ker)))
            acc[labels[idx]] = lam
            recurse(idx + 1, amb, acc)
            del acc[labels[idx]]

    if n:
        recurse(0, identity(n), {})
    return M, out


def canonical_system(M: GF, system: Mapping[Hashable, int]) -> tuple:
    return tuple(sorted((k, CanonicalValue.of(M, v)) for k, v in system.items()))


def charpoly_multiset(F: GF, A: Matrix) -> tuple:
    """Field-independent fingerprint of the eigenvalue multiset: charpoly coefficients, canonically recorded."""
    return tuple(CanonicalValue.of(F, c) for c in charpoly(F, A))
