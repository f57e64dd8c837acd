"""Dense exact linear algebra over a GF; matrices are lists of row lists of ints."""

from __future__ import annotations

from typing import Callable, Sequence, TypeVar

from .fields import GF, ptrim

Matrix = list[list[int]]
T = TypeVar("T")


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def transpose(A: Matrix) -> Matrix:
    return [list(r) for r in zip(*A)] if A else []


def mat_mul(F: GF, A: Matrix, B: Matrix) -> Matrix:
    add, mul = F.add, F.mul
    Bt = transpose(B)
    out = []
    for row in A:
        nz = [(k, a) for k, a in enumerate(row) if a]
        out_row = []
        for col in Bt:
            s = 0
            for k, a in nz:
                b = col[k]
                if b:
                    s = add(s, mul(a, b))
            out_row.append(s)
        out.append(out_row)
    return out


def mat_vec(F: GF, A: Matrix, v: Sequence[int]) -> list[int]:
    add, mul = F.add, F.mul
    out = []
    for row in A:
        s = 0
        for a, b in zip(row, v):
            if a and b:
                s = add(s, mul(a, b))
        out.append(s)
    return out


def mat_add(F: GF, A: Matrix, B: Matrix) -> Matrix:
    return [[F.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(F: GF, A: Matrix, B: Matrix) -> Matrix:
    return [[F.sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(F: GF, A: Matrix, c: int) -> Matrix:
    return [[F.mul(c, a) for a in r] for r in A]


def mat_map(A: Matrix, f: Callable[[int], int]) -> Matrix:
    return [[f(a) for a in r] for r in A]


def rref(F: GF, A: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = [list(r) for r in A]
    if not M:
        return M, []
    rows, cols = len(M), len(M[0])
    add, mul, neg, inv = F.add, F.mul, F.neg, F.inv
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        ic = inv(M[r][c])
        M[r] = [mul(ic, x) for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = neg(M[i][c])
                Mi, Mr = M[i], M[r]
                M[i] = [add(a, mul(f, b)) if b else a for a, b in zip(Mi, Mr)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def rank(F: GF, A: Matrix) -> int:
    return len(rref(F, A)[1])


def nullspace(F: GF, A: Matrix, ncols: int | None = None) -> list[list[int]]:
    """Basis of {x : A x = 0}."""
    if not A:
        n = ncols or 0
        return identity(n)
    n = len(A[0])
    R, piv = rref(F, A)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for i, pc in enumerate(piv):
            x[pc] = F.neg(R[i][f])
        basis.append(x)
    return basis


def solve(F: GF, A: Matrix, B: Matrix) -> Matrix | None:
    """Some X with A X = B, or None when inconsistent."""
    m = len(A)
    n = len(A[0]) if A else 0
    k = len(B[0]) if B else 0
    aug = [list(A[i]) + list(B[i]) for i in range(m)]
    R, piv = rref(F, aug)
    if any(p >= n for p in piv):
        return None
    X = zeros(n, k)
    for i, pc in enumerate(piv):
        X[pc] = R[i][n:]
    return X


def inverse(F: GF, A: Matrix) -> Matrix:
    n = len(A)
    X = solve(F, A, identity(n))
    if X is None or rank(F, A) < n:
        raise ZeroDivisionError("singular matrix")
    return X


def det(F: GF, A: Matrix) -> int:
    M = [list(r) for r in A]
    n = len(M)
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = F.neg(d)
        d = F.mul(d, M[c][c])
        ic = F.inv(M[c][c])
        for i in range(c + 1, n):
            if M[i][c]:
                f = F.neg(F.mul(M[i][c], ic))
                M[i] = [F.add(a, F.mul(f, b)) for a, b in zip(M[i], M[c])]
    return d


def charpoly(F: GF, A: Matrix) -> list[int]:
    """Monic characteristic polynomial det(xI - A), low degree first (Hessenberg method)."""
    n = len(A)
    H = [list(r) for r in A]
    add, sub, mul, inv = F.add, F.sub, F.mul, F.inv
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if H[i][m - 1]), None)
        if piv is None:
            continue
        if piv != m:
            H[m], H[piv] = H[piv], H[m]
            for r in H:
                r[m], r[piv] = r[piv], r[m]
        ic = inv(H[m][m - 1])
        for i in range(m + 1, n):
            if H[i][m - 1]:
                f = mul(H[i][m - 1], ic)
                H[i] = [sub(a, mul(f, b)) for a, b in zip(H[i], H[m])]
                for r in H:
                    r[m] = add(r[m], mul(f, r[i]))
    # recurrence on leading principal minors
    polys: list[list[int]] = [[1]]
    for k in range(1, n + 1):
        # p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_{ik} * prod_{j=i+1}^{k} h_{j,j-1} * p_{i-1}
        pk = _poly_sub(F, [0] + polys[k - 1], [mul(H[k - 1][k - 1], c) for c in polys[k - 1]])
        t = 1
        for i in range(k - 1, 0, -1):
            t = mul(t, H[i][i - 1])
            if t == 0:
                break
            coef = mul(t, H[i - 1][k - 1])
            if coef:
                pk = _poly_sub(F, pk, [mul(coef, c) for c in polys[i - 1]])
        polys.append(pk)
    out = polys[n]
    return out + [0] * (n + 1 - len(out))


def _poly_sub(F: GF, a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return [F.sub(x, y) for x, y in zip(a, b)]


def is_zero_matrix(A: Matrix) -> bool:
    return all(not any(r) for r in A)


def commute(F: GF, A: Matrix, B: Matrix) -> bool:
    return mat_mul(F, A, B) == mat_mul(F, B, A)


def column_space_basis(F: GF, vectors: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-reduced basis of the span of the given vectors."""
    if not vectors:
        return []
    R, piv = rref(F, [list(v) for v in vectors])
    return [R[i] for i in range(len(piv))]


def coordinates(F: GF, basis: Sequence[Sequence[int]], v: Sequence[int]) -> list[int] | None:
    """c with sum c_i basis_i = v, or None."""
    if not basis:
        return [] if not any(v) else None
    A = transpose([list(b) for b in basis])
    X = solve(F, A, [[x] for x in v])
    return None if X is None else [row[0] for row in X]


def restrict_operator(F: GF, A: Matrix, basis: Sequence[Sequence[int]]) -> Matrix:
    """Matrix of A on the invariant subspace spanned by basis (columns = images)."""
    cols = []
    for b in basis:
        c = coordinates(F, basis, mat_vec(F, A, b))
        if c is None:
            raise ValueError("subspace is not invariant")
        cols.append(c)
    return transpose(cols) if cols else []


def berkowitz(entries: list[list[T]], zero: T, one: T, add, sub, mul) -> list[T]:
    """Division-free characteristic polynomial det(xI - A) over a commutative ring, low degree first."""
    n = len(entries)
    if n == 0:
        return [one]
    # Berkowitz: vectors C_k; polynomial via Toeplitz products
    poly = [one, sub(zero, entries[0][0])]  # high-degree-first representation
    for k in range(1, n):
        R = entries[k][:k]
        S = [entries[i][k] for i in range(k)]
        Akk = entries[k][k]
        A = [row[:k] for row in entries[:k]]
        # column of the Toeplitz matrix: 1, -a_kk, -R S, -R A S, ...
        col = [one, sub(zero, Akk)]
        vec = S
        for _ in range(k):
            dotv = zero
            for r, s in zip(R, vec):
                dotv = add(dotv, mul(r, s))
            col.append(sub(zero, dotv))
            vec = [_dot(row, vec, zero, add, mul) for row in A]
        new = []
        for i in range(k + 2):
            s = zero
            for j in range(len(poly)):
                if 0 <= i - j < len(col):
                    s = add(s, mul(col[i - j], poly[j]))
            new.append(s)
        poly = new
    return list(reversed(poly))


def _dot(a, b, zero, add, mul):
    s = zero
    for x, y in zip(a, b):
        s = add(s, mul(x, y))
    return s


__all__ = [
    "Matrix", "identity", "zeros", "transpose", "mat_mul", "mat_vec", "mat_add", "mat_sub",
    "mat_scale", "mat_map", "rref", "rank", "nullspace", "solve", "inverse", "det", "charpoly",
    "commute", "column_space_basis", "coordinates", "restrict_operator", "berkowitz", "ptrim",
]
