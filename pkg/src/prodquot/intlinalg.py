"""Exact integer linear algebra on lists of lists of Python ints.

Matrices are plain ``list[list[int]]`` (row-major).  A matrix with zero rows
is ``[]``; its column count is then passed explicitly where it matters.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import ContainmentError, RankError

Matrix = list  # list[list[int]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def shape(A: Matrix, cols: int | None = None) -> tuple[int, int]:
    if A:
        return len(A), len(A[0])
    return 0, cols or 0


def matmul(A: Matrix, B: Matrix, inner: int | None = None, cols: int | None = None) -> Matrix:
    if not A:
        return []
    if not B:
        return zeros(len(A), cols or 0)
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def transpose(A: Matrix) -> Matrix:
    return [list(c) for c in zip(*A)]


def diag(values: Sequence[int], rows: int | None = None, cols: int | None = None) -> Matrix:
    rows = len(values) if rows is None else rows
    cols = len(values) if cols is None else cols
    D = zeros(rows, cols)
    for i, v in enumerate(values):
        D[i][i] = v
    return D


def determinant(A: Matrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _smith(A: Matrix, cols: int | None = None):
    """Return ``(D, P, Pinv, Q, Qinv)`` with ``P A Q = D``."""
    m, n = shape(A, cols)
    D = [list(r) for r in A]
    P, Pinv = identity(m), identity(m)
    Q, Qinv = identity(n), identity(n)

    def swap_rows(i, j):
        if i == j:
            return
        D[i], D[j] = D[j], D[i]
        P[i], P[j] = P[j], P[i]
        for row in Pinv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        if i == j:
            return
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in Q:
            row[i], row[j] = row[j], row[i]
        Qinv[i], Qinv[j] = Qinv[j], Qinv[i]

    def add_row(src, dst, c):
        # row_dst += c * row_src
        D[dst] = [a + c * b for a, b in zip(D[dst], D[src])]
        P[dst] = [a + c * b for a, b in zip(P[dst], P[src])]
        for row in Pinv:
            row[src] -= c * row[dst]

    def add_col(src, dst, c):
        # col_dst += c * col_src
        for row in D:
            row[dst] += c * row[src]
        for row in Q:
            row[dst] += c * row[src]
        Qinv[src] = [a - c * b for a, b in zip(Qinv[src], Qinv[dst])]

    def negate_row(i):
        D[i] = [-a for a in D[i]]
        P[i] = [-a for a in P[i]]
        for row in Pinv:
            row[i] = -row[i]

    def pick_pivot(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(D[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        return best

    for t in range(min(m, n)):
        piv = pick_pivot(t)
        if piv is None:
            break
        while True:
            _, i, j = piv
            swap_rows(t, i)
            swap_cols(t, j)
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // p))
                    dirty = dirty or D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // p))
                    dirty = dirty or D[t][j] != 0
            if not dirty:
                bad = next(
                    (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                add_row(bad, t, 1)
            piv = pick_pivot_in_cross(D, t, m, n)
        if D[t][t] < 0:
            negate_row(t)
    return D, P, Pinv, Q, Qinv


def pick_pivot_in_cross(D, t, m, n):
    """Smallest nonzero entry in row t / column t at or past the diagonal."""
    best = None
    for i in range(t, m):
        v = abs(D[i][t])
        if v and (best is None or v < best[0]):
            best = (v, i, t)
    for j in range(t + 1, n):
        v = abs(D[t][j])
        if v and (best is None or v < best[0] or (v == best[0] and t < best[1])):
            best = (v, t, j)
    return best


def smith_normal_form(A: Matrix, cols: int | None = None) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``A = U D V``, ``U`` and ``V`` unimodular.

    ``D`` is diagonal with nonnegative entries ``d1 | d2 | ...``.  The pivot
    at each stage is the entry of least nonzero absolute value, ties broken
    row-major.
    """
    D, _P, Pinv, _Q, Qinv = _smith(A, cols)
    return Pinv, D, Qinv


def smith_diagonal(A: Matrix, cols: int | None = None) -> list[int]:
    D = _smith(A, cols)[0]
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def rank(A: Matrix) -> int:
    return sum(1 for d in smith_diagonal(A) if d)


def kernel_basis(A: Matrix, cols: int) -> Matrix:
    """Columns spanning ``{v in Z^cols : A v = 0}``."""
    if not A:
        return identity(cols)
    D, _P, _Pinv, Q, _Qinv = _smith(A, cols)
    r = sum(1 for i in range(min(len(D), cols)) if D[i][i])
    return [row[r:] for row in Q]


def lattice_basis(gens: Matrix, dim: int) -> Matrix:
    """A basis (columns) of the lattice spanned by the columns of ``gens``.

    Assumes the spanned lattice has full rank ``dim``.
    """
    if not gens or not gens[0]:
        if dim == 0:
            return []
        raise RankError("generating set spans a lattice of rank 0")
    D, _P, Pinv, _Q, _Qinv = _smith(gens)
    d = [D[i][i] for i in range(min(len(D), len(D[0])))]
    if len(d) < dim or any(x == 0 for x in d[:dim]):
        raise RankError("generators do not span a full-rank lattice")
    return [[Pinv[i][j] * d[j] for j in range(dim)] for i in range(dim)]


def kernel_lattice_mod(A: Matrix, moduli: Sequence[int], cols: int | None = None) -> Matrix:
    """Basis (columns) of ``{v in Z^cols : A v = 0 mod moduli (row-wise)}``."""
    rows, n = shape(A, cols)
    if rows != len(moduli):
        raise ValueError(f"{rows} rows but {len(moduli)} moduli")
    if rows == 0:
        return identity(n)
    aug = [list(A[k]) + [moduli[k] if j == k else 0 for j in range(rows)] for k in range(rows)]
    K = kernel_basis(aug, n + rows)
    gens = [row for row in K[:n]]
    return lattice_basis(gens, n)


def solve_integer(L: Matrix, R: Matrix) -> Matrix:
    """Integer ``X`` with ``L X = R``; raises if some column is not in the lattice."""
    m, n = len(L), len(L[0]) if L else 0
    k = len(R[0]) if R else 0
    aug = [[Fraction(x) for x in L[i]] + [Fraction(x) for x in R[i]] for i in range(m)]
    piv_cols = []
    row = 0
    for c in range(n):
        p = next((i for i in range(row, m) if aug[i][c] != 0), None)
        if p is None:
            raise RankError("lattice basis columns are linearly dependent")
        aug[row], aug[p] = aug[p], aug[row]
        pv = aug[row][c]
        aug[row] = [x / pv for x in aug[row]]
        for i in range(m):
            if i != row and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[row])]
        piv_cols.append(c)
        row += 1
    for i in range(row, m):
        if any(aug[i][n:]):
            raise ContainmentError("generator lies outside the span of the lattice basis")
    X = []
    for i in range(n):
        vals = aug[i][n:]
        if any(v.denominator != 1 for v in vals):
            raise ContainmentError("generator is not an integer combination of the lattice basis")
        X.append([int(v) for v in vals])
    return X if k else [[] for _ in range(n)]


def quotient_structure(L: Matrix, R: Matrix) -> list[int]:
    """Invariant factors (all >= 2) of the finite group ``span(L) / span(R)``."""
    n = len(L[0]) if L else 0
    if n == 0:
        return []
    X = solve_integer(L, R)
    if not X or not X[0]:
        raise RankError("relation lattice has rank 0; quotient is infinite")
    d = smith_diagonal(X)
    if len(d) < n or any(x == 0 for x in d[:n]):
        raise RankError("relation lattice has smaller rank; quotient is infinite")
    return [x for x in d[:n] if x != 1]


def order_of(factors: Sequence[int]) -> int:
    out = 1
    for d in factors:
        out *= d
    return out
