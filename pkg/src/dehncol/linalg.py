"""Exact linear algebra over Z_p and Z.

Matrices are plain lists of lists of Python ints. Everything here is exact;
the matrices that show up in this package are small (tens of rows/columns),
so clarity wins over speed.
"""

from __future__ import annotations

from math import gcd
from typing import List, Sequence, Tuple

Matrix = List[List[int]]


def rref_mod_p(rows: Sequence[Sequence[int]], ncols: int, p: int) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form over Z_p.

    Pivoting is deterministic: columns are scanned left to right and the
    first row (from the current position down) with a nonzero entry is used.
    Returns the nonzero rows of the reduced matrix and the pivot columns.
    """
    a = [[x % p for x in row] for row in rows]
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(a)) if a[i][col]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = pow(a[r][col], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank_mod_p(rows: Sequence[Sequence[int]], ncols: int, p: int) -> int:
    return len(rref_mod_p(rows, ncols, p)[1])


def nullspace_mod_p(rows: Sequence[Sequence[int]], ncols: int, p: int) -> Matrix:
    """Basis of {x : Ax = 0} over Z_p, one vector per free column.

    The returned basis is itself in reduced row echelon form (as the rows of
    a matrix), which makes it canonical for a given solution space.
    """
    red, pivots = rref_mod_p(rows, ncols, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    if not basis:
        return []
    canon, _ = rref_mod_p(basis, ncols, p)
    return canon


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hermite_rows(vectors: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form of an integer matrix (zero rows dropped).

    Pivots are positive and entries above each pivot are reduced into
    [0, pivot). Unimodular, so the row lattice is unchanged.
    """
    a = [list(v) for v in vectors]
    if not a:
        return []
    n = len(a[0])
    r = 0
    for col in range(n):
        # fold every row below r into row r at this column via gcd steps
        for i in range(r + 1, len(a)):
            if a[i][col] == 0:
                continue
            x, y = a[r][col], a[i][col]
            g, s, t = _xgcd(x, y)
            u, v = x // g, y // g
            ra, ri = a[r], a[i]
            a[r] = [s * e + t * f for e, f in zip(ra, ri)]
            a[i] = [-v * e + u * f for e, f in zip(ra, ri)]
        if r < len(a) and a[r][col] != 0:
            if a[r][col] < 0:
                a[r] = [-e for e in a[r]]
            piv = a[r][col]
            for i in range(r):
                q = a[i][col] // piv
                if q:
                    a[i] = [e - q * f for e, f in zip(a[i], a[r])]
            r += 1
            if r == len(a):
                break
    return [row for row in a[:r] if any(row)]


def integer_kernel(matrix: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Z-basis of the lattice {x in Z^n : Mx = 0}.

    Column operations with extended gcd steps reduce M to column echelon
    form while the same operations are accumulated in a unimodular matrix U.
    The columns of U matching zero columns of MU span the kernel lattice
    exactly (not just a finite-index sublattice), so every basis vector is
    primitive. The basis is returned in Hermite normal form for determinism.
    """
    m = [list(row) for row in matrix]
    # work on columns: store A^T and U^T as lists of column vectors
    cols = [[m[i][j] for i in range(len(m))] for j in range(ncols)]
    ucols = [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    k = 0
    for row in range(len(m)):
        if k == ncols:
            break
        for j in range(k + 1, ncols):
            if cols[j][row] == 0:
                continue
            x, y = cols[k][row], cols[j][row]
            g, s, t = _xgcd(x, y)
            u, v = x // g, y // g
            ck, cj = cols[k], cols[j]
            cols[k] = [s * e + t * f for e, f in zip(ck, cj)]
            cols[j] = [-v * e + u * f for e, f in zip(ck, cj)]
            uk, uj = ucols[k], ucols[j]
            ucols[k] = [s * e + t * f for e, f in zip(uk, uj)]
            ucols[j] = [-v * e + u * f for e, f in zip(uk, uj)]
        if cols[k][row] != 0:
            k += 1
    kernel = [ucols[j] for j in range(k, ncols)]
    assert all(not any(c) for c in cols[k:]), "column reduction left a nonzero column"
    return hermite_rows(kernel)


def mat_vec(matrix: Sequence[Sequence[int]], v: Sequence[int]) -> List[int]:
    return [sum(a * b for a, b in zip(row, v)) for row in matrix]


def primitive(v: Sequence[int]) -> List[int]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return list(v)
    return [x // g for x in v]


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
