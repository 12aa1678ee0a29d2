"""Exact integer linear algebra on small matrices (tuples of Python ints)."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

Vec = tuple[int, ...]
Mat = tuple[tuple[int, ...], ...]


def identity(n: int) -> Mat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_vec(M: Mat, v: Sequence[int]) -> Vec:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in M)


def mat_mul(A: Mat, B: Mat) -> Mat:
    cols = list(zip(*B)) if B else []
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def vec_add(u: Sequence[int], v: Sequence[int]) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence[int], v: Sequence[int]) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(k: int, v: Sequence[int]) -> Vec:
    return tuple(k * a for a in v)


def det(M: Mat) -> int:
    """Bareiss fraction-free determinant."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def content(v: Sequence[int]) -> int:
    return reduce(gcd, (abs(x) for x in v), 0)


def primitive(v: Sequence[int]) -> Vec:
    """Divide by the content and make the first nonzero entry positive."""
    g = content(v)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    w = [x // g for x in v]
    for x in w:
        if x != 0:
            if x < 0:
                w = [-y for y in w]
            break
    return tuple(w)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    return _xgcd(a, b)


def _echelon(rows: list[list[int]], ncols: int, track: list[list[int]] | None = None) -> int:
    """In-place integer row echelon form using unimodular row operations.

    ``track`` rows receive the same operations. Returns the rank.
    """
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        if track is not None:
            track[r], track[piv] = track[piv], track[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c] == 0:
                continue
            a, b = rows[r][c], rows[i][c]
            g, x, y = _xgcd(a, b)
            ua, ub = a // g, b // g
            # [x y; -ub ua] has determinant 1.
            R, S = rows[r], rows[i]
            rows[r] = [x * p + y * q for p, q in zip(R, S)]
            rows[i] = [-ub * p + ua * q for p, q in zip(R, S)]
            if track is not None:
                R, S = track[r], track[i]
                track[r] = [x * p + y * q for p, q in zip(R, S)]
                track[i] = [-ub * p + ua * q for p, q in zip(R, S)]
        r += 1
        if r == len(rows):
            break
    return r


def hnf_rows(vectors: Sequence[Sequence[int]], ncols: int) -> list[Vec]:
    """Row-style Hermite normal form basis of the lattice spanned by ``vectors``."""
    rows = [list(v) for v in vectors]
    rank = _echelon(rows, ncols)
    rows = rows[:rank]
    pivots = []
    for i, row in enumerate(rows):
        c = next(j for j in range(ncols) if row[j] != 0)
        if row[c] < 0:
            rows[i] = row = [-x for x in row]
        pivots.append(c)
        for k in range(i):
            q = rows[k][c] // row[c]
            if q:
                rows[k] = [a - q * b for a, b in zip(rows[k], row)]
    return [tuple(r) for r in rows]


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[Vec]:
    """HNF basis of {x in Z^ncols : R x = 0}."""
    if ncols == 0:
        return []
    # Echelonize R^T while tracking the unimodular transform.
    T = [[rows[i][j] for i in range(len(rows))] for j in range(ncols)]
    U = [list(r) for r in identity(ncols)]
    rank = _echelon(T, len(rows), U) if rows else 0
    kernel = U[rank:]
    return hnf_rows(kernel, ncols) if kernel else []


def rank(rows: Sequence[Sequence[int]]) -> int:
    if not rows:
        return 0
    return _echelon([list(r) for r in rows], len(rows[0]))


def solve(B: Mat, v: Sequence[int]) -> tuple[Fraction, ...]:
    """Solve B u = v over Q for square invertible B (Gauss-Jordan on Fractions)."""
    n = len(B)
    A = [[Fraction(x) for x in row] + [Fraction(v[i])] for i, row in enumerate(B)]
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        A[c], A[piv] = A[piv], A[c]
        pv = A[c][c]
        A[c] = [x / pv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return tuple(A[i][n] for i in range(n))


def solve_integer(B: Mat, v: Sequence[int]) -> Vec:
    sol = solve(B, v)
    if any(x.denominator != 1 for x in sol):
        raise ValueError(f"{tuple(v)} is not in the lattice spanned by the columns")
    return tuple(int(x) for x in sol)


def transpose(M: Sequence[Sequence[int]]) -> Mat:
    return tuple(zip(*M)) if M else ()
