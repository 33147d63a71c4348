"""Integer and rational matrix routines: HNF, integer kernels, exact elimination.

Matrices are lists of rows unless a function says otherwise.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Vec = list
Mat = list  # list of rows


def columns(m: Mat) -> list[list]:
    return [list(c) for c in zip(*m)] if m else []


def from_columns(cols: Sequence[Sequence], nrows: int) -> Mat:
    if not cols:
        return [[] for _ in range(nrows)]
    return [list(r) for r in zip(*cols)]


def matmul(a: Mat, b: Mat) -> Mat:
    bt = columns(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def integral_vector(v: Sequence) -> list[int]:
    """Scale a rational vector by the lcm of its denominators."""
    den = 1
    for x in v:
        den = math.lcm(den, Fraction(x).denominator)
    return [int(Fraction(x) * den) for x in v]


def primitive_vector(v: Sequence) -> list[int]:
    w = integral_vector(v)
    g = 0
    for x in w:
        g = math.gcd(g, x)
    return [x // g for x in w] if g else w


def hnf(m: Mat) -> tuple[Mat, Mat]:
    """Column-style Hermite normal form.

    Returns (H, U) with U unimodular and H equal to the nonzero columns of M*U:
    H is lower triangular in the echelon sense, pivot rows strictly increase
    from left to right, pivots are positive and entries left of a pivot lie in
    [0, pivot).  The rank is the number of columns of H.
    """
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    cols = [[int(m[i][j]) for i in range(nrows)] for j in range(ncols)]
    ucols = [[int(i == j) for i in range(ncols)] for j in range(ncols)]

    def axpy(dst, src, q):
        # dst -= q * src, on both matrices
        if q:
            a, b = cols[dst], cols[src]
            for r in range(nrows):
                if b[r]:
                    a[r] -= q * b[r]
            a, b = ucols[dst], ucols[src]
            for r in range(ncols):
                if b[r]:
                    a[r] -= q * b[r]

    def swap(i, j):
        cols[i], cols[j] = cols[j], cols[i]
        ucols[i], ucols[j] = ucols[j], ucols[i]

    k = 0
    for i in range(nrows):
        if k == ncols:
            break
        while True:
            nz = [j for j in range(k, ncols) if cols[j][i]]
            if not nz:
                break
            jmin = min(nz, key=lambda j: abs(cols[j][i]))
            swap(k, jmin)
            if len(nz) == 1:
                break
            for j in range(k + 1, ncols):
                if cols[j][i]:
                    axpy(j, k, cols[j][i] // cols[k][i])
        if not cols[k][i]:
            continue
        if cols[k][i] < 0:
            cols[k] = [-x for x in cols[k]]
            ucols[k] = [-x for x in ucols[k]]
        p = cols[k][i]
        for j in range(k):
            axpy(j, k, cols[j][i] // p)
        k += 1
    return from_columns(cols[:k], nrows), from_columns(ucols, ncols)


def hnf_columns(vectors: Sequence[Sequence[int]], dim: int) -> list[list[int]]:
    """HNF basis (as column vectors) of the lattice spanned by `vectors`."""
    if not vectors:
        return []
    h, _ = hnf(from_columns(vectors, dim))
    return columns(h)


def integer_kernel(rows: Sequence[Sequence], dim: int) -> list[list[int]]:
    """Z-basis (column vectors) of {x in Z^dim : r.x = 0 for every row r}."""
    rows = [integral_vector(r) for r in rows if any(r)]
    if not rows:
        return [[int(i == j) for i in range(dim)] for j in range(dim)]
    h, u = hnf(rows)
    rank = len(h[0]) if h and h[0] else 0
    return columns(u)[rank:]


def rref(m: Mat, pivot_order: Sequence[int] | None = None) -> tuple[Mat, list[int]]:
    """Reduced row echelon form over Q.

    `pivot_order` lists column indices in the order they may be chosen as
    pivots; the default is left to right.
    """
    a = [[Fraction(x) for x in row] for row in m]
    if not a:
        return a, []
    ncols = len(a[0])
    order = list(pivot_order) if pivot_order is not None else list(range(ncols))
    pivots = []
    r = 0
    for c in order:
        if r == len(a):
            break
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(m: Mat) -> int:
    return len(rref(m)[1]) if m else 0


def solve(a: Mat, b: Sequence, trailing: bool = False) -> list[Fraction] | None:
    """One exact solution x of a*x = b, or None.

    Free variables are set to zero.  With `trailing`, pivots are taken from
    the last columns first, which pushes the solution onto late coordinates.
    """
    if not a:
        return None if any(b) else []
    n = len(a[0])
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    order = list(range(n - 1, -1, -1)) if trailing else list(range(n))
    red, piv = rref(aug, order + [n])
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(red, piv):
        x[c] = row[n]
    return x


def rational_nullspace(a: Mat, n: int) -> list[list[Fraction]]:
    """Basis of {x : a*x = 0} over Q."""
    if not a:
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    red, piv = rref(a)
    free = [c for c in range(n) if c not in piv]
    out = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, c in zip(red, piv):
            x[c] = -row[f]
        out.append(x)
    return out


def inverse(a: Mat) -> Mat:
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    red, piv = rref(aug, list(range(n)))
    if piv != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def det(a: Mat) -> Fraction:
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    out = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        out *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out
