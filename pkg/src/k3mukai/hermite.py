"""Exact integer row reduction for small lattices.

Matrices here are tiny (rank at most three) and live on plain Python
integers, so there is no precision or overflow concern.  Rows are tuples;
the normal form is canonical, which makes every lattice basis produced by
this package reproducible across runs.
"""

from __future__ import annotations


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and g == a*x + b*y."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


def row_hermite(rows) -> list[tuple[int, ...]]:
    """Canonical row Hermite normal form of an integer matrix.

    Pivots are positive, entries above a pivot are reduced into [0, pivot),
    and zero rows are dropped.  The result depends only on the row span.
    """
    mat = [list(row) for row in rows]
    if not mat:
        return []
    ncols = len(mat[0])
    top = 0
    for col in range(ncols):
        found = next((i for i in range(top, len(mat)) if mat[i][col]), None)
        if found is None:
            continue
        mat[top], mat[found] = mat[found], mat[top]
        for i in range(top + 1, len(mat)):
            a, b = mat[top][col], mat[i][col]
            if b == 0:
                continue
            g, x, y = xgcd(a, b)
            # the 2x2 row operation [[x, y], [-b/g, a/g]] has determinant one
            rt, ri = mat[top], mat[i]
            mat[top] = [x * p + y * q for p, q in zip(rt, ri)]
            mat[i] = [(a // g) * q - (b // g) * p for p, q in zip(rt, ri)]
        if mat[top][col] < 0:
            mat[top] = [-e for e in mat[top]]
        pivot = mat[top][col]
        for i in range(top):
            q = mat[i][col] // pivot
            if q:
                mat[i] = [p - q * t for p, t in zip(mat[i], mat[top])]
        top += 1
        if top == len(mat):
            break
    return [tuple(row) for row in mat[:top]]


def kernel_of_functional(coeffs) -> list[tuple[int, ...]]:
    """Canonical basis (as rows) of {x in Z^n : coeffs . x = 0}.

    Column operations reduce the functional to (g, 0, ..., 0); the images
    of the remaining coordinate directions then span the full integer
    kernel, which is returned in row Hermite normal form.
    """
    n = len(coeffs)
    a = list(coeffs)
    if not any(a):
        raise ValueError("functional is zero; kernel is the whole lattice")
    cols = [[int(i == j) for i in range(n)] for j in range(n)]
    for j in range(1, n):
        if a[j] == 0:
            continue
        g, x, y = xgcd(a[0], a[j])
        q0, qj = a[0] // g, a[j] // g
        c0, cj = cols[0], cols[j]
        cols[0] = [x * p + y * q for p, q in zip(c0, cj)]
        cols[j] = [q0 * q - qj * p for p, q in zip(c0, cj)]
        a[0], a[j] = g, 0
    return row_hermite(cols[1:])
