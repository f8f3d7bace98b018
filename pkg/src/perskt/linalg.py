"""Dense linear algebra mod p, sized for desk-scale chain complexes."""

from __future__ import annotations

from typing import List

Matrix = List[List[int]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = 1
    return m


def mat_mul(a: Matrix, b: Matrix, p: int) -> Matrix:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = zeros(rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            if ai[k]:
                f = ai[k]
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        oi[j] = (oi[j] + f * bk[j]) % p
    return out


def _echelon(m: Matrix, p: int) -> tuple:
    """Row-reduce a copy; returns (reduced rows, pivot column list)."""
    a = [row[:] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot_row = next((i for i in range(r, rows) if a[i][c] % p), None)
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] % p:
                f = a[i][c] % p
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Matrix, p: int) -> int:
    if not m or not m[0]:
        return 0
    return len(_echelon(m, p)[1])


def nullspace(m: Matrix, p: int) -> List[List[int]]:
    """Basis of the right kernel, one vector per free column."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if cols == 0:
        return []
    if rows == 0:
        return identity(cols)
    reduced, pivots = _echelon(m, p)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        vec = [0] * cols
        vec[free] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = (-reduced[r][free]) % p
        basis.append(vec)
    return basis
