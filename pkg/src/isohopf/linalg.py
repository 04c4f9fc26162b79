"""Small exact matrices (rational or Gaussian-rational entries) as tuples of row tuples."""

from __future__ import annotations

from typing import Sequence

from .gaussian import to_field
from .poly import QQ

Matrix = tuple  # tuple of row tuples


def mat(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(to_field(x) for x in r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(QQ(1) if i == j else QQ(0) for j in range(n)) for i in range(n))


def zeros(m: int, n: int) -> Matrix:
    return tuple(tuple(QQ(0) for _ in range(n)) for _ in range(m))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(r, c)), QQ(0)) for c in bt) for r in a)


def matvec(a: Matrix, v: Sequence) -> tuple:
    return tuple(sum((x * y for x, y in zip(r, v)), QQ(0)) for r in a)


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def scale(a: Matrix, c) -> Matrix:
    c = to_field(c)
    return tuple(tuple(x * c for x in r) for r in a)


def columns(a: Matrix) -> list[tuple]:
    return list(transpose(a))


def from_columns(cols: Sequence[Sequence]) -> Matrix:
    return transpose(tuple(tuple(to_field(x) for x in c) for c in cols))


def rref(a: Matrix) -> tuple[list[list], list[int]]:
    m = [list(r) for r in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(a)[1])


def det(a: Matrix):
    n = len(a)
    m = [list(r) for r in a]
    d = QQ(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return QQ(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = tuple(tuple(r) + identity(n)[i] for i, r in enumerate(a))
    m, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(r[n:]) for r in m)


def nullspace(a: Matrix) -> list[tuple]:
    """Basis of {v : a v = 0}; free variables set to unit vectors."""
    if not a:
        return []
    cols = len(a[0])
    m, piv = rref(a)
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        v = [QQ(0)] * cols
        v[f] = QQ(1)
        for i, p in enumerate(piv):
            v[p] = -m[i][f]
        basis.append(tuple(v))
    return basis


def solve(a: Matrix, b: Sequence) -> tuple:
    """One solution of a x = b (free variables zero); raises if inconsistent."""
    cols = len(a[0])
    aug = tuple(tuple(r) + (to_field(b[i]),) for i, r in enumerate(a))
    m, piv = rref(aug)
    if cols in piv:
        raise ValueError("inconsistent linear system")
    x = [QQ(0)] * cols
    for i, p in enumerate(piv):
        x[p] = m[i][cols]
    return tuple(x)


def bilinear(B: Matrix, v: Sequence, w: Sequence):
    return sum((v[i] * B[i][j] * w[j] for i in range(len(v)) for j in range(len(w)) if B[i][j]), QQ(0))
