"""Slow, independent reference implementations for differential testing.

Nothing here imports the fast enumeration or matrix code; keep it that way so
disagreements point at real bugs.
"""

from __future__ import annotations

from itertools import product
from math import isqrt

from .isometry import Isometry

MAX_EXHAUSTIVE_T = 8


def _q(v, n):
    return v[0] ** 2 + v[1] ** 2 + v[2] ** 2 - n * v[3] ** 2


def _b(v, w, n):
    return v[0] * w[0] + v[1] * w[1] + v[2] * w[2] - n * v[3] * w[3]


def naive_unit_vectors(n: int, T: int) -> list[tuple[int, int, int, int]]:
    if T < 1:
        raise ValueError("T must be >= 1")
    r = isqrt(T * T + 1)
    v4_range = [a for a in range(-T, T + 1) if n * a * a <= T * T]
    out = []
    for a, b, c in product(range(-r, r + 1), repeat=3):
        for d in v4_range:
            if a * a + b * b + c * c - n * d * d == 1:
                out.append((a, b, c, d))
    return sorted(out)


def _cofactor_det(m: list[list[int]]) -> int:
    if len(m) == 1:
        return m[0][0]
    total = 0
    for j, x in enumerate(m[0]):
        if x:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * x * _cofactor_det(minor)
    return total


def naive_membership(m, n: int) -> bool:
    """Check A^t Q A = Q, a44 > 0 and det A = 1 directly."""
    a = [list(map(int, row)) for row in m]
    if len(a) != 4 or any(len(row) != 4 for row in a):
        return False
    q = [1, 1, 1, -n]
    for i in range(4):
        for j in range(4):
            s = sum(a[k][i] * q[k] * a[k][j] for k in range(4))
            if s != (q[i] if i == j else 0):
                return False
    return a[3][3] > 0 and _cofactor_det(a) == 1


def naive_right_columns(n: int, T: int) -> list[tuple[int, int, int, int]]:
    """Every integer vector of pseudolength -n with 1 <= v4 <= T (no divisibility filter)."""
    out = []
    for m in range(1, T + 1):
        r = isqrt(n * (m * m - 1)) + 1
        for a, b, c in product(range(-r, r + 1), repeat=3):
            v = (a, b, c, m)
            if _q(v, n) == -n:
                out.append(v)
    return sorted(out)


def exhaustive_small_assembly(n: int, T: int) -> list[Isometry]:
    """Try every ordered triple of unit vectors against every right column.

    Loops are nested with early rejection of non-orthogonal prefixes; the
    survivors go through ``naive_membership``.
    """
    if T > MAX_EXHAUSTIVE_T:
        raise ValueError(f"exhaustive assembly is limited to T <= {MAX_EXHAUSTIVE_T}")
    units = naive_unit_vectors(n, T)
    found = set()
    for col in naive_right_columns(n, T):
        for c1 in units:
            if _b(c1, col, n):
                continue
            for c2 in units:
                if _b(c2, col, n) or _b(c1, c2, n):
                    continue
                for c3 in units:
                    if _b(c3, col, n) or _b(c1, c3, n) or _b(c2, c3, n):
                        continue
                    rows = [[c1[i], c2[i], c3[i], col[i]] for i in range(4)]
                    if naive_membership(rows, n):
                        found.add(tuple(tuple(r) for r in rows))
    return [Isometry(m, n) for m in sorted(found)]
