"""Enumerate every element of SO+(Q_n, Z) whose a44 entry is at most T.

The search runs in three stages:

1. list all pseudolength-1 vectors that can occur as one of the first three
   columns (their fourth coordinate obeys n*v4^2 <= T^2);
2. list all admissible right columns (n*a, n*b, n*c, m) with m <= T and
   a^2 + b^2 + c^2 = (m^2 - 1)/n;
3. for each right column, keep the unit vectors orthogonal to it, join
   mutually orthogonal ones in a graph and read matrices off its triangles.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Optional

from .isometry import Isometry, Matrix, det4
from .quadform import bilinear

Vec4 = tuple[int, int, int, int]


@lru_cache(maxsize=4096)
def three_square_reps(s: int) -> tuple[tuple[int, int, int], ...]:
    """All (x, y, z) in Z^3 with x^2 + y^2 + z^2 = s, in lexicographic order."""
    if s < 0:
        return ()
    out = []
    r = isqrt(s)
    for x in range(-r, r + 1):
        rx = s - x * x
        ry = isqrt(rx)
        for y in range(-ry, ry + 1):
            rz = rx - y * y
            z = isqrt(rz)
            if z * z != rz:
                continue
            if z == 0:
                out.append((x, y, 0))
            else:
                out.append((x, y, -z))
                out.append((x, y, z))
    return tuple(sorted(out))


@dataclass(frozen=True)
class UnitVectorList:
    n: int
    bound_T: int
    vectors: tuple[Vec4, ...]

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)


@dataclass(frozen=True)
class RightColumn:
    n: int
    column: Vec4

    @property
    def m(self) -> int:
        return self.column[3]


def _check_bound(T: int) -> None:
    if T < 1:
        raise ValueError(f"bound T must be >= 1, got {T}")


def enumerate_unit_vectors(n: int, T: int) -> UnitVectorList:
    _check_bound(T)
    vecs: list[Vec4] = []
    top = isqrt(T * T // n)
    for v4 in range(-top, top + 1):
        for x, y, z in three_square_reps(1 + n * v4 * v4):
            vecs.append((x, y, z, v4))
    vecs.sort()
    return UnitVectorList(n, T, tuple(vecs))


def enumerate_right_columns(n: int, T: int) -> list[RightColumn]:
    _check_bound(T)
    cols = []
    for m in range(1, T + 1):
        num = m * m - 1
        if num % n:
            continue
        for a, b, c in three_square_reps(num // n):
            cols.append(RightColumn(n, (n * a, n * b, n * c, m)))
    return cols


def _triangles_for_column(n: int, col: Vec4, units: tuple[Vec4, ...]) -> list[Matrix]:
    m = col[3]
    # every non-right column has n*v4^2 <= m^2 - 1 (bottom-row identity)
    lim = m * m - 1
    cand = [v for v in units if n * v[3] * v[3] <= lim and bilinear(n, v, col) == 0]
    k = len(cand)
    adj: list[set[int]] = [set() for _ in range(k)]
    for i in range(k):
        vi = cand[i]
        for j in range(i + 1, k):
            if bilinear(n, vi, cand[j]) == 0:
                adj[i].add(j)
                adj[j].add(i)
    out: list[Matrix] = []
    for i in range(k):
        for j in adj[i]:
            for l in adj[i] & adj[j]:
                c1, c2, c3 = cand[i], cand[j], cand[l]
                rows = tuple((c1[r], c2[r], c3[r], col[r]) for r in range(4))
                if det4(rows) == 1:
                    out.append(rows)  # type: ignore[arg-type]
    return out


def _column_batch(args: tuple[int, list[Vec4], tuple[Vec4, ...]]) -> list[Matrix]:
    n, cols, units = args
    out: list[Matrix] = []
    for col in cols:
        out.extend(_triangles_for_column(n, col, units))
    return out


def default_threads() -> int:
    return os.cpu_count() or 1


def assemble_isometries(n: int, T: int, threads: Optional[int] = None) -> list[Isometry]:
    """Every element of SO+(Q_n, Z) with a44 <= T, sorted lexicographically.

    ``threads`` > 1 spreads right-column strata over worker processes; the
    result does not depend on it.
    """
    _check_bound(T)
    units = enumerate_unit_vectors(n, T).vectors
    cols = [rc.column for rc in enumerate_right_columns(n, T)]
    threads = default_threads() if threads is None else threads
    found: set[Matrix] = set()
    if threads <= 1 or len(cols) < 2 * threads:
        found.update(_column_batch((n, cols, units)))
    else:
        # interleave so each batch gets a mix of cheap and expensive strata
        batches = [(n, cols[i::threads * 4], units) for i in range(threads * 4)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_column_batch, batches):
                found.update(part)
    return [Isometry._trusted(m, n) for m in sorted(found)]


def strata_counts(elements: list[Isometry]) -> dict[int, int]:
    counts: dict[int, int] = {}
    for g in elements:
        counts[g.a44] = counts.get(g.a44, 0) + 1
    return dict(sorted(counts.items()))
