"""Integral isometries of Q_n: 4x4 integer matrices in SO+(Q_n, Z)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .quadform import bilinear, pseudolength

Matrix = tuple[tuple[int, int, int, int], ...]

IDENTITY: Matrix = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))


class InvalidIsometry(ValueError):
    """Raised when a matrix is not an element of SO+(Q_n, Z)."""


def as_matrix(m: Iterable[Iterable[int]]) -> Matrix:
    rows = tuple(tuple(int(x) for x in row) for row in m)
    if len(rows) != 4 or any(len(r) != 4 for r in rows):
        raise InvalidIsometry("matrix must be 4x4")
    return rows  # type: ignore[return-value]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = tuple(zip(*b))
    return tuple(
        tuple(r[0] * c[0] + r[1] * c[1] + r[2] * c[2] + r[3] * c[3] for c in bt) for r in a
    )  # type: ignore[return-value]


def det4(m: Sequence[Sequence[int]]) -> int:
    # expansion by 2x2 minors of the first two rows
    (a, b, c, d), (e, f, g, h), (i, j, k, l), (mm, nn, o, p) = m
    s0 = a * f - b * e
    s1 = a * g - c * e
    s2 = a * h - d * e
    s3 = b * g - c * f
    s4 = b * h - d * f
    s5 = c * h - d * g
    c5 = k * p - l * o
    c4 = j * p - l * nn
    c3 = j * o - k * nn
    c2 = i * p - l * mm
    c1 = i * o - k * mm
    c0 = i * nn - j * mm
    return s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0


def columns(m: Matrix) -> tuple[tuple[int, ...], ...]:
    return tuple(zip(*m))


def check_matrix(m: Matrix, n: int) -> None:
    """Raise InvalidIsometry naming the first violated condition."""
    cols = columns(m)
    for j in range(3):
        q = pseudolength(n, cols[j])
        if q != 1:
            raise InvalidIsometry(f"column {j + 1} has pseudolength {q}, expected 1")
    q = pseudolength(n, cols[3])
    if q != -n:
        raise InvalidIsometry(f"column 4 has pseudolength {q}, expected {-n}")
    for i in range(4):
        for j in range(i + 1, 4):
            b = bilinear(n, cols[i], cols[j])
            if b != 0:
                raise InvalidIsometry(f"columns {i + 1} and {j + 1} are not orthogonal (B = {b})")
    if m[3][3] < 1:
        raise InvalidIsometry(f"a44 = {m[3][3]} is not positive (reverses time orientation)")
    d = det4(m)
    if d != 1:
        raise InvalidIsometry(f"det = {d}, expected +1")
    # The remaining facts follow from the ones above; checked anyway since they are cheap.
    if any(m[i][3] % n for i in range(3)):
        raise InvalidIsometry(f"right column entries not divisible by {n}")
    a44 = m[3][3]
    if (a44 * a44 - 1) % n:
        raise InvalidIsometry(f"a44^2 = {a44 * a44} is not 1 mod {n}")
    if any(n * m[3][j] ** 2 > a44 * a44 for j in range(3)):
        raise InvalidIsometry("bottom row exceeds a44/sqrt(n)")


@dataclass(frozen=True)
class Isometry:
    """An element of SO+(Q_n, Z), validated on construction."""

    entries: Matrix
    n: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", as_matrix(self.entries))
        check_matrix(self.entries, self.n)

    @classmethod
    def _trusted(cls, entries: Matrix, n: int) -> "Isometry":
        # skips validation; only for products/inverses of valid elements
        obj = object.__new__(cls)
        object.__setattr__(obj, "entries", entries)
        object.__setattr__(obj, "n", n)
        return obj

    @property
    def a44(self) -> int:
        return self.entries[3][3]

    @property
    def right_column(self) -> tuple[int, int, int, int]:
        return tuple(row[3] for row in self.entries)  # type: ignore[return-value]

    def sort_key(self) -> tuple[int, ...]:
        return tuple(x for row in self.entries for x in row)

    def __lt__(self, other: "Isometry") -> bool:
        return (self.n, self.sort_key()) < (other.n, other.sort_key())

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return multiply(self, other)

    def is_identity(self) -> bool:
        return self.entries == IDENTITY

    def to_json(self) -> dict:
        return {"n": self.n, "entries": [list(r) for r in self.entries]}

    @classmethod
    def from_json(cls, data: dict) -> "Isometry":
        return from_matrix(data["entries"], data["n"])

    def __str__(self) -> str:
        width = max(len(str(x)) for row in self.entries for x in row)
        return "\n".join(" ".join(str(x).rjust(width) for x in row) for row in self.entries)


def from_matrix(m: Iterable[Iterable[int]], n: int) -> Isometry:
    return Isometry(as_matrix(m), n)


def identity(n: int) -> Isometry:
    return Isometry._trusted(IDENTITY, n)


def multiply(a: Isometry, b: Isometry) -> Isometry:
    if a.n != b.n:
        raise ValueError(f"cannot multiply isometries of Q_{a.n} and Q_{b.n}")
    return Isometry._trusted(matmul(a.entries, b.entries), a.n)


def inverse(a: Isometry) -> Isometry:
    """Closed form of Q^-1 A^t Q for the diagonal form."""
    m, n = a.entries, a.n
    rows = [[m[j][i] for j in range(3)] + [-n * m[3][i]] for i in range(3)]
    rows.append([-(m[i][3] // n) for i in range(3)] + [m[3][3]])
    return Isometry._trusted(tuple(tuple(r) for r in rows), n)  # type: ignore[arg-type]


def power(a: Isometry, k: int) -> Isometry:
    base = a if k >= 0 else inverse(a)
    result = identity(a.n)
    for _ in range(abs(k)):
        result = multiply(result, base)
    return result


def displacement_cosh(a: Isometry) -> int:
    """cosh of the distance the base point is moved, which is exactly a44."""
    return a.a44


_CATALOG_ROWS: dict[str, Matrix] = {
    "(12)": ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, -1, 0), (0, 0, 0, 1)),
    "(1234)": ((0, 0, 1, 0), (0, 1, 0, 0), (-1, 0, 0, 0), (0, 0, 0, 1)),
    "A": ((-2, -2, 0, 7), (-5, -2, 0, 14), (0, 0, -1, 0), (-2, -1, 0, 6)),
    "A^-1": ((-2, -5, 0, 14), (-2, -2, 0, 7), (0, 0, -1, 0), (-1, -2, 0, 6)),
    "B": ((0, -1, 0, 0), (-8, 0, 0, 21), (0, 0, -1, 0), (-3, 0, 0, 8)),
    "B^-1": ((0, -8, 0, 21), (-1, 0, 0, 0), (0, 0, -1, 0), (0, -3, 0, 8)),
    "C": ((-4, -3, -2, 14), (-3, -4, -2, 14), (-2, -2, 0, 7), (-2, -2, -1, 8)),
    "D": ((-4, -3, -2, 14), (-9, -4, -4, 28), (-4, -2, -3, 14), (-4, -2, -2, 13)),
    "D^-1": ((-4, -9, -4, 28), (-3, -4, -2, 14), (-2, -4, -3, 14), (-2, -4, -2, 13)),
    "E": ((-7, -8, 0, 28), (-8, -7, 0, 28), (0, 0, -1, 0), (-4, -4, 0, 15)),
    "F": ((-10, -12, -10, 49), (-2, -4, -3, 14), (-3, -4, -2, 14), (-4, -5, -4, 20)),
    "F^-1": ((-10, -2, -3, 28), (-12, -4, -4, 35), (-10, -3, -2, 28), (-7, -2, -2, 20)),
}

CATALOG_NAMES = tuple(_CATALOG_ROWS)


def reference_catalog() -> dict[str, Isometry]:
    """The twelve published elements of SO+(Q_7, Z), validated."""
    return {name: Isometry(rows, 7) for name, rows in _CATALOG_ROWS.items()}
