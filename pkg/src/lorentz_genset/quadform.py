"""Diagonal integral quadratic forms Q_n = x1^2 + x2^2 + x3^2 - n*x4^2."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Optional, Sequence

Vector = Sequence[int]


@dataclass(frozen=True)
class Form:
    """The form Q_n of signature (3, 1)."""

    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"form parameter must be a positive integer, got {self.n!r}")

    @property
    def gram(self) -> tuple[tuple[int, ...], ...]:
        return ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, -self.n))


def _n(f: Form | int) -> int:
    return f.n if isinstance(f, Form) else Form(f).n


def pseudolength(f: Form | int, v: Vector) -> int:
    n = _n(f)
    return v[0] * v[0] + v[1] * v[1] + v[2] * v[2] - n * v[3] * v[3]


def bilinear(f: Form | int, v: Vector, w: Vector) -> int:
    n = _n(f)
    return v[0] * w[0] + v[1] * w[1] + v[2] * w[2] - n * v[3] * w[3]


def anisotropy_certificate_mod8(n: int) -> bool:
    """True when n = 7 (mod 8), which rules out nonzero solutions of Q_n = 0.

    A ``False`` result only means this particular test does not apply.
    """
    return n % 8 == 7


def isotropy_witness_search(n: int, bound: int) -> Optional[tuple[int, int, int, int]]:
    """Find a nonzero v in the box |v_i| <= bound with Q_n(v) = 0, or None."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    # v4 = 0 forces v1 = v2 = v3 = 0, so only |v4| >= 1 can give a witness.
    for a4 in range(1, bound + 1):
        target = n * a4 * a4
        for v1 in range(bound, -bound - 1, -1):
            r1 = target - v1 * v1
            if r1 < 0:
                continue
            for v2 in range(bound, -bound - 1, -1):
                r2 = r1 - v2 * v2
                if r2 < 0:
                    continue
                v3 = isqrt(r2)
                if v3 * v3 == r2 and v3 <= bound:
                    return (v1, v2, v3, a4)
    return None
