"""Exact geometry of the projective chart u_i = x_i / x_4.

The upper sheet {Q_n(x) = -1, x_4 > 0} maps onto the open ball |u|^2 < n.
The base point (0, 0, 0, n^-1/2) goes to the origin, and the bisector between
the origin and g(origin) is a plane with integer coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .isometry import Isometry

ChartPoint = tuple[Fraction, Fraction, Fraction]

ORIGIN: ChartPoint = (Fraction(0), Fraction(0), Fraction(0))


def chart_point(*coords) -> ChartPoint:
    if len(coords) == 1:
        coords = tuple(coords[0])
    if len(coords) != 3:
        raise ValueError("chart points have three coordinates")
    return tuple(Fraction(c) for c in coords)  # type: ignore[return-value]


def norm_sq(u: Sequence[Fraction]) -> Fraction:
    return u[0] * u[0] + u[1] * u[1] + u[2] * u[2]


def in_ball(u: Sequence[Fraction], n: int) -> bool:
    return norm_sq(u) < n


@dataclass(frozen=True)
class HalfSpace:
    """The closed region {u : normal . u <= rhs}."""

    normal: tuple[int, int, int]
    rhs: int

    def __post_init__(self) -> None:
        if not any(self.normal):
            raise ValueError("half-space normal must be nonzero")

    def margin(self, u: Sequence[Fraction]) -> Fraction:
        h = self.normal
        return self.rhs - (h[0] * u[0] + h[1] * u[1] + h[2] * u[2])

    def reduced(self) -> "HalfSpace":
        g = gcd(*self.normal, self.rhs)
        if g == 1:
            return self
        return HalfSpace(tuple(x // g for x in self.normal), self.rhs // g)  # type: ignore[arg-type]

    def to_json(self) -> dict:
        return {"normal": list(self.normal), "rhs": self.rhs}


def halfspace_margin(h: HalfSpace, u: Sequence[Fraction]) -> Fraction:
    return Fraction(h.margin(u))


def apply_isometry_chart(g: Isometry, u: Sequence[Fraction]) -> ChartPoint:
    m = g.entries
    y = [m[i][0] * u[0] + m[i][1] * u[1] + m[i][2] * u[2] + m[i][3] for i in range(4)]
    if y[3] <= 0:
        raise ValueError("point is not in the image of the upper sheet")
    return (Fraction(y[0]) / y[3], Fraction(y[1]) / y[3], Fraction(y[2]) / y[3])


def orbit_point(g: Isometry) -> ChartPoint:
    """Chart image of g applied to the base point."""
    return apply_isometry_chart(g, ORIGIN)


def cosh_sq_distance_from_origin(u: Sequence[Fraction], n: int) -> Fraction:
    d = n - norm_sq(u)
    if d <= 0:
        raise ValueError("point lies on or outside the chart ball")
    return Fraction(n) / d


def cosh_sq_distance(u: Sequence[Fraction], w: Sequence[Fraction], n: int) -> Fraction:
    """cosh^2 of the hyperbolic distance between two chart points.

    Uses the lifts (u, 1), (w, 1): cosh^2 d = B(U, W)^2 / (Q(U) Q(W)).
    """
    qu = norm_sq(u) - n
    qw = norm_sq(w) - n
    if qu >= 0 or qw >= 0:
        raise ValueError("point lies on or outside the chart ball")
    b = u[0] * w[0] + u[1] * w[1] + u[2] * w[2] - n
    return Fraction(b * b) / (qu * qw)


def bisector_halfspace(g: Isometry) -> HalfSpace:
    """Points at least as close to the origin as to g(origin)."""
    a14, a24, a34, a44 = g.right_column
    if a14 == a24 == a34 == 0:
        raise ValueError("isometry fixes the base point; its bisector is degenerate")
    return HalfSpace((a14, a24, a34), g.n * (a44 - 1))


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def point_to_json(u: Sequence[Fraction]) -> list[str]:
    return [format_rational(c) for c in u]


def point_from_json(data: Sequence[str]) -> ChartPoint:
    return chart_point(*(Fraction(s) for s in data))
