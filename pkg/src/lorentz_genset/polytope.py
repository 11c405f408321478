"""Exact convex polytopes in R^3 cut out by integer half-spaces.

Polytopes are built by clipping a large axis-aligned box one half-space at a
time. Vertices are stored internally in homogeneous integer coordinates
(X, Y, Z, W) with W > 0, so every predicate is an integer sign test and no
perturbation is ever needed for degenerate configurations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from math import gcd, isqrt
from typing import Iterable, Optional, Sequence

from .chart import ChartPoint, HalfSpace, format_rational, norm_sq

HVec = tuple[int, int, int, int]


class EmptyInterior(ValueError):
    """The half-spaces have no common interior point."""


def box_half_width(n: int) -> int:
    """Smallest integer >= 2*sqrt(n)."""
    r = isqrt(4 * n)
    return r if r * r == 4 * n else r + 1


def box_halfspaces(w: int) -> list[HalfSpace]:
    out = []
    for axis in range(3):
        for sign in (1, -1):
            h = [0, 0, 0]
            h[axis] = sign
            out.append(HalfSpace(tuple(h), w))  # type: ignore[arg-type]
    return out


# box planes get ids -1 .. -6 so they never collide with caller ids
BOX_IDS = tuple(range(-1, -7, -1))


def _reduce(v: Sequence[int]) -> HVec:
    g = gcd(*v)
    if g > 1:
        v = [x // g for x in v]
    return tuple(v)  # type: ignore[return-value]


def _to_point(v: HVec) -> ChartPoint:
    w = v[3]
    return (Fraction(v[0], w), Fraction(v[1], w), Fraction(v[2], w))


def _from_point(u: Sequence[Fraction]) -> HVec:
    u = [Fraction(c) for c in u]
    d = 1
    for c in u:
        d = d * c.denominator // gcd(d, c.denominator)
    return _reduce([int(c * d) for c in u] + [d])


def _slack(h: HalfSpace, v: HVec) -> int:
    # sign equals the sign of the margin since W > 0
    n = h.normal
    return h.rhs * v[3] - n[0] * v[0] - n[1] * v[1] - n[2] * v[2]


def _order_cycle(points: dict[int, ChartPoint], normal: Sequence[int]) -> list[int]:
    """Order coplanar points of a convex polygon counterclockwise about ``normal``."""
    ids = list(points)
    drop = max(range(3), key=lambda k: abs(normal[k]))
    keep = [k for k in range(3) if k != drop]
    cx = sum(points[i][keep[0]] for i in ids) / len(ids)
    cy = sum(points[i][keep[1]] for i in ids) / len(ids)
    rel = {i: (points[i][keep[0]] - cx, points[i][keep[1]] - cy) for i in ids}

    def half(p):
        return 1 if (p[1] < 0 or (p[1] == 0 and p[0] < 0)) else 0

    def cmp(a, b):
        pa, pb = rel[a], rel[b]
        ha, hb = half(pa), half(pb)
        if ha != hb:
            return ha - hb
        cr = pa[0] * pb[1] - pa[1] * pb[0]
        return -1 if cr > 0 else (1 if cr < 0 else 0)

    ids.sort(key=cmp_to_key(cmp))
    p0, p1, p2 = (points[i] for i in ids[:3])
    e1 = [p1[k] - p0[k] for k in range(3)]
    e2 = [p2[k] - p0[k] for k in range(3)]
    cross = (
        e1[1] * e2[2] - e1[2] * e2[1],
        e1[2] * e2[0] - e1[0] * e2[2],
        e1[0] * e2[1] - e1[1] * e2[0],
    )
    if sum(cross[k] * normal[k] for k in range(3)) < 0:
        ids.reverse()
    return ids


@dataclass(frozen=True)
class Facet:
    support: int
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class Polytope:
    """Vertex/facet description of a closed convex polytope.

    ``defining`` maps half-space ids to half-spaces (box walls use negative
    ids). ``coincident`` lists, for each facet support, every caller id whose
    half-space is the same after gcd reduction.
    """

    vertices: tuple[ChartPoint, ...]
    facets: tuple[Facet, ...]
    defining: dict[int, HalfSpace]
    bounded: bool
    coincident: dict[int, tuple[int, ...]] = field(default_factory=dict)

    @property
    def support_ids(self) -> tuple[int, ...]:
        return tuple(f.support for f in self.facets)

    def max_norm_sq(self) -> Fraction:
        return max(norm_sq(v) for v in self.vertices)

    def facet_of(self, hid: int) -> Optional[Facet]:
        for f in self.facets:
            if f.support == hid or hid in self.coincident.get(f.support, ()):
                return f
        return None

    def to_json(self) -> dict:
        return {
            "vertices": [[format_rational(c) for c in v] for v in self.vertices],
            "facets": [
                {
                    "support": f.support,
                    "coincident": list(self.coincident.get(f.support, (f.support,))),
                    "halfspace": self.defining[f.support].to_json(),
                    "vertices": list(f.vertices),
                }
                for f in self.facets
            ],
            "bounded": self.bounded,
        }

    def to_obj(self) -> str:
        lines = ["# vertex coordinates are approximate (17 significant digits)"]
        for v in self.vertices:
            lines.append("v " + " ".join(f"{float(c):.17g}" for c in v))
        for f in self.facets:
            cyc = f.vertices
            for k in range(1, len(cyc) - 1):
                lines.append(f"f {cyc[0] + 1} {cyc[k] + 1} {cyc[k + 1] + 1}")
        return "\n".join(lines) + "\n"


class _Builder:
    def __init__(self) -> None:
        self.verts: dict[int, HVec] = {}
        self.faces: dict[int, list[int]] = {}
        self.planes: dict[int, HalfSpace] = {}
        self._next = 0

    def _add_vertex(self, v: HVec) -> int:
        vid = self._next
        self._next += 1
        self.verts[vid] = v
        return vid

    @classmethod
    def box(cls, w: int) -> "_Builder":
        b = cls()
        corners = {}
        for sx in (-w, w):
            for sy in (-w, w):
                for sz in (-w, w):
                    corners[(sx, sy, sz)] = b._add_vertex((sx, sy, sz, 1))
        for hid, hs in zip(BOX_IDS, box_halfspaces(w)):
            b.planes[hid] = hs
            on = {vid: _to_point(b.verts[vid]) for vid in corners.values() if _slack(hs, b.verts[vid]) == 0}
            b.faces[hid] = _order_cycle(on, hs.normal)
        return b

    @classmethod
    def from_polytope(cls, p: Polytope) -> "_Builder":
        b = cls()
        for u in p.vertices:
            b._add_vertex(_from_point(u))
        b.planes = dict(p.defining)
        b.faces = {f.support: list(f.vertices) for f in p.facets}
        return b

    def cut(self, hid: int, hs: HalfSpace) -> bool:
        """Clip by ``hs``; return False if it removes nothing."""
        slack = {vid: _slack(hs, v) for vid, v in self.verts.items()}
        if all(s >= 0 for s in slack.values()):
            self.planes.setdefault(hid, hs)
            return False
        if not any(s > 0 for s in slack.values()):
            raise EmptyInterior(f"half-space {hid} leaves no interior")
        self.planes[hid] = hs
        cut_points: dict[tuple[int, int], int] = {}

        def crossing(a: int, b: int) -> int:
            key = (a, b) if a < b else (b, a)
            vid = cut_points.get(key)
            if vid is None:
                p, q = self.verts[a], self.verts[b]
                sp, sq = slack[a], slack[b]
                r = _reduce([sp * q[k] - sq * p[k] for k in range(4)])
                if r[3] < 0:
                    r = tuple(-x for x in r)  # type: ignore[assignment]
                vid = self._add_vertex(r)
                slack[vid] = 0
                cut_points[key] = vid
            return vid

        new_faces: dict[int, list[int]] = {}
        for fid, cyc in self.faces.items():
            out: list[int] = []
            k = len(cyc)
            for i in range(k):
                a, b = cyc[i], cyc[(i + 1) % k]
                sa, sb = slack[a], slack[b]
                if sa >= 0:
                    out.append(a)
                if (sa > 0 and sb < 0) or (sa < 0 and sb > 0):
                    out.append(crossing(a, b))
            if len(out) >= 3:
                new_faces[fid] = out
        on = {vid: _to_point(self.verts[vid]) for vid, s in slack.items() if s == 0}
        new_faces[hid] = _order_cycle(on, hs.normal)
        self.faces = new_faces
        for vid, s in list(slack.items()):
            if s < 0:
                del self.verts[vid]
        return True

    def freeze(self, coincident: dict[int, tuple[int, ...]]) -> Polytope:
        used = sorted({v for cyc in self.faces.values() for v in cyc}, key=lambda vid: _to_point(self.verts[vid]))
        index = {vid: i for i, vid in enumerate(used)}
        vertices = tuple(_to_point(self.verts[vid]) for vid in used)
        facets = []
        for fid in sorted(self.faces):
            cyc = [index[v] for v in self.faces[fid]]
            j = cyc.index(min(cyc))
            facets.append(Facet(fid, tuple(cyc[j:] + cyc[:j])))
        bounded = not any(f.support in BOX_IDS for f in facets)
        supports = {f.support for f in facets}
        return Polytope(
            vertices=vertices,
            facets=tuple(facets),
            defining=dict(sorted(self.planes.items())),
            bounded=bounded,
            coincident={k: v for k, v in coincident.items() if k in supports},
        )


def _merge_duplicates(items: Iterable[tuple[int, HalfSpace]]):
    first: dict[HalfSpace, int] = {}
    groups: dict[int, list[int]] = {}
    order: list[tuple[int, HalfSpace]] = []
    for hid, hs in items:
        key = hs.reduced()
        if key in first:
            groups[first[key]].append(hid)
        else:
            first[key] = hid
            groups[hid] = [hid]
            order.append((hid, hs))
    return order, {k: tuple(v) for k, v in groups.items()}


def intersect_halfspaces(halfspaces: Sequence[HalfSpace] | dict[int, HalfSpace], n: int) -> Polytope:
    """Intersect the half-spaces with a box of half-width ceil(2*sqrt(n)).

    Accepts a list (ids are positions) or a mapping id -> half-space with
    non-negative ids. Identical half-spaces (after gcd reduction) are merged;
    the facet keeps the first id and ``coincident`` records the rest.
    """
    items = list(halfspaces.items()) if isinstance(halfspaces, dict) else list(enumerate(halfspaces))
    if not items:
        raise ValueError("need at least one half-space")
    if any(hid < 0 for hid, _ in items):
        raise ValueError("half-space ids must be non-negative")
    order, groups = _merge_duplicates(items)
    b = _Builder.box(box_half_width(n))
    for hid, hs in order:
        b.cut(hid, hs)
    for hid, hs in items:
        b.planes.setdefault(hid, hs)
    return b.freeze(groups)


def cut_polytope(p: Polytope, halfspaces: dict[int, HalfSpace]) -> Polytope:
    """Clip an existing polytope by further half-spaces with fresh ids."""
    clash = set(halfspaces) & set(p.defining)
    if clash:
        raise ValueError(f"half-space ids already in use: {sorted(clash)}")
    b = _Builder.from_polytope(p)
    for hid, hs in halfspaces.items():
        b.cut(hid, hs)
    coincident = dict(p.coincident)
    for hid in halfspaces:
        coincident.setdefault(hid, (hid,))
    return b.freeze(coincident)


def supporting_ids_by_rank(p: Polytope) -> set[int]:
    """Ids of defining half-spaces with three affinely independent tight vertices."""
    out = set()
    for hid, hs in p.defining.items():
        tight = [v for v in p.vertices if hs.margin(v) == 0]
        if _affine_rank(tight) >= 2:
            out.add(hid)
    return out


def _affine_rank(points: Sequence[ChartPoint]) -> int:
    if not points:
        return -1
    p0 = points[0]
    rows = [[p[k] - p0[k] for k in range(3)] for p in points[1:]]
    rank = 0
    for col in range(3):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [rows[r][k] - f * rows[rank][k] for k in range(3)]
        rank += 1
    return rank


def euclidean_volume(p: Polytope) -> Fraction:
    """Exact volume, from outward-oriented facet fans."""
    total = Fraction(0)
    for f in p.facets:
        cyc = [p.vertices[i] for i in f.vertices]
        a = cyc[0]
        for b, c in zip(cyc[1:], cyc[2:]):
            total += (
                a[0] * (b[1] * c[2] - b[2] * c[1])
                - a[1] * (b[0] * c[2] - b[2] * c[0])
                + a[2] * (b[0] * c[1] - b[1] * c[0])
            )
    return total / 6


def polytope_from_json(data: dict) -> Polytope:
    vertices = tuple(tuple(Fraction(c) for c in v) for v in data["vertices"])
    facets = tuple(Facet(f["support"], tuple(f["vertices"])) for f in data["facets"])
    defining = {f["support"]: HalfSpace(tuple(f["halfspace"]["normal"]), f["halfspace"]["rhs"]) for f in data["facets"]}
    coincident = {f["support"]: tuple(f.get("coincident", [f["support"]])) for f in data["facets"]}
    return Polytope(vertices, facets, defining, bool(data["bounded"]), coincident)  # type: ignore[arg-type]
