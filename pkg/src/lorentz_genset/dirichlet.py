"""Voronoi cell of the base point and the Dirichlet fundamental domain.

The loop: enumerate all elements with a44 <= T, intersect their bisector
half-spaces, and accept once the cell is compact and every vertex v obeys
cosh(2 d(0, v)) < T. Any element not yet enumerated moves the base point
further than twice the circumradius, so its bisector cannot cut the cell.
Otherwise T is doubled.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .chart import HalfSpace, bisector_halfspace, cosh_sq_distance_from_origin, norm_sq
from .isometry import Isometry
from .lattice_enum import assemble_isometries
from .polytope import Polytope, cut_polytope, euclidean_volume, intersect_halfspaces
from .quadform import anisotropy_certificate_mod8
from .stabilizer import CONE_WALLS, ROTATION_CONE_WALLS, is_stabilizer_element

log = logging.getLogger(__name__)

SCHEMA = "lorentz-genset/1"

# ids for the cone walls, kept clear of bisector ids
CONE_IDS = (1_000_000, 1_000_001, 1_000_002)


class NonTermination(RuntimeError):
    """The doubling cap was reached without certifying the Voronoi cell."""


def is_compact_in_ball(p: Polytope, n: int) -> bool:
    return p.bounded and bool(p.vertices) and all(norm_sq(v) < n for v in p.vertices)


def max_cosh_sq(p: Polytope, n: int) -> Fraction:
    return max(cosh_sq_distance_from_origin(v, n) for v in p.vertices)


def circumradius_criterion(p: Polytope, n: int, T: int) -> bool:
    """cosh(2M) < T, where M is the largest distance from the origin to a vertex."""
    if not is_compact_in_ball(p, n):
        raise ValueError("circumradius test needs a polytope strictly inside the chart ball")
    return 2 * max_cosh_sq(p, n) - 1 < T


def intersect_with_cone(p: Polytope, walls=CONE_WALLS) -> Polytope:
    """Cut by the closed cone u1 >= u2 >= u3 >= 0 (or other inward wall normals)."""
    walls = {hid: HalfSpace(tuple(-c for c in w), 0) for hid, w in zip(CONE_IDS, walls)}  # type: ignore[misc]
    d = cut_polytope(p, walls)
    if not d.vertices:
        raise ValueError("cone cut left nothing; the cell should contain an open cone sector")
    return d


@dataclass(frozen=True)
class BisectorTable:
    """Distinct bisectors of a set of elements, in order of increasing a44."""

    halfspaces: dict[int, HalfSpace]
    contributors: dict[int, tuple[Isometry, ...]]


def bisector_table(elements: list[Isometry]) -> BisectorTable:
    groups: dict[tuple[int, ...], list[Isometry]] = {}
    for g in elements:
        if is_stabilizer_element(g):
            continue
        groups.setdefault(g.right_column, []).append(g)
    # elements sharing a right column differ by a stabilizer element on the right
    keys = sorted(groups, key=lambda c: (c[3], c))
    hs = {}
    contrib = {}
    for i, k in enumerate(keys):
        gs = sorted(groups[k])
        hs[i] = bisector_halfspace(gs[0])
        contrib[i] = tuple(gs)
    return BisectorTable(hs, contrib)


def voronoi_cell(elements: list[Isometry], n: int) -> tuple[Polytope, BisectorTable]:
    table = bisector_table(elements)
    if not table.halfspaces:
        raise ValueError("no element moves the base point; raise the bound")
    return intersect_halfspaces(table.halfspaces, n), table


@dataclass(frozen=True)
class DomainResult:
    n: int
    bound_T: int
    certified: bool
    voronoi: Polytope
    domain: Polytope
    rotation_domain: Polytope
    table: BisectorTable
    face_pairings: tuple[Isometry, ...]
    bounds_tried: tuple[int, ...] = field(default=())

    def facet_contributors(self, hid: int) -> tuple[Isometry, ...]:
        out: list[Isometry] = []
        for k in self.voronoi.coincident.get(hid, (hid,)):
            out.extend(self.table.contributors.get(k, ()))
        return tuple(sorted(out))

    def domain_bisector_ids(self) -> tuple[int, ...]:
        """Bisector facets that survive in the cone-cut domain (diagnostic)."""
        return tuple(h for h in self.domain.support_ids if h in self.table.halfspaces)

    def to_json(self, names: Optional[dict[Isometry, str]] = None) -> dict:
        names = names or {}

        def poly(p: Polytope) -> dict:
            data = p.to_json()
            for f in data["facets"]:
                if f["support"] in self.table.halfspaces:
                    els = self.facet_contributors(f["support"])
                    f["a44"] = els[0].a44
                    f["contributors"] = [g.to_json()["entries"] for g in els]
                    named = sorted({names[g] for g in els if g in names})
                    if named:
                        f["names"] = named
            return data

        mcs = max_cosh_sq(self.voronoi, self.n)
        vols = {k: euclidean_volume(p) for k, p in
                (("voronoi", self.voronoi), ("domain", self.domain), ("rotation_domain", self.rotation_domain))}
        return {
            "schema": SCHEMA,
            "n": self.n,
            "bound_T": self.bound_T,
            "bounds_tried": list(self.bounds_tried),
            "certified": self.certified,
            "max_cosh_sq_vertex": f"{mcs.numerator}/{mcs.denominator}",
            "cosh_twice_circumradius": str(2 * mcs - 1),
            "voronoi": poly(self.voronoi),
            "domain": poly(self.domain),
            "rotation_domain": poly(self.rotation_domain),
            "chart_volumes": {k: str(v) for k, v in vols.items()},
            "domain_bisector_ids": list(self.domain_bisector_ids()),
            "face_pairings": [g.to_json()["entries"] for g in self.face_pairings],
        }


def compute_dirichlet_domain(
    n: int,
    T_initial: int = 21,
    max_doublings: int = 8,
    threads: Optional[int] = None,
) -> DomainResult:
    if not anisotropy_certificate_mod8(n):
        raise ValueError(f"Q_{n} is not certified anisotropic (need n = 7 mod 8)")
    if T_initial < 2:
        raise ValueError("initial bound must be >= 2")
    T = T_initial
    tried = []
    for _ in range(max_doublings + 1):
        tried.append(T)
        elements = assemble_isometries(n, T, threads=threads)
        V, table = voronoi_cell(elements, n)
        compact = is_compact_in_ball(V, n)
        ok = compact and circumradius_criterion(V, n, T)
        log.info("T=%d: %d elements, %d facets, compact=%s, certified=%s", T, len(elements), len(V.facets), compact, ok)
        if ok:
            pairs: list[Isometry] = []
            for f in V.facets:
                for k in V.coincident.get(f.support, (f.support,)):
                    pairs.extend(table.contributors[k])
            return DomainResult(
                n=n,
                bound_T=T,
                certified=True,
                voronoi=V,
                domain=intersect_with_cone(V),
                rotation_domain=intersect_with_cone(V, ROTATION_CONE_WALLS),
                table=table,
                face_pairings=tuple(sorted(pairs)),
                bounds_tried=tuple(tried),
            )
        T *= 2
    raise NonTermination(f"Voronoi cell not certified after bounds {tried}")


def redundant_beyond(result: DomainResult, extra: int, threads: Optional[int] = None) -> list[Isometry]:
    """Elements with bound_T < a44 <= bound_T + extra whose bisector touches the cell.

    An empty list means every such bisector keeps all vertices strictly inside.
    """
    T = result.bound_T
    bad = []
    for g in assemble_isometries(result.n, T + extra, threads=threads):
        if g.a44 <= T:
            continue
        hs = bisector_halfspace(g)
        if any(hs.margin(v) <= 0 for v in result.voronoi.vertices):
            bad.append(g)
    return bad
