"""The stabilizer of the base point and its cone fundamental domain."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Sequence

from .isometry import IDENTITY, Isometry, Matrix, multiply, reference_catalog


def _signed_perm_matrix(perm: Sequence[int], signs: Sequence[int]) -> Matrix:
    rows = []
    for i in range(3):
        row = [0, 0, 0, 0]
        row[perm[i]] = signs[i]
        rows.append(tuple(row))
    rows.append((0, 0, 0, 1))
    return tuple(rows)  # type: ignore[return-value]


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def signed_permutations(n: int) -> list[Isometry]:
    """All 3x3 signed permutation matrices of determinant +1, embedded in 4x4."""
    out = []
    for perm in permutations(range(3)):
        for signs in product((1, -1), repeat=3):
            if _perm_sign(perm) * signs[0] * signs[1] * signs[2] == 1:
                out.append(Isometry(_signed_perm_matrix(perm, signs), n))
    return sorted(out)


def word_closure(gens: Sequence[Isometry]) -> set[Isometry]:
    """Closure of a finite generating set under right multiplication."""
    seen = {Isometry._trusted(IDENTITY, gens[0].n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = multiply(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


@dataclass(frozen=True)
class StabilizerGroup:
    elements: tuple[Isometry, ...]
    gen_s: Isometry
    gen_r: Isometry

    @property
    def n(self) -> int:
        return self.gen_s.n

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g: Isometry) -> bool:
        return g in self._set

    @property
    def _set(self) -> frozenset[Isometry]:
        cached = self.__dict__.get("_set_cache")
        if cached is None:
            cached = frozenset(self.elements)
            object.__setattr__(self, "_set_cache", cached)
        return cached


def build_stabilizer(n: int = 7) -> StabilizerGroup:
    elements = signed_permutations(n)
    if len(elements) != 24:
        raise AssertionError(f"expected 24 stabilizer elements, got {len(elements)}")
    cat = reference_catalog()
    gen_s = Isometry(cat["(12)"].entries, n)
    gen_r = Isometry(cat["(1234)"].entries, n)
    if word_closure([gen_s, gen_r]) != set(elements):
        raise AssertionError("generators do not reproduce the signed permutation group")
    return StabilizerGroup(tuple(elements), gen_s, gen_r)


def is_stabilizer_element(g: Isometry) -> bool:
    return g.a44 == 1


# Walls of the open cone u1 > u2 > u3 > 0, as inward normals.
CONE_WALLS: tuple[tuple[int, int, int], ...] = ((1, -1, 0), (0, 1, -1), (0, 0, 1))


# The cone above is cut out by mirror planes, so it is a fundamental domain
# for the 48-element group including reflections. Adding its mirror image in
# u3 = 0 gives a fundamental domain for the 24 rotations: u1 > u2 > |u3|.
ROTATION_CONE_WALLS: tuple[tuple[int, int, int], ...] = ((1, -1, 0), (0, 1, -1), (0, 1, 1))


def cone_contains(u: Sequence[Fraction | int], walls=CONE_WALLS) -> bool:
    return all(w[0] * u[0] + w[1] * u[1] + w[2] * u[2] > 0 for w in walls)


def rotation_cone_contains(u: Sequence[Fraction | int]) -> bool:
    return cone_contains(u, ROTATION_CONE_WALLS)


def _row_col_actions(stab: StabilizerGroup):
    # s is a signed permutation: s[i][p[i]] = e[i] for i < 3
    acts = []
    for s in stab.elements:
        p = [next(j for j in range(3) if s.entries[i][j]) for i in range(3)]
        e = [s.entries[i][p[i]] for i in range(3)]
        acts.append((p, e))
    return acts


def canonicalize_by_stabilizer(g: Isometry, stab: StabilizerGroup) -> Isometry:
    """Lexicographically least element of the double coset stab * g * stab."""
    if g.n != stab.n:
        raise ValueError("isometry and stabilizer belong to different forms")
    acts = _row_col_actions(stab)
    m = g.entries
    best = None
    for p, e in acts:
        # left multiplication: row i of s*g is e[i] * row p[i] of g
        left = [[e[i] * x for x in m[p[i]]] for i in range(3)]
        left.append(list(m[3]))
        for q, f in acts:
            # right multiplication: column q[k] of g*s is f[k] * column k of g
            cand = [[0] * 4 for _ in range(4)]
            for r in range(4):
                row = left[r]
                out = cand[r]
                for k in range(3):
                    out[q[k]] = f[k] * row[k]
                out[3] = row[3]
            key = tuple(tuple(r) for r in cand)
            if best is None or key < best:
                best = key
    return Isometry._trusted(best, g.n)  # type: ignore[arg-type]
