"""Words in named generators, relation checks, and generation by search."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .isometry import IDENTITY, Isometry, identity, inverse, multiply, power, reference_catalog
from .stabilizer import StabilizerGroup, canonicalize_by_stabilizer

_TOKEN = re.compile(r"\s*(\(\d+\)|[A-Za-z][A-Za-z0-9_]*)(?:\^\{?(-?\d+)\}?)?")


class UnknownGenerator(KeyError):
    pass


@dataclass(frozen=True)
class Word:
    letters: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        for name, e in self.letters:
            if e == 0:
                raise ValueError(f"zero exponent on {name!r}")

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse e.g. ``"(1234)^2 (12) A^-2 (12)"``; spaces are optional."""
        letters = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse word at {text[pos:]!r}")
            letters.append((m.group(1), int(m.group(2) or 1)))
            pos = m.end()
            while pos < len(text) and text[pos].isspace():
                pos += 1
        return cls(tuple(letters))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __str__(self) -> str:
        return " ".join(name if e == 1 else f"{name}^{e}" for name, e in self.letters)


def evaluate_word(w: Word | str, alphabet: Mapping[str, Isometry], n: Optional[int] = None) -> Isometry:
    if isinstance(w, str):
        w = Word.parse(w)
    if n is None:
        n = next(iter(alphabet.values())).n
    result = identity(n)
    for name, e in w.letters:
        if name not in alphabet:
            raise UnknownGenerator(name)
        result = multiply(result, power(alphabet[name], e))
    return result


# The four printed identities expressing B, D, E, F through (12), (1234), A, C.
REFERENCE_RELATIONS: dict[str, str] = {
    "B": "(1234)^2 (12) A^-2 (12)",
    "D": "(1234)^3 (12) C (1234)^3",
    "E": "A^-1 (1234)^2 (12) A^-1 (12)",
    "F": "C (12) (1234)^2 A^-1 (12)",
}

FOUR_GENERATORS = ("(12)", "(1234)", "A", "C")


@dataclass(frozen=True)
class RelationCheck:
    name: str
    word: str
    passed: bool
    difference: Optional[tuple[tuple[int, ...], ...]]

    def to_json(self) -> dict:
        out: dict = {"word": self.word, "pass": self.passed}
        if self.difference is not None:
            out["difference"] = [list(r) for r in self.difference]
        return out


def check_relation(name: str, word: str, target: Isometry, alphabet: Mapping[str, Isometry]) -> RelationCheck:
    got = evaluate_word(word, alphabet)
    if got == target:
        return RelationCheck(name, word, True, None)
    diff = tuple(
        tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(got.entries, target.entries)
    )
    return RelationCheck(name, word, False, diff)


def verify_reference_relations(relations: Optional[Mapping[str, str]] = None) -> list[RelationCheck]:
    """Evaluate each relation word and compare with the catalog matrix of that name."""
    cat = reference_catalog()
    alphabet = {k: cat[k] for k in FOUR_GENERATORS}
    relations = REFERENCE_RELATIONS if relations is None else relations
    return [check_relation(name, word, cat[name], alphabet) for name, word in relations.items()]


@dataclass(frozen=True)
class CosetClass:
    representative: Isometry
    canonical: Isometry
    members: tuple[Isometry, ...]
    inverse_of: int  # index of the class holding the inverses


def reduce_face_pairings(fp: Iterable[Isometry], stab: StabilizerGroup) -> list[CosetClass]:
    """Group elements and their inverses into stabilizer double cosets.

    One class per double coset, ordered by (a44, canonical form); the
    representative is the input element with the smallest (a44, entries).
    """
    fp = list(fp)
    pool = set(fp) | {inverse(g) for g in fp}
    canon_cache: dict[Isometry, Isometry] = {}
    by_canon: dict[Isometry, list[Isometry]] = {}
    for g in pool:
        c = canonicalize_by_stabilizer(g, stab)
        canon_cache[g] = c
        by_canon.setdefault(c, []).append(g)
    keys = sorted(by_canon, key=lambda c: (c.a44, c.sort_key()))
    index = {c: i for i, c in enumerate(keys)}
    out = []
    for c in keys:
        members = tuple(sorted(by_canon[c], key=lambda g: (g.a44, g.sort_key())))
        rep = members[0]
        inv_canon = canonicalize_by_stabilizer(inverse(rep), stab)
        out.append(CosetClass(rep, c, members, index[inv_canon]))
    return out


@dataclass(frozen=True)
class GenerationReport:
    radius: int
    ball_size: int
    cosh_cap: Optional[int]
    reached: dict[Isometry, Word]
    missing: tuple[Isometry, ...]

    @property
    def all_reached(self) -> bool:
        return not self.missing

    def to_json(self) -> dict:
        return {
            "radius": self.radius,
            "cosh_cap": self.cosh_cap,
            "ball_size": self.ball_size,
            "reached": len(self.reached),
            "missing": [g.to_json()["entries"] for g in self.missing],
            "witnesses": [
                {"entries": g.to_json()["entries"], "word": str(w)}
                for g, w in sorted(self.reached.items(), key=lambda kv: (kv[0].a44, kv[0].sort_key()))
            ],
        }


def _letters(gens: Mapping[str, Isometry]) -> list[tuple[str, int, Isometry]]:
    out = []
    seen = set()
    for name in sorted(gens):
        g = gens[name]
        for e, m in ((1, g), (-1, inverse(g))):
            if m.entries in seen or m.entries == IDENTITY:
                continue
            seen.add(m.entries)
            out.append((name, e, m))
    return out


def word_ball(
    gens: Mapping[str, Isometry],
    radius: int,
    cosh_cap: Optional[int] = None,
) -> dict[Isometry, tuple[tuple[str, int], ...]]:
    """Every product of at most ``radius`` letters, with a shortest word for each.

    With ``cosh_cap`` set, partial products whose a44 exceeds the cap are
    dropped, so the result is a subset of the true ball.
    """
    n = next(iter(gens.values())).n
    letters = _letters(gens)
    start = identity(n)
    words: dict[Isometry, tuple[tuple[str, int], ...]] = {start: ()}
    frontier = [start]
    for _ in range(radius):
        nxt: list[Isometry] = []
        for x in frontier:
            wx = words[x]
            for name, e, m in letters:
                y = multiply(x, m)
                if y in words:
                    continue
                if cosh_cap is not None and y.a44 > cosh_cap:
                    continue
                words[y] = wx + ((name, e),)
                nxt.append(y)
        frontier = nxt
        if not frontier:
            break
    return words


def verify_generation(
    targets: Sequence[Isometry],
    gens: Mapping[str, Isometry],
    radius: int,
    cosh_cap: Optional[int] = None,
) -> GenerationReport:
    """Breadth-first search over words of length <= radius in gens and inverses.

    The ball of a hyperbolic group grows exponentially, so ``cosh_cap`` may
    be set to prune it (see ``word_ball``). Pruning can only lose targets,
    never produce a wrong witness. Targets the ball misses are then tried as
    products x*y of two half-radius words (uncapped), which decides
    membership in the full, unpruned ball exactly.
    """
    if radius < 1:
        raise ValueError("radius must be >= 1")
    words = word_ball(gens, radius, cosh_cap)
    reached = {}
    missing = []
    for t in targets:
        if t in words:
            reached[t] = _compress(words[t])
        else:
            missing.append(t)
    if missing and cosh_cap is not None:
        missing = _meet_in_middle(missing, gens, radius, reached)
    return GenerationReport(radius, len(words), cosh_cap, reached, tuple(missing))


def _meet_in_middle(
    targets: list[Isometry],
    gens: Mapping[str, Isometry],
    radius: int,
    reached: dict[Isometry, Word],
) -> list[Isometry]:
    left_r = radius // 2
    right_r = radius - left_r
    left = word_ball(gens, left_r)
    right = left if right_r == left_r else word_ball(gens, right_r)
    still = []
    for t in targets:
        best = None
        for x, wx in left.items():
            y = multiply(inverse(x), t)
            wy = right.get(y)
            if wy is not None and (best is None or len(wx) + len(wy) < len(best)):
                best = wx + wy
        if best is None:
            still.append(t)
        else:
            reached[t] = _compress(best)
    return still


def _compress(letters: Sequence[tuple[str, int]]) -> Word:
    out: list[tuple[str, int]] = []
    for name, e in letters:
        if out and out[-1][0] == name:
            e2 = out[-1][1] + e
            out.pop()
            if e2:
                out.append((name, e2))
        else:
            out.append((name, e))
    return Word(tuple(out))


def catalog_coset_names(stab: StabilizerGroup) -> dict[Isometry, list[str]]:
    """Canonical double-coset form -> catalog names falling in it."""
    out: dict[Isometry, list[str]] = {}
    for name, g in reference_catalog().items():
        if g.a44 == 1:
            continue
        out.setdefault(canonicalize_by_stabilizer(g, stab), []).append(name)
    return out
