import random
from fractions import Fraction

import pytest

from lorentz_genset.chart import apply_isometry_chart
from lorentz_genset.isometry import identity, inverse, multiply
from lorentz_genset.lattice_enum import assemble_isometries
from lorentz_genset.stabilizer import (
    canonicalize_by_stabilizer,
    cone_contains,
    rotation_cone_contains,
    word_closure,
)


def test_order_and_fixes_basepoint(stab):
    assert len(stab) == 24
    for s in stab.elements:
        assert s.right_column == (0, 0, 0, 1)
        assert s.entries[3] == (0, 0, 0, 1)


def test_matches_stratum_one(stab):
    assert set(assemble_isometries(7, 1, threads=1)) == set(stab.elements)


def test_contains_printed_generators(stab, catalog):
    assert catalog["(12)"] in stab and catalog["(1234)"] in stab
    assert stab.gen_s.entries == ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, -1, 0), (0, 0, 0, 1))


def test_word_closure_of_generators(stab, catalog):
    closure = word_closure([catalog["(12)"], catalog["(1234)"]])
    assert len(closure) == 24 and closure == set(stab.elements)


def test_group_closed(stab):
    s = set(stab.elements)
    for a in stab.elements:
        assert inverse(a) in s
        for b in stab.elements:
            assert multiply(a, b) in s


@pytest.mark.parametrize(
    "u, expected",
    [((Fraction(3, 10), Fraction(2, 10), Fraction(1, 10)), True), ((0, 0, 0), False),
     ((Fraction(2, 10), Fraction(3, 10), Fraction(1, 10)), False), ((3, 2, 0), False)],
)
def test_cone_contains(u, expected):
    assert cone_contains(u) is expected


def _random_generic_point(rng, positive):
    while True:
        vals = [Fraction(rng.randint(1, 999), rng.randint(1, 999)) for _ in range(3)]
        if len({abs(v) for v in vals}) == 3:
            break
    if not positive:
        vals = [v * rng.choice((1, -1)) for v in vals]
    return tuple(vals)


def test_cone_fundamental_property(stab):
    rng = random.Random(5)
    for _ in range(100):
        p = tuple(sorted(_random_generic_point(rng, True), reverse=True))
        assert cone_contains(p)
        images = [apply_isometry_chart(s, p) for s in stab.elements]
        assert len(set(images)) == 24
        assert sum(cone_contains(q) for q in images) == 1


def test_cone_is_only_half_a_domain_for_rotations(stab):
    # the mirror image (u1, u2, -u3) of a cone point has no rotation image in the cone
    rng = random.Random(6)
    hits = []
    for _ in range(100):
        p = _random_generic_point(rng, False)
        images = [apply_isometry_chart(s, p) for s in stab.elements]
        hits.append(sum(cone_contains(q) for q in images))
        assert sum(rotation_cone_contains(q) for q in images) == 1
    assert set(hits) == {0, 1}


def test_canonicalize_identity(stab):
    outs = {canonicalize_by_stabilizer(s, stab) for s in stab.elements}
    assert len(outs) == 1
    (c,) = outs
    assert c in stab and c == min(stab.elements)


def test_canonicalize_double_coset(stab, catalog):
    A, C = catalog["A"], catalog["C"]
    cA = canonicalize_by_stabilizer(A, stab)
    assert cA == canonicalize_by_stabilizer(multiply(multiply(catalog["(12)"], A), catalog["(1234)"]), stab)
    assert cA != canonicalize_by_stabilizer(C, stab)
    assert canonicalize_by_stabilizer(cA, stab) == cA
    assert cA.a44 == A.a44


def test_canonicalize_matches_matrix_products(stab, catalog):
    # brute-force lex minimum via real matrix multiplication
    g = catalog["F"]
    brute = min(multiply(multiply(s1, g), s2).entries for s1 in stab.elements for s2 in stab.elements)
    assert canonicalize_by_stabilizer(g, stab).entries == brute


def test_canonicalize_rejects_other_form(stab):
    with pytest.raises(ValueError):
        canonicalize_by_stabilizer(identity(15), stab)
