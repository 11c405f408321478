import itertools
import json
import random

import pytest

from lorentz_genset.isometry import (
    IDENTITY,
    InvalidIsometry,
    Isometry,
    det4,
    displacement_cosh,
    from_matrix,
    identity,
    inverse,
    multiply,
)
from lorentz_genset.quadform import pseudolength


def test_identity_valid():
    assert from_matrix(IDENTITY, 7).is_identity()


def test_improper_rejected():
    m = [list(r) for r in IDENTITY]
    m[0][0] = -1
    with pytest.raises(InvalidIsometry, match="det"):
        from_matrix(m, 7)


def test_time_reversal_rejected():
    m = [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]
    with pytest.raises(InvalidIsometry, match="a44"):
        from_matrix(m, 7)


def test_wrong_pseudolength_named(catalog):
    m = [list(r) for r in catalog["A"].entries]
    m[0][0] += 1
    with pytest.raises(InvalidIsometry, match="column 1 has pseudolength"):
        from_matrix(m, 7)


def test_nonorthogonal_named():
    # both columns have pseudolength 1 but are not orthogonal
    m = [[1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 1]]
    with pytest.raises(InvalidIsometry, match="columns 1 and 2"):
        from_matrix(m, 7)


def test_shape_checked():
    with pytest.raises(InvalidIsometry):
        from_matrix([[1, 0], [0, 1]], 7)


def test_catalog_all_valid(catalog):
    assert len(catalog) == 12
    assert catalog["A"].entries == ((-2, -2, 0, 7), (-5, -2, 0, 14), (0, 0, -1, 0), (-2, -1, 0, 6))
    assert catalog["C"].a44 == 8


@pytest.mark.parametrize("name", ["A", "B", "D", "F"])
def test_inverse_matches_printed(catalog, name):
    assert inverse(catalog[name]) == catalog[name + "^-1"]
    assert inverse(catalog[name + "^-1"]) == catalog[name]


def test_c_and_e_are_involutions(catalog):
    assert inverse(catalog["C"]) == catalog["C"]
    assert inverse(catalog["E"]) == catalog["E"]


def test_multiply_examples(catalog):
    assert multiply(catalog["A"], catalog["A^-1"]).is_identity()
    assert multiply(identity(7), catalog["B"]) == catalog["B"]
    assert multiply(catalog["(12)"], catalog["(12)"]).is_identity()
    with pytest.raises(ValueError):
        multiply(identity(7), identity(15))


def test_inverse_identity_all(catalog):
    for g in catalog.values():
        assert multiply(g, inverse(g)).is_identity()
        assert multiply(inverse(g), g).is_identity()


def test_closure_random_products(catalog):
    rng = random.Random(0)
    gs = list(catalog.values())
    for _ in range(200):
        word = [rng.choice(gs) for _ in range(rng.randint(2, 5))]
        prod = word[0]
        for g in word[1:]:
            prod = multiply(prod, g)
        Isometry(prod.entries, 7)  # revalidates every invariant


@pytest.mark.parametrize("name, a44", [("A", 6), ("B", 8), ("C", 8), ("D", 13), ("E", 15), ("F", 20)])
def test_displacement(catalog, name, a44):
    assert displacement_cosh(catalog[name]) == a44
    assert displacement_cosh(identity(7)) == 1


def test_structural_facts_on_catalog(catalog):
    for g in catalog.values():
        m, n, a44 = g.entries, 7, g.a44
        assert all(m[i][3] % n == 0 for i in range(3))
        assert a44 % 7 in (1, 6)
        assert n * (m[3][0] ** 2 + m[3][1] ** 2 + m[3][2] ** 2) == a44 * a44 - 1
        assert m[0][3] ** 2 + m[1][3] ** 2 + m[2][3] ** 2 == n * (a44 * a44 - 1)
        assert n * max(m[3][j] ** 2 for j in range(3)) <= a44 * a44 - 1
        assert pseudolength(7, g.right_column) == -7


def test_det4_against_permutation_expansion():
    rng = random.Random(1)
    for _ in range(50):
        m = [[rng.randint(-9, 9) for _ in range(4)] for _ in range(4)]
        leibniz = 0
        for p in itertools.permutations(range(4)):
            sign = 1
            for i in range(4):
                for j in range(i + 1, 4):
                    if p[i] > p[j]:
                        sign = -sign
            term = sign
            for i in range(4):
                term *= m[i][p[i]]
            leibniz += term
        assert det4(m) == leibniz


def test_json_roundtrip(catalog):
    g = catalog["F"]
    data = json.loads(json.dumps(g.to_json()))
    assert data == {"n": 7, "entries": [list(r) for r in g.entries]}
    assert Isometry.from_json(data) == g
