from itertools import product

import pytest

from lorentz_genset.isometry import Isometry, inverse, multiply
from lorentz_genset.lattice_enum import (
    assemble_isometries,
    enumerate_right_columns,
    enumerate_unit_vectors,
    strata_counts,
    three_square_reps,
)
from lorentz_genset.oracle import naive_unit_vectors
from lorentz_genset.quadform import pseudolength


@pytest.mark.parametrize("s", range(0, 60))
def test_three_square_reps_brute(s):
    r = 8
    brute = sorted(v for v in product(range(-r, r + 1), repeat=3) if sum(x * x for x in v) == s)
    assert list(three_square_reps(s)) == brute


def test_unit_vectors_small():
    got = set(enumerate_unit_vectors(7, 1))
    assert got == {(1, 0, 0, 0), (-1, 0, 0, 0), (0, 1, 0, 0), (0, -1, 0, 0), (0, 0, 1, 0), (0, 0, -1, 0)}


def test_unit_vectors_contain_column_of_A():
    uv = enumerate_unit_vectors(7, 6)
    assert (-2, -5, 0, -2) in uv.vectors
    assert len(set(uv.vectors)) == len(uv)
    assert all(pseudolength(7, v) == 1 and 7 * v[3] ** 2 <= 36 for v in uv)
    assert list(uv.vectors) == naive_unit_vectors(7, 6)


def test_right_columns():
    assert [rc.column for rc in enumerate_right_columns(7, 1)] == [(0, 0, 0, 1)]
    cols = [rc.column for rc in enumerate_right_columns(7, 6)]
    assert (7, 14, 0, 6) in cols
    assert len(cols) == len(set(cols))
    for c in cols:
        assert pseudolength(7, c) == -7
        assert all(x % 7 == 0 for x in c[:3])
        assert c[3] >= 1 and (c[3] ** 2 - 1) % 7 == 0
    stratum6 = [c for c in cols if c[3] == 6]
    brute = [v for v in product(range(-3, 4), repeat=3) if sum(x * x for x in v) == 5]
    assert len(stratum6) == len(brute) == 24


def test_right_columns_composite_n():
    # m^2 = 1 mod 15 also has m = 4, 11 besides m = +-1
    ms = sorted({rc.m for rc in enumerate_right_columns(15, 16)})
    assert ms == [1, 4, 11, 14, 16]


def test_assemble_small_strata(catalog):
    assert len(assemble_isometries(7, 1, threads=1)) == 24
    t6 = set(assemble_isometries(7, 6, threads=1))
    assert catalog["A"] in t6 and catalog["A^-1"] in t6
    t8 = set(assemble_isometries(7, 8, threads=1))
    assert {catalog["B"], catalog["B^-1"], catalog["C"]} <= t8


def test_catalog_completeness(catalog, elements21):
    s = set(elements21)
    for g in catalog.values():
        assert g in s


def test_outputs_valid_and_closed(elements21, stab):
    s = set(elements21)
    assert len(s) == len(elements21)
    assert elements21 == sorted(elements21)
    for g in elements21:
        Isometry(g.entries, 7)
        assert inverse(g) in s
    for g in elements21[::97]:
        for s1 in stab.elements[::5]:
            for s2 in stab.elements[::7]:
                h = multiply(multiply(s1, g), s2)
                assert h.a44 == g.a44 and h in s


def test_strata_counts(elements21):
    assert strata_counts(elements21) == {1: 24, 6: 576, 8: 720, 13: 576, 15: 288, 20: 1152}


def test_parallel_matches_serial(elements21):
    assert assemble_isometries(7, 21, threads=3) == elements21


def test_bound_validated():
    with pytest.raises(ValueError):
        enumerate_unit_vectors(7, 0)
