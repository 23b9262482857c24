"""Reference classifications against the enumerator and against each other."""
from collections import Counter

import pytest

from _tables import complex_of, small_surfaces, chi8_surfaces, manifolds3
from csmanifolds.complex import (euler_characteristic, is_combinatorial_3manifold,
                                 is_combinatorial_surface)
from csmanifolds.enumerate import classify_key, enumerate_cs
from csmanifolds.homology import homology, is_orientable
from csmanifolds.notation import parse_faces
from csmanifolds.symmetry import is_centrally_symmetric

KIND = {"S2": "1,0,1", "T2": "1,2,1", "K": "1,1+Z2,0"}


@pytest.mark.parametrize("m", [3, 4, 5])
def test_small_surfaces_equal_enumeration(m):
    n = 2 * m
    rows = [r for r in small_surfaces() if r[0] == n]
    run = enumerate_cs(m)
    assert len(rows) == len(run)
    by_key = {r.canonical: r for r in run}
    assert {classify_key(o, n, "pointed") for _, _, _, o in rows} == set(by_key)
    for _, kind, fv, orbits in rows:
        r = by_key[classify_key(orbits, n, "pointed")]
        assert r.complex.f_vector == fv
        assert str(r.homology) == KIND[kind]


def test_small_surface_rows_are_surfaces():
    for n, kind, fv, orbits in small_surfaces():
        c = complex_of(orbits, n)
        assert is_combinatorial_surface(c) and is_centrally_symmetric(c)
        assert c.f_vector == fv
        assert is_orientable(c) == (kind != "K")


def test_small_surface_counts():
    assert Counter(r[0] for r in small_surfaces()) == {6: 1, 8: 5, 10: 56}
    assert Counter(k for n, k, _, _ in small_surfaces() if n == 10) == {"S2": 16, "T2": 29, "K": 11}


def test_chi8_rows():
    rows = chi8_surfaces()
    assert Counter(h for h, _ in rows) == {"1,10,1": 7, "1,9+Z2,0": 27}
    keys = set()
    for h, orbits in rows:
        c = complex_of(orbits, 12)
        assert is_combinatorial_surface(c) and is_centrally_symmetric(c)
        assert euler_characteristic(c) == -8
        assert str(homology(c)) == h
        keys.add(classify_key(orbits, 12, "pointed"))
    assert len(keys) == 34


def test_three_manifold_rows():
    rows = manifolds3()
    assert len(rows) == 68
    keys = set()
    for name, orbits in rows:
        c = complex_of(orbits, 12)
        assert is_combinatorial_3manifold(c), name
        assert is_centrally_symmetric(c)
        assert str(homology(c)) == "1,1,1,1"
        keys.add(classify_key(orbits, 12, "pointed"))
    assert len(keys) == 68


def test_m8_without_three_orbits_is_not_a_manifold():
    short = parse_faces("1234,1235,1245,1348,1356,1368,1456,1689,2347,"
                          "146b,148b,169b,189b,257a,259a,279a")
    c = complex_of(short, 12)
    assert not is_combinatorial_3manifold(c)
    assert str(homology(c)) == "1,1,2,0"
