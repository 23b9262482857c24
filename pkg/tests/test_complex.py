from itertools import combinations
from math import comb

import pytest
from hypothesis import given, strategies as st

from csmanifolds.complex import (Complex, PolyhedralMap, euler_characteristic,
                                 face_vector, is_closed_pseudomanifold,
                                 is_combinatorial_3manifold,
                                 is_combinatorial_surface, is_connected,
                                 is_orientable_map, is_polyhedral_map, link,
                                 map_orientation, normalize_cycle,
                                 orientation_assignment, vertex_link_failures)
from spaces import (boundary_simplex, cross_polytope, octahedron, pinched,
                    rp2_6, torus7)


def faces_by_inclusion_exclusion(facets, k):
    """Number of k-faces from the facet list alone.

    |union of the k-face sets of the facets| via inclusion-exclusion over
    facet subsets; each intersection of facets is a simplex.
    """
    total = 0
    sets = [frozenset(f) for f in facets]
    for r in range(1, len(sets) + 1):
        for sub in combinations(sets, r):
            inter = frozenset.intersection(*sub)
            total += (-1) ** (r + 1) * comb(len(inter), k + 1)
    return total


@pytest.mark.parametrize("make", [boundary_simplex, octahedron, rp2_6])
def test_f_vector_matches_inclusion_exclusion(make):
    c = make(2) if make is boundary_simplex else make()
    expect = tuple(faces_by_inclusion_exclusion(c.facets, k) for k in range(c.dim + 1))
    assert c.f_vector == expect
    assert euler_characteristic(c) == sum((-1) ** k * x for k, x in enumerate(expect))


def test_known_face_vectors():
    assert face_vector(octahedron()) == (6, 12, 8)
    assert face_vector(torus7()) == (7, 21, 14)
    assert face_vector(cross_polytope(3)) == (8, 24, 32, 16)
    assert euler_characteristic(rp2_6()) == 1
    assert euler_characteristic(cross_polytope(3)) == 0


def test_faces_sorted_and_counted():
    c = octahedron()
    assert c.faces(0) == tuple((v,) for v in range(1, 7))
    assert len(c.faces(1)) == 12
    assert all(list(f) == sorted(f) for f in c.faces(2))


def test_construction_errors():
    with pytest.raises(ValueError, match="repeats"):
        Complex([(1, 1, 2)])
    with pytest.raises(ValueError, match="not pure"):
        Complex([(1, 2, 3), (3, 4)])
    with pytest.raises(ValueError, match="missing"):
        Complex([(1, 2, 4)])
    with pytest.raises(ValueError, match="duplicate"):
        Complex([(1, 2, 3), (3, 2, 1)])
    with pytest.raises(ValueError, match="exceeds"):
        Complex([(1, 2, 3)], n=2)
    assert Complex([(2, 5, 9)], dense=False).n == 3


def test_links():
    c = octahedron()
    assert link(c, 1).facets == ((2, 3), (2, 4), (3, 5), (4, 5))
    with pytest.raises(KeyError):
        link(c, 99)
    lk = link(cross_polytope(3), 1)
    assert lk.f_vector == (6, 12, 8)


def test_manifold_checks():
    assert is_combinatorial_surface(torus7())
    assert is_combinatorial_surface(rp2_6())
    p = pinched()
    assert is_closed_pseudomanifold(p) and is_connected(p)
    assert not is_combinatorial_surface(p)
    assert vertex_link_failures(p) == [1]
    assert is_combinatorial_3manifold(cross_polytope(3))
    assert not is_combinatorial_3manifold(octahedron())
    disc = Complex([(1, 2, 3)])
    assert not is_closed_pseudomanifold(disc)


def test_disconnected_is_not_a_surface():
    a = [f for f in octahedron().facets]
    b = [tuple(v + 6 for v in f) for f in a]
    c = Complex(a + b)
    assert not is_connected(c)
    assert not is_combinatorial_surface(c)


def test_orientation():
    assert orientation_assignment(torus7()) is not None
    assert orientation_assignment(rp2_6()) is None
    with pytest.raises(ValueError):
        orientation_assignment(Complex([(1, 2, 3)]))
    sign = orientation_assignment(cross_polytope(3))
    # every ridge receives opposite induced orientations
    seen = {}
    for f, s in sign.items():
        for i in range(4):
            r = f[:i] + f[i + 1:]
            seen.setdefault(r, []).append(s * (-1) ** i)
    assert all(sorted(v) == [-1, 1] for v in seen.values())


@given(st.permutations(list(range(1, 8))))
def test_relabel_preserves_invariants(perm):
    c = torus7()
    d = c.relabel(lambda v: perm[v - 1])
    assert d.f_vector == c.f_vector
    assert is_combinatorial_surface(d)
    assert (orientation_assignment(d) is None) == (orientation_assignment(c) is None)


def test_normalize_cycle():
    assert normalize_cycle((3, 1, 2)) == (1, 2, 3)
    assert normalize_cycle((1, 4, 3, 2)) == (1, 2, 3, 4)
    assert normalize_cycle((5, 9, 7)) == normalize_cycle((7, 9, 5))


def square_map():
    # cube boundary
    return PolyhedralMap([(1, 2, 4, 3), (5, 6, 8, 7), (1, 2, 6, 5),
                          (3, 4, 8, 7), (1, 3, 7, 5), (2, 4, 8, 6)])


def test_polyhedral_map_basics():
    m = square_map()
    assert m.f_vector == (8, 12, 6)
    assert euler_characteristic(m) == 2
    assert is_polyhedral_map(m)
    assert is_orientable_map(m)
    sign = map_orientation(m)
    assert set(sign.values()) <= {1, -1}
    assert len(m.vertex_rotation(1)) == 3


def test_non_polyhedral_maps():
    # the same cycle twice is one face, not a two-face sphere
    with pytest.raises(ValueError):
        PolyhedralMap([(1, 2, 3), (3, 2, 1)])
    assert not is_polyhedral_map(PolyhedralMap([(1, 2, 3, 4)]))
    # two quadrilaterals sharing the opposite corners 1 and 3 only
    faces = [(1, 2, 3, 4), (1, 5, 3, 6), (1, 2, 3, 5), (1, 4, 3, 6)]
    assert not is_polyhedral_map(PolyhedralMap(faces))


def test_map_from_complex_roundtrip():
    c = octahedron()
    m = PolyhedralMap.from_complex(c)
    assert is_polyhedral_map(m)
    assert m.to_complex() == c
    with pytest.raises(ValueError):
        square_map().to_complex()
