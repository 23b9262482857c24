"""Small named complexes shared by the tests."""

from itertools import combinations

from csmanifolds.complex import Complex


def boundary_simplex(d):
    return Complex(combinations(range(1, d + 3), d + 1))


def octahedron():
    # cross-polytope boundary, antipodes v <-> 7 - v
    return Complex([(a, b, c) for a in (1, 6) for b in (2, 5) for c in (3, 4)])


def cross_polytope(d):
    n = 2 * (d + 1)
    pairs = [(i, n + 1 - i) for i in range(1, d + 2)]
    facets = []
    for mask in range(2 ** (d + 1)):
        facets.append(tuple(p[(mask >> i) & 1] for i, p in enumerate(pairs)))
    return Complex(facets)


def torus7():
    fs = []
    for i in range(7):
        fs.append(tuple(sorted({i % 7 + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1})))
        fs.append(tuple(sorted({i % 7 + 1, (i + 2) % 7 + 1, (i + 3) % 7 + 1})))
    return Complex(fs)


def rp2_6():
    return Complex([(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
                    (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6)])


def pinched():
    # two octahedra sharing one vertex
    a = octahedron().facets
    b = [tuple(v + 5 if v != 1 else 1 for v in f) for f in a]
    return Complex(list(a) + b)
