"""Explicit centrally symmetric maps and the constructions built on them.

Seed maps (subdivided cube, dodecahedron, hexagonal torus, a 12-vertex
triangulated torus), the involution-compatible connected sum, the genus
families obtained by iterating it, duals, and tightness arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import comb
from typing import Optional, Union

from .complex import (Complex, PolyhedralMap, euler_characteristic,
                      is_combinatorial_surface, is_connected, is_polyhedral_map,
                      map_orientation, normalize_cycle, orientation_assignment)
from .symmetry import Involution, is_centrally_symmetric


class GluingError(ValueError):
    """A connected sum was requested on faces that do not allow it."""


@dataclass(frozen=True)
class CsMap:
    """A map or 2-complex together with an involution it is CS under."""

    map: Union[PolyhedralMap, Complex]
    involution: Involution

    def __post_init__(self):
        if not is_centrally_symmetric(self.map, self.involution):
            raise ValueError("object is not centrally symmetric under the involution")

    @property
    def n(self):
        return self.map.n

    @property
    def faces(self):
        if isinstance(self.map, PolyhedralMap):
            return self.map.faces
        return self.map.facets

    def as_map(self):
        if isinstance(self.map, PolyhedralMap):
            return self.map
        return PolyhedralMap.from_complex(self.map)

    @property
    def f_vector(self):
        return self.as_map().f_vector

    @property
    def euler_characteristic(self):
        return euler_characteristic(self.as_map())

    def is_orientable(self):
        return map_orientation(self.as_map()) is not None

    @property
    def genus(self):
        """Orientable genus, or non-orientable genus for the other case."""
        chi = self.euler_characteristic
        return (2 - chi) // 2 if self.is_orientable() else 2 - chi

    def face_sizes(self):
        return sorted({len(f) for f in self.faces})

    def is_polyhedral(self):
        return is_polyhedral_map(self.as_map())


# ---------------------------------------------------------------------------
# seeds
# ---------------------------------------------------------------------------

def _cube_label(p):
    # lex index in {0,1,2}^3 with the centre removed
    i = p[0] * 9 + p[1] * 3 + p[2]
    return i + 1 if i < 13 else i


def subdivided_cube():
    """Cube boundary with every square cut into four; 26 vertices.

    Points of ``{0,1,2}^3`` other than the centre are labelled 1..26 in
    lexicographic order, so the antipodal map is ``v -> 27 - v``.
    """
    faces = []
    for axis in range(3):
        others = [a for a in range(3) if a != axis]
        for side in (0, 2):
            for u, w in product((0, 1), repeat=2):
                corners = [(u, w), (u + 1, w), (u + 1, w + 1), (u, w + 1)]
                cyc = []
                for cu, cw in corners:
                    p = [0, 0, 0]
                    p[axis] = side
                    p[others[0]] = cu
                    p[others[1]] = cw
                    cyc.append(_cube_label(p))
                faces.append(cyc)
    return CsMap(PolyhedralMap(faces), Involution.canonical(26))


def cube():
    """The plain cube boundary on 8 vertices, antipodal map ``v -> 9 - v``."""
    faces = []
    for axis in range(3):
        others = [a for a in range(3) if a != axis]
        for side in (0, 1):
            cyc = []
            for cu, cw in [(0, 0), (1, 0), (1, 1), (0, 1)]:
                p = [0, 0, 0]
                p[axis] = side
                p[others[0]] = cu
                p[others[1]] = cw
                cyc.append(p[0] * 4 + p[1] * 2 + p[2] + 1)
            faces.append(cyc)
    return CsMap(PolyhedralMap(faces), Involution.canonical(8))


_DODECAHEDRON = [
    (1, 2, 17, 16, 10), (2, 3, 4, 18, 17), (4, 5, 6, 19, 18), (6, 19, 20, 8, 7),
    (8, 20, 16, 10, 9), (16, 17, 18, 19, 20), (1, 2, 3, 12, 11), (3, 4, 5, 13, 12),
    (5, 6, 7, 14, 13), (7, 8, 9, 15, 14), (9, 10, 1, 11, 15), (11, 12, 13, 14, 15),
]
_DODECAHEDRON_INV = [(5, 10), (2, 7), (3, 8), (1, 6), (4, 9),
                     (14, 17), (13, 16), (15, 18), (11, 19), (12, 20)]


def dodecahedron():
    return CsMap(PolyhedralMap(_DODECAHEDRON),
                 Involution.from_pairs(_DODECAHEDRON_INV, 20))


def hexagonal_torus():
    """Twelve hexagons on 24 vertices; involution ``v <-> v + 12``."""
    faces = []
    for j in range(12):
        a = 2 * j
        # vertices a+1 .. a+3 on one row, a+6 .. a+8 on the next
        cyc = [a + 1, a + 2, a + 3, a + 8, a + 7, a + 6]
        faces.append([(v - 1) % 24 + 1 for v in cyc])
    inv = Involution.from_pairs([(i, i + 12) for i in range(1, 13)], 24)
    return CsMap(PolyhedralMap(faces), inv)


# labels 0', 1', 2' are written as 10, 11, 12
_TORUS12 = [
    (1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 5), (2, 4, 5), (3, 4, 6), (3, 5, 7),
    (3, 6, 9), (3, 7, 8), (3, 8, 9), (4, 5, 10), (4, 6, 8), (4, 7, 8), (4, 7, 10),
    (5, 6, 9), (5, 6, 10), (5, 7, 9), (6, 8, 10), (7, 9, 10), (8, 9, 11),
    (8, 10, 11), (9, 10, 12), (9, 11, 12), (10, 11, 12),
]


def example_torus():
    """A 12-vertex CS triangulated torus under ``v -> 13 - v``."""
    return CsMap(Complex(_TORUS12), Involution.canonical(12))


# ---------------------------------------------------------------------------
# connected sum
# ---------------------------------------------------------------------------

def _cycle_key(face):
    return normalize_cycle(face)


def _has_face(cs, face):
    if isinstance(cs.map, PolyhedralMap):
        return _cycle_key(face) in set(cs.map.faces)
    return tuple(sorted(face)) in set(cs.map.facets)


def _edges(cs):
    m = cs.as_map()
    return set(m.edges)


def _check_side(cs, face, side):
    inv = cs.involution
    if not _has_face(cs, face):
        raise GluingError(f"{side}: {tuple(face)} is not a face")
    img = [inv(v) for v in face]
    if set(img) & set(face):
        raise GluingError(f"{side}: face {tuple(face)} meets its image")
    edges = _edges(cs)
    for u in face:
        for w in img:
            if (min(u, w), max(u, w)) in edges:
                raise GluingError(
                    f"{side}: edge {min(u, w)}-{max(u, w)} joins face {tuple(face)} to its image")


@dataclass(frozen=True)
class GluingSpec:
    """Faces to glue and the vertex correspondence between them.

    ``face_a`` and ``face_b`` are written as cycles in the labels of their
    own maps.  Unless given, the correspondence sends ``face_a[i]`` to
    ``face_b[i]``.  Image faces are glued through the induced map
    ``I_A(x) -> I_B(corr(x))``.
    """

    face_a: tuple
    face_b: tuple
    correspondence: Optional[dict] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "face_a", tuple(self.face_a))
        object.__setattr__(self, "face_b", tuple(self.face_b))
        if self.correspondence is None:
            if len(self.face_a) == len(self.face_b):
                object.__setattr__(self, "correspondence",
                                   dict(zip(self.face_a, self.face_b)))
        else:
            object.__setattr__(self, "correspondence", dict(self.correspondence))

    @classmethod
    def from_text(cls, text):
        """Read ``"<faceA> > <faceB>"``, e.g. ``"123 > 123"`` or
        ``"[1,2,17,16,10] > [1,2,17,16,10]"``."""
        from .notation import parse_faces
        if ">" not in text:
            raise ValueError("gluing text needs the form 'faceA > faceB'")
        left, right = text.split(">", 1)
        fa, fb = parse_faces(left), parse_faces(right)
        if len(fa) != 1 or len(fb) != 1:
            raise ValueError("gluing text needs exactly one face on each side")
        return cls(fa[0], fb[0])

    def to_text(self):
        from .notation import format_face
        b = tuple(self.correspondence[v] for v in self.face_a)
        return f"{format_face(self.face_a)} > {format_face(b)}"

    def validate(self, a, b):
        if len(self.face_a) != len(self.face_b):
            raise GluingError(
                f"face sizes differ: {len(self.face_a)} vs {len(self.face_b)}")
        corr = self.correspondence
        if sorted(corr) != sorted(self.face_a) or sorted(corr.values()) != sorted(self.face_b):
            raise GluingError("correspondence is not a bijection between the faces")
        _check_side(a, self.face_a, "A")
        _check_side(b, self.face_b, "B")
        # boundary edges must go to boundary edges
        k = len(self.face_a)
        eb = {frozenset((self.face_b[i], self.face_b[(i + 1) % k])) for i in range(k)}
        for i in range(k):
            x, y = self.face_a[i], self.face_a[(i + 1) % k]
            if frozenset((corr[x], corr[y])) not in eb:
                raise GluingError("correspondence does not respect the face cycles")


def _glue_candidates(cs):
    inv = cs.involution
    edges = _edges(cs)
    for f in cs.faces:
        img = [inv(v) for v in f]
        if set(img) & set(f):
            continue
        if any((min(u, w), max(u, w)) in edges for u in f for w in img):
            continue
        yield f


def default_gluing(a, b):
    """Least admissible face on each side, glued position by position."""
    fa = next(_glue_candidates(a), None)
    fb = next(_glue_candidates(b), None)
    if fa is None or fb is None:
        raise GluingError("no face whose orbit satisfies the no-edge condition")
    return GluingSpec(fa, fb)


def _is_surface_map(pm):
    if any(len(x) != 2 for x in pm.edge_faces.values()):
        return False
    return all(pm.vertex_rotation(v) is not None for v in pm.vertices)


def cs_connected_sum(a, b, g=None):
    """Connected sum along a face orbit of ``a`` and one of ``b``.

    The two faces of each orbit are removed and the boundary cycles
    identified, so the vertex count drops by twice the face size and the
    Euler characteristic is ``chi(a) + chi(b) - 4``.  Vertices of ``a`` keep
    their labels; the rest of ``b`` follows in order.
    """
    if isinstance(a.map, PolyhedralMap) != isinstance(b.map, PolyhedralMap):
        raise GluingError("cannot glue a map to a simplicial complex")
    if g is None:
        g = default_gluing(a, b)
    g.validate(a, b)
    ia, ib = a.involution, b.involution
    ident = {}
    for x in g.face_a:
        y = g.correspondence[x]
        ident[y] = x
        ident[ib(y)] = ia(x)
    nxt = a.n
    for v in range(1, b.n + 1):
        if v not in ident:
            nxt += 1
            ident[v] = nxt
    drop_a = {_cycle_key(g.face_a), _cycle_key(ia.apply_cycle(g.face_a))}
    drop_b = {_cycle_key(g.face_b), _cycle_key(ib.apply_cycle(g.face_b))}
    faces = [f for f in a.faces if _cycle_key(f) not in drop_a]
    faces += [[ident[v] for v in f] for f in b.faces if _cycle_key(f) not in drop_b]
    img = [0] * (nxt + 1)
    for v in range(1, a.n + 1):
        img[v] = ia(v)
    for v in range(1, b.n + 1):
        img[ident[v]] = ident[ib(v)]
    inv = Involution(img)
    if isinstance(a.map, PolyhedralMap):
        obj = PolyhedralMap(faces, n=nxt)
        # polyhedrality is reported by CsMap.is_polyhedral, not required
        if not _is_surface_map(obj):
            raise GluingError("glued object is not a closed surface map")
    else:
        obj = Complex(faces, n=nxt)
        if not (is_combinatorial_surface(obj) and is_connected(obj)):
            raise GluingError("glued complex is not a connected surface")
    return CsMap(obj, inv)


# ---------------------------------------------------------------------------
# genus families
# ---------------------------------------------------------------------------

def _iterate(seed, steps):
    cur = seed()
    for _ in range(steps):
        cur = cs_connected_sum(cur, seed())
    return cur


def quad_genus_surface(g):
    """Quadrangulated CS map of genus ``g`` on ``18 g + 26`` vertices."""
    if g < 0:
        raise ValueError("genus must be >= 0")
    return _iterate(subdivided_cube, g)


def pentagon_genus_surface(g):
    """Pentagonal CS map of genus ``g`` on ``10 g + 20`` vertices."""
    if g < 0:
        raise ValueError("genus must be >= 0")
    return _iterate(dodecahedron, g)


def hexagon_genus_surface(k):
    """Hexagonal CS map of genus ``2k - 1`` on ``24 + 12 (k - 1)`` vertices.

    Only odd genera arise this way.
    """
    if k < 1:
        raise ValueError("k must be >= 1 (the genus 2k-1 must be odd and positive)")
    return _iterate(hexagonal_torus, k - 1)


# ---------------------------------------------------------------------------
# duality
# ---------------------------------------------------------------------------

def dual_map(cs):
    """Dual of a CS polyhedral map, CS under the induced face pairing.

    Face orbits are numbered by their least face; the faces of the i-th
    orbit become dual vertices ``i`` and ``F + 1 - i``, so the dual involution
    is ``v -> F + 1 - v``.
    """
    pm = cs.as_map()
    if not is_polyhedral_map(pm):
        raise ValueError("dual needs a polyhedral map")
    inv = cs.involution
    nf = len(pm.faces)
    label = {}
    i = 0
    for f in pm.faces:
        if f in label:
            continue
        i += 1
        label[f] = i
        label[inv.apply_cycle(f)] = nf + 1 - i
    dual_faces = []
    for v in pm.vertices:
        rot = pm.vertex_rotation(v)
        dual_faces.append([label[f] for f in rot])
    return CsMap(PolyhedralMap(dual_faces, n=nf), Involution.canonical(nf))


# ---------------------------------------------------------------------------
# tightness
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TightnessReport:
    n: int
    edges: int
    euler: int
    two_neighbourly: bool
    tight_relation: bool
    cs_checked: bool = False
    cs: Optional[bool] = None
    cs_edge_count: Optional[bool] = None
    cs_relation: Optional[bool] = None
    cs_tight_possible: bool = False

    @property
    def tight(self):
        return self.two_neighbourly and self.tight_relation

    @property
    def cs_tight(self):
        return bool(self.cs and self.cs_edge_count and self.cs_relation)

    def lines(self):
        out = [f"n = {self.n}, edges = {self.edges}, chi = {self.euler}",
               f"tight: {'yes' if self.tight else 'no'}"]
        if not self.cs_tight_possible:
            out.append(f"CS-tight: no CS-tight object on {self.n} vertices")
        elif self.cs_checked:
            out.append(f"CS-tight: {'yes' if self.cs_tight else 'no'}")
        return out


def cs_tight_euler(n):
    """Euler characteristic forced on a CS-tight surface with ``n`` vertices,
    or ``None`` when the relation has no integer solution."""
    if n % 2:
        return None
    m = n // 2
    lhs = 2 * (m - 1) * (m - 3)
    if lhs % 3:
        return None
    return 2 - lhs // 3


def tightness_check(c, inv=None):
    """Compare a surface against the tight and CS-tight relations."""
    if isinstance(c, CsMap):
        inv = inv or c.involution
        c = c.map
    if isinstance(c, PolyhedralMap):
        c = c.to_complex()
    if not is_combinatorial_surface(c):
        raise ValueError("tightness check needs a combinatorial surface")
    n = c.n
    e = len(c.faces(1))
    chi = euler_characteristic(c)
    rep = dict(n=n, edges=e, euler=chi,
               two_neighbourly=e == comb(n, 2),
               tight_relation=(n - 3) * (n - 4) == 6 * (2 - chi),
               cs_tight_possible=cs_tight_euler(n) is not None)
    if inv is not None:
        m = n // 2
        rep.update(cs_checked=True,
                   cs=is_centrally_symmetric(c, inv),
                   cs_edge_count=e == comb(n, 2) - m,
                   cs_relation=n % 2 == 0 and 2 * (m - 1) * (m - 3) == 3 * (2 - chi))
    return TightnessReport(**rep)


def orientable_certificate(cs):
    """Coherent face orientation (``face -> +1/-1``), or ``None``."""
    if isinstance(cs.map, Complex):
        return orientation_assignment(cs.map)
    return map_orientation(cs.map)


__all__ = [
    "CsMap", "GluingSpec", "GluingError", "TightnessReport",
    "subdivided_cube", "cube", "dodecahedron", "hexagonal_torus", "example_torus",
    "default_gluing", "cs_connected_sum",
    "quad_genus_surface", "pentagon_genus_surface", "hexagon_genus_surface",
    "dual_map", "tightness_check", "cs_tight_euler", "orientable_certificate",
]
