"""Free simplicial involutions and central symmetry."""

from __future__ import annotations

from itertools import combinations

from .complex import Complex, PolyhedralMap, normalize_cycle


class Involution:
    """Fixed-point-free involution on the vertex labels ``1..n``.

    Stored as a tuple ``img`` with ``img[v]`` the partner of ``v``
    (index 0 unused).
    """

    __slots__ = ("_img",)

    def __init__(self, image):
        img = tuple(image)
        n = len(img) - 1
        if n < 0 or n % 2:
            raise ValueError("an involution without fixed points needs an even vertex count")
        for v in range(1, n + 1):
            w = img[v]
            if not (1 <= w <= n):
                raise ValueError(f"image {w} of {v} out of range")
            if w == v:
                raise ValueError(f"vertex {v} is fixed")
            if img[w] != v:
                raise ValueError(f"not an involution at {v}")
        self._img = img

    @classmethod
    def canonical(cls, n):
        """The involution ``v -> n + 1 - v``."""
        if n % 2 or n <= 0:
            raise ValueError("n must be positive and even")
        return cls([0] + [n + 1 - v for v in range(1, n + 1)])

    @classmethod
    def from_pairs(cls, pairs, n=None):
        pairs = [tuple(p) for p in pairs]
        if n is None:
            n = max(max(p) for p in pairs)
        img = [0] * (n + 1)
        for a, b in pairs:
            if img[a] or img[b]:
                raise ValueError(f"vertex repeated in pair ({a},{b})")
            img[a], img[b] = b, a
        if 0 in img[1:]:
            raise ValueError("pairs do not cover 1..n")
        return cls(img)

    @classmethod
    def from_cycles(cls, text, n=None):
        """Parse cycle notation such as ``(1,12)(2,11)``."""
        from .notation import parse_cycles
        return cls.from_pairs(parse_cycles(text), n)

    @property
    def n(self):
        return len(self._img) - 1

    def __call__(self, v):
        return self._img[v]

    def __getitem__(self, v):
        return self._img[v]

    def __eq__(self, other):
        return isinstance(other, Involution) and self._img == other._img

    def __hash__(self):
        return hash(self._img)

    def __repr__(self):
        return f"Involution({self.cycles()})"

    def pairs(self):
        return [(v, w) for v, w in enumerate(self._img) if 0 < v < w]

    def cycles(self):
        return "".join(f"({a},{b})" for a, b in self.pairs())

    def apply(self, face):
        return tuple(sorted(self._img[v] for v in face))

    def apply_cycle(self, cycle):
        return normalize_cycle(self._img[v] for v in cycle)

    def is_canonical(self):
        return all(self._img[v] == self.n + 1 - v for v in range(1, self.n + 1))


def apply(inv, obj):
    """Image of a complex or map under ``inv``."""
    if isinstance(obj, PolyhedralMap):
        return PolyhedralMap((inv.apply_cycle(f) for f in obj.faces), n=obj.n)
    return Complex((inv.apply(f) for f in obj.facets), n=obj.n)


def _face_sets(obj):
    if isinstance(obj, PolyhedralMap):
        # edges and vertices are faces of a map as well
        return [set(f) for f in obj.faces] + [set(e) for e in obj.edges]
    return [set(f) for f in obj.facets]


def fixed_faces(inv, obj):
    """Faces mapped onto themselves as sets.

    For a complex, a facet contains a fixed face iff it contains a pair
    ``{v, inv(v)}``; those facets are returned.
    """
    bad = []
    for s in _face_sets(obj):
        if any(inv(v) in s for v in s):
            bad.append(tuple(sorted(s)))
    return bad


def is_centrally_symmetric(obj, inv=None):
    """Invariant under a free involution that fixes no face setwise.

    ``inv`` defaults to the canonical involution ``v -> n + 1 - v``.
    """
    n = obj.n
    if n % 2:
        return False
    if inv is None:
        inv = Involution.canonical(n)
    if inv.n != n:
        return False
    if isinstance(obj, PolyhedralMap):
        faces = set(obj.faces)
        if any(inv.apply_cycle(f) not in faces for f in obj.faces):
            return False
    else:
        facets = set(obj.facets)
        if any(inv.apply(f) not in facets for f in obj.facets):
            return False
    return not fixed_faces(inv, obj)


def admissible_faces(n, k, inv=None):
    """All k-simplices on ``1..n`` containing no pair ``{v, inv(v)}``."""
    if inv is None:
        inv = Involution.canonical(n)
    return [f for f in combinations(range(1, n + 1), k + 1)
            if not any(inv(v) in f for v in f)]


def admissible_face_orbits(n, k, inv=None):
    """Orbits ``(F, inv(F))`` of admissible k-simplices, by least member."""
    if inv is None:
        inv = Involution.canonical(n)
    out = []
    for f in admissible_faces(n, k, inv):
        g = inv.apply(f)
        if f < g:
            out.append((f, g))
    return out


def orbit_closure(faces, inv):
    """Close a list of orbit representatives under ``inv``.

    Raises ``ValueError`` if a face is given twice or together with its
    image, or if it is not admissible.
    """
    seen = set()
    out = []
    for f in faces:
        t = tuple(sorted(f))
        g = inv.apply(t)
        if t == g or any(inv(v) in t for v in t):
            raise ValueError(f"face {t} contains an antipodal pair")
        if t in seen or g in seen:
            raise ValueError(f"orbit of {t} listed twice")
        seen.add(t)
        seen.add(g)
        out.extend((t, g))
    return sorted(out)


def cycle_orbit_closure(cycles, inv):
    """Close a list of face cycles under ``inv``."""
    seen = set()
    out = []
    for c in cycles:
        t = normalize_cycle(c)
        g = inv.apply_cycle(t)
        if t == g:
            raise ValueError(f"face {t} is fixed by the involution")
        if t in seen or g in seen:
            raise ValueError(f"orbit of {t} listed twice")
        seen.add(t)
        seen.add(g)
        out.extend((t, g))
    return sorted(out)


__all__ = [
    "Involution",
    "apply",
    "fixed_faces",
    "is_centrally_symmetric",
    "admissible_faces",
    "admissible_face_orbits",
    "orbit_closure",
    "cycle_orbit_closure",
]
