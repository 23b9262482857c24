"""Pure simplicial complexes and polyhedral maps.

Both types are immutable after construction.  Derived data (faces of each
dimension, f-vector, edges) is computed lazily and cached on the instance.
Vertex labels are positive integers; complexes built from user input must
use the dense label set ``1..n``.
"""

from __future__ import annotations

from collections import defaultdict, deque
from functools import cached_property
from itertools import combinations


class Complex:
    """Pure simplicial complex given by its facets.

    Parameters
    ----------
    facets : iterable of iterables of int
        Facets; each is stored as a sorted tuple.
    n : int, optional
        Number of vertices.  Defaults to the largest label.
    dense : bool
        Require the used labels to be exactly ``1..n`` (the default).
        Subcomplexes such as links are built with ``dense=False``.
    """

    __slots__ = ("_facets", "_n", "_dim", "_vertices", "__dict__")

    def __init__(self, facets, n=None, *, dense=True):
        fs = set()
        for f in facets:
            t = tuple(sorted(f))
            if len(set(t)) != len(t):
                raise ValueError(f"facet {t} repeats a vertex")
            if t and (not all(isinstance(v, int) for v in t) or t[0] < 1):
                raise ValueError(f"facet {t} has a non-positive or non-integer label")
            if t in fs:
                raise ValueError(f"duplicate facet {t}")
            fs.add(t)
        sizes = {len(f) for f in fs}
        if len(sizes) > 1:
            raise ValueError("complex is not pure (facets of different sizes)")
        used = sorted({v for f in fs for v in f})
        if n is None:
            n = used[-1] if used else 0
        if used and used[-1] > n:
            raise ValueError(f"label {used[-1]} exceeds n = {n}")
        if dense and len(used) != n:
            missing = sorted(set(range(1, n + 1)) - set(used))
            raise ValueError(f"labels must be exactly 1..{n}; missing {missing}")
        self._facets = tuple(sorted(fs))
        self._n = n if dense else len(used)
        self._vertices = tuple(used)
        self._dim = (sizes.pop() - 1) if sizes else -1

    @property
    def facets(self):
        return self._facets

    @property
    def n(self):
        return self._n

    @property
    def dim(self):
        return self._dim

    @property
    def vertices(self):
        return self._vertices

    def __len__(self):
        return len(self._facets)

    def __iter__(self):
        return iter(self._facets)

    def __contains__(self, face):
        return tuple(sorted(face)) in self._facets

    def __eq__(self, other):
        return isinstance(other, Complex) and self._facets == other._facets

    def __hash__(self):
        return hash(self._facets)

    def __repr__(self):
        return f"Complex(n={self.n}, dim={self.dim}, facets={len(self._facets)})"

    @cached_property
    def _faces(self):
        out = [set() for _ in range(self._dim + 1)]
        for f in self._facets:
            for k in range(1, len(f) + 1):
                out[k - 1].update(combinations(f, k))
        return [tuple(sorted(s)) for s in out]

    def faces(self, k):
        """Sorted k-dimensional faces, by downward closure of the facets."""
        if k < 0 or k > self._dim:
            return ()
        return self._faces[k]

    @cached_property
    def f_vector(self):
        return tuple(len(s) for s in self._faces)

    def relabel(self, mapping):
        """Apply a vertex relabeling given as a dict or a callable."""
        fn = mapping if callable(mapping) else mapping.__getitem__
        return Complex(([fn(v) for v in f] for f in self._facets),
                       n=self._n, dense=False)

    @cached_property
    def vertex_facets(self):
        out = defaultdict(list)
        for f in self._facets:
            for v in f:
                out[v].append(f)
        return dict(out)


def face_vector(c):
    """Face vector ``(f_0, ..., f_d)``."""
    return c.f_vector


def euler_characteristic(obj):
    """Alternating face count; ``V - E + F`` for a polyhedral map."""
    if isinstance(obj, PolyhedralMap):
        return obj.n - len(obj.edges) + len(obj.faces)
    return sum((-1) ** i * x for i, x in enumerate(obj.f_vector))


def link(c, v):
    """Link of vertex ``v`` as a complex on the remaining labels."""
    if v not in c.vertex_facets:
        raise KeyError(f"unknown vertex {v}")
    return Complex((tuple(u for u in f if u != v) for f in c.vertex_facets[v]),
                   dense=False)


def is_closed_pseudomanifold(c):
    """Every ridge lies in exactly two facets."""
    if c.dim < 1:
        return False
    count = defaultdict(int)
    for f in c.facets:
        for r in combinations(f, len(f) - 1):
            count[r] += 1
    return all(x == 2 for x in count.values())


def is_connected(c):
    """Connectivity of the vertex-edge graph (facets for 0-complexes)."""
    verts = c.vertices
    if not verts:
        return True
    adj = defaultdict(set)
    for f in c.facets:
        for u in f:
            adj[u].update(f)
    seen = {verts[0]}
    todo = [verts[0]]
    while todo:
        u = todo.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == len(verts)


def _is_cycle(c):
    # 1-dimensional complex forming a single cycle
    if c.dim != 1 or len(c.facets) < 3:
        return False
    deg = defaultdict(int)
    for a, b in c.facets:
        deg[a] += 1
        deg[b] += 1
    return all(x == 2 for x in deg.values()) and is_connected(c)


def is_combinatorial_surface(c):
    """Closed, connected, and every vertex link is one cycle."""
    if c.dim != 2 or not is_closed_pseudomanifold(c) or not is_connected(c):
        return False
    return all(_is_cycle(link(c, v)) for v in c.vertices)


def is_combinatorial_3manifold(c):
    """Closed, connected, and every vertex link is a 2-sphere.

    A link is accepted when it is a combinatorial surface of Euler
    characteristic 2, which characterizes the 2-sphere.
    """
    if c.dim != 3 or not is_closed_pseudomanifold(c) or not is_connected(c):
        return False
    for v in c.vertices:
        lk = link(c, v)
        if not is_combinatorial_surface(lk) or euler_characteristic(lk) != 2:
            return False
    return True


def vertex_link_failures(c):
    """Vertices whose links are not spheres of dimension ``dim - 1``."""
    bad = []
    for v in c.vertices:
        lk = link(c, v)
        if c.dim == 2:
            ok = _is_cycle(lk)
        elif c.dim == 3:
            ok = is_combinatorial_surface(lk) and euler_characteristic(lk) == 2
        else:
            ok = False
        if not ok:
            bad.append(v)
    return bad


def orientation_assignment(c):
    """Coherent orientation of the facets, or ``None`` if non-orientable.

    Returns a dict ``facet -> +1/-1`` relative to the sorted vertex order,
    such that the two facets through each ridge induce opposite
    orientations on it.  The input must be a closed pseudomanifold; a
    disconnected one is oriented component by component.
    """
    if not is_closed_pseudomanifold(c):
        raise ValueError("orientation needs a closed pseudomanifold")
    by_ridge = defaultdict(list)
    for f in c.facets:
        for i in range(len(f)):
            by_ridge[f[:i] + f[i + 1:]].append((f, i))
    sign = {}
    for root in c.facets:
        if root in sign:
            continue
        sign[root] = 1
        todo = deque([root])
        while todo:
            f = todo.popleft()
            for i in range(len(f)):
                r = f[:i] + f[i + 1:]
                induced = sign[f] * (-1) ** i
                for g, j in by_ridge[r]:
                    if g == f:
                        continue
                    want = -induced * (-1) ** j
                    if g in sign:
                        if sign[g] != want:
                            return None
                    else:
                        sign[g] = want
                        todo.append(g)
    return sign


# ---------------------------------------------------------------------------
# polyhedral maps
# ---------------------------------------------------------------------------

def normalize_cycle(cycle):
    """Least rotation/reflection of a cyclic vertex sequence."""
    seq = tuple(cycle)
    k = len(seq)
    best = None
    for s in (seq, seq[::-1]):
        for i in range(k):
            cand = s[i:] + s[:i]
            if best is None or cand < best:
                best = cand
    return best


def cycle_edges(cycle):
    k = len(cycle)
    return [tuple(sorted((cycle[i], cycle[(i + 1) % k]))) for i in range(k)]


class PolyhedralMap:
    """Map on a closed surface given by its face cycles.

    Face cycles are normalized to their lexicographically least rotation or
    reflection, so two maps with the same faces compare equal.
    """

    __slots__ = ("_faces", "_n", "_vertices", "__dict__")

    def __init__(self, faces, n=None, *, dense=True):
        fs = set()
        for f in faces:
            t = tuple(f)
            if len(t) < 3 or len(set(t)) != len(t):
                raise ValueError(f"face {t} is not a cycle of >= 3 distinct vertices")
            if not all(isinstance(v, int) and v >= 1 for v in t):
                raise ValueError(f"face {t} has a bad label")
            t = normalize_cycle(t)
            if t in fs:
                raise ValueError(f"duplicate face {t}")
            fs.add(t)
        used = sorted({v for f in fs for v in f})
        if n is None:
            n = used[-1] if used else 0
        if used and used[-1] > n:
            raise ValueError(f"label {used[-1]} exceeds n = {n}")
        if dense and len(used) != n:
            missing = sorted(set(range(1, n + 1)) - set(used))
            raise ValueError(f"labels must be exactly 1..{n}; missing {missing}")
        self._faces = tuple(sorted(fs))
        self._n = n
        self._vertices = tuple(used)

    @property
    def faces(self):
        return self._faces

    @property
    def n(self):
        return self._n

    @property
    def vertices(self):
        return self._vertices

    def __eq__(self, other):
        return isinstance(other, PolyhedralMap) and self._faces == other._faces

    def __hash__(self):
        return hash(self._faces)

    def __repr__(self):
        sizes = sorted({len(f) for f in self._faces})
        return f"PolyhedralMap(n={self.n}, faces={len(self._faces)}, sizes={sizes})"

    @cached_property
    def edges(self):
        return tuple(sorted({e for f in self._faces for e in cycle_edges(f)}))

    @cached_property
    def edge_faces(self):
        out = defaultdict(list)
        for f in self._faces:
            for e in cycle_edges(f):
                out[e].append(f)
        return dict(out)

    @property
    def f_vector(self):
        return (self.n, len(self.edges), len(self._faces))

    @classmethod
    def from_complex(cls, c):
        if c.dim != 2:
            raise ValueError("only 2-complexes convert to maps")
        return cls(c.facets, n=c.n)

    def to_complex(self):
        """The triangles as a simplicial complex (all faces must be triangles)."""
        if any(len(f) != 3 for f in self._faces):
            raise ValueError("map has non-triangular faces")
        return Complex(self._faces, n=self.n)

    def relabel(self, mapping):
        fn = mapping if callable(mapping) else mapping.__getitem__
        return PolyhedralMap(([fn(v) for v in f] for f in self._faces),
                             n=self._n, dense=False)

    def vertex_rotation(self, v):
        """Faces around ``v`` in cyclic order, or ``None`` if they do not
        close up into a single cycle."""
        around = [f for f in self._faces if v in f]
        if not around:
            return None
        # each face contributes the pair of neighbours of v inside it
        nbrs = {}
        for f in around:
            k = len(f)
            i = f.index(v)
            nbrs[f] = (f[i - 1], f[(i + 1) % k])
        by_edge = defaultdict(list)
        for f, (a, b) in nbrs.items():
            by_edge[a].append(f)
            by_edge[b].append(f)
        if any(len(x) != 2 for x in by_edge.values()):
            return None
        order = [around[0]]
        prev_edge = nbrs[around[0]][0]
        cur = around[0]
        while True:
            a, b = nbrs[cur]
            nxt_edge = b if a == prev_edge else a
            g1, g2 = by_edge[nxt_edge]
            nxt = g2 if g1 == cur else g1
            if nxt == order[0]:
                break
            order.append(nxt)
            prev_edge, cur = nxt_edge, nxt
        if len(order) != len(around):
            return None
        return order


def is_polyhedral_map(pm):
    """Closed-surface map whose faces meet in nothing, a vertex, or an edge."""
    if not pm.faces:
        return False
    if any(len(x) != 2 for x in pm.edge_faces.values()):
        return False
    for v in pm.vertices:
        if pm.vertex_rotation(v) is None:
            return False
    edge_set = set(pm.edges)
    faces = pm.faces
    sets = [set(f) for f in faces]
    for i in range(len(faces)):
        for j in range(i + 1, len(faces)):
            common = sets[i] & sets[j]
            if len(common) <= 1:
                continue
            if len(common) > 2:
                return False
            e = tuple(sorted(common))
            if e not in edge_set:
                return False
            if e not in cycle_edges(faces[i]) or e not in cycle_edges(faces[j]):
                return False
    # connected 1-skeleton
    adj = defaultdict(set)
    for a, b in pm.edges:
        adj[a].add(b)
        adj[b].add(a)
    start = pm.vertices[0]
    seen = {start}
    todo = [start]
    while todo:
        u = todo.pop()
        for w in adj[u] - seen:
            seen.add(w)
            todo.append(w)
    return len(seen) == len(pm.vertices)


def map_orientation(pm):
    """Orientation of a map's faces, or ``None`` if non-orientable.

    Returns ``face -> +1/-1`` (keep / reverse the stored cycle) so that every
    edge is traversed once in each direction.
    """
    if any(len(x) != 2 for x in pm.edge_faces.values()):
        raise ValueError("orientation needs every edge in exactly two faces")

    def directed(f, s):
        k = len(f)
        seq = f if s == 1 else f[::-1]
        return {(seq[i], seq[(i + 1) % k]) for i in range(k)}

    sign = {}
    for root in pm.faces:
        if root in sign:
            continue
        sign[root] = 1
        todo = deque([root])
        while todo:
            f = todo.popleft()
            darts = directed(f, sign[f])
            for a, b in darts:
                e = (a, b) if a < b else (b, a)
                for g in pm.edge_faces[e]:
                    if g == f:
                        continue
                    # g must traverse the edge as (b, a)
                    want = 1 if (b, a) in directed(g, 1) else -1
                    if g in sign:
                        if sign[g] != want:
                            return None
                    else:
                        sign[g] = want
                        todo.append(g)
    return sign


def is_orientable_map(pm):
    return map_orientation(pm) is not None


__all__ = [
    "Complex",
    "PolyhedralMap",
    "face_vector",
    "euler_characteristic",
    "link",
    "is_closed_pseudomanifold",
    "is_connected",
    "is_combinatorial_surface",
    "is_combinatorial_3manifold",
    "is_polyhedral_map",
    "orientation_assignment",
    "map_orientation",
    "is_orientable_map",
    "normalize_cycle",
    "cycle_edges",
    "vertex_link_failures",
]
