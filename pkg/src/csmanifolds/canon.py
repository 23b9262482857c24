"""Canonical labeling and isomorphism testing.

Complexes (and polyhedral maps) are encoded as vertex sets carrying colored
blocks.  A canonical labeling is found by individualization-refinement: the
vertex partition is refined by block incidences until stable, a vertex of
the first non-trivial cell is individualized, and the search recurses.  The
least leaf certificate over the whole search tree is the canonical form, so
the result is exact and independent of the input labeling.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass

from .complex import Complex, PolyhedralMap

DEFAULT_MAX_VERTICES = 16


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Facet list under the canonical relabeling plus a stable 64-bit hash.

    The hash is the first eight bytes of BLAKE2b over the UTF-8 serialized
    facet list, written as 16 hex digits.
    """

    text: str
    digest: str

    @classmethod
    def from_text(cls, text):
        h = hashlib.blake2b(text.encode(), digest_size=8).hexdigest()
        return cls(text, h)

    def __str__(self):
        return self.text


def _refine(colors, incid, blocks):
    """Refine ``colors`` (list of ints, one per vertex) to a stable partition.

    New colors are ranks of signatures, so they are labeling invariant.
    """
    ncol = len(set(colors))
    while True:
        sigs = []
        for v, inc in enumerate(incid):
            parts = []
            for b in inc:
                color, members = blocks[b]
                parts.append((color, tuple(sorted(colors[u] for u in members if u != v))))
            parts.sort()
            sigs.append((colors[v], tuple(parts)))
        order = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [order[s] for s in sigs]
        k = len(order)
        if k == ncol:
            return new
        colors, ncol = new, k


def _individualize(colors, v):
    # v gets its own cell just below its old cell; everything above shifts
    c = colors[v]
    out = [x if x < c else x + 1 for x in colors]
    out[v] = c
    return out


def _search(nv, blocks, initial):
    incid = [[] for _ in range(nv)]
    for i, (_, members) in enumerate(blocks):
        for u in members:
            incid[u].append(i)
    start = list(initial) if initial is not None else [0] * nv
    colors = _refine(start, incid, blocks)
    best = [None, None, set()]

    def leaf(col):
        cert = tuple(sorted((c, tuple(sorted(col[u] for u in mem))) for c, mem in blocks))
        if best[0] is None or cert < best[0]:
            best[0] = cert
            best[1] = list(col)
            best[2] = {tuple(col)}
        elif cert == best[0]:
            best[2].add(tuple(col))

    def search(col):
        sizes = Counter(col)
        if len(sizes) == nv:
            leaf(col)
            return
        # first smallest non-singleton cell
        target = min((s, c) for c, s in sizes.items() if s > 1)[1]
        for v in range(nv):
            if col[v] == target:
                search(_refine(_individualize(col, v), incid, blocks))

    search(colors)
    return best


def canonical_labeling(nv, blocks, initial=None):
    """Return ``(certificate, labeling)`` for a colored hypergraph.

    ``blocks`` is a list of ``(color, vertex tuple)`` on vertices
    ``0..nv-1``; ``labeling[v]`` is the canonical position of vertex ``v``.
    """
    cert, lab, _ = _search(nv, blocks, initial)
    return cert, lab


def automorphism_count(nv, blocks, initial=None):
    """Order of the automorphism group of a colored hypergraph.

    Distinct discrete labelings reaching the least certificate differ
    exactly by automorphisms, and the search visits every leaf.
    """
    return len(_search(nv, blocks, initial)[2])


def _complex_blocks(c, pairs=None, marked=None):
    verts = c.vertices
    index = {v: i for i, v in enumerate(verts)}
    blocks = [(0, tuple(index[v] for v in f)) for f in c.facets]
    if pairs:
        mk = tuple(sorted(marked)) if marked else None
        for a, b in pairs:
            color = 2 if (a, b) == mk else 1
            blocks.append((color, (index[a], index[b])))
    return verts, blocks


def canonical_form(c, max_vertices=DEFAULT_MAX_VERTICES, involution=None,
                   marked=None):
    """Canonical form of a simplicial complex.

    Passing ``involution`` canonicalizes the pair (complex, involution), so
    equal forms then mean an isomorphism that also conjugates the pairings.
    ``marked`` additionally distinguishes one pair of the involution.
    """
    if isinstance(c, PolyhedralMap):
        return canonical_map_form(c, max_vertices=max_vertices)
    if c.n > max_vertices:
        raise ValueError(
            f"complex has {c.n} vertices, above the canonical-form bound "
            f"{max_vertices}; pass max_vertices explicitly to override")
    if marked is not None and involution is None:
        raise ValueError("a marked pair needs an involution")
    pairs = involution.pairs() if involution is not None else None
    _, blocks = _complex_blocks(c, pairs, marked)
    cert, _ = canonical_labeling(c.n, blocks)
    facets = [mem for col, mem in cert if col == 0]
    text = ",".join(".".join(str(x + 1) for x in f) for f in facets)
    if pairs:
        text += "|" + ",".join(("*" if col == 2 else "") + ".".join(str(x + 1) for x in mem)
                               for col, mem in cert if col)
    return CanonicalForm.from_text(text)


def canonical_map_form(pm, max_vertices=64):
    """Canonical form of a polyhedral map.

    Faces of a polyhedral map have no chords, so the map is determined by
    its face vertex sets together with its edges; both become blocks.
    """
    if pm.n > max_vertices:
        raise ValueError(f"map has {pm.n} vertices, above bound {max_vertices}")
    index = {v: i for i, v in enumerate(pm.vertices)}
    blocks = [(0, tuple(index[v] for v in e)) for e in pm.edges]
    blocks += [(1, tuple(index[v] for v in f)) for f in pm.faces]
    cert, _ = canonical_labeling(pm.n, blocks)
    parts = []
    for col, mem in cert:
        parts.append(("F" if col else "E") + ".".join(str(x + 1) for x in mem))
    return CanonicalForm.from_text(",".join(parts))


def _degree_multiset(c):
    deg = Counter()
    for u, v in c.faces(1):
        deg[u] += 1
        deg[v] += 1
    return sorted(deg.values())


def are_isomorphic(a, b, max_vertices=DEFAULT_MAX_VERTICES):
    """Simplicial isomorphism test with cheap invariants checked first."""
    if isinstance(a, PolyhedralMap) or isinstance(b, PolyhedralMap):
        if not (isinstance(a, PolyhedralMap) and isinstance(b, PolyhedralMap)):
            return False
        if (a.n, len(a.edges), len(a.faces)) != (b.n, len(b.edges), len(b.faces)):
            return False
        return canonical_map_form(a) == canonical_map_form(b)
    if a.n != b.n or a.dim != b.dim or a.f_vector != b.f_vector:
        return False
    if _degree_multiset(a) != _degree_multiset(b):
        return False
    from .homology import homology
    if homology(a) != homology(b):
        return False
    return canonical_form(a, max_vertices) == canonical_form(b, max_vertices)


__all__ = [
    "CanonicalForm",
    "canonical_form",
    "canonical_map_form",
    "canonical_labeling",
    "automorphism_count",
    "are_isomorphic",
]
