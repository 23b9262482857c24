"""Exhaustive enumeration of centrally symmetric surfaces and 3-manifolds.

Everything is labeled so the involution is ``v -> n + 1 - v``.  The search
picks a vertex of maximum degree ``D`` and calls it 1, then fixes its whole
link up to relabelings that commute with the involution:

* surfaces: the link is a cycle, written as a word over antipodal-pair
  tokens; only words that are least among their rotations and reflections
  are used, and any other closed vertex of degree ``D`` with a smaller
  word prunes the branch;
* 3-manifolds: the link is a triangulated 2-sphere on ``D`` vertices in
  which some non-adjacent vertices are antipodal; one start per
  isomorphism class of (sphere, antipodal matching).

From each start a compiled depth-first search completes the complex one
facet orbit at a time (see ``_engine``).  Completions are deduplicated by
canonical form and returned sorted by it.
"""

from __future__ import annotations

import json
import logging
import os
import time
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import _engine as E
from .canon import canonical_form, canonical_labeling
from .complex import (Complex, is_combinatorial_3manifold,
                      is_combinatorial_surface, is_connected)
from .homology import homology, is_orientable
from .notation import format_faces
from .symmetry import Involution, is_centrally_symmetric

log = logging.getLogger(__name__)

CHECKPOINT_VERSION = 1
DEFAULT_CHECKPOINT_EVERY = 10 ** 6
_STEP = 20000          # nodes per compiled call between bookkeeping
_OUT_ROWS = 4096


# ---------------------------------------------------------------------------
# start configurations
# ---------------------------------------------------------------------------

def _word_of(cycle, n):
    """Token word of a labeled link cycle read from its first entry."""
    m = n // 2
    ids, signs = {}, {}
    out = []
    for c in cycle:
        p, s = (c, 0) if c <= m else (n + 1 - c, 1)
        if p not in ids:
            ids[p] = len(ids) + 1
            signs[p] = s
        out.append(ids[p] * 2 + (s != signs[p]))
    return tuple(out)


def least_word(cycle, n):
    """Least token word over all rotations and reflections of ``cycle``."""
    cyc = list(cycle)
    k = len(cyc)
    best = None
    for seq in (cyc, cyc[::-1]):
        for i in range(k):
            w = _word_of(seq[i:] + seq[:i], n)
            if best is None or w < best:
                best = w
    return best


def word_labels(word, n):
    """Vertex labels realizing a token word (first occurrences unflipped)."""
    out = []
    for tok in word:
        k, flip = divmod(tok, 2)
        out.append(k + 1 if not flip else n - k)
    return out


def link_words(m, degree):
    """Canonical link words of the given length for a vertex on ``2m``
    vertices (ordered)."""
    n = 2 * m
    words = []

    def rec(word, used):
        if len(word) == degree:
            if (word[-1] // 2) == (word[0] // 2):
                return
            if least_word(word_labels(word, n), n) == tuple(word):
                words.append(tuple(word))
            return
        last = word[-1] // 2 if word else 0
        for pid in range(1, len(used) + 1):
            if pid != last and used[pid - 1] == 1:
                used[pid - 1] = 2
                word.append(2 * pid + 1)
                rec(word, used)
                word.pop()
                used[pid - 1] = 1
        if len(used) < m - 1:
            pid = len(used) + 1
            used.append(1)
            word.append(2 * pid)
            rec(word, used)
            word.pop()
            used.pop()

    rec([], [])
    return sorted(words)


def _sphere_extend(tris):
    """All one-vertex splittings of a triangulated 2-sphere."""
    nv = max(max(t) for t in tris)
    new = nv + 1
    lk = {}
    for t in tris:
        for v in t:
            lk.setdefault(v, []).append(tuple(u for u in t if u != v))
    out = []
    for v, edges in lk.items():
        # cyclic order of the link of v
        adj = {}
        for a, b in edges:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        start = edges[0][0]
        cyc = [start]
        prev = None
        cur = start
        while True:
            nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
            if nxt == start:
                break
            cyc.append(nxt)
            prev, cur = cur, nxt
        k = len(cyc)
        # split v: the link path cyc[i] .. cyc[j] goes to the new vertex,
        # both endpoints stay adjacent to v and to the new vertex
        for i in range(k):
            for j in range(i + 1, i + k):
                side = [cyc[(i + s) % k] for s in range(j - i + 1)]
                moved = {frozenset(side[s:s + 2]) for s in range(len(side) - 1)}
                new_tris = []
                for t in tris:
                    rest = frozenset(u for u in t if u != v)
                    if v in t and rest in moved:
                        new_tris.append(tuple(sorted(rest | {new})))
                    else:
                        new_tris.append(t)
                new_tris.append(tuple(sorted((v, new, side[0]))))
                new_tris.append(tuple(sorted((v, new, side[-1]))))
                out.append(new_tris)
    return out


def triangulated_spheres(nv):
    """Triangulated 2-spheres on ``nv`` vertices up to isomorphism.

    Built from the tetrahedron boundary by vertex splitting, which reaches
    every triangulated sphere.  Faces use labels ``1..nv``.
    """
    tet = [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]
    level = {_sphere_key(tet): tet}
    for _ in range(4, nv):
        nxt = {}
        for tris in level.values():
            for t2 in _sphere_extend(tris):
                key = _sphere_key(t2)
                if key not in nxt:
                    nxt[key] = t2
        level = nxt
    return [sorted(v) for _, v in sorted(level.items())]


def _sphere_key(tris):
    nv = max(max(t) for t in tris)
    cert, _ = canonical_labeling(nv, [(0, tuple(v - 1 for v in t)) for t in tris])
    return cert


def sphere_starts(m, degree):
    """Antipodally decorated vertex links for 3-manifold searches.

    Returns lists of link triangles relabeled into ``2..2m-1``: the sphere
    vertices are grouped into antipodal pairs (non-adjacent) and singles,
    with at most ``m - 1`` groups, one start per isomorphism class of the
    decorated sphere.
    """
    n = 2 * m
    starts = {}
    for tris in triangulated_spheres(degree):
        edges = {tuple(sorted(e)) for t in tris for e in combinations(t, 2)}
        nonadj = [p for p in combinations(range(1, degree + 1), 2) if p not in edges]
        need = degree - (m - 1)
        for matching in _matchings(nonadj, max(need, 0)):
            blocks = [(0, tuple(v - 1 for v in t)) for t in tris]
            blocks += [(1, (a - 1, b - 1)) for a, b in matching]
            cert, _ = canonical_labeling(degree, blocks)
            if cert in starts:
                continue
            # label: pair k -> (k+1, n-k); singles continue the ids
            lab = {}
            k = 0
            for a, b in matching:
                k += 1
                lab[a], lab[b] = k + 1, n - k
            for v in range(1, degree + 1):
                if v not in lab:
                    k += 1
                    lab[v] = k + 1
            starts[cert] = sorted(tuple(sorted(lab[v] for v in t)) for t in tris)
    return [starts[c] for c in sorted(starts)]


def _matchings(pairs, min_size):
    """All matchings drawn from ``pairs`` with at least ``min_size`` edges."""
    out = []

    def rec(i, used, cur):
        if len(cur) >= min_size:
            out.append(list(cur))
        for j in range(i, len(pairs)):
            a, b = pairs[j]
            if a in used or b in used:
                continue
            used.update((a, b))
            cur.append(pairs[j])
            rec(j + 1, used, cur)
            cur.pop()
            used.difference_update((a, b))

    rec(0, set(), [])
    return out


@dataclass(frozen=True)
class Start:
    """One independent subtree: vertex 1 of degree ``degree`` with the
    given link facets (already containing vertex 1)."""

    degree: int
    facets: tuple
    word: tuple = ()


def start_configurations(m, dim):
    n = 2 * m
    out = []
    if dim == 2:
        for D in range(3, n - 1):
            for w in link_words(m, D):
                cyc = word_labels(w, n)
                fs = tuple(tuple(sorted((1, cyc[i], cyc[(i + 1) % D])))
                           for i in range(D))
                out.append(Start(D, fs, w))
    else:
        for D in range(4, n - 1):
            for tris in sphere_starts(m, D):
                fs = tuple(tuple(sorted((1,) + t)) for t in tris)
                out.append(Start(D, fs))
    return out


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------

@dataclass
class SearchStats:
    nodes: int = 0
    prunes: dict = field(default_factory=dict)
    completions: int = 0
    results_emitted: int = 0
    duplicates_rejected: int = 0
    starts: int = 0
    seconds: float = 0.0

    _NAMES = {E.PRUNE_RIDGE: "ridge_overuse", E.PRUNE_LINK: "link_break",
              E.PRUNE_DEGREE: "degree_bound", E.PRUNE_CANON: "link_order",
              E.PRUNE_DEAD: "dead_ridge", E.PRUNE_CONNECT: "connectivity"}

    def add_engine(self, arr):
        self.nodes += int(arr[E.NODES])
        self.completions += int(arr[E.COMPLETIONS])
        for k, name in self._NAMES.items():
            self.prunes[name] = self.prunes.get(name, 0) + int(arr[k])

    def merge(self, other):
        self.nodes += other.nodes
        self.completions += other.completions
        for k, v in other.prunes.items():
            self.prunes[k] = self.prunes.get(k, 0) + v
        self.starts += other.starts

    def as_dict(self):
        return {"nodes": self.nodes, "prunes": dict(sorted(self.prunes.items())),
                "completions": self.completions,
                "results_emitted": self.results_emitted,
                "duplicates_rejected": self.duplicates_rejected,
                "starts": self.starts}


_TABLES = {}


def _tables(n, d):
    key = (n, d)
    if key not in _TABLES:
        _TABLES[key] = E.Tables(n, d)
    return _TABLES[key]


# how vertex 1 is pinned down in each start
BREAK_DEGREE = "degree"   # max degree vertex with least link word
BREAK_LINK = "link"       # link of vertex 1 fixed, any degree
BREAK_NONE = "none"       # one facet through vertex 1 fixed

CLASSIFICATIONS = ("pointed", "equivariant", "plain")


class StartRun:
    """Resumable search below one start configuration."""

    def __init__(self, n, d, start, mode=BREAK_DEGREE):
        self.T = _tables(n, d)
        self.start = start
        T = self.T
        if mode == BREAK_DEGREE:
            code = start.word if d == 2 else ()
            maxdeg = start.degree
        else:
            code, maxdeg = (), n
        self.S = E.State(T, maxdeg, np.array(code, dtype=np.int64))
        nF = len(T.facets)
        depth = nF // 2 + 2
        self.stack_ridge = np.zeros(depth, dtype=np.int64)
        self.stack_cand = np.zeros((depth, 64), dtype=np.int64)
        self.stack_nc = np.zeros(depth, dtype=np.int64)
        self.stack_pos = np.zeros(depth, dtype=np.int64)
        self.stack_cur = np.full(depth, -1, dtype=np.int64)
        self.stack_mark = np.zeros(depth, dtype=np.int64)
        self.depth = np.array([0, 1], dtype=np.int64)
        self.out = np.full((_OUT_ROWS, nF // 2), -1, dtype=np.int64)
        self.out_n = np.zeros(1, dtype=np.int64)
        self.finished = False
        cyc = np.empty(n + 1, dtype=np.int64)
        TA, SA = T.arrays(), self.S.arrays()
        for f in start.facets:
            idx = T.facet_index[f]
            if self.S.chosen[idx]:
                continue
            if E.add_start(idx, TA, SA, cyc) != 0:
                self.finished = True
                break

    _ARRAYS = ("stack_ridge", "stack_cand", "stack_nc", "stack_pos",
               "stack_cur", "stack_mark", "depth", "out", "out_n")
    _STATE = ("chosen", "rcount", "jnfac", "jopen", "jend", "vdeg", "vnfac",
              "vopen", "log", "scal", "code", "stats")

    def step(self, node_limit):
        """Run up to ``node_limit`` nodes; returns completed facet-index rows."""
        if self.finished:
            return []
        ret = E.run(self.T.arrays(), self.S.arrays(), self.stack_ridge,
                    self.stack_cand, self.stack_nc, self.stack_pos,
                    self.stack_cur, self.stack_mark, self.depth, 0,
                    node_limit, self.out, self.out_n)
        k = int(self.out_n[0])
        rows = [tuple(int(x) for x in self.out[i] if x >= 0) for i in range(k)]
        self.out_n[0] = 0
        if ret == E.DONE:
            self.finished = True
        return rows

    def snapshot(self):
        d = {name: getattr(self, name) for name in self._ARRAYS}
        d.update({"state_" + name: getattr(self.S, name) for name in self._STATE})
        d["finished"] = np.array([int(self.finished)])
        return d

    def restore(self, d):
        for name in self._ARRAYS:
            getattr(self, name)[...] = d[name]
        for name in self._STATE:
            getattr(self.S, name)[...] = d["state_" + name]
        self.finished = bool(d["finished"][0])

    def reps_of(self, row):
        return sorted(self.T.facets[i] for i in row)


@dataclass
class EnumerationResult:
    complex: Complex
    orbit_reps: list
    homology: object
    orientable: bool
    canonical: object

    @property
    def euler_characteristic(self):
        return self.homology.euler_characteristic()

    def record(self):
        c = self.complex
        return {
            "n": c.n,
            "dim": c.dim,
            "orbits": format_faces(self.orbit_reps),
            "f_vector": list(c.f_vector),
            "euler": self.euler_characteristic,
            "homology": str(self.homology),
            "orientable": self.orientable,
            "canonical": self.canonical.digest,
        }


def closure(reps, n):
    out = []
    for f in reps:
        out.append(f)
        out.append(tuple(sorted(n + 1 - v for v in f)))
    return out


def classify_key(reps, n, classify):
    """Canonical form of an orbit list under the chosen equivalence."""
    c = Complex(closure(reps, n), n=n)
    bound = max(16, n)
    if classify == "plain":
        return canonical_form(c, max_vertices=bound)
    inv = Involution.canonical(n)
    marked = (1, n) if classify == "pointed" else None
    return canonical_form(c, max_vertices=bound, involution=inv, marked=marked)


def _plan(m, dim, classify, breaking):
    if not breaking:
        return _all_unbroken(m, dim), BREAK_NONE
    mode = BREAK_LINK if classify == "pointed" else BREAK_DEGREE
    return start_configurations(m, dim), mode


def _search_start(n, dim, start, mode, classify, found, run=None,
                  on_step=None, step=_STEP):
    """Search one start and merge canonical keys into ``found``.

    Returns ``(duplicates, engine stats)``.  ``on_step(run)`` is called
    between compiled slices (used for checkpoints).
    """
    if run is None:
        run = StartRun(n, dim, start, mode)
    dups = 0
    while not run.finished:
        for row in run.step(step):
            reps = run.reps_of(row)
            key = classify_key(reps, n, classify)
            old = found.get(key)
            if old is None:
                found[key] = reps
            else:
                dups += 1
                if reps < old:
                    found[key] = reps
        if on_step is not None and not run.finished:
            on_step(run)
    return dups, run.S.stats.copy()


def _worker(args):
    n, dim, start, mode, classify = args
    found = {}
    dups, st = _search_start(n, dim, start, mode, classify, found)
    return found, dups, st


class EnumerationRun:
    """Result list plus statistics of one enumeration; iterable."""

    def __init__(self, m, dim, classify, results, stats):
        self.m = m
        self.dim = dim
        self.classify = classify
        self.results = results
        self.stats = stats

    def __iter__(self):
        return iter(self.results)

    def __len__(self):
        return len(self.results)

    def __getitem__(self, i):
        return self.results[i]

    def histogram(self):
        """Count of results per homology string."""
        out = {}
        for r in self.results:
            k = str(r.homology)
            out[k] = out.get(k, 0) + 1
        return out


def search_statistics(run=None):
    """Statistics of a run; a fresh record when ``run`` is None."""
    if run is None:
        return SearchStats()
    return run.stats


def _save_checkpoint(path, header, done, found, dups, stats, current=None):
    meta = dict(header)
    meta.update({"done": sorted(done), "dups": dups, "stats": stats.as_dict(),
                 "found": [[k.text, [list(f) for f in v]] for k, v in found.items()]})
    arrays = {"meta": np.frombuffer(json.dumps(meta).encode(), dtype=np.uint8)}
    if current is not None:
        idx, run = current
        arrays["current"] = np.array([idx])
        for k, v in run.snapshot().items():
            arrays["run_" + k] = v
    tmp = path + ".tmp"
    with open(tmp, "wb") as fh:
        np.savez(fh, **arrays)
    os.replace(tmp, path)


def _load_checkpoint(path, header):
    from .canon import CanonicalForm
    with np.load(path) as data:
        meta = json.loads(bytes(data["meta"]).decode())
        current = None
        if "current" in data.files:
            current = (int(data["current"][0]),
                       {k[4:]: data[k].copy() for k in data.files if k.startswith("run_")})
    got = {k: meta.get(k) for k in header}
    if got != header:
        raise ValueError(f"checkpoint header {got} does not match run {header}")
    found = {CanonicalForm.from_text(t): [tuple(f) for f in v] for t, v in meta["found"]}
    stats = SearchStats()
    s = meta["stats"]
    stats.nodes, stats.completions, stats.starts = s["nodes"], s["completions"], s["starts"]
    stats.prunes = dict(s["prunes"])
    return set(meta["done"]), found, meta["dups"], stats, current


def enumerate_cs(m, dim=2, *, classify="pointed", jobs=1, checkpoint=None,
                 resume=False, checkpoint_every=DEFAULT_CHECKPOINT_EVERY,
                 breaking=True, verify=True, progress=None):
    """Enumerate CS closed manifolds of dimension ``dim`` on ``2m`` vertices.

    ``classify`` picks the equivalence used for deduplication:

    ``"pointed"``
        relabelings commuting with ``v -> n + 1 - v`` that keep the pair
        ``{1, n}``; this is the notion under which the published surface
        tables are complete and repetition free.
    ``"equivariant"``
        all relabelings commuting with the involution.
    ``"plain"``
        simplicial isomorphism.

    Results are sorted by canonical form; each carries the lexicographically
    least orbit list found for its class.  With ``checkpoint`` the state is
    written every ``checkpoint_every`` nodes and after each start;
    ``resume=True`` continues from an existing file.  ``jobs > 1`` farms
    starts out to worker processes; the output does not depend on it.
    """
    if dim not in (2, 3):
        raise ValueError("dim must be 2 or 3")
    if m < (3 if dim == 2 else 4):
        raise ValueError(f"m must be at least {3 if dim == 2 else 4} for dim {dim}")
    if classify not in CLASSIFICATIONS:
        raise ValueError(f"classify must be one of {CLASSIFICATIONS}")
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    n = 2 * m
    t0 = time.time()
    starts, mode = _plan(m, dim, classify, breaking)
    header = {"m": m, "dim": dim, "version": CHECKPOINT_VERSION,
              "classify": classify, "breaking": bool(breaking)}
    done, found, dups, stats = set(), {}, 0, SearchStats()
    current = None
    if checkpoint and resume and os.path.exists(checkpoint):
        done, found, dups, stats, current = _load_checkpoint(checkpoint, header)
        log.info("resumed: %d of %d starts done", len(done), len(starts))

    def finish_start(i, sdups, engine_stats):
        nonlocal dups
        dups += sdups
        st = SearchStats(starts=1)
        st.add_engine(engine_stats)
        stats.merge(st)
        done.add(i)
        if progress:
            progress(len(done), len(starts), len(found))
        if checkpoint:
            _save_checkpoint(checkpoint, header, done, found, dups, stats)

    todo = [i for i in range(len(starts)) if i not in done]
    if jobs == 1 or len(todo) <= 1:
        for i in todo:
            run = StartRun(n, dim, starts[i], mode)
            if current is not None and current[0] == i:
                run.restore(current[1])
            current = None
            counter = [0]

            def on_step(r, i=i, counter=counter):
                counter[0] += _STEP
                if checkpoint and counter[0] >= checkpoint_every:
                    counter[0] = 0
                    _save_checkpoint(checkpoint, header, done, found, dups,
                                     stats, (i, r))

            sdups, est = _search_start(n, dim, starts[i], mode, classify, found,
                                       run=run, on_step=on_step,
                                       step=min(_STEP, checkpoint_every))
            finish_start(i, sdups, est)
    else:
        import multiprocessing as mp
        ctx = mp.get_context("fork")
        args = [(n, dim, starts[i], mode, classify) for i in todo]
        with ctx.Pool(jobs) as pool:
            for i, (part, sdups, est) in zip(todo, pool.imap(_worker, args)):
                for key, reps in part.items():
                    old = found.get(key)
                    if old is None:
                        found[key] = reps
                    else:
                        sdups += 1
                        if reps < old:
                            found[key] = reps
                finish_start(i, sdups, est)

    results = []
    inv = Involution.canonical(n)
    for key in sorted(found):
        reps = found[key]
        c = Complex(closure(reps, n), n=n)
        h = homology(c)
        res = EnumerationResult(c, list(reps), h, is_orientable(c, h), key)
        if verify:
            _verify_result(res, inv)
        results.append(res)
    stats.results_emitted = len(results)
    stats.duplicates_rejected = dups
    stats.seconds = time.time() - t0
    return EnumerationRun(m, dim, classify, results, stats)


def _all_unbroken(m, dim):
    """One start per facet through vertex 1, no other restriction.

    Every complex contains such a facet, so the union of these searches
    sees every labeled complex (many times; the dedup removes repeats).
    Only practical for small ``m``; it serves as a cross-check of the
    symmetry breaking.
    """
    n = 2 * m
    out = []
    for rest in combinations(range(2, n), dim):
        f = (1,) + rest
        if any(n + 1 - v in f for v in f):
            continue
        out.append(Start(n, (f,)))
    return out


def labeled_complexes(m, dim=2):
    """Every labeled CS closed manifold on ``2m`` vertices (orbit lists).

    Exhaustive without symmetry breaking; small ``m`` only.
    """
    n = 2 * m
    seen = set()
    for st in _all_unbroken(m, dim):
        run = StartRun(n, dim, st, BREAK_NONE)
        while not run.finished:
            for row in run.step(_STEP):
                seen.add(tuple(run.reps_of(row)))
    return sorted(seen)


def _verify_result(res, inv):
    c = res.complex
    ok = is_combinatorial_surface(c) if c.dim == 2 else is_combinatorial_3manifold(c)
    if not ok or not is_connected(c) or not is_centrally_symmetric(c, inv):
        raise AssertionError(f"enumeration produced an invalid complex: {c.facets}")


def enumerate_cs_surfaces(m, **kw):
    return enumerate_cs(m, 2, **kw)


def enumerate_cs_3manifolds(m, **kw):
    return enumerate_cs(m, 3, **kw)


def warm_up():
    """Compile the search kernels now rather than inside the first run.

    Numba caches the machine code on disk, so this only costs time once per
    install.  Returns the seconds spent.
    """
    t = time.perf_counter()
    for dim in (2, 3):
        list(enumerate_cs(4, dim))
    return time.perf_counter() - t


__all__ = [
    "enumerate_cs",
    "warm_up",
    "enumerate_cs_surfaces",
    "enumerate_cs_3manifolds",
    "labeled_complexes",
    "classify_key",
    "search_statistics",
    "SearchStats",
    "EnumerationResult",
    "EnumerationRun",
    "link_words",
    "least_word",
    "word_labels",
    "triangulated_spheres",
    "sphere_starts",
    "start_configurations",
]
