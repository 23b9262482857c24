"""Compiled backtracking core for centrally symmetric enumeration.

The search works on the canonical involution ``v -> n + 1 - v`` and only
ever adds a facet together with its image, so the partial complex is
invariant at every node.  All tables are dense integer arrays so the
inner loop can be compiled with numba.

Terminology used below:

* *ridge*  -- a (d-1)-face; it may lie in at most two facets.
* *joint*  -- a (d-2)-face (vertices for surfaces, edges for 3-manifolds);
  its link is a graph whose vertices are the ridges through it, and which
  must end up as one cycle.
"""

from itertools import combinations

import numpy as np
from numba import njit

# stats slots
NODES = 0
PRUNE_RIDGE = 1
PRUNE_LINK = 2
PRUNE_DEGREE = 3
PRUNE_CANON = 4
PRUNE_DEAD = 5
PRUNE_CONNECT = 6
COMPLETIONS = 7
N_STATS = 8

# return codes of run()
DONE = 0
NODE_LIMIT = 1
BUFFER_FULL = 2


class Tables:
    """Incidence tables of all admissible faces for given ``n`` and ``d``."""

    def __init__(self, n, d):
        if n % 2:
            raise ValueError("n must be even")
        if d not in (2, 3):
            raise ValueError("only dimensions 2 and 3 are supported")
        self.n = n
        self.d = d
        self.m = n // 2

        def admissible(face):
            s = set(face)
            return all(n + 1 - v not in s for v in face)

        verts = range(1, n + 1)
        facets = [f for f in combinations(verts, d + 1) if admissible(f)]
        ridges = [r for r in combinations(verts, d) if admissible(r)]
        joints = [j for j in combinations(verts, d - 1) if admissible(j)]
        self.facets = facets
        self.ridges = ridges
        self.joints = joints
        fidx = {f: i for i, f in enumerate(facets)}
        ridx = {r: i for i, r in enumerate(ridges)}
        jidx = {j: i for i, j in enumerate(joints)}
        self.facet_index = fidx

        nF, nR, nJ = len(facets), len(ridges), len(joints)
        self.facet_verts = np.array(facets, dtype=np.int64).reshape(nF, d + 1)
        self.ridge_verts = np.array(ridges, dtype=np.int64).reshape(nR, d)
        self.joint_verts = np.array(joints, dtype=np.int64).reshape(nJ, d - 1)
        image = np.empty(nF, dtype=np.int64)
        for i, f in enumerate(facets):
            image[i] = fidx[tuple(sorted(n + 1 - v for v in f))]
        self.facet_image = image

        fr = np.empty((nF, d + 1), dtype=np.int64)
        nT = (d + 1) * d // 2
        fj = np.empty((nF, nT, 5), dtype=np.int64)
        incid = [[] for _ in range(nR)]
        for i, f in enumerate(facets):
            for k in range(d + 1):
                r = ridx[f[:k] + f[k + 1:]]
                fr[i, k] = r
                incid[r].append(i)
            for t, (a, b) in enumerate(combinations(range(d + 1), 2)):
                x, y = f[a], f[b]
                j = tuple(v for v in f if v != x and v != y)
                rx = ridx[tuple(v for v in f if v != y)]
                ry = ridx[tuple(v for v in f if v != x)]
                fj[i, t] = (jidx[j], x, y, rx, ry)
        self.facet_ridges = fr
        self.facet_joints = fj
        ptr = np.zeros(nR + 1, dtype=np.int64)
        for r in range(nR):
            ptr[r + 1] = ptr[r] + len(incid[r])
        self.rf_ptr = ptr
        self.rf_idx = np.array([i for lst in incid for i in lst], dtype=np.int64)

        # ridge lookup by vertex tuple, padded with zeros for d = 2
        self.ridge_lookup = np.full((n + 1,) * 3, -1, dtype=np.int64)
        for r, verts_r in enumerate(ridges):
            key = tuple(verts_r) + (0,) * (3 - d)
            self.ridge_lookup[key] = r

    def arrays(self):
        return (self.facet_verts, self.facet_image, self.facet_ridges,
                self.facet_joints, self.rf_ptr, self.rf_idx,
                self.ridge_verts, self.joint_verts, self.ridge_lookup)


class State:
    """Mutable search state; ``arrays()`` feeds the compiled kernels."""

    def __init__(self, tables, max_degree, start_code, log_size=1 << 16):
        n = tables.n
        nF = len(tables.facets)
        nR = len(tables.ridges)
        nJ = len(tables.joints)
        self.chosen = np.zeros(nF, dtype=np.int8)
        self.rcount = np.zeros(nR, dtype=np.int64)
        self.jnfac = np.zeros(nJ, dtype=np.int64)
        self.jopen = np.zeros(nJ, dtype=np.int64)
        self.jend = np.zeros((nJ, n + 1), dtype=np.int64)
        self.vdeg = np.zeros(n + 1, dtype=np.int64)
        self.vnfac = np.zeros(n + 1, dtype=np.int64)
        self.vopen = np.zeros(n + 1, dtype=np.int64)
        self.log = np.zeros((log_size, 2), dtype=np.int64)
        # scalars: [log pointer, open ridge count, max degree, dimension, n]
        self.scal = np.array([0, 0, max_degree, tables.d, n], dtype=np.int64)
        self.code = np.asarray(start_code, dtype=np.int64)
        self.stats = np.zeros(N_STATS, dtype=np.int64)

    def arrays(self):
        return (self.chosen, self.rcount, self.jnfac, self.jopen, self.jend,
                self.vdeg, self.vnfac, self.vopen, self.log, self.scal,
                self.code, self.stats)


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------

@njit(cache=True)
def _can_add(f, T, S):
    (fverts, fimage, fridges, fjoints, rf_ptr, rf_idx,
     rverts, jverts, rlook) = T
    (chosen, rcount, jnfac, jopen, jend, vdeg, vnfac, vopen, log, scal,
     code, stats) = S
    d = scal[3]
    if chosen[f]:
        return PRUNE_RIDGE
    for k in range(d + 1):
        if rcount[fridges[f, k]] >= 2:
            return PRUNE_RIDGE
    if d == 3:
        for k in range(4):
            u = fverts[f, k]
            if vnfac[u] > 0 and vopen[u] == 0:
                return PRUNE_LINK
    nT = fjoints.shape[1]
    for t in range(nT):
        j = fjoints[f, t, 0]
        if jnfac[j] > 0 and jopen[j] == 0:
            return PRUNE_LINK
        x = fjoints[f, t, 1]
        y = fjoints[f, t, 2]
        dx = rcount[fjoints[f, t, 3]]
        dy = rcount[fjoints[f, t, 4]]
        if dx == 1 and dy == 1 and jend[j, x] == y:
            # closes a cycle in the link of j; it must be the whole link
            if jopen[j] != 2:
                return PRUNE_LINK
    # degree bound
    maxdeg = scal[2]
    for k in range(d + 1):
        u = fverts[f, k]
        extra = 0
        if d == 2:
            # a new edge at u for each unused ridge of f through u
            for k2 in range(3):
                r = fridges[f, k2]
                if k2 != k and rcount[r] == 0:
                    extra += 1
        else:
            for t in range(nT):
                j = fjoints[f, t, 0]
                if jnfac[j] == 0 and (jverts[j, 0] == u or jverts[j, 1] == u):
                    extra += 1
        if vdeg[u] + extra > maxdeg:
            return PRUNE_DEGREE
    return 0


@njit(cache=True)
def _apply(h, T, S):
    (fverts, fimage, fridges, fjoints, rf_ptr, rf_idx,
     rverts, jverts, rlook) = T
    (chosen, rcount, jnfac, jopen, jend, vdeg, vnfac, vopen, log, scal,
     code, stats) = S
    d = scal[3]
    chosen[h] = 1
    nT = fjoints.shape[1]
    # joints first: they need the ridge counts before this facet
    for t in range(nT):
        j = fjoints[h, t, 0]
        x = fjoints[h, t, 1]
        y = fjoints[h, t, 2]
        dx = rcount[fjoints[h, t, 3]]
        dy = rcount[fjoints[h, t, 4]]
        delta = 0
        if dx == 0:
            delta += 1
        else:
            delta -= 1
        if dy == 0:
            delta += 1
        else:
            delta -= 1
        jopen[j] += delta
        if d == 3 and jnfac[j] == 0:
            vdeg[jverts[j, 0]] += 1
            vdeg[jverts[j, 1]] += 1
        jnfac[j] += 1
        lp = scal[0]
        if dx == 0 and dy == 0:
            log[lp, 0] = j * 256 + x
            log[lp, 1] = jend[j, x]
            log[lp + 1, 0] = j * 256 + y
            log[lp + 1, 1] = jend[j, y]
            scal[0] = lp + 2
            jend[j, x] = y
            jend[j, y] = x
        elif dx == 1 and dy == 0:
            a = jend[j, x]
            log[lp, 0] = j * 256 + a
            log[lp, 1] = jend[j, a]
            log[lp + 1, 0] = j * 256 + y
            log[lp + 1, 1] = jend[j, y]
            scal[0] = lp + 2
            jend[j, a] = y
            jend[j, y] = a
        elif dx == 0 and dy == 1:
            a = jend[j, y]
            log[lp, 0] = j * 256 + a
            log[lp, 1] = jend[j, a]
            log[lp + 1, 0] = j * 256 + x
            log[lp + 1, 1] = jend[j, x]
            scal[0] = lp + 2
            jend[j, a] = x
            jend[j, x] = a
        else:
            a = jend[j, x]
            if a != y:
                b = jend[j, y]
                log[lp, 0] = j * 256 + a
                log[lp, 1] = jend[j, a]
                log[lp + 1, 0] = j * 256 + b
                log[lp + 1, 1] = jend[j, b]
                scal[0] = lp + 2
                jend[j, a] = b
                jend[j, b] = a
    for k in range(d + 1):
        r = fridges[h, k]
        c = rcount[r]
        rcount[r] = c + 1
        if c == 0:
            scal[1] += 1
            if d == 2:
                vdeg[rverts[r, 0]] += 1
                vdeg[rverts[r, 1]] += 1
            else:
                for q in range(3):
                    vopen[rverts[r, q]] += 1
        else:
            scal[1] -= 1
            if d == 3:
                for q in range(3):
                    vopen[rverts[r, q]] -= 1
    for k in range(d + 1):
        vnfac[fverts[h, k]] += 1


@njit(cache=True)
def _unapply(h, T, S):
    (fverts, fimage, fridges, fjoints, rf_ptr, rf_idx,
     rverts, jverts, rlook) = T
    (chosen, rcount, jnfac, jopen, jend, vdeg, vnfac, vopen, log, scal,
     code, stats) = S
    d = scal[3]
    chosen[h] = 0
    for k in range(d + 1):
        vnfac[fverts[h, k]] -= 1
    for k in range(d + 1):
        r = fridges[h, k]
        c = rcount[r] - 1
        rcount[r] = c
        if c == 0:
            scal[1] -= 1
            if d == 2:
                vdeg[rverts[r, 0]] -= 1
                vdeg[rverts[r, 1]] -= 1
            else:
                for q in range(3):
                    vopen[rverts[r, q]] -= 1
        else:
            scal[1] += 1
            if d == 3:
                for q in range(3):
                    vopen[rverts[r, q]] += 1
    nT = fjoints.shape[1]
    for t in range(nT):
        j = fjoints[h, t, 0]
        dx = rcount[fjoints[h, t, 3]]
        dy = rcount[fjoints[h, t, 4]]
        delta = 0
        if dx == 0:
            delta += 1
        else:
            delta -= 1
        if dy == 0:
            delta += 1
        else:
            delta -= 1
        jopen[j] -= delta
        jnfac[j] -= 1
        if d == 3 and jnfac[j] == 0:
            vdeg[jverts[j, 0]] -= 1
            vdeg[jverts[j, 1]] -= 1


@njit(cache=True)
def _rollback(mark, S):
    jend = S[4]
    log = S[8]
    scal = S[9]
    lp = scal[0]
    while lp > mark:
        lp -= 1
        key = log[lp, 0]
        jend[key // 256, key % 256] = log[lp, 1]
    scal[0] = lp


@njit(cache=True)
def _surface_link(v, cyc, T, S):
    """Write the link cycle of a closed surface vertex into ``cyc``."""
    rlook = T[8]
    chosen = S[0]
    rcount = S[1]
    n = S[9][4]
    # walk around v through the facets on the ridges {v, x}
    rf_ptr = T[4]
    rf_idx = T[5]
    fverts = T[0]
    first = -1
    for x in range(1, n + 1):
        if x != v:
            a, b = (v, x) if v < x else (x, v)
            r = rlook[a, b, 0]
            if r >= 0 and rcount[r] > 0:
                first = x
                break
    prev = -1
    cur = first
    length = 0
    while True:
        cyc[length] = cur
        length += 1
        a, b = (v, cur) if v < cur else (cur, v)
        r = rlook[a, b, 0]
        nxt = -1
        for p in range(rf_ptr[r], rf_ptr[r + 1]):
            f = rf_idx[p]
            if chosen[f]:
                for k in range(3):
                    w = fverts[f, k]
                    if w != v and w != cur and w != prev:
                        nxt = w
                if nxt != -1:
                    break
        if nxt == -1 or nxt == first:
            break
        prev = cur
        cur = nxt
    return length


@njit(cache=True)
def _word_cmp(cyc, length, n, code):
    """Compare the least normalized word of a link cycle with ``code``.

    Returns -1 if some rotation/reflection yields a smaller word, 0 if the
    minimum equals ``code`` and 1 otherwise.
    """
    m = n // 2
    newid = np.empty(m + 1, dtype=np.int64)
    firstsign = np.empty(m + 1, dtype=np.int64)
    best = 1
    for start in range(length):
        for direction in (1, -1):
            for q in range(m + 1):
                newid[q] = 0
            nid = 0
            state = 0  # 0 equal so far, -1 smaller, 1 larger
            for k in range(length):
                c = cyc[(start + direction * k) % length]
                if c <= m:
                    p = c
                    s = 0
                else:
                    p = n + 1 - c
                    s = 1
                if newid[p] == 0:
                    nid += 1
                    newid[p] = nid
                    firstsign[p] = s
                tok = newid[p] * 2 + (0 if s == firstsign[p] else 1)
                if tok < code[k]:
                    state = -1
                    break
                if tok > code[k]:
                    state = 1
                    break
            if state == -1:
                return -1
            if state == 0:
                best = 0
    return best


@njit(cache=True)
def _sphere_ok(v, T, S):
    """Closed vertex link of a 3-complex: connected and Euler char 2."""
    rlook = T[8]
    rcount = S[1]
    vnfac = S[6]
    n = S[9][4]
    # link vertices: x with edge {v, x} present
    inlink = np.zeros(n + 1, dtype=np.int64)
    nv = 0
    # edges of the link are triangles {v, x, y} present
    ne = 0
    adj = np.zeros((n + 1, n + 1), dtype=np.int64)
    for x in range(1, n + 1):
        for y in range(x + 1, n + 1):
            if x == v or y == v:
                continue
            a, b, c = v, x, y
            if a > b:
                a, b = b, a
            if b > c:
                b, c = c, b
            if a > b:
                a, b = b, a
            r = rlook[a, b, c]
            if r >= 0 and rcount[r] > 0:
                ne += 1
                adj[x, y] = 1
                adj[y, x] = 1
                if inlink[x] == 0:
                    inlink[x] = 1
                    nv += 1
                if inlink[y] == 0:
                    inlink[y] = 1
                    nv += 1
    if nv - ne + vnfac[v] != 2:
        return False
    # connectivity
    seen = np.zeros(n + 1, dtype=np.int64)
    stack = np.empty(n + 1, dtype=np.int64)
    start = -1
    for x in range(1, n + 1):
        if inlink[x]:
            start = x
            break
    sp = 0
    stack[sp] = start
    sp += 1
    seen[start] = 1
    cnt = 1
    while sp > 0:
        sp -= 1
        x = stack[sp]
        for y in range(1, n + 1):
            if adj[x, y] and not seen[y]:
                seen[y] = 1
                cnt += 1
                stack[sp] = y
                sp += 1
    return cnt == nv


@njit(cache=True)
def _try_add(f, T, S, cyc):
    """Add ``f`` and its image; returns 0 on success or a prune reason."""
    fverts = T[0]
    fimage = T[1]
    scal = S[9]
    jopen = S[3]
    vdeg = S[5]
    vnfac = S[6]
    vopen = S[7]
    code = S[10]
    d = scal[3]
    n = scal[4]
    reason = _can_add(f, T, S)
    if reason:
        return reason
    g = fimage[f]
    _apply(f, T, S)
    _apply(g, T, S)
    bad = 0
    if d == 3:
        for k in range(4):
            u = fverts[f, k]
            if vopen[u] == 0 and vnfac[u] > 0:
                if not _sphere_ok(u, T, S):
                    bad = PRUNE_LINK
                    break
    else:
        if code.shape[0] > 0:
            for k in range(3):
                u = fverts[f, k]
                if jopen[u - 1] == 0 and vdeg[u] == scal[2]:
                    length = _surface_link(u, cyc, T, S)
                    if _word_cmp(cyc, length, n, code) < 0:
                        bad = PRUNE_CANON
                        break
    if bad:
        _undo_add(f, T, S)
        return bad
    return 0


@njit(cache=True)
def _undo_add(f, T, S):
    g = T[1][f]
    _unapply(g, T, S)
    _unapply(f, T, S)


@njit(cache=True)
def _complete_ok(T, S):
    fverts = T[0]
    chosen = S[0]
    vnfac = S[6]
    n = S[9][4]
    d = S[9][3]
    for u in range(1, n + 1):
        if vnfac[u] == 0:
            return False
    parent = np.arange(n + 1)
    for f in range(chosen.shape[0]):
        if chosen[f]:
            r0 = fverts[f, 0]
            while parent[r0] != r0:
                r0 = parent[r0]
            for k in range(1, d + 1):
                r = fverts[f, k]
                while parent[r] != r:
                    r = parent[r]
                if r != r0:
                    parent[r] = r0
    root = 1
    while parent[root] != root:
        root = parent[root]
    for u in range(2, n + 1):
        r = u
        while parent[r] != r:
            r = parent[r]
        if r != root:
            return False
    return True


@njit(cache=True)
def add_start(f, T, S, cyc):
    """Add a start facet outside the search loop (no log mark kept)."""
    return _try_add(f, T, S, cyc)


@njit(cache=True)
def run(T, S, stack_ridge, stack_cand, stack_nc, stack_pos, stack_cur,
        stack_mark, depth_arr, base_depth, node_limit, out, out_n):
    """Depth-first search from the state in ``S``.

    The explicit stack lives in the ``stack_*`` arrays so a run can stop
    at ``node_limit`` expanded nodes (or a full output buffer) and be
    resumed by calling again with the same arrays.  ``depth_arr[0]`` is the
    current depth; ``depth_arr[1]`` is 1 while a node still has to be
    expanded.  Completed complexes are written to ``out`` as lists of
    orbit-representative facet indices padded with -1.
    """
    fimage = T[1]
    rf_ptr = T[4]
    rf_idx = T[5]
    chosen = S[0]
    rcount = S[1]
    scal = S[9]
    stats = S[11]
    nR = rcount.shape[0]
    n = scal[4]
    cyc = np.empty(n + 1, dtype=np.int64)
    cand = np.empty(64, dtype=np.int64)
    nodes = 0
    while True:
        depth = depth_arr[0]
        if depth_arr[1] == 1:
            # expand the node at the current depth
            if out_n[0] >= out.shape[0]:
                return BUFFER_FULL
            if nodes >= node_limit:
                return NODE_LIMIT
            nodes += 1
            stats[NODES] += 1
            depth_arr[1] = 0
            if scal[1] == 0:
                if _complete_ok(T, S):
                    k = 0
                    row = out_n[0]
                    for f in range(chosen.shape[0]):
                        if chosen[f] and f < fimage[f]:
                            out[row, k] = f
                            k += 1
                    for q in range(k, out.shape[1]):
                        out[row, q] = -1
                    out_n[0] = row + 1
                    stats[COMPLETIONS] += 1
                else:
                    stats[PRUNE_CONNECT] += 1
            else:
                # branch on the open ridge with fewest viable facets
                best_r = -1
                best_c = 1 << 30
                for r in range(nR):
                    if rcount[r] != 1:
                        continue
                    c = 0
                    for p in range(rf_ptr[r], rf_ptr[r + 1]):
                        f = rf_idx[p]
                        if _can_add(f, T, S) == 0:
                            c += 1
                    if c < best_c:
                        best_c = c
                        best_r = r
                        if c == 0:
                            break
                if best_c == 0:
                    stats[PRUNE_DEAD] += 1
                else:
                    nc = 0
                    for p in range(rf_ptr[best_r], rf_ptr[best_r + 1]):
                        f = rf_idx[p]
                        if _can_add(f, T, S) == 0:
                            cand[nc] = f
                            nc += 1
                    depth += 1
                    depth_arr[0] = depth
                    stack_ridge[depth] = best_r
                    stack_nc[depth] = nc
                    for q in range(nc):
                        stack_cand[depth, q] = cand[q]
                    stack_pos[depth] = 0
                    stack_cur[depth] = -1
        # advance the top level
        depth = depth_arr[0]
        if depth <= base_depth:
            return DONE
        f = stack_cur[depth]
        if f >= 0:
            _undo_add(f, T, S)
            _rollback(stack_mark[depth], S)
            stack_cur[depth] = -1
        advanced = False
        while stack_pos[depth] < stack_nc[depth]:
            f = stack_cand[depth, stack_pos[depth]]
            stack_pos[depth] += 1
            mark = scal[0]
            reason = _try_add(f, T, S, cyc)
            if reason == 0:
                stack_cur[depth] = f
                stack_mark[depth] = mark
                depth_arr[1] = 1
                advanced = True
                break
            _rollback(mark, S)
            stats[reason] += 1
        if not advanced:
            depth_arr[0] = depth - 1
