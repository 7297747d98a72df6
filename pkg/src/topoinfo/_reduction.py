"""Numba kernels for Vietoris-Rips persistence over the two-element field.

The engine follows the standard cohomology-with-clearing scheme for Rips
filtrations: dimension-0 pairs come from a union-find pass over the edges,
and each higher dimension reduces the coboundary columns of its simplices in
reverse filtration order.  The apparent-pairs shortcut (a simplex paired
with its filtration-minimal cofacet when it is that cofacet's maximal facet)
resolves the overwhelming majority of columns during the assembly scan, so
the heap reduction only sees a thin residue of columns and the pivot map
stays small.  Top-dimensional cofacets are enumerated on the fly from
combinatorial indices; tetrahedra are never materialized.

Conventions, shared with the naive oracle in the test suite:

- a simplex is identified by the colex index sum_m C(v_m, m+1) of its
  ascending vertex tuple;
- ascending filtration order is (diameter, then descending index); columns
  are processed in reverse of that order;
- the pivot of a coboundary column is its filtration-minimal cofacet, so
  enumerating cofacets by descending index lets the first equal-diameter hit
  exit early.
"""

import numpy as np
from numba import njit, types
from numba.typed import Dict

_INF = np.inf


@njit(cache=True)
def _binom_table(n_max, r_max):
    t = np.zeros((n_max + 1, r_max + 1), dtype=np.int64)
    for m in range(n_max + 1):
        t[m, 0] = 1
    for m in range(1, n_max + 1):
        for r in range(1, r_max + 1):
            t[m, r] = t[m - 1, r - 1] + t[m - 1, r]
    return t


@njit(cache=True, inline="always")
def _cofacet_index(verts, cnt, w, binom):
    """Colex index of the simplex verts + {w}, with w not in verts."""
    idx = np.int64(0)
    pos = 0
    placed = False
    for m in range(cnt):
        if not placed and w < verts[m]:
            idx += binom[w, pos + 1]
            pos += 1
            placed = True
        idx += binom[verts[m], pos + 1]
        pos += 1
    if not placed:
        idx += binom[w, pos + 1]
    return idx


@njit(cache=True, inline="always")
def _subset_index(verts, cnt, binom):
    idx = np.int64(0)
    for m in range(cnt):
        idx += binom[verts[m], m + 1]
    return idx


@njit(cache=True, inline="always")
def _extract_vertices(idx, p, n, binom, out):
    """Ascending vertex tuple of the p-simplex with the given colex index."""
    rem = idx
    hi0 = n
    for m in range(p, -1, -1):
        lo = m
        hi = hi0
        while hi - lo > 1:  # largest v in [m, hi0) with C(v, m+1) <= rem
            mid = (lo + hi) // 2
            if binom[mid, m + 1] <= rem:
                lo = mid
            else:
                hi = mid
        out[m] = lo
        rem -= binom[lo, m + 1]
        hi0 = lo


@njit(cache=True, inline="always")
def _contains(verts, cnt, w):
    for m in range(cnt):
        if verts[m] == w:
            return True
    return False


@njit(cache=True, inline="always")
def _min_cofacet(verts, cnt, diam, dm, threshold, binom):
    """Filtration-minimal cofacet: returns (w, idx, diam, found).

    Candidate vertices are scanned in descending order (descending cofacet
    index), so the first cofacet matching the simplex diameter is the
    minimum; that is the common case and exits early.
    """
    n = dm.shape[0]
    best_w = -1
    best_idx = np.int64(-1)
    best_diam = _INF
    for w in range(n - 1, -1, -1):
        if _contains(verts, cnt, w):
            continue
        cd = diam
        for a in range(cnt):
            x = dm[w, verts[a]]
            if x > cd:
                cd = x
        if cd > threshold:
            continue
        if cd == diam:
            return w, _cofacet_index(verts, cnt, w, binom), cd, True
        if cd < best_diam:
            best_w = w
            best_idx = _cofacet_index(verts, cnt, w, binom)
            best_diam = cd
    return best_w, best_idx, best_diam, best_w >= 0


@njit(cache=True, inline="always")
def _max_facet(verts, cnt, dm, binom, scratch):
    """Filtration-maximal facet: returns its colex index.  cnt >= 2."""
    best_idx = np.int64(-1)
    best_diam = -1.0
    for drop in range(cnt):
        m = 0
        for a in range(cnt):
            if a != drop:
                scratch[m] = verts[a]
                m += 1
        fd = 0.0
        for a in range(m):
            for b in range(a + 1, m):
                x = dm[scratch[a], scratch[b]]
                if x > fd:
                    fd = x
        fidx = _subset_index(scratch, m, binom)
        if fd > best_diam or (fd == best_diam and fidx < best_idx):
            best_diam = fd
            best_idx = fidx
    return best_idx


@njit(cache=True, inline="always")
def _is_apparent(verts, cnt, idx, w, cof_verts, scratch, dm, binom):
    """True when (simplex, its min cofacet via w) form an apparent pair."""
    m = 0
    placed = False
    for t in range(cnt):
        if not placed and w < verts[t]:
            cof_verts[m] = w
            m += 1
            placed = True
        cof_verts[m] = verts[t]
        m += 1
    if not placed:
        cof_verts[m] = w
        m += 1
    return _max_facet(cof_verts, m, dm, binom, scratch) == idx


@njit(cache=True, inline="always")
def _sorted_contains(arr, x):
    lo = 0
    hi = arr.shape[0]
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo < arr.shape[0] and arr[lo] == x


@njit(cache=True, inline="always")
def _grow_i64(arr, used):
    if used < arr.shape[0]:
        return arr
    out = np.empty(arr.shape[0] * 2, dtype=np.int64)
    out[: arr.shape[0]] = arr
    return out


@njit(cache=True, inline="always")
def _grow_f64(arr, used):
    if used < arr.shape[0]:
        return arr
    out = np.empty(arr.shape[0] * 2, dtype=np.float64)
    out[: arr.shape[0]] = arr
    return out


# Binary heap keyed by ascending filtration order: (diam, descending index).


@njit(cache=True, inline="always")
def _heap_less(d1, i1, d2, i2):
    if d1 < d2:
        return True
    if d1 > d2:
        return False
    return i1 > i2


@njit(cache=True, inline="always")
def _heap_push(hd, hi, size, d, i):
    pos = size
    hd[pos] = d
    hi[pos] = i
    while pos > 0:
        parent = (pos - 1) >> 1
        if _heap_less(hd[pos], hi[pos], hd[parent], hi[parent]):
            hd[pos], hd[parent] = hd[parent], hd[pos]
            hi[pos], hi[parent] = hi[parent], hi[pos]
            pos = parent
        else:
            break
    return size + 1


@njit(cache=True, inline="always")
def _heap_pop(hd, hi, size):
    last = size - 1
    hd[0] = hd[last]
    hi[0] = hi[last]
    pos = 0
    while True:
        left = 2 * pos + 1
        if left >= last:
            break
        child = left
        right = left + 1
        if right < last and _heap_less(hd[right], hi[right], hd[left], hi[left]):
            child = right
        if _heap_less(hd[child], hi[child], hd[pos], hi[pos]):
            hd[pos], hd[child] = hd[child], hd[pos]
            hi[pos], hi[child] = hi[child], hi[pos]
            pos = child
        else:
            break
    return last


@njit(cache=True)
def _pop_pivot(hd, hi, size):
    """Pop the minimal entry after cancelling equal pairs (F2 arithmetic)."""
    while size > 0:
        d0 = hd[0]
        i0 = hi[0]
        size = _heap_pop(hd, hi, size)
        if size > 0 and hi[0] == i0:
            size = _heap_pop(hd, hi, size)
            continue
        return d0, i0, size, True
    return 0.0, np.int64(-1), size, False


@njit(cache=True)
def _push_coboundary(simplex_idx, p, dm, threshold, binom, hd, hi, size, verts):
    """Push every cofacet of a p-simplex onto the heap."""
    n = dm.shape[0]
    _extract_vertices(simplex_idx, p, n, binom, verts)
    diam = 0.0
    for a in range(p + 1):
        for b in range(a + 1, p + 1):
            x = dm[verts[a], verts[b]]
            if x > diam:
                diam = x
    for w in range(n - 1, -1, -1):
        if _contains(verts, p + 1, w):
            continue
        cd = diam
        for a in range(p + 1):
            x = dm[w, verts[a]]
            if x > cd:
                cd = x
        if cd > threshold:
            continue
        hd = _grow_f64(hd, size)
        hi = _grow_i64(hi, size)
        size = _heap_push(hd, hi, size, cd, _cofacet_index(verts, p + 1, w, binom))
    return hd, hi, size


@njit(cache=True)
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


@njit(cache=True)
def _dim0(dm, threshold, binom):
    """Union-find pass over edges in ascending filtration order.

    Returns (deaths of the finite dim-0 pairs, essential-class count, sorted
    indices of the merging edges, which dim 1 clears).
    """
    n = dm.shape[0]
    m_edges = 0
    for j in range(n):
        for i in range(j):
            if dm[i, j] <= threshold:
                m_edges += 1
    idxs = np.empty(m_edges, dtype=np.int64)
    diams = np.empty(m_edges, dtype=np.float64)
    pos = 0
    # generate by descending index so a stable sort on diameter yields the
    # ascending (diam, index-descending) filtration order
    for j in range(n - 1, 0, -1):
        for i in range(j - 1, -1, -1):
            d = dm[i, j]
            if d <= threshold:
                idxs[pos] = binom[j, 2] + i
                diams[pos] = d
                pos += 1
    order = np.argsort(diams, kind="mergesort")
    parent = np.arange(n, dtype=np.int64)
    cap = n - 1 if n - 1 < m_edges else m_edges
    deaths = np.empty(cap, dtype=np.float64)
    merge_edges = np.empty(cap, dtype=np.int64)
    n_pairs = 0
    verts = np.empty(2, dtype=np.int64)
    for oi in range(m_edges):
        e = order[oi]
        _extract_vertices(idxs[e], 1, n, binom, verts)
        ra = _find(parent, verts[0])
        rb = _find(parent, verts[1])
        if ra != rb:
            parent[ra] = rb
            deaths[n_pairs] = diams[e]
            merge_edges[n_pairs] = idxs[e]
            n_pairs += 1
    return deaths[:n_pairs], n - n_pairs, np.sort(merge_edges[:n_pairs])


@njit(cache=True)
def _assemble_dim(p, dm, threshold, binom, cleared):
    """Stream the p-simplices, resolving apparent pairs on the fly.

    Returns (apparent pair births, deaths, essential births, destroyer
    cofacet indices for clearing p+1, surviving column indices, diameters).
    """
    n = dm.shape[0]
    verts = np.empty(p + 1, dtype=np.int64)
    cof_verts = np.empty(p + 2, dtype=np.int64)
    scratch = np.empty(p + 1, dtype=np.int64)

    pair_b = np.empty(256, dtype=np.float64)
    pair_d = np.empty(256, dtype=np.float64)
    n_pairs = 0
    ess = np.empty(16, dtype=np.float64)
    n_ess = 0
    destr = np.empty(256, dtype=np.int64)
    n_destr = 0
    col_idx = np.empty(256, dtype=np.int64)
    col_diam = np.empty(256, dtype=np.float64)
    n_cols = 0

    for a in range(n - 1):
        for b in range(a + 1, n):
            d_ab = dm[a, b]
            if d_ab > threshold:
                continue
            if p == 1:
                verts[0] = a
                verts[1] = b
                idx = binom[b, 2] + a
                diam = d_ab
                if _sorted_contains(cleared, idx):
                    continue
                w, cof_idx, cof_diam, found = _min_cofacet(
                    verts, 2, diam, dm, threshold, binom
                )
                if not found:
                    ess = _grow_f64(ess, n_ess)
                    ess[n_ess] = diam
                    n_ess += 1
                elif _is_apparent(verts, 2, idx, w, cof_verts, scratch, dm, binom):
                    if cof_diam > diam:
                        pair_b = _grow_f64(pair_b, n_pairs)
                        pair_d = _grow_f64(pair_d, n_pairs)
                        pair_b[n_pairs] = diam
                        pair_d[n_pairs] = cof_diam
                        n_pairs += 1
                    destr = _grow_i64(destr, n_destr)
                    destr[n_destr] = cof_idx
                    n_destr += 1
                else:
                    col_idx = _grow_i64(col_idx, n_cols)
                    col_diam = _grow_f64(col_diam, n_cols)
                    col_idx[n_cols] = idx
                    col_diam[n_cols] = diam
                    n_cols += 1
            else:
                base = binom[b, 2] + a
                for c in range(b + 1, n):
                    d1 = dm[a, c]
                    if d1 > threshold:
                        continue
                    d2 = dm[b, c]
                    if d2 > threshold:
                        continue
                    diam = d_ab
                    if d1 > diam:
                        diam = d1
                    if d2 > diam:
                        diam = d2
                    verts[0] = a
                    verts[1] = b
                    verts[2] = c
                    idx = binom[c, 3] + base
                    if _sorted_contains(cleared, idx):
                        continue
                    w, cof_idx, cof_diam, found = _min_cofacet(
                        verts, 3, diam, dm, threshold, binom
                    )
                    if not found:
                        ess = _grow_f64(ess, n_ess)
                        ess[n_ess] = diam
                        n_ess += 1
                    elif _is_apparent(verts, 3, idx, w, cof_verts, scratch, dm, binom):
                        if cof_diam > diam:
                            pair_b = _grow_f64(pair_b, n_pairs)
                            pair_d = _grow_f64(pair_d, n_pairs)
                            pair_b[n_pairs] = diam
                            pair_d[n_pairs] = cof_diam
                            n_pairs += 1
                        destr = _grow_i64(destr, n_destr)
                        destr[n_destr] = cof_idx
                        n_destr += 1
                    else:
                        col_idx = _grow_i64(col_idx, n_cols)
                        col_diam = _grow_f64(col_diam, n_cols)
                        col_idx[n_cols] = idx
                        col_diam[n_cols] = diam
                        n_cols += 1
    return (
        pair_b[:n_pairs],
        pair_d[:n_pairs],
        ess[:n_ess],
        destr[:n_destr],
        col_idx[:n_cols],
        col_diam[:n_cols],
    )


@njit(cache=True)
def _reduce_dim(p, dm, threshold, binom, col_idx, col_diam, collect_destroyers):
    """Heap-reduce the surviving columns, already in reverse filtration order.

    Returns (pair births, deaths, essential births, destroyer indices).
    """
    n = dm.shape[0]
    ncols = col_idx.shape[0]

    pivot_keys = Dict.empty(key_type=types.int64, value_type=types.int64)
    col_simplex = np.empty(ncols, dtype=np.int64)
    v_start = np.zeros(ncols + 1, dtype=np.int64)
    v_pool = np.empty(1024, dtype=np.int64)
    v_used = 0

    pair_b = np.empty(256, dtype=np.float64)
    pair_d = np.empty(256, dtype=np.float64)
    n_pairs = 0
    ess = np.empty(16, dtype=np.float64)
    n_ess = 0
    destr = np.empty(256, dtype=np.int64)
    n_destr = 0

    hd = np.empty(4096, dtype=np.float64)
    hi = np.empty(4096, dtype=np.int64)
    verts = np.empty(p + 1, dtype=np.int64)
    pv_verts = np.empty(p + 2, dtype=np.int64)
    scratch = np.empty(p + 1, dtype=np.int64)
    facet = np.empty(p + 1, dtype=np.int64)
    v_cur = np.empty(64, dtype=np.int64)

    for slot in range(ncols):
        sigma = col_idx[slot]
        diam = col_diam[slot]
        col_simplex[slot] = sigma
        size = 0
        n_vcur = 0
        hd, hi, size = _push_coboundary(sigma, p, dm, threshold, binom, hd, hi, size, verts)
        while True:
            pd, pi, size, ok = _pop_pivot(hd, hi, size)
            if not ok:
                ess = _grow_f64(ess, n_ess)
                ess[n_ess] = diam
                n_ess += 1
                break
            if pi in pivot_keys:
                # add the column that claimed this pivot: raw coboundary of
                # its simplex plus everything it recorded (flat F2 sum)
                other = pivot_keys[pi]
                v_cur = _grow_i64(v_cur, n_vcur)
                v_cur[n_vcur] = col_simplex[other]
                n_vcur += 1
                hd, hi, size = _push_coboundary(
                    col_simplex[other], p, dm, threshold, binom, hd, hi, size, verts
                )
                for e in range(v_start[other], v_start[other + 1]):
                    v_cur = _grow_i64(v_cur, n_vcur)
                    v_cur[n_vcur] = v_pool[e]
                    n_vcur += 1
                    hd, hi, size = _push_coboundary(
                        v_pool[e], p, dm, threshold, binom, hd, hi, size, verts
                    )
                # the incoming copy cancels the popped pivot; put it back
                hd = _grow_f64(hd, size)
                hi = _grow_i64(hi, size)
                size = _heap_push(hd, hi, size, pd, pi)
                continue
            # pivot may be apparent-paired with its own maximal facet (a
            # column the assembly skipped); that pair acts as implicit entry
            _extract_vertices(pi, p + 1, n, binom, pv_verts)
            mf_idx = _max_facet(pv_verts, p + 2, dm, binom, scratch)
            if mf_idx != sigma:
                _extract_vertices(mf_idx, p, n, binom, facet)
                fdiam = 0.0
                for a in range(p + 1):
                    for b2 in range(a + 1, p + 1):
                        x = dm[facet[a], facet[b2]]
                        if x > fdiam:
                            fdiam = x
                _w2, mc_idx, _mc_d, found2 = _min_cofacet(
                    facet, p + 1, fdiam, dm, threshold, binom
                )
                if found2 and mc_idx == pi:
                    v_cur = _grow_i64(v_cur, n_vcur)
                    v_cur[n_vcur] = mf_idx
                    n_vcur += 1
                    hd, hi, size = _push_coboundary(
                        mf_idx, p, dm, threshold, binom, hd, hi, size, verts
                    )
                    hd = _grow_f64(hd, size)
                    hi = _grow_i64(hi, size)
                    size = _heap_push(hd, hi, size, pd, pi)
                    continue
            # fresh pivot: claim it
            pivot_keys[pi] = slot
            for e in range(n_vcur):
                v_pool = _grow_i64(v_pool, v_used)
                v_pool[v_used] = v_cur[e]
                v_used += 1
            if pd > diam:
                pair_b = _grow_f64(pair_b, n_pairs)
                pair_d = _grow_f64(pair_d, n_pairs)
                pair_b[n_pairs] = diam
                pair_d[n_pairs] = pd
                n_pairs += 1
            if collect_destroyers:
                destr = _grow_i64(destr, n_destr)
                destr[n_destr] = pi
                n_destr += 1
            break
        v_start[slot + 1] = v_used

    return pair_b[:n_pairs], pair_d[:n_pairs], ess[:n_ess], destr[:n_destr]


def rips_pairs(dm: np.ndarray, threshold: float, max_dim: int) -> list:
    """Persistence pairs of the Rips filtration up to homology dim max_dim.

    Returns (dim, birth, death) rows with death = inf for essential classes;
    zero-persistence pairs are suppressed.
    """
    dm = np.ascontiguousarray(dm, dtype=np.float64)
    n = dm.shape[0]
    binom = _binom_table(n + 1, max_dim + 3)
    rows: list[tuple[int, float, float]] = []

    deaths0, ess0, cleared = _dim0(dm, threshold, binom)
    for d in deaths0:
        if d > 0:
            rows.append((0, 0.0, float(d)))
    rows.extend((0, 0.0, _INF) for _ in range(ess0))

    for p in range(1, max_dim + 1):
        ap_b, ap_d, ess_a, destr_a, col_idx, col_diam = _assemble_dim(
            p, dm, threshold, binom, cleared
        )
        # reverse filtration order: diameter descending, index ascending
        order = np.lexsort((col_idx, -col_diam))
        red_b, red_d, ess_r, destr_r = _reduce_dim(
            p, dm, threshold, binom, col_idx[order], col_diam[order], p < max_dim
        )
        rows.extend((p, float(b), float(d)) for b, d in zip(ap_b, ap_d))
        rows.extend((p, float(b), float(d)) for b, d in zip(red_b, red_d))
        rows.extend((p, float(b), _INF) for b in ess_a)
        rows.extend((p, float(b), _INF) for b in ess_r)
        if p < max_dim:
            cleared = np.sort(np.concatenate([destr_a, destr_r]))
    return rows
