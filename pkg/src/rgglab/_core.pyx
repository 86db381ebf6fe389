# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels for torus geometry, graph building and Monte Carlo.

Bit-identical twin of rgglab._core_py: same algorithms, same operation
order on IEEE doubles (the extension is compiled with -ffp-contract=off),
same pinned RNG (xoshiro256++ seeded via SplitMix64).
"""

import numpy as np

from libc.math cimport ceil, fabs, sqrt
from libc.stdint cimport int8_t, int64_t, uint8_t, uint64_t
from libc.stdlib cimport free, malloc, realloc

MASK64 = 0xFFFFFFFFFFFFFFFF

cdef uint64_t _GOLDEN = 0x9E3779B97F4A7C15ULL
cdef uint64_t _MIX1 = 0xBF58476D1CE4E5B9ULL
cdef uint64_t _MIX2 = 0x94D049BB133111EBULL
cdef double _INV53 = 1.0 / 9007199254740992.0


cdef inline uint64_t _mix64(uint64_t x) nogil:
    x = x + _GOLDEN
    x = (x ^ (x >> 30)) * _MIX1
    x = (x ^ (x >> 27)) * _MIX2
    return x ^ (x >> 31)


def mix64(x):
    """SplitMix64 step: advance by the golden gamma and finalize."""
    return int(_mix64(<uint64_t> (x & MASK64)))


def derive_subseed(master, k):
    """Pure, order-independent sub-seed for trial k of a run."""
    return int(_mix64(<uint64_t> ((master ^ k) & MASK64)))


cdef struct XoState:
    uint64_t s0
    uint64_t s1
    uint64_t s2
    uint64_t s3


cdef inline void _xo_seed(XoState* st, uint64_t seed) nogil:
    cdef uint64_t sm = seed
    cdef uint64_t z
    sm = sm + _GOLDEN
    z = (sm ^ (sm >> 30)) * _MIX1
    z = (z ^ (z >> 27)) * _MIX2
    st.s0 = z ^ (z >> 31)
    sm = sm + _GOLDEN
    z = (sm ^ (sm >> 30)) * _MIX1
    z = (z ^ (z >> 27)) * _MIX2
    st.s1 = z ^ (z >> 31)
    sm = sm + _GOLDEN
    z = (sm ^ (sm >> 30)) * _MIX1
    z = (z ^ (z >> 27)) * _MIX2
    st.s2 = z ^ (z >> 31)
    sm = sm + _GOLDEN
    z = (sm ^ (sm >> 30)) * _MIX1
    z = (z ^ (z >> 27)) * _MIX2
    st.s3 = z ^ (z >> 31)


cdef inline uint64_t _xo_next(XoState* st) nogil:
    cdef uint64_t tmp = st.s0 + st.s3
    cdef uint64_t result = ((tmp << 23) | (tmp >> 41)) + st.s0
    cdef uint64_t t = st.s1 << 17
    st.s2 ^= st.s0
    st.s3 ^= st.s1
    st.s1 ^= st.s2
    st.s0 ^= st.s3
    st.s2 ^= t
    st.s3 = (st.s3 << 45) | (st.s3 >> 19)
    return result


cdef inline double _xo_double(XoState* st) nogil:
    return <double> (_xo_next(st) >> 11) * _INV53


def uniform_pairs(n, seed):
    """n i.i.d. uniform points on [0,1)^2; x drawn before y for each point."""
    cdef Py_ssize_t m = n
    xs = np.empty(m, dtype=np.float64)
    ys = np.empty(m, dtype=np.float64)
    cdef double[::1] xv = xs
    cdef double[::1] yv = ys
    cdef XoState st
    _xo_seed(&st, <uint64_t> (seed & MASK64))
    cdef Py_ssize_t i
    with nogil:
        for i in range(m):
            xv[i] = _xo_double(&st)
            yv[i] = _xo_double(&st)
    return xs, ys


cdef inline double _wrap_d2(double xi, double yi, double xj, double yj) nogil:
    cdef double dx = fabs(xi - xj)
    cdef double dy
    if dx > 0.5:
        dx = 1.0 - dx
    dy = fabs(yi - yj)
    if dy > 0.5:
        dy = 1.0 - dy
    return dx * dx + dy * dy


# ---------------------------------------------------------------------------
# cell-grid helpers

cdef void _bin_points(double[::1] xs, double[::1] ys, Py_ssize_t cpa,
                      int64_t[::1] start, int64_t[::1] order,
                      int64_t[::1] cell_of) nogil:
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t ncells = cpa * cpa
    cdef Py_ssize_t i, cx, cy, c
    for i in range(ncells + 1):
        start[i] = 0
    for i in range(n):
        cx = <Py_ssize_t> (xs[i] * cpa)
        if cx >= cpa:
            cx = cpa - 1
        cy = <Py_ssize_t> (ys[i] * cpa)
        if cy >= cpa:
            cy = cpa - 1
        c = cy * cpa + cx
        cell_of[i] = c
        start[c + 1] += 1
    for i in range(ncells):
        start[i + 1] += start[i]
    # stable fill: ascending point index within each cell
    cdef int64_t* fill = <int64_t*> malloc(ncells * sizeof(int64_t))
    for i in range(ncells):
        fill[i] = start[i]
    for i in range(n):
        c = cell_of[i]
        order[fill[c]] = i
        fill[c] += 1
    free(fill)


def build_adjacency(double[::1] xs, double[::1] ys, double r):
    """CSR adjacency of the graph with edges at torus distance <= r."""
    cdef Py_ssize_t n = xs.shape[0]
    cdef double target = r if r > 1.0 / 1024.0 else 1.0 / 1024.0
    cdef Py_ssize_t cpa = <Py_ssize_t> (1.0 / target)
    if cpa < 1:
        cpa = 1
    if cpa > 1024:
        cpa = 1024
    cdef double side = 1.0 / cpa
    cdef Py_ssize_t d = 0
    if r > 0.0:
        d = <Py_ssize_t> ceil(r / side)
    cdef bint full = (2 * d + 1 >= cpa)

    start_arr = np.zeros(cpa * cpa + 1, dtype=np.int64)
    order_arr = np.empty(n, dtype=np.int64)
    cell_arr = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] start = start_arr
    cdef int64_t[::1] order = order_arr
    cdef int64_t[::1] cell_of = cell_arr
    with nogil:
        _bin_points(xs, ys, cpa, start, order, cell_of)

    cdef double r2 = r * r
    # gather unordered pairs (i < j), one test per pair
    cdef Py_ssize_t cap = 8 * n + 16
    cdef int64_t* pi = <int64_t*> malloc(cap * sizeof(int64_t))
    cdef int64_t* pj = <int64_t*> malloc(cap * sizeof(int64_t))
    cdef Py_ssize_t npairs = 0
    cdef Py_ssize_t i, j, t, cx, cy, gx, gy, ox, oy, c
    cdef double xi, yi
    with nogil:
        for i in range(n):
            xi = xs[i]
            yi = ys[i]
            c = cell_of[i]
            cx = c % cpa
            cy = c / cpa
            for oy in range(-d, d + 1):
                if full:
                    if oy + d >= cpa:
                        break
                    gy = oy + d
                else:
                    gy = (cy + oy) % cpa
                    if gy < 0:
                        gy += cpa
                for ox in range(-d, d + 1):
                    if full:
                        if ox + d >= cpa:
                            break
                        gx = ox + d
                    else:
                        gx = (cx + ox) % cpa
                        if gx < 0:
                            gx += cpa
                    c = gy * cpa + gx
                    for t in range(start[c], start[c + 1]):
                        j = order[t]
                        if j <= i:
                            continue
                        if _wrap_d2(xi, yi, xs[j], ys[j]) <= r2:
                            if npairs == cap:
                                with gil:
                                    cap *= 2
                                    pi = <int64_t*> realloc(pi, cap * sizeof(int64_t))
                                    pj = <int64_t*> realloc(pj, cap * sizeof(int64_t))
                            pi[npairs] = i
                            pj[npairs] = j
                            npairs += 1

    indptr_arr = np.zeros(n + 1, dtype=np.int64)
    cdef int64_t[::1] indptr = indptr_arr
    for t in range(npairs):
        indptr[pi[t] + 1] += 1
        indptr[pj[t] + 1] += 1
    for i in range(n):
        indptr[i + 1] += indptr[i]
    indices_arr = np.empty(indptr[n], dtype=np.int64)
    cdef int64_t[::1] indices = indices_arr
    cdef int64_t* fill = <int64_t*> malloc((n if n > 0 else 1) * sizeof(int64_t))
    cdef int64_t a, b, key
    cdef Py_ssize_t p, q
    with nogil:
        for i in range(n):
            fill[i] = indptr[i]
        for t in range(npairs):
            a = pi[t]
            b = pj[t]
            indices[fill[a]] = b
            fill[a] += 1
            indices[fill[b]] = a
            fill[b] += 1
        # rows are short at threshold densities: insertion sort each
        for i in range(n):
            for p in range(indptr[i] + 1, indptr[i + 1]):
                key = indices[p]
                q = p - 1
                while q >= indptr[i] and indices[q] > key:
                    indices[q + 1] = indices[q]
                    q -= 1
                indices[q + 1] = key
    free(fill)
    free(pi)
    free(pj)
    return indptr_arr, indices_arr


cdef inline int64_t _uf_find(int64_t* parent, int64_t a) nogil:
    cdef int64_t root = a
    cdef int64_t nxt
    while parent[root] != root:
        root = parent[root]
    while parent[a] != root:
        nxt = parent[a]
        parent[a] = root
        a = nxt
    return root


def connected_components(int64_t[::1] indptr, int64_t[::1] indices):
    """Union-find labeling; labels ordered by smallest vertex in component."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef int64_t* parent = <int64_t*> malloc((n if n > 0 else 1) * sizeof(int64_t))
    cdef int8_t* rank = <int8_t*> malloc((n if n > 0 else 1) * sizeof(int8_t))
    cdef Py_ssize_t i, t
    cdef int64_t j, ra, rb, tmp
    labels_arr = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] labels = labels_arr
    cdef int64_t nlab = 0
    with nogil:
        for i in range(n):
            parent[i] = i
            rank[i] = 0
        for i in range(n):
            for t in range(indptr[i], indptr[i + 1]):
                j = indices[t]
                if j <= i:
                    continue
                ra = _uf_find(parent, i)
                rb = _uf_find(parent, j)
                if ra == rb:
                    continue
                if rank[ra] < rank[rb]:
                    tmp = ra
                    ra = rb
                    rb = tmp
                parent[rb] = ra
                if rank[ra] == rank[rb]:
                    rank[ra] += 1
        for i in range(n):
            labels[i] = -1
        for i in range(n):
            ra = _uf_find(parent, i)
            if labels[ra] < 0:
                labels[ra] = nlab
                nlab += 1
        for i in range(n):
            labels[i] = labels[_uf_find(parent, i)]
    # labels[root] was temporarily the component id; second pass fixed all
    sizes_arr = np.zeros(nlab, dtype=np.int64)
    cdef int64_t[::1] sizes = sizes_arr
    for i in range(n):
        sizes[labels[i]] += 1
    free(parent)
    free(rank)
    return labels_arr, sizes_arr


def diameter_allpairs(double[::1] xs, double[::1] ys):
    """Exact max pairwise torus distance; O(n^2)."""
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t i, j
    cdef double best = 0.0
    cdef double d2, xi, yi
    with nogil:
        for i in range(n):
            xi = xs[i]
            yi = ys[i]
            for j in range(i + 1, n):
                d2 = _wrap_d2(xi, yi, xs[j], ys[j])
                if d2 > best:
                    best = d2
    return sqrt(best)


def nn_dists(double[::1] xs, double[::1] ys):
    """Exact nearest-neighbor torus distance per vertex (grid ring search).

    Expanding-ring pruning only discards candidates that are provably
    farther (with a safety margin well above rounding), so the minimum
    equals the brute-force value bit for bit.
    """
    cdef Py_ssize_t n = xs.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t cpa = <Py_ssize_t> sqrt(<double> n)
    if cpa < 1:
        cpa = 1
    if cpa > 1024:
        cpa = 1024
    cdef double side = 1.0 / cpa

    start_arr = np.zeros(cpa * cpa + 1, dtype=np.int64)
    order_arr = np.empty(n, dtype=np.int64)
    cell_arr = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] start = start_arr
    cdef int64_t[::1] order = order_arr
    cdef int64_t[::1] cell_of = cell_arr
    cdef Py_ssize_t i, j, t, cx, cy, gx, gy, ox, oy, c, k
    cdef double best, d2, bound, xi, yi
    cdef bint done
    with nogil:
        _bin_points(xs, ys, cpa, start, order, cell_of)
        for i in range(n):
            xi = xs[i]
            yi = ys[i]
            c = cell_of[i]
            cx = c % cpa
            cy = c / cpa
            best = 2.0  # > max possible squared distance (0.5)
            k = 0
            done = False
            while not done:
                if 2 * k + 1 >= cpa:
                    # scan everything that is left and stop
                    for gy in range(cpa):
                        for gx in range(cpa):
                            if k > 0:
                                # skip cells already scanned in rings < k
                                ox = gx - cx
                                if ox > cpa / 2:
                                    ox -= cpa
                                if ox < -(cpa / 2):
                                    ox += cpa
                                oy = gy - cy
                                if oy > cpa / 2:
                                    oy -= cpa
                                if oy < -(cpa / 2):
                                    oy += cpa
                                if -k < ox < k and -k < oy < k:
                                    continue
                            c = gy * cpa + gx
                            for t in range(start[c], start[c + 1]):
                                j = order[t]
                                if j == i:
                                    continue
                                d2 = _wrap_d2(xi, yi, xs[j], ys[j])
                                if d2 < best:
                                    best = d2
                    done = True
                else:
                    # ring k: cells with max(|ox|,|oy|) == k
                    for oy in range(-k, k + 1):
                        gy = (cy + oy) % cpa
                        if gy < 0:
                            gy += cpa
                        for ox in range(-k, k + 1):
                            if k > 0 and ox != -k and ox != k and oy != -k and oy != k:
                                continue
                            gx = (cx + ox) % cpa
                            if gx < 0:
                                gx += cpa
                            c = gy * cpa + gx
                            for t in range(start[c], start[c + 1]):
                                j = order[t]
                                if j == i:
                                    continue
                                d2 = _wrap_d2(xi, yi, xs[j], ys[j])
                                if d2 < best:
                                    best = d2
                    bound = k * side * 0.999999999
                    if best <= bound * bound:
                        done = True
                    else:
                        k += 1
            ov[i] = sqrt(best)
    return out


def edges_within(double[::1] xs, double[::1] ys, double rad):
    """All pairs (i < j) at torus distance <= rad, with their distances."""
    cdef Py_ssize_t n = xs.shape[0]
    cdef double target = rad if rad > 1.0 / 1024.0 else 1.0 / 1024.0
    cdef Py_ssize_t cpa = <Py_ssize_t> (1.0 / target)
    if cpa < 1:
        cpa = 1
    if cpa > 1024:
        cpa = 1024
    cdef double side = 1.0 / cpa
    cdef Py_ssize_t d = 0
    if rad > 0.0:
        d = <Py_ssize_t> ceil(rad / side)
    cdef bint full = (2 * d + 1 >= cpa)

    start_arr = np.zeros(cpa * cpa + 1, dtype=np.int64)
    order_arr = np.empty(n, dtype=np.int64)
    cell_arr = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] start = start_arr
    cdef int64_t[::1] order = order_arr
    cdef int64_t[::1] cell_of = cell_arr

    cdef Py_ssize_t cap = 8 * n + 16
    cdef int64_t* pi = <int64_t*> malloc(cap * sizeof(int64_t))
    cdef int64_t* pj = <int64_t*> malloc(cap * sizeof(int64_t))
    cdef double* pw = <double*> malloc(cap * sizeof(double))
    cdef Py_ssize_t npairs = 0
    cdef double r2 = rad * rad
    cdef Py_ssize_t i, j, t, cx, cy, gx, gy, ox, oy, c
    cdef double xi, yi, d2
    with nogil:
        _bin_points(xs, ys, cpa, start, order, cell_of)
        for i in range(n):
            xi = xs[i]
            yi = ys[i]
            c = cell_of[i]
            cx = c % cpa
            cy = c / cpa
            for oy in range(-d, d + 1):
                if full:
                    if oy + d >= cpa:
                        break
                    gy = oy + d
                else:
                    gy = (cy + oy) % cpa
                    if gy < 0:
                        gy += cpa
                for ox in range(-d, d + 1):
                    if full:
                        if ox + d >= cpa:
                            break
                        gx = ox + d
                    else:
                        gx = (cx + ox) % cpa
                        if gx < 0:
                            gx += cpa
                    c = gy * cpa + gx
                    for t in range(start[c], start[c + 1]):
                        j = order[t]
                        if j <= i:
                            continue
                        d2 = _wrap_d2(xi, yi, xs[j], ys[j])
                        if d2 <= r2:
                            if npairs == cap:
                                with gil:
                                    cap *= 2
                                    pi = <int64_t*> realloc(pi, cap * sizeof(int64_t))
                                    pj = <int64_t*> realloc(pj, cap * sizeof(int64_t))
                                    pw = <double*> realloc(pw, cap * sizeof(double))
                            pi[npairs] = i
                            pj[npairs] = j
                            pw[npairs] = sqrt(d2)
                            npairs += 1
    ei = np.empty(npairs, dtype=np.int64)
    ej = np.empty(npairs, dtype=np.int64)
    w = np.empty(npairs, dtype=np.float64)
    cdef int64_t[::1] eiv = ei
    cdef int64_t[::1] ejv = ej
    cdef double[::1] wv = w
    for t in range(npairs):
        eiv[t] = pi[t]
        ejv[t] = pj[t]
        wv[t] = pw[t]
    free(pi)
    free(pj)
    free(pw)
    return ei, ej, w


def kruskal_max_edge(n, int64_t[::1] ei, int64_t[::1] ej):
    """Kruskal over pre-sorted edges; returns (last uniting index, unions)."""
    cdef Py_ssize_t nn = n
    cdef Py_ssize_t m = ei.shape[0]
    cdef int64_t* parent = <int64_t*> malloc((nn if nn > 0 else 1) * sizeof(int64_t))
    cdef int8_t* rank = <int8_t*> malloc((nn if nn > 0 else 1) * sizeof(int8_t))
    cdef Py_ssize_t t
    cdef int64_t ra, rb, tmp
    cdef Py_ssize_t unions = 0
    cdef Py_ssize_t last = -1
    with nogil:
        for t in range(nn):
            parent[t] = t
            rank[t] = 0
        for t in range(m):
            ra = _uf_find(parent, ei[t])
            rb = _uf_find(parent, ej[t])
            if ra == rb:
                continue
            if rank[ra] < rank[rb]:
                tmp = ra
                ra = rb
                rb = tmp
            parent[rb] = ra
            if rank[ra] == rank[rb]:
                rank[ra] += 1
            unions += 1
            last = t
            if unions == nn - 1:
                break
    free(parent)
    free(rank)
    return last, unions


def disk_union_hits(double[::1] cxs, double[::1] cys, double rad, samples, seed):
    """Hit-or-miss counter for the union of torus disks around the centers."""
    cdef Py_ssize_t ns = samples
    cdef Py_ssize_t m = cxs.shape[0]
    cdef double r2 = rad * rad
    cdef XoState st
    _xo_seed(&st, <uint64_t> (seed & MASK64))
    cdef Py_ssize_t s, c
    cdef double px, py
    cdef int64_t hits = 0
    with nogil:
        for s in range(ns):
            px = _xo_double(&st)
            py = _xo_double(&st)
            for c in range(m):
                if _wrap_d2(px, py, cxs[c], cys[c]) <= r2:
                    hits += 1
                    break
    return int(hits)


def free_cell_wrap(double[::1] mxs, double[::1] mys, double r, double alpha):
    """Wrap test for the free space around one component.

    Same FREE-cell definition as the pure-Python twin (cell center farther
    than r + half the cell diagonal from every member).  Cells are marked
    through per-occupied-cell stamp masks: offsets that guarantee coverage
    by the triangle inequality are written blind, borderline offsets fall
    back to the exact per-member test, so the FREE set is identical to the
    naive definition.
    """
    cdef Py_ssize_t nm = mxs.shape[0]
    cdef Py_ssize_t cpa = <Py_ssize_t> (1.0 / (alpha * r))
    if cpa < 1:
        cpa = 1
    if cpa > 8192:
        raise ValueError("free-cell tessellation too fine (alpha*r too small)")
    cdef double side = 1.0 / cpa
    cdef double reach = r + side * (sqrt(2.0) / 2.0)
    cdef double r2 = reach * reach
    cdef double diag2 = side * (sqrt(2.0) / 2.0)
    cdef Py_ssize_t ncells = cpa * cpa

    covered_arr = np.zeros(ncells, dtype=np.uint8)
    cdef uint8_t[::1] covered = covered_arr
    cdef Py_ssize_t win = <Py_ssize_t> (reach / side) + 2
    cdef Py_ssize_t i, m, cx, cy, gx, gy, ox, oy, c, t
    cdef double mx, my, dx, dy, cenx, ceny, celld

    start_arr = np.zeros(ncells + 1, dtype=np.int64)
    order_arr = np.empty(nm, dtype=np.int64)
    cell_arr = np.empty(nm, dtype=np.int64)
    cdef int64_t[::1] start = start_arr
    cdef int64_t[::1] order = order_arr
    cdef int64_t[::1] cell_of = cell_arr

    cdef Py_ssize_t nmask, kdef, kbrd
    cdef int64_t* moffx
    cdef int64_t* moffy
    cdef uint8_t* mkind  # 1 definite, 2 border

    if 2 * win + 1 >= cpa:
        # grid too small for disjoint stamp masks: exact test everywhere
        with nogil:
            for m in range(nm):
                mx = mxs[m]
                my = mys[m]
                for gy in range(cpa):
                    ceny = (gy + 0.5) * side
                    dy = fabs(ceny - my)
                    if dy > 0.5:
                        dy = 1.0 - dy
                    for gx in range(cpa):
                        c = gy * cpa + gx
                        if covered[c]:
                            continue
                        cenx = (gx + 0.5) * side
                        dx = fabs(cenx - mx)
                        if dx > 0.5:
                            dx = 1.0 - dx
                        if dx * dx + dy * dy <= r2:
                            covered[c] = 1
    else:
        # classify stamp offsets once
        nmask = (2 * win + 1) * (2 * win + 1)
        moffx = <int64_t*> malloc(nmask * sizeof(int64_t))
        moffy = <int64_t*> malloc(nmask * sizeof(int64_t))
        mkind = <uint8_t*> malloc(nmask * sizeof(uint8_t))
        t = 0
        for oy in range(-win, win + 1):
            for ox in range(-win, win + 1):
                celld = side * sqrt(<double> (ox * ox + oy * oy))
                moffx[t] = ox
                moffy[t] = oy
                if celld + diag2 <= reach * (1.0 - 1e-12):
                    mkind[t] = 1
                elif celld - diag2 <= reach * (1.0 + 1e-12):
                    mkind[t] = 2
                else:
                    mkind[t] = 0
                t += 1
        with nogil:
            _bin_points(mxs, mys, cpa, start, order, cell_of)
            for c in range(ncells):
                if start[c] == start[c + 1]:
                    continue
                cx = c % cpa
                cy = c / cpa
                for t in range(nmask):
                    if mkind[t] == 0:
                        continue
                    gx = (cx + moffx[t]) % cpa
                    if gx < 0:
                        gx += cpa
                    gy = (cy + moffy[t]) % cpa
                    if gy < 0:
                        gy += cpa
                    i = gy * cpa + gx
                    if covered[i]:
                        continue
                    if mkind[t] == 1:
                        covered[i] = 1
                        continue
                    cenx = (gx + 0.5) * side
                    ceny = (gy + 0.5) * side
                    for m in range(start[c], start[c + 1]):
                        mx = mxs[order[m]]
                        my = mys[order[m]]
                        dx = fabs(cenx - mx)
                        if dx > 0.5:
                            dx = 1.0 - dx
                        dy = fabs(ceny - my)
                        if dy > 0.5:
                            dy = 1.0 - dy
                        if dx * dx + dy * dy <= r2:
                            covered[i] = 1
                            break
        free(moffx)
        free(moffy)
        free(mkind)

    cdef Py_ssize_t free_count = 0
    for c in range(ncells):
        if not covered[c]:
            free_count += 1
    if free_count == 0:
        return False, 0
    return _free_graph_wraps(covered, cpa), int(free_count)


cdef bint _free_graph_wraps(uint8_t[::1] covered, Py_ssize_t cpa):
    """Displacement-tracking union-find over FREE cells (twin of _core_py)."""
    cdef Py_ssize_t ncells = cpa * cpa
    cdef int64_t* parent = <int64_t*> malloc(ncells * sizeof(int64_t))
    cdef int64_t* offx = <int64_t*> malloc(ncells * sizeof(int64_t))
    cdef int64_t* offy = <int64_t*> malloc(ncells * sizeof(int64_t))
    cdef int8_t* rank = <int8_t*> malloc(ncells * sizeof(int8_t))
    cdef Py_ssize_t i, cx, cy, c, nb
    cdef int64_t ra, rb, oax, oay, obx, oby
    cdef bint wraps = False
    with nogil:
        for i in range(ncells):
            parent[i] = i
            offx[i] = 0
            offy[i] = 0
            rank[i] = 0
        for cy in range(cpa):
            if wraps:
                break
            for cx in range(cpa):
                c = cy * cpa + cx
                if covered[c]:
                    continue
                # right neighbor, displacement (+1, 0)
                nb = cy * cpa + ((cx + 1) % cpa)
                if nb != c and not covered[nb]:
                    ra = _disp_find(parent, offx, offy, c, &oax, &oay)
                    rb = _disp_find(parent, offx, offy, nb, &obx, &oby)
                    if ra == rb:
                        if obx - oax != 1 or oby - oay != 0:
                            wraps = True
                            break
                    else:
                        if rank[ra] < rank[rb]:
                            parent[ra] = rb
                            offx[ra] = (obx - 1) - oax
                            offy[ra] = oby - oay
                        else:
                            parent[rb] = ra
                            offx[rb] = (oax + 1) - obx
                            offy[rb] = (oay) - oby
                            if rank[ra] == rank[rb]:
                                rank[ra] += 1
                # down neighbor, displacement (0, +1)
                nb = ((cy + 1) % cpa) * cpa + cx
                if nb != c and not covered[nb]:
                    ra = _disp_find(parent, offx, offy, c, &oax, &oay)
                    rb = _disp_find(parent, offx, offy, nb, &obx, &oby)
                    if ra == rb:
                        if obx - oax != 0 or oby - oay != 1:
                            wraps = True
                            break
                    else:
                        if rank[ra] < rank[rb]:
                            parent[ra] = rb
                            offx[ra] = obx - oax
                            offy[ra] = (oby - 1) - oay
                        else:
                            parent[rb] = ra
                            offx[rb] = oax - obx
                            offy[rb] = (oay + 1) - oby
                            if rank[ra] == rank[rb]:
                                rank[ra] += 1
    free(parent)
    free(offx)
    free(offy)
    free(rank)
    return wraps


cdef int64_t _disp_find(int64_t* parent, int64_t* offx, int64_t* offy,
                        int64_t a, int64_t* ox_out, int64_t* oy_out) nogil:
    cdef int64_t ox = 0
    cdef int64_t oy = 0
    cdef int64_t root = a
    # first pass: find root and total displacement
    while parent[root] != root:
        ox += offx[root]
        oy += offy[root]
        root = parent[root]
    # second pass: path compression with displacement folding
    cdef int64_t cur = a
    cdef int64_t pox = 0
    cdef int64_t poy = 0
    cdef int64_t nxt, cox, coy
    while parent[cur] != root and parent[cur] != cur:
        nxt = parent[cur]
        cox = offx[cur]
        coy = offy[cur]
        parent[cur] = root
        offx[cur] = ox - pox
        offy[cur] = oy - poy
        pox += cox
        poy += coy
        cur = nxt
    ox_out[0] = ox
    oy_out[0] = oy
    return root
