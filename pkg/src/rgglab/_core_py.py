"""Pure-Python twin of the compiled kernel module.

Every function here has the same name, signature and *bit-identical*
output as its counterpart in ``rgglab._core``.  The compiled module is
built with ``-ffp-contract=off`` and both sides stick to plain IEEE-754
double operations evaluated in the same order, so results agree exactly,
not just approximately.  ``tests/test_backends.py`` asserts this.

The random number generator is pinned for reproducibility:

* stream generator: xoshiro256++ (4x64-bit state),
* seeding: four successive SplitMix64 outputs from the 64-bit seed,
* uniform doubles: ``(next() >> 11) * 2**-53``, one call per coordinate,
  x before y,
* trial sub-seeds: ``mix64(master XOR k)`` where ``mix64`` is the
  SplitMix64 step (advance by the golden-gamma constant, then finalize).
"""

from __future__ import annotations

import math

import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_INV53 = 1.0 / 9007199254740992.0  # 2**-53


def mix64(x: int) -> int:
    """SplitMix64 step: advance by the golden gamma and finalize."""
    x = (x + _GOLDEN) & MASK64
    x = ((x ^ (x >> 30)) * _MIX1) & MASK64
    x = ((x ^ (x >> 27)) * _MIX2) & MASK64
    return x ^ (x >> 31)


def derive_subseed(master: int, k: int) -> int:
    """Pure, order-independent sub-seed for trial k of a run."""
    return mix64((master ^ k) & MASK64)


def _seed_state(seed: int) -> list[int]:
    sm = seed & MASK64
    state = []
    for _ in range(4):
        sm = (sm + _GOLDEN) & MASK64
        z = ((sm ^ (sm >> 30)) * _MIX1) & MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & MASK64
        state.append(z ^ (z >> 31))
    return state


class _Xoshiro:
    """xoshiro256++ with SplitMix64 seeding."""

    __slots__ = ("s0", "s1", "s2", "s3")

    def __init__(self, seed: int):
        self.s0, self.s1, self.s2, self.s3 = _seed_state(seed)

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self.s0, self.s1, self.s2, self.s3
        tmp = (s0 + s3) & MASK64
        result = (((tmp << 23) | (tmp >> 41)) + s0) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) | (s3 >> 19)) & MASK64
        self.s0, self.s1, self.s2, self.s3 = s0, s1, s2, s3
        return result

    def next_double(self) -> float:
        return (self.next_u64() >> 11) * _INV53


def uniform_pairs(n: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """n i.i.d. uniform points on [0,1)^2; x drawn before y for each point."""
    rng = _Xoshiro(seed)
    xs = np.empty(n, dtype=np.float64)
    ys = np.empty(n, dtype=np.float64)
    for i in range(n):
        xs[i] = rng.next_double()
        ys[i] = rng.next_double()
    return xs, ys


# ---------------------------------------------------------------------------
# cell-grid helpers

def _grid_cells(cpa: int, xs, ys):
    """Bucket points into a cpa x cpa grid; returns (start, order) arrays.

    ``order`` holds point indices grouped by cell id (cy*cpa + cx), ascending
    within each cell; ``start`` is the CSR-style offset array.
    """
    n = len(xs)
    ncells = cpa * cpa
    cell_of = np.empty(n, dtype=np.int64)
    for i in range(n):
        cx = int(xs[i] * cpa)
        if cx >= cpa:
            cx = cpa - 1
        cy = int(ys[i] * cpa)
        if cy >= cpa:
            cy = cpa - 1
        cell_of[i] = cy * cpa + cx
    counts = np.zeros(ncells + 1, dtype=np.int64)
    for i in range(n):
        counts[cell_of[i] + 1] += 1
    start = np.cumsum(counts)
    order = np.empty(n, dtype=np.int64)
    fill = start[:-1].copy()
    for i in range(n):
        c = cell_of[i]
        order[fill[c]] = i
        fill[c] += 1
    return start, order, cell_of


def _axis_offsets(d: int, cpa: int):
    """Cell offsets to scan along one axis: -d..d, or everything if wider."""
    if 2 * d + 1 >= cpa:
        return list(range(cpa)), True  # absolute cell indices
    return list(range(-d, d + 1)), False


def build_adjacency(xs: np.ndarray, ys: np.ndarray, r: float) -> tuple[np.ndarray, np.ndarray]:
    """CSR adjacency of the graph with edges at torus distance <= r.

    Grid cell side targets r, clamped so the grid never exceeds 1024^2
    cells; rows come out in ascending neighbor order.
    """
    n = len(xs)
    target = r if r > 1.0 / 1024.0 else 1.0 / 1024.0
    cpa = int(1.0 / target)
    if cpa < 1:
        cpa = 1
    if cpa > 1024:
        cpa = 1024
    side = 1.0 / cpa
    start, order, cell_of = _grid_cells(cpa, xs, ys)
    d = int(math.ceil(r / side)) if r > 0.0 else 0
    offs, absolute = _axis_offsets(d, cpa)
    r2 = r * r

    rows: list[list[int]] = [[] for _ in range(n)]
    for i in range(n):
        xi = xs[i]
        yi = ys[i]
        ci = cell_of[i]
        cx = ci % cpa
        cy = ci // cpa
        for oy in offs:
            gy = oy if absolute else (cy + oy) % cpa
            base = gy * cpa
            for ox in offs:
                gx = ox if absolute else (cx + ox) % cpa
                c = base + gx
                for t in range(start[c], start[c + 1]):
                    j = order[t]
                    if j == i:
                        continue
                    dx = abs(xi - xs[j])
                    if dx > 0.5:
                        dx = 1.0 - dx
                    dy = abs(yi - ys[j])
                    if dy > 0.5:
                        dy = 1.0 - dy
                    if dx * dx + dy * dy <= r2:
                        rows[i].append(j)
    indptr = np.zeros(n + 1, dtype=np.int64)
    for i in range(n):
        rows[i].sort()
        indptr[i + 1] = indptr[i] + len(rows[i])
    indices = np.empty(indptr[n], dtype=np.int64)
    for i in range(n):
        indices[indptr[i]:indptr[i + 1]] = rows[i]
    return indptr, indices


def connected_components(indptr: np.ndarray, indices: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Union-find labeling; labels ordered by smallest vertex in component."""
    n = len(indptr) - 1
    parent = list(range(n))
    rank = [0] * n

    def find(a: int) -> int:
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    for i in range(n):
        for t in range(indptr[i], indptr[i + 1]):
            j = int(indices[t])
            if j <= i:
                continue
            ra, rb = find(i), find(j)
            if ra == rb:
                continue
            if rank[ra] < rank[rb]:
                ra, rb = rb, ra
            parent[rb] = ra
            if rank[ra] == rank[rb]:
                rank[ra] += 1

    labels = np.empty(n, dtype=np.int64)
    label_of_root: dict[int, int] = {}
    sizes: list[int] = []
    for i in range(n):
        root = find(i)
        lab = label_of_root.get(root)
        if lab is None:
            lab = len(sizes)
            label_of_root[root] = lab
            sizes.append(0)
        labels[i] = lab
        sizes[lab] += 1
    return labels, np.asarray(sizes, dtype=np.int64)


def diameter_allpairs(xs: np.ndarray, ys: np.ndarray) -> float:
    """Exact max pairwise torus distance; O(n^2)."""
    n = len(xs)
    best = 0.0
    for i in range(n):
        xi = xs[i]
        yi = ys[i]
        for j in range(i + 1, n):
            dx = abs(xi - xs[j])
            if dx > 0.5:
                dx = 1.0 - dx
            dy = abs(yi - ys[j])
            if dy > 0.5:
                dy = 1.0 - dy
            d2 = dx * dx + dy * dy
            if d2 > best:
                best = d2
    return math.sqrt(best)


def nn_dists(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Exact nearest-neighbor torus distance per vertex (brute force twin).

    Squared distances are minimized, so the result does not depend on the
    reduction order and matches the compiled grid-search version exactly.
    """
    n = len(xs)
    out = np.empty(n, dtype=np.float64)
    chunk = 256
    for lo in range(0, n, chunk):
        hi = min(lo + chunk, n)
        dx = np.abs(xs[lo:hi, None] - xs[None, :])
        np.minimum(dx, 1.0 - dx, out=dx)
        dy = np.abs(ys[lo:hi, None] - ys[None, :])
        np.minimum(dy, 1.0 - dy, out=dy)
        d2 = dx * dx + dy * dy
        for i in range(lo, hi):
            d2[i - lo, i] = np.inf
        np.sqrt(d2.min(axis=1), out=out[lo:hi])
    return out


def edges_within(xs: np.ndarray, ys: np.ndarray, rad: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All pairs (i < j) at torus distance <= rad, with their distances."""
    n = len(xs)
    ei: list[int] = []
    ej: list[int] = []
    w: list[float] = []
    r2 = rad * rad
    for i in range(n):
        xi = xs[i]
        yi = ys[i]
        for j in range(i + 1, n):
            dx = abs(xi - xs[j])
            if dx > 0.5:
                dx = 1.0 - dx
            dy = abs(yi - ys[j])
            if dy > 0.5:
                dy = 1.0 - dy
            d2 = dx * dx + dy * dy
            if d2 <= r2:
                ei.append(i)
                ej.append(j)
                w.append(math.sqrt(d2))
    return (np.asarray(ei, dtype=np.int64), np.asarray(ej, dtype=np.int64),
            np.asarray(w, dtype=np.float64))


def kruskal_max_edge(n: int, ei: np.ndarray, ej: np.ndarray) -> tuple[int, int]:
    """Run Kruskal over pre-sorted candidate edges.

    Returns (index of the last uniting edge, number of unions).  The caller
    checks unions == n-1 for spanning.
    """
    parent = list(range(n))
    rank = [0] * n

    def find(a: int) -> int:
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    unions = 0
    last = -1
    for t in range(len(ei)):
        ra, rb = find(int(ei[t])), find(int(ej[t]))
        if ra == rb:
            continue
        if rank[ra] < rank[rb]:
            ra, rb = rb, ra
        parent[rb] = ra
        if rank[ra] == rank[rb]:
            rank[ra] += 1
        unions += 1
        last = t
        if unions == n - 1:
            break
    return last, unions


def disk_union_hits(cxs: np.ndarray, cys: np.ndarray, rad: float, samples: int, seed: int) -> int:
    """Hit-or-miss counter for the union of torus disks around the centers."""
    rng = _Xoshiro(seed)
    m = len(cxs)
    r2 = rad * rad
    hits = 0
    for _ in range(samples):
        px = rng.next_double()
        py = rng.next_double()
        for c in range(m):
            dx = abs(px - cxs[c])
            if dx > 0.5:
                dx = 1.0 - dx
            dy = abs(py - cys[c])
            if dy > 0.5:
                dy = 1.0 - dy
            if dx * dx + dy * dy <= r2:
                hits += 1
                break
    return hits


def free_cell_wrap(mxs: np.ndarray, mys: np.ndarray, r: float, alpha: float) -> tuple[bool, int]:
    """Wrap test for the free space around one component.

    Tessellates the torus into square cells of side ~ alpha*r, marks a cell
    FREE when its center is farther than r + (cell diagonal)/2 from every
    member vertex, and reports whether the FREE-cell graph (4-neighborhood,
    toroidal) contains a noncontractible cycle.  Returns (wraps, free_count).
    """
    cpa = int(1.0 / (alpha * r))
    if cpa < 1:
        cpa = 1
    if cpa > 8192:
        raise ValueError("free-cell tessellation too fine (alpha*r too small)")
    side = 1.0 / cpa
    reach = r + side * (math.sqrt(2.0) / 2.0)
    r2 = reach * reach
    ncells = cpa * cpa

    covered = np.zeros(ncells, dtype=np.uint8)
    win = int(reach / side) + 2
    offs, absolute = _axis_offsets(win, cpa)
    for m in range(len(mxs)):
        mx = mxs[m]
        my = mys[m]
        cx = int(mx * cpa)
        if cx >= cpa:
            cx = cpa - 1
        cy = int(my * cpa)
        if cy >= cpa:
            cy = cpa - 1
        for oy in offs:
            gy = oy if absolute else (cy + oy) % cpa
            ceny = (gy + 0.5) * side
            dy = abs(ceny - my)
            if dy > 0.5:
                dy = 1.0 - dy
            base = gy * cpa
            for ox in offs:
                gx = ox if absolute else (cx + ox) % cpa
                c = base + gx
                if covered[c]:
                    continue
                cenx = (gx + 0.5) * side
                dx = abs(cenx - mx)
                if dx > 0.5:
                    dx = 1.0 - dx
                if dx * dx + dy * dy <= r2:
                    covered[c] = 1

    free_count = int(ncells - int(covered.sum()))
    if free_count == 0:
        return False, 0
    return _free_graph_wraps(covered, cpa), free_count


def _free_graph_wraps(covered: np.ndarray, cpa: int) -> bool:
    """Displacement-tracking union-find over FREE cells.

    Right/down neighbor edges carry displacement (1,0)/(0,1) in unwrapped
    cell coordinates; joining two cells already in one set with an
    inconsistent displacement witnesses a noncontractible (wrapping) cycle.
    """
    ncells = cpa * cpa
    parent = np.arange(ncells, dtype=np.int64)
    offx = np.zeros(ncells, dtype=np.int64)
    offy = np.zeros(ncells, dtype=np.int64)
    rank = np.zeros(ncells, dtype=np.int8)

    def find2(a: int) -> tuple[int, int, int]:
        """Root of a plus a's cumulative displacement relative to the root."""
        path = []
        ox = 0
        oy = 0
        while parent[a] != a:
            path.append((a, ox, oy))
            ox += int(offx[a])
            oy += int(offy[a])
            a = int(parent[a])
        for node, pox, poy in path:
            parent[node] = a
            offx[node] = ox - pox
            offy[node] = oy - poy
        return a, ox, oy

    wraps = False
    for cy in range(cpa):
        base = cy * cpa
        for cx in range(cpa):
            c = base + cx
            if covered[c]:
                continue
            # right neighbor, displacement (+1, 0)
            nx = base + ((cx + 1) % cpa)
            if not covered[nx] and nx != c:
                ra, oax, oay = find2(c)
                rb, obx, oby = find2(nx)
                if ra == rb:
                    if obx - oax != 1 or oby - oay != 0:
                        wraps = True
                else:
                    if rank[ra] < rank[rb]:
                        parent[ra] = rb
                        offx[ra] = (obx - 1) - oax
                        offy[ra] = oby - oay
                    else:
                        parent[rb] = ra
                        offx[rb] = (oax + 1) - obx
                        offy[rb] = oay - oby
                        if rank[ra] == rank[rb]:
                            rank[ra] += 1
            # down neighbor, displacement (0, +1)
            ny = ((cy + 1) % cpa) * cpa + cx
            if not covered[ny] and ny != c:
                ra, oax, oay = find2(c)
                rb, obx, oby = find2(ny)
                if ra == rb:
                    if obx - oax != 0 or oby - oay != 1:
                        wraps = True
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
            if wraps:
                return True
    return wraps
