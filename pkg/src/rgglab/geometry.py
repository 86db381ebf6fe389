"""Toroidal metric, circular projections, cell grid and disk-union areas.

All coordinates live on the unit torus [0,1)^2; wraparound is handled in
the metric, never by duplicating points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from rgglab._backend import core

SQRT2_OVER_2 = math.sqrt(2.0) / 2.0


def _reduce(v: float) -> float:
    r = v % 1.0
    return 0.0 if r == 1.0 else r  # v % 1.0 can round up to 1.0 for tiny v < 0


class TorusPoint(NamedTuple):
    """A point on the unit torus; coordinates reduced mod 1 on construction."""

    x: float
    y: float

    def __new__(cls, x: float, y: float):
        return super().__new__(cls, _reduce(float(x)), _reduce(float(y)))


@dataclass(frozen=True)
class PointSet:
    """An ordered set of torus points, stored as coordinate arrays."""

    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        xs = np.ascontiguousarray(self.xs, dtype=np.float64)
        ys = np.ascontiguousarray(self.ys, dtype=np.float64)
        if xs.ndim != 1 or ys.ndim != 1 or len(xs) != len(ys):
            raise ValueError("coordinate arrays must be 1-d and equally long")
        if len(xs) == 0:
            raise ValueError("empty point set (n must be >= 1)")
        if (xs < 0).any() or (xs >= 1).any() or (ys < 0).any() or (ys >= 1).any():
            raise ValueError("coordinates must lie in [0, 1)")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    @classmethod
    def from_points(cls, pts: Sequence[tuple[float, float]]) -> "PointSet":
        reduced = [TorusPoint(x, y) for x, y in pts]
        return cls(np.array([p.x for p in reduced]), np.array([p.y for p in reduced]))

    @property
    def n(self) -> int:
        return len(self.xs)

    def __len__(self) -> int:
        return len(self.xs)

    def point(self, i: int) -> TorusPoint:
        return TorusPoint(self.xs[i], self.ys[i])

    @property
    def points(self) -> list[TorusPoint]:
        return [TorusPoint(x, y) for x, y in zip(self.xs, self.ys)]


@dataclass(frozen=True)
class ClusterGeometry:
    """Distance rho from a cluster's leftmost vertex to its farthest member,
    together with the graph radius r."""

    rho: float
    r: float

    def __post_init__(self):
        if self.rho < 0:
            raise ValueError("rho must be non-negative")
        if self.r <= 0:
            raise ValueError("r must be positive")


def torus_distance(p, q) -> float:
    """Euclidean distance on the unit torus; result in [0, sqrt(2)/2]."""
    dx = abs(p[0] - q[0])
    if dx > 0.5:
        dx = 1.0 - dx
    dy = abs(p[1] - q[1])
    if dy > 0.5:
        dy = 1.0 - dy
    return math.sqrt(dx * dx + dy * dy)


def wrap_deltas(a: np.ndarray, b) -> np.ndarray:
    """Per-axis circular offsets |a - b| folded to [0, 1/2]; vectorized."""
    d = np.abs(a - b)
    return np.minimum(d, 1.0 - d)


def circular_extent(values) -> tuple[float, float, int]:
    """Smallest circular arc covering the values.

    Returns (extent, max_gap, anchor_index): max_gap is the largest
    circular gap between consecutive sorted values, extent = 1 - max_gap,
    and anchor_index points into the *input* at the value sitting
    immediately after the winning gap (the canonical "leftmost" element).
    Gap ties break toward the smallest anchor value, then smallest input
    index.
    """
    vals = np.asarray(values, dtype=np.float64)
    if vals.ndim != 1 or len(vals) == 0:
        raise ValueError("empty projection")
    m = len(vals)
    if m == 1:
        return 0.0, 1.0, 0
    order = np.argsort(vals, kind="stable")
    sv = vals[order]
    gaps = np.empty(m, dtype=np.float64)
    gaps[:-1] = sv[1:] - sv[:-1]
    gaps[-1] = sv[0] + 1.0 - sv[-1]
    top = gaps.max()
    cand = np.flatnonzero(gaps == top)
    anchors = sv[(cand + 1) % m]
    pick = cand[int(np.argmin(anchors))]
    anchor_sorted = (int(pick) + 1) % m
    return float(1.0 - top), float(top), int(order[anchor_sorted])


@dataclass(frozen=True)
class CellGrid:
    """Uniform square bucket grid over the torus."""

    cell_side: float
    cells_per_axis: int
    buckets: list  # list of int lists, indexed by cy * cells_per_axis + cx


def build_grid(ps: PointSet, cell_side_target: float) -> CellGrid:
    """Bucket the points into a grid with cell side 1/floor(1/target)."""
    if not (0.0 < cell_side_target <= 1.0):
        raise ValueError("cell side target must be in (0, 1]")
    cpa = max(1, int(math.floor(1.0 / cell_side_target)))
    side = 1.0 / cpa
    buckets: list[list[int]] = [[] for _ in range(cpa * cpa)]
    for i in range(ps.n):
        cx = min(int(ps.xs[i] * cpa), cpa - 1)
        cy = min(int(ps.ys[i] * cpa), cpa - 1)
        buckets[cy * cpa + cx].append(i)
    return CellGrid(cell_side=side, cells_per_axis=cpa, buckets=buckets)


def neighbors_within(grid: CellGrid, ps: PointSet, i: int, rad: float) -> np.ndarray:
    """Indices j != i with torus distance <= rad, ascending; grid-pruned."""
    if not (0 <= i < ps.n):
        raise IndexError(f"vertex index {i} out of range")
    cpa = grid.cells_per_axis
    d = int(math.ceil(rad / grid.cell_side)) if rad > 0 else 0
    cx = min(int(ps.xs[i] * cpa), cpa - 1)
    cy = min(int(ps.ys[i] * cpa), cpa - 1)
    if 2 * d + 1 >= cpa:
        xr = range(cpa)
        yr = range(cpa)
    else:
        xr = [(cx + o) % cpa for o in range(-d, d + 1)]
        yr = [(cy + o) % cpa for o in range(-d, d + 1)]
    r2 = rad * rad
    xi, yi = ps.xs[i], ps.ys[i]
    out = []
    for gy in yr:
        for gx in xr:
            for j in grid.buckets[gy * cpa + gx]:
                if j == i:
                    continue
                dx = abs(xi - ps.xs[j])
                if dx > 0.5:
                    dx = 1.0 - dx
                dy = abs(yi - ps.ys[j])
                if dy > 0.5:
                    dy = 1.0 - dy
                if dx * dx + dy * dy <= r2:
                    out.append(j)
    out.sort()
    return np.asarray(out, dtype=np.int64)


def disk_union_area_mc(centers: PointSet, rad: float, samples: int, seed) -> tuple[float, float]:
    """Hit-or-miss area estimate for the union of torus disks.

    Unbiased; returns (estimate, std_error) with
    std_error = sqrt(p*(1-p)/samples).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if rad < 0:
        raise ValueError("radius must be non-negative")
    master = seed.master if hasattr(seed, "master") else int(seed)
    hits = core.disk_union_hits(centers.xs, centers.ys, float(rad), int(samples), master)
    p = hits / samples
    return p, math.sqrt(p * (1.0 - p) / samples)
