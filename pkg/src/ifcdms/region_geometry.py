"""Geometry of two-dimensional rate regions.

A rate region is a convex, down-closed subset of the nonnegative
quadrant, represented by the vertex list of its Pareto frontier (r1
ascending, r2 descending). The module provides Pareto reduction, convex
down-closed hulls, polytopes from halfspace bounds, membership and
containment with signed gaps, region intersection, and boundary-contact
sweeps. All operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import DomainError, ShapeError


@dataclass(frozen=True)
class RatePair:
    """A nonnegative rate point in bits per channel use.

    ``clamped`` marks points whose raw first coordinate was negative and
    was clamped to zero (a valid, trivial rate point).
    """

    r1: float
    r2: float
    clamped: bool = False

    def __post_init__(self):
        if not (np.isfinite(self.r1) and np.isfinite(self.r2)):
            raise DomainError(f"non-finite rate pair ({self.r1}, {self.r2})")
        if self.r1 < 0.0 or self.r2 < 0.0:
            raise DomainError(f"negative rate pair ({self.r1}, {self.r2})")

    def as_tuple(self) -> tuple[float, float]:
        return (self.r1, self.r2)


def _coords(p) -> tuple[float, float]:
    if isinstance(p, RatePair):
        return p.r1, p.r2
    x, y = p
    return float(x), float(y)


@dataclass(frozen=True)
class CornerCurve:
    """Sampled rate points with their generating parameter values."""

    params: np.ndarray
    r1: np.ndarray
    r2: np.ndarray

    def __post_init__(self):
        params = np.asarray(self.params, dtype=np.float64).reshape(-1)
        r1 = np.asarray(self.r1, dtype=np.float64).reshape(-1)
        r2 = np.asarray(self.r2, dtype=np.float64).reshape(-1)
        if not (params.size == r1.size == r2.size):
            raise ShapeError("params, r1, r2 must have equal lengths")
        for name, arr in (("r1", r1), ("r2", r2)):
            if not np.all(np.isfinite(arr)):
                raise DomainError(f"non-finite {name} coordinate")
            if arr.size and arr.min() < 0.0:
                raise DomainError(f"negative {name} coordinate {arr.min()}")
        if not np.all(np.isfinite(params)):
            raise DomainError("non-finite parameter value")
        for arr in (params, r1, r2):
            arr.flags.writeable = False
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "r1", r1)
        object.__setattr__(self, "r2", r2)

    def __len__(self) -> int:
        return self.params.size

    @classmethod
    def from_points(
        cls, points: Sequence[tuple[float, float, float]]
    ) -> "CornerCurve":
        arr = np.asarray(points, dtype=np.float64).reshape(-1, 3)
        return cls(arr[:, 0], arr[:, 1], arr[:, 2])


def pareto_frontier(points: CornerCurve) -> CornerCurve:
    """Remove every point dominated by another; sort by r1 ascending.

    Ties on r1 keep the larger r2; exact duplicates keep the earliest
    generating parameter (stable order).
    """
    n = len(points)
    if n == 0:
        raise ValueError("pareto_frontier of an empty curve")
    idx = np.arange(n)
    # last key is primary: sort by r1 desc, then r2 desc, then input order
    order = np.lexsort((idx, -points.r2, -points.r1))
    keep: list[int] = []
    best_r2 = -np.inf
    for i in order:
        if points.r2[i] > best_r2:
            keep.append(int(i))
            best_r2 = points.r2[i]
    keep.reverse()  # r1 descending scan -> ascending output
    sel = np.array(keep, dtype=int)
    return CornerCurve(points.params[sel], points.r1[sel], points.r2[sel])


@dataclass(frozen=True)
class RateRegion:
    """Convex down-closed region given by its Pareto-frontier vertices.

    The region is the down-closure of the convex hull of the vertices and
    their axis projections; membership extends the first vertex
    horizontally to r1 = 0 and drops vertically after the last one.
    """

    r1: np.ndarray
    r2: np.ndarray
    params: np.ndarray | None = None

    def __post_init__(self):
        r1 = np.asarray(self.r1, dtype=np.float64).reshape(-1)
        r2 = np.asarray(self.r2, dtype=np.float64).reshape(-1)
        if r1.size == 0 or r1.size != r2.size:
            raise ShapeError("a region needs n >= 1 frontier vertices")
        if not (np.all(np.isfinite(r1)) and np.all(np.isfinite(r2))):
            raise DomainError("non-finite frontier vertex")
        if r1.min() < 0.0 or r2.min() < 0.0:
            raise DomainError("negative frontier vertex")
        if r1.size > 1:
            if not np.all(np.diff(r1) > 0.0):
                raise ShapeError("frontier r1 must be strictly increasing")
            if not np.all(np.diff(r2) < 0.0):
                raise ShapeError("frontier r2 must be strictly decreasing")
            # concavity: consecutive cross products must not turn left
            o1, o2 = r1[:-2], r2[:-2]
            a1, a2 = r1[1:-1], r2[1:-1]
            b1, b2 = r1[2:], r2[2:]
            cross = (a1 - o1) * (b2 - o2) - (a2 - o2) * (b1 - o1)
            scale = max(1.0, float(r1.max()) ** 2, float(r2.max()) ** 2)
            if r1.size > 2 and cross.max() > 1e-9 * scale:
                raise ShapeError("frontier is not concave")
        r1.flags.writeable = False
        r2.flags.writeable = False
        object.__setattr__(self, "r1", r1)
        object.__setattr__(self, "r2", r2)
        if self.params is not None:
            p = np.asarray(self.params, dtype=np.float64).reshape(-1)
            if p.size != r1.size:
                raise ShapeError("params length mismatch")
            p.flags.writeable = False
            object.__setattr__(self, "params", p)

    @property
    def max_r1(self) -> float:
        return float(self.r1[-1])

    @property
    def max_r2(self) -> float:
        return float(self.r2[0])

    @property
    def max_sum(self) -> float:
        return float((self.r1 + self.r2).max())

    def frontier(self, x) -> np.ndarray:
        """Frontier height at r1 = x (horizontal extension left of the
        first vertex; right of the last vertex the region has ended and
        membership is governed by max_r1)."""
        return np.interp(x, self.r1, self.r2)

    def violation(self, p) -> float:
        """Signed gap of a point: <= 0 inside, > 0 outside (bits)."""
        x, y = _coords(p)
        over_top = y - float(self.frontier(min(x, self.max_r1)))
        over_right = x - self.max_r1
        return max(over_top, over_right)

    def n_vertices(self) -> int:
        return self.r1.size


@dataclass(frozen=True)
class Polytope:
    """Intersection of halfspaces c1*r1 + c2*r2 <= d with c1, c2 >= 0,
    plus nonnegativity of both rates."""

    halfspaces: tuple[tuple[float, float, float], ...]

    def __post_init__(self):
        hs = tuple(
            (float(c1), float(c2), float(d)) for c1, c2, d in self.halfspaces
        )
        if not hs:
            raise ShapeError("polytope needs at least one halfspace")
        for c1, c2, d in hs:
            if not (np.isfinite(c1) and np.isfinite(c2) and np.isfinite(d)):
                raise DomainError("non-finite halfspace")
            if c1 < 0.0 or c2 < 0.0:
                raise DomainError("halfspace normals must be nonnegative")
            if d < 0.0:
                raise DomainError("empty polytope: origin excluded")
        if not any(c1 > 0.0 for c1, _, _ in hs):
            raise DomainError("polytope unbounded in r1")
        if not any(c2 > 0.0 for _, c2, _ in hs):
            raise DomainError("polytope unbounded in r2")
        object.__setattr__(self, "halfspaces", hs)

    def violation(self, p) -> float:
        x, y = _coords(p)
        worst = max(-x, -y)
        for c1, c2, d in self.halfspaces:
            worst = max(worst, c1 * x + c2 * y - d)
        return worst


RegionLike = Union[RateRegion, Polytope]


def violations(region: RegionLike, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Vectorized signed gaps of many points against one region."""
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if isinstance(region, RateRegion):
        over_top = ys - region.frontier(np.minimum(xs, region.max_r1))
        return np.maximum(over_top, xs - region.max_r1)
    worst = np.maximum(-xs, -ys)
    for c1, c2, d in region.halfspaces:
        worst = np.maximum(worst, c1 * xs + c2 * ys - d)
    return worst


def contains(region: RegionLike, p, tol: float = 1e-6) -> bool:
    """Membership with tolerance ``tol`` in bits."""
    return region.violation(p) <= tol


def convex_downset_hull(points: CornerCurve) -> RateRegion:
    """Convex, down-closed hull of sampled points (plus axis projections
    and the origin), returned as the Pareto frontier of the hull."""
    front = pareto_frontier(points)
    xs, ys, ps = front.r1, front.r2, front.params
    keep_x: list[float] = []
    keep_y: list[float] = []
    keep_p: list[float] = []
    for x, y, par in zip(xs, ys, ps):
        while len(keep_x) >= 2:
            o1, o2 = keep_x[-2], keep_y[-2]
            a1, a2 = keep_x[-1], keep_y[-1]
            cross = (a1 - o1) * (y - o2) - (a2 - o2) * (x - o1)
            if cross >= 0.0:  # middle vertex on or below the chord
                keep_x.pop()
                keep_y.pop()
                keep_p.pop()
            else:
                break
        keep_x.append(float(x))
        keep_y.append(float(y))
        keep_p.append(float(par))
    return RateRegion(np.array(keep_x), np.array(keep_y), np.array(keep_p))


@dataclass(frozen=True)
class SubsetReport:
    """Outcome of a sampled containment test with its worst witness."""

    ok: bool
    max_violation: float
    witness: tuple[float, float]
    n_checked: int

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "max_violation": self.max_violation,
            "witness": list(self.witness),
            "n_checked": self.n_checked,
        }


def subset_check(
    a: RateRegion,
    b: RegionLike,
    tol: float = 1e-6,
    n_samples: int = 512,
) -> SubsetReport:
    """Test A-subset-of-B on A's vertices plus frontier interpolants.

    Reports the largest signed violation and the point attaining it, so a
    failed containment always comes with a witness.
    """
    xs = [a.r1]
    if n_samples > 0:
        xs.append(np.linspace(0.0, a.max_r1, n_samples))
    x = np.concatenate(xs)
    y = a.frontier(x)
    v = violations(b, x, y)
    i = int(np.argmax(v))
    return SubsetReport(
        ok=bool(v[i] <= tol),
        max_violation=float(v[i]),
        witness=(float(x[i]), float(y[i])),
        n_checked=x.size,
    )


@dataclass(frozen=True)
class CrossingInterval:
    """A bracketing interval of one boundary-contact transition.

    States: -1 strictly inside, 0 on the boundary within tolerance,
    +1 strictly outside.
    """

    t_lo: float
    t_hi: float
    state_before: int
    state_after: int
    p_lo: tuple[float, float]
    p_hi: tuple[float, float]

    def to_dict(self) -> dict:
        return {
            "t_lo": self.t_lo,
            "t_hi": self.t_hi,
            "state_before": self.state_before,
            "state_after": self.state_after,
            "p_lo": list(self.p_lo),
            "p_hi": list(self.p_hi),
        }


def _boundary_path(a: RateRegion) -> tuple[np.ndarray, np.ndarray]:
    """Full upper-right boundary polyline of a region, from (0, max_r2)
    across the frontier and down to (max_r1, 0)."""
    xs = [0.0] + list(a.r1) + [a.max_r1]
    ys = [a.max_r2] + list(a.r2) + [0.0]
    px, py = [xs[0]], [ys[0]]
    for x, y in zip(xs[1:], ys[1:]):
        if x != px[-1] or y != py[-1]:
            px.append(x)
            py.append(y)
    return np.array(px), np.array(py)


def boundary_crossings(
    a: RateRegion,
    b: RegionLike,
    sweep_n: int = 10000,
    tol: float = 1e-6,
) -> list[CrossingInterval]:
    """Sweep A's boundary and bracket every change of contact state wrt B.

    The sweep parameter is normalized arc length in [0, 1] along A's full
    boundary. A region strictly inside B yields no crossings, and exact
    coincidence (membership within tolerance everywhere) also yields none.
    """
    if sweep_n < 2:
        raise ValueError("sweep_n must be >= 2")
    px, py = _boundary_path(a)
    seg = np.hypot(np.diff(px), np.diff(py))
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    total = cum[-1] if cum[-1] > 0 else 1.0
    ts = np.linspace(0.0, cum[-1], sweep_n)
    sx = np.interp(ts, cum, px)
    sy = np.interp(ts, cum, py)
    v = violations(b, sx, sy)
    states = np.where(v > tol, 1, np.where(v < -tol, -1, 0))
    out: list[CrossingInterval] = []
    for i in range(sweep_n - 1):
        if states[i] != states[i + 1]:
            out.append(
                CrossingInterval(
                    t_lo=float(ts[i] / total),
                    t_hi=float(ts[i + 1] / total),
                    state_before=int(states[i]),
                    state_after=int(states[i + 1]),
                    p_lo=(float(sx[i]), float(sy[i])),
                    p_hi=(float(sx[i + 1]), float(sy[i + 1])),
                )
            )
    return out


def polytope_region(poly: Polytope) -> RateRegion:
    """Vertex representation of a bounded halfspace polytope."""
    lines = [(c1, c2, d) for c1, c2, d in poly.halfspaces]
    lines.append((1.0, 0.0, 0.0))  # r1 = 0 boundary, vertex candidates only
    lines.append((0.0, 1.0, 0.0))  # r2 = 0 boundary
    cands: list[tuple[float, float]] = []
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            a1, b1, d1 = lines[i]
            a2, b2, d2 = lines[j]
            det = a1 * b2 - a2 * b1
            if abs(det) < 1e-12:
                continue
            x = (d1 * b2 - d2 * b1) / det
            y = (a1 * d2 - a2 * d1) / det
            if x < -1e-9 or y < -1e-9:
                continue
            x, y = max(x, 0.0), max(y, 0.0)
            if poly.violation((x, y)) <= 1e-9:
                cands.append((x, y))
    if not cands:
        raise DomainError("polytope has no nonnegative vertices")
    arr = np.array(cands)
    curve = CornerCurve(np.arange(len(cands), dtype=float), arr[:, 0], arr[:, 1])
    return convex_downset_hull(curve)


def region_intersection(a: RateRegion, b: RateRegion) -> RateRegion:
    """Pointwise intersection of two regions (min of the two frontiers).

    The minimum of two concave frontiers is concave, so the result is
    again a valid region; segment crossings are located exactly.
    """
    max_x = min(a.max_r1, b.max_r1)
    bps = np.unique(
        np.concatenate(
            [
                [0.0, max_x],
                a.r1[a.r1 <= max_x],
                b.r1[b.r1 <= max_x],
            ]
        )
    )
    fa = a.frontier(bps)
    fb = b.frontier(bps)
    xs = list(bps)
    for i in range(len(bps) - 1):
        d0 = fa[i] - fb[i]
        d1 = fa[i + 1] - fb[i + 1]
        if d0 * d1 < 0.0:
            t = d0 / (d0 - d1)
            xs.append(float(bps[i] + t * (bps[i + 1] - bps[i])))
    xs = np.unique(np.array(xs))
    ys = np.minimum(a.frontier(xs), b.frontier(xs))
    curve = CornerCurve(xs.copy(), xs, ys)
    return convex_downset_hull(curve)
