"""Batched search primitives over products of probability simplices.

The falsification searches and region sweeps all optimize smooth
functions of one or more probability vectors. This module provides the
shared machinery: deterministic simplex grids, Euclidean projection,
Dirichlet sampling, and a batched projected-gradient ascent loop with a
deterministic best-witness reduction (earliest index wins ties).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np


def simplex_grid_count(dim: int, steps: int) -> int:
    """Number of points in the step-1/steps grid on the (dim-1)-simplex."""
    return math.comb(steps + dim - 1, dim - 1)


def simplex_grid(dim: int, steps: int) -> np.ndarray:
    """All probability vectors with entries that are multiples of 1/steps.

    Rows are emitted in a fixed lexicographic order, so callers relying on
    earliest-witness tie-breaking get deterministic results.
    """
    if dim < 1 or steps < 1:
        raise ValueError(f"dim and steps must be >= 1, got {dim}, {steps}")
    if dim == 1:
        return np.ones((1, 1))
    n = simplex_grid_count(dim, steps)
    out = np.empty((n, dim))
    # stars and bars: bar positions among steps + dim - 1 slots
    for row, bars in enumerate(
        itertools.combinations(range(steps + dim - 1), dim - 1)
    ):
        prev = -1
        for j, bar in enumerate(bars):
            out[row, j] = bar - prev - 1
            prev = bar
        out[row, dim - 1] = steps + dim - 2 - prev
    out /= steps
    return out


def choose_grid_step(
    block_dims: Sequence[int], requested: int, max_points: int
) -> int | None:
    """Finest grid denominator <= requested whose product grid fits the budget.

    Returns None when even the coarsest grid (denominator 1) exceeds
    ``max_points``; the caller then skips grid enumeration entirely.
    """
    for steps in range(requested, 0, -1):
        total = 1
        for d in block_dims:
            total *= simplex_grid_count(d, steps)
            if total > max_points:
                break
        if total <= max_points:
            return steps
    return None


def product_grid(block_dims: Sequence[int], steps: int) -> np.ndarray:
    """Cartesian product of per-block simplex grids, concatenated per row.

    The first block varies slowest, matching lexicographic enumeration.
    """
    grids = [simplex_grid(d, steps) for d in block_dims]
    total = 1
    for g in grids:
        total *= len(g)
    out = np.empty((total, sum(block_dims)))
    col = 0
    reps = total
    tiles = 1
    for g, d in zip(grids, block_dims):
        reps //= len(g)
        out[:, col : col + d] = np.tile(np.repeat(g, reps, axis=0), (tiles, 1))
        col += d
        tiles *= len(g)
    return out


def project_simplex_rows(x: np.ndarray) -> np.ndarray:
    """Euclidean projection of each row onto the probability simplex."""
    m, d = x.shape
    u = np.sort(x, axis=1)[:, ::-1]
    css = np.cumsum(u, axis=1) - 1.0
    ranks = np.arange(1, d + 1)
    positive = u - css / ranks > 0.0
    rho = d - 1 - np.argmax(positive[:, ::-1], axis=1)
    theta = css[np.arange(m), rho] / (rho + 1.0)
    return np.maximum(x - theta[:, None], 0.0)


def project_blocks(x: np.ndarray, block_dims: Sequence[int]) -> np.ndarray:
    """Project each block slice of each row onto its simplex."""
    out = np.empty_like(x)
    col = 0
    for d in block_dims:
        out[:, col : col + d] = project_simplex_rows(x[:, col : col + d])
        col += d
    return out


def sample_blocks(
    rng: np.random.Generator,
    m: int,
    block_dims: Sequence[int],
    alpha: float = 1.0,
) -> np.ndarray:
    """m Dirichlet(alpha,..,alpha) samples from the product of simplices.

    alpha = 1 is uniform; alpha < 1 concentrates near the vertices, which
    seeds searches with near-deterministic distributions.
    """
    parts = [rng.dirichlet(np.full(d, alpha), size=m) for d in block_dims]
    return np.concatenate(parts, axis=1)


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a falsification search: the largest value found."""

    value: float
    point: np.ndarray
    resolution: int  # grid denominator actually used, 0 if grid was skipped
    n_grid_points: int


def falsification_search(
    values_fn: Callable[[np.ndarray], np.ndarray],
    value_grad_fn: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]],
    block_dims: Sequence[int],
    *,
    grid: int,
    restarts: int,
    step: float,
    iters: int,
    max_grid_points: int,
    rng: np.random.Generator,
    chunk: int = 4096,
) -> SearchResult:
    """Maximize a gap function over a product of simplices.

    Evaluates a deterministic simplex grid (coarsened to fit
    ``max_grid_points``), then refines ``restarts`` random starts by
    projected-gradient ascent with a fixed step. The best iterate over the
    whole search is returned; ties are broken toward the earliest
    evaluation, so results are reproducible for a fixed rng state.
    """
    best_val = -np.inf
    best_x: np.ndarray | None = None

    def consider(vals: np.ndarray, points: np.ndarray):
        nonlocal best_val, best_x
        i = int(np.argmax(vals))
        if vals[i] > best_val:
            best_val = float(vals[i])
            best_x = points[i].copy()

    resolution = choose_grid_step(block_dims, grid, max_grid_points)
    n_grid = 0
    if resolution is not None:
        pts = product_grid(block_dims, resolution)
        n_grid = len(pts)
        for lo in range(0, n_grid, chunk):
            batch = pts[lo : lo + chunk]
            consider(values_fn(batch), batch)

    if restarts > 0:
        x = sample_blocks(rng, restarts, block_dims)
        for _ in range(iters):
            vals, grads = value_grad_fn(x)
            consider(vals, x)
            x = project_blocks(x + step * grads, block_dims)
        consider(values_fn(x), x)

    if best_x is None:
        raise ValueError("search ran with no grid points and no restarts")
    return SearchResult(best_val, best_x, resolution or 0, n_grid)
