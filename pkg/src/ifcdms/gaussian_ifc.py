"""Closed-form Gaussian rate regions for one fully informed transmitter.

The channel pair is Y1 = X1 + a*X2 + Z1, Y2 = b*X1 + X2 + Z2 with unit
noise variances and average power constraints P1, P2. When transmitter 1
also knows the second message and |b| <= 1, the capacity region has a
closed form swept by a power split alpha; the same formulas give the
dirty-paper regions of the two encoding orders, the strong-interference
capacity polytope, and the genie-aided (Kramer) outer bound. Everything
here is an exact formula evaluation; no Monte Carlo is used anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InternalConsistencyError
from .region_geometry import (
    CornerCurve,
    Polytope,
    RatePair,
    RateRegion,
    convex_downset_hull,
    region_intersection,
)


def _half_log2(x: float) -> float:
    return 0.5 * math.log2(x)


@dataclass(frozen=True)
class GaussianParams:
    """Powers and cross gains; noise variances are fixed at 1."""

    p1: float
    p2: float
    a: float
    b: float

    def __post_init__(self):
        vals = (self.p1, self.p2, self.a, self.b)
        if not all(math.isfinite(v) for v in vals):
            raise DomainError(f"non-finite channel parameters {vals}")
        if self.p1 < 0.0 or self.p2 < 0.0:
            raise DomainError("powers must be nonnegative")


@dataclass(frozen=True)
class PowerSplit:
    """Fraction alpha of P1 spent on the private message, plus the
    cross-covariance gamma between the cooperative codeword parts."""

    alpha: float
    gamma: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise DomainError(f"alpha must be in [0, 1], got {self.alpha}")
        if not math.isfinite(self.gamma):
            raise DomainError("gamma must be finite")

    def validate_against(self, params: GaussianParams):
        cap = (1.0 - self.alpha) * params.p1 * params.p2
        if self.gamma * self.gamma > cap + 1e-12:
            raise DomainError(
                f"gamma^2 = {self.gamma**2:.6g} exceeds (1-alpha)*P1*P2 = {cap:.6g}"
            )


@dataclass(frozen=True)
class CovarianceSigma:
    """2x2 covariance of the cooperative signal pair, with the receiver-2
    steering vector h = [b, 1]."""

    sigma: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.sigma, dtype=np.float64)
        if s.shape != (2, 2):
            raise DomainError(f"sigma must be 2x2, got {s.shape}")
        if abs(s[0, 1] - s[1, 0]) > 1e-9:
            raise DomainError("sigma must be symmetric")
        scale = max(1.0, float(np.abs(s).max()))
        if s[0, 0] < -1e-12 or s[1, 1] < -1e-12 or np.linalg.det(s) < -1e-9 * scale:
            raise DomainError("sigma must be positive semidefinite")
        s.flags.writeable = False
        object.__setattr__(self, "sigma", s)

    @classmethod
    def from_split(
        cls, params: GaussianParams, split: PowerSplit
    ) -> "CovarianceSigma":
        split.validate_against(params)
        s = np.array(
            [
                [(1.0 - split.alpha) * params.p1, split.gamma],
                [split.gamma, params.p2],
            ]
        )
        return cls(s)

    def h_quadratic(self, b: float) -> float:
        """h Sigma h^T for h = [b, 1]."""
        s = self.sigma
        return float(b * b * s[0, 0] + 2.0 * b * s[0, 1] + s[1, 1])


def _check_alpha(alpha: float, name: str = "alpha"):
    if not (math.isfinite(alpha) and 0.0 <= alpha <= 1.0):
        raise DomainError(f"{name} must be in [0, 1], got {alpha}")


def _best_gamma(params: GaussianParams, alpha: float) -> float:
    """Sign-matched cross covariance maximizing the cooperative boost."""
    g = math.sqrt((1.0 - alpha) * params.p1 * params.p2)
    return math.copysign(g, params.b) if params.b != 0.0 else 0.0


def capacity_t1_corner(params: GaussianParams, alpha: float) -> RatePair:
    """Capacity-region corner when transmitter 1 knows both messages.

    Requires |b| <= 1 (the cross link into receiver 2 must be weak). The
    second coordinate is evaluated both through the covariance quadratic
    form and through the explicit ratio; the two must agree to 1e-12.
    """
    if abs(params.b) > 1.0:
        raise DomainError(
            "capacity_t1 requires |b| <= 1 (weak cross link into receiver 2)"
        )
    _check_alpha(alpha)
    p1, p2, b = params.p1, params.p2, params.b
    r1 = _half_log2(1.0 + alpha * p1)
    gamma = _best_gamma(params, alpha)
    sigma = CovarianceSigma.from_split(params, PowerSplit(alpha, gamma))
    r2_quad = _half_log2(1.0 + sigma.h_quadratic(b) / (1.0 + b * b * alpha * p1))
    r2 = _half_log2(
        (1.0 + b * b * p1 + 2.0 * abs(b) * math.sqrt((1.0 - alpha) * p1 * p2) + p2)
        / (1.0 + b * b * alpha * p1)
    )
    if abs(r2_quad - r2) > 1e-12:
        raise InternalConsistencyError(
            f"quadratic-form and explicit rates differ by {abs(r2_quad - r2):.3e}"
        )
    return RatePair(r1, r2)


def capacity_t2_corner(params: GaussianParams, beta: float) -> RatePair:
    """Mirrored capacity corner when transmitter 2 knows both messages;
    requires |a| <= 1."""
    if abs(params.a) > 1.0:
        raise DomainError(
            "capacity_t2 requires |a| <= 1 (weak cross link into receiver 1)"
        )
    _check_alpha(beta, "beta")
    p1, p2, a = params.p1, params.p2, params.a
    r1 = _half_log2(
        (1.0 + p1 + 2.0 * abs(a) * math.sqrt((1.0 - beta) * p1 * p2) + a * a * p2)
        / (1.0 + a * a * beta * p2)
    )
    r2 = _half_log2(1.0 + beta * p2)
    return RatePair(r1, r2)


def dpc12_corner(params: GaussianParams, alpha: float) -> RatePair:
    """Dirty-paper corner, private message encoded first (any b)."""
    _check_alpha(alpha)
    p1, p2, b = params.p1, params.p2, params.b
    r1 = _half_log2(1.0 + alpha * p1)
    r2 = _half_log2(
        (1.0 + b * b * p1 + 2.0 * abs(b) * math.sqrt((1.0 - alpha) * p1 * p2) + p2)
        / (1.0 + b * b * alpha * p1)
    )
    return RatePair(r1, r2)


def dpc21_corner(params: GaussianParams, alpha: float) -> RatePair:
    """Dirty-paper corner, cooperative message encoded first (any b)."""
    _check_alpha(alpha)
    p1, p2, b = params.p1, params.p2, params.b
    r1 = _half_log2((1.0 + p1) / (1.0 + (1.0 - alpha) * p1))
    r2 = _half_log2(
        1.0 + b * b * p1 + 2.0 * abs(b) * math.sqrt((1.0 - alpha) * p1 * p2) + p2
    )
    return RatePair(r1, r2)


def strong_capacity_polytope(params: GaussianParams) -> Polytope:
    """Capacity polytope of the non-cooperative pair under strong
    interference; requires a^2 >= 1 and b^2 >= 1."""
    p1, p2, a, b = params.p1, params.p2, params.a, params.b
    if a * a < 1.0 or b * b < 1.0:
        raise DomainError(
            "strong-interference capacity requires a^2 >= 1 and b^2 >= 1"
        )
    return Polytope(
        (
            (1.0, 0.0, _half_log2(1.0 + p1)),
            (0.0, 1.0, _half_log2(1.0 + p2)),
            (1.0, 1.0, _half_log2(p1 + a * a * p2 + 1.0)),
            (1.0, 1.0, _half_log2(b * b * p1 + p2 + 1.0)),
        )
    )


def kramer_polytope(params: GaussianParams) -> Polytope:
    """Genie-aided outer bound on the non-cooperative pair (Kramer)."""
    p1, p2, a, b = params.p1, params.p2, params.a, params.b
    sum_a = _half_log2(
        (p1 + a * a * p2 + 1.0) * (p2 + 1.0) / (min(a * a, 1.0) * p2 + 1.0)
    )
    sum_b = _half_log2(
        (p2 + b * b * p1 + 1.0) * (p1 + 1.0) / (min(b * b, 1.0) * p1 + 1.0)
    )
    return Polytope(
        (
            (1.0, 0.0, _half_log2(1.0 + p1)),
            (0.0, 1.0, _half_log2(1.0 + p2)),
            (1.0, 1.0, sum_a),
            (1.0, 1.0, sum_b),
        )
    )


def _sweep(corner_fn, params: GaussianParams, steps: int) -> CornerCurve:
    if steps < 2:
        raise DomainError(f"sweep needs at least 2 points, got {steps}")
    alphas = np.linspace(0.0, 1.0, steps)
    r1 = np.empty(steps)
    r2 = np.empty(steps)
    for i, al in enumerate(alphas):
        pt = corner_fn(params, float(al))
        r1[i] = pt.r1
        r2[i] = pt.r2
    return CornerCurve(alphas, r1, r2)


def capacity_t1_sweep(params: GaussianParams, steps: int = 1001) -> CornerCurve:
    """Corner curve of the informed-transmitter-1 capacity region."""
    return _sweep(capacity_t1_corner, params, steps)


def capacity_t2_sweep(params: GaussianParams, steps: int = 1001) -> CornerCurve:
    return _sweep(capacity_t2_corner, params, steps)


def dpc12_sweep(params: GaussianParams, steps: int = 1001) -> CornerCurve:
    return _sweep(dpc12_corner, params, steps)


def dpc21_sweep(params: GaussianParams, steps: int = 1001) -> CornerCurve:
    return _sweep(dpc21_corner, params, steps)


def intersection_region(params: GaussianParams, steps: int = 1001) -> RateRegion:
    """Intersection of the two informed-transmitter capacity regions.

    Each region is swept, down-closed and convexified; the result is an
    outer bound for the non-cooperative channel pair. Requires |a| <= 1
    and |b| <= 1 so that both capacity formulas apply.
    """
    if abs(params.a) > 1.0 or abs(params.b) > 1.0:
        raise DomainError("intersection_region requires |a| <= 1 and |b| <= 1")
    region_t1 = convex_downset_hull(capacity_t1_sweep(params, steps))
    region_t2 = convex_downset_hull(capacity_t2_sweep(params, steps))
    return region_intersection(region_t1, region_t2)


def optimize_gamma(params: GaussianParams, alpha: float, grid_n: int = 10001) -> float:
    """Brute-force argmax of the cooperative boost h Sigma h^T over the
    admissible cross covariance.

    The search interval is |gamma| <= sqrt((1-alpha) P1 P2); exact value
    ties are broken toward gamma = 0, then toward the lower grid index.
    """
    _check_alpha(alpha)
    if grid_n < 2:
        raise DomainError(f"grid_n must be >= 2, got {grid_n}")
    g_max = math.sqrt((1.0 - alpha) * params.p1 * params.p2)
    if g_max == 0.0:
        return 0.0
    grid = np.linspace(-g_max, g_max, grid_n)
    b, p1, p2 = params.b, params.p1, params.p2
    vals = b * b * (1.0 - alpha) * p1 + 2.0 * b * grid + p2
    best = vals.max()
    ties = np.flatnonzero(vals == best)
    pick = min(ties, key=lambda i: (abs(grid[i]), i))
    return float(grid[pick])


def cauchy_corr_bound_check(cov: np.ndarray) -> tuple[float, float]:
    """Correlation bound through the Gaussian conditional expectation.

    For a zero-mean pair with the given 2x2 PSD covariance, returns
    (lhs, rhs) = (E[X1 X2], sqrt(E[(E[X1*|X2*])^2] E[(X2*)^2])) where the
    starred pair is Gaussian with the same covariance; callers assert
    lhs <= rhs + 1e-12.
    """
    sigma = CovarianceSigma(np.asarray(cov, dtype=np.float64))
    s = sigma.sigma
    lhs = float(s[0, 1])
    if s[1, 1] > 1e-300:
        cond_sq = s[0, 1] * s[0, 1] / s[1, 1]  # E[(E[X1*|X2*])^2]
        rhs = math.sqrt(cond_sq * s[1, 1])
    else:
        rhs = 0.0
    return lhs, rhs


def epi_corner_check(params: GaussianParams, alpha: float) -> tuple[float, float]:
    """Entropy-power lower bound vs the conditional entropy the optimal
    Gaussian scheme actually attains at receiver 2.

    Returns (lower_bound, achieved) in bits above the unit-noise floor.
    ``lower_bound`` is (1/2) log2(1 + b^2 alpha P1); ``achieved`` is
    computed independently from the scheme's joint covariance via a Schur
    complement on (possibly singular) conditioning variables. Requires
    |b| <= 1, since the degraded-observation construction needs a
    residual noise variance 1 - b^2 >= 0.
    """
    if abs(params.b) > 1.0:
        raise DomainError(
            "epi_corner_check requires |b| <= 1 (residual variance 1 - b^2)"
        )
    _check_alpha(alpha)
    p1, p2, b = params.p1, params.p2, params.b
    lower = _half_log2(1.0 + b * b * alpha * p1)
    gamma = _best_gamma(params, alpha)
    var_y2 = b * b * p1 + p2 + 2.0 * b * gamma + 1.0
    cond = np.array([[p2, gamma], [gamma, (1.0 - alpha) * p1]])
    cross = np.array([b * gamma + p2, b * (1.0 - alpha) * p1 + gamma])
    cond_var = float(var_y2 - cross @ np.linalg.pinv(cond, rcond=1e-12) @ cross)
    achieved = _half_log2(max(cond_var, 1e-300))
    return lower, achieved
