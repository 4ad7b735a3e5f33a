"""Finite-alphabet probability distributions and information measures.

All quantities are computed internally in nats with the 0*log(0) = 0
convention; user-facing rates are bits, obtained through
:class:`InfoValue`. Every operation is a pure function of immutable
inputs and safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DistributionError, InternalConsistencyError, ShapeError

LN2 = math.log(2.0)

#: Normalization slack accepted before a distribution is rejected.
NORMALIZATION_TOL = 1e-12

#: Mutual informations above this (negative) floor are clamped to zero;
#: anything below it indicates a genuine computation bug.
MI_CLAMP_FLOOR = -1e-12


def _as_prob_array(values: Iterable[float], what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise DistributionError(f"{what}: non-finite probability entries")
    if np.any(arr < -NORMALIZATION_TOL):
        raise DistributionError(
            f"{what}: negative probability entry {arr.min():.3e}"
        )
    arr = np.maximum(arr, 0.0)
    total = float(arr.sum())
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise DistributionError(
            f"{what}: entries sum to {total!r}, outside tolerance "
            f"{NORMALIZATION_TOL} of 1"
        )
    if total != 1.0 and total > 0.0:
        arr = arr / total
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class JointDistribution:
    """Probability tensor over finite alphabets.

    ``probs`` is stored flat in row-major order (last axis fastest) and is
    validated on construction: non-negative entries, total mass 1 within
    ``NORMALIZATION_TOL`` (then renormalized exactly), length equal to the
    product of ``shape``.
    """

    shape: tuple[int, ...]
    probs: np.ndarray

    def __post_init__(self):
        shape = tuple(int(s) for s in self.shape)
        if len(shape) == 0 or any(s < 1 for s in shape):
            raise ShapeError(f"invalid shape {shape}")
        arr = _as_prob_array(self.probs, "JointDistribution")
        expected = int(np.prod(shape))
        if arr.size != expected:
            raise ShapeError(
                f"probs has length {arr.size}, shape {shape} needs {expected}"
            )
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "probs", arr)

    @classmethod
    def from_tensor(cls, tensor: np.ndarray) -> "JointDistribution":
        t = np.asarray(tensor, dtype=np.float64)
        return cls(t.shape, t.reshape(-1))

    @property
    def ndim(self) -> int:
        return len(self.shape)

    @property
    def tensor(self) -> np.ndarray:
        return self.probs.reshape(self.shape)

    def marginal(self, keep_axes: Sequence[int]) -> "JointDistribution":
        """Marginal distribution over ``keep_axes`` (order preserved)."""
        keep = list(keep_axes)
        if len(set(keep)) != len(keep) or any(
            a < 0 or a >= self.ndim for a in keep
        ):
            raise ShapeError(f"invalid axes {keep} for shape {self.shape}")
        drop = tuple(a for a in range(self.ndim) if a not in keep)
        t = self.tensor.sum(axis=drop) if drop else self.tensor
        if len(keep) > 1:
            # after summing, surviving axes sit in ascending original order;
            # permute them into the requested order
            ranks = np.argsort(np.argsort(keep))
            t = np.transpose(t, axes=ranks)
        return JointDistribution.from_tensor(t)


@dataclass(frozen=True)
class InfoValue:
    """An entropy or mutual information, stored in nats."""

    nats: float

    @property
    def bits(self) -> float:
        return self.nats / LN2

    def __float__(self) -> float:
        return self.nats


def _clamped_info(nats: float, what: str) -> InfoValue:
    if nats < MI_CLAMP_FLOOR:
        raise InternalConsistencyError(
            f"{what} evaluated to {nats!r} nats, below the clamp floor"
        )
    return InfoValue(max(nats, 0.0))


def entropy_nats(tensor: np.ndarray) -> float:
    """Shannon entropy of a (not necessarily normalized-checked) array, in nats."""
    p = np.asarray(tensor, dtype=np.float64).reshape(-1)
    mask = p > 0.0
    pm = p[mask]
    return float(-(pm * np.log(pm)).sum())


def entropy(dist: JointDistribution) -> InfoValue:
    """Shannon entropy H of the whole joint, with 0*log(0) = 0."""
    return InfoValue(entropy_nats(dist.probs))


def grouped_conditional_mi(
    dist: JointDistribution,
    axes_a: Sequence[int],
    axes_b: Sequence[int],
    axes_c: Sequence[int] = (),
) -> InfoValue:
    """I(A; B | C) where A, B, C are disjoint groups of axes of ``dist``.

    Computed as H(A,C) + H(B,C) - H(A,B,C) - H(C). Empty A or B gives an
    exact zero. Values in [-1e-12, 0) are clamped to 0; smaller values
    raise :class:`InternalConsistencyError`.
    """
    a, b, c = list(axes_a), list(axes_b), list(axes_c)
    groups = a + b + c
    if len(set(groups)) != len(groups):
        raise ShapeError(f"axis groups overlap: A={a} B={b} C={c}")
    if any(ax < 0 or ax >= dist.ndim for ax in groups):
        raise ShapeError(f"axis out of range for shape {dist.shape}")
    t = dist.tensor

    def h(axes: list[int]) -> float:
        if not axes:
            return 0.0
        drop = tuple(ax for ax in range(dist.ndim) if ax not in axes)
        return entropy_nats(t.sum(axis=drop) if drop else t)

    nats = h(a + c) + h(b + c) - h(a + b + c) - h(c)
    return _clamped_info(nats, "conditional mutual information")


def mutual_information(joint: JointDistribution) -> InfoValue:
    """I(A; B) for a two-axis joint, via H(A) + H(B) - H(A,B)."""
    if joint.ndim != 2:
        raise ShapeError(f"mutual_information needs 2 axes, got {joint.ndim}")
    return grouped_conditional_mi(joint, [0], [1])


def conditional_mutual_information(joint: JointDistribution) -> InfoValue:
    """I(A; B | C) for a three-axis joint, conditioning on the last axis."""
    if joint.ndim != 3:
        raise ShapeError(
            f"conditional_mutual_information needs 3 axes, got {joint.ndim}"
        )
    return grouped_conditional_mi(joint, [0], [1], [2])


def csiszar_sum_check(
    joint: JointDistribution, n: int
) -> tuple[InfoValue, InfoValue]:
    """Both sides of the Csiszar sum identity for a (2n+1)-axis joint.

    Axes 0..n-1 are the first output block, axes n..2n-1 the second, and
    axis 2n the side variable T. Returns

        lhs = sum_i I(B_{i+1..n}; A_i | A_{1..i-1}, T)
        rhs = sum_i I(A_{1..i-1}; B_i | B_{i+1..n}, T)

    computed term by term from marginals of the same joint; callers assert
    ``|lhs - rhs| <= 1e-12`` (in nats).
    """
    if n < 1:
        raise ShapeError(f"n must be >= 1, got {n}")
    if joint.ndim != 2 * n + 1:
        raise ShapeError(
            f"joint has {joint.ndim} axes, expected 2n+1 = {2 * n + 1}"
        )
    a_axes = list(range(n))
    b_axes = list(range(n, 2 * n))
    t_axis = [2 * n]
    lhs = 0.0
    rhs = 0.0
    for i in range(1, n + 1):
        lhs += grouped_conditional_mi(
            joint, b_axes[i : n], [a_axes[i - 1]], a_axes[: i - 1] + t_axis
        ).nats
        rhs += grouped_conditional_mi(
            joint, a_axes[: i - 1], [b_axes[i - 1]], b_axes[i : n] + t_axis
        ).nats
    return InfoValue(lhs), InfoValue(rhs)
