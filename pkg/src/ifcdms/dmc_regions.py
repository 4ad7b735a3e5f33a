"""Inner, outer, and exact rate regions for discrete channels, computed by
optimizing over auxiliary-variable factorizations.

Three families of corner points are sampled:

* binning corners (auxiliary V against the known-interference state),
  giving the achievable inner region;
* superposition corners from chains p(u, x2) p(x1|u), giving the region
  that is exact under degraded cross links;
* pentagon bounds from the same chains, whose convexified union is an
  inner approximation of the outer region (and is labeled as such).

``verify_sandwich`` checks the containment relations between the sampled
regions numerically. All sampling is seed-deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import optim
from .dmc_channel import IFCChannel, check_type_c, Feasible
from .errors import BudgetExceededError, DistributionError, ShapeError
from .info_core import LN2, JointDistribution, grouped_conditional_mi
from .region_geometry import (
    CornerCurve,
    RatePair,
    RateRegion,
    convex_downset_hull,
    violations,
)

_ROW_TOL = 1e-12


def _check_rows(arr: np.ndarray, what: str):
    if not np.all(np.isfinite(arr)) or arr.min() < -_ROW_TOL:
        raise DistributionError(f"{what}: entries must be finite and >= 0")
    sums = arr.reshape(-1, arr.shape[-1]).sum(axis=1)
    worst = float(np.abs(sums - 1.0).max())
    if worst > _ROW_TOL:
        raise DistributionError(f"{what}: row mass off by {worst:.3e}")


@dataclass(frozen=True)
class AuxChain:
    """Superposition chain: joint p(u, x2) with X1 drawn from p(x1 | u)."""

    p_ux2: np.ndarray  # (n_u, nx2), sums to 1
    p_x1_given_u: np.ndarray  # (n_u, nx1), row-stochastic

    def __post_init__(self):
        p = np.asarray(self.p_ux2, dtype=np.float64)
        w = np.asarray(self.p_x1_given_u, dtype=np.float64)
        if p.ndim != 2 or w.ndim != 2 or p.shape[0] != w.shape[0]:
            raise ShapeError("p_ux2 and p_x1_given_u must share the U axis")
        if not np.all(np.isfinite(p)) or p.min() < -_ROW_TOL:
            raise DistributionError("p_ux2 entries must be finite and >= 0")
        if abs(float(p.sum()) - 1.0) > _ROW_TOL:
            raise DistributionError("p_ux2 must sum to 1")
        _check_rows(w, "p_x1_given_u")
        for a in (p, w):
            a.flags.writeable = False
        object.__setattr__(self, "p_ux2", p)
        object.__setattr__(self, "p_x1_given_u", w)

    @property
    def n_u(self) -> int:
        return self.p_ux2.shape[0]


@dataclass(frozen=True)
class GPChain:
    """Binning chain: p(u, x2) p(v | u, x2) p(x1 | v, u, x2)."""

    p_ux2: np.ndarray  # (n_u, nx2)
    p_v_given_ux2: np.ndarray  # (n_u, nx2, n_v)
    p_x1_given_vux2: np.ndarray  # (n_v, n_u, nx2, nx1)

    def __post_init__(self):
        p = np.asarray(self.p_ux2, dtype=np.float64)
        pv = np.asarray(self.p_v_given_ux2, dtype=np.float64)
        px = np.asarray(self.p_x1_given_vux2, dtype=np.float64)
        if p.ndim != 2 or pv.ndim != 3 or px.ndim != 4:
            raise ShapeError("GPChain arrays have wrong arity")
        n_u, nx2 = p.shape
        n_v = pv.shape[2]
        if pv.shape[:2] != (n_u, nx2) or px.shape[:3] != (n_v, n_u, nx2):
            raise ShapeError("GPChain alphabets are inconsistent")
        if not np.all(np.isfinite(p)) or p.min() < -_ROW_TOL:
            raise DistributionError("p_ux2 entries must be finite and >= 0")
        if abs(float(p.sum()) - 1.0) > _ROW_TOL:
            raise DistributionError("p_ux2 must sum to 1")
        _check_rows(pv, "p_v_given_ux2")
        _check_rows(px, "p_x1_given_vux2")
        for a in (p, pv, px):
            a.flags.writeable = False
        object.__setattr__(self, "p_ux2", p)
        object.__setattr__(self, "p_v_given_ux2", pv)
        object.__setattr__(self, "p_x1_given_vux2", px)

    @property
    def n_u(self) -> int:
        return self.p_ux2.shape[0]

    @property
    def n_v(self) -> int:
        return self.p_v_given_ux2.shape[2]


def _match_chain(ch: IFCChannel, chain) -> None:
    if chain.p_ux2.shape[1] != ch.nx2:
        raise ShapeError(
            f"chain X2 alphabet {chain.p_ux2.shape[1]} != channel {ch.nx2}"
        )
    nx1 = (
        chain.p_x1_given_u.shape[1]
        if isinstance(chain, AuxChain)
        else chain.p_x1_given_vux2.shape[3]
    )
    if nx1 != ch.nx1:
        raise ShapeError(f"chain X1 alphabet {nx1} != channel {ch.nx1}")


def aux_chain_joint(ch: IFCChannel, chain: AuxChain) -> JointDistribution:
    """Five-axis joint (U, X1, X2, Y1, Y2) induced by a superposition chain."""
    _match_chain(ch, chain)
    t = np.einsum(
        "uj,ui,ijkl->uijkl", chain.p_ux2, chain.p_x1_given_u, ch.tensor
    )
    return JointDistribution.from_tensor(t)


def gp_chain_joint(ch: IFCChannel, chain: GPChain) -> JointDistribution:
    """Six-axis joint (U, V, X1, X2, Y1, Y2) induced by a binning chain."""
    _match_chain(ch, chain)
    t = np.einsum(
        "uj,ujv,vuji,ijkl->uvijkl",
        chain.p_ux2,
        chain.p_v_given_ux2,
        chain.p_x1_given_vux2,
        ch.tensor,
    )
    return JointDistribution.from_tensor(t)


def rstar_corner(ch: IFCChannel, chain: AuxChain) -> RatePair:
    """Corner (I(X1;Y1|U,X2), I(U,X2;Y2)) of a superposition chain, in bits."""
    joint = aux_chain_joint(ch, chain)
    r1 = grouped_conditional_mi(joint, [1], [3], [0, 2]).bits
    r2 = grouped_conditional_mi(joint, [0, 2], [4]).bits
    return RatePair(r1, r2)


def router_corner(
    ch: IFCChannel, chain: AuxChain
) -> tuple[float, float, float]:
    """Pentagon bounds (r1_max, r2_max, sum_max) of a superposition chain.

    The chain contributes the region {r1 <= r1_max, r2 <= r2_max,
    r1 + r2 <= sum_max} to the sampled outer envelope.
    """
    joint = aux_chain_joint(ch, chain)
    r1_max = grouped_conditional_mi(joint, [1], [3], [2]).bits
    r2_max = grouped_conditional_mi(joint, [0, 2], [4]).bits
    sum_max = grouped_conditional_mi(joint, [1], [3], [0, 2]).bits + r2_max
    return r1_max, r2_max, sum_max


def rin_corner(ch: IFCChannel, chain: GPChain) -> RatePair:
    """Binning corner (max(0, I(V;Y1) - I(V;U,X2)), I(U,X2;Y2)) in bits.

    A negative raw first coordinate is a valid but useless operating
    point; it is clamped to 0 and flagged on the returned pair.
    """
    joint = gp_chain_joint(ch, chain)
    gain = grouped_conditional_mi(joint, [1], [4]).bits
    penalty = grouped_conditional_mi(joint, [1], [0, 3]).bits
    r2 = grouped_conditional_mi(joint, [0, 3], [5]).bits
    raw = gain - penalty
    return RatePair(max(0.0, raw), r2, clamped=raw < 0.0)


# ---------------------------------------------------------------------------
# batched corner evaluation
# ---------------------------------------------------------------------------


def _batch_entropy(joint: np.ndarray, keep: tuple[int, ...]) -> np.ndarray:
    """Entropy (nats) of the marginal over ``keep`` trailing axes, per batch row."""
    drop = tuple(ax + 1 for ax in range(joint.ndim - 1) if ax not in keep)
    p = joint.sum(axis=drop) if drop else joint
    p = p.reshape(p.shape[0], -1)
    logs = np.log(np.maximum(p, 1e-300))
    return -np.einsum("mk,mk->m", p, np.where(p > 0.0, logs, 0.0))


def _aux_corners_batch(
    ch: IFCChannel, p_ux2: np.ndarray, w: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(rstar_r1, r2, r1_max, sum_max) in bits for a batch of chains."""
    joint = np.einsum("muj,mui,ijkl->muijkl", p_ux2, w, ch.tensor)
    # axes after the batch: u=0, x1=1, x2=2, y1=3, y2=4
    h_ux2 = _batch_entropy(joint, (0, 2))
    r1 = (
        _batch_entropy(joint, (1, 0, 2))
        + _batch_entropy(joint, (3, 0, 2))
        - _batch_entropy(joint, (1, 3, 0, 2))
        - h_ux2
    )
    r2 = h_ux2 + _batch_entropy(joint, (4,)) - _batch_entropy(joint, (0, 2, 4))
    r1_max = (
        _batch_entropy(joint, (1, 2))
        + _batch_entropy(joint, (3, 2))
        - _batch_entropy(joint, (1, 3, 2))
        - _batch_entropy(joint, (2,))
    )
    scale = 1.0 / LN2
    return r1 * scale, r2 * scale, r1_max * scale, (r1 + r2) * scale


def _gp_corners_batch(
    ch: IFCChannel, p_ux2: np.ndarray, pv: np.ndarray, px: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(r1 clamped, r2, clamped mask) in bits for a batch of binning chains."""
    joint = np.einsum(
        "muj,mujv,mvuji,ijkl->muvijkl", p_ux2, pv, px, ch.tensor
    )
    # axes after the batch: u=0, v=1, x1=2, x2=3, y1=4, y2=5
    h_v = _batch_entropy(joint, (1,))
    h_ux2 = _batch_entropy(joint, (0, 3))
    gain = h_v + _batch_entropy(joint, (4,)) - _batch_entropy(joint, (1, 4))
    penalty = h_v + h_ux2 - _batch_entropy(joint, (1, 0, 3))
    r2 = h_ux2 + _batch_entropy(joint, (5,)) - _batch_entropy(joint, (0, 3, 5))
    raw = (gain - penalty) / LN2
    clamped = raw < 0.0
    return np.maximum(raw, 0.0), r2 / LN2, clamped


@dataclass(frozen=True)
class GridConfig:
    """Sampling budget for chain enumeration and refinement."""

    step: int = 4  # simplex grid denominator (coarsened to fit the budget)
    restarts: int = 64
    n_targets: int = 17
    ascent_iters: int = 40
    seed: int = 0
    max_chains: int = 20000
    chunk: int = 512

    def __post_init__(self):
        if self.step < 1 or self.restarts < 0 or self.max_chains < 1:
            raise ShapeError("invalid GridConfig")


def _guard_alphabets(ch: IFCChannel, limit: int, what: str):
    worst = max(ch.nx1, ch.nx2, ch.ny1, ch.ny2)
    if worst > limit:
        raise BudgetExceededError(
            f"{what} supports alphabets up to {limit}, channel has {worst}"
        )


def _aux_blocks(u_card: int, ch: IFCChannel) -> list[int]:
    return [u_card * ch.nx2] + [ch.nx1] * u_card


def _decode_aux(x: np.ndarray, u_card: int, ch: IFCChannel):
    m = x.shape[0]
    p = x[:, : u_card * ch.nx2].reshape(m, u_card, ch.nx2)
    w = x[:, u_card * ch.nx2 :].reshape(m, u_card, ch.nx1)
    return p, w


def _sample_aux_chains(
    ch: IFCChannel, u_card: int, grid: GridConfig, rng: np.random.Generator
) -> np.ndarray:
    """Grid plus random chains as flat rows; grid order is deterministic."""
    blocks = _aux_blocks(u_card, ch)
    parts = []
    step = optim.choose_grid_step(blocks, grid.step, grid.max_chains)
    if step is not None:
        parts.append(optim.product_grid(blocks, step))
    if grid.restarts > 0:
        parts.append(optim.sample_blocks(rng, grid.restarts, blocks))
    if not parts:
        raise BudgetExceededError("no chains fit the sampling budget")
    return np.concatenate(parts, axis=0)


def _eval_aux_chunked(ch: IFCChannel, x: np.ndarray, u_card: int, chunk: int):
    outs = [[], [], [], []]
    for lo in range(0, x.shape[0], chunk):
        p, w = _decode_aux(x[lo : lo + chunk], u_card, ch)
        for acc, arr in zip(outs, _aux_corners_batch(ch, p, w)):
            acc.append(arr)
    return tuple(np.concatenate(acc) for acc in outs)


def _ascend_r2(
    ch: IFCChannel,
    u_card: int,
    x0: np.ndarray,
    targets: np.ndarray,
    grid: GridConfig,
):
    """Blockwise vertex-mix ascent of r2 subject to r1 >= target."""
    blocks = _aux_blocks(u_card, ch)
    spans = []
    lo = 0
    for d in blocks:
        spans.append((lo, lo + d))
        lo += d
    dim = lo

    def eval_rows(x):
        p, w = _decode_aux(x, u_card, ch)
        r1, r2, _, _ = _aux_corners_batch(ch, p, w)
        return r1, r2

    cur = x0.copy()
    cur_r1, cur_r2 = eval_rows(cur)
    eta = np.full(len(cur), 0.5)
    for _ in range(grid.ascent_iters):
        live = eta >= 1e-3
        if not live.any():
            break
        cand = np.repeat(cur[:, None, :], dim, axis=1)
        for d in range(dim):
            blo, bhi = next(s for s in spans if s[0] <= d < s[1])
            cand[:, d, blo:bhi] *= 1.0 - eta[:, None]
            cand[:, d, d] += eta
        flat = cand.reshape(-1, dim)
        r1c, r2c = eval_rows(flat)
        r1c = r1c.reshape(-1, dim)
        r2c = r2c.reshape(-1, dim)
        ok = (r1c >= targets[:, None] - 1e-12) & (r2c > cur_r2[:, None] + 1e-15)
        ok &= live[:, None]
        gains = np.where(ok, r2c, -np.inf)
        best = np.argmax(gains, axis=1)
        rows = np.flatnonzero(ok.any(axis=1))
        stuck = np.flatnonzero(live & ~ok.any(axis=1))
        if rows.size:
            cur[rows] = cand[rows, best[rows]]
            cur_r2[rows] = r2c[rows, best[rows]]
            cur_r1[rows] = r1c[rows, best[rows]]
        eta[stuck] *= 0.5
    return cur_r1, cur_r2


def rstar_region(
    ch: IFCChannel, u_card: int | None = None, grid: GridConfig = GridConfig()
) -> CornerCurve:
    """Sampled superposition corners: grid chains, random restarts, and
    targeted coordinate-ascent refinement of r2 at swept r1 levels.

    Returns the raw corner collection; Pareto reduction and hulls are the
    caller's choice. Alphabets above 4 are rejected up front.
    """
    _guard_alphabets(ch, 4, "rstar_region")
    if u_card is None:
        u_card = ch.nx1 * ch.nx2 + 1
    if u_card < 1:
        raise ShapeError(f"u_card must be >= 1, got {u_card}")
    rng = np.random.default_rng(grid.seed)
    x = _sample_aux_chains(ch, u_card, grid, rng)
    r1, r2, _, _ = _eval_aux_chunked(ch, x, u_card, grid.chunk)
    all_r1 = [r1]
    all_r2 = [r2]
    if grid.n_targets > 0 and len(x):
        targets = np.linspace(0.0, float(r1.max()), grid.n_targets)
        starts = np.empty((grid.n_targets, x.shape[1]))
        keep = []
        for t_i, target in enumerate(targets):
            feas = np.flatnonzero(r1 >= target - 1e-12)
            if feas.size == 0:
                continue
            best = feas[np.argmax(r2[feas])]
            starts[len(keep)] = x[best]
            keep.append(target)
        if keep:
            a_r1, a_r2 = _ascend_r2(
                ch, u_card, starts[: len(keep)], np.array(keep), grid
            )
            all_r1.append(a_r1)
            all_r2.append(a_r2)
    r1 = np.concatenate(all_r1)
    r2 = np.concatenate(all_r2)
    r1 = np.maximum(r1, 0.0)  # guard against -1e-17 float noise
    r2 = np.maximum(r2, 0.0)
    return CornerCurve(np.arange(r1.size, dtype=float), r1, r2)


def _pentagon_vertices(
    r1_max: np.ndarray, r2_max: np.ndarray, sum_max: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Pareto vertices of {r1 <= r1_max, r2 <= r2_max, r1 + r2 <= sum_max}."""
    s_eff = np.minimum(sum_max, r1_max + r2_max)
    ax = np.clip(s_eff - r2_max, 0.0, r1_max)
    ay = np.minimum(r2_max, s_eff)
    bx = np.minimum(r1_max, s_eff)
    by = np.clip(s_eff - r1_max, 0.0, r2_max)
    return np.concatenate([ax, bx]), np.concatenate([ay, by])


def ro_envelope(
    ch: IFCChannel,
    u_card: int | None = None,
    grid: GridConfig = GridConfig(),
    extra_pentagons: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None,
) -> tuple[RateRegion, CornerCurve]:
    """Sampled outer-region envelope: union of chain pentagons, convexified.

    This is an inner approximation of the true outer region (only sampled
    chains contribute), which is the safe direction for the containment
    checks this module runs. Returns the envelope and the pentagon vertex
    cloud it was built from.
    """
    _guard_alphabets(ch, 4, "ro_envelope")
    if u_card is None:
        u_card = ch.nx1 * ch.nx2 + 1
    rng = np.random.default_rng(grid.seed)
    x = _sample_aux_chains(ch, u_card, grid, rng)
    _, r2m, r1m, summ = _eval_aux_chunked(ch, x, u_card, grid.chunk)
    if extra_pentagons is not None:
        e1, e2, es = extra_pentagons
        r1m = np.concatenate([r1m, e1])
        r2m = np.concatenate([r2m, e2])
        summ = np.concatenate([summ, es])
    vx, vy = _pentagon_vertices(r1m, r2m, summ)
    vx = np.maximum(vx, 0.0)
    vy = np.maximum(vy, 0.0)
    cloud = CornerCurve(np.arange(vx.size, dtype=float), vx, vy)
    return convex_downset_hull(cloud), cloud


def _gp_blocks(u_card: int, v_card: int, ch: IFCChannel) -> list[int]:
    return (
        [u_card * ch.nx2]
        + [v_card] * (u_card * ch.nx2)
        + [ch.nx1] * (v_card * u_card * ch.nx2)
    )


def _decode_gp(x: np.ndarray, u_card: int, v_card: int, ch: IFCChannel):
    m = x.shape[0]
    n0 = u_card * ch.nx2
    n1 = n0 * v_card
    p = x[:, :n0].reshape(m, u_card, ch.nx2)
    pv = x[:, n0 : n0 + n1].reshape(m, u_card, ch.nx2, v_card)
    px = x[:, n0 + n1 :].reshape(m, v_card, u_card, ch.nx2, ch.nx1)
    return p, pv, px


def sampled_rin_corners(
    ch: IFCChannel,
    u_card: int | None = None,
    v_card: int | None = None,
    grid: GridConfig = GridConfig(),
) -> tuple[CornerCurve, int, tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Random binning-chain corners, their clamp count, and the pentagon
    triples of the chains' folded superposition counterparts.

    The fold merges (U, X2) into one auxiliary so every sampled binning
    corner is dominated by its own pentagon; feeding the triples into
    :func:`ro_envelope` makes the sampled sandwich test self-consistent.
    """
    _guard_alphabets(ch, 4, "sampled_rin_corners")
    if u_card is None:
        u_card = ch.nx1 * ch.nx2 + 1
    if v_card is None:
        v_card = u_card * ch.nx1 + 1
    rng = np.random.default_rng(grid.seed + 1)
    n = max(grid.restarts, 1)
    blocks = _gp_blocks(u_card, v_card, ch)
    # mix concentrations: sharp draws land near deterministic chains,
    # which is where nontrivial binning corners live
    thirds = [n - 2 * (n // 3), n // 3, n // 3]
    x = np.concatenate(
        [
            optim.sample_blocks(rng, k, blocks, alpha)
            for k, alpha in zip(thirds, (1.0, 0.3, 0.1))
            if k > 0
        ],
        axis=0,
    )
    r1_parts, r2_parts, cl_parts = [], [], []
    fold_p, fold_w = [], []
    for lo in range(0, n, grid.chunk):
        p, pv, px = _decode_gp(x[lo : lo + grid.chunk], u_card, v_card, ch)
        r1, r2, cl = _gp_corners_batch(ch, p, pv, px)
        r1_parts.append(r1)
        r2_parts.append(r2)
        cl_parts.append(cl)
        # fold (U, X2) into one auxiliary with the induced p(x1 | u, x2)
        m = p.shape[0]
        w_ux2 = np.einsum("mujv,mvuji->muji", pv, px)  # (m, u, x2, x1)
        pf = np.zeros((m, u_card, ch.nx2, ch.nx2))
        idx = np.arange(ch.nx2)
        pf[:, :, idx, idx] = p
        fold_p.append(pf.reshape(m, u_card * ch.nx2, ch.nx2))
        fold_w.append(w_ux2.reshape(m, u_card * ch.nx2, ch.nx1))
    r1 = np.concatenate(r1_parts)
    r2 = np.concatenate(r2_parts)
    clamped = int(np.concatenate(cl_parts).sum())
    pf = np.concatenate(fold_p)
    wf = np.concatenate(fold_w)
    f_r1, f_r2, f_r1m, f_sum = _aux_corners_batch(ch, pf, wf)
    del f_r1
    curve = CornerCurve(
        np.arange(r1.size, dtype=float), np.maximum(r1, 0.0), np.maximum(r2, 0.0)
    )
    return curve, clamped, (f_r1m, f_r2, f_sum)


@dataclass(frozen=True)
class SandwichReport:
    """Numerical containment summary of the sampled regions."""

    n_gp_chains: int
    n_aux_chains: int
    rin_max_violation: float
    rin_witness: tuple[float, float]
    rin_clamped: int
    type_c_feasible: bool
    rstar_max_violation: float | None
    envelope: RateRegion
    rin_corners: CornerCurve
    rstar_corners: CornerCurve | None

    @property
    def ok(self) -> bool:
        within = self.rin_max_violation <= 1e-6
        if self.rstar_max_violation is not None:
            within = within and self.rstar_max_violation <= 1e-6
        return within

    def to_dict(self) -> dict:
        return {
            "n_gp_chains": self.n_gp_chains,
            "n_aux_chains": self.n_aux_chains,
            "rin_max_violation": self.rin_max_violation,
            "rin_witness": list(self.rin_witness),
            "rin_clamped": self.rin_clamped,
            "type_c_feasible": self.type_c_feasible,
            "rstar_max_violation": self.rstar_max_violation,
            "envelope_vertices": self.envelope.n_vertices(),
            "ok": self.ok,
        }


def verify_sandwich(
    ch: IFCChannel,
    u_card: int | None = None,
    v_card: int | None = None,
    grid: GridConfig = GridConfig(),
) -> SandwichReport:
    """Check that sampled inner-region corners sit inside the sampled
    outer envelope, and (for degraded cross links) that the exact-region
    corners do too.

    The envelope includes the folded counterpart of every sampled binning
    chain, so the containments hold up to floating error whenever the
    theory says they must; a positive violation therefore indicates a
    computation bug rather than sampling slack.
    """
    _guard_alphabets(ch, 3, "verify_sandwich")
    if u_card is None:
        u_card = ch.nx1 * ch.nx2 + 1
    if v_card is None:
        v_card = u_card * ch.nx1 + 1
    rin, clamped, fold_triples = sampled_rin_corners(ch, u_card, v_card, grid)
    envelope, cloud = ro_envelope(
        ch, u_card, grid, extra_pentagons=fold_triples
    )
    v_rin = violations(envelope, rin.r1, rin.r2)
    worst = int(np.argmax(v_rin))

    verdict = check_type_c(ch, "12")
    rstar_violation = None
    rstar_curve = None
    if isinstance(verdict, Feasible):
        # corners from the same unrefined chain sample that built the
        # envelope, so each corner's own pentagon is present
        rstar_curve = rstar_region(ch, u_card, replace(grid, n_targets=0))
        v_star = violations(envelope, rstar_curve.r1, rstar_curve.r2)
        rstar_violation = float(v_star.max())
    return SandwichReport(
        n_gp_chains=len(rin),
        n_aux_chains=len(cloud) // 2,
        rin_max_violation=float(v_rin[worst]),
        rin_witness=(float(rin.r1[worst]), float(rin.r2[worst])),
        rin_clamped=clamped,
        type_c_feasible=isinstance(verdict, Feasible),
        rstar_max_violation=rstar_violation,
        envelope=envelope,
        rin_corners=rin,
        rstar_corners=rstar_curve,
    )
