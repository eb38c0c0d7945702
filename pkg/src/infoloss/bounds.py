"""Information-theoretic excess-risk bounds for deterministic transformations.

For a joint law of (Y, X) and a transformation Z = T(X), the increase in
Bayes risk from predicting Y out of Z instead of X is controlled by the
mutual-information gap

    delta_I = I(Y; X) - I(Y; Z) = I(Y; X | Z)  >= 0.

Three certificates are implemented, differing in how the loss is controlled:

* bounded loss:     excess <= (sup|loss| / sqrt(2)) sqrt(delta_I)
* subgaussian loss: excess <= sqrt(2 E[sigma^2(Y)] delta_I), where
  loss(y, f*(X)) is sigma^2(y)-subgaussian given T(X) for the X-optimal
  predictor f*; Hoeffding's lemma gives sigma^2(y) = width^2 / 4 from the
  per-label range of loss(y, f*(.)).
* envelope family:  for losses whose optimal-predictor loss is dominated by
  g(Y) with E[g(Y)^2] <= c^2, the gap condition delta_I <= 2 delta^2 / c^2
  certifies excess <= delta for the whole family.

The same machinery yields the two-distribution comparison
|E h(U,V) - E h(U',V')| <= sqrt(2 E[sigma^2(U)] I(U;V)) for independent
(U', V') with the same marginals, checked by ``dv_gap_check``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .discrete import (
    DeterministicMap,
    DiscreteJoint,
    LossMatrix,
    _check_joint,
    apply_map,
    excess_risk,
    mutual_information,
)

__all__ = [
    "BoundReport",
    "SubgaussianProfile",
    "bound_bounded_loss",
    "bound_subgaussian",
    "delta_lossless_bounded",
    "dv_gap_check",
    "family_lossless_check",
    "hoeffding_profile",
    "hoeffding_sigma",
    "information_gap",
    "optimal_loss_envelope",
    "quantizer_sequence_bound",
    "regression_sigma",
]

_HOLDS_TOL = 1e-9


def information_gap(joint: DiscreteJoint) -> float:
    """I(Y; X) - I(Y; Z) for a three-way joint; >= 0 when Z = T(X)."""
    return mutual_information(joint.p_yx) - mutual_information(joint.p_yz)


def hoeffding_sigma(range_width: float) -> float:
    """Subgaussian parameter sigma^2 = width^2 / 4 of a bounded variable."""
    if range_width < 0:
        raise ValueError(f"range width must be >= 0, got {range_width}")
    return range_width * range_width / 4.0


@dataclass(frozen=True)
class SubgaussianProfile:
    """Per-label subgaussian parameters sigma^2(y).

    ``certified`` is True only when the profile was derived from an explicit
    loss via Hoeffding widths; profiles supplied directly by callers are
    accepted as assertions about their loss.
    """

    sigma_sq: np.ndarray
    certified: bool = False

    def __post_init__(self) -> None:
        arr = np.asarray(self.sigma_sq, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("sigma_sq must be a nonempty 1-D array")
        if np.any(arr < 0) or not np.all(np.isfinite(arr)):
            raise ValueError("sigma_sq entries must be finite and >= 0")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "sigma_sq", arr)

    def expected(self, p_y: np.ndarray) -> float:
        if p_y.shape != self.sigma_sq.shape:
            raise ValueError(
                f"alphabet mismatch: profile has {self.sigma_sq.size} labels, "
                f"marginal has {p_y.size}"
            )
        return float(p_y @ self.sigma_sq)


def _optimal_predictions(joint_yx: np.ndarray, loss: LossMatrix) -> np.ndarray:
    """Row of loss-minimizing labels per supported x; -1 where P(x) = 0."""
    posterior_cost = loss.cost.T @ joint_yx  # (y_pred, x)
    best = posterior_cost.argmin(axis=0)
    best[joint_yx.sum(axis=0) == 0] = -1
    return best


def hoeffding_profile(joint_yx, loss: LossMatrix) -> SubgaussianProfile:
    """Certified profile from the ranges of loss(y, f*(.)) over supported x."""
    j = _check_joint(joint_yx, 2, name="joint_yx")
    if j.shape[0] != loss.n_labels:
        raise ValueError(
            f"alphabet mismatch: joint has {j.shape[0]} labels, loss has {loss.n_labels}"
        )
    best = _optimal_predictions(j, loss)
    supported = best >= 0
    if not supported.any():
        raise ValueError("joint has no supported x")
    vals = loss.cost[:, best[supported]]  # (y, supported x)
    widths = vals.max(axis=1) - vals.min(axis=1)
    return SubgaussianProfile(sigma_sq=widths * widths / 4.0, certified=True)


def optimal_loss_envelope(joint_yx, loss: LossMatrix) -> np.ndarray:
    """Envelope g(y) = max over supported x of loss(y, f*(x))."""
    j = _check_joint(joint_yx, 2, name="joint_yx")
    best = _optimal_predictions(j, loss)
    supported = best >= 0
    if not supported.any():
        raise ValueError("joint has no supported x")
    return loss.cost[:, best[supported]].max(axis=1)


@dataclass(frozen=True)
class BoundReport:
    """One excess-risk certificate: the gap, the bound, and the oracle value.

    ``excess`` is NaN when no loss was supplied to evaluate the oracle
    against (then ``holds`` is None).
    """

    delta_I: float
    bound: float
    excess: float
    corollary: str
    holds: bool | None

    def to_dict(self) -> dict:
        return {
            "delta_I": float(self.delta_I),
            "bound": float(self.bound),
            "excess": float(self.excess),
            "corollary": self.corollary,
            "holds": None if self.holds is None else bool(self.holds),
        }


def bound_bounded_loss(
    joint: DiscreteJoint, tmap: DeterministicMap, loss: LossMatrix
) -> BoundReport:
    """Bounded-loss certificate: excess <= (sup|loss|/sqrt 2) sqrt(delta_I)."""
    gap = information_gap(joint)
    bound = loss.sup_norm / math.sqrt(2.0) * math.sqrt(max(gap, 0.0))
    excess = excess_risk(joint, tmap, loss)
    return BoundReport(
        delta_I=gap,
        bound=bound,
        excess=excess,
        corollary="cor1",
        holds=bool(excess <= bound + _HOLDS_TOL),
    )


def bound_subgaussian(
    joint: DiscreteJoint,
    tmap: DeterministicMap,
    profile: SubgaussianProfile,
    loss: LossMatrix | None = None,
) -> BoundReport:
    """Subgaussian certificate: excess <= sqrt(2 E[sigma^2(Y)] delta_I).

    When a loss is supplied the oracle excess is evaluated and compared;
    otherwise the report carries the bound alone.
    """
    gap = information_gap(joint)
    expected = profile.expected(joint.p_y)
    bound = math.sqrt(2.0 * expected * max(gap, 0.0))
    if loss is None:
        return BoundReport(
            delta_I=gap, bound=bound, excess=math.nan, corollary="cor2", holds=None
        )
    excess = excess_risk(joint, tmap, loss)
    return BoundReport(
        delta_I=gap,
        bound=bound,
        excess=excess,
        corollary="cor2",
        holds=bool(excess <= bound + _HOLDS_TOL),
    )


def delta_lossless_bounded(
    joint: DiscreteJoint, tmap: DeterministicMap, delta: float, c: float
) -> bool:
    """True iff delta_I <= 2 delta^2 / c^2.

    When true, every loss with sup norm <= c suffers excess at most delta
    under the coarsening Z = T(X).
    """
    if delta < 0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    if c <= 0:
        raise ValueError(f"c must be > 0, got {c}")
    gap = information_gap(joint)
    return bool(gap <= 2.0 * delta * delta / (c * c))


def family_lossless_check(
    joint: DiscreteJoint,
    tmap: DeterministicMap,
    delta: float,
    c: float,
    envelope,
) -> bool:
    """Envelope-family certificate for losses dominated by g at the optimum.

    ``envelope`` gives g(y) per label; requires E[g(Y)^2] <= c^2.  Returns
    True iff delta_I <= 2 delta^2 / E[g(Y)^2], which certifies excess <=
    delta for every loss whose optimal-predictor envelope has second moment
    at most E[g(Y)^2].  A zero envelope certifies unconditionally (the loss
    vanishes at the optimum, so nothing can be lost).
    """
    if delta < 0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    if c <= 0:
        raise ValueError(f"c must be > 0, got {c}")
    g = np.asarray(envelope, dtype=np.float64)
    p_y = joint.p_y
    if g.shape != p_y.shape:
        raise ValueError(
            f"alphabet mismatch: envelope has {g.size} labels, joint has {p_y.size}"
        )
    if np.any(g < 0):
        raise ValueError("envelope must be nonnegative")
    second_moment = float(p_y @ (g * g))
    if second_moment > c * c + _HOLDS_TOL:
        raise ValueError(
            f"envelope second moment {second_moment} exceeds c^2 = {c * c}"
        )
    if second_moment == 0.0:
        return True
    gap = information_gap(joint)
    return bool(gap <= 2.0 * delta * delta / second_moment)


def regression_sigma(fourth_moment: float, bound_k: float) -> float:
    """Subgaussian parameter 2 E[N^4] + 32 K^4 for squared-error regression.

    Valid when Y = m(X) + N with |m| <= K and the regression function of any
    competing observation also bounded by K; E[N^4] is the fourth noise
    moment.
    """
    if fourth_moment < 0 or bound_k < 0:
        raise ValueError("moments must be >= 0")
    return 2.0 * fourth_moment + 32.0 * bound_k**4


def dv_gap_check(joint_uv, table) -> tuple[float, float]:
    """Check |E h(U,V) - E h(U',V')| <= sqrt(2 E[sigma^2(U)] I(U;V)).

    ``joint_uv`` is the joint pmf of (U, V); (U', V') are independent with
    the same marginals; ``table[u, v]`` gives h.  The per-u subgaussian
    parameter is the Hoeffding value of the row range over supported v.
    Returns (lhs, rhs) and raises if the inequality fails beyond tolerance.
    """
    j = _check_joint(joint_uv, 2, name="joint_uv")
    h = np.asarray(table, dtype=np.float64)
    if h.shape != j.shape:
        raise ValueError(f"table shape {h.shape} does not match joint shape {j.shape}")
    if not np.all(np.isfinite(h)):
        raise ValueError("table: non-finite entries")
    p_u = j.sum(axis=1)
    p_v = j.sum(axis=0)
    lhs = abs(float(np.sum(j * h)) - float(p_u @ h @ p_v))
    support_v = p_v > 0
    rows = h[:, support_v]
    widths = rows.max(axis=1) - rows.min(axis=1)
    expected_sigma = float(p_u @ (widths * widths / 4.0))
    rhs = math.sqrt(2.0 * expected_sigma * max(mutual_information(j), 0.0))
    if lhs > rhs + _HOLDS_TOL:
        raise ValueError(f"variational gap bound violated: lhs={lhs}, rhs={rhs}")
    return lhs, rhs


def quantizer_sequence_bound(
    joint_yx,
    positions,
    widths,
    loss: LossMatrix,
) -> list[BoundReport]:
    """Bounded-loss certificates for a sequence of uniform quantizers of X.

    The X alphabet is embedded on the real line at ``positions``; each width
    w quantizes it by cells [k w, (k+1) w).  Widths must be strictly
    decreasing.  When each width divides the previous one the partitions
    refine, so both the information gap and the oracle excess are
    nonincreasing along the sequence, and both vanish once the cells
    separate the atoms.
    """
    j = _check_joint(joint_yx, 2, name="joint_yx")
    pos = np.asarray(positions, dtype=np.float64)
    if pos.ndim != 1 or pos.size != j.shape[1]:
        raise ValueError(
            f"positions: expected {j.shape[1]} entries, got shape {pos.shape}"
        )
    ws = [float(w) for w in widths]
    if not ws:
        raise ValueError("widths is empty")
    if any(w <= 0 for w in ws):
        raise ValueError("widths must be > 0")
    if any(b >= a for a, b in zip(ws, ws[1:])):
        raise ValueError("widths must be strictly decreasing")
    reports = []
    for w in ws:
        cells = np.floor(pos / w).astype(np.int64)
        _, table = np.unique(cells, return_inverse=True)
        tmap = DeterministicMap(table=table.astype(np.int64), n_z=int(table.max()) + 1)
        joint3 = apply_map(j, tmap)
        reports.append(bound_bounded_loss(joint3, tmap, loss))
    return reports
