"""Partition-based conditional independence test on continuous data.

Given an i.i.d. sample of (X, Y, Z) with X in R^d, Y real, and Z in R^d',
the test scales every coordinate to [0, 1], partitions each of the three
spaces into axis-aligned cubes of common side h, and compares the empirical
cell masses of the joint against the product predicted by conditional
independence of Y and X given Z:

    L_n = sum_{A,B,C} | P_n(A,B,C) - P_n(A,C) P_n(B,C) / P_n(C) |

where A, B, C range over the X, Y, Z cells and empty Z-cells contribute
nothing.  Rejection compares L_n against the deterministic threshold

    t_n = c1 ( sqrt(m m' m'' / n) + sqrt(m' m'' / n)
             + sqrt(m m'' / n)   + sqrt(m'' / n) ) + (log n) h

with m, m', m'' the total cube counts of the three unit hypercubes.  Under
conditional independence the rejection probability is at most
4 exp(-(c1^2/2 - log 2) m'') for samples large enough, provided
c1 > sqrt(2 log 2); under dependence L_n stays bounded away from zero while
t_n -> 0, so the test eventually rejects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "C1_MIN",
    "CubicPartition",
    "Dataset",
    "JointHistogram",
    "ScalingMap",
    "TestConfig",
    "TestOutcome",
    "build_histogram",
    "h_schedule",
    "l_statistic",
    "run_test",
    "scale_unit",
    "threshold",
    "type1_bound",
]

# Smallest admissible multiplier for the sampling terms of the threshold.
C1_MIN = math.sqrt(2.0 * math.log(2.0))

_MAX_TOTAL_CELLS = 2**62  # flat cell ids must fit in int64


@dataclass(frozen=True)
class Dataset:
    """Sample of n rows (x_i, y_i, z_i), x in R^d, y real, z in R^d'."""

    x: np.ndarray
    y: np.ndarray
    z: np.ndarray

    def __post_init__(self) -> None:
        x = np.atleast_2d(np.asarray(self.x, dtype=np.float64))
        y = np.asarray(self.y, dtype=np.float64)
        z = np.asarray(self.z, dtype=np.float64)
        if z.ndim == 1:
            z = z[:, None]
        if y.ndim != 1:
            raise ValueError(f"y: expected a 1-D array, got shape {y.shape}")
        n = y.shape[0]
        if n < 1:
            raise ValueError("dataset is empty")
        if x.shape[0] != n or z.shape[0] != n:
            raise ValueError(
                f"row mismatch: x has {x.shape[0]}, y has {n}, z has {z.shape[0]}"
            )
        if x.shape[1] < 1:
            raise ValueError("x must have at least one coordinate")
        for name, arr in (("x", x), ("y", y), ("z", z)):
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"{name}: non-finite values")
            arr = arr.copy()
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def n(self) -> int:
        return self.y.shape[0]

    @property
    def d(self) -> int:
        return self.x.shape[1]

    @property
    def d_prime(self) -> int:
        return self.z.shape[1]

    def columns(self) -> np.ndarray:
        """All coordinates as one (n, d + 1 + d') matrix, ordered x, y, z."""
        return np.hstack([self.x, self.y[:, None], self.z])


@dataclass(frozen=True)
class ScalingMap:
    """Per-coordinate affine ranges used to map data onto the unit cube."""

    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self) -> None:
        lo = np.asarray(self.lo, dtype=np.float64)
        hi = np.asarray(self.hi, dtype=np.float64)
        if lo.shape != hi.shape or lo.ndim != 1:
            raise ValueError("lo/hi must be 1-D arrays of equal length")
        if np.any(hi < lo):
            raise ValueError("hi must be >= lo coordinate-wise")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def transform(self, cols: np.ndarray) -> np.ndarray:
        """Apply min-max scaling; constant coordinates map to 0.5."""
        if cols.shape[1] != self.lo.shape[0]:
            raise ValueError(
                f"column mismatch: data has {cols.shape[1]}, map has {self.lo.shape[0]}"
            )
        span = self.hi - self.lo
        out = np.empty_like(cols)
        const = span == 0
        out[:, const] = 0.5
        live = ~const
        out[:, live] = (cols[:, live] - self.lo[live]) / span[live]
        return out


def scale_unit(data: Dataset) -> tuple[Dataset, ScalingMap]:
    """Min-max scale every coordinate of the sample onto [0, 1]."""
    cols = data.columns()
    smap = ScalingMap(lo=cols.min(axis=0), hi=cols.max(axis=0))
    scaled = smap.transform(cols)
    d = data.d
    return (
        Dataset(x=scaled[:, :d], y=scaled[:, d], z=scaled[:, d + 1 :]),
        smap,
    )


def h_schedule(n: int, d: int, d_prime: int, delta: float) -> float:
    """Bandwidth h = n^(-delta) for an admissible exponent.

    Admissibility requires 0 < delta < 1/(d + 1 + d'), which keeps the total
    cell count m m' m'' = o(n) while h -> 0.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if d < 1 or d_prime < 0:
        raise ValueError(f"invalid dimensions d={d}, d_prime={d_prime}")
    limit = 1.0 / (d + 1 + d_prime)
    if not 0.0 < delta < limit:
        raise ValueError(
            f"delta={delta} is not admissible for dimensions ({d}, 1, {d_prime}); "
            f"need 0 < delta < {limit}"
        )
    return min(1.0, float(n) ** (-delta))


@dataclass(frozen=True)
class CubicPartition:
    """Cubic partitions of the X, Y, Z unit cubes with common side h."""

    h: float
    d: int
    d_prime: int

    def __post_init__(self) -> None:
        if not 0.0 < self.h <= 1.0:
            raise ValueError(f"h must be in (0, 1], got {self.h}")
        if self.d < 1 or self.d_prime < 0:
            raise ValueError(f"invalid dimensions d={self.d}, d_prime={self.d_prime}")
        if self.bins_per_axis ** (self.d + 1 + self.d_prime) > _MAX_TOTAL_CELLS:
            raise ValueError("partition too fine: flat cell ids would overflow int64")

    @cached_property
    def bins_per_axis(self) -> int:
        return math.ceil(1.0 / self.h)

    @property
    def m(self) -> int:
        """Total X-cells."""
        return self.bins_per_axis**self.d

    @property
    def m_prime(self) -> int:
        """Total Y-cells."""
        return self.bins_per_axis

    @property
    def m_dprime(self) -> int:
        """Total Z-cells."""
        return self.bins_per_axis**self.d_prime


@dataclass(frozen=True)
class JointHistogram:
    """Sparse occupancy counts of the (A, B, C) cell triples of a sample.

    Only occupied triples are stored.  ``ac/bc/c_counts`` are aligned with
    the triples: entry k is the count of the (A, C), (B, C), or C marginal
    cell containing triple k.
    """

    n: int
    part: CubicPartition
    a_ids: np.ndarray
    b_ids: np.ndarray
    c_ids: np.ndarray
    counts: np.ndarray
    ac_counts: np.ndarray
    bc_counts: np.ndarray
    c_counts: np.ndarray


def _cell_indices(cols: np.ndarray, h: float, bins: int) -> np.ndarray:
    idx = np.floor(cols / h).astype(np.int64)
    return np.minimum(idx, bins - 1)


def _flatten(idx: np.ndarray, bins: int) -> np.ndarray:
    """Mixed-radix flattening of per-axis cell indices; 0 columns -> all 0."""
    flat = np.zeros(idx.shape[0], dtype=np.int64)
    for j in range(idx.shape[1]):
        flat = flat * bins + idx[:, j]
    return flat


def _group_counts(keys: np.ndarray, counts: np.ndarray) -> np.ndarray:
    """For each entry, the total count of all entries sharing its key."""
    _, inverse = np.unique(keys, return_inverse=True)
    sums = np.bincount(inverse, weights=counts.astype(np.float64))
    return sums[inverse].astype(np.int64)


def build_histogram(data: Dataset, part: CubicPartition) -> JointHistogram:
    """Bin a scaled sample into the cubic partition.

    Every coordinate must already lie in [0, 1]; values exactly at 1 fall
    into the last bin along their axis.
    """
    if data.d != part.d or data.d_prime != part.d_prime:
        raise ValueError(
            f"dimension mismatch: data is ({data.d}, 1, {data.d_prime}), "
            f"partition is ({part.d}, 1, {part.d_prime})"
        )
    cols = data.columns()
    if cols.min() < 0.0 or cols.max() > 1.0:
        raise ValueError("unscaled coordinate outside [0, 1]; call scale_unit first")
    bins = part.bins_per_axis
    idx = _cell_indices(cols, part.h, bins)
    d = data.d
    a = _flatten(idx[:, :d], bins)
    b = idx[:, d]
    c = _flatten(idx[:, d + 1 :], bins)

    n_c = part.m_dprime
    key = (a * bins + b) * n_c + c
    uniq, counts = np.unique(key, return_counts=True)
    c_ids = uniq % n_c
    rest = uniq // n_c
    b_ids = rest % bins
    a_ids = rest // bins

    return JointHistogram(
        n=data.n,
        part=part,
        a_ids=a_ids,
        b_ids=b_ids,
        c_ids=c_ids,
        counts=counts.astype(np.int64),
        ac_counts=_group_counts(a_ids * n_c + c_ids, counts),
        bc_counts=_group_counts(b_ids * n_c + c_ids, counts),
        c_counts=_group_counts(c_ids, counts),
    )


def l_statistic(hist: JointHistogram) -> float:
    """L1 conditional-independence statistic of a binned sample.

    Equal to the full-sum definition over all cell triples: for each triple
    the product term P_n(A,C) P_n(B,C) / P_n(C) sums to 1 over the occupied
    C-cells, so the unoccupied triples contribute 1 - sum_occupied(q) and

        L_n = 1 + sum_occupied( |p - q| - q ).

    Always in [0, 2].
    """
    n = float(hist.n)
    p = hist.counts / n
    q = hist.ac_counts * (hist.bc_counts / (hist.c_counts * n))
    return float(1.0 + np.sum(np.abs(p - q) - q))


def threshold(n: int, m: int, m_prime: int, m_dprime: int, h: float, c1: float) -> float:
    """Deterministic rejection threshold t_n for the partition statistic."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if min(m, m_prime, m_dprime) < 1:
        raise ValueError("cell counts must be >= 1")
    if h <= 0.0:
        raise ValueError(f"h must be > 0, got {h}")
    sampling = (
        math.sqrt(m * m_prime * m_dprime / n)
        + math.sqrt(m_prime * m_dprime / n)
        + math.sqrt(m * m_dprime / n)
        + math.sqrt(m_dprime / n)
    )
    return c1 * sampling + math.log(n) * h


def type1_bound(c1: float, m_dprime: int) -> float:
    """Asymptotic false-rejection bound 4 exp(-(c1^2/2 - log 2) m'')."""
    return 4.0 * math.exp(-(c1 * c1 / 2.0 - math.log(2.0)) * m_dprime)


@dataclass(frozen=True)
class TestConfig:
    """Test parameters: threshold multiplier and bandwidth choice.

    The bandwidth is either explicit (``h``) or scheduled as n^(-delta); an
    explicit h takes precedence.
    """

    __test__ = False  # keep pytest from collecting this as a test class

    c1: float = 1.5
    delta: float | None = 0.2
    h: float | None = None

    def __post_init__(self) -> None:
        if not self.c1 > C1_MIN:
            raise ValueError(f"c1 must exceed sqrt(2 log 2) = {C1_MIN:.6f}, got {self.c1}")
        if self.h is None and self.delta is None:
            raise ValueError("either h or delta must be given")
        if self.h is not None and not 0.0 < self.h <= 1.0:
            raise ValueError(f"h must be in (0, 1], got {self.h}")

    def bandwidth(self, n: int, d: int, d_prime: int) -> float:
        if self.h is not None:
            return self.h
        assert self.delta is not None
        return h_schedule(n, d, d_prime, self.delta)


@dataclass(frozen=True)
class TestOutcome:
    """Result of one run of the conditional independence test."""

    __test__ = False  # keep pytest from collecting this as a test class

    L_n: float
    t_n: float
    m: int
    m_prime: int
    m_dprime: int
    h: float
    reject: bool
    type1_bound: float

    def to_dict(self) -> dict:
        return {
            "L_n": float(self.L_n),
            "t_n": float(self.t_n),
            "m": int(self.m),
            "m_prime": int(self.m_prime),
            "m_dprime": int(self.m_dprime),
            "h": float(self.h),
            "reject": bool(self.reject),
            "type1_bound": float(self.type1_bound),
        }


def run_test(data: Dataset, cfg: TestConfig = TestConfig()) -> TestOutcome:
    """Scale, bin, and test a sample for conditional independence.

    Rejects (dependence found) iff L_n >= t_n.
    """
    scaled, _ = scale_unit(data)
    h = cfg.bandwidth(data.n, data.d, data.d_prime)
    part = CubicPartition(h=h, d=data.d, d_prime=data.d_prime)
    hist = build_histogram(scaled, part)
    l_n = l_statistic(hist)
    t_n = threshold(data.n, part.m, part.m_prime, part.m_dprime, h, cfg.c1)
    return TestOutcome(
        L_n=l_n,
        t_n=t_n,
        m=part.m,
        m_prime=part.m_prime,
        m_dprime=part.m_dprime,
        h=h,
        reject=bool(l_n >= t_n),
        type1_bound=type1_bound(cfg.c1, part.m_dprime),
    )
