"""Repeated arclength respacing with convergence monitoring."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .curve import PolygonalCurve, _respace_array, _segment_lengths
from .errors import DegenerateAngle


@dataclass(frozen=True)
class SpacingStats:
    """Statistics of the consecutive vertex distances of one curve.

    ``sigma`` is the population standard deviation (divides by m).
    """

    sigma: float
    max: float
    min: float
    mean: float


def _stats_from_gaps(gaps: np.ndarray, total: float | None = None) -> SpacingStats:
    lo = float(gaps.min())
    hi = float(gaps.max())
    if total is None:
        total = float(gaps.sum())
    mean = total / gaps.size
    dev = gaps - mean
    sigma = math.sqrt(float(dev @ dev) / gaps.size)
    # rounding can put the mean an ulp outside [min, max]
    return SpacingStats(sigma=sigma, max=hi, min=lo, mean=min(max(mean, lo), hi))


def spacing_stats(C: PolygonalCurve) -> SpacingStats:
    return _stats_from_gaps(_segment_lengths(C.vertices))


class StopReason(enum.Enum):
    DISPLACEMENT = "Displacement"
    SIGMA = "Sigma"
    MAX_ITERS = "MaxIters"
    FIXED_POINT = "FixedPoint"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class IterationConfig:
    max_iters: int = 1000
    tol_displacement: float = 1e-12
    tol_sigma: float = 0.0
    record_curves: bool = False

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.tol_displacement < 0 or self.tol_sigma < 0:
            raise ValueError("tolerances must be nonnegative")


@dataclass(frozen=True)
class IterationRecord:
    n: int
    length: float
    stats: SpacingStats
    # None for n = 0
    displacement: float | None = None
    curve: PolygonalCurve | None = None


@dataclass
class IterationTrace:
    records: list[IterationRecord] = field(default_factory=list)
    stop_reason: StopReason | None = None

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __getitem__(self, i):
        return self.records[i]

    @property
    def iterations(self) -> int:
        """Index of the last recorded iterate."""
        return self.records[-1].n

    @property
    def lengths(self) -> list[float]:
        return [r.length for r in self.records]

    @property
    def sigmas(self) -> list[float]:
        return [r.stats.sigma for r in self.records]

    def sigma_ratios(self) -> list[float | None]:
        """``sigma_n / sigma_{n-1}`` for consecutive iterates; None where undefined."""
        out: list[float | None] = []
        prev = None
        for r in self.records:
            if prev is None or prev.n != r.n - 1 or prev.stats.sigma == 0.0:
                out.append(None)
            else:
                out.append(r.stats.sigma / prev.stats.sigma)
            prev = r
        return out


def _record(n, v, gaps, closed, displacement, keep):
    return IterationRecord(
        n=n,
        length=float(np.cumsum(gaps)[-1]),
        stats=_stats_from_gaps(gaps),
        displacement=displacement,
        curve=PolygonalCurve._trusted(v, closed) if keep else None,
    )


def _max_move(a: np.ndarray, b: np.ndarray) -> float:
    d = b - a
    return math.sqrt(float(np.max(np.einsum("ij,ij->i", d, d))))


def iterate(C: PolygonalCurve, cfg: IterationConfig = IterationConfig()):
    """Respace ``C`` repeatedly until a stopping criterion holds.

    Criteria are checked in this order after each step: the step moved no
    vertex at all (FixedPoint, the unchanged iterate is not re-recorded), the
    largest vertex move fell below ``cfg.tol_displacement`` (Displacement).
    Before each step, sigma below ``cfg.tol_sigma`` stops with Sigma, and
    having done ``cfg.max_iters`` steps stops with MaxIters.

    Returns ``(final_curve, trace)``.
    """
    v = C.vertices
    closed = C.closed
    gaps = _segment_lengths(v)
    trace = IterationTrace([_record(0, v, gaps, closed, None, cfg.record_curves)])
    n = 0
    while True:
        if cfg.tol_sigma > 0 and trace.records[-1].stats.sigma < cfg.tol_sigma:
            trace.stop_reason = StopReason.SIGMA
            break
        if n >= cfg.max_iters:
            trace.stop_reason = StopReason.MAX_ITERS
            break
        nxt = _respace_array(v, gaps)
        disp = _max_move(v, nxt)
        if disp == 0.0:
            trace.stop_reason = StopReason.FIXED_POINT
            break
        n += 1
        v = nxt
        gaps = _segment_lengths(v)
        trace.records.append(_record(n, v, gaps, closed, disp, cfg.record_curves))
        if disp < cfg.tol_displacement:
            trace.stop_reason = StopReason.DISPLACEMENT
            break
    return PolygonalCurve._trusted(v, closed) if v is not C.vertices else C, trace


def respace_sequence(C: PolygonalCurve, iterations: int, record_curves: bool = False) -> IterationTrace:
    """Trace of exactly ``C^0 ... C^iterations`` with no early stopping."""
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    v = C.vertices
    gaps = _segment_lengths(v)
    trace = IterationTrace([_record(0, v, gaps, C.closed, None, record_curves)])
    for n in range(1, iterations + 1):
        nxt = _respace_array(v, gaps)
        disp = _max_move(v, nxt)
        v = nxt
        gaps = _segment_lengths(v)
        trace.records.append(_record(n, v, gaps, C.closed, disp, record_curves))
    trace.stop_reason = StopReason.MAX_ITERS
    return trace


def vertex_angle(C: PolygonalCurve, k: int) -> float:
    """Interior angle at vertex ``k`` in radians, in ``[0, pi]``.

    For ``k = 0`` on a closed curve the neighbours are ``p_{m-1}`` and ``p_1``.
    """
    v = C.vertices
    m = C.m
    if 1 <= k <= m - 1:
        prev, nxt = v[k - 1], v[k + 1]
    elif k == 0 and C.closed and m >= 2:
        prev, nxt = v[m - 1], v[1]
    else:
        raise IndexError(f"no interior angle at vertex {k} (m={m}, closed={C.closed})")
    a = prev - v[k]
    b = nxt - v[k]
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        raise DegenerateAngle(f"zero-length segment adjacent to vertex {k}")
    ua = a / na
    ub = b / nb
    # half-angle form stays accurate near 0 and pi, unlike acos
    return 2.0 * math.atan2(float(np.linalg.norm(ua - ub)), float(np.linalg.norm(ua + ub)))
