"""Polygonal curves, their arclength parameterization, and arclength respacing.

A polygonal curve is the linear interpolation of an ordered vertex list
``p_0 ... p_m`` in R^n. Its arclength respacing places ``m + 1`` new vertices
at arclengths ``k * L / m`` along the old curve. Evaluation of ``P(s)`` uses
only the cumulative distance table and linear interpolation, no numerical
integration.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BadSampleSchedule, DimensionMismatch, OutOfRange, TooFewVertices

CLOSED_ATOL = 1e-12


@dataclass(frozen=True)
class Tolerances:
    """Comparison tolerances: a geometric test passes when the discrepancy is
    at most ``rel * scale + abs``, where ``scale`` is a curve length."""

    rel: float = 1e-9
    abs: float = 1e-12

    def __post_init__(self):
        if not (self.rel >= 0 and self.abs >= 0):
            raise ValueError("tolerances must be nonnegative")
        if self.rel == 0 and self.abs == 0:
            raise ValueError("rel and abs tolerances cannot both be zero")

    def at(self, scale: float) -> float:
        return self.rel * scale + self.abs


DEFAULT_TOL = Tolerances()


class PolygonalCurve:
    """An immutable ordered list of ``m + 1`` vertices in R^dim.

    ``closed`` is metadata only; when left as None it is inferred from whether
    the first and last vertices coincide.
    """

    __slots__ = ("_vertices", "_closed")

    def __init__(self, vertices, closed: bool | None = None):
        v = np.array(vertices, dtype=float)
        if v.ndim == 1:
            # a bare list of scalars is a curve in R^1
            v = v.reshape(-1, 1)
        if v.ndim != 2 or v.shape[1] < 1:
            raise DimensionMismatch(f"vertices must form an (m+1, dim) array, got shape {v.shape}")
        if v.shape[0] < 2:
            raise TooFewVertices(f"a polygonal curve needs at least 2 vertices, got {v.shape[0]}")
        if not np.all(np.isfinite(v)):
            raise ValueError("vertex coordinates must be finite")
        ends_match = bool(np.all(np.abs(v[0] - v[-1]) <= CLOSED_ATOL))
        if closed is None:
            closed = ends_match
        elif closed and not ends_match:
            raise ValueError("closed curve must have coincident first and last vertices")
        v.flags.writeable = False
        self._vertices = v
        self._closed = bool(closed)

    @classmethod
    def _trusted(cls, v: np.ndarray, closed: bool) -> PolygonalCurve:
        # skips validation; v must already be a finite float (m+1, dim) array
        obj = cls.__new__(cls)
        v.flags.writeable = False
        obj._vertices = v
        obj._closed = closed
        return obj

    @property
    def vertices(self) -> np.ndarray:
        return self._vertices

    @property
    def closed(self) -> bool:
        return self._closed

    @property
    def dim(self) -> int:
        return self._vertices.shape[1]

    @property
    def m(self) -> int:
        """Number of segments."""
        return self._vertices.shape[0] - 1

    def __len__(self) -> int:
        return self._vertices.shape[0]

    def __getitem__(self, k):
        return self._vertices[k]

    def __iter__(self):
        return iter(self._vertices)

    def __eq__(self, other):
        if not isinstance(other, PolygonalCurve):
            return NotImplemented
        return (
            self._closed == other._closed
            and self._vertices.shape == other._vertices.shape
            and bool(np.array_equal(self._vertices, other._vertices))
        )

    __hash__ = None

    def __repr__(self):
        pts = ", ".join("(" + ", ".join(f"{c:g}" for c in p) + ")" for p in self._vertices[:6])
        more = ", ..." if len(self) > 6 else ""
        return f"PolygonalCurve([{pts}{more}], m={self.m}, closed={self._closed})"


@dataclass(frozen=True)
class ArclengthTable:
    """Cumulative distances ``d_0 = 0 <= d_1 <= ... <= d_m``."""

    cumulative: np.ndarray

    @property
    def total(self) -> float:
        return float(self.cumulative[-1])


def segment_lengths(C: PolygonalCurve) -> np.ndarray:
    return _segment_lengths(C.vertices)


def _segment_lengths(v: np.ndarray) -> np.ndarray:
    d = v[1:] - v[:-1]
    return np.sqrt(np.einsum("ij,ij->i", d, d))


def _cumulative(v: np.ndarray) -> np.ndarray:
    cum = np.empty(v.shape[0])
    cum[0] = 0.0
    np.cumsum(_segment_lengths(v), out=cum[1:])
    return cum


def arclength_table(C: PolygonalCurve) -> ArclengthTable:
    cum = _cumulative(C.vertices)
    cum.flags.writeable = False
    return ArclengthTable(cum)


def length(C: PolygonalCurve) -> float:
    """Sum of segment lengths, accumulated in vertex order."""
    return float(_cumulative(C.vertices)[-1])


def _interpolate(v: np.ndarray, cum: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Evaluate P at each (already clamped) arclength in ``s``.

    Each ``s`` is placed on the segment starting at the last index ``j`` with
    ``cum[j] <= s``, so zero-length segments are skipped. Callers pin the
    endpoints themselves.
    """
    m = v.shape[0] - 1
    j = np.searchsorted(cum, s, side="right") - 1
    beyond = j >= m
    np.clip(j, 0, m - 1, out=j)
    a = v[j]
    span = cum[j + 1] - cum[j]
    # span is positive except where s sits at or past the final plateau
    t = (s - cum[j]) / np.where(span > 0.0, span, 1.0)
    np.clip(t, 0.0, 1.0, out=t)
    out = a + t[:, None] * (v[j + 1] - a)
    if beyond.any():
        out[beyond] = v[m]
    return out


def point_at_arclength(
    C: PolygonalCurve, T: ArclengthTable, s: float, tol: Tolerances = DEFAULT_TOL
) -> np.ndarray:
    """Return ``P(s)``, the point at arclength ``s`` along ``C``.

    ``s`` slightly outside ``[0, T.total]`` (by at most ``tol.abs``) is clamped.
    """
    total = T.total
    if s < -tol.abs or s > total + tol.abs:
        raise OutOfRange(f"arclength {s!r} outside [0, {total!r}]")
    s = min(max(float(s), 0.0), total)
    if s == total:
        return C.vertices[-1].copy()
    if s == 0.0:
        return C.vertices[0].copy()
    return _interpolate(C.vertices, T.cumulative, np.array([s]))[0]


def _respace_array(v: np.ndarray, gaps: np.ndarray | None = None) -> np.ndarray:
    if gaps is None:
        gaps = _segment_lengths(v)
    m = v.shape[0] - 1
    cum = np.concatenate(([0.0], np.cumsum(gaps)))
    total = cum[m]
    if total == 0.0:
        return v.copy()
    out = np.empty_like(v)
    out[0] = v[0]
    out[m] = v[m]
    if m > 1:
        # interior targets lie strictly below total, so j < m without clipping
        s = np.arange(1, m) * total / m
        j = np.searchsorted(cum, s, side="right") - 1
        np.minimum(j, m - 1, out=j)
        a = v[j]
        c = cum[j]
        t = (s - c) / (cum[j + 1] - c)
        out[1:m] = a + t[:, None] * (v[j + 1] - a)
    return out


def respace(C: PolygonalCurve) -> PolygonalCurve:
    """Arclength respacing ``f(C)``: vertex ``k`` moves to ``P(k L / m)``.

    Vertex count and both endpoints are preserved exactly. A curve of zero
    length is returned unchanged.
    """
    return PolygonalCurve._trusted(_respace_array(C.vertices), C.closed)


def respace_with_spacing(C: PolygonalCurve, delta: float) -> PolygonalCurve:
    """Sample ``C`` every ``delta`` units of arclength.

    The output has ``floor(L / delta) + 1`` vertices at arclengths
    ``0, delta, 2 delta, ...``; the final vertex is then pinned to ``p_m``.
    """
    if not delta > 0:
        raise ValueError("delta must be positive")
    v = C.vertices
    cum = _cumulative(v)
    total = cum[-1]
    count = int(np.floor(total / delta)) + 1
    if count < 2:
        return PolygonalCurve._trusted(v[[0, -1]].copy(), C.closed)
    s = np.minimum(np.arange(count) * delta, total)
    out = _interpolate(v, cum, s)
    out[-1] = v[-1]
    return PolygonalCurve._trusted(out, C.closed)


def resample(
    C: PolygonalCurve, s_values: Sequence[float], tol: Tolerances = DEFAULT_TOL
) -> PolygonalCurve:
    """Oriented resampling: the curve through ``P(s_0), ..., P(s_k)``.

    ``s_values`` must start at 0, end at ``L(C)`` and be nondecreasing, each
    up to ``tol``.
    """
    s = np.asarray(s_values, dtype=float)
    if s.ndim != 1 or s.size < 2:
        raise BadSampleSchedule("need at least two sample arclengths")
    v = C.vertices
    cum = _cumulative(v)
    total = cum[-1]
    eps = tol.at(total)
    if not np.all(np.isfinite(s)):
        raise BadSampleSchedule("sample arclengths must be finite")
    if abs(s[0]) > eps:
        raise BadSampleSchedule(f"schedule must start at 0, got {s[0]!r}")
    if abs(s[-1] - total) > eps:
        raise BadSampleSchedule(f"schedule must end at L(C)={total!r}, got {s[-1]!r}")
    if np.any(np.diff(s) < -eps):
        raise BadSampleSchedule("schedule must be nondecreasing")
    s = np.clip(s, 0.0, total)
    out = _interpolate(v, cum, s)
    out[s == 0.0] = v[0]
    out[0] = v[0]
    out[-1] = v[-1]
    return PolygonalCurve._trusted(out, C.closed)


def _point_segment_distance(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    ab = b - a
    denom = float(ab @ ab)
    if denom == 0.0:
        return float(np.linalg.norm(p - a))
    t = min(max(float((p - a) @ ab) / denom, 0.0), 1.0)
    return float(np.linalg.norm(p - (a + t * ab)))


def basic_vertex_indices(C: PolygonalCurve, tol: Tolerances = DEFAULT_TOL) -> list[int]:
    """Indices of the basic vertices of ``C``.

    ``p_0`` is always basic. An interior vertex is basic when it differs from
    its predecessor and does not lie on the segment to its next distinct
    neighbour. ``p_m`` is basic when it differs from ``p_{m-1}``.
    """
    v = C.vertices
    m = C.m
    eps = tol.at(length(C))
    seg = _segment_lengths(v)
    basic = [0]
    for k in range(1, m + 1):
        if seg[k - 1] <= eps:
            continue
        # skip trailing duplicates so a repeated corner is not swallowed
        nxt = k + 1
        while nxt <= m and seg[nxt - 1] <= eps:
            nxt += 1
        if nxt > m:
            basic.append(k)
            continue
        if _point_segment_distance(v[k], v[k - 1], v[nxt]) > eps:
            basic.append(k)
    return basic


def similar(C: PolygonalCurve, D: PolygonalCurve, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True when ``C`` and ``D`` share the same sequence of basic vertices."""
    if C.dim != D.dim:
        raise DimensionMismatch(f"cannot compare curves of dim {C.dim} and {D.dim}")
    bc = C.vertices[basic_vertex_indices(C, tol)]
    bd = D.vertices[basic_vertex_indices(D, tol)]
    if bc.shape != bd.shape:
        return False
    eps = tol.at(max(length(C), length(D)))
    return bool(np.all(np.linalg.norm(bc - bd, axis=1) <= eps))


def is_equilateral(C: PolygonalCurve, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Equilateral test in cumulative form: ``k L / m == d_k`` for every k."""
    cum = _cumulative(C.vertices)
    total = cum[-1]
    if total == 0.0:
        return True
    m = C.m
    target = np.arange(m + 1) * total / m
    return bool(np.all(np.abs(target[1:] - cum[1:]) <= tol.at(total)))
