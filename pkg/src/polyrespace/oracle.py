"""Brute-force reference implementations and synthetic curve generators.

The oracles here deliberately avoid the cumulative-table lookup used by
:mod:`polyrespace.curve` so tests can check one against the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

from .curve import DEFAULT_TOL, PolygonalCurve, Tolerances
from .errors import BadSpec, OutOfRange

GENERATOR_KINDS = (
    "random-walk",
    "regular-polygon",
    "isosceles",
    "parallelogram",
    "collinear",
    "noisy-blob",
)


def oracle_point_at_arclength(C: PolygonalCurve, s, samples: int = 10**6):
    """Locate arclength ``s`` by walking ``C`` in small uniform parameter steps.

    The vertex-index parameter ``u`` in ``[0, m]`` is stepped uniformly and the
    chord lengths between consecutive micro-points are accumulated until ``s``
    is reached. ``samples`` is rounded up to a multiple of ``m`` so every vertex
    lies on the micro-grid. ``s`` may be a scalar or a 1-D array; the result
    has shape ``(dim,)`` or ``(len(s), dim)`` respectively.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    v = np.asarray(C.vertices, dtype=float)
    m = C.m
    per_seg = -(-samples // m)
    u = np.arange(per_seg, dtype=float) / per_seg
    a = v[:-1, None, :]
    b = v[1:, None, :]
    micro = (a + u[None, :, None] * (b - a)).reshape(-1, C.dim)
    micro = np.vstack([micro, v[-1:]])
    walked = np.concatenate([[0.0], np.cumsum(np.sqrt(np.sum(np.diff(micro, axis=0) ** 2, axis=1)))])
    total = walked[-1]

    s_arr = np.atleast_1d(np.asarray(s, dtype=float))
    slack = 1e-9 * max(total, 1.0)
    if np.any(s_arr < -slack) or np.any(s_arr > total + slack):
        raise OutOfRange("arclength outside [0, L(C)]")
    s_arr = np.clip(s_arr, 0.0, total)

    out = np.empty((s_arr.size, C.dim))
    for i, target in enumerate(s_arr):
        if target <= 0.0:
            out[i] = v[0]
            continue
        # first micro-point reached at or beyond the target
        j = int(np.argmax(walked >= target))
        if walked[j] < target:
            j = walked.size - 1
        step = walked[j] - walked[j - 1]
        frac = 1.0 if step == 0.0 else (target - walked[j - 1]) / step
        out[i] = micro[j - 1] + frac * (micro[j] - micro[j - 1])
    return out[0] if np.ndim(s) == 0 else out


def oracle_is_equilateral(C: PolygonalCurve, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Pairwise check: the spread of consecutive distances is within tolerance."""
    v = C.vertices
    gaps = [math.dist(v[k], v[k - 1]) for k in range(1, len(v))]
    return max(gaps) - min(gaps) <= tol.rel * sum(gaps) + tol.abs


@dataclass(frozen=True)
class GeneratorSpec:
    """What curve to synthesize.

    ``params`` by kind (defaults in brackets):

    * ``random-walk``: ``vertices`` [20], ``step`` [1.0]
    * ``regular-polygon``: ``k`` [3], ``side`` [1.0]
    * ``isosceles``: ``apex_angle`` (required), ``leg`` [1.0]
    * ``parallelogram``: ``side_a`` [2.0], ``side_b`` [1.0], ``angle`` [pi/3]
    * ``collinear``: ``n_steps`` (required)
    * ``noisy-blob``: ``points`` [65], ``noise_amplitude`` [0.1]
    """

    kind: str
    params: Mapping[str, Any] = field(default_factory=dict)
    seed: int = 0
    dim: int = 2


def _param(spec: GeneratorSpec, name: str, default=None, *, integer=False):
    if name in spec.params and spec.params[name] is not None:
        value = spec.params[name]
    elif default is None:
        raise BadSpec(f"{spec.kind}: missing parameter {name!r}")
    else:
        value = default
    try:
        if integer:
            if float(value) != int(value):
                raise ValueError
            return int(value)
        value = float(value)
    except (TypeError, ValueError):
        raise BadSpec(f"{spec.kind}: parameter {name!r} must be a{'n integer' if integer else ' number'}") from None
    if not math.isfinite(value):
        raise BadSpec(f"{spec.kind}: parameter {name!r} must be finite")
    return value


def _embed(points: np.ndarray, dim: int) -> np.ndarray:
    n, d = points.shape
    if dim < d:
        raise BadSpec(f"this kind needs dim >= {d}, got {dim}")
    out = np.zeros((n, dim))
    out[:, :d] = points
    return out


def _random_walk(spec, rng):
    n = _param(spec, "vertices", 20, integer=True)
    step = _param(spec, "step", 1.0)
    if n < 2 or step <= 0:
        raise BadSpec("random-walk: need vertices >= 2 and step > 0")
    steps = rng.uniform(-step, step, size=(n - 1, spec.dim))
    return np.vstack([np.zeros((1, spec.dim)), np.cumsum(steps, axis=0)])


def _regular_polygon(spec, rng):
    k = _param(spec, "k", 3, integer=True)
    side = _param(spec, "side", 1.0)
    if k < 3 or side <= 0:
        raise BadSpec("regular-polygon: need k >= 3 and side > 0")
    radius = side / (2.0 * math.sin(math.pi / k))
    theta = 2.0 * math.pi * np.arange(k) / k
    pts = radius * np.column_stack([np.cos(theta), np.sin(theta)])
    pts -= pts[0]
    return np.vstack([pts, pts[:1]])


def _isosceles(spec, rng):
    apex = _param(spec, "apex_angle")
    leg = _param(spec, "leg", 1.0)
    if not 0 < apex < math.pi or leg <= 0:
        raise BadSpec("isosceles: need 0 < apex_angle < pi and leg > 0")
    half = apex / 2.0
    p1 = (leg * math.cos(half), -leg * math.sin(half))
    p2 = (leg * math.cos(half), leg * math.sin(half))
    return np.array([(0.0, 0.0), p1, p2, (0.0, 0.0)])


def _parallelogram(spec, rng):
    a = _param(spec, "side_a", 2.0)
    b = _param(spec, "side_b", 1.0)
    angle = _param(spec, "angle", math.pi / 3)
    if a <= 0 or b <= 0 or not 0 < angle < math.pi:
        raise BadSpec("parallelogram: need positive sides and 0 < angle < pi")
    bx, by = b * math.cos(angle), b * math.sin(angle)
    return np.array([(0.0, 0.0), (a, 0.0), (a + bx, by), (bx, by), (0.0, 0.0)])


def _collinear(spec, rng):
    n = _param(spec, "n_steps", integer=True)
    if n < 1:
        raise BadSpec("collinear: n_steps must be >= 1")
    # far vertex overshoots the endpoint so that L = n with d = 1
    return np.array([(0.0,), ((n + 1) / 2.0,), (1.0,)])


def _noisy_blob(spec, rng):
    n = _param(spec, "points", 65, integer=True)
    noise = _param(spec, "noise_amplitude", 0.1)
    if n < 3:
        raise BadSpec("noisy-blob: points must be >= 3")
    if not 0 <= noise <= 0.25:
        raise BadSpec("noisy-blob: noise_amplitude must lie in [0, 0.25]")
    # uneven angular gaps, first vertex at angle 0
    gaps = rng.exponential(size=n)
    theta = 2.0 * math.pi * np.concatenate([[0.0], np.cumsum(gaps)[:-1]]) / gaps.sum()
    amps = rng.uniform(-0.08, 0.08, size=3)
    phases = rng.uniform(0.0, 2.0 * math.pi, size=3)
    radius = np.ones(n)
    for h, (amp, ph) in enumerate(zip(amps, phases), start=2):
        radius += amp * np.cos(h * theta + ph)
    radius += noise * rng.uniform(-1.0, 1.0, size=n)
    pts = np.column_stack([radius * np.cos(theta), radius * np.sin(theta)])
    return np.vstack([pts, pts[:1]])


_GENERATORS = {
    "random-walk": _random_walk,
    "regular-polygon": _regular_polygon,
    "isosceles": _isosceles,
    "parallelogram": _parallelogram,
    "collinear": _collinear,
    "noisy-blob": _noisy_blob,
}


def generate(spec: GeneratorSpec) -> PolygonalCurve:
    """Build the curve described by ``spec``; equal specs give identical curves."""
    try:
        build = _GENERATORS[spec.kind]
    except KeyError:
        raise BadSpec(f"unknown generator kind {spec.kind!r}; expected one of {', '.join(GENERATOR_KINDS)}") from None
    if not isinstance(spec.dim, int) or spec.dim < 1:
        raise BadSpec("dim must be a positive integer")
    if not isinstance(spec.seed, int) or not 0 <= spec.seed < 2**64:
        raise BadSpec("seed must be an unsigned 64-bit integer")
    rng = np.random.default_rng(spec.seed)
    pts = build(spec, rng)
    closed = spec.kind in ("regular-polygon", "isosceles", "parallelogram", "noisy-blob")
    return PolygonalCurve(_embed(pts, spec.dim), closed=closed)


def random_curve(rng: np.random.Generator, m: int, dim: int = 2, scale: float = 10.0) -> PolygonalCurve:
    """``m + 1`` vertices drawn uniformly from ``[-scale, scale]^dim``."""
    return PolygonalCurve(rng.uniform(-scale, scale, size=(m + 1, dim)))
