"""Arclength respacing of polygonal curves and its fixed-point iteration."""

from .curve import (
    ArclengthTable,
    PolygonalCurve,
    Tolerances,
    arclength_table,
    basic_vertex_indices,
    is_equilateral,
    length,
    point_at_arclength,
    resample,
    respace,
    respace_with_spacing,
    segment_lengths,
    similar,
)
from .errors import (
    BadSampleSchedule,
    BadSpec,
    DegenerateAngle,
    DimensionMismatch,
    OutOfRange,
    ParseError,
    RespacingError,
    TooFewVertices,
    UnsupportedDimension,
)
from .iteration import (
    IterationConfig,
    IterationRecord,
    IterationTrace,
    SpacingStats,
    StopReason,
    iterate,
    respace_sequence,
    spacing_stats,
    vertex_angle,
)
from .oracle import GeneratorSpec, generate

__version__ = "0.1.0"
