"""Closed-form translation of inner products and squared distances between the
original space and the embedded sphere, for the default direction
v = (0, ..., 0, 1).  No point is ever embedded or unembedded explicitly."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .embedding import SINGULARITY_EPS, _check_scale
from .errors import (
    DimensionMismatch,
    EmptyDataset,
    PointAtSouthPole,
    ZeroEmbeddedCosine,
    ZeroVector,
)


@dataclass(frozen=True)
class MetricContext:
    """Scale of the embedding the translation refers to."""

    s: float

    def __post_init__(self):
        object.__setattr__(self, "s", _check_scale(self.s))


def _pair(x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise DimensionMismatch(f"expected two vectors of equal shape, got {x.shape} and {y.shape}")
    return x, y


def dot_embedded(x: np.ndarray, y: np.ndarray, ctx: MetricContext) -> float:
    """<x^, y^> without embedding: 1 - 2 s^2 |x-y|^2 / ((|x|^2+s^2)(|y|^2+s^2))."""
    x, y = _pair(x, y)
    s2 = ctx.s * ctx.s
    d = x - y
    return 1.0 - 2.0 * s2 * float(d @ d) / ((float(x @ x) + s2) * (float(y @ y) + s2))


def sqdist_embedded(x: np.ndarray, y: np.ndarray, ctx: MetricContext) -> float:
    """|x^ - y^|^2 without embedding; always in [0, 4]."""
    x, y = _pair(x, y)
    s2 = ctx.s * ctx.s
    d = x - y
    val = 4.0 * s2 * float(d @ d) / ((float(x @ x) + s2) * (float(y @ y) + s2))
    return min(val, 4.0)


def _check_above_pole(xh: np.ndarray, yh: np.ndarray, eps: float) -> None:
    if 1.0 + xh[-1] < eps or 1.0 + yh[-1] < eps:
        raise PointAtSouthPole("embedded point lies at the singularity -v")


def dot_original(xh: np.ndarray, yh: np.ndarray, ctx: MetricContext,
                 eps: float = SINGULARITY_EPS) -> float:
    """<x, y> of the unembedded points, from the embedded unit vectors."""
    xh, yh = _pair(xh, yh)
    _check_above_pole(xh, yh, eps)
    s2 = ctx.s * ctx.s
    return s2 * (float(xh @ yh) - xh[-1] * yh[-1]) / ((1.0 + xh[-1]) * (1.0 + yh[-1]))


def sqdist_original(xh: np.ndarray, yh: np.ndarray, ctx: MetricContext,
                    eps: float = SINGULARITY_EPS) -> float:
    """|x - y|^2 of the unembedded points, from the embedded unit vectors.

    Uses the last-coordinate form; under ``__debug__`` the direction-vector
    form (denominators 4 - |x^ - v|^2) is cross-checked against it.
    """
    xh, yh = _pair(xh, yh)
    _check_above_pole(xh, yh, eps)
    s2 = ctx.s * ctx.s
    d = xh - yh
    dd = float(d @ d)
    val = s2 * dd / ((1.0 + xh[-1]) * (1.0 + yh[-1]))
    if __debug__:
        xv = xh.copy()
        xv[-1] -= 1.0
        yv = yh.copy()
        yv[-1] -= 1.0
        alt = 4.0 * s2 * dd / ((4.0 - float(xv @ xv)) * (4.0 - float(yv @ yv)))
        assert abs(alt - val) <= 1e-9 * max(1.0, abs(val)), (val, alt)
    return val


def hemisphere_min_scale(X: Dataset) -> float:
    """Smallest scale that keeps all embedded points on the hemisphere toward v.

    Returns max_x |x|; embedding with any s >= this value yields nonnegative
    last coordinates, any strictly larger s strictly positive ones.  A return
    of 0.0 (all-origin data) is not itself a valid scale; callers must pick
    s > 0.
    """
    if X is None or len(X) == 0:
        raise EmptyDataset("cannot bound the scale of an empty dataset")
    return float(np.max(np.linalg.norm(X.points, axis=1)))


def cosine_ratio(x: np.ndarray, y: np.ndarray, ctx: MetricContext) -> float:
    """Ratio cos(x, y) / cos(x^, y^); approaches 1 as both norms approach s.

    Diagnostic only, not meant for hot paths.
    """
    x, y = _pair(x, y)
    nx = float(np.linalg.norm(x))
    ny = float(np.linalg.norm(y))
    if nx == 0.0 or ny == 0.0:
        raise ZeroVector("cosine ratio needs nonzero vectors")
    cos_orig = float(x @ y) / (nx * ny)
    cos_emb = (2.0 - sqdist_embedded(x, y, ctx)) / 2.0
    if cos_emb == 0.0:
        raise ZeroEmbeddedCosine("embedded cosine vanishes; the ratio is undefined")
    return cos_orig / cos_emb
