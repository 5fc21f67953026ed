"""Sphere-inversion embedding of Euclidean data and its inverse.

The pipeline lifts d-dimensional points onto an affine hyperplane in (d+1)
dimensions, inverts them through the unit sphere (landing on a sphere through
the origin), then shifts and rescales so the image lies on the unit sphere.
For the default direction v = (0, ..., 0, 1) closed-form shortcuts are
provided.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset, EmbeddedDataset
from .errors import (
    DimensionMismatch,
    InvalidDirection,
    InvalidScale,
    PointAtSouthPole,
)

#: Squared-norm guard before divisions near the inversion singularity.
SINGULARITY_EPS = 1e-24

#: Unit-vector deviations up to this are renormalized, larger ones rejected.
DIRECTION_NORM_TOL = 1e-9


def _check_scale(s: float) -> float:
    s = float(s)
    if not np.isfinite(s) or s <= 0.0:
        raise InvalidScale(f"scale must be a positive finite real, got {s!r}")
    return s


@dataclass(frozen=True)
class EmbeddingParams:
    """Inversion direction ``v`` (unit vector in R^(d+1)) and scale ``s`` > 0.

    ``v`` is renormalized when its norm deviates from 1 by at most 1e-9 and
    rejected otherwise.  The last coordinate of ``v`` must be nonzero since
    the hyperplane lift divides by it.
    """

    v: np.ndarray
    s: float

    def __post_init__(self):
        v = np.asarray(self.v, dtype=np.float64)
        if v.ndim != 1 or v.size < 2:
            raise InvalidDirection(f"v must be a vector in R^(d+1), got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise InvalidDirection("v has non-finite coordinates")
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > DIRECTION_NORM_TOL:
            raise InvalidDirection(f"v has norm {norm!r}, not unit length")
        v = v / norm
        if v[-1] == 0.0:
            raise InvalidDirection("v has zero last coordinate; the planar lift divides by it")
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "s", _check_scale(self.s))

    @property
    def dim(self) -> int:
        """Dimension d of the original space."""
        return self.v.size - 1


def _check_dims(X: Dataset, params: EmbeddingParams) -> None:
    if X.dim + 1 != params.v.size:
        raise DimensionMismatch(
            f"dataset dimension {X.dim} does not match direction in R^{params.v.size}"
        )


def embed_plane(X: Dataset, params: EmbeddingParams) -> Dataset:
    """Lift points onto the affine hyperplane <x', v> = s in R^(d+1)."""
    _check_dims(X, params)
    v, s = params.v, params.s
    lift = (s - X.points @ v[:-1]) / v[-1]
    return Dataset(np.hstack([X.points, lift[:, None]]), X.ids)


def embed_inversion_sphere(X: Dataset, params: EmbeddingParams) -> Dataset:
    """Invert the lifted points through the unit sphere.

    The image lies on the sphere with center v/(2s) and radius 1/(2s).
    """
    lifted = embed_plane(X, params)
    sq = np.einsum("ij,ij->i", lifted.points, lifted.points)
    return Dataset(lifted.points / sq[:, None], X.ids)


def embed(X: Dataset, params: EmbeddingParams) -> EmbeddedDataset:
    """Map points onto the unit sphere in R^(d+1)."""
    inv = embed_inversion_sphere(X, params)
    out = 2.0 * params.s * inv.points - params.v
    return EmbeddedDataset(out, X.ids)


def unembed(Y: Dataset, params: EmbeddingParams, eps: float = SINGULARITY_EPS) -> Dataset:
    """Inverse of :func:`embed`; undefined at the singular point -v."""
    if Y.dim != params.v.size:
        raise DimensionMismatch(
            f"embedded dimension {Y.dim} does not match direction in R^{params.v.size}"
        )
    w = Y.points + params.v
    sq = np.einsum("ij,ij->i", w, w)
    if np.any(sq < eps):
        bad = int(np.argmax(sq < eps))
        raise PointAtSouthPole(f"point {bad} (id {Y.ids[bad]}) lies at the singularity -v")
    out = 2.0 * params.s * (w / sq[:, None])[:, :-1]
    return Dataset(out, Y.ids)


def embed_simplified(X: Dataset, s: float) -> EmbeddedDataset:
    """Embedding for the default direction v = (0, ..., 0, 1).

    Equivalent to ``embed(X, EmbeddingParams(e_{d+1}, s))`` but cheaper:
    x maps to 2s (x, s) / (|x|^2 + s^2) - v.
    """
    s = _check_scale(s)
    sq = np.einsum("ij,ij->i", X.points, X.points) + s * s
    out = np.empty((len(X), X.dim + 1))
    out[:, :-1] = 2.0 * s * X.points / sq[:, None]
    out[:, -1] = 2.0 * s * s / sq - 1.0
    return EmbeddedDataset(out, X.ids)


def unembed_simplified(Y: Dataset, s: float, eps: float = SINGULARITY_EPS) -> Dataset:
    """Inverse of :func:`embed_simplified`: y maps to s y_{1..d} / (1 + y_{d+1})."""
    s = _check_scale(s)
    denom = 1.0 + Y.points[:, -1]
    if np.any(denom < eps):
        bad = int(np.argmax(denom < eps))
        raise PointAtSouthPole(f"point {bad} (id {Y.ids[bad]}) lies at the singularity -v")
    return Dataset(s * Y.points[:, :-1] / denom[:, None], Y.ids)


def embed_point(x: np.ndarray, s: float) -> np.ndarray:
    """Single-vector convenience wrapper around :func:`embed_simplified`."""
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    sq = float(x @ x) + s * s
    return np.concatenate([2.0 * s * x, [2.0 * s * s - sq]]) / sq


def unembed_point(y: np.ndarray, s: float, eps: float = SINGULARITY_EPS) -> np.ndarray:
    """Single-vector convenience wrapper around :func:`unembed_simplified`."""
    y = np.asarray(y, dtype=np.float64)
    denom = 1.0 + y[-1]
    if denom < eps:
        raise PointAtSouthPole("point lies at the singularity -v")
    return s * y[:-1] / denom
