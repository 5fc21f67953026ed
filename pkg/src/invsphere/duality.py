"""Duality between hyperspherical caps and hyperballs / axis-aligned spheroids.

A cap on the embedded unit sphere that stays clear of the singular point -v
unembeds to a hyperball (default direction) or to a spheroid with a single
shorter axis collinear to v_{1..d} (general direction).  Conversions are
closed-form in both directions for the ball case; the spheroid direction is
one-way.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .embedding import EmbeddingParams, _check_scale, unembed, unembed_point
from .errors import (
    AxisUndefined,
    CapContainsSouthPole,
    DegenerateCap,
    DimensionMismatch,
    InvalidDirection,
    InvalidScale,
)

#: Below this norm of v_{1..d} the spheroid short axis is ill-defined.
AXIS_EPS = 1e-9


def _unit(name: str, vec: np.ndarray) -> np.ndarray:
    vec = np.asarray(vec, dtype=np.float64)
    if vec.ndim != 1 or not np.all(np.isfinite(vec)):
        raise InvalidDirection(f"{name} must be a finite vector")
    norm = float(np.linalg.norm(vec))
    if abs(norm - 1.0) > 1e-9:
        raise InvalidDirection(f"{name} has norm {norm!r}, not unit length")
    return vec / norm


@dataclass(frozen=True)
class Cap:
    """Hyperspherical cap: unit-sphere points with <x, p> > b (>= if closed)."""

    p: np.ndarray
    b: float
    open_flag: bool = True

    def __post_init__(self):
        object.__setattr__(self, "p", _unit("p", self.p))
        b = float(self.b)
        if not np.isfinite(b):
            raise DegenerateCap(f"bias must be finite, got {b!r}")
        object.__setattr__(self, "b", b)

    def contains(self, y: np.ndarray) -> bool:
        """Membership test for a unit vector; boundary decided by open_flag."""
        y = np.asarray(y, dtype=np.float64)
        if y.shape != self.p.shape:
            raise DimensionMismatch(f"point in R^{y.size}, cap in R^{self.p.size}")
        norm = float(np.linalg.norm(y))
        if abs(norm - 1.0) > 1e-6:
            raise InvalidDirection(f"cap membership needs a unit vector, norm {norm!r}")
        d = float(y @ self.p)
        return d > self.b if self.open_flag else d >= self.b


@dataclass(frozen=True)
class Ball:
    """Hyperball: points with |x - c| < r (<= if closed)."""

    c: np.ndarray
    r: float
    open_flag: bool = True

    def __post_init__(self):
        c = np.asarray(self.c, dtype=np.float64)
        if c.ndim != 1 or not np.all(np.isfinite(c)):
            raise InvalidDirection("center must be a finite vector")
        r = float(self.r)
        if not np.isfinite(r) or r <= 0.0:
            raise InvalidScale(f"radius must be positive, got {r!r}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "r", r)

    def contains(self, x: np.ndarray) -> bool:
        x = np.asarray(x, dtype=np.float64)
        if x.shape != self.c.shape:
            raise DimensionMismatch(f"point in R^{x.size}, ball in R^{self.c.size}")
        d = float(np.linalg.norm(x - self.c))
        return d < self.r if self.open_flag else d <= self.r


@dataclass(frozen=True)
class AxisAlignedSpheroid:
    """Spheroid with short radius r1 along a1 and radius r2 everywhere else."""

    c: np.ndarray
    a1: np.ndarray
    r1: float
    r2: float

    def __post_init__(self):
        c = np.asarray(self.c, dtype=np.float64)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "a1", _unit("a1", self.a1))
        r1, r2 = float(self.r1), float(self.r2)
        if not (0.0 < r1 <= r2) or not np.isfinite(r2):
            raise InvalidScale(f"radii must satisfy 0 < r1 <= r2, got {r1!r}, {r2!r}")
        object.__setattr__(self, "r1", r1)
        object.__setattr__(self, "r2", r2)

    def quadratic_form(self, x: np.ndarray) -> float:
        """Evaluates to 1 exactly on the spheroid surface."""
        delta = np.asarray(x, dtype=np.float64) - self.c
        along = float(delta @ self.a1)
        rest = float(delta @ delta) - along * along
        return along * along / self.r1**2 + rest / self.r2**2


def cap_contains(cap: Cap, y: np.ndarray) -> bool:
    return cap.contains(y)


def ball_contains(ball: Ball, x: np.ndarray) -> bool:
    return ball.contains(x)


def _cap_scalars(b: float, proj: float) -> float:
    """Intermediate alpha = (1 - b^2) / (2 (b + <p, v>))."""
    if abs(b) >= 1.0:
        raise DegenerateCap(f"bias {b!r} outside (-1, 1)")
    if b + proj <= 0.0:
        raise CapContainsSouthPole(
            f"cap with b + <p, v> = {b + proj!r} <= 0 covers the singular point -v"
        )
    return (1.0 - b * b) / (2.0 * (b + proj))


def cap_to_ball(cap: Cap, s: float) -> Ball:
    """Unembedded image of a cap for the default direction v = (0, ..., 0, 1).

    Requires the cap to stay clear of -v, i.e. b + p_{d+1} > 0.
    """
    s = _check_scale(s)
    p, b = cap.p, cap.b
    alpha = _cap_scalars(b, float(p[-1]))
    # Closed-form center; collinear with p_{1..d} by construction.
    denom = np.sqrt(1.0 - p[-1] ** 2 + (p[-1] - alpha) ** 2) + p[-1] - alpha
    c = s * p[:-1] / denom
    r = s * np.sqrt(2.0 * alpha / (b + p[-1]))
    return Ball(c, float(r), cap.open_flag)


def cap_center_via_unembedding(cap: Cap, s: float) -> np.ndarray:
    """Ball center computed along the defining route: unembed (p - a v)/|p - a v|.

    Agrees with the closed form used by :func:`cap_to_ball` to 1e-9; kept as an
    independent cross-check.
    """
    s = _check_scale(s)
    p, b = cap.p, cap.b
    alpha = _cap_scalars(b, float(p[-1]))
    q = p.copy()
    q[-1] -= alpha
    q /= np.linalg.norm(q)
    return unembed_point(q, s)


def ball_to_cap(ball: Ball, s: float) -> Cap:
    """Embedded image of a ball for the default direction v = (0, ..., 0, 1).

    The last coordinate of the cap direction is computed via the signed closed
    form rather than as sqrt(1 - beta^2 |c|^2): the square root drops the
    sign, which is negative for balls far from the origin, and the unsigned
    variant then names a different (wrong) cap.
    """
    s = _check_scale(s)
    c, r = ball.c, ball.r
    csq = float(c @ c)
    rsq = r * r
    ssq = s * s
    # Radicals grouped exactly as derived; re-association destabilizes the
    # roundtrip for extreme radii.
    disc = (csq + rsq + ssq) ** 2 - 4.0 * csq * rsq
    beta = 2.0 * s / np.sqrt(disc)
    root = np.sqrt(ssq + beta * beta * csq * rsq)
    last = (beta * (rsq + ssq) * (ssq - csq) + rsq * root) / (s * (rsq + 2.0 * ssq))
    b = (s * root - rsq * last) / (rsq + ssq)
    p = np.concatenate([beta * c, [last]])
    p /= np.linalg.norm(p)
    return Cap(p, float(b), ball.open_flag)


def cap_to_spheroid(cap: Cap, params: EmbeddingParams) -> AxisAlignedSpheroid:
    """Unembedded image of a cap for a general direction v.

    The image is a spheroid whose single short axis is collinear with
    v_{1..d}; the radii differ by the factor |v_{d+1}|.  Falls over to
    :class:`AxisUndefined` when v is (numerically) the default pole, in which
    case :func:`cap_to_ball` applies.
    """
    v, s = params.v, params.s
    p, b = cap.p, cap.b
    if p.size != v.size:
        raise DimensionMismatch(f"cap in R^{p.size}, direction in R^{v.size}")
    axis = v[:-1]
    axis_norm = float(np.linalg.norm(axis))
    if axis_norm < AXIS_EPS:
        raise AxisUndefined(
            "v is the default pole; the short axis is ill-defined, use cap_to_ball"
        )
    proj = float(p @ v)
    alpha = _cap_scalars(b, proj)
    q = (p - alpha * v)
    q /= np.linalg.norm(q)
    c = unembed(Dataset(q[None, :]), params).points[0]
    r2 = s * np.sqrt(1.0 - b * b) / (b + proj)
    r1 = r2 * abs(float(v[-1]))
    return AxisAlignedSpheroid(c, axis / axis_norm, float(r1), float(r2))


def sample_cap_boundary(cap: Cap, n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform samples on the cap boundary circle <x, p> = b.

    Draws tangent directions uniformly on the sphere of the orthogonal
    complement of p and places them at b p + sqrt(1 - b^2) t, which satisfies
    the boundary equation by construction.
    """
    p, b = cap.p, cap.b
    if abs(b) >= 1.0:
        raise DegenerateCap(f"bias {b!r} outside (-1, 1)")
    g = rng.standard_normal((n, p.size))
    g -= np.outer(g @ p, p)
    norms = np.linalg.norm(g, axis=1)
    # Resample the (measure-zero) degenerate draws.
    while np.any(norms < 1e-12):
        bad = norms < 1e-12
        g[bad] = rng.standard_normal((int(bad.sum()), p.size))
        g[bad] -= np.outer(g[bad] @ p, p)
        norms = np.linalg.norm(g, axis=1)
    t = g / norms[:, None]
    return b * p + np.sqrt(1.0 - b * b) * t
