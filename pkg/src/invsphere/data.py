"""Dense point collections with stable integer ids."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, EmptyDataset, InputFormatError

UNIT_NORM_TOL = 1e-9


@dataclass(frozen=True)
class Dataset:
    """An ordered collection of d-dimensional points.

    ``points`` is an (n, d) float64 array; ``ids`` carries one stable integer
    per row and is preserved by all per-point maps.
    """

    points: np.ndarray
    ids: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        pts = np.ascontiguousarray(np.asarray(self.points, dtype=np.float64))
        if pts.ndim != 2:
            raise InputFormatError(f"points must be 2-dimensional, got shape {pts.shape}")
        if pts.shape[0] == 0:
            raise EmptyDataset("dataset contains no points")
        if pts.shape[1] == 0:
            raise InputFormatError("points must have at least one coordinate")
        if not np.all(np.isfinite(pts)):
            bad = int(np.argwhere(~np.isfinite(pts).all(axis=1))[0, 0])
            raise InputFormatError(f"non-finite coordinate in point {bad}")
        ids = self.ids
        if ids is None:
            ids = np.arange(pts.shape[0], dtype=np.int64)
        else:
            ids = np.asarray(ids, dtype=np.int64)
            if ids.shape != (pts.shape[0],):
                raise DimensionMismatch(
                    f"ids shape {ids.shape} does not match {pts.shape[0]} points"
                )
            if np.unique(ids).size != ids.size:
                raise InputFormatError("ids must be unique")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "ids", ids)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.points.shape[0]

    def replace_points(self, points: np.ndarray) -> "Dataset":
        """New dataset with the same ids and different coordinates."""
        return Dataset(points, self.ids)


class EmbeddedDataset(Dataset):
    """A dataset whose points lie on the unit sphere in R^(d+1)."""

    def __post_init__(self):
        super().__post_init__()
        norms = np.linalg.norm(self.points, axis=1)
        err = np.abs(norms - 1.0)
        if np.any(err > UNIT_NORM_TOL):
            bad = int(np.argmax(err))
            raise InputFormatError(
                f"point {bad} has norm {norms[bad]!r}, not on the unit sphere"
            )
