"""Angle-based intrinsic dimensionality (ABID) and scale selection.

ABID is the reciprocal of the mean squared pairwise cosine of the data,
measured relative to the origin.  Embedding a dataset with scales that are too
small or too large collapses it toward one of the poles, driving ABID to its
minimum of 1; the scale maximizing ABID over a log grid around the mean vector
norm spreads the data best over the sphere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .embedding import embed_simplified
from .errors import AllCosinesZero, EmptyDataset, TooFewPoints

DEFAULT_PAIR_BUDGET = 100_000


@dataclass(frozen=True)
class AbidEstimate:
    """Intrinsic-dimensionality estimate (>= 1) and the pair count behind it."""

    value: float
    n_pairs: int
    n_skipped: int = 0


@dataclass(frozen=True)
class SweepResult:
    """Scale grid, per-scale ABID curve (NaN for failed points), and winner."""

    grid: np.ndarray
    abid_curve: np.ndarray
    best_s: float
    mean_norm: float


def abid(X: Dataset, pair_budget: int = DEFAULT_PAIR_BUDGET, seed: int = 0) -> AbidEstimate:
    """ABID over distinct unordered pairs of X, sampled beyond ``pair_budget``.

    Zero vectors are skipped (and counted); self-pairs are excluded since they
    would bias the mean squared cosine upward by 1/n.
    """
    if len(X) < 2:
        raise TooFewPoints(f"ABID needs at least 2 points, got {len(X)}")
    norms = np.linalg.norm(X.points, axis=1)
    nonzero = norms > 0.0
    n_skipped = int((~nonzero).sum())
    U = X.points[nonzero] / norms[nonzero, None]
    m = U.shape[0]
    if m < 2:
        raise TooFewPoints(f"only {m} nonzero points, ABID needs at least 2")

    total = m * (m - 1) // 2
    if total <= pair_budget:
        G = U @ U.T
        iu = np.triu_indices(m, k=1)
        cos = G[iu]
        n_pairs = total
    else:
        rng = np.random.default_rng(seed)
        i = rng.integers(0, m, size=pair_budget)
        j = rng.integers(0, m - 1, size=pair_budget)
        j[j >= i] += 1
        cos = np.einsum("ij,ij->i", U[i], U[j])
        n_pairs = pair_budget

    mean_sq = float(np.mean(cos * cos))
    if mean_sq == 0.0:
        raise AllCosinesZero("mean squared cosine is zero; ABID is undefined")
    return AbidEstimate(1.0 / mean_sq, n_pairs, n_skipped)


def mean_center(X: Dataset) -> Dataset:
    """Subtract the column means; idempotent."""
    if len(X) == 0:
        raise EmptyDataset("cannot center an empty dataset")
    return X.replace_points(X.points - X.points.mean(axis=0))


def sweep_scale(
    X: Dataset,
    grid_size: int = 20,
    lo_factor: float = 0.1,
    hi_factor: float = 10.0,
    center: str = "mean_norm",
    pair_budget: int = DEFAULT_PAIR_BUDGET,
    seed: int = 0,
    recenter: bool = True,
) -> SweepResult:
    """Pick the embedding scale maximizing ABID of the embedded data.

    The grid is log-spaced over [lo_factor, hi_factor] times the mean (or
    median) vector norm of the (optionally mean-centered) input.  A grid point
    whose ABID is undefined records NaN and never wins; exact ties break
    toward the grid value nearest the reference norm.
    """
    if len(X) < 2:
        raise TooFewPoints(f"sweep needs at least 2 points, got {len(X)}")
    if grid_size < 2:
        raise ValueError(f"grid_size must be >= 2, got {grid_size}")
    if center not in ("mean_norm", "median_norm"):
        raise ValueError(f"unknown centering mode {center!r}")
    if recenter:
        X = mean_center(X)
    norms = np.linalg.norm(X.points, axis=1)
    ref = float(np.mean(norms) if center == "mean_norm" else np.median(norms))
    if ref <= 0.0:
        raise TooFewPoints("all points coincide with the origin after centering")

    grid = np.geomspace(lo_factor * ref, hi_factor * ref, grid_size)
    # Independent child seed per grid point keeps the sweep deterministic even
    # if evaluated in parallel.
    child_seeds = [int(c.generate_state(1)[0]) for c in np.random.SeedSequence(seed).spawn(grid_size)]
    curve = np.full(grid_size, np.nan)
    for k, s in enumerate(grid):
        emb = embed_simplified(X, float(s))
        try:
            curve[k] = abid(emb, pair_budget, child_seeds[k]).value
        except AllCosinesZero:
            pass

    if np.all(np.isnan(curve)):
        raise AllCosinesZero("every grid point failed; no scale can be selected")
    best_val = np.nanmax(curve)
    candidates = np.flatnonzero(curve == best_val)
    winner = candidates[np.argmin(np.abs(np.log(grid[candidates]) - np.log(ref)))]
    return SweepResult(grid, curve, float(grid[winner]), ref)
