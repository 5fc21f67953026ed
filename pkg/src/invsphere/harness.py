"""Synthetic data, exact brute-force k-NN, recall, and desk-scale pipelines.

The brute-force search doubles as the exact oracle for the claim that
translated distances between embedded points reproduce Euclidean rankings on
the originals, without any approximate index involved.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset, EmbeddedDataset
from .embedding import SINGULARITY_EPS, _check_scale, embed_simplified, unembed_simplified
from .errors import (
    DimensionMismatch,
    PointAtSouthPole,
    PreconditionError,
    ZeroMean,
)
from .scale import mean_center, sweep_scale

GENERATOR_KINDS = ("uniform_ball", "gaussian", "blobs", "normalized_blobs")
KNN_METRICS = ("euclidean", "cosine", "bridged_original")


@dataclass(frozen=True)
class KnnResult:
    query_id: int
    neighbor_ids: np.ndarray
    distances: np.ndarray


@dataclass(frozen=True)
class RecallReport:
    k: int
    recall: float
    n_queries: int


def generate(kind: str, d: int, n: int, n_blobs: int = 10, seed: int = 0) -> Dataset:
    """Deterministic synthetic datasets used throughout the experiments."""
    if kind not in GENERATOR_KINDS:
        raise PreconditionError(f"unknown generator kind {kind!r}")
    if d < 1 or n < 1:
        raise PreconditionError(f"need d >= 1 and n >= 1, got d={d}, n={n}")
    rng = np.random.default_rng(seed)
    if kind == "uniform_ball":
        dirs = rng.standard_normal((n, d))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        radii = rng.random(n) ** (1.0 / d)
        pts = dirs * radii[:, None]
    elif kind == "gaussian":
        pts = rng.standard_normal((n, d))
    else:
        if n_blobs < 1:
            raise PreconditionError(f"need n_blobs >= 1, got {n_blobs}")
        centers = 10.0 * rng.standard_normal((n_blobs, d))
        labels = rng.integers(0, n_blobs, size=n)
        pts = centers[labels] + rng.standard_normal((n, d))
        if kind == "normalized_blobs":
            pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    return Dataset(pts)


def _pairwise_sqdist(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    sq = (
        np.einsum("ij,ij->i", A, A)[:, None]
        + np.einsum("ij,ij->i", B, B)[None, :]
        - 2.0 * A @ B.T
    )
    return np.maximum(sq, 0.0)


def brute_force_knn(
    base: Dataset,
    queries: Dataset,
    k: int,
    metric: str = "euclidean",
    s: float = 1.0,
) -> list[KnnResult]:
    """Exact k nearest neighbors; ties broken by ascending base id.

    ``bridged_original`` expects both sides to be embedded (d+1, unit norm)
    and ranks by the translated original-space distance at scale ``s``.
    """
    if metric not in KNN_METRICS:
        raise PreconditionError(f"unknown metric {metric!r}")
    if base.dim != queries.dim:
        raise DimensionMismatch(
            f"base dimension {base.dim} does not match query dimension {queries.dim}"
        )
    if not 1 <= k <= len(base):
        raise PreconditionError(f"k={k} not in [1, {len(base)}]")

    Q, B = queries.points, base.points
    if metric == "euclidean":
        dist = np.sqrt(_pairwise_sqdist(Q, B))
    elif metric == "cosine":
        qn = np.linalg.norm(Q, axis=1, keepdims=True)
        bn = np.linalg.norm(B, axis=1, keepdims=True)
        if np.any(qn == 0.0) or np.any(bn == 0.0):
            raise PreconditionError("cosine metric undefined for zero vectors")
        dist = 1.0 - (Q / qn) @ (B / bn).T
    else:
        s = _check_scale(s)
        ql = 1.0 + Q[:, -1]
        bl = 1.0 + B[:, -1]
        if np.any(ql < SINGULARITY_EPS) or np.any(bl < SINGULARITY_EPS):
            raise PointAtSouthPole("embedded point at -v has no finite original distance")
        dist = np.sqrt(s * s * _pairwise_sqdist(Q, B) / np.outer(ql, bl))

    results = []
    for qi in range(len(queries)):
        order = np.lexsort((base.ids, dist[qi]))[:k]
        results.append(KnnResult(int(queries.ids[qi]), base.ids[order].copy(), dist[qi][order].copy()))
    return results


def recall_at_k(retrieved: list[KnnResult], truth: list[KnnResult], k: int) -> RecallReport:
    """Mean fraction of true neighbors found, per query."""
    if len(retrieved) != len(truth):
        raise PreconditionError(
            f"{len(retrieved)} retrieved result lists vs {len(truth)} truth lists"
        )
    hits = []
    for got, want in zip(retrieved, truth):
        if got.query_id != want.query_id:
            raise PreconditionError(
                f"query ids misaligned: {got.query_id} vs {want.query_id}"
            )
        hits.append(len(set(got.neighbor_ids[:k]) & set(want.neighbor_ids[:k])) / k)
    return RecallReport(k, float(np.mean(hits)), len(retrieved))


def align_mean_to_pole(X: Dataset) -> tuple[Dataset, np.ndarray]:
    """Rotate so the mean vector points along (0, ..., 0, 1).

    Returns the rotated dataset and the orthogonal matrix applied (a single
    Householder reflection, identity when already aligned).
    """
    mu = X.points.mean(axis=0)
    norm = float(np.linalg.norm(mu))
    if norm < 1e-12:
        raise ZeroMean("mean vector vanishes; no alignment direction exists")
    u = mu / norm
    e = np.zeros(X.dim)
    e[-1] = 1.0
    w = u - e
    wn = float(w @ w)
    if wn < 1e-24:
        R = np.eye(X.dim)
    else:
        R = np.eye(X.dim) - 2.0 * np.outer(w, w) / wn
    return X.replace_points(X.points @ R.T), R


def pipeline_embed(X: Dataset, s_policy: float | str = "mean_norm",
                   seed: int = 0) -> tuple[EmbeddedDataset, float]:
    """Mean-center, pick a scale per policy, and embed.

    Policies: a fixed positive number, "mean_norm" (mean vector norm of the
    centered data), or "sweep" (ABID grid sweep).
    """
    X = mean_center(X)
    if isinstance(s_policy, str):
        if s_policy == "mean_norm":
            s = float(np.mean(np.linalg.norm(X.points, axis=1)))
        elif s_policy == "sweep":
            s = sweep_scale(X, seed=seed, recenter=False).best_s
        else:
            raise PreconditionError(f"unknown scale policy {s_policy!r}")
    else:
        s = _check_scale(s_policy)
    return embed_simplified(X, s), s


def pipeline_unembed(X: Dataset, s: float = 1.0) -> tuple[Dataset, list[int]]:
    """Normalize, rotate the mean to the pole, and unembed at scale ``s``.

    Points that land on (or normalize to) the singularity are dropped, never
    clamped; their ids are returned alongside the surviving dataset.
    """
    s = _check_scale(s)
    norms = np.linalg.norm(X.points, axis=1)
    keep = norms > 0.0
    dropped = list(X.ids[~keep])
    if not np.any(keep):
        raise PreconditionError("all points are zero vectors; nothing to unembed")
    unit = Dataset(X.points[keep] / norms[keep, None], X.ids[keep])
    rotated, _ = align_mean_to_pole(unit)
    ok = 1.0 + rotated.points[:, -1] >= SINGULARITY_EPS
    dropped += list(rotated.ids[~ok])
    if not np.any(ok):
        raise PointAtSouthPole("every point lies at the singularity -v")
    survivors = Dataset(rotated.points[ok], rotated.ids[ok])
    return unembed_simplified(survivors, s), dropped
