"""invsphere: spherical embeddings of Euclidean data via sphere inversion.

Embeds d-dimensional data onto the unit d-sphere (and back), converts between
hyperspherical caps on the embedded sphere and hyperballs or axis-aligned
spheroids in the original space, translates inner products and distances
between the two spaces in closed form, and selects the embedding scale by
maximizing angle-based intrinsic dimensionality.
"""

from .data import Dataset, EmbeddedDataset
from .duality import (
    AxisAlignedSpheroid,
    Ball,
    Cap,
    ball_contains,
    ball_to_cap,
    cap_contains,
    cap_to_ball,
    cap_to_spheroid,
    sample_cap_boundary,
)
from .embedding import (
    EmbeddingParams,
    embed,
    embed_inversion_sphere,
    embed_plane,
    embed_simplified,
    unembed,
    unembed_simplified,
)
from .errors import (
    AllCosinesZero,
    AxisUndefined,
    CapContainsSouthPole,
    DegenerateCap,
    DimensionMismatch,
    EmptyDataset,
    InputFormatError,
    InvalidDirection,
    InvalidScale,
    InvsphereError,
    PointAtSouthPole,
    PreconditionError,
    SingularityError,
    TooFewPoints,
    ZeroEmbeddedCosine,
    ZeroMean,
    ZeroVector,
)
from .harness import (
    KnnResult,
    RecallReport,
    align_mean_to_pole,
    brute_force_knn,
    generate,
    pipeline_embed,
    pipeline_unembed,
    recall_at_k,
)
from .io import read_dataset, write_dataset
from .metrics import (
    MetricContext,
    cosine_ratio,
    dot_embedded,
    dot_original,
    hemisphere_min_scale,
    sqdist_embedded,
    sqdist_original,
)
from .scale import AbidEstimate, SweepResult, abid, mean_center, sweep_scale

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
