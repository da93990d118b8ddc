"""Screen-content image segmentation by smooth + group-sparse decomposition.

Splits mixed-content images into a smooth background (a few low-frequency
DCT atoms per block) and a sparse, connected foreground (text/graphics),
and ships the evaluation harness and synthetic-data generator used to score
the segmenter.
"""

from .admm import (
    Decomposition,
    DivergenceError,
    SolverParams,
    SolverState,
    admm_step,
    group_norm,
    init_state,
    objective,
    solve,
)
from .baseline import kmeans2_block, kmeans2_image
from .dct import BasisMatrix, build_basis, dct_atom, zigzag_order
from .evaluation import (
    ManifestEntry,
    MaskMetrics,
    confusion,
    evaluate_dataset,
    load_manifest,
    metrics,
)
from .image_io import (
    BlockGrid,
    MalformedHeaderError,
    PnmError,
    TruncatedDataError,
    UnsupportedFormatError,
    load_gray,
    load_mask,
    save_gray,
    save_mask,
    stitch,
    tile,
)
from .prox import block_soft, group_soft, soft
from .segmentation import (
    BackgroundFitError,
    SegmentationConfig,
    fill_background,
    reconstruct_layers,
    segment_block,
    segment_image,
)
from .synth import SynthSpec, gen_block, write_dataset

__version__ = "0.1.0"

__all__ = [
    "BackgroundFitError",
    "BasisMatrix",
    "BlockGrid",
    "Decomposition",
    "DivergenceError",
    "MalformedHeaderError",
    "ManifestEntry",
    "MaskMetrics",
    "PnmError",
    "SegmentationConfig",
    "SolverParams",
    "SolverState",
    "SynthSpec",
    "TruncatedDataError",
    "UnsupportedFormatError",
    "admm_step",
    "block_soft",
    "build_basis",
    "confusion",
    "dct_atom",
    "evaluate_dataset",
    "fill_background",
    "gen_block",
    "group_norm",
    "group_soft",
    "init_state",
    "kmeans2_block",
    "kmeans2_image",
    "load_gray",
    "load_manifest",
    "load_mask",
    "metrics",
    "objective",
    "reconstruct_layers",
    "save_gray",
    "save_mask",
    "segment_block",
    "segment_image",
    "soft",
    "solve",
    "stitch",
    "tile",
    "write_dataset",
    "zigzag_order",
]
