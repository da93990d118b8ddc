"""Whole-image pipeline: per-block solves, mask extraction, background fill."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .admm import Decomposition, SolverParams, solve
from .dct import BasisMatrix, build_basis
from .image_io import BlockGrid, stitch, tile


class BackgroundFitError(ValueError):
    """Too few or too poorly spread background pixels to fit the smooth model."""


@dataclass
class SegmentationConfig:
    """Block size, dictionary size, solver settings, and binarization threshold.

    The defaults (64-pixel blocks, 10 atoms, solver defaults, threshold of
    one gray level) are the reference operating point; the threshold only
    exists to kill numerical dust, since l1 shrinkage drives background
    pixels of the sparse layer to exact zero.
    """

    block_size: int = 64
    k_bases: int = 10
    solver: SolverParams = field(default_factory=SolverParams)
    fg_threshold: float = 1.0

    def __post_init__(self):
        if self.fg_threshold < 0:
            raise ValueError(f"fg_threshold must be >= 0, got {self.fg_threshold}")
        if not 1 <= self.k_bases <= self.block_size**2:
            raise ValueError(f"k_bases {self.k_bases} out of range for block {self.block_size}")


def segment_block(f, basis: BasisMatrix, cfg: SegmentationConfig):
    """Decompose one block and binarize its sparse layer.

    Returns (mask, decomposition); the mask is an (n, n) boolean array, True
    where the sparse layer exceeds cfg.fg_threshold in magnitude.
    """
    dec = solve(f, basis, cfg.solver)
    mask = np.abs(dec.s).reshape(basis.n, basis.n) > cfg.fg_threshold
    return mask, dec


def segment_blocks(img, cfg: SegmentationConfig | None = None, workers: int = 1):
    """Tile an image and segment every block.

    Returns (grid, basis, results) where results is a list of
    (mask, decomposition) pairs in grid order. Blocks are independent, so
    workers > 1 dispatches them to a thread pool; results are identical
    regardless of scheduling.
    """
    if cfg is None:
        cfg = SegmentationConfig()
    img = np.asarray(img, dtype=np.float64)
    grid = tile(img, cfg.block_size)
    basis = build_basis(cfg.block_size, cfg.k_bases)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda b: segment_block(b, basis, cfg), grid.blocks))
    else:
        results = [segment_block(b, basis, cfg) for b in grid.blocks]
    return grid, basis, results


def segment_image(img, cfg: SegmentationConfig | None = None, workers: int = 1) -> np.ndarray:
    """Segment a full image; returns an (h, w) boolean foreground mask."""
    grid, _, results = segment_blocks(img, cfg, workers=workers)
    return stitch(grid, [mask for mask, _ in results])


def fill_background(f, mask, basis: BasisMatrix) -> np.ndarray:
    """Replace masked pixels with a smooth least-squares prediction.

    Fits the basis coefficients to the unmasked (background) pixels only and
    evaluates the fit inside the mask; background pixels pass through
    unchanged. Raises BackgroundFitError when fewer than k background pixels
    remain or they do not determine the coefficients.
    """
    n, k = basis.n, basis.k
    f = np.asarray(f, dtype=np.float64).reshape(n, n)
    mask = np.asarray(mask, dtype=bool).reshape(n, n)
    background = ~mask.ravel()
    count = int(background.sum())
    if count < k:
        raise BackgroundFitError(f"{count} background pixels cannot determine {k} coefficients")
    sub = basis.atoms[background]
    if np.linalg.matrix_rank(sub) < k:
        raise BackgroundFitError("background pixels are rank-deficient; mask covers too much")
    gram = cho_factor(sub.T @ sub)
    coef = cho_solve(gram, sub.T @ f.ravel()[background])
    out = f.copy()
    out[mask] = (basis.atoms @ coef).reshape(n, n)[mask]
    return out


def assemble_layers(img, grid: BlockGrid, basis: BasisMatrix, results):
    """Build (background, foreground, mask) images from per-block results."""
    img = np.asarray(img, dtype=np.float64)
    masks = [mask for mask, _ in results]
    filled = [fill_background(block, mask, basis) for block, mask in zip(grid.blocks, masks)]
    mask = stitch(grid, masks)
    background = stitch(grid, filled)
    foreground = np.where(mask, img, 0.0)
    return background, foreground, mask


def reconstruct_layers(img, cfg: SegmentationConfig | None = None, workers: int = 1):
    """Segment an image and split it into smooth background and foreground layers.

    Returns (background, foreground, mask): the background keeps original
    values outside the mask and fills masked pixels with the per-block smooth
    fit; the foreground keeps original values inside the mask and is zero
    elsewhere.
    """
    grid, basis, results = segment_blocks(img, cfg, workers=workers)
    return assemble_layers(img, grid, basis, results)
