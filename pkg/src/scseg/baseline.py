"""Two-cluster intensity baseline segmenter.

A deliberately simple comparison point for the evaluation harness: Lloyd's
algorithm with k=2 on raw pixel intensities, one block at a time, with the
minority cluster taken as foreground. It fails in the expected way when
background and foreground intensity ranges overlap.
"""

from __future__ import annotations

import numpy as np

from .image_io import stitch, tile

_MAX_SWEEPS = 100


def kmeans2_block(f, seed: int = 0) -> np.ndarray:
    """Cluster one block's intensities into two groups; minority = foreground.

    Centers start at the block's min and max, which makes the result
    independent of `seed` whenever the block has two distinct values (the
    argument is kept for interface stability). Equal-size clusters resolve
    to the brighter one; constant blocks yield an empty mask.
    """
    f = np.asarray(f, dtype=np.float64)
    shape = f.shape if f.ndim == 2 else (int(np.sqrt(f.size)),) * 2
    values = f.ravel()
    if values.min() == values.max():
        return np.zeros(shape, dtype=bool)
    centers = np.array([values.min(), values.max()])
    assign = np.abs(values[:, None] - centers[None, :]).argmin(axis=1)
    for _ in range(_MAX_SWEEPS):
        for j in (0, 1):
            members = assign == j
            if members.any():
                centers[j] = values[members].mean()
        new_assign = np.abs(values[:, None] - centers[None, :]).argmin(axis=1)
        if np.array_equal(new_assign, assign):
            break
        assign = new_assign
    sizes = np.bincount(assign, minlength=2)
    if sizes[0] == sizes[1]:
        fg_label = int(centers.argmax())
    else:
        fg_label = int(sizes.argmin())
    return (assign == fg_label).reshape(shape)


def kmeans2_image(img, block_size: int = 64, seed: int = 0) -> np.ndarray:
    """Apply the two-cluster baseline block-wise over a full image."""
    grid = tile(np.asarray(img, dtype=np.float64), block_size)
    return stitch(grid, [kmeans2_block(b, seed=seed) for b in grid.blocks])
