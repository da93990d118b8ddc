"""Low-frequency 2D DCT dictionary for modeling smooth image blocks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class BasisMatrix:
    """Orthonormal 2D DCT atoms, one per column, lowest frequencies first.

    `atoms` has shape (n*n, k); column j is the atom for frequency pair
    `freq_pairs[j]`, flattened in C order to match image vectorization.
    """

    n: int
    k: int
    atoms: np.ndarray
    freq_pairs: tuple


def zigzag_order(n: int, k: int) -> list:
    """First k frequency pairs of the zig-zag walk over the n-by-n plane.

    Starts at (0, 0) and steps to (0, 1) first; anti-diagonal sweeps
    alternate direction, so u + v is non-decreasing along the output.
    """
    if not 1 <= k <= n * n:
        raise ValueError(f"k must be in [1, {n * n}], got {k}")
    order = []
    for d in range(2 * n - 1):
        lo = max(0, d - n + 1)
        hi = min(d, n - 1)
        sweep = range(lo, hi + 1) if d % 2 == 1 else range(hi, lo - 1, -1)
        for u in sweep:
            order.append((u, d - u))
            if len(order) == k:
                return order
    return order


def dct_atom(u: int, v: int, n: int) -> np.ndarray:
    """Orthonormal DCT-II atom for vertical frequency u and horizontal frequency v.

    Entry at grid position (r, c) is c(u) c(v) cos(pi u (2r+1) / 2n)
    cos(pi v (2c+1) / 2n) with c(0) = sqrt(1/n) and c(.) = sqrt(2/n)
    otherwise; the n-by-n grid is flattened row-major.
    """
    if not (0 <= u < n and 0 <= v < n):
        raise ValueError(f"frequency ({u}, {v}) out of range for n={n}")
    cu = np.sqrt(1.0 / n) if u == 0 else np.sqrt(2.0 / n)
    cv = np.sqrt(1.0 / n) if v == 0 else np.sqrt(2.0 / n)
    grid = np.arange(n)
    rows = np.cos(np.pi * u * (2 * grid + 1) / (2 * n))
    cols = np.cos(np.pi * v * (2 * grid + 1) / (2 * n))
    return (cu * cv) * np.outer(rows, cols).ravel()


def build_basis(n: int, k: int) -> BasisMatrix:
    """Stack the first k zig-zag atoms into an (n*n, k) orthonormal matrix."""
    pairs = zigzag_order(n, k)
    atoms = np.column_stack([dct_atom(u, v, n) for u, v in pairs])
    return BasisMatrix(n=n, k=k, atoms=atoms, freq_pairs=tuple(pairs))
