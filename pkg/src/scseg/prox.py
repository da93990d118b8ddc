"""Shrinkage operators used by the block solver."""

from __future__ import annotations

import numpy as np


def soft(x, lam: float) -> np.ndarray:
    """Element-wise soft threshold: sign(x) * max(|x| - lam, 0)."""
    if lam < 0:
        raise ValueError(f"threshold must be nonnegative, got {lam}")
    x = np.asarray(x, dtype=np.float64)
    return np.sign(x) * np.maximum(np.abs(x) - lam, 0.0)


def block_soft(x, lam: float) -> np.ndarray:
    """Shrink a whole vector's magnitude by lam; zero at or below lam.

    Returns (1 - lam/||x||) x when ||x|| > lam, else the zero vector.
    On length-1 input this reduces to the scalar soft threshold.
    """
    if lam < 0:
        raise ValueError(f"threshold must be nonnegative, got {lam}")
    x = np.asarray(x, dtype=np.float64)
    norm = np.linalg.norm(x)
    if norm <= lam:
        return np.zeros_like(x)
    return (1.0 - lam / norm) * x


def group_soft(a: np.ndarray, lam: float, axis: int) -> np.ndarray:
    """block_soft applied independently to every 1-D slice along `axis`."""
    if lam < 0:
        raise ValueError(f"threshold must be nonnegative, got {lam}")
    a = np.asarray(a, dtype=np.float64)
    norms = np.linalg.norm(a, axis=axis, keepdims=True)
    scale = np.where(norms > lam, 1.0 - lam / np.where(norms > 0, norms, 1.0), 0.0)
    return a * scale
