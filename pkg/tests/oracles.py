"""Independent reference computations used by the tests.

Nothing here calls the library's solver. The group norm is evaluated from an
explicit list of overlapping groups, and the block objective is minimized by
a batched normalized-subgradient method on the coefficient vector alone (the
sparse layer eliminated through the exact-decomposition constraint). Both
exist so solver results can be checked against an unrelated code path.
"""

from __future__ import annotations

import numpy as np


def overlapping_groups(n: int) -> list:
    """Index lists for every row group and every column group of an n-by-n block."""
    groups = []
    for i in range(n):
        groups.append(np.arange(i * n, (i + 1) * n))
    for j in range(n):
        groups.append(np.arange(j, n * n, n))
    return groups


def group_norm_reference(s_flat: np.ndarray, n: int) -> float:
    """Sum of l2 norms over the explicit overlapping group list."""
    return float(sum(np.linalg.norm(s_flat[g]) for g in overlapping_groups(n)))


def block_objective(coef, s_flat, n: int, lambda1: float, lambda2: float) -> float:
    return float(
        np.abs(coef).sum()
        + lambda1 * np.abs(s_flat).sum()
        + lambda2 * group_norm_reference(np.asarray(s_flat, dtype=np.float64), n)
    )


def subgradient_best_objective(
    blocks: np.ndarray,
    atoms: np.ndarray,
    lambda1: float,
    lambda2: float,
    steps: int = 100_000,
    scale: float = 2.0,
    check_every: int = 50,
) -> np.ndarray:
    """Minimize the constraint-eliminated objective per block by subgradient descent.

    blocks has shape (batch, n*n) and atoms (n*n, k). Starting from the
    least-squares coefficients, takes `steps` normalized subgradient steps
    with a diminishing scale/sqrt(t+1) schedule and returns the best exact
    objective value seen for each block.
    """
    blocks = np.asarray(blocks, dtype=np.float64)
    batch, n2 = blocks.shape
    n = int(round(np.sqrt(n2)))
    assert n * n == n2

    def exact(coef):
        sparse = blocks - coef @ atoms.T
        sm = sparse.reshape(batch, n, n)
        return (
            np.abs(coef).sum(axis=1)
            + lambda1 * np.abs(sparse).sum(axis=1)
            + lambda2 * (np.linalg.norm(sm, axis=2).sum(axis=1) + np.linalg.norm(sm, axis=1).sum(axis=1))
        )

    coef = blocks @ atoms
    best = exact(coef)
    for t in range(steps):
        sparse = blocks - coef @ atoms.T
        sm = sparse.reshape(batch, n, n)
        row_norm = np.linalg.norm(sm, axis=2, keepdims=True)
        col_norm = np.linalg.norm(sm, axis=1, keepdims=True)
        direction = np.divide(sm, row_norm, out=np.zeros_like(sm), where=row_norm > 0)
        direction += np.divide(sm, col_norm, out=np.zeros_like(sm), where=col_norm > 0)
        grad = np.sign(coef) - (lambda1 * np.sign(sparse) + lambda2 * direction.reshape(batch, n2)) @ atoms
        grad_norm = np.linalg.norm(grad, axis=1, keepdims=True)
        step = scale / np.sqrt(t + 1.0)
        coef = coef - step * np.divide(grad, grad_norm, out=np.zeros_like(grad), where=grad_norm > 0)
        if t % check_every == 0 or t == steps - 1:
            best = np.minimum(best, exact(coef))
    return best
