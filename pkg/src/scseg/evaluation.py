"""Pixel-level segmentation metrics and dataset evaluation.

Foreground pixels count as positives. A dataset is a TSV manifest with one
`image<TAB>mask[<TAB>label]` entry per line (`#` starts a comment); relative
paths are resolved against the manifest's directory. Reports carry both
micro aggregates (confusion counts pooled before computing ratios) and
macro aggregates (per-entry ratios averaged).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .baseline import kmeans2_image
from .image_io import PnmError, load_gray, load_mask
from .segmentation import SegmentationConfig, segment_image

SEGMENTERS = ("proposed", "kmeans2")


@dataclass(frozen=True)
class MaskMetrics:
    """Confusion counts and the derived precision/recall/F1 ratios."""

    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class ManifestEntry:
    image_path: str
    mask_path: str
    label: str | None = None


def confusion(pred, truth) -> tuple:
    """Count (tp, fp, fn) between two boolean masks of equal shape."""
    pred = np.asarray(pred, dtype=bool)
    truth = np.asarray(truth, dtype=bool)
    if pred.shape != truth.shape:
        raise ValueError(f"shape mismatch: prediction {pred.shape} vs truth {truth.shape}")
    tp = int((pred & truth).sum())
    fp = int((pred & ~truth).sum())
    fn = int((~pred & truth).sum())
    return tp, fp, fn


def metrics(tp: int, fp: int, fn: int) -> MaskMetrics:
    """Precision, recall, and F1 from confusion counts.

    Degenerate cases: with no predictions, precision is 1 when the truth is
    also empty (nothing to find, nothing claimed) and 0 otherwise; recall is
    handled symmetrically. F1 is the harmonic mean, 0 whenever precision and
    recall are both 0.
    """
    if min(tp, fp, fn) < 0:
        raise ValueError("confusion counts must be nonnegative")
    if tp + fp > 0:
        precision = tp / (tp + fp)
    else:
        precision = 1.0 if tp + fn == 0 else 0.0
    if tp + fn > 0:
        recall = tp / (tp + fn)
    else:
        recall = 1.0 if tp + fp == 0 else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return MaskMetrics(tp=tp, fp=fp, fn=fn, precision=precision, recall=recall, f1=f1)


def _resolve(base: str, path: str) -> str:
    return path if os.path.isabs(path) else os.path.join(base, path)


def load_manifest(path) -> list:
    """Parse a dataset manifest into entries with resolved file paths."""
    base = os.path.dirname(os.path.abspath(os.fspath(path)))
    entries = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = [p.strip() for p in line.split("\t")]
            if len(parts) not in (2, 3) or not parts[0] or not parts[1]:
                raise ValueError(f"{path}:{lineno}: expected image<TAB>mask[<TAB>label]")
            label = parts[2] if len(parts) == 3 else None
            entries.append(ManifestEntry(_resolve(base, parts[0]), _resolve(base, parts[1]), label))
    return entries


def _metrics_dict(m: MaskMetrics) -> dict:
    return {
        "tp": m.tp,
        "fp": m.fp,
        "fn": m.fn,
        "precision": m.precision,
        "recall": m.recall,
        "f1": m.f1,
    }


def evaluate_dataset(
    entries,
    segmenter: str = "proposed",
    cfg: SegmentationConfig | None = None,
    workers: int = 1,
) -> dict:
    """Segment every dataset entry and score it against its ground truth.

    Returns a JSON-ready report: per-entry counts and ratios (sorted by image
    path), micro and macro aggregates, and a list of entries that could not
    be read (those are skipped, not fatal). Raises ValueError for an empty
    manifest or when no entry is readable.
    """
    if segmenter not in SEGMENTERS:
        raise ValueError(f"unknown segmenter {segmenter!r}; expected one of {SEGMENTERS}")
    if not entries:
        raise ValueError("empty manifest")
    if cfg is None:
        cfg = SegmentationConfig()

    rows = []
    errors = []
    for entry in sorted(entries, key=lambda e: e.image_path):
        try:
            img = load_gray(entry.image_path)
            truth = load_mask(entry.mask_path)
            if truth.shape != img.shape:
                raise ValueError(f"mask shape {truth.shape} != image shape {img.shape}")
            if segmenter == "proposed":
                pred = segment_image(img, cfg, workers=workers)
            else:
                pred = kmeans2_image(img, block_size=cfg.block_size)
            m = metrics(*confusion(pred, truth))
            rows.append({"path": entry.image_path, **_metrics_dict(m)})
        except (PnmError, OSError, ValueError) as err:
            errors.append({"path": entry.image_path, "error": str(err)})
    if not rows:
        raise ValueError("no readable entries in manifest")

    micro = metrics(
        sum(r["tp"] for r in rows),
        sum(r["fp"] for r in rows),
        sum(r["fn"] for r in rows),
    )
    macro = {
        "precision": float(np.mean([r["precision"] for r in rows])),
        "recall": float(np.mean([r["recall"] for r in rows])),
        "f1": float(np.mean([r["f1"] for r in rows])),
    }
    return {"entries": rows, "micro": _metrics_dict(micro), "macro": macro, "errors": errors}
