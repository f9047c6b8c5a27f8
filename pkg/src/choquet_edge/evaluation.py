"""Displacement-tolerant edge-map evaluation.

Candidate and ground-truth edge pixels are put in one-to-one correspondence
by a maximum-cardinality matching on the graph of pairs within the spatial
tolerance; precision, recall and the F-measure follow from the matched
counts.  Per image, the ground truth with the best F score is kept; per
dataset, triplets are averaged componentwise (mean of F, not F of means).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching
from scipy.spatial import cKDTree

__all__ = [
    "MatchResult",
    "EvalTriplet",
    "tolerance_radius",
    "match_edges",
    "f_measure",
    "triplet_from_match",
    "evaluate_image",
    "evaluate_dataset",
]


@dataclass(frozen=True)
class MatchResult:
    """Confusion counts plus the matched candidate/ground-truth pixel pairs."""

    tp: int
    fp: int
    fn: int
    pairs: tuple = field(default=(), repr=False)


@dataclass(frozen=True)
class EvalTriplet:
    precision: float
    recall: float
    f: float
    alpha: float = 0.5


def tolerance_radius(rows: int, cols: int) -> float:
    """Matching tolerance: 2.5% of the image diagonal, unrounded."""
    if rows < 1 or cols < 1:
        raise ValueError("image dimensions must be positive")
    return 0.025 * math.hypot(rows, cols)


def _edge_points(edge_map) -> np.ndarray:
    arr = np.asarray(edge_map)
    if arr.ndim != 2 or arr.dtype != bool:
        raise ValueError("edge maps must be 2-D boolean arrays")
    return np.argwhere(arr)


def match_edges(candidate, gt, tolerance: float) -> MatchResult:
    """Optimally match candidate to ground-truth pixels within ``tolerance``.

    Builds the bipartite graph of pixel pairs with Euclidean distance at
    most ``tolerance`` and computes a maximum-cardinality matching on it,
    so the confusion counts are the best achievable for this tolerance.
    """
    if not tolerance > 0:
        raise ValueError("tolerance must be positive")
    cand_pts = _edge_points(candidate)
    gt_pts = _edge_points(gt)
    if np.asarray(candidate).shape != np.asarray(gt).shape:
        raise ValueError("candidate and ground truth dimensions differ")
    n_cand, n_gt = len(cand_pts), len(gt_pts)
    if n_cand == 0 or n_gt == 0:
        return MatchResult(tp=0, fp=n_cand, fn=n_gt)

    neighbors = cKDTree(gt_pts).query_ball_point(cand_pts, r=tolerance)
    indptr = np.zeros(n_cand + 1, dtype=np.int64)
    indptr[1:] = np.cumsum([len(nb) for nb in neighbors])
    indices = np.fromiter((j for nb in neighbors for j in nb),
                          dtype=np.int64, count=indptr[-1])
    graph = csr_matrix((np.ones(indptr[-1], dtype=np.int8), indices, indptr),
                       shape=(n_cand, n_gt))
    assignment = maximum_bipartite_matching(graph, perm_type="column")

    matched = assignment >= 0
    pairs = tuple((tuple(cand_pts[i]), tuple(gt_pts[assignment[i]]))
                  for i in np.flatnonzero(matched))
    tp = int(matched.sum())
    return MatchResult(tp=tp, fp=n_cand - tp, fn=n_gt - tp, pairs=pairs)


def f_measure(precision: float, recall: float, alpha: float = 0.5) -> float:
    """Weighted F-measure ``P*R / (alpha*P + (1-alpha)*R)``; 0 when undefined."""
    if not 0.0 <= precision <= 1.0 or not 0.0 <= recall <= 1.0:
        raise ValueError("precision and recall must lie in [0,1]")
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0,1)")
    denominator = alpha * precision + (1.0 - alpha) * recall
    if denominator == 0.0:
        return 0.0
    return precision * recall / denominator


def triplet_from_match(result: MatchResult, alpha: float = 0.5) -> EvalTriplet:
    """Precision/recall/F triplet from confusion counts.

    Precision is 0 with no candidate pixels and recall is 0 with no ground
    truth pixels, keeping the triplet total.
    """
    n_cand = result.tp + result.fp
    n_gt = result.tp + result.fn
    precision = result.tp / n_cand if n_cand else 0.0
    recall = result.tp / n_gt if n_gt else 0.0
    return EvalTriplet(precision=precision, recall=recall,
                       f=f_measure(precision, recall, alpha), alpha=alpha)


def evaluate_image(candidate, gts, tolerance: float | None = None,
                   alpha: float = 0.5) -> EvalTriplet:
    """Score a candidate against several ground truths, keeping the best F.

    ``tolerance`` defaults to the 2.5%-of-diagonal rule for the candidate's
    dimensions.
    """
    gts = list(gts)
    if not gts:
        raise ValueError("at least one ground truth is required")
    if tolerance is None:
        tolerance = tolerance_radius(*np.asarray(candidate).shape)
    best = None
    for gt in gts:
        triplet = triplet_from_match(match_edges(candidate, gt, tolerance), alpha)
        if best is None or triplet.f > best.f:
            best = triplet
    return best


def evaluate_dataset(triplets) -> EvalTriplet:
    """Componentwise arithmetic mean of per-image triplets."""
    triplets = list(triplets)
    if not triplets:
        raise ValueError("cannot average an empty result set")
    alphas = {t.alpha for t in triplets}
    if len(alphas) > 1:
        raise ValueError("triplets mix different alpha values")
    return EvalTriplet(
        precision=float(np.mean([t.precision for t in triplets])),
        recall=float(np.mean([t.recall for t in triplets])),
        f=float(np.mean([t.f for t in triplets])),
        alpha=alphas.pop(),
    )
