"""Graph-to-graph tensor metrics and perturbation bounds."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import HGMError
from .graph import graph_union, is_connected, toggle_edge
from .reachability import UNREACHABLE, all_pairs_distances, ball_sizes, exact_k_tensor

__all__ = [
    "ComparisonResult",
    "EdgeFlipResult",
    "GedBoundResult",
    "tensor_distance",
    "distance_matrix_l1",
    "iso_distance",
    "edge_flip_bound",
    "ged_bound",
    "flip_ball_bound",
    "degree_flip_bound",
]

DEFAULT_MAX_ISO_N = 9
_PERM_BATCH = 4096


@dataclass(frozen=True)
class ComparisonResult:
    d_ten: int
    d_ten_normalized: float
    disagreeing_pairs: int
    slices_path_used: bool
    depth: int = 0

    def to_dict(self):
        return {"d_ten": self.d_ten, "d_ten_normalized": self.d_ten_normalized,
                "disagreeing_pairs": self.disagreeing_pairs}


class EdgeFlipResult(NamedTuple):
    observed: int
    bound: int
    degree_bound: float


class GedBoundResult(NamedTuple):
    observed: int
    bound: int
    toggles: int


def _check_same_n(g, h):
    if g.n != h.n:
        raise HGMError(f"graphs have different vertex counts ({g.n} vs {h.n})")


def _pair_costs(a, b):
    """Tensor l1 contribution of each ordered pair given the two distances.

    A pair reachable in both graphs at different distances flips two bits;
    a pair reachable in only one graph flips one.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    return (a != b) * (2 - (a == UNREACHABLE) - (b == UNREACHABLE))


def distance_matrix_l1(da, db):
    """``(d_ten, disagreeing ordered pairs)`` from two distance arrays."""
    cost = _pair_costs(da, db)
    return int(cost.sum()), int(np.count_nonzero(cost))


def _slice_l1(ta, tb, depth):
    total = 0
    for k in range(1, depth + 1):
        total += int(np.bitwise_count(ta.slice_words(k) ^ tb.slice_words(k)).sum())
    return total


def tensor_distance(g, h, check_slices=True):
    """Entrywise l1 distance between the exact-k tensors of two labelled graphs.

    Computed from the distance matrices; with ``check_slices`` the bit-sliced
    XOR path is evaluated too and must agree. Tensors are compared at depth
    ``max(diam G, diam H)`` with missing slices taken as zero.
    """
    _check_same_n(g, h)
    dg, dh = all_pairs_distances(g), all_pairs_distances(h)
    d_ten, pairs = distance_matrix_l1(dg.dist, dh.dist)
    depth = max(dg.diameter, dh.diameter)
    if check_slices and depth > 0:
        tg = exact_k_tensor(dg, depth=depth, allow_disconnected=True)
        th = exact_k_tensor(dh, depth=depth, allow_disconnected=True)
        via_slices = _slice_l1(tg, th, depth)
        if via_slices != d_ten:
            raise AssertionError(f"slice path {via_slices} != distance path {d_ten}")
    denom = g.n * (g.n - 1) * depth
    return ComparisonResult(d_ten=d_ten, d_ten_normalized=d_ten / denom if denom else 0.0,
                            disagreeing_pairs=pairs, slices_path_used=check_slices and depth > 0,
                            depth=depth)


def _iso_min(stack_g, stack_h, max_n):
    """Min over one shared vertex permutation of the summed pair costs.

    ``stack_g`` and ``stack_h`` are ``(T, N, N)`` distance arrays.
    """
    n = stack_g.shape[1]
    if n > max_n:
        raise HGMError(f"N={n} exceeds max_n={max_n}: exponential cost guard; "
                       "raise --max-iso-n explicitly")
    best = None
    perms = itertools.permutations(range(n))
    while True:
        batch = np.array(list(itertools.islice(perms, _PERM_BATCH)), dtype=np.intp)
        if not batch.size:
            break
        rows, cols = batch[:, :, None], batch[:, None, :]
        cost = np.zeros(len(batch), dtype=np.int64)
        for a, b in zip(stack_g, stack_h):
            cost += _pair_costs(a[None], b[rows, cols]).sum(axis=(1, 2))
        low = int(cost.min())
        best = low if best is None else min(best, low)
        if best == 0:
            break
    return best if best is not None else 0


def iso_distance(g, h, max_n=DEFAULT_MAX_ISO_N):
    """Exact orbit distance: minimum tensor l1 over all relabellings of ``h``."""
    _check_same_n(g, h)
    return _iso_min(all_pairs_distances(g).dist[None], all_pairs_distances(h).dist[None], max_n)


def flip_ball_bound(union_dm, depth, toggles=1):
    """``2 r sum_{k=1..depth} M_{k-1}^2`` with ball sizes from ``union_dm``."""
    if depth < 1:
        return 0
    m = ball_sizes(union_dm, depth - 1)
    return 2 * toggles * int((m * m).sum())


def degree_flip_bound(max_degree, depth):
    """Ball-size bound written through the maximum degree alone."""
    k = np.arange(1, depth + 1, dtype=np.float64)
    if max_degree >= 3:
        delta = float(max_degree)
        return float(2 * (delta / (delta - 2)) ** 2 * ((delta - 1) ** (2 * (k - 1))).sum())
    return float(2 * ((2 * (k - 1) + 1) ** 2).sum())


def edge_flip_bound(g, edge, allow_disconnected=False):
    """Observed tensor change from toggling one edge, against the ball-size
    bound and its degree-only relaxation.

    Ball sizes and degrees are measured on the graph that contains the edge.
    """
    u, v = edge
    h = toggle_edge(g, u, v)
    if not allow_disconnected:
        if not (is_connected(g) and is_connected(h)):
            raise HGMError("edge toggle leaves a disconnected graph; "
                           "pass allow_disconnected=True")
    res = tensor_distance(g, h, check_slices=False)
    union = g if g.has_edge(u, v) else h
    bound = flip_ball_bound(all_pairs_distances(union), res.depth)
    deg = int(union.degree().max()) if union.n else 0
    return EdgeFlipResult(res.d_ten, bound, degree_flip_bound(deg, res.depth))


def ged_bound(g, h):
    """Tensor distance against ``2 r sum_k M_{k-1}(G u H)^2`` where ``r`` is
    the number of edge toggles separating the two graphs."""
    _check_same_n(g, h)
    r = len(g.edge_set() ^ h.edge_set())
    res = tensor_distance(g, h, check_slices=False)
    return GedBoundResult(res.d_ten, flip_ball_bound(all_pairs_distances(graph_union(g, h)),
                                                     res.depth, r), r)

