"""Hamming kernels, Hamming centralities and distance distributions.

All counts are exact integers; :class:`DistanceDistribution` keeps integer
counts and converts to floating point only when ``mass`` is read.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import DisconnectedGraphError

__all__ = [
    "DistanceDistribution",
    "CentralityVector",
    "hamming_rows",
    "pairwise_hamming",
    "hc_raw_sums",
    "hc_per_scale",
    "scale_weights",
    "hc_multiscale",
    "tensorial_distance",
    "node_distribution",
    "graph_distribution",
    "hc_tensor_centrality",
    "cross_scale_distance",
    "mean_pairwise_from_columns",
]


@dataclass(frozen=True)
class DistanceDistribution:
    """Empirical PMF over integer Hamming distances."""

    support: tuple
    counts: tuple
    total_count: int

    @classmethod
    def from_values(cls, values, repeat=1):
        vals, cnts = np.unique(np.asarray(values, dtype=np.int64), return_counts=True)
        cnts = cnts * repeat
        return cls(tuple(int(v) for v in vals), tuple(int(c) for c in cnts), int(cnts.sum()))

    @classmethod
    def from_pmf(cls, pmf):
        """Build from ``{distance: probability}`` with rational probabilities."""
        fr = {int(d): Fraction(p) for d, p in pmf.items() if p}
        denom = 1
        for p in fr.values():
            denom = denom * p.denominator // np.gcd(denom, p.denominator)
        items = sorted(fr.items())
        counts = tuple(int(p * denom) for _, p in items)
        return cls(tuple(d for d, _ in items), counts, sum(counts))

    @property
    def mass(self):
        return np.asarray(self.counts, dtype=np.float64) / self.total_count

    def fractions(self):
        return {d: Fraction(c, self.total_count) for d, c in zip(self.support, self.counts)}

    def mean(self, exact=False):
        m = Fraction(sum(d * c for d, c in zip(self.support, self.counts)), self.total_count)
        return m if exact else float(m)

    def is_point_mass(self):
        return len(self.support) == 1

    def __eq__(self, other):
        if not isinstance(other, DistanceDistribution):
            return NotImplemented
        return self.fractions() == other.fractions()

    def __hash__(self):
        return hash(tuple(sorted(self.fractions().items())))

    def to_dict(self):
        return {"support": list(self.support), "mass": self.mass.tolist(),
                "count": self.total_count}


@dataclass(frozen=True)
class CentralityVector:
    """Per-vertex centrality values; ``scale`` is an int, a weight tuple or ``"tensor"``."""

    values: np.ndarray
    scale: object

    def to_dict(self):
        scale = list(self.scale) if isinstance(self.scale, tuple) else self.scale
        return {"scale": scale, "values": np.asarray(self.values).tolist()}


def hamming_rows(a, b):
    """XOR-popcount distance between two packed rows."""
    a = np.asarray(a, dtype=np.uint64)
    b = np.asarray(b, dtype=np.uint64)
    if a.shape != b.shape:
        raise ValueError(f"row length mismatch: {a.shape} vs {b.shape}")
    return int(np.bitwise_count(a ^ b).sum())


def pairwise_hamming(t, k):
    """``(n, n)`` matrix of per-scale Hamming distances ``D^(k)``."""
    return _kernels.hamming_matrix(np.ascontiguousarray(t.slice_words(k)))


def _require_pairs(t):
    if t.n < 2:
        raise ValueError("need at least two vertices")


def hc_raw_sums(t, k):
    """``sum_{u != v} Ham(b_v, b_u)`` for every ``v`` via column sums.

    Uses ``sum_j s_j + [B (N 1 - 2 s)]_v`` where ``s`` are the column sums of
    ``B^(k)``; slices are symmetric, so ``s`` equals the cached row weights.
    """
    s = t.weights(k)
    c = t.n - 2 * s
    return int(s.sum()) + _kernels.masked_row_sums(np.ascontiguousarray(t.slice_words(k)), c)


def hc_per_scale(t, k):
    """Hamming centrality at a single scale, ``HC^(k)``."""
    _require_pairs(t)
    return CentralityVector(hc_raw_sums(t, k) / (t.n - 1), int(k))


def scale_weights(depth, K=None, weights=None, alpha=None):
    """Resolve a weight spec into a normalized vector of length ``depth``.

    Exactly one of ``weights`` (explicit, nonnegative), ``alpha`` (geometric
    ``alpha**(k-1)``) may be given; otherwise weights are uniform over
    ``k = 1..K`` (``K`` defaults to ``depth``).
    """
    if weights is not None and alpha is not None:
        raise ValueError("give either explicit weights or alpha, not both")
    if K is None:
        K = depth if weights is None else len(weights)
    if K < 1 or K > depth:
        raise ValueError(f"K={K} must lie in 1..{depth}")
    if weights is not None:
        w = np.asarray(weights, dtype=np.float64)
        if len(w) > depth:
            raise ValueError(f"{len(w)} weights given for depth {depth}")
        if (w < 0).any():
            raise ValueError("weights must be nonnegative")
        if w.sum() <= 0:
            raise ValueError("weights sum to zero")
    elif alpha is not None:
        if not 0 < alpha < 1:
            raise ValueError("alpha must lie in (0, 1)")
        w = alpha ** np.arange(K, dtype=np.float64)
    else:
        w = np.ones(K)
    out = np.zeros(depth)
    out[: len(w)] = w
    return out / out.sum()


def hc_multiscale(t, K=None, weights=None, alpha=None):
    """Convex combination ``sum_k w_k HC^(k)``; see :func:`scale_weights`."""
    _require_pairs(t)
    w = scale_weights(t.depth, K=K, weights=weights, alpha=alpha)
    total = np.zeros(t.n)
    for k in np.flatnonzero(w) + 1:
        total += w[k - 1] * hc_raw_sums(t, int(k))
    return CentralityVector(total / (t.n - 1), tuple(float(x) for x in w))


def tensorial_distance(t, v, u, mode="sum", alpha=None):
    """Multi-scale distance between two vertices.

    ``mode="sum"`` gives the integer ``sum_k Ham``; ``"normalized"`` divides
    by the depth; ``"geometric"`` uses normalized ``alpha**(k-1)`` weights.
    ``v == u`` returns 0.
    """
    if v == u:
        return 0
    per_k = np.bitwise_count(t.words[:, v, :] ^ t.words[:, u, :]).sum(axis=1)
    if mode == "sum":
        return int(per_k.sum())
    if mode == "normalized":
        return float(per_k.sum()) / t.depth
    if mode == "geometric":
        w = scale_weights(t.depth, alpha=alpha)
        return float(w @ per_k)
    raise ValueError(f"unknown mode {mode!r}")


def _distance_matrix(t, k):
    if k == "all":
        total = np.zeros((t.n, t.n), dtype=np.int64)
        for kk in range(1, t.depth + 1):
            total += pairwise_hamming(t, kk)
        return total
    return pairwise_hamming(t, int(k))


def node_distribution(t, v, k):
    """PMF of distances from ``v`` to every other vertex at scale ``k``
    (an int, or ``"all"`` for the summed tensorial distance)."""
    _require_pairs(t)
    if k == "all":
        vals = np.bitwise_count(t.words[:, v : v + 1, :] ^ t.words).sum(axis=(0, 2))
    else:
        w = t.slice_words(int(k))
        vals = np.bitwise_count(w[v] ^ w).sum(axis=1)
    return DistanceDistribution.from_values(np.delete(vals, v))


def graph_distribution(t, k, pairs="unordered"):
    """PMF of pairwise distances over all vertex pairs.

    ``pairs="unordered"`` counts each ``{u, v}`` once, ``"ordered"`` counts
    both orientations; the probabilities agree, only ``total_count`` differs.
    """
    _require_pairs(t)
    if pairs not in ("unordered", "ordered"):
        raise ValueError(f"pairs must be 'ordered' or 'unordered', got {pairs!r}")
    dmat = _distance_matrix(t, k)
    iu = np.triu_indices(t.n, 1)
    return DistanceDistribution.from_values(dmat[iu], repeat=2 if pairs == "ordered" else 1)


def hc_tensor_centrality(t, norm="frobenius", allow_disconnected=False):
    """Deviation of each vertex's ``N x D`` slab from the mean slab.

    With ``s_jk`` the column sums, the mean slab is ``s / N``. For a binary
    slab, ``sum (b - m)^2 = sum_b (1 - 2m) + sum m^2`` and
    ``sum |b - m| = sum m + sum_b (1 - 2m)``, so both norms reduce to one
    masked row sum per scale and stay exact in integers.
    """
    if not t.connected and not allow_disconnected:
        raise DisconnectedGraphError("tensor centrality needs a connected graph")
    n = t.n
    s = t.row_weights  # (n, D): column sums by symmetry
    if norm == "frobenius":
        # n^2 * sum (b - s/n)^2
        acc = np.full(n, int((s * s).sum()), dtype=np.int64)
        for k in range(1, t.depth + 1):
            acc += _kernels.masked_row_sums(np.ascontiguousarray(t.slice_words(k)),
                                            n * n - 2 * n * s[:, k - 1])
        return CentralityVector(np.sqrt(acc.astype(np.float64)) / n, "tensor")
    if norm == "l1":
        # n * sum |b - s/n|
        acc = np.full(n, int(s.sum()), dtype=np.int64)
        for k in range(1, t.depth + 1):
            acc += _kernels.masked_row_sums(np.ascontiguousarray(t.slice_words(k)),
                                            n - 2 * s[:, k - 1])
        return CentralityVector(acc / n, "tensor")
    raise ValueError(f"unknown norm {norm!r}; use 'frobenius' or 'l1'")


def cross_scale_distance(t, v, u, k, l):
    """``Ham(b_v^(k), b_u^(l))``, computed on demand."""
    return hamming_rows(t.slice_words(k)[v], t.slice_words(l)[u])


def mean_pairwise_from_columns(t, k, exact=False):
    """Mean unordered-pair Hamming distance at scale ``k`` from column sums:
    ``2 / (N (N - 1)) * sum_j s_j (N - s_j)``."""
    _require_pairs(t)
    s = t.weights(k)
    n = t.n
    val = Fraction(2 * int((s * (n - s)).sum()), n * (n - 1))
    return val if exact else float(val)
