"""Snapshot sequences: stacked exact-k tensors, dynamic metrics and diagnostics."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .compare import DEFAULT_MAX_ISO_N, _iso_min, _pair_costs
from .errors import HGMError, ParseError
from .graph import Graph, graph_union, parse_edge_list
from .hamming import hc_per_scale
from .reachability import all_pairs_distances, ball_sizes, exact_k_tensor

__all__ = [
    "TemporalTensor",
    "build_temporal",
    "temporal_distance",
    "temporal_diagnostics",
    "energy_step_bound",
    "load_snapshots",
    "split_snapshots",
]

_SEPARATOR = re.compile(r"^---(\s+.*)?$")


@dataclass(frozen=True)
class TemporalTensor:
    """``T`` exact-k tensors over a common vertex set, padded to depth
    ``max_t diam(G_t)``."""

    n: int
    T: int
    depth: int
    graphs: tuple
    distances: tuple
    tensors: tuple

    def slab(self, t):
        """Tensor of snapshot ``t`` (0-based)."""
        return self.tensors[t]

    def energies(self):
        """``(T, depth)`` array of per-snapshot energies."""
        return np.stack([tt.energies() for tt in self.tensors])


def build_temporal(snapshots, allow_disconnected=False):
    snapshots = list(snapshots)
    if not snapshots:
        raise HGMError("need at least one snapshot")
    n = snapshots[0].n
    for i, g in enumerate(snapshots):
        if g.n != n:
            raise HGMError(f"snapshot {i} has {g.n} vertices, expected {n}")
    dms = [all_pairs_distances(g) for g in snapshots]
    depth = max(dm.diameter for dm in dms)
    if depth == 0:
        raise HGMError("no snapshot has a reachable vertex pair")
    tensors = [exact_k_tensor(dm, depth=depth, allow_disconnected=allow_disconnected)
               for dm in dms]
    return TemporalTensor(n=n, T=len(snapshots), depth=depth, graphs=tuple(snapshots),
                          distances=tuple(dms), tensors=tuple(tensors))


def _check_compatible(a, b):
    if a.n != b.n:
        raise HGMError(f"vertex counts differ ({a.n} vs {b.n})")
    if a.T != b.T:
        raise HGMError(f"sequence lengths differ ({a.T} vs {b.T})")


def temporal_distance(a, b, iso=False, max_n=DEFAULT_MAX_ISO_N, normalized=False):
    """Entrywise l1 distance between two temporal tensors.

    ``iso=True`` minimises over one vertex permutation shared by all times.
    ``normalized=True`` divides by ``N (N - 1) D T`` with ``D`` the larger depth.
    """
    _check_compatible(a, b)
    if iso:
        stack_a = np.stack([dm.dist for dm in a.distances])
        stack_b = np.stack([dm.dist for dm in b.distances])
        total = _iso_min(stack_a, stack_b, max_n)
    else:
        total = sum(int(_pair_costs(x.dist, y.dist).sum())
                    for x, y in zip(a.distances, b.distances))
    if not normalized:
        return total
    denom = a.n * (a.n - 1) * max(a.depth, b.depth) * a.T
    return total / denom if denom else 0.0


def hc_history(tt):
    """``(T, N, depth)`` array of per-scale centralities for every snapshot."""
    out = np.zeros((tt.T, tt.n, tt.depth))
    for t, ten in enumerate(tt.tensors):
        for k in range(1, tt.depth + 1):
            out[t, :, k - 1] = hc_per_scale(ten, k).values
    return out


def temporal_diagnostics(tt):
    """Total variation and mean trend of every ``HC^(k)(v)`` over time.

    Returns two ``(N, depth)`` arrays: ``sum_t |dHC|`` and ``sum_t dHC / (T - 1)``.
    """
    if tt.T < 2:
        raise HGMError("diagnostics need at least two snapshots")
    step = np.diff(hc_history(tt), axis=0)
    return np.abs(step).sum(axis=0), step.sum(axis=0) / (tt.T - 1)


def energy_step_bound(tt, t):
    """Energy change between snapshots ``t`` and ``t + 1`` (1-based) against
    ``2 r M_{k-1}^2``, with ``r`` the number of toggled edges and ball sizes
    measured on the union of the two snapshots."""
    if not 1 <= t < tt.T:
        raise HGMError(f"step t={t} must satisfy 1 <= t < T={tt.T}")
    g, h = tt.graphs[t - 1], tt.graphs[t]
    r = len(g.edge_set() ^ h.edge_set())
    e = tt.energies()
    observed = np.abs(e[t] - e[t - 1])
    m = ball_sizes(all_pairs_distances(graph_union(g, h)), tt.depth - 1)
    return observed, 2 * r * m * m


def split_snapshots(text):
    """Split a single file on ``---`` separator lines."""
    chunks, cur = [], []
    for line in text.splitlines():
        if _SEPARATOR.match(line.strip()):
            if cur and any(s.strip() and not s.strip().startswith("#") for s in cur):
                chunks.append(cur)
            cur = []
        else:
            cur.append(line)
    if cur and any(s.strip() and not s.strip().startswith("#") for s in cur):
        chunks.append(cur)
    return chunks


def load_snapshots(path, index_base=0):
    """Read a snapshot sequence from a directory (files in lexicographic order)
    or from one file with ``---`` separators.

    Snapshots without an ``n`` header are widened to the largest vertex count.
    """
    path = Path(path)
    if path.is_dir():
        files = sorted(p for p in path.iterdir() if p.is_file() and not p.name.startswith("."))
        texts = [p.read_text(encoding="utf-8").splitlines() for p in files]
    else:
        texts = split_snapshots(path.read_text(encoding="utf-8"))
    if not texts:
        raise ParseError(f"no snapshots found in {path}")
    graphs = [parse_edge_list(t, index_base=index_base) for t in texts]
    n = max(g.n for g in graphs)
    return [g if g.n == n else Graph.from_edges(n, g.edges()) for g in graphs]
