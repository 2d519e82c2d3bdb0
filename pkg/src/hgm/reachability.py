"""All-pairs BFS distances and the bit-packed exact-k reachability tensor."""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import DisconnectedGraphError, HGMError

__all__ = [
    "UNREACHABLE",
    "DistanceMatrix",
    "ReachTensor",
    "all_pairs_distances",
    "exact_k_tensor",
    "build_reach_tensor",
    "saturation_check",
    "ball_sizes",
    "dump_tensor",
    "load_tensor",
    "tensor_summary",
]

UNREACHABLE = -1
WORD_BITS = _kernels.WORD_BITS
TENSOR_MAGIC = b"HGM1"

# rows of BFS output materialised at once by the streaming builder
_BLOCK_ROWS = 1024


def _dist_dtype(n):
    return np.int16 if n < np.iinfo(np.int16).max else np.int32


def n_words(n):
    return max(1, -(-n // WORD_BITS))


@dataclass(frozen=True)
class DistanceMatrix:
    """Shortest-path distances; unreachable pairs hold ``UNREACHABLE`` (-1)."""

    dist: np.ndarray
    diameter: int
    connected: bool

    @property
    def n(self):
        return self.dist.shape[0]

    @classmethod
    def from_array(cls, dist):
        dist = np.asarray(dist)
        finite = dist[dist >= 0]
        diameter = int(finite.max()) if finite.size else 0
        connected = bool((dist >= 0).all())
        dist.setflags(write=False)
        return cls(dist=dist, diameter=diameter, connected=connected)


@dataclass(frozen=True)
class ReachTensor:
    """Exact-k reachability tensor with bit-packed rows.

    ``words[k - 1, v]`` is the packed row ``b_v^(k)``; ``row_weights[v, k - 1]``
    is its popcount, i.e. the size of the distance-k sphere around ``v``.
    Scales beyond ``depth`` are implicitly all-zero.
    """

    n: int
    depth: int
    words: np.ndarray
    row_weights: np.ndarray
    diameter: int
    connected: bool
    _dense_cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def n_words(self):
        return self.words.shape[2]

    def _check_scale(self, k):
        if k < 1:
            raise ValueError(f"scale must be >= 1, got {k}")

    def slice_words(self, k):
        """Packed ``(n, n_words)`` slice at scale ``k`` (zeros past ``depth``)."""
        self._check_scale(k)
        if k > self.depth:
            return np.zeros((self.n, self.n_words), dtype=np.uint64)
        return self.words[k - 1]

    def row(self, v, k):
        return self.slice_words(k)[v]

    def weights(self, k):
        self._check_scale(k)
        if k > self.depth:
            return np.zeros(self.n, dtype=np.int64)
        return self.row_weights[:, k - 1]

    def slice_dense(self, k):
        """Boolean ``(n, n)`` matrix ``B^(k)``."""
        w = self.slice_words(k)
        bits = np.unpackbits(w.view(np.uint8), axis=1, bitorder="little")
        return bits[:, : self.n].astype(bool)

    def dense(self):
        """Boolean ``(n, n, depth)`` array, indexed ``[i, j, k - 1]``."""
        if "dense" not in self._dense_cache:
            out = np.zeros((self.n, self.n, self.depth), dtype=bool)
            for k in range(1, self.depth + 1):
                out[:, :, k - 1] = self.slice_dense(k)
            out.setflags(write=False)
            self._dense_cache["dense"] = out
        return self._dense_cache["dense"]

    def energies(self):
        """Ordered-pair counts ``E_k`` for ``k = 1..depth``."""
        return self.row_weights.sum(axis=0)


def _finish(words, n, diameter, connected, depth):
    if depth is None:
        depth = diameter
    if depth < diameter:
        raise ValueError(f"depth {depth} is smaller than the diameter {diameter}")
    nw = n_words(n)
    full = np.zeros((depth, n, nw), dtype=np.uint64)
    full[: len(words)] = words
    weights = np.zeros((n, depth), dtype=np.int64)
    for k in range(len(words)):
        weights[:, k] = _kernels.row_popcounts(full[k])
    full.setflags(write=False)
    weights.setflags(write=False)
    return ReachTensor(n=n, depth=depth, words=full, row_weights=weights,
                       diameter=diameter, connected=connected)


def all_pairs_distances(g):
    """BFS from every source; ``O(N (N + M))`` time.

    Returns a :class:`DistanceMatrix` with ``UNREACHABLE`` for pairs in
    different components.
    """
    if g.n < 1:
        raise HGMError("graph has no vertices")
    out = np.full((g.n, g.n), UNREACHABLE, dtype=_dist_dtype(g.n))
    _kernels.bfs_block(g.indptr, g.indices, np.arange(g.n, dtype=np.int64), out)
    return DistanceMatrix.from_array(out)


def _pack_distance_rows(block, max_k, nw):
    words = np.zeros((max_k, block.shape[0], nw), dtype=np.uint64)
    for k in range(1, max_k + 1):
        _kernels.pack_level(block, k, words[k - 1])
    return words


def _guard(diameter, connected, depth, allow_disconnected):
    if not connected and not allow_disconnected:
        raise DisconnectedGraphError(
            "graph is disconnected; pass allow_disconnected=True to build anyway")
    if diameter == 0 and depth is None:
        raise HGMError("no reachable vertex pairs (graph has no edges)")


def exact_k_tensor(dm, depth=None, allow_disconnected=False):
    """Build the exact-k tensor from a distance matrix.

    Bit ``(v, u)`` of slice ``k`` is set iff ``dist(v, u) == k``. ``depth``
    pads with all-zero slices past the diameter (used when stacking graphs of
    different diameter). Unreachable pairs populate no slice.
    """
    _guard(dm.diameter, dm.connected, depth, allow_disconnected)
    words = _pack_distance_rows(dm.dist, dm.diameter, n_words(dm.n))
    return _finish(words, dm.n, dm.diameter, dm.connected, depth)


def build_reach_tensor(g, depth=None, allow_disconnected=False, keep_distances=False):
    """Stream BFS rows straight into packed slices.

    Only ``_BLOCK_ROWS`` rows of integer distances exist at any time, so peak
    memory is ``D * N^2 / 8`` bytes for the tensor instead of the full integer
    matrix. With ``keep_distances=True`` the full matrix is built instead and
    returned alongside the tensor.
    """
    if keep_distances:
        dm = all_pairs_distances(g)
        return exact_k_tensor(dm, depth, allow_disconnected), dm
    if g.n < 1:
        raise HGMError("graph has no vertices")
    n, nw = g.n, n_words(g.n)
    dtype = _dist_dtype(n)
    slices = []  # list over k of (n, nw) arrays, grown as new distances appear
    diameter, connected = 0, True
    for start in range(0, n, _BLOCK_ROWS):
        sources = np.arange(start, min(n, start + _BLOCK_ROWS), dtype=np.int64)
        block = np.full((len(sources), n), UNREACHABLE, dtype=dtype)
        _kernels.bfs_block(g.indptr, g.indices, sources, block)
        connected = connected and bool((block >= 0).all())
        bmax = int(block.max())
        while len(slices) < bmax:
            slices.append(np.zeros((n, nw), dtype=np.uint64))
        diameter = max(diameter, bmax)
        for k in range(1, bmax + 1):
            _kernels.pack_level(block, k, slices[k - 1][start:start + len(sources)])
    _guard(diameter, connected, depth, allow_disconnected)
    words = np.stack(slices) if slices else np.zeros((0, n, nw), dtype=np.uint64)
    return _finish(words, n, diameter, connected, depth)


def saturation_check(t, k):
    """True iff slice ``k`` has no set bit."""
    if k < 1:
        raise ValueError(f"scale must be >= 1, got {k}")
    return bool(not t.weights(k).any())


def ball_sizes(dm, r_max):
    """``M_r = max_x |{y : dist(x, y) <= r}|`` for ``r = 0..r_max``."""
    counts = np.zeros(r_max + 1, dtype=np.int64)
    for x in range(dm.n):
        row = dm.dist[x]
        hist = np.bincount(row[row >= 0], minlength=r_max + 1)[: r_max + 1]
        np.maximum(counts, np.cumsum(hist), out=counts)
    return counts


def dump_tensor(t, fh):
    """Write the binary dump: magic, then ``n, D, w`` as little-endian u32,
    then slices row-major as little-endian u64 words."""
    fh.write(TENSOR_MAGIC)
    fh.write(struct.pack("<III", t.n, t.depth, WORD_BITS))
    fh.write(np.ascontiguousarray(t.words, dtype="<u8").tobytes())


def load_tensor(fh):
    if fh.read(4) != TENSOR_MAGIC:
        raise HGMError("not an HGM tensor dump (bad magic)")
    n, depth, w = struct.unpack("<III", fh.read(12))
    if w != WORD_BITS:
        raise HGMError(f"unsupported word width {w}")
    nw = n_words(n)
    raw = np.frombuffer(fh.read(depth * n * nw * 8), dtype="<u8")
    words = raw.astype(np.uint64).reshape(depth, n, nw)
    weights = np.stack([_kernels.row_popcounts(words[k]) for k in range(depth)], axis=1) \
        if depth else np.zeros((n, 0), dtype=np.int64)
    nonzero = [k + 1 for k in range(depth) if weights[:, k].any()]
    diameter = max(nonzero) if nonzero else 0
    offdiag = n * (n - 1)
    connected = int(weights.sum()) == offdiag
    return ReachTensor(n=n, depth=depth, words=words, row_weights=weights,
                       diameter=diameter, connected=connected)


def tensor_summary(t):
    return {
        "n": t.n,
        "D": t.depth,
        "row_weights": [t.row_weights[:, k].tolist() for k in range(t.depth)],
    }


def tensor_summary_json(t):
    return json.dumps(tensor_summary(t))
