"""MinHash sketches of packed rows and the derived Hamming estimate."""

from __future__ import annotations

import struct
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import HGMError

__all__ = [
    "MinHashSignature",
    "mix64",
    "hash_seeds",
    "row_indices",
    "minhash_signature",
    "sketch_rows",
    "estimate_jaccard",
    "exact_jaccard",
    "estimate_hamming",
    "dump_signatures",
    "load_signatures",
]

SKETCH_MAGIC = b"HGMS"
EMPTY = np.iinfo(np.uint64).max

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_C1 = np.uint64(0xBF58476D1CE4E5B9)
_C2 = np.uint64(0x94D049BB133111EB)


def mix64(x):
    """SplitMix64 output function applied elementwise to ``uint64`` input.

    Reference: ``z = x + 0x9E3779B97F4A7C15``;
    ``z = (z ^ z >> 30) * 0xBF58476D1CE4E5B9``;
    ``z = (z ^ z >> 27) * 0x94D049BB133111EB``; return ``z ^ z >> 31``,
    all modulo 2**64.
    """
    with np.errstate(over="ignore"):  # wraparound is intended
        z = np.asarray(x, dtype=np.uint64) + _GOLDEN
        z = (z ^ (z >> np.uint64(30))) * _C1
        z = (z ^ (z >> np.uint64(27))) * _C2
        return z ^ (z >> np.uint64(31))


def hash_seeds(s, seed):
    """``s`` per-function seeds: the SplitMix64 stream started at ``seed``."""
    with np.errstate(over="ignore"):
        steps = np.arange(s, dtype=np.uint64) * _GOLDEN
        return mix64(np.uint64(seed & 0xFFFFFFFFFFFFFFFF) + steps)


@lru_cache(maxsize=8)
def _hash_table(s, seed, n):
    """``(s, n)`` table whose entry ``(i, j)`` is ``mix64(j ^ seed_i)``."""
    seeds = hash_seeds(s, seed)
    table = mix64(np.arange(n, dtype=np.uint64)[None, :] ^ seeds[:, None])
    table.setflags(write=False)
    return table


@dataclass(frozen=True)
class MinHashSignature:
    s: int
    seed: int
    minima: np.ndarray  # (s,) uint64; all EMPTY for an empty row
    weight: int

    @property
    def empty(self):
        return self.weight == 0

    @property
    def seeds(self):
        return hash_seeds(self.s, self.seed)

    def __eq__(self, other):
        if not isinstance(other, MinHashSignature):
            return NotImplemented
        return (self.s, self.seed, self.weight) == (other.s, other.seed, other.weight) \
            and np.array_equal(self.minima, other.minima)

    def __hash__(self):
        return hash((self.s, self.seed, self.weight, self.minima.tobytes()))


def row_indices(row, n_bits=None):
    """Set-bit positions of a packed little-endian row."""
    row = np.ascontiguousarray(row, dtype=np.uint64)
    bits = np.unpackbits(row.view(np.uint8), bitorder="little")
    if n_bits is not None:
        bits = bits[:n_bits]
    return np.flatnonzero(bits)


def _check_params(s):
    if s < 1:
        raise ValueError("sketch size must be >= 1")


def minhash_signature(row, s, seed, n_bits=None):
    """Sketch one packed row: ``s`` minima of independent hashes of its set bits."""
    _check_params(s)
    row = np.atleast_1d(np.asarray(row, dtype=np.uint64))
    n = n_bits if n_bits is not None else 64 * row.shape[0]
    if n < 1:
        raise ValueError("row must have at least one bit")
    idx = row_indices(row, n)
    if not idx.size:
        return MinHashSignature(s, seed, np.full(s, EMPTY, dtype=np.uint64), 0)
    minima = _hash_table(s, seed, n)[:, idx].min(axis=1)
    return MinHashSignature(s, seed, minima, int(idx.size))


def sketch_rows(words, s, seed, n_bits):
    """Signatures for every row of a packed ``(rows, n_words)`` slice."""
    return [minhash_signature(r, s, seed, n_bits) for r in words]


def _check_pair(a, b):
    if a.s != b.s or a.seed != b.seed:
        raise HGMError(f"sketch parameters differ: (s={a.s}, seed={a.seed}) "
                       f"vs (s={b.s}, seed={b.seed})")


def estimate_jaccard(a, b):
    """Fraction of matching minima; 1 if both rows are empty, 0 if one is."""
    _check_pair(a, b)
    if a.empty or b.empty:
        return 1.0 if a.empty and b.empty else 0.0
    return float(np.count_nonzero(a.minima == b.minima)) / a.s


def exact_jaccard(ra, rb):
    """Jaccard index of two packed rows (1 for two empty rows)."""
    ra = np.asarray(ra, dtype=np.uint64)
    rb = np.asarray(rb, dtype=np.uint64)
    union = int(np.bitwise_count(ra | rb).sum())
    if union == 0:
        return 1.0
    return int(np.bitwise_count(ra & rb).sum()) / union


def estimate_hamming(a, b):
    """Hamming estimate ``w_a + w_b - 2 I`` with ``I = J / (1 + J) (w_a + w_b)``.

    ``I`` is clamped to ``[0, min(w_a, w_b)]``. The ``J / (1 + J)`` map is
    nonlinear, so the estimate carries a small bias at small ``s``.
    """
    j = estimate_jaccard(a, b)
    total = a.weight + b.weight
    inter = min(max(j / (1.0 + j) * total, 0.0), float(min(a.weight, b.weight)))
    return total - 2.0 * inter


def dump_signatures(sigs, fh):
    """Binary dump: magic, ``<IQI`` (s, seed, rows), then ``rows`` u32 weights
    and ``rows * s`` u64 minima, all little-endian. Empty rows store
    ``2**64 - 1`` in every slot."""
    if not sigs:
        raise HGMError("nothing to dump")
    s, seed = sigs[0].s, sigs[0].seed
    for sig in sigs:
        _check_pair(sigs[0], sig)
    fh.write(SKETCH_MAGIC)
    fh.write(struct.pack("<IQI", s, seed & 0xFFFFFFFFFFFFFFFF, len(sigs)))
    fh.write(np.array([g.weight for g in sigs], dtype="<u4").tobytes())
    fh.write(np.stack([g.minima for g in sigs]).astype("<u8").tobytes())


def load_signatures(fh):
    if fh.read(4) != SKETCH_MAGIC:
        raise HGMError("not an HGM sketch dump (bad magic)")
    s, seed, rows = struct.unpack("<IQI", fh.read(16))
    weights = np.frombuffer(fh.read(4 * rows), dtype="<u4")
    minima = np.frombuffer(fh.read(8 * rows * s), dtype="<u8").astype(np.uint64).reshape(rows, s)
    return [MinHashSignature(s, seed, minima[i], int(weights[i])) for i in range(rows)]
