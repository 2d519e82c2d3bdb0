"""Per-scale classical MDS and permutation-invariant tensor fingerprints."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DisconnectedGraphError
from .hamming import pairwise_hamming

__all__ = [
    "MdsResult",
    "Fingerprint",
    "pairwise_distance_matrix",
    "classical_mds",
    "per_scale_energies",
    "unfold",
    "tensor_fingerprint",
]

# relative cutoff for eigen- and singular values
SPECTRAL_RTOL = 1e-9


@dataclass(frozen=True)
class MdsResult:
    coordinates: np.ndarray
    eigenvalues: np.ndarray
    explained_variance_total: float
    negative_count: int
    negative_mass: float
    scale: object = None

    @property
    def dim(self):
        return self.coordinates.shape[1]

    def squared_distances(self):
        x = self.coordinates
        sq = (x * x).sum(axis=1)
        return sq[:, None] + sq[None, :] - 2 * x @ x.T


@dataclass(frozen=True)
class Fingerprint:
    sigma1: np.ndarray
    sigma2: np.ndarray
    sigma3: np.ndarray
    energies: np.ndarray
    wiener: float

    def isclose(self, other, atol=1e-9):
        """Equal energies and singular values within ``atol`` (scaled by the
        largest value when that exceeds 1)."""
        if not np.array_equal(self.energies, other.energies):
            return False
        for a, b in ((self.sigma1, other.sigma1), (self.sigma2, other.sigma2),
                     (self.sigma3, other.sigma3)):
            if a.shape != b.shape:
                return False
            scale = max(1.0, float(a.max(initial=0.0)))
            if not np.allclose(a, b, rtol=0.0, atol=atol * scale):
                return False
        return True

    def differs(self, other, atol=1e-9):
        return not self.isclose(other, atol=atol)

    def to_dict(self):
        return {"sigma1": self.sigma1.tolist(), "sigma2": self.sigma2.tolist(),
                "sigma3": self.sigma3.tolist(), "energies": self.energies.tolist(),
                "wiener": self.wiener}


def pairwise_distance_matrix(t, k):
    """Per-scale Hamming matrix ``D^(k)`` (symmetric, zero diagonal)."""
    return pairwise_hamming(t, k)


def classical_mds(dmat, scale=None, rtol=SPECTRAL_RTOL):
    """Classical MDS of a matrix whose entries are already squared distances.

    The matrix is double-centred as given (no elementwise squaring), which is
    exact for Hamming distances between binary rows. Eigenvalues above
    ``rtol`` times the largest magnitude are kept; negative ones are only
    counted.
    """
    d = np.asarray(dmat, dtype=np.float64)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError("distance matrix must be square")
    if not np.array_equal(d, d.T):
        raise ValueError("distance matrix must be symmetric")
    n = d.shape[0]
    j = np.eye(n) - 1.0 / n
    gram = -0.5 * j @ d @ j
    gram = (gram + gram.T) / 2
    vals, vecs = np.linalg.eigh(gram)
    vals, vecs = vals[::-1], vecs[:, ::-1]
    top = float(np.abs(vals).max()) if n else 0.0
    cut = rtol * top
    keep = vals > cut
    neg = vals < -cut
    coords = vecs[:, keep] * np.sqrt(vals[keep])
    return MdsResult(coordinates=coords, eigenvalues=vals[keep],
                     explained_variance_total=float(vals[keep].sum()),
                     negative_count=int(neg.sum()),
                     negative_mass=float(-vals[neg].sum()) + 0.0, scale=scale)


def per_scale_energies(t):
    """Energies ``E_k`` (ordered pairs at distance ``k``) and the Wiener index
    ``sum_k k E_k / 2``."""
    if not t.connected:
        raise DisconnectedGraphError("energies need a connected graph")
    e = t.energies()
    k = np.arange(1, t.depth + 1)
    return e, int((k * e).sum()) // 2


def unfold(t, mode):
    """Dense mode-``mode`` unfolding with Kolda-Bader column ordering.

    Mode 1 is ``N x ND`` with column ``j + N (k - 1)``, mode 2 is ``N x ND``
    with column ``i + N (k - 1)``, mode 3 is ``D x N^2`` with column
    ``i + N j``.
    """
    x = t.dense()  # [i, j, k]
    n, D = t.n, t.depth
    if mode == 1:
        return x.transpose(0, 2, 1).reshape(n, D * n)
    if mode == 2:
        return x.transpose(1, 2, 0).reshape(n, D * n)
    if mode == 3:
        return x.transpose(2, 1, 0).reshape(D, n * n)
    raise ValueError("mode must be 1, 2 or 3")


def _trim(s):
    s = np.sort(np.asarray(s, dtype=np.float64))[::-1]
    if not s.size:
        return s
    return s[s > SPECTRAL_RTOL * s[0]]


def tensor_fingerprint(t):
    """Singular values of the three unfoldings plus energies and Wiener index.

    The mode-3 Gram matrix is ``diag(E_k)`` because slices are disjoint, so
    its spectrum is read off the energies exactly.
    """
    energies, wiener = per_scale_energies(t)
    s1 = np.linalg.svd(unfold(t, 1).astype(np.float64), compute_uv=False)
    s2 = np.linalg.svd(unfold(t, 2).astype(np.float64), compute_uv=False)
    s3 = np.sqrt(energies.astype(np.float64))
    return Fingerprint(_trim(s1), _trim(s2), _trim(s3), energies, wiener)
