"""Admissible functionals of distance distributions and dispersion aggregates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np
from scipy.special import logsumexp

from .errors import DisconnectedGraphError
from .hamming import DistanceDistribution, graph_distribution, node_distribution

__all__ = [
    "FunctionalSpec",
    "evaluate",
    "tv_distance",
    "tv_dispersion",
    "tv_dispersion_of",
    "phi_aggregate",
]

KINDS = ("shannon_entropy", "renyi_entropy", "expectation", "cumulant_gf",
         "moment_matrix_radius", "gini", "tv_to_reference")

POWER_TOL = 1e-10
POWER_MAX_ITER = 10_000
_LOG_FLOAT_MAX = math.log(np.finfo(np.float64).max)


@dataclass(frozen=True)
class FunctionalSpec:
    kind: str
    alpha: Optional[float] = None
    f: Optional[Callable] = None
    t: Optional[float] = None
    order: Optional[int] = None
    reference: Optional[DistanceDistribution] = None
    base: float = math.e

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown functional {self.kind!r}; choose from {KINDS}")
        if self.kind == "renyi_entropy":
            if self.alpha is None or self.alpha <= 0 or self.alpha == 1:
                raise ValueError("Renyi entropy needs alpha > 0, alpha != 1")
        if self.kind == "cumulant_gf" and self.t is None:
            raise ValueError("cumulant_gf needs t")
        if self.kind == "moment_matrix_radius" and (self.order is None or self.order < 1):
            raise ValueError("moment matrix order must be >= 1")
        if self.kind == "tv_to_reference" and self.reference is None:
            raise ValueError("tv_to_reference needs a reference distribution")

    @classmethod
    def parse(cls, text, bits=False):
        """Parse CLI forms such as ``shannon``, ``renyi:2``, ``cgf:0.5``, ``moment:3``."""
        base = 2.0 if bits else math.e
        name, _, arg = text.partition(":")
        if name == "shannon":
            return cls("shannon_entropy", base=base)
        if name == "renyi":
            return cls("renyi_entropy", alpha=float(arg), base=base)
        if name == "gini":
            return cls("gini")
        if name in ("mean", "expectation"):
            return cls("expectation")
        if name == "cgf":
            return cls("cumulant_gf", t=float(arg))
        if name == "moment":
            return cls("moment_matrix_radius", order=int(arg))
        if name == "tv_delta0":
            return cls("tv_to_reference", reference=DistanceDistribution((0,), (1,), 1))
        raise ValueError(f"unknown functional {text!r}")


def _spectral_radius(m):
    x = np.ones(m.shape[0]) / math.sqrt(m.shape[0])
    lam = 0.0
    for _ in range(POWER_MAX_ITER):
        y = m @ x
        norm = np.linalg.norm(y)
        if norm == 0:
            return 0.0
        y /= norm
        new = float(y @ m @ y)
        if abs(new - lam) <= POWER_TOL * max(1.0, abs(new)):
            return new
        lam, x = new, y
    return lam


def _gini(d, p):
    mean = float(d @ p)
    if mean == 0:
        return 0.0
    return float(np.abs(d[:, None] - d[None, :]) @ p @ p) / (2 * mean)


def tv_distance(mu, nu):
    """``||mu - nu||_1`` computed exactly."""
    a, b = mu.fractions(), nu.fractions()
    return float(sum(abs(a.get(d, 0) - b.get(d, 0)) for d in set(a) | set(b)))


def evaluate(phi, mu):
    """Evaluate a functional on a distribution. Entropies use ``phi.base``
    (natural log by default) with ``0 log 0 = 0``."""
    d = np.asarray(mu.support, dtype=np.float64)
    p = mu.mass
    kind = phi.kind
    if kind == "shannon_entropy":
        return float(-(p * np.log(p)).sum() / math.log(phi.base)) + 0.0
    if kind == "renyi_entropy":
        return float(math.log((p ** phi.alpha).sum()) / (1 - phi.alpha) / math.log(phi.base)) + 0.0
    if kind == "expectation":
        f = phi.f or (lambda x: x)
        return float(sum(f(x) * q for x, q in zip(mu.support, p)))
    if kind == "cumulant_gf":
        # refuse t where the moment generating sum itself leaves float64 range
        safe = _LOG_FLOAT_MAX / max(float(d.max()), 1.0)
        if phi.t > safe:
            raise OverflowError(f"cumulant GF overflows at t={phi.t}; max safe t is {safe:.6g}")
        return float(logsumexp(phi.t * d, b=p))
    if kind == "moment_matrix_radius":
        idx = np.arange(phi.order + 1)
        powers = d[None, :] ** (idx[:, None] + idx[None, :])[..., None]
        return _spectral_radius(powers @ p)
    if kind == "gini":
        return _gini(d, p)
    if kind == "tv_to_reference":
        return tv_distance(mu, phi.reference)
    raise AssertionError(kind)


def tv_dispersion_of(dists, exact=False):
    """Mean l1 deviation of distributions from their average, and the bound
    ``2 (1 - sum_d mean(d)^2)``.

    Exact rational arithmetic; ``exact=True`` returns :class:`Fraction` values.
    """
    fr = [mu.fractions() for mu in dists]
    n = len(fr)
    support = sorted(set().union(*fr))
    mean = {d: sum(f.get(d, 0) for f in fr) / n for d in support}
    value = sum(abs(f.get(d, 0) - mean[d]) for f in fr for d in support) / n
    bound = 2 * (1 - sum(m * m for m in mean.values()))
    value, bound = Fraction(value), Fraction(bound)
    return (value, bound) if exact else (float(value), float(bound))


def tv_dispersion(t, k, exact=False):
    """TV dispersion ``Psi^(k)`` of the per-vertex distributions at scale ``k``."""
    return tv_dispersion_of([node_distribution(t, v, k) for v in range(t.n)], exact=exact)


def phi_aggregate(t, phi, level="graph", allow_disconnected=False):
    """Average a functional over scales ``1..D``.

    ``level="node"`` returns an array of per-vertex values; ``"graph"``
    returns a scalar built from the unordered-pair graph distributions.
    """
    if not t.connected and not allow_disconnected:
        raise DisconnectedGraphError("scale averaging needs a connected graph")
    D = t.diameter
    if level == "node":
        vals = np.zeros(t.n)
        for k in range(1, D + 1):
            vals += [evaluate(phi, node_distribution(t, v, k)) for v in range(t.n)]
        return vals / D
    if level == "graph":
        return sum(evaluate(phi, graph_distribution(t, k)) for k in range(1, D + 1)) / D
    raise ValueError(f"level must be 'node' or 'graph', got {level!r}")
