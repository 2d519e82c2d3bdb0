"""Graph family generators and closed-form oracles for canonical families.

Random families draw from numpy's PCG64 (``numpy.random.default_rng(seed)``),
so a seed reproduces the same graph on any platform.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .graph import Graph

__all__ = [
    "FamilySpec",
    "generate",
    "complete",
    "star",
    "cycle",
    "path",
    "complete_bipartite",
    "hypercube",
    "petersen",
    "grid",
    "binary_tree",
    "clique_chain",
    "erdos_renyi",
    "barabasi_albert",
    "watts_strogatz",
    "analytic_oracle",
    "ORACLES",
]


def complete(n):
    _positive(n, "n")
    return Graph.from_edges(n, list(itertools.combinations(range(n), 2)))


def star(n):
    """Centre 0 joined to leaves ``1..n-1``."""
    _positive(n, "n", 2)
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def cycle(n):
    _positive(n, "n", 3)
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    _positive(n, "n")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(m, n):
    """Parts ``0..m-1`` and ``m..m+n-1``."""
    _positive(m, "m")
    _positive(n, "n")
    return Graph.from_edges(m + n, [(i, m + j) for i in range(m) for j in range(n)])


def hypercube(d):
    """Vertex ``x`` is the bitstring of its id; edges join ids differing in one bit."""
    _positive(d, "dimension")
    n = 1 << d
    return Graph.from_edges(n, [(x, x ^ (1 << b)) for x in range(n) for b in range(d)
                                if x < x ^ (1 << b)])


def petersen():
    """Outer 5-cycle ``0..4``, inner pentagram ``5..9``, spokes ``i - i+5``."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph.from_edges(10, outer + inner + spokes)


def grid(m, n):
    """``m x n`` lattice; vertex ``(r, c)`` has id ``r * n + c``."""
    _positive(m, "m")
    _positive(n, "n")
    edges = [(r * n + c, r * n + c + 1) for r in range(m) for c in range(n - 1)]
    edges += [(r * n + c, (r + 1) * n + c) for r in range(m - 1) for c in range(n)]
    return Graph.from_edges(m * n, edges)


def binary_tree(h):
    """Complete binary tree of height ``h`` in heap order (children of ``i``
    are ``2i+1`` and ``2i+2``)."""
    if h < 0:
        raise ValueError("height must be >= 0")
    n = (1 << (h + 1)) - 1
    return Graph.from_edges(n, [((i - 1) // 2, i) for i in range(1, n)])


def clique_chain(sizes):
    """Disjoint cliques, consecutive ones bridged between their lowest ids."""
    sizes = [int(s) for s in sizes]
    if not sizes or min(sizes) < 1:
        raise ValueError("clique sizes must be >= 1")
    starts = np.concatenate([[0], np.cumsum(sizes)[:-1]]).tolist()
    edges = []
    for s0, sz in zip(starts, sizes):
        edges += list(itertools.combinations(range(s0, s0 + sz), 2))
    edges += [(a, b) for a, b in zip(starts[:-1], starts[1:])]
    return Graph.from_edges(sum(sizes), edges)


def erdos_renyi(n, p, seed=None):
    """G(n, p) by geometric skipping over the ``n (n - 1) / 2`` candidate pairs."""
    _positive(n, "n")
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    total = n * (n - 1) // 2
    if p == 0 or total == 0:
        return Graph.from_edges(n, [])
    if p == 1:
        return complete(n)
    rng = np.random.default_rng(seed)
    picks = []
    pos = -1
    while True:
        # draw skips in chunks; expected count is p * total
        skips = rng.geometric(p, size=max(16, int(1.2 * p * (total - pos)) + 16))
        cand = pos + np.cumsum(skips)
        picks.append(cand[cand < total])
        if cand[-1] >= total:
            break
        pos = int(cand[-1])
    idx = np.concatenate(picks)
    # pair index -> (u, v) with u < v in row-major upper-triangle order
    row_start = np.arange(n, dtype=np.int64) * (2 * n - np.arange(n) - 1) // 2
    u = np.searchsorted(row_start, idx, side="right") - 1
    v = idx - row_start[u] + u + 1
    return Graph.from_edges(n, np.column_stack([u, v]))


def barabasi_albert(n, m, seed=None):
    """Preferential attachment from an ``(m + 1)``-clique; each new vertex
    links to ``m`` distinct targets drawn proportionally to degree."""
    if m < 1 or n < m + 1:
        raise ValueError("need m >= 1 and n >= m + 1")
    rng = np.random.default_rng(seed)
    edges = list(itertools.combinations(range(m + 1), 2))
    repeated = [v for e in edges for v in e]  # vertex listed once per incident edge
    for v in range(m + 1, n):
        targets = set()
        while len(targets) < m:
            targets.add(repeated[int(rng.integers(len(repeated)))])
        for u in sorted(targets):
            edges.append((u, v))
            repeated += [u, v]
    return Graph.from_edges(n, edges)


def watts_strogatz(n, d, beta, seed=None, return_rewired=False):
    """Ring lattice of even degree ``d``; each clockwise edge has its far end
    rewired with probability ``beta`` to a uniform vertex, resampling on a
    loop or duplicate."""
    if d < 2 or d % 2 or d >= n:
        raise ValueError("d must be even with 2 <= d < n")
    if not 0 <= beta <= 1:
        raise ValueError("beta must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    adj = [set() for _ in range(n)]
    for i in range(n):
        for j in range(1, d // 2 + 1):
            adj[i].add((i + j) % n)
            adj[(i + j) % n].add(i)
    rewired = 0
    for j in range(1, d // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            if rng.random() >= beta:
                continue
            if len(adj[u]) >= n - 1:
                continue  # no free target
            w = int(rng.integers(n))
            while w == u or w in adj[u]:
                w = int(rng.integers(n))
            adj[u].discard(v)
            adj[v].discard(u)
            adj[u].add(w)
            adj[w].add(u)
            rewired += 1
    g = Graph.from_edges(n, [(u, v) for u in range(n) for v in adj[u] if u < v])
    return (g, rewired) if return_rewired else g


def _positive(x, name, low=1):
    if int(x) != x or x < low:
        raise ValueError(f"{name} must be an integer >= {low}, got {x}")


_FAMILIES = {
    "complete": (complete, ("n",)),
    "star": (star, ("n",)),
    "cycle": (cycle, ("n",)),
    "path": (path, ("n",)),
    "complete_bipartite": (complete_bipartite, ("m", "n")),
    "hypercube": (hypercube, ("n",)),
    "petersen": (petersen, ()),
    "grid": (grid, ("m", "n")),
    "binary_tree": (binary_tree, ("h",)),
    "clique_chain": (clique_chain, ("sizes",)),
    "er": (erdos_renyi, ("n", "p", "seed")),
    "ba": (barabasi_albert, ("n", "m", "seed")),
    "ws": (watts_strogatz, ("n", "d", "beta", "seed")),
}


@dataclass(frozen=True)
class FamilySpec:
    """A family name plus its parameters, e.g. ``FamilySpec("ws", n=1000, d=4,
    beta=0.01, seed=42)``."""

    family: str
    params: dict = field(default_factory=dict)

    def __init__(self, family, **params):
        if family not in _FAMILIES:
            raise ValueError(f"unknown family {family!r}; choose from {sorted(_FAMILIES)}")
        names = _FAMILIES[family][1]
        extra = set(params) - set(names)
        if extra:
            raise ValueError(f"unexpected parameters for {family}: {sorted(extra)}")
        missing = [p for p in names if p not in params and p != "seed"]
        if missing:
            raise ValueError(f"missing parameters for {family}: {missing}")
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "params", dict(params))

    def __hash__(self):
        return hash((self.family, tuple(sorted((k, str(v)) for k, v in self.params.items()))))


def generate(spec):
    fn, names = _FAMILIES[spec.family]
    return fn(*[spec.params.get(p) for p in names])


# --- closed-form oracles -----------------------------------------------------

def _star_graph_distribution(p, k=1, pairs="ordered"):
    n = p["n"]
    if k != 1:
        raise ValueError("star oracle covers k=1")
    # ordered pairs: (n-1)(n-2) leaf-leaf at 0, 2(n-1) centre-leaf at n
    return {0: Fraction(n - 2, n), n: Fraction(2, n)}


def _star_hc(p, k=1):
    n = p["n"]
    if k != 1:
        raise ValueError("star oracle covers k=1")
    return {"center": Fraction(n), "leaf": Fraction(n, n - 1)}


def _star_node_distribution(p, k=1):
    n = p["n"]
    return {"center": {n: Fraction(1)},
            "leaf": {0: Fraction(n - 2, n - 1), n: Fraction(1, n - 1)}}


def _complete_hc(p, k=1):
    return Fraction(2) if k == 1 else Fraction(0)


def _complete_graph_distribution(p, k=1, pairs="unordered"):
    return {2: Fraction(1)} if k == 1 else {0: Fraction(1)}


def _bipartite_hamming(p, k=1, same_part=False):
    """Per-scale Hamming between two vertices of K_{m,n}."""
    m, n = p["m"], p["n"]
    if k == 1:
        return 0 if same_part else m + n
    if k == 2:
        # a vertex's distance-2 shell is its own part minus itself
        return 2 if same_part else m + n - 2
    return 0


def _bipartite_graph_distribution(p, k=1, pairs="ordered"):
    m, n = p["m"], p["n"]
    tot = (m + n) * (m + n - 1)
    same = Fraction(m * (m - 1) + n * (n - 1), tot)
    if k == 1:
        return {0: same, m + n: 1 - same}
    if k == 2:
        return {2: same, m + n - 2: 1 - same}
    return {0: Fraction(1)}


def _hypercube_hamming(p, k=1, h=1):
    """Per-scale Hamming between two vertices at bit distance ``h``.

    A vertex at distance ``k`` from both flips exactly ``h / 2`` of the ``h``
    differing bits and ``k - h / 2`` of the others, so shells overlap only
    for even ``h``.
    """
    n = p["n"]
    overlap = 0
    if h % 2 == 0 and k >= h // 2:
        overlap = comb(h, h // 2) * comb(n - h, k - h // 2)
    return 2 * (comb(n, k) - overlap)


def _hypercube_shell(p, k=1):
    return comb(p["n"], k)


def _petersen_shell(p, k=1):
    return {0: 1, 1: 3, 2: 6}.get(k, 0)


def _petersen_energy(p, k=1):
    return 10 * _petersen_shell(p, k)


def _vt_energy(p, k=1):
    """``N n_k`` for the vertex-transitive families covered here."""
    fam = p["_family"]
    if fam == "hypercube":
        return (1 << p["n"]) * comb(p["n"], k)
    if fam == "petersen":
        return _petersen_energy(p, k)
    if fam == "complete":
        return p["n"] * (p["n"] - 1) if k == 1 else 0
    if fam == "cycle":
        n = p["n"]
        shell = 0 if k > n // 2 else (1 if 2 * k == n else 2)
        return n * shell
    raise KeyError(fam)


ORACLES = {
    ("star", "graph_distribution"): _star_graph_distribution,
    ("star", "hc_per_scale"): _star_hc,
    ("star", "node_distribution"): _star_node_distribution,
    ("complete", "hc_per_scale"): _complete_hc,
    ("complete", "graph_distribution"): _complete_graph_distribution,
    ("complete", "energy"): _vt_energy,
    ("complete_bipartite", "pairwise_hamming"): _bipartite_hamming,
    ("complete_bipartite", "graph_distribution"): _bipartite_graph_distribution,
    ("hypercube", "pairwise_hamming"): _hypercube_hamming,
    ("hypercube", "shell_size"): _hypercube_shell,
    ("hypercube", "energy"): _vt_energy,
    ("petersen", "shell_size"): _petersen_shell,
    ("petersen", "energy"): _vt_energy,
    ("cycle", "energy"): _vt_energy,
}


def analytic_oracle(spec, quantity, **kwargs):
    """Exact value of ``quantity`` for ``spec`` from its closed form.

    Distributions come back as ``{distance: Fraction}``; counts as ints.
    """
    fn = ORACLES.get((spec.family, quantity))
    if fn is None:
        supported = ", ".join(f"{f}/{q}" for f, q in sorted(ORACLES))
        raise ValueError(f"no oracle for {spec.family}/{quantity}; supported: {supported}")
    return fn({**spec.params, "_family": spec.family}, **kwargs)
