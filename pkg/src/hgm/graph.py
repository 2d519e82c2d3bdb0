"""Simple undirected graphs: representation, edge-list I/O and components."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import GraphValidationError, ParseError

__all__ = [
    "Graph",
    "parse_edge_list",
    "read_edge_list",
    "serialize_edge_list",
    "connected_components",
    "is_connected",
    "toggle_edge",
    "permute_graph",
    "graph_union",
]


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    Adjacency is kept in CSR form (``indptr``, ``indices``) with every
    neighbor list sorted. Both arrays are read-only, so a Graph can be
    shared between threads.
    """

    __slots__ = ("n", "m", "indptr", "indices")

    def __init__(self, n, indptr, indices):
        indptr = np.asarray(indptr, dtype=np.int64)
        indices = np.asarray(indices, dtype=np.int64)
        indptr.setflags(write=False)
        indices.setflags(write=False)
        self.n = int(n)
        self.m = len(indices) // 2
        self.indptr = indptr
        self.indices = indices

    @classmethod
    def from_edges(cls, n, edges):
        """Build a graph from an iterable of ``(u, v)`` pairs.

        Duplicate edges (in either orientation) collapse to one. Self-loops
        and ids outside ``0..n-1`` raise :class:`GraphValidationError`.
        """
        n = int(n)
        if n < 0:
            raise GraphValidationError("vertex count must be non-negative")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                         dtype=np.int64).reshape(-1, 2)
        if arr.size:
            if arr.min() < 0:
                raise GraphValidationError("negative vertex id")
            if arr.max() >= n:
                raise GraphValidationError(f"vertex id {int(arr.max())} out of range for n={n}")
            loops = arr[:, 0] == arr[:, 1]
            if loops.any():
                v = int(arr[loops][0, 0])
                raise GraphValidationError(f"self-loop at vertex {v}")
        lo = np.minimum(arr[:, 0], arr[:, 1])
        hi = np.maximum(arr[:, 0], arr[:, 1])
        keys = np.unique(lo * max(n, 1) + hi)
        lo, hi = keys // max(n, 1), keys % max(n, 1)
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(n, indptr, dst)

    def degree(self, v=None):
        deg = np.diff(self.indptr)
        return deg if v is None else int(deg[v])

    def neighbors(self, v):
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    @property
    def adjacency(self):
        """Per-vertex sorted neighbor lists."""
        return [self.neighbors(v).tolist() for v in range(self.n)]

    def edges(self):
        """``(m, 2)`` array of edges with ``u < v``, sorted lexicographically."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))
        keep = src < self.indices
        return np.column_stack([src[keep], self.indices[keep]])

    def edge_set(self):
        return {(int(u), int(v)) for u, v in self.edges()}

    def has_edge(self, u, v):
        nbrs = self.neighbors(u)
        i = np.searchsorted(nbrs, v)
        return bool(i < len(nbrs) and nbrs[i] == v)

    def adjacency_matrix(self, dtype=np.int64):
        a = np.zeros((self.n, self.n), dtype=dtype)
        e = self.edges()
        a[e[:, 0], e[:, 1]] = 1
        a[e[:, 1], e[:, 0]] = 1
        return a

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n
                and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices))

    def __hash__(self):
        return hash((self.n, self.indices.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def parse_edge_list(text, index_base=0):
    """Parse whitespace-separated ``u v`` lines into a :class:`Graph`.

    Blank lines and lines starting with ``#`` are skipped. An optional
    ``n <N>`` line declares the vertex count, which is the only way to
    introduce isolated vertices; otherwise ``n`` is the largest id plus one.

    Parameters
    ----------
    text : str or iterable of str
        Edge-list content.
    index_base : {0, 1}
        Ids in the input are shifted down by this amount.
    """
    if index_base not in (0, 1):
        raise ValueError("index_base must be 0 or 1")
    lines = text.splitlines() if isinstance(text, str) else list(text)
    declared_n = None
    edges = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "n":
            if declared_n is not None or edges:
                raise ParseError("vertex-count header must be the first data line", lineno)
            if len(tokens) != 2:
                raise ParseError(f"expected 'n <N>', got {line!r}", lineno)
            try:
                declared_n = int(tokens[1])
            except ValueError:
                raise ParseError(f"bad vertex count {tokens[1]!r}", lineno) from None
            if declared_n < 1:
                raise GraphValidationError(f"line {lineno}: vertex count must be >= 1")
            continue
        if len(tokens) != 2:
            raise ParseError(f"expected two vertex ids, got {len(tokens)} tokens", lineno)
        try:
            u, v = int(tokens[0]) - index_base, int(tokens[1]) - index_base
        except ValueError:
            raise ParseError(f"non-integer token in {line!r}", lineno) from None
        if u < 0 or v < 0:
            raise GraphValidationError(f"line {lineno}: negative vertex id")
        if u == v:
            raise GraphValidationError(f"line {lineno}: self-loop at vertex {u + index_base}")
        edges.append((u, v))
    if declared_n is None and not edges:
        raise ParseError("no edges or vertices")
    inferred = max(max(e) for e in edges) + 1 if edges else 0
    if declared_n is not None and inferred > declared_n:
        raise GraphValidationError(
            f"vertex id {inferred - 1 + index_base} exceeds declared n={declared_n}")
    return Graph.from_edges(declared_n if declared_n is not None else inferred, edges)


def read_edge_list(path, index_base=0):
    return parse_edge_list(Path(path).read_text(encoding="utf-8"), index_base=index_base)


def serialize_edge_list(g, index_base=0, header=True):
    """Inverse of :func:`parse_edge_list`; always round-trips when ``header`` is set."""
    out = [f"n {g.n}"] if header else []
    out.extend(f"{u + index_base} {v + index_base}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def connected_components(g):
    """Maximal connected vertex sets, each sorted, ordered by smallest member."""
    label = np.full(g.n, -1, dtype=np.int64)
    comps = []
    for s in range(g.n):
        if label[s] >= 0:
            continue
        label[s] = len(comps)
        stack, members = [s], [s]
        while stack:
            v = stack.pop()
            for u in g.neighbors(v):
                if label[u] < 0:
                    label[u] = len(comps)
                    stack.append(int(u))
                    members.append(int(u))
        comps.append(sorted(members))
    return comps


def is_connected(g):
    return g.n > 0 and len(connected_components(g)) == 1


def toggle_edge(g, u, v):
    """Return a copy of ``g`` with edge ``{u, v}`` removed if present, added otherwise."""
    if u == v:
        raise GraphValidationError(f"self-loop at vertex {u}")
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise GraphValidationError(f"vertex pair ({u}, {v}) out of range")
    es = g.edge_set()
    key = (min(u, v), max(u, v))
    if key in es:
        es.remove(key)
    else:
        es.add(key)
    return Graph.from_edges(g.n, sorted(es))


def permute_graph(g, perm):
    """Relabel vertex ``i`` as ``perm[i]``."""
    perm = np.asarray(perm, dtype=np.int64)
    if sorted(perm.tolist()) != list(range(g.n)):
        raise ValueError("perm must be a permutation of range(n)")
    return Graph.from_edges(g.n, perm[g.edges()])


def graph_union(g, h):
    if g.n != h.n:
        raise GraphValidationError(f"vertex counts differ ({g.n} vs {h.n})")
    return Graph.from_edges(g.n, np.concatenate([g.edges(), h.edges()]))
