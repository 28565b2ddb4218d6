"""Weighted undirected graphs: problem instances, random generators, edge-list I/O.

All generators are deterministic functions of their parameters and a 64-bit
seed (PCG64 via ``numpy.random.default_rng``), so a fixed seed reproduces the
exact same edge list on any platform.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

Edge = tuple[int, int, float]

# Pairing-model regular-graph generation restarts on self-loops/multi-edges.
MAX_REGULAR_RESTARTS = 5000


@dataclass(frozen=True)
class Graph:
    """Simple undirected weighted graph with canonical (u < v) edges."""

    n_vertices: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.n_vertices < 1:
            raise ValueError(f"n_vertices must be positive, got {self.n_vertices}")
        object.__setattr__(self, "edges", tuple((int(u), int(v), float(w)) for u, v, w in self.edges))
        seen = set()
        for u, v, w in self.edges:
            if not (0 <= u < v < self.n_vertices):
                raise ValueError(f"edge ({u},{v}) violates 0 <= u < v < {self.n_vertices}")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            if not np.isfinite(w):
                raise ValueError(f"edge ({u},{v}) has non-finite weight {w}")
            seen.add((u, v))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def edge_pairs(self) -> list[tuple[int, int]]:
        """Edge endpoints without weights, in canonical order."""
        return [(u, v) for u, v, _ in self.edges]

    def degrees(self) -> list[int]:
        deg = [0] * self.n_vertices
        for u, v, _ in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


def _from_pairs(n: int, pairs: Iterable[tuple[int, int]], weight: float = 1.0) -> Graph:
    return Graph(n, tuple((u, v, weight) for u, v in sorted(pairs)))


def gen_random_regular(n: int, d: int, seed: int) -> Graph:
    """Generate a random d-regular simple graph on n vertices (unit weights).

    Uses the configuration (pairing) model: pair up n*d vertex stubs uniformly
    at random and restart whenever the pairing produces a self-loop or a
    duplicate edge. Adequate for the small n used here.

    Raises:
        ValueError: if n*d is odd or d >= n (no such graph exists).
        RuntimeError: if no simple pairing is found within the restart budget.
    """
    if d >= n:
        raise ValueError(f"degree d={d} must be smaller than n={n}")
    if (n * d) % 2 != 0:
        raise ValueError(f"n*d must be even, got n={n}, d={d}")
    if d == 0:
        return Graph(n, ())
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n), d)
    for _ in range(MAX_REGULAR_RESTARTS):
        perm = rng.permutation(stubs)
        pairs = set()
        ok = True
        for a, b in zip(perm[0::2], perm[1::2]):
            u, v = (int(a), int(b)) if a < b else (int(b), int(a))
            if u == v or (u, v) in pairs:
                ok = False
                break
            pairs.add((u, v))
        if ok:
            return _from_pairs(n, pairs)
    raise RuntimeError(f"random regular generation failed after {MAX_REGULAR_RESTARTS} restarts (n={n}, d={d})")


def gen_barabasi_albert(n: int, m: int, seed: int) -> Graph:
    """Generate a Barabasi-Albert preferential-attachment graph (unit weights).

    The seed core is an (m+1)-clique; every later vertex attaches to m distinct
    existing vertices chosen with probability proportional to their degree
    (sampling without replacement).

    Raises:
        ValueError: unless 1 <= m < n.
    """
    if not (1 <= m < n):
        raise ValueError(f"attachment count m={m} must satisfy 1 <= m < n={n}")
    rng = np.random.default_rng(seed)
    pairs = {(i, j) for i in range(m + 1) for j in range(i + 1, m + 1)}
    # One entry per incident edge end; sampling from it is degree-proportional.
    repeated = [v for pair in sorted(pairs) for v in pair]
    for new in range(m + 1, n):
        targets: set[int] = set()
        while len(targets) < m:
            targets.add(int(repeated[rng.integers(len(repeated))]))
        for t in sorted(targets):
            pairs.add((t, new))
            repeated.extend((t, new))
    return _from_pairs(n, pairs)


def gen_erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """Generate a G(n, p) graph: each unordered pair kept independently with probability p."""
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"edge probability must be in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                pairs.append((i, j))
    return _from_pairs(n, pairs)


def assign_uniform_weights(g: Graph, lo: float, hi: float, seed: int) -> Graph:
    """Redraw every edge weight i.i.d. uniform on [lo, hi]; topology unchanged."""
    if lo > hi:
        raise ValueError(f"invalid weight interval [{lo}, {hi}]")
    rng = np.random.default_rng(seed)
    edges = tuple((u, v, float(rng.uniform(lo, hi))) for u, v, _ in g.edges)
    return Graph(g.n_vertices, edges)


def complement(g: Graph) -> Graph:
    """Complement graph: (u,v) present iff absent in g; all weights 1."""
    present = {(u, v) for u, v, _ in g.edges}
    pairs = [(i, j) for i in range(g.n_vertices) for j in range(i + 1, g.n_vertices) if (i, j) not in present]
    return _from_pairs(g.n_vertices, pairs)


def write_edge_list(g: Graph) -> str:
    """Serialize to the edge-list text format (header line, then "u v w" lines).

    Weights use repr() so the read side recovers them bit-exactly.
    """
    lines = [str(g.n_vertices)]
    lines.extend(f"{u} {v} {w!r}" for u, v, w in g.edges)
    return "\n".join(lines) + "\n"


def read_edge_list(text: str) -> Graph:
    """Parse the edge-list format; '#' lines and blank lines are ignored.

    Raises:
        ValueError: malformed line, out-of-range vertex, or duplicate edge.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty edge-list input")
    try:
        n = int(lines[0])
    except ValueError:
        raise ValueError(f"bad header line {lines[0]!r}: expected vertex count") from None
    edges = []
    seen = set()
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise ValueError(f"bad edge line {ln!r}: expected 'u v w'")
        try:
            u, v, w = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise ValueError(f"bad edge line {ln!r}: unparsable values") from None
        if u > v:
            u, v = v, u
        if not (0 <= u < v < n):
            raise ValueError(f"edge ({u},{v}) out of range for {n} vertices")
        if (u, v) in seen:
            raise ValueError(f"duplicate edge ({u},{v})")
        seen.add((u, v))
        edges.append((u, v, w))
    return Graph(n, tuple(sorted(edges)))
