"""Seeded random graphs and tableaux for tests, verification and benchmarks."""

from __future__ import annotations

import numpy as np

from .graph import ColoredGraph
from .tableau import random_stabilizer_tableau

__all__ = [
    "random_graph",
    "random_connected_graph",
    "random_party_labels",
    "random_stabilizer_tableau",
]

LABELS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


def round_robin(n, q):
    return [LABELS[i % q] for i in range(n)]


def random_party_labels(n, q, rng):
    return [LABELS[int(i)] for i in rng.integers(0, q, n)]


def random_graph(n, p=0.5, rng=None, q=3, parties=None):
    """Erdos-Renyi graph with round-robin party labels by default."""
    rng = np.random.default_rng(rng)
    upper = np.triu(rng.random((n, n)) < p, 1).astype(np.uint8)
    adj = upper | upper.T
    return ColoredGraph(adj, parties if parties is not None else round_robin(n, q))


def is_connected(g):
    n = g.n_vertices
    if n == 0:
        return True
    adj = g.adj_dense().astype(bool)
    seen = np.zeros(n, dtype=bool)
    frontier = np.zeros(n, dtype=bool)
    frontier[0] = seen[0] = True
    while frontier.any():
        nxt = adj[frontier].any(axis=0) & ~seen
        seen |= nxt
        frontier = nxt
    return bool(seen.all())


def random_connected_graph(n, p=0.5, rng=None, q=3, max_tries=10000):
    """Erdos-Renyi with rejection until connected."""
    rng = np.random.default_rng(rng)
    for _ in range(max_tries):
        g = random_graph(n, p, rng, q)
        if is_connected(g):
            return g
    raise RuntimeError(f"no connected G({n}, {p}) after {max_tries} draws")
