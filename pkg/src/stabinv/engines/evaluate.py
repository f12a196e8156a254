"""Dispatch a state and a permutation tuple to an engine."""

from __future__ import annotations

import numpy as np

from ..graph import ColoredGraph, build_big_graph, graph_to_dense
from ..tableau import StabilizerTableau, to_dense, to_graph_state
from .canonical import canonical_multi_invariant
from .dense import dense_result
from .projector import projector_inner_product


class NotStabilizerError(ValueError):
    pass


def align_tuple(labels, t):
    """Rename the tuple's parties to ``labels`` (sorted) if they differ."""
    labels = tuple(sorted(labels))
    if set(labels) <= set(t.parties):
        return t
    if len(labels) != t.q:
        raise ValueError(f"state has parties {labels}, tuple has {t.parties}")
    return t.relabel(labels)


def as_graph(source):
    """Graph form of a graph or tableau source (LC-equivalent for tableaux)."""
    if isinstance(source, ColoredGraph):
        return source
    if isinstance(source, StabilizerTableau):
        return to_graph_state(source)[0]
    raise NotStabilizerError("source is not a stabilizer state; only the dense method applies")


def evaluate(source, t, method="projector", budget=24, **opts):
    """Multi-invariant of ``source`` for tuple ``t`` with one engine.

    Args:
        source: ColoredGraph, StabilizerTableau, or ``(vector, parties)``
            for the dense method.
        t: PermutationTuple; party names are matched by sorted position when
            they do not coincide with the state's labels.
        method: ``projector``, ``canonical`` or ``dense``.
        budget: dense-engine limit on ``n_rep * n_qubits``.
        opts: forwarded to the projector engine (order, b0, seed, backend).
    """
    if isinstance(source, tuple):
        vec, parties = source
        if method != "dense":
            raise NotStabilizerError("a raw state vector only supports the dense method")
        t = align_tuple(set(map(str, parties)), t)
        return dense_result(np.asarray(vec), parties, t, budget)
    g = as_graph(source)
    t = align_tuple(set(g.party), t)
    if method == "dense":
        if isinstance(source, StabilizerTableau):
            return dense_result(to_dense(source), source.parties, t, budget)
        return dense_result(graph_to_dense(g), g.party, t, budget)
    big = build_big_graph(g, t)
    if method == "projector":
        return projector_inner_product(big, **opts)
    if method == "canonical":
        return canonical_multi_invariant(big)
    raise ValueError(f"unknown method {method!r}")
