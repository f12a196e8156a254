"""Projector engine: <+...+|G> by successive Pauli measurements.

The kernel path folds every byproduct into a per-vertex bra frame as soon
as it appears; :func:`projector_reference` keeps explicit pending lists and
multiplies 2x2 matrices exactly, mirroring the textbook routine.
"""

from __future__ import annotations

import time
from fractions import Fraction

import numpy as np

from .. import frames
from .._backend import get_kernels
from ..dyadic import DyadicOmega
from ..graph import Collapse, measure
from .result import EngineResult


_NO_ORDER = np.zeros(0, dtype=np.int64)
_ROOTS = [complex(DyadicOmega.omega_power(m)) for m in range(8)]
_DEFAULT = get_kernels()


def _order_array(g, order):
    if order is None:
        return _NO_ORDER
    order = np.asarray(list(order), dtype=np.int64)
    act = g.active_vertices()
    if sorted(order.tolist()) != act:
        raise ValueError("order must list every active vertex exactly once")
    return order


def projector_sweep(g, order=None, b0="lowest", seed=0, backend=None):
    """Run the kernel; returns ``(is_zero, omega_exponent, half_powers)``."""
    k = _DEFAULT if backend is None else get_kernels(backend)
    mode = 0 if b0 == "lowest" else 1
    if mode and b0 != "random":
        raise ValueError("b0 must be 'lowest' or 'random'")
    return k.projector_sweep(
        g.copy_words(), g.active.view(np.uint8), _order_array(g, order), mode, int(seed),
        frames.NEXT_STATE, frames.NEXT_PHASE, frames.ISO_ZERO, frames.ISO_PHASE, frames.ISO_HALF,
    )


def projector_inner_product(big, order=None, b0="lowest", seed=0, backend=None):
    """Exact ``<+|^{V} |big>``.

    Args:
        big: any ColoredGraph (party labels are ignored).
        order: vertex processing order; default is ascending current degree
            with ties by index.
        b0: ``"lowest"`` or ``"random"`` neighbour for x measurements.
        seed: seed for the random neighbour choice.
        backend: ``"compiled"``, ``"python"`` or None for the default.
    """
    t0 = time.perf_counter()
    zero, m, half = projector_sweep(big, order, b0, seed, backend)
    dt = (time.perf_counter() - t0) * 1e6
    if zero:
        return EngineResult("projector", DyadicOmega(0), None, 0j, True, dt)
    val = DyadicOmega.omega_power(m, half)
    return EngineResult("projector", val, Fraction(-half, 2), _ROOTS[m] * 2.0 ** (-half / 2), True, dt)


def _pending_matrix(tags):
    u = ((DyadicOmega(1), DyadicOmega(0)), (DyadicOmega(0), DyadicOmega(1)))
    for t in tags:
        u = frames.matmul2(u, frames.ELEMENTARY[t])
    return u


def _next_vertex(g):
    act = g.active_vertices()
    return min(act, key=lambda v: (g.degree(v), v))


def projector_reference(big, order=None, b0_rule="lowest"):
    """Same value as :func:`projector_inner_product` via explicit pending lists."""
    g = big
    pending = {v: [] for v in g.active_vertices()}
    scalar = DyadicOmega(1)
    plus = frames.BRAS[frames.frame_code("x", 1)]
    order = list(order) if order is not None else None
    step = 0
    while g.active.any():
        a = order[step] if order is not None else _next_vertex(g)
        step += 1
        u = _pending_matrix(pending.pop(a))
        row = frames.row_times(plus, u)
        if g.is_isolated(a):
            scalar = scalar * frames.bra_ket(row, frames.PLUS_KET)
            if scalar.is_zero():
                return scalar
            from ..graph import delete_vertex

            g = delete_vertex(g, a)
            continue
        code, c = frames._match_bra(row)
        basis, sign = frames.frame_label(code)
        out = measure(g, a, basis, sign, b0_rule)
        if out is Collapse:
            return DyadicOmega(0)
        scalar = scalar * DyadicOmega.omega_power(c) * out.scalar
        for tag in out.byproducts:
            pending[tag.vertex].append(tag.kind)
        g = out.reduced
    return scalar
