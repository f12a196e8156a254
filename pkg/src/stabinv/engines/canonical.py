"""Canonical-tableau engine: |<phi|psi>| = 2^(-s/2).

A CNOT/H/S circuit takes ``psi`` to |0...0>: the local Cliffords from
``to_graph_state``, CZ on every graph edge, then H on every qubit. The same
circuit is applied to ``phi``; in the canonical form of the rotated ``phi``
the number of X-block rows is ``s``, and a pure-Z row with a minus sign
means the overlap vanishes.
"""

from __future__ import annotations

import time
from fractions import Fraction

import numpy as np

from ..graph import graph_tableau
from ..tableau import (
    StabilizerTableau,
    TableauError,
    _Work,
    canonical_form,
    to_graph_state,
    x_block_size,
)
from .result import EngineResult


def disentangling_circuit(psi):
    """Gates taking ``psi`` to |0...0> (up to global phase)."""
    g, gates = to_graph_state(psi)
    circuit = list(gates)
    circuit += [("CZ", a, b) for a, b in g.edges()]
    circuit += [("H", q) for q in range(psi.n)]
    return circuit


def _run(t, circuit):
    w = _Work(t.x, t.z, t.phase)
    for gate in circuit:
        w.apply(gate)
    return w


def canonical_inner_product(psi, phi, check=False):
    """Return ``(orthogonal, s)``; ``s`` is None when orthogonal.

    Args:
        psi, phi: pure stabilizer states on the same number of qubits.
        check: also rotate ``psi`` and confirm it lands on |0...0>.
    """
    if psi.n != phi.n:
        raise ValueError("qubit counts differ")
    if psi.k != psi.n or phi.k != phi.n:
        raise TableauError("pure states required")
    circuit = disentangling_circuit(psi)
    if check:
        w = _run(psi, circuit)
        can = canonical_form(w.tableau(psi.parties))
        n = psi.n
        if x_block_size(can) or not np.array_equal(can.z, np.eye(n, dtype=np.uint8)) or np.any(can.phase):
            raise AssertionError("circuit does not disentangle psi")
    w = _run(phi, circuit)
    can = canonical_form(w.tableau(phi.parties))
    s = x_block_size(can)
    if np.any(can.phase[s:] == 2):
        return True, None
    return False, s


def plus_state(n):
    """All-X tableau of |+...+>."""
    return StabilizerTableau(np.eye(n, dtype=np.uint8), np.zeros((n, n), np.uint8), check=False)


def canonical_multi_invariant(big):
    """|<+...+|big>| via the canonical engine (magnitude only)."""
    if not big.active.all():
        big = big.compact()
    t0 = time.perf_counter()
    n = big.n_vertices
    if n == 0:
        return EngineResult("canonical", None, Fraction(0), 1.0 + 0j, True, 0.0)
    orth, s = canonical_inner_product(plus_state(n), graph_tableau(big))
    dt = (time.perf_counter() - t0) * 1e6
    if orth:
        return EngineResult("canonical", None, None, 0j, True, dt)
    return EngineResult("canonical", None, Fraction(-s, 2), complex(2.0 ** (-s / 2)), True, dt)
