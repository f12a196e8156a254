"""Dense brute-force multi-invariant, the independent oracle."""

from __future__ import annotations

import time
from fractions import Fraction

import numpy as np

from .result import EngineResult


class BudgetError(ValueError):
    pass


def party_tensor(state, parties, order):
    """Reshape a state vector into one axis per party (qubit 0 most significant)."""
    state = np.asarray(state, dtype=complex)
    n = len(parties)
    if state.size != 2 ** n:
        raise ValueError(f"state has {state.size} amplitudes, expected {2 ** n}")
    psi = state.reshape((2,) * n)
    qubit_order = [q for p in order for q in range(n) if parties[q] == p]
    psi = psi.transpose(qubit_order)
    dims = [2 ** sum(1 for q in range(n) if parties[q] == p) for p in order]
    return psi.reshape(dims)


def dense_multi_invariant(state, parties, t, budget=24, max_qubits=10):
    """``<psi|^n sigma_1 x ... x sigma_q |psi>^n`` by direct contraction.

    Args:
        state: normalized vector of length ``2**n``.
        parties: per-qubit party labels.
        t: PermutationTuple over the same labels.
        budget: maximum ``n_rep * n_qubits``.
    """
    parties = [str(p) for p in parties]
    n = len(parties)
    if n > max_qubits or t.n_rep * n > budget:
        raise BudgetError(f"n_rep*n = {t.n_rep * n} exceeds the dense budget {budget}")
    missing = set(parties) - set(t.parties)
    if missing:
        raise ValueError(f"no permutation for parties {sorted(missing)}")
    order = [p for p in t.parties if p in set(parties)]
    psi = party_tensor(state, parties, order)
    q = len(order)
    nr = t.n_rep
    # ket replica i, party a -> label a*nr + i; bra replica j uses sigma_a^{-1}(j)
    operands = []
    for i in range(nr):
        operands += [psi, [a * nr + i for a in range(q)]]
    conj = psi.conj()
    inv = {p: np.argsort(t.sigma[p]) for p in order}
    for j in range(nr):
        operands += [conj, [a * nr + int(inv[p][j]) for a, p in enumerate(order)]]
    return complex(np.einsum(*operands, [], optimize="greedy"))


def dense_result(state, parties, t, budget=24):
    t0 = time.perf_counter()
    z = dense_multi_invariant(state, parties, t, budget)
    dt = (time.perf_counter() - t0) * 1e6
    mag = abs(z)
    if mag < 1e-12:
        return EngineResult("dense", None, None, z, False, dt)
    est = Fraction(round(2 * np.log2(mag)), 2)
    return EngineResult("dense", None, est, z, False, dt)
