"""Dense reference utilities shared by the tests."""

import numpy as np

GATES = {
    "H": np.array([[1, 1], [1, -1]]) / np.sqrt(2),
    "S": np.diag([1, 1j]),
    "Sdg": np.diag([1, -1j]),
    "Z": np.diag([1, -1]),
    "X": np.array([[0, 1], [1, 0]]),
}


def apply_1q(vec, u, q, n):
    """Apply a 2x2 matrix to qubit ``q`` (qubit 0 most significant)."""
    psi = np.asarray(vec, dtype=complex).reshape((2,) * n)
    psi = np.moveaxis(np.tensordot(u, psi, axes=([1], [q])), 0, q)
    return psi.reshape(-1)


def contract_1q(vec, bra, q, n):
    """``<bra|_q vec``; returns a vector on the remaining qubits."""
    psi = np.asarray(vec, dtype=complex).reshape((2,) * n)
    return np.tensordot(np.asarray(bra, dtype=complex), psi, axes=([0], [q])).reshape(-1)


def equal_up_to_phase(a, b, tol=1e-9):
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    i = int(np.argmax(np.abs(a)))
    if abs(b[i]) < tol:
        return np.allclose(a, 0, atol=tol) and np.allclose(b, 0, atol=tol)
    return np.allclose(a * (b[i] / a[i]), b, atol=tol)
