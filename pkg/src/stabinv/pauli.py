"""Signed Pauli strings in symplectic form.

A string with bits ``(x, z)`` and phase ``k`` denotes ``i^k * P_0 ⊗ ... ⊗ P_{n-1}``
where ``P_j`` is I, X, Z or Y for ``(x_j, z_j)`` = 00, 10, 01, 11, and
``Y = i X Z``.
"""

from __future__ import annotations

import numpy as np

from .gf2 import BitVector

_CHARS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_BITS = {v: k for k, v in _CHARS.items()}
_SIGN_PREFIX = {0: "+", 1: "+i", 2: "-", 3: "-i"}


def product_phase(x1, z1, k1, x2, z2, k2):
    """Phase of ``P1 * P2`` for bit arrays (broadcasts over leading axes)."""
    x1 = np.asarray(x1, dtype=np.int64)
    z1 = np.asarray(z1, dtype=np.int64)
    x2 = np.asarray(x2, dtype=np.int64)
    z2 = np.asarray(z2, dtype=np.int64)
    x3 = x1 ^ x2
    z3 = z1 ^ z2
    # i^{|x z|} X^x Z^z form, then (X^a Z^b)(X^c Z^d) = (-1)^{b.c} X^{a+c} Z^{b+d}
    k = (
        np.asarray(k1) + np.asarray(k2)
        + (x1 & z1).sum(-1) + (x2 & z2).sum(-1)
        + 2 * (z1 & x2).sum(-1)
        - (x3 & z3).sum(-1)
    )
    return np.mod(k, 4)


class PauliString:
    """Pauli operator ``i^phase * (tensor of I/X/Y/Z)``.

    Args:
        x: X bits (BitVector or 0/1 sequence).
        z: Z bits, same length.
        phase: exponent of ``i``, taken mod 4.
    """

    __slots__ = ("x", "z", "phase")

    def __init__(self, x, z, phase=0):
        self.x = x if isinstance(x, BitVector) else BitVector(x)
        self.z = z if isinstance(z, BitVector) else BitVector(z)
        if len(self.x) != len(self.z):
            raise ValueError("x and z lengths differ")
        self.phase = int(phase) % 4

    @classmethod
    def from_str(cls, s):
        """Parse ``"+XYZ"``, ``"-iZZ"``, ``"XX"`` (sign optional; ``−`` accepted)."""
        s = s.strip().replace("−", "-")
        phase = 0
        if s.startswith("-"):
            phase, s = 2, s[1:]
        elif s.startswith("+"):
            s = s[1:]
        if s.startswith("i"):
            phase, s = phase + 1, s[1:]
        bad = [c for c in s if c not in "IXYZ"]
        if bad or not s:
            raise ValueError(f"invalid Pauli string {s!r}")
        x = [_BITS[c][0] for c in s]
        z = [_BITS[c][1] for c in s]
        return cls(x, z, phase)

    @classmethod
    def identity(cls, n):
        return cls(np.zeros(n, np.uint8), np.zeros(n, np.uint8))

    @property
    def n(self):
        return len(self.x)

    def __len__(self):
        return len(self.x)

    def letters(self):
        return "".join(_CHARS[(int(a), int(b))] for a, b in zip(self.x.bits, self.z.bits))

    def __str__(self):
        return _SIGN_PREFIX[self.phase] + self.letters()

    def __repr__(self):
        return f"PauliString('{self}')"

    def __mul__(self, other):
        return multiply(self, other)

    def __eq__(self, other):
        return (
            isinstance(other, PauliString)
            and self.phase == other.phase
            and self.x == other.x
            and self.z == other.z
        )

    def __hash__(self):
        return hash((self.phase, self.x, self.z))

    def commutes(self, other):
        return (self.x.dot(other.z) + self.z.dot(other.x)) % 2 == 0

    def is_identity(self):
        return self.x.weight() == 0 and self.z.weight() == 0

    def is_hermitian(self):
        return self.phase % 2 == 0

    def matrix(self):
        """Dense matrix, qubit 0 most significant (small n only)."""
        single = {
            "I": np.eye(2, dtype=complex),
            "X": np.array([[0, 1], [1, 0]], dtype=complex),
            "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
            "Z": np.array([[1, 0], [0, -1]], dtype=complex),
        }
        out = np.array([[1.0 + 0j]])
        for c in self.letters():
            out = np.kron(out, single[c])
        return (1j ** self.phase) * out


def multiply(p, q):
    """Exact product ``p * q``."""
    if p.n != q.n:
        raise ValueError("qubit count mismatch")
    k = product_phase(p.x.bits, p.z.bits, p.phase, q.x.bits, q.z.bits, q.phase)
    return PauliString(p.x ^ q.x, p.z ^ q.z, int(k))
