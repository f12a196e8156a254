"""Bit-packed linear algebra over GF(2).

Rows are packed little-endian into ``uint64`` words. ``BitMatrix`` and
``BitVector`` are immutable; every operation returns a fresh object.
"""

from __future__ import annotations

import numpy as np

from ._backend import kernels

WORD = 64


def n_words(ncols):
    return max(1, (ncols + WORD - 1) // WORD)


def pack(dense, ncols=None):
    """Pack a 2-D 0/1 array into a ``(rows, words)`` uint64 array."""
    dense = np.asarray(dense, dtype=np.uint8)
    if dense.ndim != 2:
        raise ValueError("pack expects a 2-D array")
    rows, cols = dense.shape
    ncols = cols if ncols is None else ncols
    nw = n_words(ncols)
    padded = np.zeros((rows, nw * WORD), dtype=np.uint8)
    padded[:, :cols] = dense & 1
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64).reshape(rows, nw)


def unpack(words, ncols):
    """Inverse of :func:`pack`."""
    words = np.ascontiguousarray(words, dtype=np.uint64)
    if words.shape[0] == 0:
        return np.zeros((0, ncols), dtype=np.uint8)
    bits = np.unpackbits(words.view(np.uint8).reshape(words.shape[0], -1), axis=1, bitorder="little")
    return bits[:, :ncols].copy()


class BitVector:
    """Fixed-length vector over GF(2)."""

    __slots__ = ("_bits",)

    def __init__(self, bits):
        if isinstance(bits, str):
            bits = [int(ch) for ch in bits]
        arr = np.array(bits, dtype=np.uint8).reshape(-1) & 1
        arr.flags.writeable = False
        self._bits = arr

    @classmethod
    def zeros(cls, n):
        return cls(np.zeros(n, dtype=np.uint8))

    @property
    def bits(self):
        return self._bits

    @property
    def length(self):
        return len(self._bits)

    def __len__(self):
        return len(self._bits)

    def __getitem__(self, i):
        return int(self._bits[i])

    def __xor__(self, other):
        if len(other) != len(self):
            raise ValueError("length mismatch")
        return BitVector(self._bits ^ other.bits)

    def __add__(self, other):
        return self ^ other

    def dot(self, other):
        return int(np.sum(self._bits & other.bits) & 1)

    def weight(self):
        return int(self._bits.sum())

    def support(self):
        return [int(i) for i in np.flatnonzero(self._bits)]

    def __eq__(self, other):
        return isinstance(other, BitVector) and np.array_equal(self._bits, other.bits)

    def __hash__(self):
        return hash(self._bits.tobytes())

    def __str__(self):
        return "".join(map(str, self._bits))

    def __repr__(self):
        return f"BitVector('{self}')"


class BitMatrix:
    """Matrix over GF(2) stored as packed rows.

    Args:
        words: ``(rows, words)`` uint64 array; copied and frozen.
        ncols: number of meaningful columns.
    """

    __slots__ = ("_words", "_ncols")

    def __init__(self, words, ncols):
        w = np.array(words, dtype=np.uint64, copy=True).reshape(-1, n_words(ncols))
        w.flags.writeable = False
        self._words = w
        self._ncols = int(ncols)

    @classmethod
    def from_dense(cls, dense, ncols=None):
        dense = np.asarray(dense, dtype=np.uint8)
        if dense.ndim == 1:
            dense = dense.reshape(1, -1) if dense.size else dense.reshape(0, ncols or 0)
        if ncols is None:
            ncols = dense.shape[1]
        return cls(pack(dense, ncols), ncols)

    @classmethod
    def from_rows(cls, rows, ncols=None):
        """Build from BitVectors, 0/1 sequences or strings like ``"101"``."""
        rows = [r.bits if isinstance(r, BitVector) else BitVector(r).bits for r in rows]
        if not rows:
            if ncols is None:
                raise ValueError("ncols required for an empty row list")
            return cls.zeros(0, ncols)
        return cls.from_dense(np.vstack(rows), ncols)

    @classmethod
    def zeros(cls, rows, cols):
        return cls(np.zeros((rows, n_words(cols)), dtype=np.uint64), cols)

    @classmethod
    def identity(cls, n):
        return cls.from_dense(np.eye(n, dtype=np.uint8), n)

    @property
    def shape(self):
        return (self._words.shape[0], self._ncols)

    @property
    def nrows(self):
        return self._words.shape[0]

    @property
    def ncols(self):
        return self._ncols

    @property
    def words(self):
        return self._words

    def to_dense(self):
        return unpack(self._words, self._ncols)

    def row(self, i):
        return BitVector(unpack(self._words[i : i + 1], self._ncols)[0])

    @property
    def rows(self):
        return [BitVector(r) for r in self.to_dense()]

    def __len__(self):
        return self.nrows

    def __iter__(self):
        return iter(self.rows)

    def transpose(self):
        return BitMatrix.from_dense(self.to_dense().T, self.nrows)

    @property
    def T(self):
        return self.transpose()

    def columns(self, idx):
        """Sub-matrix keeping the listed columns, in order."""
        idx = list(idx)
        return BitMatrix.from_dense(self.to_dense()[:, idx], len(idx))

    def vstack(self, other):
        if other.ncols != self.ncols:
            raise ValueError("column mismatch")
        return BitMatrix(np.vstack([self._words, other.words]), self._ncols)

    def hstack(self, other):
        if other.nrows != self.nrows:
            raise ValueError("row mismatch")
        return BitMatrix.from_dense(np.hstack([self.to_dense(), other.to_dense()]), self.ncols + other.ncols)

    def matmul(self, other):
        a = self.to_dense().astype(np.int64)
        b = other.to_dense().astype(np.int64)
        return BitMatrix.from_dense((a @ b) & 1, other.ncols)

    def __matmul__(self, other):
        if isinstance(other, BitVector):
            d = self.to_dense().astype(np.int64) @ other.bits.astype(np.int64)
            return BitVector(d & 1)
        return self.matmul(other)

    def rank(self):
        return rank(self)

    def __eq__(self, other):
        return (
            isinstance(other, BitMatrix)
            and self.shape == other.shape
            and np.array_equal(self._words, other.words)
        )

    def __hash__(self):
        return hash((self.shape, self._words.tobytes()))

    def __repr__(self):
        body = ", ".join(str(r) for r in self.rows[:8])
        more = ", ..." if self.nrows > 8 else ""
        return f"BitMatrix({self.nrows}x{self.ncols}: [{body}{more}])"


def rref(m):
    """Reduced row echelon form. Returns ``(reduced, pivots)``; zero rows trail."""
    w = np.array(m.words, dtype=np.uint64, copy=True, order="C")
    pivots = kernels.rref(w, m.ncols)
    return BitMatrix(w, m.ncols), list(pivots)


def rank(m):
    """GF(2) row rank; 0 for empty matrices."""
    if m.nrows == 0 or m.ncols == 0:
        return 0
    w = np.array(m.words, dtype=np.uint64, copy=True, order="C")
    return len(kernels.rref(w, m.ncols))


def row_basis(m):
    """Independent rows spanning the same space (RREF rows)."""
    red, piv = rref(m)
    return BitMatrix(red.words[: len(piv)], m.ncols)


def kernel_basis(m):
    """Basis of ``{x : m x = 0}``, one row per free column."""
    c = m.ncols
    if m.nrows == 0:
        return BitMatrix.identity(c)
    red, piv = rref(m)
    dense = red.to_dense()[: len(piv)]
    pset = set(piv)
    free = [j for j in range(c) if j not in pset]
    out = np.zeros((len(free), c), dtype=np.uint8)
    if free:
        out[np.arange(len(free)), free] = 1
        if piv:
            out[:, piv] = dense[:, free].T
    return BitMatrix.from_dense(out, c)


def left_kernel_basis(m):
    """Basis of ``{y : y m = 0}`` (combinations of rows that vanish)."""
    return kernel_basis(m.transpose())


def orthogonal_complement(m):
    """Vectors with zero dot product against every row of ``m``."""
    return kernel_basis(m)


def in_span(v, m):
    if len(v) != m.ncols:
        raise ValueError("length mismatch")
    if v.weight() == 0:
        return True
    if m.nrows == 0:
        return False
    return rank(m.vstack(BitMatrix.from_rows([v], m.ncols))) == rank(m)


def solve(m, b):
    """Return some x with ``m x = b`` as a BitVector, or None if inconsistent."""
    if len(b) != m.nrows:
        raise ValueError("length mismatch")
    c = m.ncols
    aug = np.hstack([m.to_dense(), b.bits.reshape(-1, 1)])
    red, piv = rref(BitMatrix.from_dense(aug, c + 1))
    if piv and piv[-1] == c:
        return None
    dense = red.to_dense()
    x = np.zeros(c, dtype=np.uint8)
    for i, p in enumerate(piv):
        x[p] = dense[i, c]
    return BitVector(x)


def same_span(a, b):
    if a.ncols != b.ncols:
        return False
    ra = rank(a)
    return ra == rank(b) and rank(a.vstack(b)) == ra
