"""X-stabilizer states: the group N of X strings and its Z-string partner.

For ``|N> = |N|^{-1/2} sum_{g in N} g|0...0>`` the full stabilizer group is
``N x Ntilde`` with ``Ntilde`` the Z strings on the orthogonal complement,
so ``|G_R| = |N_R| |Ntilde_R|``.
"""

from __future__ import annotations

import itertools
import warnings
import numpy as np

from .. import gf2
from ..gf2 import BitMatrix
from ..tableau import StabilizerTableau, all_subsets
from .formulas import _relabel_spec, coxeter_conjecture_from_orders


def independent_rows(m):
    """Indices of rows kept by a greedy left-to-right independence scan.

    Later rows that depend on earlier ones are the ones dropped.
    """
    dense = m.to_dense()
    keep = []
    basis = np.zeros((0, m.ncols), dtype=np.uint8)
    r = 0
    for i, row in enumerate(dense):
        trial = np.vstack([basis, row[None, :]])
        rt = gf2.rank(BitMatrix.from_dense(trial, m.ncols))
        if rt > r:
            keep.append(i)
            basis, r = trial, rt
    return keep


def _restricted_order(basis, qubits):
    """log2 of the number of span elements vanishing outside ``qubits``."""
    n = basis.ncols
    keep = set(qubits)
    out = [j for j in range(n) if j not in keep]
    k = basis.nrows
    if not out or k == 0:
        return k
    return k - gf2.rank(basis.columns(out))


class XStabilizerState:
    """State defined by independent X-support vectors.

    Args:
        gens: BitMatrix (or 0/1 array) whose rows are X supports.
        parties: per-qubit party labels.
        coords: optional per-qubit coordinate records (for sidecars).
    """

    def __init__(self, gens, parties=None, coords=None):
        if not isinstance(gens, BitMatrix):
            gens = BitMatrix.from_dense(np.asarray(gens, dtype=np.uint8))
        if gens.nrows and gf2.rank(gens) < gens.nrows:
            keep = independent_rows(gens)
            warnings.warn(
                f"dropping {gens.nrows - len(keep)} dependent generator(s)", stacklevel=2
            )
            gens = BitMatrix(gens.words[keep], gens.ncols)
        self.gens = gens
        self.n_qubits = gens.ncols
        self.parties = tuple(str(p) for p in parties) if parties is not None else ("A",) * self.n_qubits
        if len(self.parties) != self.n_qubits:
            raise ValueError("one party per qubit required")
        self.coords = coords
        self._tilde = gf2.orthogonal_complement(gens) if gens.nrows else BitMatrix.identity(self.n_qubits)

    @property
    def tilde(self):
        return self._tilde

    @property
    def n(self):
        return self.n_qubits

    @property
    def rank(self):
        return self.gens.nrows

    @property
    def party_labels(self):
        return tuple(sorted(set(self.parties)))

    def with_parties(self, parties):
        return XStabilizerState(self.gens, parties, self.coords)

    def qubits_of(self, subset):
        subset = set([subset] if subset in self.party_labels else subset)
        return [i for i, p in enumerate(self.parties) if p in subset]

    def n_order_qubits(self, qubits):
        return _restricted_order(self.gens, qubits)

    def tilde_order_qubits(self, qubits):
        return _restricted_order(self._tilde, qubits)

    def n_subgroup_order(self, subset):
        return self.n_order_qubits(self.qubits_of(subset))

    def tilde_subgroup_order(self, subset):
        return self.tilde_order_qubits(self.qubits_of(subset))

    def n_table(self):
        return {s: self.n_subgroup_order(s) for s in all_subsets(self.party_labels)}

    def tilde_table(self):
        return {s: self.tilde_subgroup_order(s) for s in all_subsets(self.party_labels)}

    def to_tableau(self):
        n = self.n_qubits
        xs = self.gens.to_dense()
        zs = self._tilde.to_dense()
        x = np.vstack([xs, np.zeros_like(zs)])
        z = np.vstack([np.zeros_like(xs), zs])
        return StabilizerTableau(x.reshape(-1, n), z.reshape(-1, n), None, self.parties)

    def to_dense(self):
        """State vector (qubit 0 most significant); small sizes only."""
        n = self.n_qubits
        if n > 20:
            raise ValueError("too many qubits for a dense vector")
        vec = np.zeros(2 ** n)
        weights = 1 << (n - 1 - np.arange(n))
        rows = self.gens.to_dense()
        for coeffs in itertools.product((0, 1), repeat=rows.shape[0]):
            v = (np.asarray(coeffs, dtype=np.int64) @ rows) % 2 if rows.shape[0] else np.zeros(n, int)
            vec[int(v @ weights)] = 1.0
        return vec / np.sqrt(vec.sum())

    def to_text(self):
        return "\n".join("".join("X" if b else "I" for b in row) for row in self.gens.to_dense()) + "\n"


def x_state_from_generators(gens, parties=None):
    return XStabilizerState(gens, parties)


def parse_xgen(text, parties=None):
    """One generator per line over ``{I, X}``."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("parties:"):
            parties = {}
            for tok in line.split(":", 1)[1].split():
                k, _, v = tok.partition("=")
                parties[int(k.lstrip("qv"))] = v
            continue
        if set(line) - set("IX"):
            raise ValueError(f"line {lineno}: only I and X allowed")
        rows.append([1 if ch == "X" else 0 for ch in line])
    if not rows:
        raise ValueError("no generators")
    if len({len(r) for r in rows}) != 1:
        raise ValueError("generators of different lengths")
    n = len(rows[0])
    if isinstance(parties, dict):
        parties = [parties.get(i, "A") for i in range(n)]
    return XStabilizerState(BitMatrix.from_dense(np.array(rows)), parties)


def x_coxeter_invariant(xs, spec):
    """log2 Z with every ``|G_S|`` replaced by ``|N_S|`` (not squared)."""
    spec = _relabel_spec(spec, xs.party_labels)
    return coxeter_conjecture_from_orders(xs.n_table(), spec)


def x_coxeter_invariant_tilde(xs, spec):
    spec = _relabel_spec(spec, xs.party_labels)
    return coxeter_conjecture_from_orders(xs.tilde_table(), spec)


# lattice models ---------------------------------------------------------------


def build_toric_code(L):
    """Toric code ground state on an ``L x L`` periodic lattice.

    Qubit ``2 (x + L y)`` is the horizontal link leaving vertex ``(x, y)``
    to the right, ``2 (x + L y) + 1`` the vertical link going up. N is
    generated by the star operators with the last (dependent) one dropped.
    """
    if L < 2:
        raise ValueError("L must be at least 2")

    def h(x, y):
        return 2 * ((x % L) + L * (y % L))

    def v(x, y):
        return 2 * ((x % L) + L * (y % L)) + 1

    stars = np.zeros((L * L, 2 * L * L), dtype=np.uint8)
    for y in range(L):
        for x in range(L):
            for q in (h(x, y), h(x - 1, y), v(x, y), v(x, y - 1)):
                stars[x + L * y, q] = 1
    coords = []
    for y in range(L):
        for x in range(L):
            coords.append({"qubit": h(x, y), "dir": "x", "x": x, "y": y})
            coords.append({"qubit": v(x, y), "dir": "y", "x": x, "y": y})
    coords.sort(key=lambda c: c["qubit"])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return XStabilizerState(BitMatrix.from_dense(stars), coords=coords), stars


def toric_code(L):
    return build_toric_code(L)[0]


def build_x_cube(L):
    """X-cube ground state on an ``L x L x L`` periodic lattice.

    Qubit ``3 * site + d`` is the link leaving ``site = x + L y + L^2 z`` in
    direction ``d`` (0, 1, 2 for x, y, z). N is generated by the 12-edge cube
    operators, with dependent ones dropped from the end.
    """
    if L < 2:
        raise ValueError("L must be at least 2")

    def site(x, y, z):
        return (x % L) + L * (y % L) + L * L * (z % L)

    def link(x, y, z, d):
        return 3 * site(x, y, z) + d

    cubes = np.zeros((L ** 3, 3 * L ** 3), dtype=np.uint8)
    for z in range(L):
        for y in range(L):
            for x in range(L):
                c = site(x, y, z)
                for a in (0, 1):
                    for b in (0, 1):
                        cubes[c, link(x, y + a, z + b, 0)] = 1
                        cubes[c, link(x + a, y, z + b, 1)] = 1
                        cubes[c, link(x + a, y + b, z, 2)] = 1
    coords = [
        {"qubit": 3 * s + d, "dir": "xyz"[d], "x": s % L, "y": (s // L) % L, "z": s // (L * L)}
        for s in range(L ** 3) for d in range(3)
    ]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return XStabilizerState(BitMatrix.from_dense(cubes), coords=coords), cubes


def x_cube(L):
    return build_x_cube(L)[0]
