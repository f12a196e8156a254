"""Stabilizer tableaux: subgroup orders, canonical form, graph form, dense export.

Generators are kept as dense 0/1 ``uint8`` arrays ``x``, ``z`` of shape
``(k, n)`` plus a phase array in the Y-convention of :mod:`stabinv.pauli`
(stabilizer generators always have phase 0 or 2). Heavy elimination goes
through :mod:`stabinv.gf2`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import gf2
from .gf2 import BitMatrix
from .pauli import PauliString, product_phase


class TableauError(ValueError):
    """Raised for generator sets that do not define a stabilizer group."""


def _as_party_tuple(parties, n):
    if parties is None:
        return tuple("A" for _ in range(n))
    if isinstance(parties, dict):
        missing = [q for q in range(n) if q not in parties]
        if missing:
            raise ValueError(f"qubits without a party: {missing}")
        return tuple(str(parties[q]) for q in range(n))
    parties = tuple(str(p) for p in parties)
    if len(parties) != n:
        raise ValueError(f"{len(parties)} party labels for {n} qubits")
    return parties


class StabilizerTableau:
    """Ordered commuting generators with a party label per qubit.

    Args:
        x: ``(k, n)`` X bits.
        z: ``(k, n)`` Z bits.
        phase: ``(k,)`` phases mod 4 (0 or 2 for valid generators).
        parties: per-qubit party labels (sequence or ``{qubit: label}``).
        party_order: optional explicit ordering of the labels.
        check: verify commutation, Hermiticity and independence.
    """

    def __init__(self, x, z, phase=None, parties=None, party_order=None, check=True):
        x = np.array(x, dtype=np.uint8, ndmin=2) & 1
        z = np.array(z, dtype=np.uint8, ndmin=2) & 1
        if x.shape != z.shape:
            raise TableauError("x and z shapes differ")
        k, n = x.shape
        phase = np.zeros(k, dtype=np.int64) if phase is None else np.asarray(phase, dtype=np.int64) % 4
        self.x, self.z, self.phase = x, z, phase
        for a in (self.x, self.z, self.phase):
            a.flags.writeable = False
        self.parties = _as_party_tuple(parties, n)
        labels = sorted(set(self.parties))
        if party_order is not None:
            party_order = tuple(str(p) for p in party_order)
            if not set(labels) <= set(party_order):
                raise ValueError("party_order misses some labels")
            labels = list(party_order)
        self.party_labels = tuple(labels)
        if check:
            self.validate()

    # construction -------------------------------------------------------

    @classmethod
    def from_paulis(cls, paulis, parties=None, **kw):
        paulis = list(paulis)
        if not paulis:
            raise TableauError("no generators")
        x = np.array([p.x.bits for p in paulis])
        z = np.array([p.z.bits for p in paulis])
        ph = np.array([p.phase for p in paulis])
        return cls(x, z, ph, parties, **kw)

    @classmethod
    def from_strings(cls, strings, parties=None, **kw):
        return cls.from_paulis([PauliString.from_str(s) for s in strings], parties, **kw)

    @classmethod
    def zero_state(cls, n, parties=None):
        return cls(np.zeros((n, n)), np.eye(n), None, parties)

    # basic properties ---------------------------------------------------

    @property
    def n(self):
        return self.x.shape[1]

    @property
    def k(self):
        return self.x.shape[0]

    @property
    def q(self):
        return len(self.party_labels)

    @property
    def generators(self):
        return [PauliString(self.x[i], self.z[i], self.phase[i]) for i in range(self.k)]

    def symplectic(self):
        """``[x | z]`` as a BitMatrix."""
        return BitMatrix.from_dense(np.hstack([self.x, self.z]), 2 * self.n)

    def qubits_of(self, subset):
        subset = _norm_subset(subset, self.party_labels)
        return [i for i, p in enumerate(self.parties) if p in subset]

    def with_parties(self, parties, party_order=None):
        return StabilizerTableau(self.x, self.z, self.phase, parties, party_order, check=False)

    def to_strings(self):
        return [str(g) for g in self.generators]

    def __repr__(self):
        return f"StabilizerTableau(n={self.n}, k={self.k}, {self.to_strings()[:6]})"

    def __eq__(self, other):
        return (
            isinstance(other, StabilizerTableau)
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.z, other.z)
            and np.array_equal(self.phase, other.phase)
            and self.parties == other.parties
        )

    def validate(self):
        if np.any(self.phase % 2):
            raise TableauError("generator with imaginary phase is not Hermitian")
        # symplectic form x1.z2 + z1.x2
        xi = self.x.astype(np.int64)
        zi = self.z.astype(np.int64)
        omega = (xi @ zi.T + zi @ xi.T) % 2
        if np.any(omega):
            i, j = np.argwhere(omega)[0]
            raise TableauError(f"generators {i} and {j} anticommute")
        if gf2.rank(self.symplectic()) < self.k:
            dep = gf2.left_kernel_basis(self.symplectic()).to_dense()[0]
            ph = _combine_phase(self.x, self.z, self.phase, dep)
            if ph == 2:
                raise TableauError("-I is in the generated group")
            raise TableauError("generators are not independent")

    def tensor(self, other):
        """Tensor product; party labels are kept as given."""
        k1, n1 = self.x.shape
        k2, n2 = other.x.shape
        x = np.zeros((k1 + k2, n1 + n2), np.uint8)
        z = np.zeros_like(x)
        x[:k1, :n1], z[:k1, :n1] = self.x, self.z
        x[k1:, n1:], z[k1:, n1:] = other.x, other.z
        return StabilizerTableau(
            x, z, np.concatenate([self.phase, other.phase]), self.parties + other.parties
        )

    def permute_qubits(self, perm):
        """New tableau with qubit ``perm[i]`` moved to position ``i``."""
        perm = list(perm)
        return StabilizerTableau(
            self.x[:, perm], self.z[:, perm], self.phase, [self.parties[p] for p in perm],
            check=False,
        )


def _norm_subset(subset, labels):
    if isinstance(subset, str):
        if subset in labels:
            subset = [subset]
        else:
            subset = list(subset)
    subset = frozenset(str(s) for s in subset)
    unknown = subset - set(labels)
    if unknown:
        raise ValueError(f"unknown parties {sorted(unknown)}")
    return subset


def _combine_phase(x, z, phase, coeffs):
    """Phase of the ordered product of the rows selected by ``coeffs``."""
    n = x.shape[1]
    cx = np.zeros(n, np.uint8)
    cz = np.zeros(n, np.uint8)
    ck = 0
    for i in np.flatnonzero(coeffs):
        ck = int(product_phase(cx, cz, ck, x[i], z[i], phase[i]))
        cx ^= x[i]
        cz ^= z[i]
    return ck


# text format ------------------------------------------------------------


def parse_tableau(text):
    """Parse the tableau text format.

    One generator per line (``+XXX``, ``-ZZI`` or bare ``XXX``), plus an
    optional header ``parties: q0=A q1=B ...``. Blank lines and ``#``
    comments are ignored.
    """
    gens = []
    parties = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("parties:"):
            parties = {}
            for tok in line.split(":", 1)[1].split():
                try:
                    key, val = tok.split("=")
                    parties[int(key.lstrip("qv"))] = val
                except ValueError:
                    raise TableauError(f"line {lineno}: bad party entry {tok!r}") from None
            continue
        try:
            gens.append(PauliString.from_str(line))
        except ValueError as exc:
            raise TableauError(f"line {lineno}: {exc}") from None
    if not gens:
        raise TableauError("no generators found")
    n = gens[0].n
    for i, g in enumerate(gens):
        if g.n != n:
            raise TableauError(f"generator {i} has {g.n} qubits, expected {n}")
    return StabilizerTableau.from_paulis(gens, parties)


def format_tableau(t):
    head = "parties: " + " ".join(f"q{i}={p}" for i, p in enumerate(t.parties))
    return "\n".join([head] + t.to_strings()) + "\n"


# subgroup orders -----------------------------------------------------------


def _exponent_basis_qubits(t, qubits):
    """Basis (over the k generators) of elements supported on ``qubits``."""
    keep = set(qubits)
    out = [j for j in range(t.n) if j not in keep]
    cols = out + [t.n + j for j in out]
    m = np.hstack([t.x, t.z])[:, cols]
    return gf2.kernel_basis(BitMatrix.from_dense(m.T, t.k)) if cols else BitMatrix.identity(t.k)


def subgroup_order_qubits(t, qubits):
    """log2 of the number of group elements acting as identity off ``qubits``."""
    keep = set(qubits)
    out = [j for j in range(t.n) if j not in keep]
    if not out:
        return t.k
    m = np.hstack([t.x[:, out], t.z[:, out]])
    return t.k - gf2.rank(BitMatrix.from_dense(m, 2 * len(out)))


def subgroup_order(t, subset):
    """log2 |G_R| for a party subset R."""
    return subgroup_order_qubits(t, t.qubits_of(subset))


@dataclass(frozen=True)
class SubgroupTable:
    """log2 |G_R| for every party subset R."""

    labels: tuple
    entries: dict = field(hash=False)

    def __getitem__(self, subset):
        return self.entries[_norm_subset(subset, self.labels)]

    def subsets(self):
        return list(self.entries)

    def full(self):
        return self.entries[frozenset(self.labels)]


def all_subsets(labels):
    labels = tuple(labels)
    for r in range(len(labels) + 1):
        for combo in itertools.combinations(labels, r):
            yield frozenset(combo)


def subgroup_table(t):
    if t.q > 16:
        raise ValueError("subgroup_table supports at most 16 parties")
    return SubgroupTable(t.party_labels, {s: subgroup_order(t, s) for s in all_subsets(t.party_labels)})


def product_subgroup_order(t, subsets):
    """log2 |G_{S1} G_{S2} ...| via the union of exponent-space bases."""
    bases = [_exponent_basis_qubits(t, t.qubits_of(s)) for s in subsets]
    bases = [b for b in bases if b.nrows]
    if not bases:
        return 0
    stacked = bases[0]
    for b in bases[1:]:
        stacked = stacked.vstack(b)
    return gf2.rank(stacked)


@dataclass(frozen=True)
class GHZCounts:
    p: int
    m_ab: int
    m_bc: int
    m_ac: int
    degenerate: bool = False

    def __iter__(self):
        return iter((self.p, self.m_ab, self.m_bc, self.m_ac))


def ghz_extraction_counts(t):
    """GHZ and Bell-pair content ``(p, m_AB, m_BC, m_AC)`` of a tripartite state.

    Parties are taken in ``t.party_labels`` order. An empty party (possible
    when ``party_order`` names a label with no qubits) contributes the
    trivial group and sets ``degenerate``.
    """
    if t.q != 3:
        raise ValueError(f"need exactly 3 parties, got {t.q}")
    a, b, c = t.party_labels
    g = t.k
    ga, gb, gc = (subgroup_order(t, s) for s in ((a,), (b,), (c,)))
    gab, gbc, gac = (subgroup_order(t, s) for s in ((a, b), (b, c), (a, c)))
    prod = product_subgroup_order(t, [(a, b), (b, c), (a, c)])
    p = g - prod
    vals = {}
    for name, gxy, gx, gy in (("m_ab", gab, ga, gb), ("m_bc", gbc, gb, gc), ("m_ac", gac, ga, gc)):
        twice = gxy - gx - gy - p
        if twice < 0 or twice % 2:
            raise TableauError(f"{name} = {twice}/2 is not a nonnegative integer")
        vals[name] = twice // 2
    if p < 0:
        raise TableauError("negative GHZ count")
    degenerate = any(not t.qubits_of((s,)) for s in (a, b, c))
    return GHZCounts(p, vals["m_ab"], vals["m_bc"], vals["m_ac"], degenerate)


# row reduction with phases ------------------------------------------------


class _Work:
    """Mutable copy of a tableau for row reduction and Clifford conjugation."""

    def __init__(self, x, z, phase):
        self.x = np.array(x, dtype=np.uint8)
        self.z = np.array(z, dtype=np.uint8)
        self.r = np.array(phase, dtype=np.int64) % 4

    def rowmul(self, targets, src):
        """Row ``t`` <- row ``t`` * row ``src`` for each target."""
        if len(targets) == 0:
            return
        targets = np.asarray(targets)
        self.r[targets] = product_phase(
            self.x[targets], self.z[targets], self.r[targets],
            self.x[src], self.z[src], self.r[src],
        )
        self.x[targets] ^= self.x[src]
        self.z[targets] ^= self.z[src]

    def swap(self, i, j):
        if i != j:
            for a in (self.x, self.z, self.r):
                a[[i, j]] = a[[j, i]]

    # conjugation U g U^dagger (the state is replaced by U|psi>)
    def h(self, q):
        self.r = (self.r + 2 * (self.x[:, q] & self.z[:, q])) % 4
        self.x[:, q], self.z[:, q] = self.z[:, q].copy(), self.x[:, q].copy()

    def s(self, q):
        self.r = (self.r + 2 * (self.x[:, q] & self.z[:, q])) % 4
        self.z[:, q] ^= self.x[:, q]

    def sdg(self, q):
        self.z[:, q] ^= self.x[:, q]
        self.r = (self.r + 2 * (self.x[:, q] & self.z[:, q])) % 4

    def pauli_x(self, q):
        self.r = (self.r + 2 * self.z[:, q]) % 4

    def pauli_z(self, q):
        self.r = (self.r + 2 * self.x[:, q]) % 4

    def cnot(self, a, b):
        xa, zb = self.x[:, a], self.z[:, b]
        flip = xa & zb & (self.x[:, b] ^ self.z[:, a] ^ 1)
        self.r = (self.r + 2 * flip) % 4
        self.x[:, b] ^= xa
        self.z[:, a] ^= zb

    def cz(self, a, b):
        self.h(b)
        self.cnot(a, b)
        self.h(b)

    def apply(self, gate):
        name, *qs = gate
        getattr(self, {"H": "h", "S": "s", "Sdg": "sdg", "X": "pauli_x", "Z": "pauli_z",
                       "CNOT": "cnot", "CZ": "cz"}[name])(*qs)

    def eliminate(self, part, rows=None):
        """Gauss-Jordan on ``x`` or ``z`` over the given row range.

        Returns the pivot columns; pivot ``i`` ends in row ``rows[0] + i``.
        """
        mat = self.x if part == "x" else self.z
        start, stop = (0, mat.shape[0]) if rows is None else rows
        pivots = []
        r = start
        for c in range(mat.shape[1]):
            if r == stop:
                break
            hits = np.flatnonzero(mat[r:stop, c]) + r
            if hits.size == 0:
                continue
            self.swap(r, int(hits[0]))
            others = np.flatnonzero(mat[start:stop, c]) + start
            self.rowmul(others[others != r], r)
            pivots.append(c)
            r += 1
        return pivots

    def tableau(self, parties, party_order=None, check=False):
        return StabilizerTableau(self.x, self.z, self.r, parties, party_order, check=check)


def canonical_form(t):
    """Same group, rows arranged as an X-block followed by a pure-Z block.

    The X-block rows have their X parts in reduced row echelon form; the
    remaining rows have zero X part and their Z parts are in reduced row
    echelon form. Use :func:`x_block_size` for the number of X-block rows.

    Raises:
        TableauError: if -I turns up in the group.
    """
    w = _Work(t.x, t.z, t.phase)
    piv = w.eliminate("x")
    w.eliminate("z", (len(piv), t.k))
    zero = ~(w.x.any(axis=1) | w.z.any(axis=1))
    if np.any(zero & (w.r == 2)):
        raise TableauError("-I is in the generated group")
    if np.any(zero):
        raise TableauError("generators are not independent")
    return w.tableau(t.parties, t.party_labels)


def x_block_size(t):
    """Number of canonical X-block rows (the GF(2) rank of the X part)."""
    return gf2.rank(BitMatrix.from_dense(t.x, t.n))


# graph form -----------------------------------------------------------------


def to_graph_state(t):
    """Local-Clifford-equivalent graph state.

    Returns ``(graph, gates)`` where ``gates`` is the ordered list of
    single-qubit gates ``(name, qubit)`` with names in ``H, S, Sdg, Z``
    such that applying them to the input state yields the graph state,
    up to a global phase.
    """
    from .graph import ColoredGraph

    if t.k != t.n:
        raise TableauError(f"need a pure state (k = n), got k={t.k}, n={t.n}")
    w = _Work(t.x, t.z, t.phase)
    gates = []
    while True:
        piv = gf2.rref(BitMatrix.from_dense(w.x, t.n))[1]
        if len(piv) == t.n:
            break
        q = min(set(range(t.n)) - set(piv))
        w.h(q)
        gates.append(("H", q))
    piv = w.eliminate("x")
    assert piv == list(range(t.n)) and np.array_equal(w.x, np.eye(t.n, dtype=np.uint8))
    for q in range(t.n):
        if w.z[q, q]:
            w.sdg(q)
            gates.append(("Sdg", q))
    for q in range(t.n):
        if w.r[q] == 2:
            w.pauli_z(q)
            gates.append(("Z", q))
    adj = w.z.copy()
    if not np.array_equal(adj, adj.T) or np.any(w.r):
        raise TableauError("internal: reduced tableau is not a graph-state tableau")
    return ColoredGraph(adj, t.parties), gates


# dense export ---------------------------------------------------------------


def _bit_positions(n, mask_bits):
    """Integer mask with qubit 0 as the most significant bit."""
    v = 0
    for q in np.flatnonzero(mask_bits):
        v |= 1 << (n - 1 - int(q))
    return v


def apply_pauli_dense(vec, x, z, phase):
    """Apply ``i^phase * P`` (Y-convention) to a dense state vector."""
    n = int(np.log2(vec.size))
    idx = np.arange(vec.size)
    xm = _bit_positions(n, x)
    zm = _bit_positions(n, z)
    sign = 1 - 2 * (np.bitwise_count(idx & zm) & 1).astype(np.int64)
    out = np.empty_like(vec)
    # (X^x Z^z v)[j ^ xm] = (-1)^{z.j} v[j]
    out[idx ^ xm] = sign * vec
    k = (int(phase) + int(np.sum(np.asarray(x) & np.asarray(z)))) % 4
    return (1j ** k) * out


def to_dense(t, max_qubits=20):
    """Normalized state vector fixed by every generator.

    Qubit 0 is the most significant bit. Global phase: the first nonzero
    amplitude is real and positive.
    """
    n = t.n
    if t.k != n:
        raise TableauError("to_dense needs a pure state (k = n)")
    if n > max_qubits:
        raise ValueError(f"{n} qubits exceeds the dense limit {max_qubits}")
    can = canonical_form(t)
    nx = x_block_size(can)
    zrows = can.z[nx:]
    signs = (can.phase[nx:] // 2).astype(np.uint8)
    v = gf2.solve(BitMatrix.from_dense(zrows, n), gf2.BitVector(signs)) if len(zrows) else gf2.BitVector(np.zeros(n))
    if v is None:
        raise TableauError("projector annihilates every basis state")
    vec = np.zeros(2 ** n, dtype=complex)
    vec[_bit_positions(n, v.bits)] = 1.0
    for i in range(t.k):
        vec = 0.5 * (vec + apply_pauli_dense(vec, t.x[i], t.z[i], t.phase[i]))
    norm = np.linalg.norm(vec)
    if norm < 1e-12:
        raise TableauError("projector annihilates every basis state")
    vec /= norm
    first = vec[np.flatnonzero(np.abs(vec) > 1e-12)[0]]
    return vec * (abs(first) / first)


# random states ---------------------------------------------------------------


def random_stabilizer_tableau(n, rng=None, parties=None, depth=None):
    """Random pure stabilizer state from a random Clifford circuit on |0...0>."""
    rng = np.random.default_rng(rng)
    w = _Work(np.zeros((n, n)), np.eye(n), np.zeros(n))
    depth = 3 * n * n + 5 if depth is None else depth
    for _ in range(depth):
        kind = rng.integers(4)
        a = int(rng.integers(n))
        if kind == 0:
            w.h(a)
        elif kind == 1:
            w.s(a)
        elif kind == 2 and n > 1:
            b = int(rng.integers(n - 1))
            w.cnot(a, b + (b >= a))
        else:
            w.pauli_x(a) if rng.integers(2) else w.pauli_z(a)
    return w.tableau(parties, check=True)


def intersection_log2(t1, t2):
    """log2 |S1 ∩ S2| counted on symplectic vectors (signs ignored)."""
    a, b = t1.symplectic(), t2.symplectic()
    return gf2.rank(a) + gf2.rank(b) - gf2.rank(a.vstack(b))
