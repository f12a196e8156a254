"""Which multi-invariant to compute: permutation tuples and Coxeter data.

A ``PermutationTuple`` assigns to each party ``a`` a permutation ``sigma_a``
of the replicas ``0..n_rep-1``: ket replica ``i`` of party ``a`` is
contracted with bra replica ``sigma_a(i)``. Permutations are stored as
image arrays, and ``(g h)(i) = g(h(i))``.
"""

from __future__ import annotations

import itertools
import math
import re
import string
from collections import deque
from dataclasses import dataclass, field

import numpy as np

DEFAULT_LABELS = tuple(string.ascii_uppercase)


# permutations ----------------------------------------------------------------


def compose(g, h):
    """``g h`` as image arrays: ``i -> g[h[i]]``."""
    return np.asarray(g)[np.asarray(h)]


def inverse(p):
    return np.argsort(np.asarray(p))


def cycles(p):
    """Cycle decomposition, each cycle starting at its smallest element."""
    p = np.asarray(p)
    seen = np.zeros(len(p), dtype=bool)
    out = []
    for s in range(len(p)):
        if seen[s]:
            continue
        cyc = []
        i = s
        while not seen[i]:
            seen[i] = True
            cyc.append(int(i))
            i = int(p[i])
        out.append(tuple(cyc))
    return out


def cycle_count(p):
    return len(cycles(p))


def parse_cycles(text, n=None):
    """Parse ``"(0 1 2)(3)"`` into an image array of length ``n``."""
    groups = re.findall(r"\(([^()]*)\)", text)
    if re.sub(r"\([^()]*\)", "", text).strip():
        raise ValueError(f"bad cycle notation {text!r}")
    cyc = [[int(t) for t in g.replace(",", " ").split()] for g in groups]
    used = [i for c in cyc for i in c]
    if len(used) != len(set(used)):
        raise ValueError(f"repeated element in {text!r}")
    size = max(used, default=-1) + 1 if n is None else n
    p = np.arange(size)
    for c in cyc:
        for a, b in zip(c, c[1:] + c[:1]):
            if a >= size or b >= size:
                raise ValueError(f"element out of range in {text!r}")
            p[a] = b
    return p


def format_cycles(p):
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles(p))


class PermutationTuple:
    """One permutation of the replicas per party.

    Args:
        sigma: ``{party: image array}``; all of the same length.
        parties: party order; defaults to the dict order.
    """

    def __init__(self, sigma, parties=None):
        parties = tuple(str(p) for p in (parties if parties is not None else sigma))
        sig = {}
        n_rep = None
        for p in parties:
            arr = np.array(sigma[p], dtype=np.int64)
            arr.flags.writeable = False
            if n_rep is None:
                n_rep = len(arr)
            if len(arr) != n_rep or sorted(arr.tolist()) != list(range(n_rep)):
                raise ValueError(f"sigma[{p}] is not a permutation of {n_rep} replicas")
            sig[p] = arr
        if not parties:
            raise ValueError("need at least one party")
        self.parties = parties
        self.sigma = sig
        self.n_rep = int(n_rep)

    @property
    def q(self):
        return len(self.parties)

    def __getitem__(self, party):
        return self.sigma[party]

    def as_list(self):
        return [self.sigma[p] for p in self.parties]

    def relabel(self, labels):
        """Same permutations under new party names (matched by position)."""
        labels = tuple(labels)
        if len(labels) != self.q:
            raise ValueError(f"{len(labels)} labels for {self.q} parties")
        return PermutationTuple({new: self.sigma[old] for new, old in zip(labels, self.parties)}, labels)

    def apply_gauge(self, g, h):
        """``(g sigma_1 h, ..., g sigma_q h)``."""
        return PermutationTuple({p: compose(g, compose(self.sigma[p], h)) for p in self.parties}, self.parties)

    def gauge_fixed(self):
        """Relabel bras so the last party's permutation is the identity."""
        g = inverse(self.sigma[self.parties[-1]])
        return self.apply_gauge(g, np.arange(self.n_rep))

    def pair_cycles(self, a, b):
        """Number of cycles of ``sigma_a sigma_b^{-1}``."""
        return cycle_count(compose(self.sigma[a], inverse(self.sigma[b])))

    def components(self):
        """Connected components of the contraction graph (kets + bras)."""
        parent = list(range(2 * self.n_rep))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for p in self.parties:
            for i, j in enumerate(self.sigma[p]):
                ri, rj = find(i), find(self.n_rep + int(j))
                if ri != rj:
                    parent[ri] = rj
        groups = {}
        for i in range(2 * self.n_rep):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())

    def restrict(self, kets):
        """Sub-tuple on a union of components given by its ket replicas."""
        kets = sorted(kets)
        bra_set = sorted({int(self.sigma[p][i]) for p in self.parties for i in kets})
        bidx = {b: i for i, b in enumerate(bra_set)}
        if len(bra_set) != len(kets):
            raise ValueError("ket set is not closed under the contraction")
        return PermutationTuple(
            {p: [bidx[int(self.sigma[p][k])] for k in kets] for p in self.parties}, self.parties
        )

    def __eq__(self, other):
        return (
            isinstance(other, PermutationTuple)
            and self.parties == other.parties
            and all(np.array_equal(self.sigma[p], other.sigma[p]) for p in self.parties)
        )

    def __repr__(self):
        body = ", ".join(f"{p}={format_cycles(self.sigma[p])}" for p in self.parties)
        return f"PermutationTuple(n_rep={self.n_rep}: {body})"

    def to_dict(self):
        return {p: format_cycles(self.sigma[p]) for p in self.parties}


def identity_tuple(n_rep, parties):
    return PermutationTuple({p: np.arange(n_rep) for p in parties}, parties)


def multi_entropy_tuple(n, q, parties=None):
    """Renyi multi-entropy tuple: replicas on Z_n^{q-1}.

    Replica ``r`` has coordinates ``r_a = (r // n**a) % n``; ``sigma_a``
    adds 1 to coordinate ``a`` (mod n) for the first ``q-1`` parties and
    the last party gets the identity.
    """
    if n < 1 or q < 2:
        raise ValueError("need n >= 1 and q >= 2")
    parties = tuple(parties) if parties is not None else DEFAULT_LABELS[:q]
    n_rep = n ** (q - 1)
    r = np.arange(n_rep)
    sigma = {}
    for a, p in enumerate(parties[:-1]):
        coord = (r // n ** a) % n
        sigma[p] = r + (((coord + 1) % n) - coord) * n ** a
    sigma[parties[-1]] = r.copy()
    return PermutationTuple(sigma, parties)


def kempe_tuple(parties=("A", "B", "C")):
    """(identity, 3-cycle, inverse 3-cycle) on three replicas."""
    a, b, c = parties
    return PermutationTuple({a: [0, 1, 2], b: [1, 2, 0], c: [2, 0, 1]}, parties)


def renyi_tuple(n, parties=("A", "B")):
    """Tr rho_A^n for two parties."""
    return multi_entropy_tuple(n, 2, parties)


# topology -------------------------------------------------------------------------


@dataclass(frozen=True)
class TripartiteTopology:
    n_vertices: int
    faces: int
    euler: int
    genus: object  # Fraction-free int, or None when the gluing is non-orientable
    orientable: bool
    components: int
    component_genera: tuple

    def as_tuple(self):
        return (self.n_vertices, self.faces, self.euler, self.genus)


def _topology_numbers(t):
    a, b, c = t.parties
    N = 2 * t.n_rep
    F = t.pair_cycles(a, b) + t.pair_cycles(b, c) + t.pair_cycles(c, a)
    chi = N - 3 * N // 2 + F
    return N, F, chi


def tripartite_topology(t):
    """Vertices, faces, Euler characteristic and genus of a 3-party tuple.

    An odd Euler characteristic is reported with ``genus=None`` and
    ``orientable=False``. ``component_genera`` lists the genus of each
    connected component of the contraction graph.
    """
    if t.q != 3:
        raise ValueError("tripartite_topology needs exactly 3 parties")
    N, F, chi = _topology_numbers(t)
    orientable = chi % 2 == 0
    genus = (2 - chi) // 2 if orientable else None
    comp_genera = []
    for comp in t.components():
        kets = [v for v in comp if v < t.n_rep]
        sub = t.restrict(kets)
        _, _, c_chi = _topology_numbers(sub)
        comp_genera.append((2 - c_chi) // 2 if c_chi % 2 == 0 else None)
    return TripartiteTopology(N, F, chi, genus, orientable, len(comp_genera), tuple(comp_genera))


# Coxeter groups ---------------------------------------------------------------------


class CoxeterSpec:
    """Coxeter matrix with one generator per party.

    Args:
        m: symmetric ``q x q`` integer matrix with ``m_ii = 1`` and
            ``m_ij >= 2`` off the diagonal.
        labels: party names (default ``A, B, C, ...``).
    """

    def __init__(self, m, labels=None):
        m = np.array(m, dtype=np.int64)
        q = m.shape[0]
        if m.shape != (q, q) or not np.array_equal(m, m.T):
            raise ValueError("Coxeter matrix must be square and symmetric")
        if np.any(np.diag(m) != 1):
            raise ValueError("Coxeter matrix needs m_ii = 1")
        off = m[~np.eye(q, dtype=bool)]
        if np.any(off < 2):
            raise ValueError("off-diagonal entries must be >= 2")
        m.flags.writeable = False
        self.m = m
        self.labels = tuple(labels) if labels is not None else DEFAULT_LABELS[:q]
        if len(self.labels) != q:
            raise ValueError("one label per generator required")

    @classmethod
    def from_upper(cls, entries, labels=None):
        """Row-major upper triangle, e.g. ``(m_AB, m_AC, m_BC)`` for q=3."""
        entries = [int(e) for e in entries]
        q = int(round((1 + math.sqrt(1 + 8 * len(entries))) / 2))
        if q * (q - 1) // 2 != len(entries):
            raise ValueError(f"{len(entries)} entries is not a triangular count")
        m = np.ones((q, q), dtype=np.int64)
        it = iter(entries)
        for i in range(q):
            for j in range(i + 1, q):
                m[i, j] = m[j, i] = next(it)
        return cls(m, labels)

    @classmethod
    def from_triple(cls, m_ab, m_bc, m_ca, labels=("A", "B", "C")):
        return cls.from_upper([m_ab, m_ca, m_bc], labels)

    @classmethod
    def all_twos(cls, q, labels=None):
        return cls.from_upper([2] * (q * (q - 1) // 2), labels)

    @classmethod
    def dihedral(cls, m, labels=("A", "B")):
        return cls.from_upper([m], labels)

    @property
    def q(self):
        return self.m.shape[0]

    def __getitem__(self, pair):
        a, b = pair
        return int(self.m[self.labels.index(a), self.labels.index(b)])

    def bilinear_form(self):
        return -np.cos(np.pi / self.m)

    def is_finite(self):
        """Finite type iff the bilinear form is positive definite."""
        return bool(np.linalg.eigvalsh(self.bilinear_form()).min() > 1e-10)

    def restrict(self, labels):
        idx = [self.labels.index(x) for x in labels]
        return CoxeterSpec(self.m[np.ix_(idx, idx)], [self.labels[i] for i in idx])

    def upper(self):
        return [int(self.m[i, j]) for i in range(self.q) for j in range(i + 1, self.q)]

    def __repr__(self):
        return f"CoxeterSpec({dict(zip(self.labels, range(self.q)))}, m={self.upper()})"


@dataclass
class CayleyGraph:
    """Cayley graph of a finite Coxeter group under left multiplication.

    ``perms[i][e]`` is the index of ``r_i g_e``. Elements are in BFS order
    (word length, then generator index); ``parity`` is word length mod 2.
    """

    labels: tuple
    perms: list
    parity: np.ndarray
    depth: np.ndarray
    matrices: list = field(repr=False, default=None)

    @property
    def order(self):
        return len(self.parity)


class CoxeterGenerationError(RuntimeError):
    pass


def generate_coxeter(spec, bound=20000):
    """Enumerate the group generated by reflections of ``spec``.

    Raises:
        CoxeterGenerationError: if more than ``bound`` elements appear.
    """
    q = spec.q
    B = spec.bilinear_form()
    gens = []
    for i in range(q):
        r = np.eye(q)
        r[i, :] -= 2 * B[i, :]
        gens.append(r)

    def key(mat):
        return (np.round(mat, 9) + 0.0).tobytes()

    elems = [np.eye(q)]
    depth = [0]
    index = {key(elems[0]): 0}
    perms = [[] for _ in range(q)]
    queue = deque([0])
    while queue:
        e = queue.popleft()
        for i, r in enumerate(gens):
            h = r @ elems[e]
            k = key(h)
            j = index.get(k)
            if j is None:
                j = len(elems)
                if j >= bound:
                    raise CoxeterGenerationError(f"more than {bound} elements; is the spec finite?")
                index[k] = j
                elems.append(h)
                depth.append(depth[e] + 1)
                queue.append(j)
            perms[i].append(j)
    depth = np.array(depth)
    perms = [np.array(p, dtype=np.int64) for p in perms]
    return CayleyGraph(spec.labels, perms, depth % 2, depth, elems)


def _components(n, perms):
    parent = np.arange(n)

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for p in perms:
        for a, b in enumerate(p):
            ra, rb = find(a), find(int(b))
            if ra != rb:
                parent[ra] = rb
    return len({find(i) for i in range(n)})


@dataclass(frozen=True)
class SubgraphCounts:
    """``n_S`` for nonempty proper color subsets ``S`` (retained colors)."""

    counts: dict
    n_rep_total: int

    def __getitem__(self, subset):
        if isinstance(subset, str):
            subset = tuple(subset)
        return self.counts[frozenset(subset)]


def subgraph_counts(cg, spec=None):
    """Connected components of the Cayley graph restricted to each color subset."""
    labels = cg.labels
    counts = {}
    for r in range(1, len(labels)):
        for combo in itertools.combinations(range(len(labels)), r):
            counts[frozenset(labels[i] for i in combo)] = _components(cg.order, [cg.perms[i] for i in combo])
    return SubgraphCounts(counts, cg.order // 2)


def parabolic_order(spec, subset):
    return generate_coxeter(spec.restrict(list(subset))).order


def cayley_to_tuple(cg):
    """Kets on even elements, bras on odd ones; gauge fixed."""
    even = np.flatnonzero(cg.parity == 0)
    odd = np.flatnonzero(cg.parity == 1)
    bra_index = np.full(cg.order, -1)
    bra_index[odd] = np.arange(len(odd))
    sigma = {lab: bra_index[cg.perms[i][even]] for i, lab in enumerate(cg.labels)}
    return PermutationTuple(sigma, cg.labels).gauge_fixed()


def coxeter_tuple(spec):
    return cayley_to_tuple(generate_coxeter(spec))


# spec file ---------------------------------------------------------------------------


class SpecFormatError(ValueError):
    pass


@dataclass
class InvariantSpec:
    """Parsed invariant spec file."""

    kind: str
    perms: PermutationTuple = None
    coxeter: CoxeterSpec = None
    n: int = None
    q: int = None

    def tuple(self, labels=None):
        if self.kind == "permutations":
            t = self.perms
        elif self.kind == "coxeter":
            t = coxeter_tuple(self.coxeter)
        else:
            t = multi_entropy_tuple(self.n, self.q)
        return t.relabel(labels) if labels is not None else t

    def describe(self):
        if self.kind == "permutations":
            return {"type": "permutations", "sigma": self.perms.to_dict()}
        if self.kind == "coxeter":
            return {"type": "coxeter", "m": self.coxeter.upper()}
        return {"type": "renyi-multientropy", "n": self.n, "q": self.q}


def parse_invariant_spec(text):
    fields = {}
    perm_lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition(":")
        if not sep:
            raise SpecFormatError(f"line {lineno}: expected 'key: value'")
        key, val = key.strip(), val.strip()
        if key.lower() in ("type", "m", "n", "q", "parties", "n_rep"):
            fields[key.lower()] = (lineno, val)
        else:
            perm_lines.append((lineno, key, val))
    if "type" not in fields:
        raise SpecFormatError("missing 'type:' line")
    kind = fields["type"][1].lower()
    try:
        if kind == "permutations":
            if not perm_lines:
                raise SpecFormatError("no permutation lines")
            n_rep = int(fields["n_rep"][1]) if "n_rep" in fields else None
            if n_rep is None:
                n_rep = 1 + max(
                    (int(x) for _, _, v in perm_lines for x in re.findall(r"\d+", v)), default=0
                )
            sigma = {}
            for lineno, key, val in perm_lines:
                try:
                    sigma[key] = parse_cycles(val, n_rep)
                except ValueError as exc:
                    raise SpecFormatError(f"line {lineno}: {exc}") from None
            return InvariantSpec("permutations", perms=PermutationTuple(sigma))
        if kind == "coxeter":
            if "m" not in fields:
                raise SpecFormatError("coxeter spec needs an 'm:' line")
            entries = fields["m"][1].split()
            labels = fields["parties"][1].split() if "parties" in fields else None
            spec = CoxeterSpec.from_upper(entries, labels)
            if not spec.is_finite():
                raise SpecFormatError("Coxeter spec is not of finite type")
            return InvariantSpec("coxeter", coxeter=spec)
        if kind == "renyi-multientropy":
            n = int(fields["n"][1])
            q = int(fields["q"][1])
            return InvariantSpec("renyi-multientropy", n=n, q=q)
    except KeyError as exc:
        raise SpecFormatError(f"missing field {exc}") from None
    except ValueError as exc:
        if isinstance(exc, SpecFormatError):
            raise
        raise SpecFormatError(str(exc)) from None
    raise SpecFormatError(f"unknown spec type {kind!r}")


def format_invariant_spec(spec):
    if spec.kind == "permutations":
        lines = ["type: permutations", f"n_rep: {spec.perms.n_rep}"]
        lines += [f"{p}: {format_cycles(spec.perms[p])}" for p in spec.perms.parties]
    elif spec.kind == "coxeter":
        lines = ["type: coxeter", "m: " + " ".join(map(str, spec.coxeter.upper()))]
    else:
        lines = ["type: renyi-multientropy", f"n: {spec.n}", f"q: {spec.q}"]
    return "\n".join(lines) + "\n"
