"""Graph states: local complementation, Pauli measurement rules, big graphs.

Vertices keep their original index for the lifetime of a graph; deleting a
vertex only clears its edges and marks it inactive, so byproduct tags never
refer to a renumbered vertex.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf2
from ._backend import kernels
from .dyadic import DyadicOmega
from .frames import Elementary


class ColoredGraph:
    """Simple undirected graph with a party label per vertex.

    Args:
        adjacency: ``(n, n)`` 0/1 array or BitMatrix; must be symmetric with
            zero diagonal.
        parties: per-vertex labels (sequence or ``{vertex: label}``);
            defaults to one party ``"A"``.
        active: optional boolean mask of vertices still present.
        names: optional vertex names used by the text format.
    """

    def __init__(self, adjacency, parties=None, active=None, names=None):
        if isinstance(adjacency, gf2.BitMatrix):
            dense = adjacency.to_dense()
        else:
            dense = np.array(adjacency, dtype=np.uint8, ndmin=2) & 1
        if dense.size == 0:
            dense = dense.reshape(0, 0)
        n = dense.shape[0]
        if dense.shape != (n, n):
            raise ValueError("adjacency must be square")
        if np.any(np.diag(dense)):
            raise ValueError("adjacency has a nonzero diagonal")
        if not np.array_equal(dense, dense.T):
            raise ValueError("adjacency is not symmetric")
        self._words = gf2.pack(dense, n)
        self._words.flags.writeable = False
        if parties is None:
            parties = ["A"] * n
        elif isinstance(parties, dict):
            parties = [parties[v] for v in range(n)]
        self.party = tuple(str(p) for p in parties)
        if len(self.party) != n:
            raise ValueError("one party label per vertex required")
        act = np.ones(n, dtype=bool) if active is None else np.array(active, dtype=bool)
        act.flags.writeable = False
        self.active = act
        self.names = tuple(names) if names is not None else tuple(f"v{i}" for i in range(n))

    @classmethod
    def from_edges(cls, n, edges, parties=None):
        adj = np.zeros((n, n), dtype=np.uint8)
        for a, b in edges:
            if a == b:
                raise ValueError(f"self loop at {a}")
            adj[a, b] = adj[b, a] = 1
        return cls(adj, parties)

    @classmethod
    def _from_words(cls, words, party, active, names):
        g = cls.__new__(cls)
        words = np.ascontiguousarray(words)
        words.flags.writeable = False
        g._words = words
        g.party = party
        act = np.array(active, dtype=bool)
        act.flags.writeable = False
        g.active = act
        g.names = names
        return g

    @property
    def n_vertices(self):
        return self._words.shape[0]

    @property
    def words(self):
        return self._words

    @property
    def adjacency(self):
        return gf2.BitMatrix(self._words, self.n_vertices)

    def adj_dense(self):
        return gf2.unpack(self._words, self.n_vertices)

    def neighbors(self, a):
        return [int(v) for v in kernels.row_indices(self._words[a])]

    def degree(self, a):
        return int(np.bitwise_count(self._words[a]).sum())

    def edges(self):
        d = self.adj_dense()
        return [(int(a), int(b)) for a, b in zip(*np.nonzero(np.triu(d)))]

    @property
    def party_labels(self):
        return tuple(sorted(set(self.party)))

    def active_vertices(self):
        return [int(v) for v in np.flatnonzero(self.active)]

    def is_isolated(self, a):
        return not self._words[a].any()

    def copy_words(self):
        return np.array(self._words, copy=True)

    def __eq__(self, other):
        return (
            isinstance(other, ColoredGraph)
            and np.array_equal(self._words, other.words)
            and self.party == other.party
            and np.array_equal(self.active, other.active)
        )

    def __repr__(self):
        return f"ColoredGraph(n={self.n_vertices}, edges={len(self.edges())}, parties={self.party_labels})"

    def relabel_parties(self, parties):
        return ColoredGraph._from_words(self._words, tuple(str(p) for p in parties), self.active, self.names)

    def compact(self):
        """Drop inactive vertices, renumbering the rest."""
        keep = self.active_vertices()
        d = self.adj_dense()[np.ix_(keep, keep)]
        return ColoredGraph(d, [self.party[v] for v in keep], names=[self.names[v] for v in keep])


# local operations ----------------------------------------------------------------


def local_complement(g, a):
    """tau_a: toggle every edge between two neighbours of ``a``."""
    _check_vertex(g, a)
    w = g.copy_words()
    kernels.local_complement(w, a)
    return ColoredGraph._from_words(w, g.party, g.active, g.names)


def delete_vertex(g, a):
    _check_vertex(g, a)
    w = g.copy_words()
    kernels.delete_vertex(w, a)
    act = g.active.copy()
    act[a] = False
    return ColoredGraph._from_words(w, g.party, act, g.names)


def _check_vertex(g, a):
    if not (0 <= a < g.n_vertices) or not g.active[a]:
        raise IndexError(f"vertex {a} is not an active vertex")


@dataclass(frozen=True)
class LocalUnitaryTag:
    kind: Elementary
    vertex: int


@dataclass(frozen=True)
class MeasurementOutcome:
    """Result of contracting vertex ``a`` with ``<j, s|``.

    ``<j,s|_a |G> = scalar * U |reduced>`` with ``U`` the product of the
    byproduct unitaries (they act on distinct vertices).
    """

    reduced: ColoredGraph
    byproducts: tuple
    scalar: DyadicOmega


class _CollapseType:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Collapse"

    def __bool__(self):
        return False


Collapse = _CollapseType()


def _choose_b0(nbrs, b0_rule):
    if b0_rule is None or b0_rule == "lowest":
        return nbrs[0]
    if isinstance(b0_rule, np.random.Generator):
        return int(b0_rule.choice(nbrs))
    if callable(b0_rule):
        b = int(b0_rule(list(nbrs)))
        if b not in nbrs:
            raise ValueError(f"b0 rule returned non-neighbour {b}")
        return b
    b = int(b0_rule)
    if b not in nbrs:
        raise ValueError(f"{b} is not a neighbour")
    return b


def measure(g, a, basis, sign, b0_rule="lowest"):
    """Project vertex ``a`` of the graph state onto ``|basis, sign>``.

    Args:
        g: the graph.
        a: active vertex.
        basis: ``"x"``, ``"y"`` or ``"z"``.
        sign: +1 or -1 (``"+"``/``"-"`` also accepted).
        b0_rule: neighbour choice for x measurements: ``"lowest"``, a
            specific vertex, a callable on the neighbour list, or a numpy
            Generator for a uniform choice.

    Returns:
        MeasurementOutcome, or ``Collapse`` for an x,- projection of an
        isolated vertex.
    """
    _check_vertex(g, a)
    if sign in ("+", "-"):
        sign = 1 if sign == "+" else -1
    if sign not in (1, -1) or basis not in ("x", "y", "z"):
        raise ValueError(f"bad measurement {basis}{sign}")
    nbrs = g.neighbors(a)
    minus = sign < 0
    half = DyadicOmega(1, 0, 0, 0, 1)
    if basis == "z":
        red = delete_vertex(g, a)
        tags = tuple(LocalUnitaryTag(Elementary.Sz, b) for b in nbrs) if minus else ()
        return MeasurementOutcome(red, tags, half)
    if basis == "y":
        red = delete_vertex(local_complement(g, a), a)
        kind = Elementary.SqrtPlusIZ if minus else Elementary.SqrtMinusIZ
        m = (-1 if minus else 1) * (len(nbrs) - 1)
        return MeasurementOutcome(
            red, tuple(LocalUnitaryTag(kind, b) for b in nbrs), DyadicOmega.omega_power(m, 1)
        )
    if not nbrs:
        if minus:
            return Collapse
        return MeasurementOutcome(delete_vertex(g, a), (), DyadicOmega(1))
    b0 = _choose_b0(nbrs, b0_rule)
    nb0 = set(g.neighbors(b0))
    na = set(nbrs)
    if minus:
        zs = sorted(nb0 - na - {a})
        kind = Elementary.SqrtMinusIY
    else:
        zs = sorted(na - nb0 - {b0})
        kind = Elementary.SqrtPlusIY
    h = local_complement(local_complement(local_complement(g, b0), a), b0)
    red = delete_vertex(h, a)
    tags = (LocalUnitaryTag(kind, b0),) + tuple(LocalUnitaryTag(Elementary.Sz, v) for v in zs)
    return MeasurementOutcome(red, tags, half)


# big graph ------------------------------------------------------------------------


def build_big_graph(g, perms):
    """Graph whose overlap with |+...+> is the multi-invariant of ``g``.

    Vertex ``(a, i)`` (base vertex ``a``, replica ``i``) gets index
    ``i * |V| + a``; the adjacency is
    ``gamma_ab (delta_ij + delta_{sigma_a(i), sigma_b(j)}) mod 2``.
    """
    from .invariants import PermutationTuple

    if not isinstance(perms, PermutationTuple):
        raise TypeError("perms must be a PermutationTuple")
    missing = set(g.party) - set(perms.parties)
    if missing:
        raise ValueError(f"parties {sorted(missing)} have no permutation")
    if not g.active.all():
        g = g.compact()
    nv = g.n_vertices
    nr = perms.n_rep
    sig = np.array([perms.sigma[p] for p in g.party], dtype=np.int64).reshape(nv, nr)
    inv = np.argsort(sig, axis=1)
    big = np.zeros((nr * nv, nr * nv), dtype=np.uint8)
    reps = np.arange(nr)
    for a, b in g.edges():
        # sigma_a(i) = sigma_b(j)  <=>  j = sigma_b^{-1}(sigma_a(i))
        for u, v in ((a, b), (b, a)):
            j = inv[v][sig[u][reps]]
            big[reps * nv + u, reps * nv + v] ^= 1
            big[reps * nv + u, j * nv + v] ^= 1
    np.fill_diagonal(big, 0)
    parties = [g.party[v % nv] for v in range(nr * nv)]
    names = [f"{g.names[v % nv]}_{v // nv}" for v in range(nr * nv)]
    return ColoredGraph(big, parties, names=names)


# conversions ----------------------------------------------------------------------


def graph_tableau(g):
    """Stabilizer tableau with generators ``X_a prod_{b in N(a)} Z_b``."""
    from .tableau import StabilizerTableau

    if not g.active.all():
        g = g.compact()
    n = g.n_vertices
    return StabilizerTableau(np.eye(n, dtype=np.uint8), g.adj_dense(), None, g.party, check=False)


def graph_to_dense(g):
    """CZ-construction state vector; qubit 0 is the most significant bit."""
    if not g.active.all():
        g = g.compact()
    n = g.n_vertices
    if n > 24:
        raise ValueError("too many qubits for a dense vector")
    idx = np.arange(2 ** n)
    bits = (idx[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1
    parity = np.zeros(2 ** n, dtype=np.int64)
    for a, b in g.edges():
        parity ^= bits[:, a] & bits[:, b]
    return (1 - 2 * parity) / 2 ** (n / 2)


# text format ----------------------------------------------------------------------


class GraphFormatError(ValueError):
    pass


def parse_graph(text):
    """Parse ``vertices:``, ``parties:`` and ``edge:`` lines.

    Without a ``parties:`` line every vertex belongs to party ``A``; with one,
    every vertex must be listed.
    """
    names = None
    party_tokens = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        key = key.strip().lower()
        toks = rest.split()
        if key == "vertices":
            names = toks
        elif key == "parties":
            for tok in toks:
                v, eq, p = tok.partition("=")
                if not eq:
                    raise GraphFormatError(f"line {lineno}: bad party entry {tok!r}")
                party_tokens[v] = p
        elif key == "edge":
            if len(toks) != 2:
                raise GraphFormatError(f"line {lineno}: edge needs two endpoints")
            edges.append((lineno, toks[0], toks[1]))
        else:
            raise GraphFormatError(f"line {lineno}: unknown record {key!r}")
    if names is None:
        raise GraphFormatError("missing 'vertices:' line")
    index = {v: i for i, v in enumerate(names)}
    if len(index) != len(names):
        raise GraphFormatError("duplicate vertex names")
    adj = np.zeros((len(names), len(names)), dtype=np.uint8)
    for lineno, a, b in edges:
        if a not in index or b not in index:
            raise GraphFormatError(f"line {lineno}: unknown vertex")
        if a == b:
            raise GraphFormatError(f"line {lineno}: self loop")
        adj[index[a], index[b]] = adj[index[b], index[a]] = 1
    unknown = set(party_tokens) - set(index)
    if unknown:
        raise GraphFormatError(f"party given for unknown vertices {sorted(unknown)}")
    missing = [v for v in names if v not in party_tokens]
    if party_tokens and missing:
        raise GraphFormatError(f"no party given for vertices {missing}")
    parties = [party_tokens.get(v, "A") for v in names]
    return ColoredGraph(adj, parties, names=names)


def format_graph(g):
    lines = [
        "vertices: " + " ".join(g.names),
        "parties: " + " ".join(f"{g.names[v]}={g.party[v]}" for v in range(g.n_vertices)),
    ]
    lines += [f"edge: {g.names[a]} {g.names[b]}" for a, b in g.edges()]
    return "\n".join(lines) + "\n"


def ghz_graph():
    """The 3-vertex path 0-1-2 with parties A, B, C (LC-equivalent to GHZ)."""
    return ColoredGraph.from_edges(3, [(0, 1), (1, 2)], ["A", "B", "C"])
