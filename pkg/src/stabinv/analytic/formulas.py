"""Closed-form multi-invariants from stabilizer subgroup orders.

Every value is an exact rational in log2. ``g_R`` below means
``log2 |G_R|`` and ``gP`` means ``log2 |G_AB . G_BC . G_AC|``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from ..invariants import (
    CoxeterSpec,
    generate_coxeter,
    kempe_tuple,
    subgraph_counts,
)
from ..tableau import (
    all_subsets,
    ghz_extraction_counts,
    product_subgroup_order,
    subgroup_order,
    subgroup_table,
)


def entanglement_entropy(t, subset):
    """Flat Renyi entropy ``(k - g_R - g_Rbar) / 2`` of the region ``subset``."""
    labels = t.party_labels
    r = frozenset([subset] if subset in labels else subset)
    rbar = frozenset(labels) - r
    return Fraction(t.k - subgroup_order(t, r) - subgroup_order(t, rbar), 2)


def _abc(t):
    if t.q != 3:
        raise ValueError(f"need exactly 3 parties, got {t.q}")
    return t.party_labels


def _tripartite_orders(t):
    a, b, c = _abc(t)
    gx = {x: subgroup_order(t, (x,)) for x in (a, b, c)}
    gp = product_subgroup_order(t, [(a, b), (b, c), (a, c)])
    return a, b, c, gx, gp


def renyi2_multientropy(t):
    """``E_2 = g - g_A - g_B - g_C``."""
    a, b, c, gx, _ = _tripartite_orders(t)
    return Fraction(t.k - gx[a] - gx[b] - gx[c])


def renyi_multientropy_tripartite(t, n):
    """``E_n = g - (n/2)(g_A + g_B + g_C) + ((n-2)/2) gP``.

    Normalized as ``E_n = log2 Z_n / (1 - n)`` with ``Z_n`` the multi-entropy
    tuple value; any rational ``n`` is accepted, including ``n = 1``.
    """
    n = Fraction(n)
    a, b, c, gx, gp = _tripartite_orders(t)
    return t.k - n / 2 * (gx[a] + gx[b] + gx[c]) + (n - 2) / 2 * gp


def multientropy_from_log2z(log2z, n):
    """Invert the normalization: ``log2 Z_n / (1 - n)``."""
    return Fraction(log2z) / (1 - Fraction(n))


@dataclass(frozen=True)
class TripartiteInvariant:
    log2_z: Fraction
    degenerate: bool


def _tuple_numbers(t_labels, tup):
    a, b, c = t_labels
    tup = _aligned(t_labels, tup)
    N = 2 * tup.n_rep
    comps = len(tup.components())
    n_xy = {
        (a, b): tup.pair_cycles(a, b),
        (b, c): tup.pair_cycles(b, c),
        (a, c): tup.pair_cycles(a, c),
    }
    return tup, N, comps, n_xy


def _aligned(labels, tup):
    if set(labels) <= set(tup.parties):
        return tup
    return tup.relabel(labels)


def tripartite_multi_invariant(t, tup, detail=False):
    """log2 |Z| from GHZ extraction: ``p (c - N/2) + sum m_XY (n_XY - N/2)``."""
    a, b, c = _abc(t)
    counts = ghz_extraction_counts(t)
    _, N, comps, n_xy = _tuple_numbers((a, b, c), tup)
    half = Fraction(N, 2)
    val = counts.p * (comps - half)
    val += counts.m_ab * (n_xy[(a, b)] - half)
    val += counts.m_bc * (n_xy[(b, c)] - half)
    val += counts.m_ac * (n_xy[(a, c)] - half)
    val = Fraction(val)
    if detail:
        return TripartiteInvariant(val, counts.degenerate)
    return val


def grouped_tripartite_formula(t, tup, with_group_factor=False):
    """The grouped form of the tripartite invariant as usually displayed.

    ``sum_X (N - n_XY - n_XZ)/2 g_X - sum_XY (N/2 - n_XY)/2 g_XY
    + (F - N/2 - 2)/2 gP``. With ``with_group_factor`` the missing
    ``genus * g`` term is added, which makes it equal to
    :func:`tripartite_multi_invariant` for every connected tuple. Without
    it the two agree at genus 0 only.
    """
    a, b, c = _abc(t)
    tup, N, comps, n_xy = _tuple_numbers((a, b, c), tup)
    st = subgroup_table(t)
    gp = product_subgroup_order(t, [(a, b), (b, c), (a, c)])
    n = {frozenset(k): v for k, v in n_xy.items()}
    F = sum(n_xy.values())
    val = Fraction(0)
    for x in (a, b, c):
        others = [y for y in (a, b, c) if y != x]
        val += Fraction(N - n[frozenset((x, others[0]))] - n[frozenset((x, others[1]))], 2) * st[(x,)]
    for pair in n:
        val -= Fraction(Fraction(N, 2) - n[pair], 2) * st[pair]
    val += Fraction(F - Fraction(N, 2) - 2, 2) * gp
    if with_group_factor:
        genus = Fraction(2 - (F - Fraction(N, 2)), 2)
        val += genus * t.k
    return val


@dataclass(frozen=True)
class KempeRecord:
    """Trusted Kempe value next to the commonly displayed closed form.

    ``display_log2`` is log2 Z obtained from the display
    ``Z^2 = |G_A||G_B||G_C| / |G_AB . G_BC . G_AC|``.
    """

    trusted_log2: Fraction
    display_log2: Fraction
    agree: bool


def kempe_invariant(t):
    a, b, c, gx, gp = _tripartite_orders(t)
    trusted = tripartite_multi_invariant(t, kempe_tuple((a, b, c)))
    display = Fraction(gx[a] + gx[b] + gx[c] - gp, 2)
    return KempeRecord(trusted, display, trusted == display)


# Coxeter conjecture --------------------------------------------------------------------


def k_table(st, labels=None):
    """``log2 k_{G_S} = sum_{R subset S} (-1)^{|S|-|R|} g_R`` for every S.

    Args:
        st: SubgroupTable or a plain ``{frozenset: log2 order}`` mapping.
    """
    entries = st.entries if hasattr(st, "entries") else st
    labels = tuple(labels) if labels is not None else tuple(st.labels)
    out = {}
    for s in all_subsets(labels):
        out[s] = sum(
            (-1) ** (len(s) - len(r)) * entries[r] for r in all_subsets(sorted(s))
        )
    return out


def _relabel_spec(spec, labels):
    if tuple(spec.labels) == tuple(labels):
        return spec
    if len(labels) != spec.q:
        raise ValueError(f"spec has {spec.q} parties, state has {len(labels)}")
    return CoxeterSpec(spec.m, labels)


def conjecture_exponents(spec):
    """Coefficient of each ``g_R`` in the conjectured ``log2 Z^2``.

    ``log2 Z^2 = -(|K|/2) g + log2 k_G + sum_{S proper, nonempty} n_S log2 k_{G_S}``
    with ``n_S`` the number of components of the Cayley graph keeping the
    colors in ``S``. Returns ``{frozenset R: Fraction}``.
    """
    cg = generate_coxeter(spec)
    counts = subgraph_counts(cg).counts
    full = frozenset(spec.labels)
    n_s = dict(counts)
    n_s[full] = 1
    coef = {r: Fraction(0) for r in all_subsets(spec.labels)}
    for s, ns in n_s.items():
        for r in all_subsets(sorted(s)):
            coef[r] += ns * (-1) ** (len(s) - len(r))
    coef[full] -= Fraction(cg.order, 2)
    coef.pop(frozenset())
    return coef


def _evaluate_exponents(coef, orders):
    return sum((c * orders[r] for r, c in coef.items()), Fraction(0))


def coxeter_invariant_conjecture(t, spec):
    """Conjectured ``log2 Z^2`` of the Coxeter invariant of ``spec``.

    The spec's generators are matched to the state's party labels in sorted
    order.
    """
    spec = _relabel_spec(spec, t.party_labels)
    st = subgroup_table(t)
    return _evaluate_exponents(conjecture_exponents(spec), st.entries)


def coxeter_conjecture_from_orders(orders, spec):
    """Same as :func:`coxeter_invariant_conjecture` from a table of log2 orders."""
    return _evaluate_exponents(conjecture_exponents(spec), orders)


def bipartition_product_form(t, spec=None):
    """``sum over unordered bipartitions {R, Rbar} of (g_R + g_Rbar - g)``.

    Only meaningful for the all-m=2 spec, which is checked when given.
    """
    labels = t.party_labels
    if spec is not None and any(v != 2 for v in spec.upper()):
        raise ValueError("bipartition product form needs the all-m=2 spec")
    st = subgroup_table(t)
    full = frozenset(labels)
    seen = set()
    total = Fraction(0)
    for r in range(1, len(labels)):
        for combo in itertools.combinations(labels, r):
            rs = frozenset(combo)
            key = frozenset((rs, full - rs))
            if key in seen:
                continue
            seen.add(key)
            total += st[rs] + st[full - rs] - t.k
    return total


def tripartite_counting_formula(t):
    """``log2 Z^2 = g_A + g_B + g_C + g_AB + g_BC + g_AC - 3 g`` (all-m=2 spec)."""
    a, b, c = _abc(t)
    st = subgroup_table(t)
    return Fraction(
        sum(st[s] for s in ((a,), (b,), (c,), (a, b), (b, c), (a, c))) - 3 * t.k
    )
