import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stabinv.analytic import (
    bipartition_product_form,
    conjecture_exponents,
    coxeter_invariant_conjecture,
    entanglement_entropy,
    grouped_tripartite_formula,
    k_table,
    kempe_invariant,
    renyi2_multientropy,
    renyi_multientropy_tripartite,
    tripartite_counting_formula,
    tripartite_multi_invariant,
)
from stabinv.analytic.formulas import multientropy_from_log2z
from stabinv.engines import evaluate
from stabinv.invariants import CoxeterSpec, coxeter_tuple, kempe_tuple, multi_entropy_tuple
from stabinv.tableau import StabilizerTableau, random_stabilizer_tableau, subgroup_table
from stabinv.verify import random_parties

GHZ = StabilizerTableau.from_strings(["XXX", "ZZI", "IZZ"], ["A", "B", "C"])


def random_state(n, seed, q=3):
    rng = np.random.default_rng(seed)
    return random_stabilizer_tableau(n, rng, parties=random_parties(n, q, rng))


def projector_log2(t, tup):
    return evaluate(t, tup, "projector").magnitude_log2


def test_bell_entropy():
    bell = StabilizerTableau.from_strings(["XX", "ZZ"], ["A", "B"])
    assert entanglement_entropy(bell, "A") == 1
    assert entanglement_entropy(GHZ, ("A", "B")) == 1


def test_ghz_multientropies():
    assert renyi2_multientropy(GHZ) == 3
    assert renyi_multientropy_tripartite(GHZ, 2) == 3
    assert renyi_multientropy_tripartite(GHZ, 3) == 4
    assert multientropy_from_log2z(-3, 2) == 3


def test_ghz_kempe_record():
    rec = kempe_invariant(GHZ)
    assert rec.trusted_log2 == -2
    assert rec.display_log2 == -1
    assert not rec.agree


@settings(max_examples=25, deadline=None)
@given(st.integers(3, 6), st.integers(0, 2**31))
def test_tripartite_formula_matches_projector(n, seed):
    t = random_state(n, seed)
    tuples = [multi_entropy_tuple(2, 3), kempe_tuple(), coxeter_tuple(CoxeterSpec.from_upper([2, 2, 2]))]
    if n <= 4:
        tuples.append(multi_entropy_tuple(3, 3))
    for tup in tuples:
        exact = projector_log2(t, tup)
        assert tripartite_multi_invariant(t, tup) == exact
        assert grouped_tripartite_formula(t, tup, with_group_factor=True) == exact


@settings(max_examples=20, deadline=None)
@given(st.integers(3, 5), st.integers(0, 2**31), st.sampled_from([2, 3]))
def test_renyi_multientropy_matches_projector(n, seed, k):
    t = random_state(n, seed)
    log2z = projector_log2(t, multi_entropy_tuple(k, 3))
    assert renyi_multientropy_tripartite(t, k) == multientropy_from_log2z(log2z, k)


def test_grouped_formula_without_group_factor():
    # genus 0: identical; genus 1 (Kempe): off by g
    assert grouped_tripartite_formula(GHZ, multi_entropy_tuple(2, 3)) == -3
    bare = grouped_tripartite_formula(GHZ, kempe_tuple())
    full = grouped_tripartite_formula(GHZ, kempe_tuple(), with_group_factor=True)
    assert full == -2
    assert full - bare == GHZ.k


def test_degenerate_flag():
    t = StabilizerTableau.from_strings(["XX", "ZZ"], ["A", "B"]).with_parties(["A", "B"], ("A", "B", "C"))
    res = tripartite_multi_invariant(t, kempe_tuple(), detail=True)
    assert res.degenerate


@settings(max_examples=20, deadline=None)
@given(st.integers(3, 6), st.integers(0, 2**31))
def test_counting_formula_matches_conjecture_and_projector(n, seed):
    t = random_state(n, seed)
    spec = CoxeterSpec.from_upper([2, 2, 2])
    conj = coxeter_invariant_conjecture(t, spec)
    assert tripartite_counting_formula(t) == conj
    assert bipartition_product_form(t, spec) == conj
    assert 2 * projector_log2(t, coxeter_tuple(spec)) == conj


@pytest.mark.parametrize("upper", [[2, 2, 3], [2, 2, 4], [3, 2, 3]])
def test_conjecture_on_ghz_and_bells(upper):
    spec = CoxeterSpec.from_upper(upper)
    tup = coxeter_tuple(spec)
    for t in (GHZ, random_state(4, 11), random_state(5, 12)):
        assert 2 * projector_log2(t, tup) == coxeter_invariant_conjecture(t, spec)


def test_bipartition_form_q4():
    spec = CoxeterSpec.all_twos(4, ("A", "B", "C", "D"))
    for seed in range(5):
        t = random_state(6, seed, q=4)
        assert bipartition_product_form(t, spec) == coxeter_invariant_conjecture(t, spec)
    with pytest.raises(ValueError):
        bipartition_product_form(GHZ, CoxeterSpec.from_upper([2, 2, 3]))


def test_k_table_inclusion_exclusion():
    st_ = subgroup_table(GHZ)
    k = k_table(st_)
    full = frozenset("ABC")
    assert k[full] == 3 - 3 * 1 + 0
    assert k[frozenset("A")] == 0
    assert sum(v for s, v in k.items() if s <= frozenset("AB")) == st_[("A", "B")]


def test_formulas_need_three_parties():
    bell = StabilizerTableau.from_strings(["XX", "ZZ"], ["A", "B"])
    with pytest.raises(ValueError):
        renyi2_multientropy(bell)


def test_all_twos_exponents():
    coef = conjecture_exponents(CoxeterSpec.from_upper([2, 2, 2]))
    for s in ("A", "B", "C", "AB", "BC", "AC"):
        assert coef[frozenset(s)] == 1
    assert coef[frozenset("ABC")] == -3
