import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from stabinv.invariants import (
    CoxeterGenerationError,
    CoxeterSpec,
    PermutationTuple,
    SpecFormatError,
    compose,
    coxeter_tuple,
    cycles,
    format_cycles,
    format_invariant_spec,
    generate_coxeter,
    identity_tuple,
    inverse,
    kempe_tuple,
    multi_entropy_tuple,
    parabolic_order,
    parse_cycles,
    parse_invariant_spec,
    renyi_tuple,
    subgraph_counts,
    tripartite_topology,
)

perms = st.integers(1, 8).flatmap(lambda n: st.permutations(list(range(n))).map(np.array))


@given(perms)
def test_cycle_roundtrip(p):
    assert np.array_equal(parse_cycles(format_cycles(p), len(p)), p)
    assert np.array_equal(compose(p, inverse(p)), np.arange(len(p)))
    assert sum(len(c) for c in cycles(p)) == len(p)


@pytest.mark.parametrize("bad", ["(0 1", "(0 0)", "0 1", "(0 5)"])
def test_parse_cycles_errors(bad):
    with pytest.raises(ValueError):
        parse_cycles(bad, 3)


def test_multi_entropy_tuple_shape():
    t = multi_entropy_tuple(3, 3)
    assert t.n_rep == 9
    assert np.array_equal(t["C"], np.arange(9))
    assert multi_entropy_tuple(2, 2).pair_cycles("A", "B") == 1


def test_gauge_fixing_keeps_cycle_data():
    rng = np.random.default_rng(1)
    t = kempe_tuple()
    g, h = rng.permutation(3), rng.permutation(3)
    u = t.apply_gauge(g, h)
    for a, b in (("A", "B"), ("B", "C"), ("A", "C")):
        assert u.pair_cycles(a, b) == t.pair_cycles(a, b)
    fixed = u.gauge_fixed()
    assert np.array_equal(fixed["C"], np.arange(3))


def test_relabel_by_position():
    t = renyi_tuple(2).relabel(["X", "Y"])
    assert t.parties == ("X", "Y")
    with pytest.raises(ValueError):
        t.relabel(["X"])


def test_topology():
    assert tripartite_topology(multi_entropy_tuple(2, 3)).as_tuple() == (8, 6, 2, 0)
    assert tripartite_topology(kempe_tuple()).genus == 1
    topo = tripartite_topology(identity_tuple(2, ("A", "B", "C")))
    assert topo.components == 2 and topo.component_genera == (0, 0)


@pytest.mark.parametrize(
    "upper, order",
    [([2, 2, 2], 8), ([3, 2, 3], 24), ([3, 2, 4], 48), ([3, 2, 5], 120), ([2, 2, 3], 12)],
)
def test_coxeter_orders(upper, order):
    assert generate_coxeter(CoxeterSpec.from_upper(upper)).order == order


def test_coxeter_structure():
    spec = CoxeterSpec.from_triple(2, 3, 3)
    assert spec.upper() == [2, 3, 3]
    assert spec["A", "B"] == 2 and spec["B", "C"] == 3 and spec["A", "C"] == 3
    counts = subgraph_counts(generate_coxeter(spec))
    assert counts[("A",)] == 12
    assert parabolic_order(spec, ("B", "C")) == 6
    t = coxeter_tuple(spec)
    assert t.n_rep == 12
    # sigma_a sigma_b^-1 rotates each two-colour cycle of the Cayley graph
    assert (t.pair_cycles("A", "B"), t.pair_cycles("B", "C"), t.pair_cycles("A", "C")) == (6, 4, 4)


def test_infinite_coxeter_rejected():
    spec = CoxeterSpec.from_upper([3, 3, 3])
    assert not spec.is_finite()
    with pytest.raises(CoxeterGenerationError):
        generate_coxeter(spec, bound=500)


def test_spec_file_roundtrip():
    for text in (
        "type: permutations\nA: (0 1 2)\nB: (0 2 1)\nC: ()\n",
        "type: coxeter\nm: 2 3 3\n",
        "type: renyi-multientropy\nn: 3\nq: 3\n",
    ):
        spec = parse_invariant_spec(text)
        again = parse_invariant_spec(format_invariant_spec(spec))
        assert again.describe() == spec.describe()


@pytest.mark.parametrize(
    "text, msg",
    [
        ("A: (0 1)\n", "type"),
        ("type: coxeter\n", "m"),
        ("type: coxeter\nm: 3 3 3\n", "finite"),
        ("type: permutations\nA: (0 1\n", "line 2"),
        ("type: weird\n", "unknown"),
        ("type: permutations\nnonsense\n", "line 2"),
    ],
)
def test_spec_errors(text, msg):
    with pytest.raises(SpecFormatError, match=msg):
        parse_invariant_spec(text)


def test_permutation_tuple_validation():
    with pytest.raises(ValueError):
        PermutationTuple({"A": [0, 0]})
