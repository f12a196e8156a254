"""Frozen worked examples, one block per module."""

import numpy as np
import pytest
from click.testing import CliRunner

from stabinv import gf2
from stabinv.analytic import (
    bipartition_product_form,
    coxeter_invariant_conjecture,
    entanglement_entropy,
    k_table,
    kempe_invariant,
    renyi2_multientropy,
    renyi_multientropy_tripartite,
    tripartite_multi_invariant,
    x_coxeter_invariant,
)
from stabinv.analytic.xstab import XStabilizerState, build_toric_code, build_x_cube, toric_code
from stabinv.cli import main
from stabinv.engines import (
    NotStabilizerError,
    canonical_inner_product,
    dense_multi_invariant,
    evaluate,
    projector_inner_product,
)
from stabinv.gf2 import BitMatrix, BitVector
from stabinv.graph import (
    Collapse,
    ColoredGraph,
    build_big_graph,
    ghz_graph,
    local_complement,
    measure,
)
from stabinv.frames import Elementary
from stabinv.invariants import (
    CoxeterSpec,
    coxeter_tuple,
    cycle_count,
    compose,
    generate_coxeter,
    identity_tuple,
    inverse,
    kempe_tuple,
    multi_entropy_tuple,
    renyi_tuple,
    subgraph_counts,
    tripartite_topology,
)
from stabinv.pauli import PauliString
from stabinv.random_states import random_graph
from stabinv.tableau import (
    StabilizerTableau,
    ghz_extraction_counts,
    product_subgroup_order,
    random_stabilizer_tableau,
    subgroup_order,
    subgroup_table,
    to_dense,
    to_graph_state,
    x_block_size,
)

S2 = 1 / np.sqrt(2)
GHZ = StabilizerTableau.from_strings(["XXX", "ZZI", "IZZ"], ["A", "B", "C"])
BELL = StabilizerTableau.from_strings(["XX", "ZZ"], ["A", "B"])
BELL_PLUS_ZERO = StabilizerTableau.from_strings(["XXI", "ZZI", "IIZ"], ["A", "B", "C"])
PRODUCT3 = StabilizerTableau.from_strings(["ZII", "IZI", "IIZ"], ["A", "B", "C"])


def rows(*bits):
    return BitMatrix.from_rows(list(bits))


def table(t):
    return {"".join(sorted(s)): v for s, v in subgroup_table(t).entries.items()}


# gf2 -------------------------------------------------------------------------------


def test_gf2_rank_examples():
    assert gf2.rank(BitMatrix.zeros(3, 3)) == 0
    assert gf2.rank(BitMatrix.identity(4)) == 4
    assert gf2.rank(rows("110", "011", "101")) == 2


def test_gf2_kernel_examples():
    assert gf2.kernel_basis(BitMatrix.identity(3)).nrows == 0
    assert gf2.kernel_basis(BitMatrix.zeros(2, 5)).nrows == 5
    k = gf2.kernel_basis(rows("1101"))
    assert k.nrows == 3
    assert not (k.to_dense() @ np.array([1, 1, 0, 1]) % 2).any()


def test_gf2_complement_examples():
    assert gf2.same_span(gf2.orthogonal_complement(rows("11")), rows("11"))
    c = gf2.orthogonal_complement(rows("111"))
    assert c.nrows == 2 and gf2.same_span(c, rows("110", "011"))
    assert gf2.orthogonal_complement(BitMatrix.zeros(0, 4)).nrows == 4


def test_gf2_in_span_examples():
    assert gf2.in_span(BitVector("000"), rows("101"))
    assert gf2.in_span(BitVector("110"), rows("100", "010"))
    assert not gf2.in_span(BitVector("111"), rows("110", "011"))


# stabilizer ------------------------------------------------------------------------


def test_pauli_products():
    xz = PauliString.from_str("X") * PauliString.from_str("Z")
    assert (int(xz.x[0]), int(xz.z[0])) == (1, 1)
    assert np.allclose(xz.matrix(), -1j * np.array([[0, -1j], [1j, 0]]))
    assert str(PauliString.from_str("ZZ") * PauliString.from_str("XX")) == "-YY"
    for g in GHZ.generators:
        assert str(g * g) == "+III"


def test_subgroup_order_examples():
    assert subgroup_order(BELL, "A") == 0
    assert subgroup_order(GHZ, ("A", "B")) == 1
    assert subgroup_order(GHZ, ("A", "B", "C")) == GHZ.k


def test_subgroup_table_examples():
    assert table(GHZ) == {"": 0, "A": 0, "B": 0, "C": 0, "AB": 1, "BC": 1, "AC": 1, "ABC": 3}
    two_bells = StabilizerTableau.from_strings(["XXII", "ZZII", "IIXX", "IIZZ"], ["A", "B", "A", "B"])
    assert table(two_bells) == {"": 0, "A": 0, "B": 0, "AB": 4}
    zeros = StabilizerTableau.from_strings(["ZI", "IZ"], ["A", "B"])
    assert table(zeros) == {"": 0, "A": 1, "B": 1, "AB": 2}


def test_product_subgroup_examples():
    assert product_subgroup_order(GHZ, [("A", "B"), ("B", "C"), ("A", "C")]) == 2
    assert product_subgroup_order(GHZ, [("A", "B")]) == subgroup_order(GHZ, ("A", "B"))
    assert product_subgroup_order(GHZ, [("A",), ("B",), ("C",)]) == 0


def test_ghz_extraction_examples():
    assert tuple(ghz_extraction_counts(GHZ)) == (1, 0, 0, 0)
    assert tuple(ghz_extraction_counts(BELL_PLUS_ZERO)) == (0, 1, 0, 0)


def test_x_block_examples():
    assert x_block_size(StabilizerTableau.from_strings(["ZZ", "XX"])) == 1
    assert x_block_size(StabilizerTableau.from_strings(["ZII", "IZI", "IIZ"])) == 0
    assert x_block_size(GHZ) == 1


def test_to_graph_state_examples():
    g, gates = to_graph_state(BELL)
    assert sorted(g.edges()) == [(0, 1)]
    assert len(gates) == 1 and gates[0][0] == "H"
    g, gates = to_graph_state(StabilizerTableau.from_strings(["ZII", "IZI", "IIZ"]))
    assert g.edges() == [] and sorted(gates) == [("H", 0), ("H", 1), ("H", 2)]


def test_to_dense_examples():
    assert np.allclose(to_dense(BELL), [S2, 0, 0, S2])
    assert np.allclose(to_dense(StabilizerTableau.from_strings(["Z"])), [1, 0])
    want = np.zeros(8)
    want[[0, 7]] = S2
    assert np.allclose(to_dense(GHZ), want)


# graph-state -----------------------------------------------------------------------


def test_local_complement_examples():
    g = ColoredGraph.from_edges(3, [(0, 1)])
    assert local_complement(g, 2) == g
    fig = ColoredGraph.from_edges(4, [(0, 1), (1, 2), (1, 3), (2, 3)])
    h = local_complement(fig, 1)
    assert sorted(h.edges()) == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]
    tri = ColoredGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    for a in range(3):
        assert len(local_complement(tri, a).edges()) == 2


def test_measure_examples():
    star = ColoredGraph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    out = measure(star, 0, "z", 1)
    assert out.reduced.edges() == [] and out.byproducts == ()
    assert measure(ColoredGraph.from_edges(1, []), 0, "x", -1) is Collapse
    out = measure(star, 0, "y", 1)
    assert sorted(out.reduced.edges()) == [(1, 2), (1, 3), (2, 3)]
    assert sorted((b.vertex, b.kind) for b in out.byproducts) == [
        (v, Elementary.SqrtMinusIZ) for v in (1, 2, 3)
    ]


def test_big_graph_examples():
    g = ghz_graph()
    big = build_big_graph(g, identity_tuple(3, ("A", "B", "C")))
    assert big.n_vertices == 9 and big.edges() == []
    assert projector_inner_product(big).magnitude_log2 == 0
    sigma = {"A": [0, 1, 2], "B": [1, 2, 0], "C": [1, 0, 2]}
    from stabinv.invariants import PermutationTuple

    big = build_big_graph(g, PermutationTuple(sigma, ("A", "B", "C")))
    assert big.n_vertices == 9 and len(big.edges()) == 10
    assert build_big_graph(random_graph(5, 0.7, 1, q=3), identity_tuple(1, "ABC")).edges() == []


# invariant-spec --------------------------------------------------------------------


def test_multi_entropy_tuple_examples():
    t = multi_entropy_tuple(3, 2)
    assert cycle_count(t["A"]) == 1 and np.array_equal(t["B"], np.arange(3))
    t = multi_entropy_tuple(2, 3)
    assert t.n_rep == 4
    assert np.array_equal(compose(t["A"], t["B"]), compose(t["B"], t["A"]))
    assert all(cycle_count(t[p]) == 2 for p in "AB")
    t = multi_entropy_tuple(1, 4)
    assert all(np.array_equal(t[p], [0]) for p in "ABCD")


def test_coxeter_order_examples():
    assert generate_coxeter(CoxeterSpec.from_triple(2, 3, 3)).order == 24
    assert generate_coxeter(CoxeterSpec.dihedral(7)).order == 14
    assert generate_coxeter(CoxeterSpec.from_triple(2, 3, 5)).order == 120


def test_subgraph_count_examples():
    c = subgraph_counts(generate_coxeter(CoxeterSpec.from_triple(2, 3, 3)))
    assert (c["AB"], c["BC"], c["AC"]) == (6, 4, 4)
    assert c["A"] == c["B"] == c["C"] == 12
    c = subgraph_counts(generate_coxeter(CoxeterSpec.all_twos(3)))
    assert (c["AB"], c["BC"], c["AC"]) == (2, 2, 2)
    assert c["A"] == c["B"] == c["C"] == 4
    for m in (3, 5):
        assert subgraph_counts(generate_coxeter(CoxeterSpec.dihedral(m)))["A"] == m


def test_cayley_tuple_examples():
    klein = coxeter_tuple(CoxeterSpec.dihedral(2))
    assert klein.n_rep == 2
    assert cycle_count(compose(klein["A"], inverse(klein["B"]))) == 1
    rng = np.random.default_rng(0)
    for m in (3, 4):
        t = coxeter_tuple(CoxeterSpec.dihedral(m))
        assert cycle_count(compose(t["A"], inverse(t["B"]))) == 1
        psi = random_stabilizer_tableau(4, rng, ["A", "A", "B", "B"])
        m_ = to_dense(psi).reshape(4, 4)
        rho = m_ @ m_.conj().T
        want = np.trace(np.linalg.matrix_power(rho, m)).real
        assert np.isclose(dense_multi_invariant(to_dense(psi), psi.parties, t), want)


def test_topology_examples():
    assert tripartite_topology(multi_entropy_tuple(2, 3)).as_tuple() == (8, 6, 2, 0)
    assert tripartite_topology(kempe_tuple()).as_tuple() == (6, 3, 0, 1)
    topo = tripartite_topology(identity_tuple(3, "ABC"))
    assert topo.as_tuple() == (6, 9, 6, -2)
    assert topo.component_genera == (0, 0, 0)


# engines ---------------------------------------------------------------------------


def test_projector_examples():
    assert projector_inner_product(ColoredGraph.from_edges(5, [])).magnitude_log2 == 0
    assert evaluate(ghz_graph(), multi_entropy_tuple(2, 3)).magnitude_log2 == -3
    assert evaluate(ghz_graph(), kempe_tuple()).magnitude_log2 == -2


def test_canonical_examples():
    assert canonical_inner_product(GHZ, GHZ) == (False, 0)
    zero = StabilizerTableau.from_strings(["Z"])
    assert canonical_inner_product(zero, StabilizerTableau.from_strings(["-Z"]))[0]
    assert canonical_inner_product(zero, StabilizerTableau.from_strings(["X"])) == (False, 1)


def test_dense_examples():
    for tup in (multi_entropy_tuple(2, 3), kempe_tuple()):
        assert np.isclose(dense_multi_invariant(to_dense(PRODUCT3), PRODUCT3.parties, tup), 1)
    assert np.isclose(dense_multi_invariant(to_dense(BELL), BELL.parties, renyi_tuple(2)), 0.5)
    assert np.isclose(dense_multi_invariant(to_dense(GHZ), GHZ.parties, kempe_tuple()), 0.25)


def test_w_state_only_through_dense():
    w = np.zeros(8)
    w[[1, 2, 4]] = 1 / np.sqrt(3)
    with pytest.raises(NotStabilizerError):
        evaluate((w, "ABC"), kempe_tuple(), "canonical")
    res = evaluate((w, "ABC"), kempe_tuple(), "dense")
    assert res.exactness == "floating"


# analytic --------------------------------------------------------------------------


def test_entropy_examples():
    assert entanglement_entropy(BELL, "A") == 1
    assert entanglement_entropy(PRODUCT3, "A") == 0
    assert entanglement_entropy(GHZ, "A") == 1


def test_renyi2_examples():
    assert renyi2_multientropy(GHZ) == 3
    bell_empty_c = BELL.with_parties(["A", "B"], ("A", "B", "C"))
    assert renyi2_multientropy(bell_empty_c) == 2
    three_bells = StabilizerTableau.from_strings(
        ["XXIIII", "ZZIIII", "IIXXII", "IIZZII", "IIIIXX", "IIIIZZ"], ["A", "B", "B", "C", "C", "A"]
    )
    assert renyi2_multientropy(three_bells) == 6


def test_renyi_n_examples():
    assert renyi_multientropy_tripartite(GHZ, 2) == 3
    assert renyi_multientropy_tripartite(GHZ, 3) == 4
    for n in (2, 3, 5):
        assert renyi_multientropy_tripartite(PRODUCT3, n) == 0


def test_tripartite_invariant_examples():
    assert tripartite_multi_invariant(GHZ, kempe_tuple()) == -2
    assert tripartite_multi_invariant(BELL_PLUS_ZERO, kempe_tuple()) == -2
    for t in (GHZ, BELL_PLUS_ZERO, PRODUCT3):
        assert tripartite_multi_invariant(t, identity_tuple(3, "ABC")) == 0


def test_k_table_examples():
    k = k_table(subgroup_table(BELL))
    assert k[frozenset("AB")] == 2
    k = k_table(subgroup_table(GHZ))
    assert k[frozenset("ABC")] == 0
    assert k[frozenset("A")] == subgroup_order(GHZ, "A")


def test_conjecture_examples():
    assert coxeter_invariant_conjecture(BELL, CoxeterSpec.dihedral(2)) == -2
    assert coxeter_invariant_conjecture(GHZ, CoxeterSpec.all_twos(3)) == -6
    g = {s: subgroup_order(GHZ, s) for s in ("A", "B", "C", "AB", "BC", "AC")}
    doubled = 2 * (7 * g["A"] + 7 * g["B"] + 8 * g["C"] - 3 * g["AB"] - 4 * g["BC"] - 4 * g["AC"])
    assert coxeter_invariant_conjecture(GHZ, CoxeterSpec.from_triple(2, 3, 3)) == doubled


def test_bipartition_examples():
    assert bipartition_product_form(BELL) == -2
    assert bipartition_product_form(GHZ) == -6
    t = random_stabilizer_tableau(6, 4, ["A", "B", "C", "D", "A", "B"])
    assert bipartition_product_form(t) == coxeter_invariant_conjecture(t, CoxeterSpec.all_twos(4))


def test_kempe_record_examples():
    rec = kempe_invariant(GHZ)
    assert (rec.trusted_log2, rec.display_log2, rec.agree) == (-2, -1, False)
    rec = kempe_invariant(PRODUCT3)
    assert (rec.trusted_log2, rec.display_log2, rec.agree) == (0, 0, True)
    rec = kempe_invariant(BELL_PLUS_ZERO)
    assert (rec.trusted_log2, rec.display_log2, rec.agree) == (-2, -1, False)


def test_x_state_examples():
    bell = XStabilizerState([[1, 1]], ["A", "B"])
    assert np.allclose(bell.to_dense(), to_dense(BELL))
    ghz = XStabilizerState([[1, 1, 1]], ["A", "B", "C"])
    assert np.allclose(ghz.to_dense(), to_dense(GHZ))
    empty = XStabilizerState(np.zeros((0, 3), dtype=np.uint8), ["A", "B", "C"])
    assert np.allclose(empty.to_dense(), np.eye(8)[0])
    assert x_coxeter_invariant(ghz, CoxeterSpec.all_twos(3)) == -3
    assert 2 * x_coxeter_invariant(ghz, CoxeterSpec.all_twos(3)) == coxeter_invariant_conjecture(
        GHZ, CoxeterSpec.all_twos(3)
    )
    assert x_coxeter_invariant(bell, CoxeterSpec.dihedral(2)) == -1
    assert x_coxeter_invariant(empty, CoxeterSpec.all_twos(3)) == 0


def test_toric_examples():
    xs, stars = build_toric_code(2)
    assert xs.n == 8 and xs.rank == 3
    for L in (2, 3, 4):
        assert not build_toric_code(L)[1].sum(axis=0).__mod__(2).any()
    region = xs.with_parties(["A"] + ["B"] * 7)
    t = region.to_tableau()
    assert entanglement_entropy(t, "A") == 1


def test_x_cube_examples():
    xs, cubes = build_x_cube(2)
    assert xs.n == 24 and (cubes.sum(axis=1) == 12).all()
    # planar relations: 2 planes per direction, 3 directions, 2 of them redundant
    assert cubes.shape[0] - xs.rank == 3 * 2 - 2
    xs = toric_code(6)
    near = [0, 1]
    far = [2 * (3 + 6 * 3), 2 * (3 + 6 * 3) + 1]
    both = near + far
    assert xs.n_order_qubits(both) == xs.n_order_qubits(near) + xs.n_order_qubits(far)
    assert xs.tilde_order_qubits(both) == xs.tilde_order_qubits(near) + xs.tilde_order_qubits(far)


# cli -------------------------------------------------------------------------------


def run_cli(args):
    import json

    res = CliRunner().invoke(main, args)
    assert res.exit_code == 0, res.output
    return json.loads(res.output.splitlines()[-1]) if res.output.startswith("{") else res.output


def test_cli_tripartite_report_identity(tmp_path):
    rng = np.random.default_rng(9)
    for i in range(5):
        g = random_graph(9, 0.5, rng, q=3)
        from stabinv.graph import format_graph

        path = tmp_path / f"g{i}.txt"
        path.write_text(format_graph(g))
        rec = run_cli(["tripartite-report", str(path)])
        assert rec["entropy"]["A"] == f"{rec['m_AB'] + rec['m_AC'] + rec['p']}/1"


def test_cli_gen_ghz_is_path():
    text = run_cli(["gen", "ghz"])
    assert "edge: " in text and text.count("edge:") == 2


def test_cli_verify_small_budget_uses_dense():
    rec = run_cli(["verify", "--trials", "4", "--max-qubits", "4", "--conjecture-trials", "2"])
    assert rec["ok"]
    assert rec["checks"]["projector=dense"]["total"] == 4
