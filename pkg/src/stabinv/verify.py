"""Randomized property campaign cross-checking engines and closed forms.

Asserted checks must hold on every trial; conjecture checks are only
counted and reported.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from .analytic.formulas import (
    bipartition_product_form,
    coxeter_invariant_conjecture,
    renyi_multientropy_tripartite,
    tripartite_counting_formula,
    tripartite_multi_invariant,
)
from .engines.evaluate import evaluate
from .graph import build_big_graph, graph_tableau
from .engines.projector import projector_inner_product
from .invariants import CoxeterSpec, coxeter_tuple, kempe_tuple, multi_entropy_tuple
from .random_states import LABELS
from .tableau import random_stabilizer_tableau, subgroup_order, to_graph_state


def random_parties(n, q, rng):
    """Party labels with every one of the first ``min(n, q)`` labels used."""
    labels = [LABELS[i % q] for i in range(n)]
    rng.shuffle(labels)
    return labels


class Trial:
    """One random tripartite state and its asserted checks."""

    def __init__(self, seed, max_qubits, budget, fault=None):
        self.rng = np.random.default_rng(seed)
        self.n = int(self.rng.integers(3, max(3, max_qubits) + 1))
        parties = random_parties(self.n, 3, self.rng)
        self.t = random_stabilizer_tableau(self.n, self.rng, parties)
        self.g = to_graph_state(self.t)[0]
        self.budget = budget
        self.fault = fault
        self.results = {}

    def record(self, name, ok):
        if self.fault == name:
            ok = not ok
        self.results[name] = self.results.get(name, True) and bool(ok)

    def tuples(self):
        labels = self.t.party_labels
        out = [("ME(2,3)", multi_entropy_tuple(2, 3, labels))]
        if len(labels) == 3:
            out.append(("kempe", kempe_tuple(labels)))
            if self.n <= 4:
                out.append(("ME(3,3)", multi_entropy_tuple(3, 3, labels)))
            out.append(("coxeter(2,2,2)", coxeter_tuple(CoxeterSpec.all_twos(3, labels))))
        return out

    def run(self):
        t, g = self.t, self.g
        for name, tup in self.tuples():
            big = build_big_graph(g, tup)
            proj = projector_inner_product(big)
            rnd = projector_inner_product(big, b0="random", seed=int(self.rng.integers(1 << 30)))
            self.record("b0-independence", proj.value == rnd.value)
            canon = evaluate(g, tup, "canonical")
            self.record("projector=canonical", proj.magnitude_log2 == canon.magnitude_log2)
            if tup.n_rep * self.n <= self.budget:
                dense = evaluate(t, tup, "dense", budget=self.budget)
                err = abs(dense.complex_value) - proj.magnitude
                self.record("projector=dense", abs(err) < 1e-9)
            if len(t.party_labels) == 3 and name != "coxeter(2,2,2)":
                self.record("tripartite-formula", tripartite_multi_invariant(t, tup) == proj.magnitude_log2)
            if name.startswith("ME") and len(t.party_labels) == 3:
                n_base = int(name[3])
                e_n = Fraction(proj.magnitude_log2) / (1 - n_base)
                self.record("renyi-multientropy", renyi_multientropy_tripartite(t, n_base) == e_n)
            if name == "coxeter(2,2,2)":
                two = 2 * proj.magnitude_log2 if proj.magnitude_log2 is not None else None
                self.record("counting-formula", tripartite_counting_formula(t) == two)
        if len(t.party_labels) == 3:
            a, b, c = t.party_labels
            lhs = subgroup_order(t, (a, b)) + subgroup_order(t, (b, c)) + subgroup_order(t, (a, c))
            rhs = t.k + sum(subgroup_order(t, (x,)) for x in (a, b, c))
            self.record("group-order-identity", lhs == rhs)
        self.record("graph-roundtrip", graph_tableau(g).n == self.n)
        return self.results


def conjecture_trial(seed, q, max_qubits, spec_upper=None):
    """Projector value of a Coxeter invariant against the conjectured closed form."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(q, max(q, max_qubits) + 1))
    parties = random_parties(n, q, rng)
    t = random_stabilizer_tableau(n, rng, parties)
    g = to_graph_state(t)[0]
    labels = t.party_labels
    spec = CoxeterSpec.all_twos(q, labels) if spec_upper is None else CoxeterSpec.from_upper(spec_upper, labels)
    proj = projector_inner_product(build_big_graph(g, coxeter_tuple(spec)))
    measured = None if proj.magnitude_log2 is None else 2 * proj.magnitude_log2
    conj = coxeter_invariant_conjecture(t, spec)
    out = {"agree": measured == conj}
    if spec_upper is None:
        out["bipartition_agree"] = bipartition_product_form(t, spec) == conj
    return out


def run_verify(trials=100, seed=0, max_qubits=6, budget=24, threads=1,
               conjecture_trials=50, fault=None):
    """Run the campaign; returns a JSON-ready summary dict.

    Args:
        fault: name of an asserted check whose outcome is inverted on every
            trial; used to test that failures surface.
    """
    def one(i):
        return Trial(seed + i, max_qubits, budget, fault).run()

    def conj4(i):
        return conjecture_trial(seed + trials + i, 4, max_qubits)

    def conj233(i):
        return conjecture_trial(seed + trials + conjecture_trials + i, 3, min(max_qubits, 5), [2, 3, 3])

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        per_trial = list(pool.map(one, range(trials)))
        q4 = list(pool.map(conj4, range(conjecture_trials)))
        c233 = list(pool.map(conj233, range(conjecture_trials)))

    passed, total = Counter(), Counter()
    for res in per_trial:
        for name, ok in res.items():
            total[name] += 1
            passed[name] += ok
    checks = {
        name: {"passed": passed[name], "total": total[name]} for name in sorted(total)
    }
    failures = sum(total[n] - passed[n] for n in total)
    conj = {
        "q4_all_m2": {
            "agree": sum(r["agree"] for r in q4),
            "bipartition_agree": sum(r["bipartition_agree"] for r in q4),
            "total": len(q4),
        },
        "q3_m233": {"agree": sum(r["agree"] for r in c233), "total": len(c233)},
    }
    return {
        "trials": trials,
        "seed": seed,
        "max_qubits": max_qubits,
        "checks": checks,
        "conjectures": conj,
        "failures": failures,
        "ok": failures == 0,
    }
