"""Command-line front end. Records are JSON lines; benchmark series are CSV."""

from __future__ import annotations

import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

import click
import numpy as np

from .analytic.formulas import (
    coxeter_invariant_conjecture,
    entanglement_entropy,
    renyi2_multientropy,
    tripartite_multi_invariant,
)
from .analytic.xstab import XStabilizerState, build_toric_code, build_x_cube, parse_xgen, x_coxeter_invariant
from .bench import available_engines, fit_slopes, rows_to_csv, run_benchmark
from .engines.dense import BudgetError
from .engines.evaluate import evaluate
from .engines.result import format_rational
from .graph import ColoredGraph, GraphFormatError, format_graph, ghz_graph, graph_tableau, parse_graph
from .invariants import SpecFormatError, multi_entropy_tuple, parse_invariant_spec
from .random_states import random_graph
from .tableau import (
    StabilizerTableau,
    TableauError,
    format_tableau,
    ghz_extraction_counts,
    parse_tableau,
    product_subgroup_order,
    subgroup_table,
)
from .verify import run_verify

ENGINE_METHODS = ("projector", "canonical", "dense")


# input handling --------------------------------------------------------------------


def sniff_format(text):
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if any(ln.lower().startswith(("vertices:", "edge:")) for ln in lines):
        return "graph"
    body = [ln for ln in lines if not ln.lower().startswith("parties:")]
    if body and all(set(ln) <= set("IX") for ln in body):
        return "xgen"
    return "tableau"


def parse_partition(text, n):
    """``"A,B,C"`` (one label per qubit) or JSON ``{"A": [0, 1], ...}``."""
    text = text.strip()
    if text.startswith("{"):
        groups = json.loads(text)
        labels = [None] * n
        for party, qubits in groups.items():
            for q in qubits:
                if not 0 <= int(q) < n or labels[int(q)] is not None:
                    raise click.BadParameter(f"qubit {q} out of range or assigned twice")
                labels[int(q)] = str(party)
        if None in labels:
            raise click.BadParameter(f"qubits {[i for i, p in enumerate(labels) if p is None]} unassigned")
        return labels
    labels = [p.strip() for p in text.split(",")]
    if len(labels) != n:
        raise click.BadParameter(f"partition has {len(labels)} labels for {n} qubits")
    return labels


def load_state(path, fmt="auto", partition=None):
    """Returns ``(format, state, sha256)``; state is a graph, tableau or X-state."""
    data = Path(path).read_bytes()
    text = data.decode()
    fmt = sniff_format(text) if fmt == "auto" else fmt
    try:
        if fmt == "graph":
            state = parse_graph(text)
        elif fmt == "xgen":
            state = parse_xgen(text)
        else:
            state = parse_tableau(text)
    except (GraphFormatError, TableauError, ValueError) as exc:
        raise click.ClickException(f"{path}: {exc}") from None
    if partition:
        n = state.n_vertices if isinstance(state, ColoredGraph) else state.n
        labels = parse_partition(partition, n)
        if isinstance(state, ColoredGraph):
            state = state.relabel_parties(labels)
        else:
            state = state.with_parties(labels)
    return fmt, state, hashlib.sha256(data).hexdigest()


def load_spec(path):
    data = Path(path).read_bytes()
    try:
        spec = parse_invariant_spec(data.decode())
    except SpecFormatError as exc:
        raise click.ClickException(f"{path}: {exc}") from None
    return spec, hashlib.sha256(data).hexdigest()


def as_tableau(state):
    if isinstance(state, ColoredGraph):
        return graph_tableau(state)
    if isinstance(state, XStabilizerState):
        return state.to_tableau()
    return state


def party_labels(state):
    return sorted(set(state.party)) if isinstance(state, ColoredGraph) else list(state.party_labels)


def emit(ctx, obj):
    line = json.dumps(obj, sort_keys=True)
    out = ctx.obj["output"]
    if out is None:
        click.echo(line)
    else:
        with open(out, "a") as fh:
            fh.write(line + "\n")


# analytic dispatch -----------------------------------------------------------------


def analytic_value(state, spec, t, labels):
    """``(log2 |Z|, kind)`` from closed forms, or None when none applies."""
    if spec.kind == "coxeter":
        if isinstance(state, XStabilizerState):
            return Fraction(x_coxeter_invariant(state, spec.coxeter)), "x-stabilizer"
        return Fraction(coxeter_invariant_conjecture(t, spec.coxeter), 2), "coxeter-conjecture"
    if len(labels) == 3:
        return tripartite_multi_invariant(t, spec.tuple(labels)), "ghz-extraction"
    return None


def compute_record(state, spec, method, budget, timing, fmt, state_hash, spec_hash):
    labels = party_labels(state)
    tup = spec.tuple(labels)
    t = as_tableau(state)
    source = state.to_tableau() if isinstance(state, XStabilizerState) else state
    methods = list(ENGINE_METHODS) + ["analytic"] if method == "all" else [method]
    results, skipped = [], {}
    for m in methods:
        if m == "analytic":
            val = analytic_value(state, spec, t, labels)
            if val is None:
                if method == "analytic":
                    raise click.ClickException("analytic needs 3 parties or a Coxeter spec")
                skipped[m] = "not applicable"
                continue
            results.append({
                "method": "analytic",
                "exactness": "exact-rational",
                "formula": val[1],
                "magnitude_log2": format_rational(val[0]),
            })
            continue
        try:
            res = evaluate(source, tup, m, budget=budget)
        except BudgetError as exc:
            if method != "all":
                raise click.ClickException(str(exc)) from None
            skipped[m] = str(exc)
            continue
        results.append(res.to_record(timing))
    rec = {
        "command": "compute",
        "inputs": {"state": {"format": fmt, "sha256": state_hash}, "spec": {"sha256": spec_hash}},
        "invariant": spec.describe(),
        "parties": labels,
        "results": results,
    }
    if skipped:
        rec["skipped"] = skipped
    if method == "all":
        rec["agreement"] = agreement(results)
    exact = [r for r in results if r["exactness"] != "floating"]
    if spec.kind == "renyi-multientropy" and exact and exact[0]["magnitude_log2"] != "-inf":
        e_n = Fraction(exact[0]["magnitude_log2"]) / (1 - spec.n)
        rec["multientropy"] = format_rational(e_n)
    return rec


def agreement(results):
    exact = {r["magnitude_log2"] for r in results if r["exactness"] != "floating"}
    ok = len(exact) <= 1
    dense = [r for r in results if r["exactness"] == "floating"]
    if dense and exact:
        (ref,) = exact if ok else (next(iter(exact)),)
        target = 0.0 if ref == "-inf" else 2.0 ** float(Fraction(ref))
        got = abs(complex(*dense[0]["complex"]))
        ok = ok and abs(got - target) < 1e-9
    return {"magnitude": ok, "methods": [r["method"] for r in results]}


# commands ----------------------------------------------------------------------------


@click.group()
@click.option("--output", type=click.Path(dir_okay=False), default=None, help="Write output here instead of stdout.")
@click.option("--seed", type=int, default=0, show_default=True, help="Base seed for random choices.")
@click.option("--threads", type=int, default=1, show_default=True, help="Worker threads for independent trials.")
@click.option("--budget-qubits", type=int, default=24, show_default=True,
              help="Dense engine limit on replicas times qubits.")
@click.pass_context
def main(ctx, output, seed, threads, budget_qubits):
    """Multi-invariants of stabilizer and graph states."""
    ctx.ensure_object(dict)
    ctx.obj.update(output=output, seed=seed, threads=threads, budget=budget_qubits)
    if output is not None:
        Path(output).write_text("")


@main.command()
@click.argument("state_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("spec_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--method", type=click.Choice(list(ENGINE_METHODS) + ["analytic", "all"]), default="projector",
              show_default=True)
@click.option("--format", "fmt", type=click.Choice(["auto", "tableau", "graph", "xgen"]), default="auto",
              show_default=True)
@click.option("--partition", default=None, help='Per-qubit labels "A,B,C" or JSON {"A": [0, 1], ...}.')
@click.option("--no-timing", is_flag=True, help="Omit wall times so records are byte-reproducible.")
@click.pass_context
def compute(ctx, state_file, spec_file, method, fmt, partition, no_timing):
    """Evaluate the invariant in SPEC_FILE on the state in STATE_FILE."""
    fmt, state, state_hash = load_state(state_file, fmt, partition)
    spec, spec_hash = load_spec(spec_file)
    rec = compute_record(state, spec, method, ctx.obj["budget"], not no_timing, fmt, state_hash, spec_hash)
    emit(ctx, rec)


def tripartite_record(t):
    a, b, c = t.party_labels
    counts = ghz_extraction_counts(t)
    st = subgroup_table(t)
    gx_sum = sum(st[(x,)] for x in (a, b, c))
    gp = product_subgroup_order(t, [(a, b), (b, c), (a, c)])
    return {
        "command": "tripartite-report",
        "parties": [a, b, c],
        "p": counts.p,
        "m_" + a + b: counts.m_ab,
        "m_" + b + c: counts.m_bc,
        "m_" + a + c: counts.m_ac,
        "degenerate": counts.degenerate,
        "subgroup_log2": {"".join(sorted(s)) or "-": v for s, v in st.entries.items()},
        "entropy": {x: format_rational(entanglement_entropy(t, x)) for x in (a, b, c)},
        "E2": format_rational(renyi2_multientropy(t)),
        "En": {
            "form": "g - (n/2) gX_sum + ((n-2)/2) gP",
            "g": t.k,
            "gX_sum": gx_sum,
            "gP": gp,
        },
    }


@main.command("tripartite-report")
@click.argument("state_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["auto", "tableau", "graph", "xgen"]), default="auto")
@click.option("--partition", default=None, help='Per-qubit labels "A,B,C" or JSON {"A": [0, 1], ...}.')
@click.pass_context
def tripartite_report(ctx, state_file, fmt, partition):
    """GHZ and Bell-pair content, subgroup orders and multi-entropies."""
    _, state, state_hash = load_state(state_file, fmt, partition)
    t = as_tableau(state)
    if t.q != 3:
        raise click.ClickException(f"need 3 parties, got {t.party_labels}")
    rec = tripartite_record(t)
    rec["inputs"] = {"state": {"sha256": state_hash}}
    emit(ctx, rec)


def _write_text(ctx, text, sidecar=None):
    out = ctx.obj["output"]
    if out is None:
        click.echo(text, nl=False)
        return
    Path(out).write_text(text)
    if sidecar is not None:
        Path(out + ".json").write_text(json.dumps(sidecar, sort_keys=True, indent=1) + "\n")


@main.command()
@click.argument("model", type=click.Choice(["ghz", "bell", "toric", "xcube", "random-graph"]))
@click.option("--L", "L", type=int, default=2, show_default=True, help="Lattice size for toric and xcube.")
@click.option("--n", type=int, default=6, show_default=True, help="Vertices for random-graph.")
@click.option("--p", type=float, default=0.5, show_default=True, help="Edge probability for random-graph.")
@click.option("--q", type=int, default=3, show_default=True, help="Parties (round-robin) for random-graph.")
@click.pass_context
def gen(ctx, model, L, n, p, q):
    """Write a model state file (plus a JSON sidecar when --output is set)."""
    sidecar = {"model": model}
    if model == "ghz":
        text = format_graph(ghz_graph())
    elif model == "bell":
        text = format_tableau(StabilizerTableau.from_strings(["+XX", "+ZZ"], ["A", "B"]))
    elif model in ("toric", "xcube"):
        if L < 2:
            raise click.BadParameter("L must be at least 2", param_hint="--L")
        xs, _ = build_toric_code(L) if model == "toric" else build_x_cube(L)
        text = xs.to_text()
        sidecar.update(L=L, qubits=xs.n, rank=xs.rank, coords=xs.coords)
    else:
        if n < 1 or not 0 <= p <= 1 or q < 1:
            raise click.BadParameter("need n >= 1, 0 <= p <= 1, q >= 1")
        g = random_graph(n, p, np.random.default_rng(ctx.obj["seed"]), q)
        text = format_graph(g)
        sidecar.update(n=n, p=p, q=q, seed=ctx.obj["seed"])
    _write_text(ctx, text, sidecar)


@main.command()
@click.option("--min", "n_min", type=int, default=10, show_default=True)
@click.option("--max", "n_max", type=int, default=100, show_default=True)
@click.option("--step", type=int, default=10, show_default=True)
@click.option("--spec", "spec_file", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Invariant spec file (default: n=2 q=3 multi-entropy).")
@click.option("--p", type=float, default=0.5, show_default=True, help="Edge probability.")
@click.option("--engine", "engines", multiple=True, type=click.Choice(["projector-compiled", "projector-python",
              "canonical"]), help="Engines to time (default: all available).")
@click.pass_context
def benchmark(ctx, n_min, n_max, step, spec_file, p, engines):
    """Median wall time per size on random connected graphs, with log-log slopes."""
    if n_min < 1 or n_max < n_min or step < 1:
        raise click.BadParameter("need 1 <= min <= max and step >= 1")
    tup = load_spec(spec_file)[0].tuple() if spec_file else multi_entropy_tuple(2, 3)
    rows = run_benchmark(range(n_min, n_max + 1, step), tup, engines or available_engines(), p, ctx.obj["seed"])
    text = rows_to_csv(rows)
    for name, slope in fit_slopes(rows).items():
        text += f"# slope {name} {slope:.3f}\n"
    _write_text(ctx, text)


@main.command()
@click.option("--trials", type=int, default=100, show_default=True)
@click.option("--seed", "local_seed", type=int, default=None, help="Overrides the global --seed.")
@click.option("--max-qubits", type=int, default=6, show_default=True)
@click.option("--conjecture-trials", type=int, default=50, show_default=True,
              help="Random states per conjecture report.")
@click.option("--inject-fault", default=None, hidden=True)
@click.pass_context
def verify(ctx, trials, local_seed, max_qubits, conjecture_trials, inject_fault):
    """Randomized cross-check campaign; exits 1 on any asserted failure."""
    seed = ctx.obj["seed"] if local_seed is None else local_seed
    summary = run_verify(trials, seed, max_qubits, ctx.obj["budget"], ctx.obj["threads"],
                         conjecture_trials, inject_fault)
    summary["command"] = "verify"
    emit(ctx, summary)
    if not summary["ok"]:
        sys.exit(1)


if __name__ == "__main__":
    main()
