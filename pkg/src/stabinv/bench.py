"""Scaling benchmark of the projector and canonical engines."""

from __future__ import annotations

import statistics
import timeit

import numpy as np

from .engines.canonical import canonical_multi_invariant
from .engines.projector import projector_inner_product
from .graph import build_big_graph
from .random_states import random_connected_graph

ENGINES = {
    "projector-compiled": lambda big: projector_inner_product(big, backend="compiled"),
    "projector-python": lambda big: projector_inner_product(big, backend="python"),
    "canonical": canonical_multi_invariant,
}


def available_engines():
    from ._backend import get_kernels

    names = list(ENGINES)
    try:
        get_kernels("compiled")
    except ImportError:
        names.remove("projector-compiled")
    return names


def time_call(fn, arg, repeats=5, min_time=0.02):
    """Median per-call wall time in microseconds.

    Each of the ``repeats`` samples loops enough calls to last ``min_time``
    seconds so small graphs are not dominated by timer resolution.
    """
    timer = timeit.Timer(lambda: fn(arg))
    number = 1
    while True:
        if timer.timeit(number) >= min_time or number >= 1 << 16:
            break
        number *= 2
    samples = timer.repeat(repeat=repeats, number=number)
    return statistics.median(samples) / number * 1e6


def run_benchmark(sizes, tup, engines=None, p=0.5, seed=0, repeats=5, graphs_per_size=5):
    """Time each engine on big graphs built from random connected graphs.

    Each size draws ``graphs_per_size`` graphs; a row's ``median_us`` is the
    mean over those graphs of the per-graph median. Returns row dicts with
    keys ``engine, n, big_n, median_us``.
    """
    engines = list(engines) if engines else available_engines()
    rows = []
    for idx, n in enumerate(sizes):
        rng = np.random.default_rng([seed, idx])
        bigs = []
        for _ in range(graphs_per_size):
            g = random_connected_graph(n, p, rng, q=tup.q)
            bigs.append(build_big_graph(g, tup.relabel(g.party_labels)))
        for name in engines:
            times = [time_call(ENGINES[name], big, repeats) for big in bigs]
            rows.append({
                "engine": name,
                "n": n,
                "big_n": bigs[0].n_vertices,
                "median_us": float(np.mean(times)),
            })
    return rows


def fit_slopes(rows):
    """Log-log slope of median time against size, per engine (needs >= 2 sizes)."""
    out = {}
    for name in sorted({r["engine"] for r in rows}):
        pts = [(r["n"], r["median_us"]) for r in rows if r["engine"] == name]
        if len({n for n, _ in pts}) < 2:
            continue
        x = np.log([n for n, _ in pts])
        y = np.log([t for _, t in pts])
        out[name] = float(np.polyfit(x, y, 1)[0])
    return out


def rows_to_csv(rows):
    lines = ["engine,n,big_n,median_us"]
    lines += [f"{r['engine']},{r['n']},{r['big_n']},{r['median_us']:.1f}" for r in rows]
    return "\n".join(lines) + "\n"
