"""One solver run on one graph, producing a JSON-ready report."""
from __future__ import annotations

import time
from dataclasses import asdict

from . import brkga
from .coloring import first_fit, is_connected_sequence
from .exact import exact_gamma, exact_gamma_c
from .graph import Graph, connectify
from .heuristics import CONNECTED_HEURISTICS, PLAIN_HEURISTICS

ALGORITHMS = ("brkga-b", "brkga-rls", "exact") + tuple(
    f"heuristic:{h}" for h in sorted(set(CONNECTED_HEURISTICS) | set(PLAIN_HEURISTICS)))


def brkga_params(algorithm: str, **overrides) -> brkga.BrkgaParams:
    if algorithm == "brkga-b":
        return brkga.BrkgaParams.baseline(**overrides)
    if algorithm == "brkga-rls":
        return brkga.BrkgaParams.with_reset_and_ls(**overrides)
    raise ValueError(f"{algorithm!r} is not a BRKGA variant")


def prepare(g: Graph, mode: str) -> tuple[Graph, int]:
    """Connect a disconnected graph for the connected problem; returns edges added."""
    if mode == "connected" and not g.is_connected():
        h = connectify(g)
        return h, h.m - g.m
    return g, 0


def solve(g: Graph, algorithm: str, mode: str = "connected", seed: int = 0,
          time_limit: float | None = 1.0, max_generations: int | None = None,
          timing: bool = True, **overrides) -> dict:
    """Run ``algorithm`` and return a report with value, 1-based sequence and parameters.

    With ``timing=False`` wall-clock fields are dropped so reports of
    deterministic runs compare byte-for-byte.
    """
    if mode not in ("connected", "plain"):
        raise ValueError(f"unknown mode {mode!r}")
    h, added = prepare(g, mode)
    report: dict = {"algorithm": algorithm, "mode": mode, "n": h.n, "m": h.m, "connectify_edges_added": added}
    t0 = time.perf_counter()
    if algorithm in ("brkga-b", "brkga-rls"):
        params = brkga_params(algorithm, mode=mode, seed=seed, time_limit=time_limit,
                              max_generations=max_generations, **overrides)
        stats = brkga.run(h, params)
        report.update(stats.to_dict(timing=timing))
        report["params"] = asdict(params)
    elif algorithm == "exact":
        value, seq = (exact_gamma_c if mode == "connected" else exact_gamma)(h)
        report.update(best_value=value, best_sequence=[v + 1 for v in seq], params={"seed": seed})
    elif algorithm.startswith("heuristic:"):
        name = algorithm.split(":", 1)[1]
        table = CONNECTED_HEURISTICS if mode == "connected" else PLAIN_HEURISTICS
        if name not in table:
            raise ValueError(f"unknown {mode} heuristic {name!r}; choose from {sorted(table)}")
        seq = table[name](h)
        col = first_fit(h, seq)
        report.update(best_value=col.num_colors, best_sequence=[v + 1 for v in seq],
                      colors=list(col.colors), params={"seed": seed})
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}")
    if mode == "connected":
        assert is_connected_sequence(h, [v - 1 for v in report["best_sequence"]])
    if timing:
        report.setdefault("elapsed", time.perf_counter() - t0)
        report.setdefault("time_to_best", report["elapsed"])
    report["seed"] = seed
    return report
