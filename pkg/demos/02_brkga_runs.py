"""Baseline BRKGA versus the variant with reset and local search.

Generates one small instance group, runs both algorithms a few times and
prints a compact table. Budgets are tiny so the script finishes in about a
minute; raise ``TIME_LIMIT`` and ``RUNS`` for serious comparisons.
"""
# %%
import statistics

from congrundy.bounds import compute_bounds
from congrundy.brkga import BrkgaParams, run
from congrundy.graph import connectify, generate, instance_suite
from congrundy.heuristics import warm_start
from congrundy.metrics import metric_diff
from congrundy.runner import solve

TIME_LIMIT = 2.0
RUNS = 3

specs = instance_suite("random", 60, 0.3, count=3, seed=11)
graphs = [connectify(generate(s)) for s in specs]

# %%
print(f"{'instance':<16}{'heur':>6}{'bound':>7}{'B mean':>8}{'RLS mean':>10}{'diff_m':>8}")
for spec, g in zip(specs, graphs):
    _, col, _ = warm_start(g, "connected")
    bound = compute_bounds(g).best
    means = {}
    for alg in ("brkga-b", "brkga-rls"):
        vals = [solve(g, alg, seed=r, time_limit=TIME_LIMIT)["best_value"] for r in range(RUNS)]
        means[alg] = statistics.fmean(vals)
    diff = metric_diff(means["brkga-rls"], means["brkga-b"])
    print(f"{spec.name + '#' + str(spec.seed % 1000):<16}{col.num_colors:>6}{bound:>7}"
          f"{means['brkga-b']:>8.2f}{means['brkga-rls']:>10.2f}{diff:>8.2f}")

# %% Convergence trace of a single run.
trace = []
stats = run(graphs[0], BrkgaParams(time_limit=TIME_LIMIT, seed=0), trace=lambda gen, best, t: trace.append((gen, best, t)))
for gen, kind, value in stats.events:
    print(f"generation {gen:>5}: {kind:<8} -> {value}")
print(f"{stats.generations} generations, {stats.resets} resets, {stats.ls_invocations} local searches")
