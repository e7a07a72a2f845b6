"""Build both integer programs for a small graph and inspect them.

If ``CONGRUNDY_SOLVER`` holds a command template such as
``cbc {model} -mips {mst} -sec {timeout} -solve -solu {solution}``
the models are also solved.
"""
# %%
from collections import Counter

from congrundy.bounds import build_color_sets, compute_bounds
from congrundy.exact import exact_gamma_c
from congrundy.graph import Graph
from congrundy.heuristics import warm_start
from congrundy.ipgen import MODEL_BUILDERS, solve_external, warm_start_from, write_lp

g = Graph.from_edges(8, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (4, 5), (5, 7), (3, 7), (4, 6)])
cs = build_color_sets(g, compute_bounds(g))
seq, col, heuristic = warm_start(g, "connected")
print(f"color range 1..{len(cs.K)}, warm start from {heuristic}: {col.num_colors} colors")
print(f"exact value: {exact_gamma_c(g)[0]}")

# %%
for kind, builder in MODEL_BUILDERS.items():
    model = builder(g, cs)
    model.warm_start = warm_start_from(g, seq, col, cs, kind)
    families = Counter(c.name.rstrip("0123456789_") for c in model.constraints)
    print(f"\n{kind}: {len(model.variables)} variables, {len(model.constraints)} rows")
    for fam, count in families.items():
        print(f"  {fam:<12}{count:>6}")
    print(f"  warm start feasible: {model.is_feasible(model.warm_start)}, "
          f"objective {model.objective_value(model.warm_start):g}")
    res = solve_external(model, time_limit=60)
    print(f"  solver: {res.status}" + (f", objective {res.objective:g}" if res.objective is not None else ""))

# %% The first lines of the LP text.
print("\n".join(write_lp(MODEL_BUILDERS["standard"](g, cs)).splitlines()[:8]))
