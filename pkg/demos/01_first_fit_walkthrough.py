"""First-fit colorings, connected sequences and the upper bounds.

Run with ``python demos/01_first_fit_walkthrough.py``.
"""
# %%
from congrundy.bounds import compute_bounds
from congrundy.coloring import first_disconnected_position, first_fit, is_connected_sequence
from congrundy.exact import exact_gamma, exact_gamma_c
from congrundy.graph import Graph

# A six-vertex graph: a 5-cycle a..e plus a vertex f joined to a and b.
names = "abcdef"
g = Graph.from_edges(6, [(names.index(x), names.index(y))
                         for x, y in ["ab", "bc", "cd", "de", "ea", "af", "bf"]])


def label(seq):
    return "".join(names[v] for v in seq)


# %% The order in which vertices are colored decides the number of colors.
for word in ["fbcaed", "fdecba", "abcdef"]:
    seq = [names.index(ch) for ch in word]
    col = first_fit(g, seq)
    bad = first_disconnected_position(g, seq)
    print(f"{word}: colors {col.colors}, {col.num_colors} colors, connected={is_connected_sequence(g, seq)}"
          + (f" (breaks at position {bad})" if bad is not None else ""))

# %% Exact values: the connected version can be strictly smaller.
gc, seq_c = exact_gamma_c(g)
gm, seq = exact_gamma(g)
print(f"best connected order {label(seq_c)} -> {gc} colors")
print(f"best unrestricted order {label(seq)} -> {gm} colors")

# %% Upper bounds that cap the color range the other modules search over.
report = compute_bounds(g)
print(report.to_dict())
