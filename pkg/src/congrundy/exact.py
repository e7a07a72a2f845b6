"""Exhaustive oracles for small graphs.

``brute_gamma_c`` and ``brute_gamma`` enumerate first-fit sequences by
depth-first extension of prefixes. The remainder of a search only depends on
which vertices are colored and on the colors of colored vertices that still
have uncolored neighbors, so subtrees are memoized on exactly that state.
Subtrees are cut only when a sound upper bound has already been reached.
"""
from __future__ import annotations

import sys

from .bounds import delta2_plus_one, psi_bound
from .coloring import UNCOLORED, first_fit
from .graph import Graph

GAMMA_C_LIMIT = 10
GAMMA_LIMIT = 9
CHROMATIC_LIMIT = 12


class BudgetExceeded(ValueError):
    """The instance is larger than the exact solver is allowed to handle."""


def _check_budget(g: Graph, limit: int, what: str) -> None:
    if g.n > limit:
        raise BudgetExceeded(f"{what}: n={g.n} exceeds the vertex budget {limit}")


def _search(g: Graph, connected: bool) -> tuple[int, list[int]]:
    n = g.n
    if n == 0:
        return 0, []
    adj = g.adj
    nbr_mask = [sum(1 << u for u in nbrs) for nbrs in adj]
    full = (1 << n) - 1
    psi, caps = psi_bound(g)
    ub_global = min(psi, delta2_plus_one(g))
    colors = [UNCOLORED] * n
    memo: dict = {}

    def state_key(mask: int):
        return mask, tuple(colors[v] for v in range(n) if mask >> v & 1 and nbr_mask[v] & ~mask)

    def optimistic(mask: int) -> int:
        best = 0
        for v in range(n):
            if mask >> v & 1:
                continue
            seen = {colors[u] for u in adj[v] if mask >> u & 1}
            free = (nbr_mask[v] & ~mask).bit_count()
            best = max(best, min(caps[v], len(seen) + free + 1))
        return best

    def best_future(mask: int) -> int:
        # maximum color among vertices colored from this state onwards
        if mask == full:
            return 0
        key = state_key(mask)
        hit = memo.get(key)
        if hit is not None:
            return hit[0]
        limit = min(ub_global, optimistic(mask))
        if mask == 0 or not connected:
            cands = [v for v in range(n) if not mask >> v & 1]
        else:
            cands = [v for v in range(n) if not mask >> v & 1 and nbr_mask[v] & mask]
        best, best_v = -1, cands[0]
        for v in cands:
            used = {colors[u] for u in adj[v]}
            c = 1
            while c in used:
                c += 1
            colors[v] = c
            val = max(c, best_future(mask | 1 << v))
            colors[v] = UNCOLORED
            if val > best:
                best, best_v = val, v
                if best >= limit:
                    break
        memo[key] = (best, best_v)
        return best

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 10 * n + 100))
    try:
        value = best_future(0)
        seq, mask = [], 0
        while mask != full:
            _, v = memo[state_key(mask)]
            used = {colors[u] for u in adj[v]}
            c = 1
            while c in used:
                c += 1
            colors[v] = c
            seq.append(v)
            mask |= 1 << v
    finally:
        sys.setrecursionlimit(old)
    assert first_fit(g, seq).num_colors == value
    return value, seq


def exact_gamma_c(g: Graph, limit: int = GAMMA_C_LIMIT) -> tuple[int, list[int]]:
    """Connected Grundy number with a witness connected sequence."""
    _check_budget(g, limit, "brute_gamma_c")
    if not g.is_connected():
        raise ValueError("connected Grundy number needs a connected graph")
    return _search(g, connected=True)


def exact_gamma(g: Graph, limit: int = GAMMA_LIMIT) -> tuple[int, list[int]]:
    """Grundy number with a witness sequence."""
    _check_budget(g, limit, "brute_gamma")
    return _search(g, connected=False)


def brute_gamma_c(g: Graph, limit: int = GAMMA_C_LIMIT) -> int:
    return exact_gamma_c(g, limit)[0]


def brute_gamma(g: Graph, limit: int = GAMMA_LIMIT) -> int:
    return exact_gamma(g, limit)[0]


def brute_chromatic(g: Graph, limit: int = CHROMATIC_LIMIT) -> int:
    """Chromatic number by backtracking over a degree-sorted vertex order."""
    _check_budget(g, limit, "brute_chromatic")
    n = g.n
    if n == 0:
        return 0
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    colors = [0] * n

    def assign(i: int, k: int, used: int) -> bool:
        if i == n:
            return True
        v = order[i]
        forbidden = {colors[u] for u in g.adj[v]}
        for c in range(1, min(k, used + 1) + 1):
            if c not in forbidden:
                colors[v] = c
                if assign(i + 1, k, max(used, c)):
                    return True
                colors[v] = 0
        return False

    for k in range(1, n + 1):
        if assign(0, k, 0):
            return k
    return n
