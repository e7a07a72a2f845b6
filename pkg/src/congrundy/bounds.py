"""Combinatorial upper bounds on the (connected) Grundy number.

All three bounds are valid for the plain Grundy number and therefore for the
connected one as well. ``build_color_sets`` turns them into the pruned index
sets used by the integer programming models.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph

STAIR_FACTOR_LIMIT = 20


def delta2_plus_one(g: Graph) -> int:
    """1 + max over u of the largest degree among neighbors no larger than d(u)."""
    deg = g.degrees
    best = 0
    for u, nbrs in enumerate(g.adj):
        du = deg[u]
        for v in nbrs:
            dv = deg[v]
            if best < dv <= du:
                best = dv
    return best + 1


def _max_supported_color(cap: int, nbr_caps: list[int]) -> int:
    # Largest c <= cap with nbr_caps (descending) satisfying a_i >= c - i for i < c.
    nbr_caps.sort(reverse=True)
    c_best = 1
    prefix_min = float("inf")
    for i, a in enumerate(nbr_caps, start=1):
        if i + 1 > cap:
            break
        prefix_min = min(prefix_min, a + i)
        if i + 1 <= prefix_min:
            c_best = i + 1
    return min(c_best, cap)


def psi_bound(g: Graph, return_passes: bool = False):
    """Per-vertex color caps by a monotone fixpoint, and their maximum.

    A vertex can only receive color ``c`` if ``c - 1`` distinct neighbors can
    take the colors ``1..c-1``; with neighbor caps sorted in decreasing order
    that needs the i-th largest cap to be at least ``c - i``. Caps start at
    ``d(v) + 1`` and only ever decrease, so the iteration terminates.
    """
    caps = [d + 1 for d in g.degrees]
    passes = 0
    changed = True
    while changed:
        changed = False
        passes += 1
        new = caps[:]
        for v, nbrs in enumerate(g.adj):
            c = _max_supported_color(caps[v], [caps[u] for u in nbrs])
            if c < caps[v]:
                new[v] = c
                changed = True
        caps = new
    psi = max(caps, default=1)
    if return_passes:
        return psi, caps, passes
    return psi, caps


def stair_factor(g: Graph, limit: int = STAIR_FACTOR_LIMIT) -> int | None:
    """Longest feasible Grundy sequence, or ``None`` when ``g.n > limit``.

    A sequence ``(g_1..g_r)`` is feasible when each ``g_i`` has degree at least
    ``i - 1`` after deleting ``g_{i+1}..g_r``. Sequences are built from the
    back; the search for a fixed ``r`` memoizes on the set already deleted.
    """
    n = g.n
    if n > limit:
        return None
    if n == 0:
        return 0
    nbr_mask = [sum(1 << u for u in nbrs) for nbrs in g.adj]
    full = (1 << n) - 1

    def feasible(r: int) -> bool:
        dead: set[int] = set()

        def extend(alive: int, i: int) -> bool:
            # positions i, i-1, ..., 1 remain to be filled from ``alive``
            if i <= 1:
                return alive != 0
            if alive in dead:
                return False
            degs = []
            a = alive
            while a:
                low = a & -a
                v = low.bit_length() - 1
                degs.append(((nbr_mask[v] & alive).bit_count(), v))
                a ^= low
            degs.sort(reverse=True)
            # the t-th highest current degree must cover position i - t + 1
            for t, (d, _) in enumerate(degs[:i], start=1):
                if d < i - t:
                    dead.add(alive)
                    return False
            if len(degs) < i:
                dead.add(alive)
                return False
            for d, v in degs:
                if d < i - 1:
                    break
                if extend(alive & ~(1 << v), i - 1):
                    return True
            dead.add(alive)
            return False

        return extend(full, r)

    hi = min(n, g.max_degree + 1)
    for r in range(hi, 0, -1):
        if feasible(r):
            return r
    return 1


@dataclass
class BoundsReport:
    delta2_plus_one: int
    psi_global: int
    psi_cap: list[int]
    stair_factor: int | None
    max_degree_plus_one: int

    @property
    def best(self) -> int:
        vals = [self.delta2_plus_one, self.psi_global]
        if self.stair_factor is not None:
            vals.append(self.stair_factor)
        return min(vals)

    def to_dict(self) -> dict:
        return {
            "delta2_plus_one": self.delta2_plus_one,
            "psi_global": self.psi_global,
            "psi_cap": {str(v + 1): c for v, c in enumerate(self.psi_cap)},
            "stair_factor": self.stair_factor,
            "max_degree_plus_one": self.max_degree_plus_one,
            "best": self.best,
        }


def compute_bounds(g: Graph, stair_limit: int = STAIR_FACTOR_LIMIT) -> BoundsReport:
    psi, caps = psi_bound(g)
    return BoundsReport(
        delta2_plus_one=delta2_plus_one(g),
        psi_global=psi,
        psi_cap=caps,
        stair_factor=stair_factor(g, stair_limit),
        max_degree_plus_one=g.max_degree + 1,
    )


@dataclass
class ColorSets:
    """Pruned color/time index sets (colors and times are 1-based)."""

    K: list[int]
    K_v: list[list[int]]
    V_k: dict[int, list[int]]
    T: list[int] = field(default_factory=list)

    def K_vt(self, v: int, t: int) -> list[int]:
        return [k for k in self.K_v[v] if k <= t]


def build_color_sets(g: Graph, report: BoundsReport) -> ColorSets:
    best = report.best
    K = list(range(1, best + 1))
    K_v = [list(range(1, min(best, report.psi_cap[v]) + 1)) for v in range(g.n)]
    V_k = {k: [v for v in range(g.n) if k <= len(K_v[v])] for k in K}
    return ColorSets(K=K, K_v=K_v, V_k=V_k, T=list(range(1, g.n + 1)))
