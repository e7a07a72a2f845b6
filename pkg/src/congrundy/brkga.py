"""Biased random-key genetic algorithm with reset and local-search injection."""
from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .bounds import delta2_plus_one, psi_bound
from .decoders import Decoded, decode, decode_connected, decode_plain, encode_sequence  # noqa: F401
from .graph import Graph, make_rng
from .localsearch import improve_sequence


@dataclass
class BrkgaParams:
    population_factor: float = 1.7
    elite_fraction: float = 0.30
    mutant_fraction: float = 0.10
    elite_inheritance: float = 0.60
    reset_generations: int | None = 2000
    ls_count: int = 5
    ls_enabled: bool = True
    time_limit: float | None = 1.0
    max_generations: int | None = None
    mode: str = "connected"
    seed: int = 0
    stop_at_bound: bool = True

    def __post_init__(self):
        if self.elite_fraction + self.mutant_fraction >= 1:
            raise ValueError("elite_fraction + mutant_fraction must be < 1")
        if not 0.5 < self.elite_inheritance < 1:
            raise ValueError("elite_inheritance must lie in (0.5, 1)")
        if self.mode not in ("connected", "plain"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.time_limit is None and self.max_generations is None:
            raise ValueError("need a time limit or a generation budget")

    @classmethod
    def baseline(cls, **kw) -> "BrkgaParams":
        """BRKGA-B: larger population, no reset, no local search."""
        base = dict(population_factor=3.0, reset_generations=None, ls_enabled=False)
        base.update(kw)
        return cls(**base)

    @classmethod
    def with_reset_and_ls(cls, **kw) -> "BrkgaParams":
        return cls(**kw)

    def population_size(self, n: int) -> int:
        return max(3, math.ceil(self.population_factor * n - 1e-9))

    def sizes(self, n: int) -> tuple[int, int, int]:
        """(population, elites, mutants) for a graph on ``n`` vertices."""
        p = self.population_size(n)
        elites = max(1, int(self.elite_fraction * p + 1e-9))
        mutants = math.ceil(self.mutant_fraction * p - 1e-9)
        mutants = min(mutants, p - elites - 1)
        return p, elites, max(0, mutants)


def crossover(elite: np.ndarray, non_elite: np.ndarray, rho: float, rng: np.random.Generator) -> np.ndarray:
    """Parametric uniform crossover: each key comes from ``elite`` w.p. ``rho``."""
    if elite.shape != non_elite.shape:
        raise ValueError("parents must have equal length")
    return np.where(rng.random(elite.shape) < rho, elite, non_elite)


def evolve(keys: np.ndarray, n_elite: int, n_mutant: int, rho: float, rng: np.random.Generator) -> np.ndarray:
    """Next generation from a population sorted best-first.

    Elites are copied verbatim, ``n_mutant`` fresh vectors are drawn and the
    rest are children of a uniform elite and a uniform non-elite parent.
    """
    p, n = keys.shape
    n_child = p - n_elite - n_mutant
    out = np.empty_like(keys)
    out[:n_elite] = keys[:n_elite]
    out[n_elite:n_elite + n_mutant] = rng.random((n_mutant, n))
    if n_child:
        a = rng.integers(0, n_elite, n_child)
        b = rng.integers(n_elite, p, n_child)
        mask = rng.random((n_child, n)) < rho
        out[n_elite + n_mutant:] = np.where(mask, keys[a], keys[b])
    return out


@dataclass
class RunStats:
    best_value: int
    best_sequence: list[int]
    time_to_best: float
    generations: int
    resets: int
    ls_invocations: int
    elapsed: float
    events: list[tuple] = field(default_factory=list)
    params: dict = field(default_factory=dict)

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "best_value": self.best_value,
            "best_sequence": [v + 1 for v in self.best_sequence],
            "generations": self.generations,
            "resets": self.resets,
            "ls_invocations": self.ls_invocations,
            "events": [list(e) for e in self.events],
            "params": self.params,
        }
        if timing:
            d["time_to_best"] = self.time_to_best
            d["elapsed"] = self.elapsed
        return d


def _upper_bound(g: Graph) -> int:
    return min(psi_bound(g)[0], delta2_plus_one(g))


def run(g: Graph, params: BrkgaParams, trace=None) -> RunStats:
    """Evolve until the time limit or generation budget runs out.

    With only ``max_generations`` set (no time limit) the run is fully
    deterministic for a given seed, including the event log. Events are
    ``(generation, kind, value)`` with kind one of ``improve``, ``ls`` and
    ``reset``. ``trace`` receives ``(generation, best, seconds)`` per
    generation when given.
    """
    t0 = time.perf_counter()
    deadline = None if params.time_limit is None else t0 + params.time_limit
    n = g.n
    if params.mode == "connected" and not g.is_connected():
        raise ValueError("connected mode needs a connected graph")
    rng = make_rng(params.seed)
    p, n_elite, n_mutant = params.sizes(n)
    rho = params.elite_inheritance
    mode = params.mode
    bound = _upper_bound(g) if params.stop_at_bound else None

    keys = rng.random((p, n))
    fitness = np.empty(p, dtype=np.int64)
    decoded: list[Decoded | None] = [None] * p

    def evaluate(rows):
        for i in rows:
            d = decode(g, keys[i], mode)
            decoded[i] = d
            fitness[i] = d.value

    best = None
    best_keys = None
    ttb = 0.0
    events: list[tuple] = []
    resets = ls_calls = 0
    stale = 0
    gen = 0

    def out_of_budget():
        if params.max_generations is not None and gen >= params.max_generations:
            return True
        if deadline is not None and time.perf_counter() >= deadline:
            return True
        return bound is not None and best is not None and best.value >= bound

    def sort_population():
        nonlocal keys, fitness, decoded
        order = np.argsort(-fitness, kind="stable")
        keys = keys[order]
        fitness = fitness[order]
        decoded = [decoded[i] for i in order]

    evaluate(range(p))
    while True:
        sort_population()
        improved = best is None or fitness[0] > best.value
        if improved:
            best, best_keys = decoded[0], keys[0].copy()
            ttb = time.perf_counter() - t0
            events.append((gen, "improve", int(best.value)))
            stale = 0
            if params.ls_enabled and not out_of_budget():
                k = min(params.ls_count, n_elite)
                picks = [0]
                if k > 1:
                    picks += sorted(rng.choice(np.arange(1, n_elite), size=k - 1, replace=False).tolist())
                results = []
                for i in picks:
                    d = decoded[i]
                    res = improve_sequence(g, d.sequence, d.colors, mode=mode, deadline=deadline)
                    ls_calls += 1
                    results.append(res)
                for slot, res in zip(range(p - 1, p - 1 - len(results), -1), results):
                    keys[slot] = encode_sequence(res.sequence)
                    decoded[slot] = Decoded(res.sequence, res.colors, res.value)
                    fitness[slot] = res.value
                top = max(results, key=lambda r: r.value)
                if top.value > best.value:
                    best = Decoded(top.sequence, top.colors, top.value)
                    best_keys = encode_sequence(top.sequence)
                    ttb = time.perf_counter() - t0
                    events.append((gen, "ls", int(best.value)))
                sort_population()
        else:
            stale += 1
        if trace is not None:
            trace(gen, int(best.value), time.perf_counter() - t0)
        if out_of_budget():
            break
        if params.reset_generations is not None and stale >= params.reset_generations:
            keys = rng.random((p, n))
            keys[0] = best_keys
            evaluate(range(p))
            resets += 1
            stale = 0
            events.append((gen, "reset", int(best.value)))
        else:
            keys = evolve(keys, n_elite, n_mutant, rho, rng)
            evaluate(range(n_elite, p))
        gen += 1

    return RunStats(
        best_value=int(best.value),
        best_sequence=list(best.sequence),
        time_to_best=ttb,
        generations=gen,
        resets=resets,
        ls_invocations=ls_calls,
        elapsed=time.perf_counter() - t0,
        events=events,
        params=asdict(params),
    )
