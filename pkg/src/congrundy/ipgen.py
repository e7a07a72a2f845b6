"""Integer programming models for the connected Grundy coloring problem.

Two formulations are built symbolically:

* ``standard``: ``z_v_k_t`` (vertex v takes color k at time t) and ``w_k``.
* ``representatives``: ``Z_u_v_t`` (u represents v at time t, u <= v, u and
  v non-adjacent or equal) and ``y_u_v`` (color of representative u precedes
  the color of representative v).

Names use 1-based vertex, color and time indices. Models serialize to a
subset of the CPLEX LP format plus a ``<name> <value>`` warm-start file.
Nothing here solves a model; ``solve_external`` shells out to a solver.
"""
from __future__ import annotations

import os
import re
import shlex
import shutil
import subprocess
import tempfile
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from .bounds import ColorSets
from .coloring import Coloring
from .graph import Graph

SOLVER_ENV = "CONGRUNDY_SOLVER"


@dataclass
class Constraint:
    name: str
    terms: dict[str, float]
    sense: str  # "<=", ">=" or "="
    rhs: float

    def slack(self, values: Mapping[str, float]) -> float:
        lhs = sum(c * values.get(v, 0) for v, c in self.terms.items())
        if self.sense == "<=":
            return self.rhs - lhs
        if self.sense == ">=":
            return lhs - self.rhs
        return -abs(lhs - self.rhs)


@dataclass
class IpModel:
    name: str
    kind: str
    variables: dict[str, None] = field(default_factory=dict)
    objective: dict[str, float] = field(default_factory=dict)
    constraints: list[Constraint] = field(default_factory=list)
    warm_start: dict[str, int] | None = None

    def var(self, name: str) -> str:
        self.variables.setdefault(name, None)
        return name

    def add(self, name: str, lhs: Mapping[str, float], sense: str, rhs: Mapping[str, float] | float = 0.0) -> None:
        """Add ``lhs <sense> rhs`` after moving every variable to the left."""
        terms: dict[str, float] = defaultdict(float)
        const = 0.0
        for v, c in lhs.items():
            terms[v] += c
        if isinstance(rhs, Mapping):
            for v, c in rhs.items():
                if v == "":
                    const += c
                else:
                    terms[v] -= c
        else:
            const = float(rhs)
        terms = {v: c for v, c in terms.items() if c != 0}
        for v in terms:
            if v not in self.variables:
                raise KeyError(f"constraint {name} uses undeclared variable {v}")
        if not terms:
            ok = {"<=": 0 <= const, ">=": 0 >= const, "=": const == 0}[sense]
            if not ok:
                raise ValueError(f"constraint {name} is infeasible without variables")
            return
        self.constraints.append(Constraint(name, terms, sense, const))

    def objective_value(self, values: Mapping[str, float]) -> float:
        return sum(c * values.get(v, 0) for v, c in self.objective.items())

    def violations(self, values: Mapping[str, float], tol: float = 1e-9) -> list[str]:
        """Names of constraints violated by ``values`` (missing variables are 0)."""
        bad = [v for v, x in values.items() if v not in self.variables or x not in (0, 1)]
        bad += [c.name for c in self.constraints if c.slack(values) < -tol]
        return bad

    def is_feasible(self, values: Mapping[str, float]) -> bool:
        return not self.violations(values)


def _ones(names) -> dict[str, float]:
    out: dict[str, float] = defaultdict(float)
    for n in names:
        out[n] += 1.0
    return out


def emit_standard(g: Graph, cs: ColorSets, name: str = "standard") -> IpModel:
    model = IpModel(name, "standard")
    n = g.n
    T = range(1, n + 1)
    K_v = [set(ks) for ks in cs.K_v]

    def z(v, k, t):
        return f"z_{v + 1}_{k}_{t}"

    def has_z(v, k, t):
        return k in K_v[v] and k <= t

    for v in range(n):
        for t in T:
            for k in cs.K_vt(v, t):
                model.var(z(v, k, t))
    for k in cs.K:
        model.var(f"w_{k}")
    model.objective = {f"w_{k}": 1.0 for k in cs.K}

    for u, v in g.edges():
        for k in sorted(K_v[u] & K_v[v]):
            lhs = _ones([z(u, k, t) for t in T if t >= k] + [z(v, k, t) for t in T if t >= k])
            model.add(f"proper_{u + 1}_{v + 1}_{k}", lhs, "<=", {f"w_{k}": 1})
    for v in range(n):
        model.add(f"one_color_{v + 1}", _ones(z(v, k, t) for t in T for k in cs.K_vt(v, t)), "=", 1)
    for k in cs.K:
        rhs = _ones(z(v, k, t) for v in cs.V_k[k] for t in T if t >= k)
        model.add(f"used_{k}", {f"w_{k}": 1}, "<=", rhs)
    for v in range(n):
        ks = sorted(K_v[v])
        for k in ks:
            for k2 in ks:
                if k >= k2:
                    continue
                for t in T:
                    if t == 1:
                        continue
                    lhs = _ones(z(v, k2, t2) for t2 in range(k2, t + 1))
                    if not lhs:
                        continue
                    rhs = _ones(z(u, k, t2) for u in g.adj[v] if k in K_v[u] for t2 in range(k, t))
                    model.add(f"grundy_{v + 1}_{k}_{k2}_{t}", lhs, "<=", rhs)
    for t in T:
        model.add(f"one_vertex_{t}", _ones(z(v, k, t) for v in range(n) for k in cs.K_vt(v, t)), "=", 1)
    for v in range(n):
        for t in T:
            if t == 1:
                continue
            lhs = _ones(z(v, k, t) for k in cs.K_vt(v, t))
            rhs = _ones(z(u, k, t2) for u in g.adj[v] for t2 in range(1, t) for k in cs.K_vt(u, t2))
            model.add(f"connected_{v + 1}_{t}", lhs, "<=", rhs)
    return model


def emit_representatives(g: Graph, cs: ColorSets, name: str = "representatives",
                         one_vertex_per_time: bool = True) -> IpModel:
    """Representatives model.

    Without ``one_vertex_per_time`` several vertices may share a time step,
    so vertices placed together at t=1 escape both the connectivity and the
    Grundy-order rows and the optimum can exceed the connected Grundy number
    (P5 reaches 3). The extra rows mirror ``one_vertex_t`` of the standard
    model and are on by default.
    """
    model = IpModel(name, "representatives")
    n = g.n
    T = range(1, n + 1)
    nbr = g.neighbor_sets
    # anti[u]: closed anti-neighborhood members v >= u
    anti = [[v for v in range(u, n) if v not in nbr[u]] for u in range(n)]
    anti_set = [set(a) for a in anti]

    def Z(u, v, t):
        return f"Z_{u + 1}_{v + 1}_{t}"

    def y(u, v):
        return f"y_{u + 1}_{v + 1}"

    for u in range(n):
        for v in anti[u]:
            for t in T:
                model.var(Z(u, v, t))
    for u in range(n):
        for v in range(n):
            if u != v:
                model.var(y(u, v))
    model.objective = {Z(v, v, t): 1.0 for v in range(n) for t in T}

    def rep_of(u):
        return _ones(Z(u, u, t) for t in T)

    for u in range(n):
        members = [v for v in anti[u] if v != u]
        for i, v in enumerate(members):
            for w in members[i + 1:]:
                if w in nbr[v]:
                    lhs = _ones([Z(u, v, t) for t in T] + [Z(u, w, t) for t in T])
                    model.add(f"proper_{u + 1}_{v + 1}_{w + 1}", lhs, "<=", rep_of(u))
        for v in members:
            if not any(w in anti_set[u] for w in g.adj[v]):
                model.add(f"represent_{u + 1}_{v + 1}", _ones(Z(u, v, t) for t in T), "<=", rep_of(u))
    for v in range(n):
        reps = [u for u in range(v + 1) if v in anti_set[u]]
        model.add(f"one_rep_{v + 1}", _ones(Z(u, v, t) for u in reps for t in T), "=", 1)
    for u in range(n):
        for p in range(n):
            if p == u:
                continue
            for v in anti[u]:
                ws = [w for w in g.adj[v] if w in anti_set[p]]
                for t in T:
                    if t == 1:
                        continue
                    lhs = _ones(Z(u, v, t2) for t2 in range(1, t + 1))
                    rhs = _ones(Z(p, w, t2) for w in ws for t2 in range(1, t))
                    rhs[y(p, u)] -= 1.0
                    rhs[""] = 1.0
                    model.add(f"grundy_{u + 1}_{p + 1}_{v + 1}_{t}", lhs, "<=", rhs)
    reps_of = [[u for u in range(v + 1) if v in anti_set[u]] for v in range(n)]
    for v in range(n):
        for t in T:
            if t == 1:
                continue
            lhs = _ones(Z(u, v, t) for u in reps_of[v])
            rhs = _ones(Z(u, v2, t2) for v2 in g.adj[v] for u in reps_of[v2] for t2 in range(1, t))
            model.add(f"connected_{v + 1}_{t}", lhs, "<=", rhs)
    for u in range(n):
        for v in range(u + 1, n):
            rhs = rep_of(u)
            for k, c in rep_of(v).items():
                rhs[k] += c
            rhs[""] = -1.0
            model.add(f"order_{u + 1}_{v + 1}", _ones([y(v, u), y(u, v)]), ">=", rhs)
    for u in range(n):
        for v in range(n):
            if u != v:
                model.add(f"order_rep_{u + 1}_{v + 1}", _ones([y(u, v), y(v, u)]), "<=", rep_of(u))
    if one_vertex_per_time:
        for t in T:
            lhs = _ones(Z(u, v, t) for v in range(n) for u in reps_of[v])
            model.add(f"one_vertex_{t}", lhs, "=", 1)
    all_reps = _ones(Z(u, u, t) for u in range(n) for t in T)
    model.add("rep_limit", all_reps, "<=", float(len(cs.K)))
    return model


MODEL_BUILDERS = {"standard": emit_standard, "representatives": emit_representatives}


def warm_start_from(g: Graph, seq: Sequence[int], coloring: Coloring | Sequence[int],
                    cs: ColorSets, kind: str) -> dict[str, int]:
    """Variable assignment encoding a first-fit solution ``(seq, coloring)``."""
    colors = coloring.colors if isinstance(coloring, Coloring) else list(coloring)
    time_of = {v: t for t, v in enumerate(seq, start=1)}
    if kind == "standard":
        values: dict[str, int] = {}
        for v in range(g.n):
            k, t = colors[v], time_of[v]
            if k not in cs.K_v[v] or k > t:
                raise ValueError(f"vertex {v + 1}: color {k} at time {t} is outside its color set")
            values[f"z_{v + 1}_{k}_{t}"] = 1
        for k in sorted(set(colors)):
            values[f"w_{k}"] = 1
        return values
    if kind == "representatives":
        classes: dict[int, list[int]] = defaultdict(list)
        for v in range(g.n):
            classes[colors[v]].append(v)
        if len(classes) > len(cs.K):
            raise ValueError(f"{len(classes)} colors exceed the bound {len(cs.K)}")
        rep = {k: min(vs) for k, vs in classes.items()}
        values = {f"Z_{rep[colors[v]] + 1}_{v + 1}_{time_of[v]}": 1 for v in range(g.n)}
        for k1 in classes:
            for k2 in classes:
                if k1 < k2:
                    values[f"y_{rep[k1] + 1}_{rep[k2] + 1}"] = 1
        return values
    raise ValueError(f"unknown model kind {kind!r}")


# LP text --------------------------------------------------------------------

def _fmt(c: float) -> str:
    return str(int(c)) if float(c).is_integer() else repr(float(c))


def _linear(terms: Mapping[str, float], per_line: int = 8) -> str:
    out = ""
    for i, (v, c) in enumerate(terms.items()):
        sign = "-" if c < 0 else "+"
        chunk = f"{sign} {v}" if abs(c) == 1 else f"{sign} {_fmt(abs(c))} {v}"
        if i:
            out += "\n   " if i % per_line == 0 else " "
        out += chunk
    return out


def write_lp(model: IpModel) -> str:
    """Deterministic LP text: objective, rows in declaration order, bounds, binaries."""
    out = [f"\\ {model.kind} model {model.name}", "Maximize"]
    out.append(" obj: " + (_linear(model.objective) if model.objective else "0 " + next(iter(model.variables), "")))
    if model.constraints:
        out.append("Subject To")
        for c in model.constraints:
            out.append(f" {c.name}: {_linear(c.terms)} {c.sense} {_fmt(c.rhs)}")
    out.append("Bounds")
    out.extend(f" 0 <= {v} <= 1" for v in model.variables)
    out.append("Binary")
    names = list(model.variables)
    for i in range(0, len(names), 8):
        out.append(" " + " ".join(names[i:i + 8]))
    out.append("End")
    return "\n".join(out) + "\n"


def write_mst(model: IpModel, values: Mapping[str, float] | None = None) -> str:
    values = model.warm_start if values is None else values
    values = values or {}
    return "".join(f"{v} {_fmt(values.get(v, 0))}\n" for v in model.variables)


# External solver ------------------------------------------------------------

class SolverError(RuntimeError):
    def __init__(self, message: str, output: str = ""):
        super().__init__(message)
        self.output = output


@dataclass
class SolveResult:
    status: str
    objective: float | None = None
    assignment: dict[str, float] = field(default_factory=dict)
    output: str = ""


_CBC_HEADER = re.compile(r"^(\w[\w ]*?)\s*-\s*objective value\s+(\S+)", re.IGNORECASE)


def parse_solution(text: str) -> tuple[str, float | None, dict[str, float]]:
    """Read a solution file.

    Two layouts are accepted: CBC's ``solu`` output (header line
    ``Optimal - objective value X`` then ``index name value ...`` rows) and a
    plain listing of ``name value`` lines with optional ``status <word>`` and
    ``objective <value>`` lines.
    """
    status, objective, values = "solved", None, {}
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise SolverError("empty solution file")
    m = _CBC_HEADER.match(lines[0])
    if m:
        status = m.group(1).strip().lower()
        objective = float(m.group(2))
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) < 3:
                raise SolverError(f"unparseable solution row {ln!r}")
            values[parts[1]] = float(parts[2])
        return status, objective, values
    for ln in lines:
        parts = ln.split()
        if len(parts) != 2:
            raise SolverError(f"unparseable solution row {ln!r}")
        key, val = parts
        if key.lower() == "status":
            status = val.lower()
        elif key.lower() == "objective":
            objective = float(val)
        else:
            values[key] = float(val)
    return status, objective, values


def solve_external(model: IpModel, solver_command: str | None = None, time_limit: float = 3600.0,
                   workdir: str | os.PathLike | None = None) -> SolveResult:
    """Run an LP-file solver given as a command template.

    The template may use ``{model}``, ``{mst}``, ``{solution}`` and
    ``{timeout}``; it defaults to the ``CONGRUNDY_SOLVER`` environment
    variable. A missing command or executable yields status ``unavailable``.
    """
    solver_command = solver_command or os.environ.get(SOLVER_ENV)
    if not solver_command:
        return SolveResult("unavailable")
    argv0 = shlex.split(solver_command)[0]
    if shutil.which(argv0) is None and not Path(argv0).exists():
        return SolveResult("unavailable")
    with tempfile.TemporaryDirectory(dir=workdir) as tmp:
        paths = {k: str(Path(tmp) / f"{model.name}.{ext}")
                 for k, ext in (("model", "lp"), ("mst", "mst"), ("solution", "sol"))}
        Path(paths["model"]).write_text(write_lp(model))
        Path(paths["mst"]).write_text(write_mst(model))
        argv = [a.format(timeout=time_limit, **paths) for a in shlex.split(solver_command)]
        try:
            proc = subprocess.run(argv, capture_output=True, text=True, timeout=time_limit + 60)
        except subprocess.TimeoutExpired as exc:
            raise SolverError("solver did not return", str(exc.output or "")) from exc
        output = proc.stdout + proc.stderr
        if proc.returncode != 0:
            raise SolverError(f"solver exited with status {proc.returncode}", output)
        sol = Path(paths["solution"])
        if not sol.exists():
            raise SolverError("solver wrote no solution file", output)
        try:
            status, objective, values = parse_solution(sol.read_text())
        except (SolverError, ValueError) as exc:
            raise SolverError(f"unparseable solution: {exc}", output) from exc
    if objective is None and values:
        objective = model.objective_value(values)
    return SolveResult(status, objective, values, output)
