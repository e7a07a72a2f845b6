"""Benchmark batches: seeded runs per instance and algorithm, aggregated to CSV."""
from __future__ import annotations

import csv
import io
import statistics
from dataclasses import dataclass, field
from pathlib import Path

from .graph import CLASS_SHORT, density, read_dimacs, read_manifest
from .metrics import metric_diff
from .runner import solve


@dataclass
class BenchResult:
    rows: list[dict]
    missing: list[str] = field(default_factory=list)

    def to_csv(self) -> str:
        if not self.rows:
            return ""
        cols = list(self.rows[0])
        for r in self.rows[1:]:
            cols += [c for c in r if c not in cols]
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in self.rows:
            w.writerow({k: _cell(r.get(k, "")) for k in cols})
        return buf.getvalue()


def _cell(x):
    return f"{x:.4f}" if isinstance(x, float) else x


def _group_of(entry: dict) -> str:
    if "group" in entry:
        return entry["group"]
    if {"class", "n", "eta"} <= entry.keys():
        cls = CLASS_SHORT.get(entry["class"], entry["class"])
        return f"{cls}_{entry['n']}_{entry['eta']:g}"
    return Path(entry["file"]).stem


def run_bench(manifest_path, algorithms: list[str], runs: int = 1, time_limit: float = 1.0,
              seed: int = 0, mode: str = "connected", max_generations: int | None = None) -> BenchResult:
    """Run every manifest instance with every algorithm ``runs`` times.

    Run r uses seed ``seed + r``. Instance rows hold mean, max and ttb per
    algorithm (ttb averaged over runs); when at least two algorithms are
    given, diff_m and diff_x compare the last one against the first. Group
    rows average their instances and count instances where the last
    algorithm is >= (mean, max) or > (max) the first.
    """
    manifest_path = Path(manifest_path)
    entries = read_manifest(manifest_path)
    rows, missing = [], []
    timing = max_generations is None
    for entry in entries:
        path = Path(entry["file"])
        if not path.is_absolute():
            path = manifest_path.parent / path
        if not path.exists():
            missing.append(str(path))
            continue
        g = read_dimacs(path)
        row = {"kind": "instance", "name": path.stem, "group": _group_of(entry), "n": g.n,
               "density": density(g) if g.n > 1 else 0.0}
        for alg in algorithms:
            reports = [solve(g, alg, mode=mode, seed=seed + r, time_limit=time_limit if timing else None,
                             max_generations=max_generations, timing=timing) for r in range(runs)]
            vals = [rep["best_value"] for rep in reports]
            row[f"{alg}_mean"] = statistics.fmean(vals)
            row[f"{alg}_max"] = max(vals)
            row[f"{alg}_ttb"] = statistics.fmean(rep.get("time_to_best", 0.0) for rep in reports)
        _add_diffs(row, algorithms)
        rows.append(row)

    groups: dict[str, list[dict]] = {}
    for r in rows:
        groups.setdefault(r["group"], []).append(r)
    out = []
    for name in sorted(groups):
        members = groups[name]
        out.extend(members)
        if len(members) > 1:
            grow = {"kind": "group", "name": name, "group": name, "n": statistics.fmean(m["n"] for m in members),
                    "density": statistics.fmean(m["density"] for m in members)}
            for alg in algorithms:
                for stat in ("mean", "max", "ttb"):
                    grow[f"{alg}_{stat}"] = statistics.fmean(m[f"{alg}_{stat}"] for m in members)
            _add_diffs(grow, algorithms)
            if len(algorithms) > 1:
                base, new = algorithms[0], algorithms[-1]
                grow["ge_mean"] = sum(m[f"{new}_mean"] >= m[f"{base}_mean"] for m in members)
                grow["ge_max"] = sum(m[f"{new}_max"] >= m[f"{base}_max"] for m in members)
                grow["gt_max"] = sum(m[f"{new}_max"] > m[f"{base}_max"] for m in members)
            out.append(grow)
    return BenchResult(out, missing)


def _add_diffs(row: dict, algorithms: list[str]) -> None:
    if len(algorithms) < 2:
        return
    base, new = algorithms[0], algorithms[-1]
    row["diff_m"] = metric_diff(row[f"{new}_mean"], row[f"{base}_mean"])
    row["diff_x"] = metric_diff(row[f"{new}_max"], row[f"{base}_max"])
