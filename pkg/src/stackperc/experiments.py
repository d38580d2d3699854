"""Experiment orchestration: sweeps, scans and critical-step runs.

Every run is a pure function of its config and seed. Trial ``i`` of a run
with base seed ``s`` uses instance seed ``s + i`` at every gamma, and worker
processes only change where a trial runs, never what it returns.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from . import __version__
from .analysis import critical_p, gamma_critical, hat_gamma
from .bootstrap import Instance, blocked_faces, critical_step, density, run_instance
from .faces import colex_unrank
from .pedigree.core import Pedigree, check_excess_bound, excess_margin, stats
from .pedigree.witness import extract_witness


@dataclass
class ExperimentConfig:
    command: str
    d: int = 2
    n: int = 200
    gammas: tuple[float, ...] = ()
    p: float | None = None
    trials: int = 1
    seed: int = 0
    out: str | None = None
    format: str = "json"
    jobs: int = 1
    timing: bool = False
    extra: dict[str, Any] = field(default_factory=dict)

    def meta(self) -> dict:
        cfg = asdict(self)
        cfg.pop("out")
        cfg.pop("jobs")  # never affects results
        cfg["gammas"] = list(self.gammas)
        return {"artifact": "stackperc", "version": __version__, "config": cfg, "seed": self.seed}


def p_of(d: int, n: int, gamma: float) -> float:
    p = gamma * n ** (-1.0 / d)
    if p > 1.0:
        raise ValueError(f"gamma={gamma} gives p={p} > 1 at n={n}")
    return p


# -- records -------------------------------------------------------------------


@dataclass
class SweepRecord:
    n: int
    gamma: float
    seed: int
    x_hat: float
    percolated: bool  # x_hat == 1
    healthy: int
    blocked: int  # healthy faces on a ridge that no initial face covers
    wall_time: float | None = None


SWEEP_COLUMNS = ["n", "gamma", "seed", "x_hat", "percolated", "healthy", "blocked"]


def _trial(args: tuple[int, int, float, int, bool]) -> SweepRecord:
    n, d, gamma, seed, timing = args
    t0 = time.perf_counter()
    st = run_instance(Instance(n, d, p_of(d, n, gamma), seed))
    x = density(st)
    healthy = st.size - len(st.infected)
    blocked = blocked_faces(st) if healthy else 0
    wt = time.perf_counter() - t0 if timing else None
    return SweepRecord(n, gamma, seed, x, healthy == 0, healthy, blocked, wt)


def _map(fn: Callable, tasks: list, jobs: int) -> list:
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, tasks, chunksize=1))


def run_trials(d: int, n: int, gammas: Sequence[float], trials: int, seed: int, jobs: int = 1, timing: bool = False) -> list[SweepRecord]:
    tasks = [(n, d, float(g), seed + i, timing) for g in gammas for i in range(trials)]
    return _map(_trial, tasks, jobs)


def scaled_density(rec: SweepRecord, d: int) -> float:
    return rec.x_hat * rec.n ** (1.0 / d)


@dataclass
class DensitySummary:
    gamma: float
    trials: int
    mean: float  # of n^{1/d} X
    stderr: float
    hat_gamma: float | None  # None above the critical gamma

    @property
    def rel_error(self) -> float:
        if self.hat_gamma is None:
            return math.nan
        return abs(self.mean - self.hat_gamma) / self.hat_gamma if self.hat_gamma else abs(self.mean)


def summarize_density(records: Iterable[SweepRecord], d: int) -> list[DensitySummary]:
    gc = gamma_critical(d)
    by: dict[float, list[float]] = {}
    for r in records:
        by.setdefault(r.gamma, []).append(scaled_density(r, d))
    out = []
    for g in sorted(by):
        v = np.array(by[g])
        se = float(v.std(ddof=1) / math.sqrt(len(v))) if len(v) > 1 else 0.0
        out.append(DensitySummary(g, len(v), float(v.mean()), se, hat_gamma(d, g) if g < gc else None))
    return out


@dataclass
class ScanSummary:
    gamma: float
    ratio: float  # gamma / critical gamma
    trials: int
    freq: float  # fraction with X = 1
    freq_unblocked: float  # fraction whose healthy faces are all blocked
    mean_x: float
    max_x: float


def summarize_scan(records: Iterable[SweepRecord], d: int) -> list[ScanSummary]:
    gc = gamma_critical(d)
    by: dict[float, list[SweepRecord]] = {}
    for r in records:
        by.setdefault(r.gamma, []).append(r)
    out = []
    for g in sorted(by):
        rs = by[g]
        xs = [r.x_hat for r in rs]
        out.append(ScanSummary(
            g, g / gc, len(rs),
            sum(r.percolated for r in rs) / len(rs),
            sum(r.healthy == r.blocked for r in rs) / len(rs),
            float(np.mean(xs)), max(xs),
        ))
    return out


def density_sweep(cfg: ExperimentConfig, allow_supercritical: bool = False) -> tuple[list[SweepRecord], list[DensitySummary]]:
    gc = gamma_critical(cfg.d)
    if not allow_supercritical and any(g >= gc for g in cfg.gammas):
        raise ValueError(f"gamma grid must stay below {gc:.6f} (pass --allow-supercritical to override)")
    recs = run_trials(cfg.d, cfg.n, cfg.gammas, cfg.trials, cfg.seed, cfg.jobs, cfg.timing)
    return recs, summarize_density(recs, cfg.d)


def default_scan_grid(d: int, points: int = 9) -> tuple[float, ...]:
    gc = gamma_critical(d)
    return tuple(float(r * gc) for r in np.linspace(0.7, 1.5, points))


def threshold_scan(cfg: ExperimentConfig) -> tuple[list[SweepRecord], list[ScanSummary]]:
    gammas = cfg.gammas or default_scan_grid(cfg.d)
    recs = run_trials(cfg.d, cfg.n, gammas, cfg.trials, cfg.seed, cfg.jobs, cfg.timing)
    return recs, summarize_scan(recs, cfg.d)


# -- witnesses -------------------------------------------------------------------


@dataclass
class WitnessReport:
    face: tuple[int, ...]
    infected: bool
    pedigree: Pedigree | None
    vertices: int = 0
    leaves: int = 0
    labels: int = 0
    a: int = 0
    b: int = 0
    margin: float = 0.0
    bound_ok: bool = True

    def stats_dict(self) -> dict:
        return {
            "face": list(self.face), "infected": self.infected, "vertices": self.vertices,
            "leaves": self.leaves, "extra_labels": self.labels, "a": self.a, "b": self.b,
            "margin": self.margin, "bound_ok": self.bound_ok,
        }


def witness_report(state, face: Sequence[int]) -> WitnessReport:
    face = tuple(face)
    P = extract_witness(state, face)
    if P is None:
        return WitnessReport(face, False, None)
    st = stats(P)
    return WitnessReport(
        face, True, P, len(P.nodes), st.l, st.s, st.a, st.b,
        excess_margin(st), check_excess_bound(st),
    )


def witness(cfg: ExperimentConfig, face: Sequence[int] | None = None):
    d, n = cfg.d, cfg.n
    if cfg.p is not None:
        p = cfg.p
    elif cfg.gammas:
        p = p_of(d, n, cfg.gammas[0])
    else:
        p = critical_p(d, n)
    st = run_instance(Instance(n, d, p, cfg.seed))
    if face == "last":
        face = colex_unrank(int(st.order[-1]), d + 1)
    face = tuple(range(1, d + 2)) if face is None else tuple(face)
    return st, witness_report(st, face)


# -- critical step -------------------------------------------------------------------


def _critical(args: tuple[int, int, int, int]):
    n, d, seed, pts = args
    return critical_step(n, d, seed, pts)


def critical_runs(cfg: ExperimentConfig, sample_points: int = 200):
    tasks = [(cfg.n, cfg.d, cfg.seed + i, sample_points) for i in range(cfg.trials)]
    return _map(_critical, tasks, cfg.jobs)


def critical_summary(res, d: int) -> dict:
    n = res.n
    scale = critical_p(d, n)  # (alpha_d n)^{-1/d}
    return {
        "seed": res.seed, "tau": res.tau, "faces": res.size,
        "tau_frac": res.tau / res.size, "tau_frac_over_scale": res.tau / res.size / scale,
        "x_before": res.x_before, "x_before_scaled": res.x_before * n ** (1.0 / d),
    }


# -- writers -------------------------------------------------------------------


def preamble(meta: dict) -> str:
    return "".join(f"# {k}: {json.dumps(v, sort_keys=True)}\n" for k, v in meta.items())


def write_csv(meta: dict, header: list[str], rows: Iterable[Sequence], comments: Iterable[str] = ()) -> str:
    buf = io.StringIO()
    buf.write(preamble(meta))
    for c in comments:
        buf.write(f"# {c}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(x) for x in r])
    return buf.getvalue()


def _fmt(x):
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, bool):
        return int(x)
    return x


def write_json(meta: dict, payload: dict) -> str:
    return json.dumps({"meta": meta, **payload}, sort_keys=True, indent=1) + "\n"


def sweep_rows(recs: Iterable[SweepRecord], timing: bool) -> tuple[list[str], list[list]]:
    header = SWEEP_COLUMNS + (["wall_time"] if timing else [])
    rows = []
    for r in recs:
        row = [r.n, r.gamma, r.seed, r.x_hat, r.percolated, r.healthy, r.blocked]
        if timing:
            row.append(r.wall_time)
        rows.append(row)
    return header, rows


def record_dict(r: SweepRecord, timing: bool) -> dict:
    d = asdict(r)
    if not timing:
        d.pop("wall_time")
    return d
