"""``stackperc`` command line.

Exit codes: 0 ok, 1 verification failure (or a violated bound), 2 usage
error. Outputs go to ``--out``, else to ``$STACKPERC_OUTPUT_DIR/<name>``
when that variable is set, else to stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .analysis import gamma_critical
from .bootstrap import Instance, close, density, sample_complex
from .experiments import (
    ExperimentConfig,
    critical_runs,
    critical_summary,
    default_scan_grid,
    density_sweep,
    p_of,
    record_dict,
    sweep_rows,
    threshold_scan,
    witness,
    write_csv,
    write_json,
)
from .faces import colex_unrank
from .verify import SUITES, run_suites

OUTPUT_ENV = "STACKPERC_OUTPUT_DIR"
EXT = {"json": "json", "csv": "csv", "dot": "dot"}


class UsageError(Exception):
    pass


def _floats(s: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in s.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {s!r}")


def _face(s: str) -> tuple[int, ...] | str:
    if s == "last":
        return s
    try:
        return tuple(sorted(int(x) for x in s.replace(" ", "").split(",")))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a face like 1,2,3, got {s!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="stackperc", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"stackperc {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--d", type=int, default=2, help="face dimension")
    common.add_argument("--n", type=int, default=200, help="number of vertices")
    common.add_argument("--gamma", type=_floats, default=None, help="gamma value(s); p = gamma * n^(-1/d)")
    common.add_argument("--p", type=float, default=None, help="face probability (overrides --gamma)")
    common.add_argument("--trials", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None)
    common.add_argument("--format", choices=sorted(EXT), default=None)
    common.add_argument("--jobs", type=int, default=1, help="worker processes (results do not depend on it)")
    common.add_argument("--timing", action="store_true", help="add wall-time columns (breaks byte-identity)")

    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("sample", parents=[common], help="sample the random complex")
    sub.add_parser("close", parents=[common], help="sample and close, with certificates")
    w = sub.add_parser("witness", parents=[common], help="witness pedigree of a face")
    w.add_argument("--face", type=_face, default=None, help="target face such as 1,2,3 (default 1..d+1), or 'last' for the last infection")
    ds = sub.add_parser("density-sweep", parents=[common], help="n^(1/d) X against the density root")
    ds.add_argument("--allow-supercritical", action="store_true")
    ts = sub.add_parser("threshold-scan", parents=[common], help="percolation frequency around the threshold")
    ts.add_argument("--points", type=int, default=9, help="grid size over [0.7, 1.5] x critical gamma")
    cs = sub.add_parser("critical-step", parents=[common], help="insertion trajectory and critical step")
    cs.add_argument("--samples", type=int, default=200, help="trajectory points per run")
    v = sub.add_parser("verify", parents=[common], help="run invariant suites")
    v.add_argument("--suite", default="all", help=f"comma list from {sorted(SUITES)} or 'all'")
    v.add_argument("--quick", action="store_true", help="reduced sizes")
    return ap


def _config(a: argparse.Namespace, fmt: str) -> ExperimentConfig:
    return ExperimentConfig(
        command=a.command, d=a.d, n=a.n, gammas=tuple(a.gamma or ()), p=a.p,
        trials=a.trials, seed=a.seed, out=a.out, format=fmt, jobs=a.jobs, timing=a.timing,
    )


def _emit(text: str, a: argparse.Namespace, fmt: str) -> None:
    path = a.out
    if path is None and os.environ.get(OUTPUT_ENV):
        path = str(Path(os.environ[OUTPUT_ENV]) / f"{a.command}-d{a.d}-n{a.n}-seed{a.seed}.{EXT[fmt]}")
    if path is None:
        sys.stdout.write(text)
        return
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(text)


def _single_p(a: argparse.Namespace) -> float:
    if a.p is not None:
        return a.p
    if a.gamma:
        if len(a.gamma) != 1:
            raise UsageError("this command takes a single --gamma")
        return p_of(a.d, a.n, a.gamma[0])
    raise UsageError("give --p or --gamma")


def cmd_sample(a, fmt) -> int:
    cfg = _config(a, fmt)
    inst = Instance(a.n, a.d, _single_p(a), a.seed)
    y0 = sample_complex(inst)
    meta = cfg.meta()
    meta["p"] = inst.p
    if fmt == "csv":
        rows = ([int(r), " ".join(map(str, colex_unrank(int(r), a.d + 1)))] for r in y0.ranks())
        _emit(write_csv(meta, ["rank", "face"], rows), a, fmt)
    else:
        _emit(write_json(meta, {"complex": y0.to_dict()}), a, fmt)
    return 0


def cmd_close(a, fmt) -> int:
    cfg = _config(a, fmt)
    inst = Instance(a.n, a.d, _single_p(a), a.seed)
    st = close(sample_complex(inst), instance=inst)
    meta = cfg.meta()
    meta["p"] = inst.p
    summary = {"initial": len(st.y0), "infected": len(st.infected), "faces": st.size, "x_hat": density(st)}
    if fmt == "csv":
        rows = []
        for r in st.order:
            r = int(r)
            c = st.certificate(r)
            rows.append([
                r, " ".join(map(str, colex_unrank(r, a.d + 1))),
                "" if c is None else c.apex, "" if c is None else " ".join(map(str, c.parents)),
            ])
        _emit(write_csv(meta, ["rank", "face", "apex", "parents"], rows, [f"summary: {json.dumps(summary)}"]), a, fmt)
    else:
        _emit(write_json(meta, {"summary": summary, "state": st.to_dict()}), a, fmt)
    return 0


def cmd_witness(a, fmt) -> int:
    if a.gamma and len(a.gamma) != 1:
        raise UsageError("witness takes a single --gamma")
    cfg = _config(a, fmt)
    st, rep = witness(cfg, a.face)
    meta = cfg.meta()
    meta["p"] = st.instance.p
    if fmt == "dot":
        if rep.pedigree is None:
            _emit(f"// {rep.face} is not infected\ndigraph witness {{}}\n", a, fmt)
        else:
            _emit(rep.pedigree.to_dot(), a, fmt)
    elif fmt == "csv":
        s = rep.stats_dict()
        _emit(write_csv(meta, list(s), [[s[k] if k != "face" else " ".join(map(str, s[k])) for k in s]]), a, fmt)
    else:
        payload = {"stats": rep.stats_dict(), "pedigree": rep.pedigree.to_dict() if rep.pedigree else None}
        _emit(write_json(meta, payload), a, fmt)
    print(
        f"witness {rep.face}: infected={rep.infected} vertices={rep.vertices} leaves={rep.leaves} "
        f"labels={rep.labels} a={rep.a} b={rep.b} margin={rep.margin:.4g} bound_ok={rep.bound_ok}",
        file=sys.stderr,
    )
    return 0 if rep.bound_ok else 1


def cmd_density_sweep(a, fmt) -> int:
    if not a.gamma:
        raise UsageError("density-sweep needs --gamma")
    cfg = _config(a, fmt)
    try:
        recs, summ = density_sweep(cfg, a.allow_supercritical)
    except ValueError as e:
        raise UsageError(str(e))
    meta = cfg.meta()
    if fmt == "json":
        _emit(write_json(meta, {
            "records": [record_dict(r, a.timing) for r in recs],
            "summary": [s.__dict__ for s in summ],
        }), a, fmt)
    else:
        header, rows = sweep_rows(recs, a.timing)
        comments = [
            f"summary gamma={s.gamma!r} trials={s.trials} mean={s.mean!r} stderr={s.stderr!r} hat_gamma={s.hat_gamma!r}"
            for s in summ
        ]
        _emit(write_csv(meta, header, rows, comments), a, fmt)
    return 0


def cmd_threshold_scan(a, fmt) -> int:
    cfg = _config(a, fmt)
    if not cfg.gammas:
        cfg.gammas = default_scan_grid(a.d, a.points)
    recs, summ = threshold_scan(cfg)
    meta = cfg.meta()
    meta["critical_gamma"] = gamma_critical(a.d)
    if fmt == "json":
        _emit(write_json(meta, {
            "records": [record_dict(r, a.timing) for r in recs],
            "summary": [s.__dict__ for s in summ],
        }), a, fmt)
    else:
        header, rows = sweep_rows(recs, a.timing)
        comments = [
            f"summary gamma={s.gamma!r} ratio={s.ratio!r} freq={s.freq!r} freq_blocked_only={s.freq_unblocked!r} mean_x={s.mean_x!r}"
            for s in summ
        ]
        _emit(write_csv(meta, header, rows, comments), a, fmt)
    return 0


def cmd_critical_step(a, fmt) -> int:
    cfg = _config(a, fmt)
    cfg.extra["samples"] = a.samples
    runs = critical_runs(cfg, a.samples)
    meta = cfg.meta()
    summ = [critical_summary(r, a.d) for r in runs]
    if fmt == "json":
        _emit(write_json(meta, {
            "runs": [{**s, "trajectory": [[t, x] for t, x in r.trajectory]} for s, r in zip(summ, runs)],
        }), a, fmt)
    else:
        rows = [[r.seed, t, x] for r in runs for t, x in r.trajectory]
        comments = [f"tau {json.dumps(s, sort_keys=True)}" for s in summ]
        _emit(write_csv(meta, ["seed", "t", "x_hat"], rows, comments), a, fmt)
    return 0


def cmd_verify(a, fmt) -> int:
    names = sorted(SUITES) if a.suite == "all" else [s.strip() for s in a.suite.split(",")]
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s) {unknown}; choose from {sorted(SUITES)}")
    cfg = _config(a, fmt)
    cfg.extra.update(suite=names, quick=a.quick)
    checks = run_suites(names, full=not a.quick)
    meta = cfg.meta()
    ok = all(c.passed for c in checks)
    if fmt == "csv":
        rows = [[c.suite, c.name, c.passed, c.detail] + ([c.seconds] if a.timing else []) for c in checks]
        _emit(write_csv(meta, ["suite", "check", "passed", "detail"] + (["seconds"] if a.timing else []), rows), a, fmt)
    else:
        items = []
        for c in checks:
            item = {"suite": c.suite, "check": c.name, "passed": c.passed, "detail": c.detail}
            if a.timing:
                item["seconds"] = c.seconds
            items.append(item)
        _emit(write_json(meta, {"passed": ok, "checks": items}), a, fmt)
    for c in checks:
        print(c.line(), file=sys.stderr)
    return 0 if ok else 1


COMMANDS = {
    "sample": cmd_sample,
    "close": cmd_close,
    "witness": cmd_witness,
    "density-sweep": cmd_density_sweep,
    "threshold-scan": cmd_threshold_scan,
    "critical-step": cmd_critical_step,
    "verify": cmd_verify,
}
DEFAULT_FORMAT = {"witness": "json", "density-sweep": "csv", "threshold-scan": "csv", "critical-step": "csv"}


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else 0
    fmt = a.format or DEFAULT_FORMAT.get(a.command, "json")
    if fmt == "dot" and a.command != "witness":
        ap.print_usage(sys.stderr)
        print("stackperc: --format dot is only available for witness", file=sys.stderr)
        return 2
    if a.trials < 1 or a.jobs < 1:
        print("stackperc: --trials and --jobs must be positive", file=sys.stderr)
        return 2
    try:
        return COMMANDS[a.command](a, fmt)
    except (UsageError, ValueError) as e:
        print(f"stackperc: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
