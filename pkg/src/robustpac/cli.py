"""Command-line entry point: validate configs, run experiments, emit CSV/JSON.

Commands
--------
fig1          width-comparison table on a log-spaced delta grid (CSV)
coverage      interval coverage experiment, optionally over a delta/K grid
bound-check   bound violation frequency for one (bound, posterior) setup
union-blowup  joint failure of per-hypothesis MoM statements vs k_hyp
gibbs         empirical-mean vs MoM Gibbs posterior comparison
mom-demo      MoM interval coverage across a block-count grid

Experiment commands read a JSON config (see the ``configs/`` directory for
examples); ``--seed`` and ``--trials`` override the config fields, and
``--workers`` parallelises trials without changing any output byte.  Every
output embeds the fully resolved config, so artifacts are self-describing.

Exit codes: 0 success, 2 config/usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .intervals import FIG1_HEADER, width_table
from .montecarlo import (
    COVERAGE_CSV_HEADER,
    GIBBS_CSV_HEADER,
    UNION_CSV_HEADER,
    BoundViolationConfig,
    Contamination,
    CoverageConfig,
    GibbsComparisonConfig,
    UnionBlowupConfig,
    bound_violation_experiment,
    coverage_experiment,
    gibbs_comparison_experiment,
    union_blowup_experiment,
)

__all__ = ["main"]


def _fmt(x: float) -> str:
    """17-significant-digit decimal rendering (round-trip exact for doubles)."""
    return format(float(x), ".17g")


def _dump_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _write_atomic(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _load_config(path: str, args) -> dict:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise ValueError(f"{path}: top-level config must be a JSON object")
    if args.seed is not None:
        obj["master_seed"] = args.seed
    if args.trials is not None:
        obj["trials"] = args.trials
    return obj


def _progress(command: str, trials: int) -> None:
    print(f"{command}: {trials} trials done", file=sys.stderr)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _cmd_fig1(args) -> int:
    table = width_table(args.delta_min, args.delta_max, args.points)
    lines = [FIG1_HEADER]
    lines += [",".join(_fmt(v) for v in row) for row in table]
    _write_atomic(_out_dir(args) / "fig1.csv", "\n".join(lines) + "\n")
    return 0


def _coverage_grid(obj: dict) -> list[tuple[float, dict]]:
    """Expand a list-valued ``delta``/``k_blocks`` field into per-point configs."""
    if obj.get("interval") == "mom":
        grid = obj.get("k_blocks")
        key = "k_blocks"
    else:
        grid = obj.get("delta")
        key = "delta"
    values = grid if isinstance(grid, list) else [grid]
    points = []
    for value in values:
        one = dict(obj)
        one[key] = value
        points.append((value, one))
    return points


def _run_coverage(obj: dict, workers: int) -> tuple[dict, list[str]]:
    reports = []
    csv_lines = [COVERAGE_CSV_HEADER]
    for k_or_delta, one in _coverage_grid(obj):
        report = coverage_experiment(CoverageConfig.from_dict(one), workers=workers)
        reports.append(report.to_dict())
        csv_lines.append(
            ",".join(
                [_fmt(k_or_delta), _fmt(report.coverage), _fmt(report.stderr), _fmt(report.nominal_level)]
            )
        )
    payload = {"experiment": "coverage", "config": obj, "results": reports}
    return payload, csv_lines


def _cmd_coverage(args) -> int:
    obj = _load_config(args.config, args)
    payload, csv_lines = _run_coverage(obj, args.workers)
    out = _out_dir(args)
    _write_atomic(out / "coverage.json", _dump_json(payload))
    _write_atomic(out / "coverage.csv", "\n".join(csv_lines) + "\n")
    _progress("coverage", sum(r["trials"] for r in payload["results"]))
    return 0


def _cmd_mom_demo(args) -> int:
    obj = _load_config(args.config, args)
    k_grid = obj.pop("k_grid", None)
    if not isinstance(k_grid, list) or not k_grid:
        raise ValueError("mom-demo config needs a non-empty k_grid list")
    obj["interval"] = "mom"
    obj["k_blocks"] = [int(k) for k in k_grid]
    payload, csv_lines = _run_coverage(obj, args.workers)
    payload["experiment"] = "mom-demo"
    out = _out_dir(args)
    _write_atomic(out / "mom_demo.json", _dump_json(payload))
    _write_atomic(out / "mom_demo.csv", "\n".join(csv_lines) + "\n")
    _progress("mom-demo", sum(r["trials"] for r in payload["results"]))
    return 0


def _cmd_bound_check(args) -> int:
    obj = _load_config(args.config, args)
    config = BoundViolationConfig.from_dict(obj)
    report = bound_violation_experiment(config, workers=args.workers)
    result = report.to_dict()
    result["violation_frequency"] = (report.trials - report.successes) / report.trials
    payload = {"experiment": "bound-check", "config": config.to_dict(), "result": result}
    _write_atomic(_out_dir(args) / "bound_check.json", _dump_json(payload))
    _progress("bound-check", report.trials)
    return 0


def _cmd_union_blowup(args) -> int:
    obj = _load_config(args.config, args)
    config = UnionBlowupConfig.from_dict(obj)
    report = union_blowup_experiment(config, workers=args.workers)
    payload = {"experiment": "union-blowup", "config": config.to_dict(), "result": report.to_dict()}
    csv_lines = [UNION_CSV_HEADER]
    for row in report.rows:
        csv_lines.append(
            ",".join(
                [
                    str(row["k_hyp"]),
                    _fmt(row["joint_failure"]),
                    _fmt(row["stderr"]),
                    _fmt(row["union_failure_bound"]),
                    str(int(row["vacuous"])),
                ]
            )
        )
    out = _out_dir(args)
    _write_atomic(out / "union.json", _dump_json(payload))
    _write_atomic(out / "union.csv", "\n".join(csv_lines) + "\n")
    _progress("union-blowup", config.trials)
    return 0


def _cmd_gibbs(args) -> int:
    obj = _load_config(args.config, args)
    config = GibbsComparisonConfig.from_dict(obj)
    report = gibbs_comparison_experiment(config, workers=args.workers)
    payload = {"experiment": "gibbs", "config": config.to_dict(), "result": report.to_dict()}
    csv_lines = [GIBBS_CSV_HEADER]
    for row in report.rows:
        csv_lines.append(
            ",".join(
                [_fmt(row["gamma"]), _fmt(row["risk_emp"]), _fmt(row["risk_mom"]), _fmt(row["win_fraction"])]
            )
        )
    out = _out_dir(args)
    _write_atomic(out / "gibbs.json", _dump_json(payload))
    _write_atomic(out / "gibbs.csv", "\n".join(csv_lines) + "\n")
    _progress("gibbs", config.trials)
    return 0


_COMMANDS = {
    "fig1": _cmd_fig1,
    "coverage": _cmd_coverage,
    "bound-check": _cmd_bound_check,
    "union-blowup": _cmd_union_blowup,
    "gibbs": _cmd_gibbs,
    "mom-demo": _cmd_mom_demo,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="robustpac", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    fig1 = sub.add_parser("fig1", help="write the width-comparison CSV")
    fig1.add_argument("--delta-min", type=float, default=1e-8)
    fig1.add_argument("--delta-max", type=float, default=0.5)
    fig1.add_argument("--points", type=int, default=200)
    fig1.add_argument("--out", required=True, help="output directory")

    for name in ("coverage", "bound-check", "union-blowup", "gibbs", "mom-demo"):
        cmd = sub.add_parser(name, help=f"run the {name} experiment")
        cmd.add_argument("--config", required=True, help="JSON config path")
        cmd.add_argument("--out", required=True, help="output directory")
        cmd.add_argument("--seed", type=int, default=None, help="override master_seed")
        cmd.add_argument("--trials", type=int, default=None, help="override trial count")
        cmd.add_argument("--workers", type=int, default=1, help="parallel workers (output-invariant)")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, KeyError, TypeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
