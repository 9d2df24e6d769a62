"""
Command-line entry point: ``jointloc <command> [flags]``.

Commands: ``validate``, ``width``, ``errorbar``, ``distance``, ``verify``,
``example {qubit,torus,nqubit,c3}`` and ``sweep``.  Check reports go to CSV
(header ``check,eps1,eps2,lhs,rhs,margin,pass,witness,seed``) or JSON.  The
exit status is 0 iff every non-informational check passes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import scenarios as sc
from . import verification as vf
from .config import Config, load_config
from .distances import MAX_EXACT_OUTCOMES, linf_distance, werner_distance
from .errors import ConfigError
from .observables import induced_distribution
from .widths import errorbar_width, overall_width

CSV_COLUMNS = ["check", "eps1", "eps2", "lhs", "rhs", "margin", "pass", "witness", "seed"]
EXIT_FAIL = 1
EXIT_CONFIG = 2


def fmt_float(v) -> str:
    if v is None or v == "":
        return ""
    return "%.17g" % float(v)


def _pass_cell(r: vf.CheckReport) -> str:
    if r.error is not None:
        return "ERROR"
    return "true" if r.passed else "false"


def reports_to_csv(reports, seed) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        w.writerow(
            [
                r.name,
                fmt_float(r.params.get("eps1", r.params.get("eps", ""))),
                fmt_float(r.params.get("eps2", "")),
                fmt_float(r.lhs),
                fmt_float(r.rhs),
                fmt_float(r.margin),
                _pass_cell(r),
                r.witness,
                r.params.get("seed", "" if seed is None else seed),
            ]
        )
    return buf.getvalue()


def table_to_csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt_float(row[c]) if isinstance(row[c], float) else row[c] for c in columns])
    return buf.getvalue()


def _json(doc) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def _format(args) -> str:
    if args.format:
        return args.format
    if args.out and str(args.out).endswith(".csv"):
        return "csv"
    return "json"


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def emit_reports(args, command: str, reports, seed, extra: dict | None = None) -> int:
    ok = vf.all_passed(reports)
    if _format(args) == "csv":
        text = reports_to_csv(reports, seed)
    else:
        doc = {
            "command": command,
            "seed": seed,
            "all_passed": ok,
            "n_reports": len(reports),
            "reports": [r.to_dict() for r in reports],
        }
        if extra:
            doc.update(extra)
        text = _json(doc)
    _emit(text, args.out)
    return 0 if ok else EXIT_FAIL


def emit_table(args, command: str, rows: list[dict], columns: list[str]) -> int:
    if _format(args) == "csv":
        text = table_to_csv(rows, columns)
    else:
        text = _json({"command": command, "rows": rows})
    _emit(text, args.out)
    return 0


def _need(cfg: Config, *names):
    missing = [n for n in names if getattr(cfg, n) in (None, [])]
    if missing:
        raise ConfigError(f"{', '.join(missing)}: required by this command")


def _eps_list(cfg: Config | None):
    if cfg is not None and cfg.epsilons:
        return cfg.epsilons
    return vf.eps_pairs()


def _seed(args, cfg: Config | None) -> int:
    if args.seed is not None:
        return args.seed
    if cfg is not None and cfg.seed is not None:
        return cfg.seed
    return 0


def _tol(args, cfg: Config | None) -> float:
    if args.tolerance is not None:
        return args.tolerance
    if cfg is not None and cfg.tolerance is not None:
        return cfg.tolerance
    return vf.DEFAULT_TOL


def _maybe_config(args) -> Config | None:
    return load_config(args.config) if args.config else None


# -- commands ---------------------------------------------------------------


def cmd_validate(args) -> int:
    if not args.config:
        raise ConfigError("--config is required")
    cfg = load_config(args.config)
    rows = []
    for name in ("pvm_a", "pvm_b"):
        p = getattr(cfg, name)
        if p is not None:
            rows.append({"object": name, "kind": "pvm", "dimension": p.dim, "outcomes": len(p), "status": "ok"})
    if cfg.joint_povm is not None:
        m = cfg.joint_povm
        rows.append(
            {"object": "joint_povm", "kind": "joint_povm", "dimension": m.dim,
             "outcomes": m.space_a.size * m.space_b.size, "status": "ok"}
        )
    for i, _ in enumerate(cfg.states):
        rows.append({"object": f"states[{i}]", "kind": "state", "dimension": cfg.dimension, "outcomes": 0, "status": "ok"})
    return emit_table(args, "validate", rows, ["object", "kind", "dimension", "outcomes", "status"])


def cmd_width(args) -> int:
    cfg = load_config(args.config) if args.config else None
    if cfg is None:
        raise ConfigError("--config is required")
    _need(cfg, "states")
    eps_values = sorted({e for pair in _eps_list(cfg) for e in pair})
    rows = []
    for i, rho in enumerate(cfg.states):
        for name in ("pvm_a", "pvm_b"):
            p = getattr(cfg, name)
            if p is None:
                continue
            dist = induced_distribution(rho, p)
            for eps in eps_values:
                res = overall_width(dist, eps)
                rows.append({"state": i, "observable": name, "eps": float(eps), "width": res.width,
                             "outcome": res.achieving_outcome, "mass": res.worst_case_probability})
    return emit_table(args, "width", rows, ["state", "observable", "eps", "width", "outcome", "mass"])


def cmd_errorbar(args) -> int:
    cfg = load_config(args.config) if args.config else None
    if cfg is None:
        raise ConfigError("--config is required")
    _need(cfg, "pvm_a", "pvm_b", "joint_povm")
    m1, m2 = cfg.joint_povm.marginals()
    rows = []
    for e1, e2 in _eps_list(cfg):
        for name, marg, target, eps in (("M1|A", m1, cfg.pvm_a, e1), ("M2|B", m2, cfg.pvm_b, e2)):
            res = errorbar_width(marg, target, eps)
            rows.append({"marginal": name, "eps": float(eps), "width": res.width,
                         "outcome": res.achieving_outcome, "worst_case_probability": res.worst_case_probability})
    return emit_table(args, "errorbar", rows, ["marginal", "eps", "width", "outcome", "worst_case_probability"])


def cmd_distance(args) -> int:
    cfg = load_config(args.config) if args.config else None
    if cfg is None:
        raise ConfigError("--config is required")
    _need(cfg, "pvm_a", "pvm_b", "joint_povm")
    m1, m2 = cfg.joint_povm.marginals()
    rows = []
    for name, marg, target in (("M1|A", m1, cfg.pvm_a), ("M2|B", m2, cfg.pvm_b)):
        method = "exact" if target.space.size <= MAX_EXACT_OUTCOMES else "alternating"
        dw = werner_distance(marg, target, method, seed=_seed(args, cfg))
        dl = linf_distance(marg, target)
        rows.append({"marginal": name, "metric": "werner", "value": dw.value, "method": dw.method,
                     "gap_bound": "" if dw.gap_bound is None else float(dw.gap_bound)})
        rows.append({"marginal": name, "metric": "linf", "value": dl.value, "method": dl.method, "gap_bound": 0.0})
    return emit_table(args, "distance", rows, ["marginal", "metric", "value", "method", "gap_bound"])


def cmd_verify(args) -> int:
    cfg = _maybe_config(args)
    seed, tol = _seed(args, cfg), _tol(args, cfg)
    checks = cfg.checks if cfg is not None and cfg.checks else None
    if cfg is not None and cfg.pvm_a is not None and cfg.pvm_b is not None and cfg.joint_povm is not None:
        inst = vf.Instance(cfg.pvm_a, cfg.pvm_b, cfg.joint_povm, "config")
        reports = vf.instance_checks(inst, _eps_list(cfg), tol, np.random.default_rng(seed), checks)
        for r in reports:
            r.params["seed"] = seed
    else:
        reports = vf.run_suite(seed, args.dims, args.instances, _eps_list(cfg), tol, args.parallel, checks)
    return emit_reports(args, "verify", reports, seed)


def cmd_example(args) -> int:
    cfg = _maybe_config(args)
    seed, tol = _seed(args, cfg), _tol(args, cfg)
    name = args.name
    if name == "qubit":
        bundles = [sc.qubit_scenario(seed=seed, tol=tol)]
    elif name == "torus":
        ns = args.n or [3, 4, 5, 6, 7, 8]
        bundles = [sc.torus_scenario(n, seed=seed, tol=tol) for n in ns]
    elif name == "nqubit":
        ns = args.n or [2, 3]
        bundles = [sc.nqubit_scenario(n, seed=seed, tol=tol, allow_large=args.allow_large) for n in ns]
    else:
        bundles = [sc.c3_scenario(tol=tol)]
    reports = [r for b in bundles for r in b.reports]
    for r in reports:
        r.params.setdefault("seed", seed)
    summary = {b.name: b.summary for b in bundles}
    return emit_reports(args, f"example {name}", reports, seed, {"summary": summary})


def cmd_sweep(args) -> int:
    cfg = _maybe_config(args)
    seed, tol = _seed(args, cfg), _tol(args, cfg)
    z, x = sc.qubit_observables()
    thetas = np.linspace(0.0, math.pi / 2, args.points)
    reports = []
    for t in thetas:
        m = vf.covariant_circle(float(t))
        m1, m2 = m.marginals()
        tag = f"theta={t:.17g}"
        d1 = werner_distance(m1, z).value
        d2 = werner_distance(m2, x).value
        for e1, e2 in _eps_list(cfg):
            reports.append(vf.theorem2_measurability_check(m, z, x, e1, e2, tol))
            if 0 < e1 < 1 and 0 < e2 < 1 and e1 + e2 < 1:
                reports.extend(vf.theorem3_check(z, x, m, e1, e2, tol, dw=(d1, d2)))
        reports.append(vf.corollary_check(z, x, m, tol))
        reports.append(vf.miyah_check(z, x, m, tol))
        reports.append(vf.theorem4_check(z, x, m, tol))
        for r in reports:
            if not r.witness.startswith("theta="):
                r.witness = f"{tag} {r.witness}".strip()
    table = vf.compare_bounds(z, x, vf.covariant_circle, thetas)
    comparison = [
        {"theta": c.parameter, "d1": c.d1, "d2": c.d2, "corollary_slack": c.corollary_slack,
         "miyah_slack": c.miyah_slack, "tighter": c.tighter}
        for c in table
    ]
    return emit_reports(args, "sweep", reports, seed, {"comparison": comparison})


COMMANDS = {
    "validate": cmd_validate,
    "width": cmd_width,
    "errorbar": cmd_errorbar,
    "distance": cmd_distance,
    "verify": cmd_verify,
    "example": cmd_example,
    "sweep": cmd_sweep,
}


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON scenario configuration")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--format", choices=["csv", "json"], help="output format (default from --out suffix, else json)")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--tolerance", type=float, default=None)
    common.add_argument("--parallel", type=int, default=1, help="worker processes for instance sweeps")
    common.add_argument("--dims", type=_int_list, default=[2, 3, 4, 5])
    common.add_argument("--instances", type=int, default=100, help="random instances per dimension")

    parser = argparse.ArgumentParser(prog="jointloc", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("validate", "width", "errorbar", "distance", "verify"):
        sub.add_parser(name, parents=[common])
    ex = sub.add_parser("example", parents=[common])
    ex.add_argument("name", choices=["qubit", "torus", "nqubit", "c3"])
    ex.add_argument("--n", type=_int_list, default=None, help="sizes for torus / nqubit")
    ex.add_argument("--allow-large", action="store_true", help="permit nqubit sizes above 3")
    sw = sub.add_parser("sweep", parents=[common])
    sw.add_argument("--points", type=int, default=33, help="family parameter grid size")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
