"""Command-line entry point: ``lquprotect {table1,run,sweep,optimize}``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from importlib import resources
from pathlib import Path

from .errors import ConfigParse, LquProtectError
from .protocol import axis, optimize_filters, run_protocol, sweep_surface
from .scenarios import table1_scenarios
from .specfile import ResolvedSpec, load_spec


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _full(x: float) -> str:
    return "nan" if math.isnan(x) else f"{x:.17g}"


def builtin_specs() -> list[str]:
    return sorted(p.name[:-5] for p in resources.files("lquprotect.specs").iterdir()
                  if p.name.endswith(".json"))


def _load(spec: str) -> ResolvedSpec:
    path = Path(spec)
    if not path.exists() and spec in builtin_specs():
        with resources.as_file(resources.files("lquprotect.specs") / f"{spec}.json") as p:
            return load_spec(p)
    return load_spec(path)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def table1_report() -> tuple[list[dict], bool]:
    """Evaluate the three reference scenarios at their quoted filter settings."""
    rows, all_ok = [], True
    for sc in table1_scenarios():
        res = run_protocol(sc.config)
        computed = {
            "lqu_initial": res.lqu[0].value,
            "lqu_protected": res.lqu_final,
            "lqu_unprotected": res.lqu_unprotected.value,
            "fidelity_protected": res.fidelity_final,
            "fidelity_unprotected": res.fidelity_unprotected,
        }
        for name, rep in sc.reported().items():
            delta = computed[name] - rep.value
            ok = abs(delta) <= rep.tol
            all_ok &= ok
            rows.append({"scenario": sc.label, "quantity": name, "computed": computed[name],
                         "reported": rep.value, "delta": delta, "tol": rep.tol, "ok": ok})
    return rows, all_ok


def cmd_table1(args) -> int:
    rows, ok = table1_report()
    if args.format == "json":
        _emit(json.dumps({"rows": rows, "all_ok": ok}, indent=2) + "\n", args.out)
        return 0 if ok else 1
    labels = list(dict.fromkeys(r["scenario"] for r in rows))
    cell = {(r["scenario"], r["quantity"]): r for r in rows}
    lines = [f"{'':<22}" + "".join(f"{lab:>20}" for lab in labels)]
    for qty, title in (("lqu_initial", "Initial state"), ("lqu_protected", "Perform M and N"),
                       ("lqu_unprotected", "Without M and N"),
                       ("fidelity_protected", "Fidelity with M, N"),
                       ("fidelity_unprotected", "Fidelity without")):
        lines.append(f"{title:<22}" + "".join(f"{_fmt(cell[lab, qty]['computed']):>20}"
                                              for lab in labels))
    lines.append("")
    for r in rows:
        status = "PASS" if r["ok"] else "FAIL"
        lines.append(f"{status} {r['scenario']:<20} {r['quantity']:<22} computed={_fmt(r['computed'])} "
                     f"reported={_fmt(r['reported'])} delta={r['delta']:+.2e} tol={r['tol']:.0e}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if ok else 1


def cmd_run(args) -> int:
    spec = _load(args.spec)
    res = run_protocol(spec.config)
    for i, r in enumerate(res.lqu):
        if r.degenerate_flag:
            print(f"warning: optimal observable for rho{i} is degenerate "
                  f"(gap {r.degeneracy_gap:.2e}); closed-form LQU may not be attained",
                  file=sys.stderr)
    report = {"config": spec.echo, "result": res.to_dict()}
    _emit(json.dumps(report, indent=2) + "\n", args.out or spec.output["path"])
    return 0


def sweep_csv(spec: ResolvedSpec, grid: int | None = None) -> str:
    n1 = spec.sweep["n1"]
    n2 = spec.sweep["n2"]
    if grid is not None:
        n1 = [n1[0], n1[1], grid]
        n2 = [n2[0], n2[1], grid]
    rows = sweep_surface(spec.config, axis(*n1), axis(*n2))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n1", "n2", "lqu"])
    for a, b, v in rows:
        writer.writerow([_full(a), _full(b), _full(v)])
    return buf.getvalue()


def cmd_sweep(args) -> int:
    spec = _load(args.spec)
    _emit(sweep_csv(spec, args.grid), args.out or spec.output["path"])
    return 0


def cmd_optimize(args) -> int:
    spec = _load(args.spec)
    opt = dict(spec.optimize or {"budget": 20000, "seed": 0})
    if args.budget is not None:
        opt["budget"] = args.budget
    if args.seed is not None:
        opt["seed"] = args.seed
    res = optimize_filters(spec.config, budget=opt["budget"], seed=opt["seed"])
    echo = dict(spec.echo)
    echo["filters"] = dict(echo["filters"], optimize=opt)
    fmt = args.format or spec.output["format"] or "json"
    if fmt == "csv":
        lines = ["n_eval,best_lqu"] + [f"{n},{_full(v)}" for n, v in res.trace]
        text = "\n".join(lines) + "\n"
    else:
        cfg = res.config
        text = json.dumps({
            "config": echo,
            "best_lqu": res.lqu,
            "best_params": {"m": [list(cfg.m_a), list(cfg.m_b)], "n": [list(cfg.n_a), list(cfg.n_b)]},
            "n_eval": res.n_eval,
            "trace": [[n, v] for n, v in res.trace],
        }, indent=2) + "\n"
    _emit(text, args.out or spec.output["path"])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lquprotect",
        description="LQU under generalized amplitude damping with weak measurement and reversal.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_spec=True):
        if need_spec:
            p.add_argument("--spec", required=True,
                           help=f"scenario JSON file, or a built-in name: {', '.join(builtin_specs())}")
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("--seed", type=int)
        p.add_argument("--budget", type=int)
        p.add_argument("--grid", type=int, help="points per sweep axis")

    p = sub.add_parser("table1", help="reproduce the reference table and fidelities")
    common(p, need_spec=False)
    p.set_defaults(func=cmd_table1)
    for name, func, text in (("run", cmd_run, "run the protocol once, emit JSON"),
                             ("sweep", cmd_sweep, "LQU surface over reversal strengths, emit CSV"),
                             ("optimize", cmd_optimize, "genetic search for the best filters")):
        p = sub.add_parser(name, help=text)
        common(p)
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigParse as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (LquProtectError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
