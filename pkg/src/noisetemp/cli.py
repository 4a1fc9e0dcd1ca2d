"""Command-line front end.

Exit codes: 0 success, 1 a check or trial failed, 2 invalid input.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import sys

import numpy as np

from . import __version__
from .bounds import CSV_COLUMNS, fmt
from .errors import NoiseTempError, ValidationError
from .sampling import random_clausius_trial
from .scenario import evaluate, load_json, scenario_from_dict, sweep_from_dict, sweep_points
from .spectra import NATURAL, constants_for, spectrum_to_dict
from .verify import run_checks

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2
CLAUSIUS_TOL = 1e-12


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


def _consts(args, fallback=None):
    if args.units is not None:
        return constants_for(args.units)
    return fallback or NATURAL


def cmd_report(args):
    sc = scenario_from_dict(load_json(args.file))
    consts = _consts(args, sc.consts)
    rep = evaluate(sc, consts)
    if args.csv:
        w = _writer(sys.stdout)
        w.writerow(CSV_COLUMNS)
        w.writerow(rep.csv_row(consts))
        return EXIT_OK
    kt = consts.k * rep.noise_temperature
    rows = [
        ("model", rep.model),
        ("rate R", fmt(rep.rate)),
        ("error probability", fmt(rep.epsilon)),
        ("noise temperature T", "inf (maximum-entropy limit)" if rep.infinite_temperature
         else fmt(rep.noise_temperature)),
        ("noise energy kT", fmt(kt)),
        ("entropy Hbar [nats]", fmt(rep.h_bar)),
        ("energy per step E(T)", fmt(rep.energy_per_step)),
        ("heat rate Q", fmt(rep.heat_rate)),
    ]
    if rep.environment_temperature is not None:
        rows += [("environment temperature", fmt(rep.environment_temperature)),
                 ("environment heat Q_e", fmt(rep.environment_heat_per_step)),
                 ("Q_e >= E(T)", str(rep.environment_feasible))]
    if consts is not NATURAL:
        # natural-unit view: energies in units of k*1K, rates in units of k*1K/h
        eu = consts.k
        rows += [("[natural] rate", fmt(rep.rate * consts.h / eu)),
                 ("[natural] kT", fmt(kt / eu)),
                 ("[natural] E(T)", fmt(rep.energy_per_step / eu)),
                 ("[natural] Q", fmt(rep.heat_rate * consts.h / eu ** 2))]
    width = max(len(k) for k, _ in rows)
    for k, v in rows:
        print(f"{k:<{width}}  {v}")
    return EXIT_OK


def cmd_sweep(args):
    sw = sweep_from_dict(load_json(args.file))
    consts = _consts(args) if args.units else None
    failures = 0
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow((sw.axis,) + CSV_COLUMNS + ("error",))
    for value, rep, err in sweep_points(sw, consts):
        if rep is None:
            failures += 1
            w.writerow([fmt(value)] + [""] * len(CSV_COLUMNS) + [err])
        else:
            row_consts = consts or constants_for(sw.scenario.get("unit_system", "natural"))
            w.writerow([fmt(value)] + rep.csv_row(row_consts) + [""])
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(buf.getvalue())
    if failures:
        print(f"{failures} of {len(sw.values)} sweep points failed", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


CLAUSIUS_COLUMNS = ("trial", "kind1", "kind2", "t1", "t2", "delta_e", "delta_e_prime",
                    "t1_after", "t2_after", "dh1", "dh2", "dh_total", "error")


def cmd_clausius(args):
    if args.trials < 1:
        raise ValidationError(f"--trials must be >= 1, got {args.trials}")
    consts = _consts(args)
    tol = CLAUSIUS_TOL if args.tolerance is None else args.tolerance
    rng = np.random.default_rng(args.seed)
    eu = consts.k
    bad = 0
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        w = _writer(fh)
        w.writerow(CLAUSIUS_COLUMNS)
        for i in range(args.trials):
            try:
                tr = random_clausius_trial(rng, args.reversed, consts, eu)
            except NoiseTempError as exc:
                bad += 1
                w.writerow([i] + [""] * (len(CLAUSIUS_COLUMNS) - 2) + [str(exc)])
                continue
            violated = tr.dh_total < -tol if args.reversed else tr.dh_total > tol
            bad += violated
            (s1, t1), (s2, t2) = tr.system1, tr.system2
            w.writerow([i, spectrum_to_dict(s1)["kind"], spectrum_to_dict(s2)["kind"],
                        fmt(t1), fmt(t2), fmt(tr.delta_e), fmt(tr.delta_e_prime),
                        fmt(tr.t1_after), fmt(tr.t2_after), fmt(tr.dh1), fmt(tr.dh2),
                        fmt(tr.dh_total), "violation" if violated else ""])
    direction = "reversed (hot to cold)" if args.reversed else "forward (cold to hot)"
    print(f"{args.trials} {direction} trials, {bad} failed")
    return EXIT_FAIL if bad else EXIT_OK


def cmd_verify(args):
    consts = constants_for("si") if args.si else _consts(args)
    results = run_checks(consts, args.tolerance, args.inject_perturbation)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        extra = f"  ({r.detail})" if r.detail else ""
        print(f"{status}  {r.name:<{width}}  worst={r.worst:.3e}  tol={r.tolerance:.1e}{extra}")
    failed = [r.name for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed ({consts.name} units)")
    return EXIT_FAIL if failed else EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(
        prog="noisetemp",
        description="Lower bounds on heat production in noisy reversible computation.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--units", choices=("natural", "si"), default=None,
                   help="unit system (default: the scenario's own, else natural)")
    p.add_argument("--tolerance", type=float, default=None,
                   help="override every check tolerance")
    p.add_argument("--csv", action="store_true", help="machine-readable output for 'report'")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("report", help="evaluate one scenario file")
    r.add_argument("file")
    r.set_defaults(func=cmd_report)

    s = sub.add_parser("sweep", help="evaluate a scenario over a parameter grid")
    s.add_argument("file")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_sweep)

    c = sub.add_parser("clausius", help="random generalized-Clausius trials")
    c.add_argument("--trials", type=int, required=True)
    c.add_argument("--seed", type=int, required=True)
    c.add_argument("--out", required=True)
    c.add_argument("--reversed", action="store_true",
                   help="control group: transfer from the hotter system")
    c.set_defaults(func=cmd_clausius)

    v = sub.add_parser("verify", help="run the cross-check suite")
    v.add_argument("--si", action="store_true", help="run in SI units")
    v.add_argument("--inject-perturbation", choices=("qubit", "oscillator", "power_law"),
                   default=None, help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.tolerance is not None and not (args.tolerance >= 0 and math.isfinite(args.tolerance)):
        print("error: --tolerance must be a non-negative number", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NoiseTempError as exc:
        # domain errors from a well-formed file still mean the input is unusable
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
