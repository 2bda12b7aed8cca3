"""Command-line front end.

Exit codes: 0 success, 2 input or validation failure, 3 numerical failure
of an estimator.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from typing import List, Optional

import numpy as np

from . import __version__
from .data import load_csv
from .entropy import EstimatorParams, Method, estimate_entropy
from .errors import InputError, NumericalError, RenyiError
from .features import label_kernel, rank_features, select_features
from .kernels import build_kernel, parse_kernel_spec
from .measures import mutual_information_terms
from .simulate import SimulationError, SimulationSpec, run_simulation

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3

LN2 = math.log(2.0)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _float_list(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _kernel(text: str):
    try:
        return parse_kernel_spec(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_estimator_flags(p, single=True):
    p.add_argument("--kernel", type=_kernel, default=parse_kernel_spec("gaussian:sigma=1"),
                   help="gaussian:sigma=1 (default) or poly:p=2,r=1")
    p.add_argument("--method", choices=[m.value for m in Method], default="auto")
    p.add_argument("--seed", type=int, default=0)
    if single:
        p.add_argument("--alpha", type=float, default=2.0)
        p.add_argument("--s", type=int, default=None, help="query budget (default: from --epsilon/--delta)")
        p.add_argument("--m", type=int, default=None, help="polynomial degree (default: from --epsilon)")
        p.add_argument("--epsilon", type=float, default=0.01)
        p.add_argument("--delta", type=float, default=0.05)
        p.add_argument("--bits", action="store_true", help="report entropies in bits instead of nats")
    p.add_argument("--output", "-o", default=None, help="output file (default: stdout)")
    p.add_argument("--no-timing", action="store_true",
                   help="omit wall-clock fields so repeated runs are byte-identical")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="renyi-approx", description="Randomized matrix-based Renyi entropy estimation.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("entropy", help="entropy of the samples in a CSV file")
    p.add_argument("csv")
    p.add_argument("--drop-column", action="append", default=[], help="ignore this column (repeatable)")
    _add_estimator_flags(p)

    p = sub.add_parser("mi", help="mutual information between two groups of columns")
    p.add_argument("csv", help="X samples")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--y", dest="y_csv", help="CSV of Y samples (numeric, same row count)")
    g.add_argument("--label-column", help="categorical Y column inside the X file")
    _add_estimator_flags(p)

    for name, helptext in (("rank", "rank features by MI with the label"),
                           ("select", "greedy forward feature selection")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("csv")
        p.add_argument("--label-column", required=True)
        p.add_argument("--k", type=int, default=10)
        _add_estimator_flags(p)

    p = sub.add_parser("simulate", help="MRE sweep on a Gaussian-mixture kernel (CSV out)")
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--d", type=int, default=10)
    p.add_argument("--center", type=float, default=1.0)
    p.add_argument("--alpha", type=_float_list, default=[2.0], help="comma-separated orders")
    p.add_argument("--s", type=_int_list, default=[10, 50, 100, 150], help="comma-separated budgets")
    p.add_argument("--m", type=_int_list, default=None, help="comma-separated degrees")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--jobs", type=int, default=1)
    _add_estimator_flags(p, single=False)
    return parser


def _params(args) -> EstimatorParams:
    return EstimatorParams(
        alpha=args.alpha, method=args.method, s=args.s, m=args.m,
        epsilon=args.epsilon, delta=args.delta, seed=args.seed,
    )


def _emit(args, text: str):
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _units(args):
    return ("bits", LN2) if args.bits else ("nats", 1.0)


def cmd_entropy(args) -> int:
    data = load_csv(args.csv)
    keep = [i for i, name in enumerate(data.names) if name not in set(args.drop_column)]
    if not keep:
        raise InputError("no columns left after --drop-column")
    A = build_kernel(data.features[:, keep], args.kernel)
    est = estimate_entropy(A, _params(args))
    unit, div = _units(args)
    b = est.bounds_used
    out = {
        "entropy": est.entropy / div,
        "units": unit,
        "trace_estimate": est.trace_estimate,
        "alpha": float(est.alpha),
        "method": est.method_used.value,
        "s": est.s_used,
        "m": est.m_used,
        "u": None if b is None else b.u,
        "v": None if b is None else b.v,
        "n": A.n,
    }
    if not args.no_timing:
        out["elapsed"] = est.elapsed
    _emit(args, _dump(out))
    return EXIT_OK


def cmd_mi(args) -> int:
    t0 = time.perf_counter()
    data = load_csv(args.csv, label_column=args.label_column)
    if args.label_column is not None:
        target = label_kernel(data.labels, args.kernel)
    else:
        ydata = load_csv(args.y_csv)
        if ydata.n != data.n:
            raise InputError(f"X has {data.n} rows but Y has {ydata.n}")
        target = build_kernel(ydata.features, args.kernel)
    x = build_kernel(data.features, args.kernel)
    res = mutual_information_terms([x], target, _params(args))
    unit, div = _units(args)
    out = {
        "mi": res.value / div,
        "units": unit,
        "terms": {
            "S_x": res.s_vars.entropy / div,
            "S_y": res.s_target.entropy / div,
            "S_joint": res.s_joint.entropy / div,
        },
        "alpha": args.alpha,
        "method": res.s_joint.method_used.value,
        "s": res.s_joint.s_used,
        "m": res.s_joint.m_used,
        "n": data.n,
    }
    if not args.no_timing:
        out["elapsed"] = time.perf_counter() - t0
    _emit(args, _dump(out))
    return EXIT_OK


def cmd_rank(args) -> int:
    data = load_csv(args.csv, label_column=args.label_column)
    res = rank_features(data, args.kernel, _params(args), args.k)
    unit, div = _units(args)
    rows = []
    for name, idx, score, dt in zip(res.names, res.indices, res.scores, res.elapsed):
        row = {"name": name, "index": idx, "score": score / div}
        if not args.no_timing:
            row["elapsed"] = dt
        rows.append(row)
    out = {"alpha": args.alpha, "method": args.method, "units": unit, "k": args.k, "features": rows}
    if not args.no_timing:
        out["total_elapsed"] = sum(res.elapsed)
    _emit(args, _dump(out))
    return EXIT_OK


def cmd_select(args) -> int:
    data = load_csv(args.csv, label_column=args.label_column)
    res = select_features(data, args.kernel, _params(args), args.k)
    unit, div = _units(args)
    rows = []
    for name, idx, obj, dt in zip(res.names, res.indices, res.objective, res.elapsed):
        row = {"name": name, "index": idx, "objective": obj / div}
        if not args.no_timing:
            row["elapsed"] = dt
        rows.append(row)
    out = {"alpha": args.alpha, "method": args.method, "units": unit, "k": args.k, "selected": rows}
    if not args.no_timing:
        out["total_elapsed"] = sum(res.elapsed)
    _emit(args, _dump(out))
    return EXIT_OK


def cmd_simulate(args) -> int:
    spec = SimulationSpec(
        n=args.n, d=args.d, center=args.center, kernel=args.kernel,
        alphas=args.alpha, s_values=args.s, m_values=args.m or [None],
        trials=args.trials, seed=args.seed, method=args.method, jobs=args.jobs,
    )
    report = run_simulation(spec)
    _emit(args, report.to_csv(timing=not args.no_timing))
    return EXIT_OK


COMMANDS = {
    "entropy": cmd_entropy,
    "mi": cmd_mi,
    "rank": cmd_rank,
    "select": cmd_select,
    "simulate": cmd_simulate,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except SimulationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT if isinstance(exc.cause, InputError) else EXIT_NUMERIC
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NumericalError, RenyiError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
