"""
Command-line interface.

::

    mcgap estimate --input path.txt --delta 0.1 [--num-states D] [--output FILE]
                   [--emit-matrix] [--no-combined]
    mcgap simulate --chain birth-death --d 2 --up 0.3 --down 0.2 --n 1000 --seed 7
                   --output path.txt [--emit-truth truth.json]
    mcgap coverage --chain birth-death --d 2 --up 0.4 --down 0.4 --n 100000
                   --delta 0.1 --trials 200 --seed 0 [--jobs 4]

Exit codes: 0 success, 2 invalid input, 3 numerical failure. Diagnostics go
to stderr; their verbosity is set by ``MCGAP_LOG`` (error, warn, info, debug).
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from typing import Optional, Sequence

import numpy as np

from . import report
from .core import InputError, NumericalError, validate_path
from .estimator import estimate
from .simulator import (ChainModel, birth_death_chain, from_matrix, random_walk_on_weighted_graph,
                        run_coverage, sample_path)

logger = logging.getLogger("mcgap")

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3
_LEVELS = {"error": logging.ERROR, "warn": logging.WARNING, "warning": logging.WARNING,
           "info": logging.INFO, "debug": logging.DEBUG}


def _setup_logging():
    level = _LEVELS.get(os.environ.get("MCGAP_LOG", "warn").lower(), logging.WARNING)
    logging.basicConfig(level=level, format="mcgap: %(levelname)s: %(message)s", stream=sys.stderr)


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------


def read_path_file(path: str) -> list[int]:
    """Whitespace-separated base-10 integers; lines starting with '#' are ignored."""
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path) as fh:
            text = fh.read()
    states = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if line.lstrip().startswith("#"):
            continue
        for tok in line.split():
            try:
                states.append(int(tok, 10))
            except ValueError:
                raise InputError(f"{path}:{lineno}: not an integer state: {tok!r}") from None
    return states


def write_path_file(fh, states, header: str = ""):
    if header:
        fh.write(f"# {header}\n")
    fh.write("\n".join(map(str, states.tolist())))
    fh.write("\n")


def read_matrix_csv(path: str) -> np.ndarray:
    try:
        M = np.loadtxt(path, delimiter=",", dtype=np.float64, ndmin=2, comments="#")
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None
    if M.shape[0] != M.shape[1]:
        raise InputError(f"{path}: matrix is {M.shape[0]}x{M.shape[1]}, expected square")
    return M


def _load_stochastic(path: str, tol: float = 1e-9) -> np.ndarray:
    P = read_matrix_csv(path)
    if np.any(P < 0) or np.max(np.abs(P.sum(axis=1) - 1.0)) > tol:
        raise InputError(f"{path}: not row-stochastic within {tol:g}")
    return P / P.sum(axis=1, keepdims=True)


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------


def _delta(s: str) -> float:
    try:
        v = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {s!r}") from None
    if not 0.0 < v < 1.0:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1), got {s}")
    return v


def _positive_int(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {s}")
    return v


def _rates(s: str) -> list[float]:
    try:
        return [float(x) for x in s.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated reals, got {s!r}") from None


def _start(s: str):
    if s == "stationary":
        return s
    try:
        return int(s)
    except ValueError:
        raise argparse.ArgumentTypeError("expected 'stationary' or a state index") from None


def _add_chain_args(p: argparse.ArgumentParser):
    g = p.add_argument_group("chain")
    g.add_argument("--chain", choices=["birth-death", "graph", "file"], required=True)
    g.add_argument("--d", type=int, help="number of states (birth-death)")
    g.add_argument("--up", type=_rates, help="up probabilities, one value or d-1 comma-separated")
    g.add_argument("--down", type=_rates, help="down probabilities, one value or d-1 comma-separated")
    g.add_argument("--weights", help="CSV of symmetric edge weights (graph)")
    g.add_argument("--matrix", help="CSV of the transition matrix (file)")
    g.add_argument("--allow-nonreversible", action="store_true",
                   help="accept a non-reversible --matrix")
    g.add_argument("--start", type=_start, default="stationary",
                   help="initial state index or 'stationary' (default)")


def _build_chain(args) -> ChainModel:
    if args.chain == "birth-death":
        if args.d is None or args.up is None or args.down is None:
            raise InputError("--chain birth-death needs --d, --up and --down")
        up = args.up * (args.d - 1) if len(args.up) == 1 else args.up
        down = args.down * (args.d - 1) if len(args.down) == 1 else args.down
        return birth_death_chain(args.d, up, down)
    if args.chain == "graph":
        if args.weights is None:
            raise InputError("--chain graph needs --weights")
        return random_walk_on_weighted_graph(read_matrix_csv(args.weights))
    if args.matrix is None:
        raise InputError("--chain file needs --matrix")
    return from_matrix(_load_stochastic(args.matrix), require_reversible=not args.allow_nonreversible)


def _truth(model: ChainModel) -> dict:
    return {
        "schema_version": report.SCHEMA_VERSION,
        "d": model.d,
        "pi": model.pi,
        "pimin": model.pimin,
        "gap": model.gap,
        "relaxation_time": model.relaxation_time,
        "kappa": model.kappa,
        "reversible": model.reversible,
    }


def _write_text(dest: Optional[str], text: str):
    if dest is None or dest == "-":
        sys.stdout.write(text)
    else:
        with open(dest, "w") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_estimate(args) -> int:
    t0 = time.perf_counter()
    raw = read_path_file(args.input)
    if args.num_states is None:
        logger.warning("--num-states not given; inferring d = max(state) + 1")
    path = validate_path(raw, args.num_states)
    t1 = time.perf_counter()
    rep = estimate(path, args.delta, path.num_states, combined=not args.no_combined)
    t2 = time.perf_counter()
    out = report.report_to_dict(rep, emit_matrix=args.emit_matrix,
                                timings={"read_seconds": t1 - t0, "estimate_seconds": t2 - t1})
    _write_text(args.output, report.dumps(out) + "\n")
    return EXIT_OK


def cmd_simulate(args) -> int:
    model = _build_chain(args)
    path = sample_path(model, args.n, args.seed, args.start)
    header = f"mcgap sample path: d={model.d} n={args.n} seed={args.seed} start={args.start}"
    if args.output is None or args.output == "-":
        write_path_file(sys.stdout, path.states, header)
    else:
        with open(args.output, "w") as fh:
            write_path_file(fh, path.states, header)
    if args.emit_truth:
        _write_text(args.emit_truth, report.dumps(_truth(model)) + "\n")
    return EXIT_OK


def cmd_coverage(args) -> int:
    model = _build_chain(args)
    summary = run_coverage(model, args.n, args.delta, args.trials, args.seed,
                           jobs=args.jobs, start=args.start)
    out = {"schema_version": report.SCHEMA_VERSION, "truth": _truth(model)}
    out.update(summary.to_dict())
    _write_text(args.output, report.dumps(out) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mcgap", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="confidence intervals from a sample path file")
    p.add_argument("--input", required=True, help="path file ('-' for stdin)")
    p.add_argument("--delta", type=_delta, required=True)
    p.add_argument("--num-states", type=_positive_int)
    p.add_argument("--output")
    p.add_argument("--emit-matrix", action="store_true", help="include the smoothed matrix")
    p.add_argument("--no-combined", action="store_true", help="skip the combined intervals")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("simulate", help="sample a path from a reversible chain")
    _add_chain_args(p)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")
    p.add_argument("--emit-truth", help="write ground truth (pi, gap, kappa) as JSON")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("coverage", help="Monte-Carlo coverage of the intervals")
    _add_chain_args(p)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--delta", type=_delta, required=True)
    p.add_argument("--trials", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.add_argument("--output")
    p.set_defaults(func=cmd_coverage)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, OSError, ValueError) as exc:
        print(f"mcgap: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NumericalError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"mcgap: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
