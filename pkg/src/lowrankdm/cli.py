"""Command-line front end.

Every command writes one report to stdout, as JSON (default) or CSV. JSON
reports always carry ``command``, ``inputs``, ``results``, ``tolerances`` and
``version``. Errors are printed as a one-line JSON object with an ``error``
field; the exit code is 1 for invalid input and 2 for numerical failures.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .approx import closest_rank_k, distance_to_low_rank
from .errors import NumericalError, ValidationError
from .farthest import (
    farthest_search,
    kyfan_optimal_m,
    schatten_counterexample,
    schatten_crossing,
    schatten_is_always_maxmixed,
)
from .norms import parse_norm
from .oracle import OracleConfig, oracle_min_distance
from .spectra import Tolerances, random_density_matrix, read_matrix, spectral_decompose, validate_density

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL = 0, 1, 2


class UsageError(ValidationError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _float(text: str) -> float:
    return float(text)


def _default_seed() -> int:
    try:
        return int(os.environ.get("LOWRANKDM_SEED", "0"))
    except ValueError:
        return 0


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json", dest="output_format")
    common.add_argument("--tol-herm", type=float, default=Tolerances.herm)
    common.add_argument("--tol-trace", type=float, default=Tolerances.trace)
    common.add_argument("--tol-psd", type=float, default=Tolerances.psd)
    common.add_argument("--tol-recon", type=float, default=Tolerances.recon)
    common.add_argument("--tol-orth", type=float, default=Tolerances.orth)

    parser = _Parser(prog="lowrankdm", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("approx", parents=[common], help="closest rank-<=k state to a matrix file")
    p.add_argument("input_path")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--norm", default="trace")
    p.add_argument("--show-y", action="store_true", help="include the minimiser Y")

    p = sub.add_parser("distance", parents=[common], help="closed-form distance only")
    p.add_argument("input_path")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--norm", default="trace")

    p = sub.add_parser("farthest", parents=[common], help="exhaustive search over I_m/m ⊕ O")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--norm", default="trace")

    p = sub.add_parser("kyfan-m", parents=[common], help="Ky Fan case-table prediction")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)

    p = sub.add_parser("schatten-class", parents=[common], help="is I/n always farthest under Schatten-p")
    p.add_argument("--p", type=_float, required=True)

    p = sub.add_parser("crossing", parents=[common], help="p where two candidates are equally far")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m1", type=int, required=True)
    p.add_argument("--m2", type=int, required=True)
    p.add_argument("--bracket", type=_float, nargs=2, metavar=("P_LO", "P_HI"), default=(1.0, 20.0))

    p = sub.add_parser("counterexample", parents=[common], help="state farther than I/n under Schatten-p")
    p.add_argument("--p", type=_float, required=True)
    p.add_argument("--n-max", type=int, default=10000)
    p.add_argument("--m-max", type=int, default=2000)

    p = sub.add_parser("verify", parents=[common], help="compare closed form with the brute-force oracle")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--norm", default="trace")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--input", dest="input_path", help="matrix file (default: seeded random state)")
    p.add_argument("--restarts", type=int, default=OracleConfig.restarts)
    return parser


def _tolerances(args) -> Tolerances:
    return Tolerances(args.tol_herm, args.tol_trace, args.tol_psd, args.tol_recon, args.tol_orth)


def _load(args, tols):
    return validate_density(read_matrix(args.input_path), tols)


def _eigs(values) -> list:
    return [float(v) for v in values]


def _complex_matrix(M) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(M)]


def _run(args) -> tuple[dict, dict, list | None]:
    """Return ``(inputs, results, csv_rows)`` for the parsed command."""
    tols = _tolerances(args)
    cmd = args.command

    if cmd == "approx":
        X = _load(args, tols)
        spec = parse_norm(args.norm)
        res = closest_rank_k(X, args.k, spec)
        results = {
            "n": X.n,
            "gamma": res.gamma,
            "distance": res.distance,
            "residual_spectrum": _eigs(res.residual_spectrum),
            "eigenvalues": _eigs(spectral_decompose(X).eigenvalues),
        }
        if args.show_y:
            results["Y"] = _complex_matrix(res.Y.matrix)
        return {"input_path": args.input_path, "k": args.k, "norm": str(spec)}, results, None

    if cmd == "distance":
        X = _load(args, tols)
        spec = parse_norm(args.norm)
        eigs = spectral_decompose(X).eigenvalues
        d = distance_to_low_rank(eigs, args.k, spec, max(tols.trace, 1e-9))
        return {"input_path": args.input_path, "k": args.k, "norm": str(spec)}, {"distance": d}, None

    if cmd == "farthest":
        spec = parse_norm(args.norm)
        rep = farthest_search(args.n, args.k, spec)
        results = {
            "argmax_m": rep.argmax_m,
            "max_distance": rep.max_distance,
            "ties": rep.ties,
            "candidate_distances": {str(m): d for m, d in rep.candidate_distances.items()},
        }
        rows = [["m", "distance", "is_argmax"]]
        rows += [[m, d, int(m == rep.argmax_m)] for m, d in rep.candidate_distances.items()]
        return {"n": args.n, "k": args.k, "norm": str(spec)}, results, rows

    if cmd == "kyfan-m":
        sel = kyfan_optimal_m(args.n, args.k, args.r)
        results = {
            "case": sel.case,
            "predicted_m": sel.predicted_m,
            "predicted_distance": sel.predicted_distance,
            "candidates": list(sel.candidates),
            "g_value": sel.g_value,
            "golden_threshold": sel.golden_threshold,
            "search_m": sel.search_m,
            "search_distance": sel.search_distance,
        }
        return {"n": args.n, "k": args.k, "r": args.r}, results, None

    if cmd == "schatten-class":
        return {"p": args.p}, {"always_maximally_mixed": schatten_is_always_maxmixed(args.p)}, None

    if cmd == "crossing":
        p_star = schatten_crossing(args.n, args.k, args.m1, args.m2, tuple(args.bracket))
        inputs = {"n": args.n, "k": args.k, "m1": args.m1, "m2": args.m2, "bracket": list(args.bracket)}
        return inputs, {"p": p_star, "p_6sig": float(f"{p_star:.6g}")}, None

    if cmd == "counterexample":
        found = schatten_counterexample(args.p, args.n_max, args.m_max)
        inputs = {"p": args.p, "n_max": args.n_max, "m_max": args.m_max}
        if found is None:
            return inputs, {"found": False}, None
        results = {
            "found": True,
            "n": found.n,
            "k": found.k,
            "family": found.family,
            "X": found.description,
            "distance_x": found.distance_x,
            "distance_maxmixed": found.distance_maxmixed,
        }
        return inputs, results, None

    if cmd == "verify":
        spec = parse_norm(args.norm)
        if args.input_path:
            X = _load(args, tols)
        else:
            if args.n is None:
                raise UsageError("verify needs --n or --input")
            rng = np.random.default_rng(args.seed)
            X = validate_density(random_density_matrix(args.n, rng), tols)
        closed = distance_to_low_rank(spectral_decompose(X).eigenvalues, args.k, spec, max(tols.trace, 1e-9))
        cfg = OracleConfig(restarts=args.restarts, seed=args.seed)
        oracle = oracle_min_distance(X, args.k, spec, cfg).value
        inputs = {"n": X.n, "k": args.k, "norm": str(spec), "seed": args.seed, "input_path": args.input_path}
        return inputs, {"closed_form": closed, "oracle": oracle, "gap": oracle - closed}, None

    raise UsageError(f"unknown command {cmd!r}")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isfinite(x):
            return x
        return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
    return obj


def _csv_cell(v) -> str:
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.17g}"
    if isinstance(v, (list, tuple)):
        return ";".join(_csv_cell(x) for x in v)
    return str(v)


def _to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow([_csv_cell(v) for v in row])
    return buf.getvalue()


def run(argv=None, stdout=None) -> int:
    """Parse ``argv``, run the command and write its report; returns the exit code."""
    stdout = stdout or sys.stdout
    command = None
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        inputs, results, rows = _run(args)
    except (ValidationError, OSError) as exc:
        return _fail(stdout, command, exc, EXIT_INVALID)
    except NumericalError as exc:
        return _fail(stdout, command, exc, EXIT_NUMERICAL)

    if args.output_format == "csv":
        if rows is None:
            rows = [["key", "value"], *([k, v] for k, v in results.items() if not isinstance(v, dict))]
        stdout.write(_to_csv(rows))
    else:
        report = {
            "command": command,
            "inputs": inputs,
            "results": results,
            "tolerances": vars(_tolerances(args)),
            "version": __version__,
        }
        stdout.write(json.dumps(_jsonable(report)) + "\n")
    return EXIT_OK


def _fail(stdout, command, exc, code) -> int:
    err = {"command": command, "error": {"type": type(exc).__name__, "message": str(exc)}, "version": __version__}
    stdout.write(json.dumps(err) + "\n")
    return code


def main(argv=None) -> int:
    return run(argv)
