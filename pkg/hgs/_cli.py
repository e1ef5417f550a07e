"""
Command line interface: ``hgs classify | analyze | precondition | solve | gen``

Matrices are read from Matrix Market files, or taken from the built in
corpus as ``corpus:NAME`` or ``corpus:family61:N``. Indices on the command
line and in reports are 1-based.
"""
import argparse
import cmath
import io
import json
import logging
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import __version__
from ._convergence import analyze, numerical_verdict
from ._corpus import CorpusClass, as_class, get, random_in_class
from ._errors import HGSError
from ._grammar import read_matrix, read_vector, write_matrix, write_vector
from ._graph import FrobeniusForm, frobenius_normal_form
from ._linalg import IterationMethod, as_method
from ._matrix import ComplexMatrix, as_matrix
from ._precondition import (
    Preconditioner,
    column_eliminator,
    first_column,
    gauss_chain,
    schur_preconditioner,
    verify_preconditioned,
)
from ._ray import FREE
from ._solver import SolveStatus, preconditioned_solve, solve
from ._taxonomy import Classification, classify

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DISAGREEMENT = 3
EXIT_NO_CONVERGENCE = 4

CORPUS_PREFIX = "corpus:"
STRATEGIES = ("first-column", "gauss-chain", "column-k", "schur-alpha")


def _finite(value: Optional[float]) -> Optional[float]:
    if value is None or not math.isfinite(value):
        return None
    return value


def _number(value) -> Any:
    if value is None:
        return None
    value = complex(value)
    if not cmath.isfinite(value):
        return None
    return value.real if value.imag == 0 else [value.real, value.imag]


def _one_based(indices) -> List[int]:
    return [int(i) + 1 for i in indices]


def _index_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def _float_list(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated numbers, got {text!r}") from None


def _method_list(text: str) -> List[IterationMethod]:
    try:
        return [as_method(part) for part in text.split(",") if part.strip()]
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err)) from None


def load(source: str, drop_tol: float = 0.0) -> ComplexMatrix:
    """Matrix of a file path or ``corpus:NAME[:N]`` source"""
    if source.startswith(CORPUS_PREFIX):
        name, _, order = source[len(CORPUS_PREFIX) :].partition(":")
        try:
            n = int(order) if order else None
        except ValueError:
            raise HGSError(f"bad corpus order in {source!r}") from None
        a = get(name, n)
    else:
        a = read_matrix(source)
    if drop_tol > 0:
        a = np.array(a)
        a[np.abs(a) <= drop_tol] = 0
        a = as_matrix(a)
    return a


# report fragments


def classify_report(
    a: ComplexMatrix,
    classification: Optional[Classification] = None,
    form: Optional[FrobeniusForm] = None,
) -> Dict[str, Any]:
    if classification is None:
        classification = classify(a)
    if form is None:
        form = frobenius_normal_form(a)
    scaling = classification.gd_scaling
    return {
        "order": a.shape[0],
        "dominance": classification.dominance.tag.value,
        "equality_rows": _one_based(classification.dominance.equality_rows),
        "m_class": {
            "tag": classification.m_class.tag.value,
            "s": classification.m_class.s,
            "rho_b": _finite(classification.m_class.rho_b),
        },
        "h_class": classification.h_class.value,
        "irreducible": classification.irreducible,
        "hpd": classification.hpd,
        "gde": classification.gde,
        "gd_scaling": {
            "exists": scaling.exists,
            "weights": None
            if scaling.weights is None
            else [float(w) for w in scaling.weights],
        },
        "fnf_blocks": [_one_based(block) for block in form.blocks],
        "block_sizes": list(form.block_sizes),
    }


def _witness(witness) -> Optional[Dict[str, Any]]:
    if witness is None:
        return None
    if witness.angle is FREE:
        angle = "free"
    else:
        angle = witness.angle
    return {
        "block": _one_based(witness.block),
        "rho": _finite(witness.rho),
        "family": witness.family.value if witness.family is not None else None,
        "angle": angle,
    }


def analyze_report(
    a: ComplexMatrix, methods: Sequence[IterationMethod]
) -> Dict[str, Any]:
    report = analyze(a, methods)
    fragment = classify_report(a, report.classification, report.fnf)
    fragment["agree"] = report.agree
    fragment["methods"] = {
        str(method): {
            "status": result.verdict.status.value,
            "rho": _finite(result.rho),
            "agree": result.agree,
            "rules": [
                {"id": rule.identifier, "citation": rule.citation}
                for rule in result.verdict.rule_chain
            ],
            "witness": _witness(result.verdict.witness),
            "diagnostic": result.diagnostic,
        }
        for method, result in report.methods.items()
    }
    return fragment


def build_preconditioner(a: ComplexMatrix, args: argparse.Namespace) -> Preconditioner:
    n = a.shape[0]
    if args.strategy == "first-column":
        return first_column(a, args.weights)
    if args.strategy == "gauss-chain":
        return gauss_chain(a, (args.k if args.k is not None else n - 1) - 1)
    if args.strategy == "column-k":
        return column_eliminator(a, (args.k if args.k is not None else 1) - 1)
    if not args.alpha:
        raise HGSError("--strategy schur-alpha needs --alpha")
    return schur_preconditioner(a, [i - 1 for i in args.alpha])


def precondition_report(a: ComplexMatrix, p: Preconditioner) -> Dict[str, Any]:
    result = verify_preconditioned(a, p)
    return {
        "strategy": p.kind.value,
        "pivot": None if p.pivot is None else p.pivot + 1,
        "alpha": None if p.alpha is None else _one_based(p.alpha),
        "h_class": result.h_class.value,
        "holds": result.holds,
        "bounds": {
            str(method): {
                "rho": _finite(row.rho),
                "rho_mu": _finite(row.rho_mu),
                "rho_reference": _finite(row.rho_reference),
                "holds": row.holds,
            }
            for method, row in result.rows.items()
        },
        "findings": list(result.findings),
    }


# human readable output


def _fmt(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.4f}"
    return str(value)


def print_classification(fragment: Dict[str, Any], stream):
    print(f"  order: {fragment['order']}", file=stream)
    print(f"  dominance: {fragment['dominance']}", file=stream)
    print(f"  M-class of mu(A): {fragment['m_class']['tag']}", file=stream)
    print(f"  H-class: {fragment['h_class']}", file=stream)
    print(f"  irreducible: {_fmt(fragment['irreducible'])}", file=stream)
    print(f"  generalized equipotent: {_fmt(fragment['gde'])}", file=stream)
    sizes = ", ".join(str(size) for size in fragment["block_sizes"])
    print(f"  Frobenius block sizes: {sizes}", file=stream)


def print_methods(fragment: Dict[str, Any], stream):
    print(f"  {'method':<7}{'verdict':<10}{'rho':>8}  {'agree':<6}rule", file=stream)
    for name, entry in fragment["methods"].items():
        rule = entry["rules"][-1]["id"] if entry["rules"] else "-"
        print(
            f"  {name:<7}{entry['status']:<10}{_fmt(entry['rho']):>8}"
            f"  {_fmt(entry['agree']):<6}{rule}",
            file=stream,
        )
        if entry["diagnostic"]:
            print(f"    {entry['diagnostic']}", file=stream)


def print_bounds(fragment: Dict[str, Any], stream):
    print(f"  strategy: {fragment['strategy']}", file=stream)
    print(f"  H-class of preconditioned matrix: {fragment['h_class']}", file=stream)
    print(
        f"  {'method':<7}{'rho':>8}{'rho mu':>8}{'bound':>8}  holds", file=stream
    )
    for name, row in fragment["bounds"].items():
        print(
            f"  {name:<7}{_fmt(row['rho']):>8}{_fmt(row['rho_mu']):>8}"
            f"{_fmt(row['rho_reference']):>8}  {_fmt(row['holds'])}",
            file=stream,
        )
    for finding in fragment["findings"]:
        print(f"  finding: {finding}", file=stream)


# commands


def _batch(
    args: argparse.Namespace, build: Callable[[ComplexMatrix], Dict[str, Any]]
) -> List[Dict[str, Any]]:
    def run(source: str) -> Dict[str, Any]:
        fragment = build(load(source, args.drop_tol))
        return dict(input=source, **fragment)

    if args.jobs > 1 and len(args.inputs) > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            return list(pool.map(run, args.inputs))
    return [run(source) for source in args.inputs]


def cmd_classify(args: argparse.Namespace, stream) -> Tuple[int, Dict[str, Any]]:
    fragments = _batch(args, classify_report)
    if not args.json:
        for fragment in fragments:
            print(fragment["input"], file=stream)
            print_classification(fragment, stream)
    return EXIT_OK, {"inputs": fragments}


def cmd_analyze(args: argparse.Namespace, stream) -> Tuple[int, Dict[str, Any]]:
    methods = args.method or list(IterationMethod)
    fragments = _batch(args, lambda a: analyze_report(a, methods))
    if not args.json:
        for fragment in fragments:
            print(fragment["input"], file=stream)
            print_classification(fragment, stream)
            print_methods(fragment, stream)
    agree = all(fragment["agree"] for fragment in fragments)
    return (EXIT_OK if agree else EXIT_DISAGREEMENT), {"inputs": fragments}


def cmd_precondition(args: argparse.Namespace, stream) -> Tuple[int, Dict[str, Any]]:
    a = load(args.input, args.drop_tol)
    p = build_preconditioner(a, args)
    fragment = dict(input=args.input, **precondition_report(a, p))
    if args.out:
        write_matrix(args.out, p.apply(a), comment=f"preconditioned by {p.kind.value}")
        fragment["out"] = args.out
    if not args.json:
        print(args.input, file=stream)
        print_bounds(fragment, stream)
    return EXIT_OK, fragment


def cmd_solve(args: argparse.Namespace, stream) -> Tuple[int, Dict[str, Any]]:
    a = load(args.input, args.drop_tol)
    n = a.shape[0]
    methods = args.method or [IterationMethod.SGS]
    if len(methods) != 1:
        raise HGSError("solve takes exactly one --method")
    (method,) = methods
    b = read_vector(args.rhs) if args.rhs else np.ones(n, dtype=np.complex128)
    p = build_preconditioner(a, args) if args.strategy else None
    system = p.apply(a) if p is not None else a
    rho_hint = None
    if args.maxit is None:
        rho_hint = numerical_verdict(system, method).rho
    if p is None:
        result = solve(a, b, method, tol=args.tol, maxit=args.maxit, rho_hint=rho_hint)
    else:
        result = preconditioned_solve(
            a, b, p, method, tol=args.tol, maxit=args.maxit, rho_hint=rho_hint
        )
    fragment = {
        "input": args.input,
        "method": str(method),
        "strategy": args.strategy,
        "status": result.status.value,
        "iterations": result.iterations,
        "final_update": _finite(result.history[-1]) if result.history else None,
        "residual": _finite(result.residual),
        "rate": _finite(result.rate),
        "x": [_number(value) for value in result.x],
    }
    if args.out:
        write_vector(args.out, result.x)
        fragment["out"] = args.out
    if not args.json:
        print(args.input, file=stream)
        print(f"  method: {method}", file=stream)
        print(f"  status: {result.status.value}", file=stream)
        print(f"  iterations: {result.iterations}", file=stream)
        print(f"  residual: {result.residual:.3e}", file=stream)
    code = EXIT_OK if result.status is SolveStatus.CONVERGED else EXIT_NO_CONVERGENCE
    return code, fragment


def cmd_gen(args: argparse.Namespace, stream) -> Tuple[int, Dict[str, Any]]:
    if args.name in {cls.value for cls in CorpusClass}:
        if args.n is None:
            raise HGSError(f"random {args.name} matrices need --n")
        a = random_in_class(as_class(args.name), args.n, args.seed)
        description = f"{args.name} n={args.n} seed={args.seed}"
    else:
        a = get(args.name, args.n)
        description = args.name if args.n is None else f"{args.name} n={args.n}"
    if args.out:
        write_matrix(args.out, a, comment=description)
    else:
        buffer = io.BytesIO()
        write_matrix(buffer, a, comment=description)
        stream.write(buffer.getvalue().decode())
    return EXIT_OK, {"name": args.name, "order": a.shape[0], "out": args.out}


COMMANDS = {
    "classify": cmd_classify,
    "analyze": cmd_analyze,
    "precondition": cmd_precondition,
    "solve": cmd_solve,
    "gen": cmd_gen,
}


def _add_preconditioner_options(parser: argparse.ArgumentParser, required: bool):
    parser.add_argument("--strategy", choices=STRATEGIES, required=required)
    parser.add_argument("--k", type=int, help="1-based pivot index")
    parser.add_argument("--alpha", type=_index_list, help="1-based indices, e.g. 3,4")
    parser.add_argument(
        "--weights", type=_float_list, help="first-column weights, one per row"
    )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument(
        "--drop-tol",
        type=float,
        default=0.0,
        help="set entries of at most this modulus to zero",
    )
    common.add_argument(
        "--timing", action="store_true", help="add wall clock time to the report"
    )
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(
        prog="hgs", description="Gauss-Seidel convergence analysis for H-matrices"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    for name in ("classify", "analyze"):
        command = commands.add_parser(name, parents=[common])
        command.add_argument("inputs", nargs="+", metavar="input")
        command.add_argument("--jobs", type=int, default=1)
        if name == "analyze":
            command.add_argument(
                "--method", type=_method_list, help="comma separated j,fgs,bgs,sgs"
            )

    precondition = commands.add_parser("precondition", parents=[common])
    precondition.add_argument("input")
    _add_preconditioner_options(precondition, required=True)
    precondition.add_argument("--out", help="write the preconditioned matrix")

    solve_ = commands.add_parser("solve", parents=[common])
    solve_.add_argument("input")
    solve_.add_argument("--rhs", help="right hand side, ones by default")
    solve_.add_argument("--method", type=_method_list, help="one of j,fgs,bgs,sgs")
    solve_.add_argument("--tol", type=float, default=1e-10)
    solve_.add_argument("--maxit", type=int)
    _add_preconditioner_options(solve_, required=False)
    solve_.add_argument("--out", help="write the solution vector")

    gen = commands.add_parser("gen", parents=[common])
    gen.add_argument("name", help="corpus matrix or random class name")
    gen.add_argument("--n", type=int)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", help="target file, standard output by default")
    return parser


def _configure_logging(verbosity: int):
    if verbosity:
        logging.basicConfig(
            stream=sys.stderr,
            level=logging.DEBUG if verbosity > 1 else logging.INFO,
            format="%(levelname)s %(name)s: %(message)s",
        )


def main(argv: Optional[Sequence[str]] = None, stream=None) -> int:
    stream = sys.stdout if stream is None else stream
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return EXIT_INPUT if exit_.code else EXIT_OK
    _configure_logging(args.verbose)
    start = time.perf_counter()
    try:
        code, fragment = COMMANDS[args.command](args, stream)
    except (HGSError, OSError, ValueError) as err:
        print(f"hgs {args.command}: error: {err}", file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        report = {"tool": "hgs", "version": __version__, "command": args.command}
        report.update(fragment)
        if args.timing:
            report["timing"] = {"seconds": time.perf_counter() - start}
        print(json.dumps(report, sort_keys=True, indent=2, allow_nan=False), file=stream)
    elif args.timing:
        print(f"  time: {time.perf_counter() - start:.3f}s", file=stream)
    return code
