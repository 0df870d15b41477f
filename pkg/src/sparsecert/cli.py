"""Command-line front end emitting machine-readable certification reports.

Subcommands: ``gen`` (matrix generators), ``width``, ``coherence``,
``balanced``, ``certify`` (the full pipeline) and ``recover`` (decoder
experiment harness).  Reports are JSON on stdout (or ``--out``); the
human-readable summary goes to stderr so pipelines can consume stdout.
Exit codes: 0 success, 1 usage or input-file error, 2 computation error.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import __version__, cert, coherence, linalg, matio, width
from .exceptions import MatrixFileError, OrderingViolation, ToolError
from .generators import gen_gaussian, gen_id_hadamard


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="sparsecert", description=__doc__)
    parser.add_argument("--version", action="version", version=f"sparsecert {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="generate a test matrix")
    gen.add_argument("kind", choices=["gaussian", "id-hadamard"])
    gen.add_argument("dims", nargs="+", type=int, help="gaussian: M N; id-hadamard: M")
    gen.add_argument("--seed", type=int, default=1)
    gen.add_argument("--normalize", action="store_true", help="unit-norm columns")
    _add_output_args(gen)
    gen.set_defaults(func=_cmd_gen)

    for name, helptext, func in (
        ("width", "l1/linf width, bound k1", _cmd_width),
        ("coherence", "coherence M, bound k2", _cmd_coherence),
        ("balanced", "exact balancedness threshold k_star", _cmd_balanced),
        ("certify", "full pipeline: width + coherence + balancedness", _cmd_certify),
        ("recover", "decoder success rates for k = 1..kcap", _cmd_recover),
    ):
        cmd = sub.add_parser(name, help=helptext)
        cmd.add_argument("--in", dest="input", required=True, metavar="PATH")
        cmd.add_argument("--format", choices=["csv", "json"], default=None)
        cmd.add_argument("--tol", type=float, default=1e-8,
                         help="dictionary-detection tolerance (default 1e-8)")
        cmd.add_argument("--threads", type=int, default=1)
        _add_output_args(cmd, with_format=False)
        if name in ("balanced", "certify", "recover"):
            cmd.add_argument("--kcap", type=int, default=None,
                             help="sparsity cap (default min(m, n-1))")
        if name == "recover":
            cmd.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
            cmd.add_argument("--trials", type=int, default=3)
            cmd.add_argument("--seed", type=int, default=1)
        cmd.set_defaults(func=func)
    return parser


def _add_output_args(cmd, with_format: bool = True):
    cmd.add_argument("--out", default=None, metavar="PATH")
    if with_format:
        cmd.add_argument("--format", choices=["csv", "json"], default=None)


def run_command(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (MatrixFileError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ToolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


def _cmd_gen(args) -> int:
    if args.kind == "gaussian":
        if len(args.dims) != 2:
            raise _UsageError("gen gaussian needs two dimensions: M N")
        A = gen_gaussian(args.dims[0], args.dims[1], args.seed, args.normalize)
        label = f"gaussian {A.shape[0]}x{A.shape[1]} seed {args.seed}"
    else:
        if len(args.dims) != 1:
            raise _UsageError("gen id-hadamard needs one dimension: M")
        A = gen_id_hadamard(args.dims[0])
        label = f"id-hadamard {A.shape[0]}x{A.shape[1]}"
    fmt = args.format or (matio.infer_format(args.out) if args.out else "json")
    text = matio.dump_matrix(A, fmt)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    print(f"generated {label}", file=sys.stderr)
    return 0


def _load(args):
    A = matio.load_matrix(args.input, args.format)
    return A, Path(args.input).name


class _Timings:
    def __init__(self):
        self.stages: dict[str, float] = {}

    def measure(self, stage: str):
        timings = self

        class _Span:
            def __enter__(self):
                self.t0 = time.perf_counter()

            def __exit__(self, *exc):
                timings.stages[stage] = round((time.perf_counter() - self.t0) * 1000.0, 3)

        return _Span()


def _base_report(A, matrix_id: str, dict_tol: float) -> dict:
    m, n = A.shape
    report = {
        "matrix_id": matrix_id,
        "m": m,
        "n": n,
        "p": n - linalg.rank(A),
        "is_dictionary": coherence.is_dictionary(A, dict_tol),
    }
    return report


def _add_coherence(report: dict, A, dict_tol: float):
    if report["is_dictionary"]:
        coh = coherence.coherence(A, dict_tol)
        report["M"] = coh.M
        report["k2"] = coh.k2


def _check_ordering(report: dict):
    k1, k2, k_star = report.get("k1"), report.get("k2"), report.get("k_star")
    if k1 is not None and k2 is not None and k2 > k1:
        raise OrderingViolation(f"k2={k2} exceeds k1={k1}")
    if k1 is not None and k_star is not None and k1 > k_star:
        raise OrderingViolation(f"k1={k1} exceeds k_star={k_star}")
    if k2 is not None and k_star is not None and k2 > k_star:
        raise OrderingViolation(f"k2={k2} exceeds k_star={k_star}")


def _emit(report: dict, args, timings: _Timings, summary: str) -> int:
    _check_ordering(report)
    report["timings"] = timings.stages
    report["tool_version"] = __version__
    text = matio.dump_report(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    print(summary, file=sys.stderr)
    return 0


def _default_kcap(args, A) -> int:
    m, n = A.shape
    kcap = args.kcap if args.kcap is not None else min(m, n - 1)
    if kcap < 0:
        raise _UsageError("--kcap must be nonnegative")
    return min(kcap, n - 1)


def _cmd_width(args) -> int:
    timings = _Timings()
    with timings.measure("load"):
        A, matrix_id = _load(args)
    report = _base_report(A, matrix_id, args.tol)
    with timings.measure("width"):
        basis = linalg.null_space_basis(A)
        w = width.gamma_width(basis, threads=args.threads)
    report["gamma"] = w.gamma
    report["k1"] = w.k1
    with timings.measure("coherence"):
        _add_coherence(report, A, args.tol)
    return _emit(report, args, timings, f"gamma={w.gamma:.12g} k1={w.k1}")


def _cmd_coherence(args) -> int:
    timings = _Timings()
    with timings.measure("load"):
        A, matrix_id = _load(args)
    report = _base_report(A, matrix_id, args.tol)
    with timings.measure("coherence"):
        coh = coherence.coherence(A, args.tol)
    report["M"] = coh.M
    report["k2"] = coh.k2
    return _emit(report, args, timings, f"M={coh.M:.12g} k2={coh.k2}")


def _cmd_balanced(args) -> int:
    timings = _Timings()
    with timings.measure("load"):
        A, matrix_id = _load(args)
    report = _base_report(A, matrix_id, args.tol)
    with timings.measure("coherence"):
        _add_coherence(report, A, args.tol)
    with timings.measure("balanced"):
        basis = linalg.null_space_basis(A)
        bal = cert.max_certified_k(basis, _default_kcap(args, A), threads=args.threads)
    report["k_star"] = bal.k_star
    report["balance"] = _balance_details(bal)
    return _emit(report, args, timings, f"k_star={bal.k_star}")


def _balance_details(bal: cert.BalancednessReport) -> dict:
    details = {"strict_margin": bal.strict_margin, "worst_mu": bal.worst_mu}
    if bal.worst_partition is not None:
        details["worst_support"] = list(bal.worst_partition.support)
    return details


def _cmd_certify(args) -> int:
    timings = _Timings()
    with timings.measure("load"):
        A, matrix_id = _load(args)
    report = _base_report(A, matrix_id, args.tol)
    with timings.measure("width"):
        basis = linalg.null_space_basis(A)
        w = width.gamma_width(basis, threads=args.threads)
    report["gamma"] = w.gamma
    report["k1"] = w.k1
    with timings.measure("coherence"):
        _add_coherence(report, A, args.tol)
    if "M" in report:
        report["theorem3_holds"] = 1.0 + 1.0 / report["M"] <= w.gamma + 1e-8
    with timings.measure("balanced"):
        bal = cert.max_certified_k(basis, _default_kcap(args, A), threads=args.threads)
    report["k_star"] = bal.k_star
    report["balance"] = _balance_details(bal)
    summary = f"gamma={w.gamma:.12g} k1={w.k1} k_star={bal.k_star}"
    if "k2" in report:
        summary += f" M={report['M']:.12g} k2={report['k2']}"
    return _emit(report, args, timings, summary)


def _cmd_recover(args) -> int:
    timings = _Timings()
    with timings.measure("load"):
        A, matrix_id = _load(args)
    report = _base_report(A, matrix_id, args.tol)
    with timings.measure("coherence"):
        _add_coherence(report, A, args.tol)
    kcap = max(1, _default_kcap(args, A))
    rates = {}
    with timings.measure("recover"):
        for k in range(1, kcap + 1):
            rates[str(k)] = cert.recovery_experiment(
                A, k, args.mode, args.trials, args.seed, threads=args.threads
            )
    report["recovery"] = {
        "mode": args.mode,
        "trials": args.trials,
        "seed": args.seed,
        "rates": rates,
    }
    summary = " ".join(f"k={k}:{rate:.3f}" for k, rate in rates.items())
    return _emit(report, args, timings, f"success rates {summary}")


if __name__ == "__main__":
    main()
