"""
ncbv command line interface

Exit codes: 0 when every check passes, 1 when a check fails, 2 on bad
input (unreadable or invalid files, parse errors, sizes above the cap).
"""
import argparse
from logging import getLogger
import sys
import textwrap
import time

from . import __version__ as VERSION
from . import BUILD_DATE, COMMIT_ID
from .bvcalculus import qme_residual
from .equivariant import LieElement, build_lagrangian, equivariant_qme_residual
from .logsetup import setup_logging
from .matrixrealization import MatrixModel
from .morita import MoritaMap
from .ncbverrors import InputError, NcbvError
from .serialization import dump_report, load_input, parse_element, series_to_json
from .tracealgebra import SUPPORTED_ALGEBRAS, TraceAlgebra
from .verifysuites import SUITES, CheckResult, Report, make_config, run_suite

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


def _dimv(text):
    try:
        even, odd = (int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected two dimensions like 1,1, got {!r}".format(text)) from None
    return even, odd


def _algebra(spec, args):
    """
    The matrix algebra selected on the command line or in the input file
    """
    if args.algebra is not None:
        return TraceAlgebra.from_name("{}:{}".format(args.algebra, args.N or 1))
    if spec.matrix is not None:
        return spec.matrix.algebra
    return TraceAlgebra.from_name("{}:{}".format("q" if spec.fspace.shift else "gl", args.N or 1))


def _finish(report, args):
    print(report.summary())
    if args.json:
        dump_report(report, args.json)
    return EXIT_PASS if report.ok else EXIT_FAIL


def _single(name, args, checks, start):
    config = {key: value for key, value in sorted(vars(args).items()) if key not in ("func", "verbose")}
    return Report(name, config, checks, time.perf_counter() - start)


def cmd_verify(args):
    config = make_config(dimv=args.dimv, max_letters=args.max_letters, n=args.n, N=args.N, order=args.order,
                         seed=args.seed, cap=args.cap, random_count=args.random_count, algebra=args.algebra,
                         jobs=args.jobs)
    return _finish(run_suite(args.suite, config), args)


def cmd_operad_verify(args):
    config = make_config(n=args.n, N=args.N, seed=args.seed, cap=args.cap, algebra=args.algebra)
    return _finish(run_suite("operads", config), args)


def cmd_expand(args):
    spec = load_input(args.input)
    element = parse_element(spec.fspace, args.expression)
    model = MatrixModel(spec.fspace, None, _algebra(spec, args))
    print(model.mu(element))
    return EXIT_PASS


def _solution(spec):
    if spec.solution is None:
        raise InputError("input has no solution terms")
    return spec.solution


def _xi(spec, model):
    if spec.matrix is None or spec.matrix.xi is None:
        return None
    return LieElement.from_matrix(model.algebra, spec.matrix.xi, 1)


def cmd_master_check(args):
    start = time.perf_counter()
    spec = load_input(args.input)
    series = _solution(spec)
    report = qme_residual(series, spec.pairing, args.order)
    checks = [CheckResult("master-equation", report.satisfied, "to h^{}".format(args.order),
                          None if report.satisfied else series_to_json(report.residual))]
    if spec.matrix is not None and spec.matrix.xi is not None:
        model = MatrixModel(spec.fspace, spec.pairing, spec.matrix.algebra)
        equivariant = equivariant_qme_residual(model, series, _xi(spec, model), args.order)
        checks.append(CheckResult("equivariant-master-equation/{}".format(model.algebra.name),
                                  equivariant.satisfied, "to h^{}".format(args.order),
                                  None if equivariant.satisfied else series_to_json(equivariant.residual)))
    return _finish(_single("master-check", args, checks, start), args)


def cmd_morita(args):
    start = time.perf_counter()
    spec = load_input(args.input)
    morita = MoritaMap(spec.pairing, TraceAlgebra.from_name(args.factor))
    print("# {} letters, {} flavor".format(len(morita.target.space), morita.target.flavor))
    checks = []
    if args.expression:
        print(morita.apply(parse_element(spec.fspace, args.expression)))
    if spec.solution is not None:
        transported = spec.solution.map(morita.apply)
        for exponent, value in transported.items():
            print("h^{}: {}".format(exponent, value))
        report = qme_residual(transported, morita.target_pairing, args.order)
        checks.append(CheckResult("transport/{}".format(morita.algebra.name), report.satisfied,
                                  "to h^{}".format(args.order),
                                  None if report.satisfied else series_to_json(report.residual)))
    return _finish(_single("morita", args, checks, start), args)


def cmd_lagrangian(args):
    start = time.perf_counter()
    spec = load_input(args.input)
    if spec.matrix is None or spec.matrix.xi is None:
        raise InputError("lagrangian needs matrix parameters with xi")
    model = MatrixModel(spec.fspace, spec.pairing, spec.matrix.algebra)
    lagrangian = build_lagrangian(model, _solution(spec), _xi(spec, model), args.order)
    print("quadratic: {}".format(lagrangian.quadratic))
    for exponent, value in lagrangian.potential.items():
        print("potential h^{}: {}".format(exponent, value))
    report = lagrangian.report
    checks = [CheckResult("equivariant-closedness/{}".format(model.algebra.name), report.satisfied,
                          "to h^{}".format(args.order),
                          None if report.satisfied else series_to_json(report.residual))]
    return _finish(_single("lagrangian", args, checks, start), args)


def _add_sizes(parser, letters=True):
    parser.add_argument("--n", type=int, help="number of letters for the sweeps")
    parser.add_argument("--N", type=int, help="matrix size (default: n)")
    parser.add_argument("--algebra", choices=["gl", "q"],
                        help="restrict to gl(N|N) with the odd pairing or q(N) with the even pairing")
    parser.add_argument("--seed", type=int, help="seed for the randomized checks")
    parser.add_argument("--cap", type=int, help="upper bound for the letter count and matrix size")
    if letters:
        parser.add_argument("--max-letters", type=int, help="largest letter count of the delta-squared sweep")


def _add_json(parser):
    parser.add_argument("--json", metavar="PATH", help="write a JSON report")


def _parser():
    parser = argparse.ArgumentParser(
        formatter_class=argparse.RawDescriptionHelpFormatter,
        description=textwrap.dedent('''\
    ncbv: exact checks of the noncommutative BV calculus

    Basic usage:
        - ncbv verify all
        - ncbv verify correspondence --n 4 --N 4
        - ncbv expand input.json "(a b)" --algebra gl --N 1
        - ncbv master-check input.json --order 2
            '''),
        epilog=textwrap.dedent('''\
    Matrix algebras for --factor: {}
            '''.format("; ".join(SUPPORTED_ALGEBRAS.values()))))
    parser.add_argument("-v", "--verbose", default="warning",
                        choices=["debug", "info", "warning", "error", "critical"],
                        help="Logging verbosity level")
    parser.add_argument("-V", "--version", action="store_true", help="Print ncbv version number and exit")
    subparsers = parser.add_subparsers(dest="command")

    verify = subparsers.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", help="one of {}".format(", ".join(list(SUITES) + ["all"])))
    _add_sizes(verify)
    verify.add_argument("--dimv", type=_dimv, help="dimensions of V as EVEN,ODD")
    verify.add_argument("--order", type=int, help="highest power of h checked")
    verify.add_argument("--random-count", type=int, help="number of random samples per check")
    verify.add_argument("--jobs", type=int, help="checks run in parallel")
    _add_json(verify)
    verify.set_defaults(func=cmd_verify)

    operad = subparsers.add_parser("operad-verify", help="compare operad contractions with trace contractions")
    _add_sizes(operad, letters=False)
    _add_json(operad)
    operad.set_defaults(func=cmd_operad_verify)

    expand = subparsers.add_parser("expand", help="print the trace polynomial of an expression")
    expand.add_argument("input", help="input JSON file")
    expand.add_argument("expression", help='element such as "2/3 (a b)(c) - (b)"')
    expand.add_argument("--N", type=int, help="matrix size (default 1)")
    expand.add_argument("--algebra", choices=["gl", "q"], help="matrix algebra (default from the input)")
    expand.set_defaults(func=cmd_expand)

    master = subparsers.add_parser("master-check", help="check the quantum master equation")
    master.add_argument("input", help="input JSON file")
    master.add_argument("--order", type=int, default=2, help="highest power of h checked")
    _add_json(master)
    master.set_defaults(func=cmd_master_check)

    morita = subparsers.add_parser("morita", help="transport along a Morita map")
    morita.add_argument("input", help="input JSON file")
    morita.add_argument("--factor", required=True, help="matrix algebra, for example gl:1:1 or q1")
    morita.add_argument("--expression", help="element to transport")
    morita.add_argument("--order", type=int, default=2, help="highest power of h checked")
    _add_json(morita)
    morita.set_defaults(func=cmd_morita)

    lagrangian = subparsers.add_parser("lagrangian", help="assemble and check the matrix lagrangian")
    lagrangian.add_argument("input", help="input JSON file with matrix parameters")
    lagrangian.add_argument("--order", type=int, default=2, help="highest power of h checked")
    _add_json(lagrangian)
    lagrangian.set_defaults(func=cmd_lagrangian)
    return parser


def main(argv=None):
    """
    Entrypoint for the ncbv console script

    :return: Exit code
    """
    parser = _parser()
    args = parser.parse_args(argv)
    setup_logging(args.verbose.upper())
    logger = getLogger(__name__)

    if args.version:
        print("ncbv version {}".format(VERSION))
        print("Build date: {}, commit: {}".format(BUILD_DATE, COMMIT_ID))
        return EXIT_PASS
    if args.command is None:
        parser.print_help()
        return EXIT_INPUT

    try:
        return args.func(args)
    except NcbvError as error:
        logger.debug("Stopped on %s", type(error).__name__, exc_info=True)
        print("error: {}".format(error), file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
