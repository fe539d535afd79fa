"""
Verification suites

Each suite turns a configuration into a list of named checks. A check is a
function without arguments returning a :class:`CheckResult`; the runner
executes them on a thread pool and assembles a :class:`Report` in the
order the suite listed them.
"""
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from logging import getLogger
import random
import time

from sympy.combinatorics import Permutation

from .bvcalculus import HSeries, cubic_action_from_algebra, delta, exactness_check
from .cyclicspace import EVEN_PAIRING, FLAVORS, ODD_PAIRING, FElement, FSpace, monomial_basis, random_element
from .derham import DForm, OddFourier, d_dr
from .equivariant import (block_xi, build_lagrangian, cartan_homotopy_check, equivariant_closedness_check,
                          hamiltonian, lie_bracket, random_lie_element)
from .gradedcore import GradedSpace, PairingForm, forms_congruent, parity_sign
from .matrixrealization import MatrixModel
from .morita import MoritaMap, verify_solution_transport
from .ncbverrors import DimensionCapError, InputError
from .operads import (PermTensor, TwistedPermTensor, all_permutations, contract_comb, contract_oracle,
                      printed_rule_discrepancies, realize)
from .tracealgebra import TraceAlgebra

logger = getLogger(__name__)

DEFAULT_CONFIG = {
    # Dimensions (even, odd) of V
    "dimv": (1, 1),
    # Largest letter count of the delta-squared sweep
    "max_letters": 6,
    # Letter count of the other sweeps
    "n": 4,
    # Matrix size, None for N = n
    "N": None,
    "order": 2,
    "seed": 0,
    # Upper bound for n, max_letters and N
    "cap": 6,
    "random_count": 20,
    # Restrict to "gl" (odd-pairing flavor) or "q" (even-pairing flavor)
    "algebra": None,
    "jobs": 1,
}

CheckResult = namedtuple("CheckResult", "name ok detail counterexample")

# Tr(Id) of gl(3|0); the trace map is injective on F_n for n <= 3 there
EXACTNESS_EMPTY_TRACE = 3


class Report:
    """
    Outcome of one suite run

    :param suite: Suite name
    :param config: Configuration the suite ran with
    :param checks: CheckResult list
    :param elapsed: Wall clock seconds
    """
    def __init__(self, suite, config, checks, elapsed):
        self.suite = suite
        self.config = config
        self.checks = checks
        self.elapsed = elapsed

    @property
    def ok(self):
        return all(check.ok for check in self.checks)

    def failures(self):
        return [check for check in self.checks if not check.ok]

    def as_dict(self):
        return {
            "suite": self.suite,
            "ok": self.ok,
            "config": {key: list(value) if isinstance(value, tuple) else value
                       for key, value in sorted(self.config.items())},
            "checks": [check._asdict() for check in self.checks],
            "elapsed_seconds": round(self.elapsed, 3),
        }

    def summary(self):
        lines = ["{}: {}".format(self.suite, "pass" if self.ok else "FAIL")]
        for check in self.checks:
            lines.append("  {:<48} {}  {}".format(check.name, "ok  " if check.ok else "FAIL", check.detail))
        return "\n".join(lines)


def make_config(**overrides):
    """
    DEFAULT_CONFIG updated with the given values; None values are ignored
    """
    config = dict(DEFAULT_CONFIG)
    config.update({key: value for key, value in overrides.items() if value is not None})
    validate_config(config)
    return config


def validate_config(config):
    """
    :raises InputError: on malformed values
    :raises DimensionCapError: if a size exceeds the configured cap
    """
    dimv = tuple(config["dimv"])
    if len(dimv) != 2 or min(dimv) < 0 or sum(dimv) == 0:
        raise InputError("dimv needs two nonnegative dimensions, got {!r}".format(config["dimv"]))
    config["dimv"] = dimv
    if config["algebra"] not in (None, "gl", "q"):
        raise InputError("algebra must be gl or q, got {!r}".format(config["algebra"]))
    if config["order"] < 0 or config["random_count"] < 0 or config["jobs"] < 1:
        raise InputError("order, random_count and jobs must be nonnegative")
    for key in ("n", "max_letters", "N"):
        value = config[key]
        if value is None:
            continue
        if value < 1:
            raise InputError("{} must be positive".format(key))
        if value > config["cap"]:
            raise DimensionCapError(value, "{} = {} exceeds the cap {}".format(key, value, config["cap"]))


def matrix_size(config, default=None):
    return config["N"] or default or config["n"]


def flavors(config):
    """
    The flavors selected by the algebra option
    """
    return {None: FLAVORS, "gl": (ODD_PAIRING,), "q": (EVEN_PAIRING,)}[config["algebra"]]


def algebra_for(flavor, size):
    return TraceAlgebra.gl(size) if flavor == ODD_PAIRING else TraceAlgebra.q(size)


def standard_space(dimv, flavor):
    """
    V with basis x0, x1, ... (even) and y0, y1, ... (odd) and a standard pairing

    The odd pairing pairs x_i with y_i. The even pairing is the identity on
    the even part and symplectic on the odd part, whose dimension is
    rounded up to an even number.

    :return: (FSpace, PairingForm)
    :raises InputError: if an odd pairing is asked for unequal dimensions
    """
    even, odd = dimv
    if flavor == ODD_PAIRING and even != odd:
        raise InputError("an odd pairing needs dim even = dim odd, got {}|{}".format(even, odd))
    if flavor == EVEN_PAIRING and odd % 2:
        logger.info("Even pairing on %d|%d needs an even odd part, using %d|%d", even, odd, even, odd + 1)
        odd += 1
    space = GradedSpace([("x{}".format(k), 0) for k in range(even)] + [("y{}".format(k), 1) for k in range(odd)])
    entries = {}
    if flavor == ODD_PAIRING:
        for k in range(even):
            entries[(k, even + k)] = 1
            entries[(even + k, k)] = 1
        pairing = PairingForm(space, 1, entries)
    else:
        for k in range(even):
            entries[(k, k)] = 1
        for k in range(0, odd, 2):
            entries[(even + k, even + k + 1)] = 1
            entries[(even + k + 1, even + k)] = -1
        pairing = PairingForm(space, 0, entries)
    return FSpace(space, flavor), pairing


def airy_solution():
    """
    The cubic solution of the one-dimensional algebra e e = e with l(e, e) = 1

    :return: (PairingForm, HSeries)
    """
    space = GradedSpace([("e", 0)])
    pairing = PairingForm(space, 0, {(0, 0): 1})
    cubic = cubic_action_from_algebra({("e", "e"): {"e": 1}}, pairing, EVEN_PAIRING)
    return pairing, HSeries({0: cubic})


def _passed(name, detail):
    return CheckResult(name, True, detail, None)


def _failed(name, detail, counterexample):
    logger.error("%s failed: %s", name, detail)
    return CheckResult(name, False, detail, counterexample)


def _elements(fspace, count):
    return [FElement(fspace, {term: 1}) for term in monomial_basis(fspace, count)]


def delta_squared_suite(config):
    """
    D(D(x)) = 0 on the monomial basis and on random elements

    The random sample also runs on (2|2) and, in the odd flavor, with empty
    cycles valued at EXACTNESS_EMPTY_TRACE.
    """
    checks = []
    for flavor in flavors(config):
        fspace, pairing = standard_space(config["dimv"], flavor)

        def sweep(fspace=fspace, pairing=pairing, flavor=flavor):
            name = "delta-squared/{}/basis".format(flavor)
            total = 0
            for count in range(4, config["max_letters"] + 1):
                for x in _elements(fspace, count):
                    total += 1
                    if delta(delta(x, pairing), pairing):
                        return _failed(name, "nonzero at {} letters".format(count), str(x))
            return _passed(name, "{} basis elements".format(total))
        checks.append(sweep)

        for dimv in sorted({tuple(config["dimv"]), (2, 2)}):
            def sample(dimv=dimv, flavor=flavor):
                name = "delta-squared/{}/random/{}|{}".format(flavor, *dimv)
                fspace, pairing = standard_space(dimv, flavor)
                traces = (0, EXACTNESS_EMPTY_TRACE) if flavor == ODD_PAIRING else (0,)
                rng = random.Random(config["seed"])
                for _ in range(config["random_count"]):
                    x = random_element(fspace, rng.randint(4, max(4, config["max_letters"])), rng)
                    for trace in traces:
                        if delta(delta(x, pairing, trace), pairing, trace):
                            return _failed(name, "nonzero on a random element with empty trace {}".format(trace),
                                           str(x))
                return _passed(name, "{} random elements".format(config["random_count"]))
            checks.append(sample)
    return checks


def correspondence_suite(config):
    """
    mu(D x) = D_matrix(mu(x)) for every basis element up to n letters
    """
    checks = []
    size = matrix_size(config)
    for flavor in flavors(config):
        def run(flavor=flavor):
            fspace, pairing = standard_space(config["dimv"], flavor)
            model = MatrixModel(fspace, pairing, algebra_for(flavor, size))
            name = "correspondence/{}".format(model.algebra.name)
            total = 0
            for count in range(1, config["n"] + 1):
                for x in _elements(fspace, count):
                    total += 1
                    report = model.correspondence_check(x)
                    if not report.ok:
                        return _failed(name, "mismatch at {} letters".format(count),
                                       {"element": str(x), "difference": str(report.difference)})
            return _passed(name, "{} basis elements".format(total))
        checks.append(run)
    return checks


def random_form(coordinates, rng, terms=4, degree=3):
    """
    Seeded random differential form in the given coordinates
    """
    size = len(coordinates)
    values = {}
    for _ in range(terms):
        differentials = tuple(sorted(rng.sample(range(size), rng.randint(0, min(2, size)))))
        monomial = tuple(sorted(rng.randrange(size) for _ in range(rng.randint(0, degree))))
        values[(differentials, monomial)] = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
    return DForm(coordinates, values)


def derham_suite(config):
    """
    Fourier transform intertwines the Laplacian with d; d^2 = 0; inverse round trip
    """
    checks = []
    size = matrix_size(config, 2)
    letters = min(config["n"], 3)
    for flavor in flavors(config):
        def run(flavor=flavor):
            fspace, pairing = standard_space(config["dimv"], flavor)
            model = MatrixModel(fspace, pairing, algebra_for(flavor, size))
            fourier = OddFourier(model)
            name = "derham/{}/intertwine".format(model.algebra.name)
            total = 0
            for count in range(1, letters + 1):
                for x in _elements(fspace, count):
                    total += 1
                    poly = model.mu(x)
                    if fourier.forward(model.delta(poly)) != d_dr(fourier.forward(poly)):
                        return _failed(name, "transform does not intertwine", str(x))
                    if fourier.inverse(fourier.forward(poly)) != poly:
                        return _failed(name, "inverse transform does not round trip", str(x))
            return _passed(name, "{} basis elements".format(total))

        def square(flavor=flavor):
            fspace, pairing = standard_space(config["dimv"], flavor)
            model = MatrixModel(fspace, pairing, algebra_for(flavor, size))
            fourier = OddFourier(model)
            name = "derham/{}/d-squared".format(model.algebra.name)
            rng = random.Random(config["seed"])
            for _ in range(config["random_count"]):
                form = random_form(fourier.even, rng)
                if d_dr(d_dr(form)):
                    return _failed(name, "d^2 is not zero", str(form))
            return _passed(name, "{} random forms".format(config["random_count"]))

        checks.extend([run, square])
    return checks


def exactness_suite(config):
    """
    dim ker D on F_n against rank D from F_{n+2} for n = 0..min(3, n)

    The odd flavor values empty cycles at EXACTNESS_EMPTY_TRACE and fails on
    any n with ker != im. The even flavor has odd empty cycles, hence no
    such value, and leaves one class uncovered in low degrees; it is
    reported only.
    """
    checks = []
    for flavor in flavors(config):
        def run(flavor=flavor):
            fspace, pairing = standard_space(config["dimv"], flavor)
            name = "exactness/{}".format(flavor)
            trace = EXACTNESS_EMPTY_TRACE if flavor == ODD_PAIRING else 0
            pieces = []
            for count in range(0, min(3, config["n"]) + 1):
                report = exactness_check(fspace, pairing, count, empty_trace=trace)
                pieces.append("n={} ker={} im={}{}".format(count, report.kernel, report.image,
                                                          "" if report.exact else " (not exact)"))
                if report.exact:
                    continue
                if flavor == ODD_PAIRING:
                    return _failed(name, "kernel {} and image {} differ on F_{}".format(
                        report.kernel, report.image, count), {"n": count, "kernel": report.kernel,
                                                              "image": report.image})
                logger.warning("Kernel %d and image %d differ on F_%d (%s flavor)", report.kernel,
                               report.image, count, flavor)
            return _passed(name, ", ".join(pieces))
        checks.append(run)
    return checks


def operad_suite(config):
    """
    Combinatorial contraction against the trace contraction for every permutation
    """
    checks = []
    count = config["n"]
    size = matrix_size(config)
    labels = ["f{}".format(k) for k in range(count)]
    kinds = {ODD_PAIRING: PermTensor, EVEN_PAIRING: TwistedPermTensor}
    for flavor in flavors(config):
        cls = kinds[flavor]

        def run(cls=cls):
            name = "operads/{}".format(cls.__name__)
            discrepancies = 0
            tensors = all_permutations(cls, labels)
            for tensor in tensors:
                realization = realize(tensor, size)
                discrepancies += len(printed_rule_discrepancies(tensor))
                for first in labels:
                    for second in labels:
                        if first == second:
                            continue
                        combinatorial = realize(contract_comb(tensor, first, second), size).poly
                        oracle = contract_oracle(realization, first, second).poly
                        if combinatorial != oracle:
                            return _failed(name, "contraction of ({}, {}) differs".format(first, second),
                                           {"tensor": str(tensor.element), "difference": str(combinatorial - oracle)})
            return _passed(name, "{} permutations, {} printed-rule discrepancies logged".format(
                len(tensors), discrepancies))
        checks.append(run)

    if TwistedPermTensor in (kinds[flavor] for flavor in flavors(config)):
        def orientation():
            name = "operads/orientation-sign"
            for tensor in all_permutations(TwistedPermTensor, labels):
                for cycles, value in tensor.permutations():
                    reversed_order = TwistedPermTensor.from_cycles(labels, list(reversed(cycles)), value)
                    sign = Permutation(list(reversed(range(len(cycles))))).signature()
                    if reversed_order != tensor.scale(sign):
                        return _failed(name, "reversing the cycles does not give the permutation sign",
                                       str(tensor.element))
            return _passed(name, "cycle order sign matches the signature")
        checks.append(orientation)
    return checks


def morita_suite(config):
    """
    Transport of the cubic solution, composition and the super-Morita pairing congruence
    """
    order = config["order"]
    checks = []
    for algebra in (TraceAlgebra.gl(1), TraceAlgebra.gl(2, 0), TraceAlgebra.q1()):
        def transport(algebra=algebra):
            pairing, series = airy_solution()
            morita = MoritaMap(pairing, algebra)
            report = verify_solution_transport(series, morita, order)
            name = "morita/transport/{}".format(algebra.name)
            if not report.satisfied:
                return _failed(name, "residual at h^{}".format(report.residual.lowest_order()), report.residual)
            return _passed(name, "{} -> {} flavor to h^{}".format(morita.source.flavor, morita.target.flavor, order))
        checks.append(transport)

    def composition():
        name = "morita/composition"
        pairing, series = airy_solution()
        first = MoritaMap(pairing, TraceAlgebra.gl(2, 0))
        second = MoritaMap(first.target_pairing, TraceAlgebra.gl(1, 0))
        direct = MoritaMap(pairing, TraceAlgebra.gl(2, 0).tensor(TraceAlgebra.gl(1, 0)))
        for x in (series[0], FElement.from_words(first.source, [["e"], ["e"]])):
            if second.apply(first.apply(x)).terms != direct.apply(x).terms:
                return _failed(name, "composite differs from the tensor product", str(x))
        return _passed(name, "gl(2|0) then gl(1|0) equals gl(2|0) x gl(1|0)")

    def congruence():
        name = "morita/super-pairing"
        _, tensor_pairing = TraceAlgebra.q(1).tensor(TraceAlgebra.q1()).pairing_space()
        _, gl_pairing = TraceAlgebra.gl(1).pairing_space()
        if not forms_congruent(tensor_pairing, gl_pairing):
            return _failed(name, "(q(1), otr) x (q(1), otr) is not congruent to (gl(1|1), str)", None)
        return _passed(name, "(q(1), otr) x (q(1), otr) ~ (gl(1|1), str)")

    def intertwine():
        name = "morita/delta/gl(1|1)"
        fspace, pairing = standard_space((1, 1), ODD_PAIRING)
        morita = MoritaMap(pairing, TraceAlgebra.gl(1))
        for count in range(1, min(config["n"], 4) + 1):
            for x in _elements(fspace, count):
                if morita.apply(delta(x, pairing)) != delta(morita.apply(x), morita.target_pairing):
                    return _failed(name, "Morita map does not commute with D", str(x))
        return _passed(name, "odd flavor basis up to {} letters".format(min(config["n"], 4)))

    checks.extend([composition, congruence, intertwine])
    return checks


def equivariant_suite(config):
    """
    Hamiltonians of the adjoint action: closedness, Cartan formula, Lie map, closed forms
    """
    checks = []
    size = min(matrix_size(config, 2), 2)
    for flavor in flavors(config):
        def run(flavor=flavor):
            fspace, pairing = standard_space(config["dimv"], flavor)
            algebra = algebra_for(flavor, size)
            model = MatrixModel(fspace, pairing, algebra)
            name = "equivariant/{}".format(algebra.name)
            rng = random.Random(config["seed"])
            for trial in range(config["random_count"]):
                gamma = random_lie_element(algebra, rng, parity=trial % 2, parameters=0)
                other = random_lie_element(algebra, rng, parity=rng.randint(0, 1), parameters=0)
                ham = hamiltonian(model, gamma)
                if model.delta(ham):
                    return _failed(name, "hamiltonian is not closed", repr(gamma))
                poly = model.mu(random_element(fspace, 3, rng))
                if not cartan_homotopy_check(model, gamma, poly):
                    return _failed(name, "Cartan homotopy formula fails", repr(gamma))
                expected = hamiltonian(model, lie_bracket(gamma, other)).scale(parity_sign(gamma.parity))
                if model.bracket(ham, hamiltonian(model, other)) != expected:
                    return _failed(name, "hamiltonians do not bracket like the Lie algebra",
                                   [repr(gamma), repr(other)])
            return _passed(name, "{} random elements".format(config["random_count"]))

        def closed(flavor=flavor):
            fspace, pairing = standard_space(config["dimv"], flavor)
            algebra = algebra_for(flavor, size)
            model = MatrixModel(fspace, pairing, algebra)
            name = "equivariant/{}/closed-form".format(algebra.name)
            rng = random.Random(config["seed"])
            for _ in range(max(1, config["random_count"] // 4)):
                psi = model.mu(delta(random_element(fspace, 4, rng), pairing))
                gamma = random_lie_element(algebra, rng, parity=1, parameters=2, odd_directions=False)
                if not equivariant_closedness_check(model, psi, gamma, 2):
                    return _failed(name, "exp(S_gamma) psi is not equivariantly closed", str(psi))
            return _passed(name, "two odd parameters")

        checks.extend([run, closed])
    return checks


def lagrangian_suite(config):
    """
    The lagrangian of the cubic solution is equivariantly closed in both shapes
    """
    size = matrix_size(config, 2)
    order = config["order"]
    checks = []
    if EVEN_PAIRING in flavors(config):
        def queer():
            name = "lagrangian/q({})".format(size)
            pairing, series = airy_solution()
            fspace = FSpace(pairing.space, EVEN_PAIRING)
            model = MatrixModel(fspace, pairing, TraceAlgebra.q(size))
            xi = random_lie_element(model.algebra, random.Random(config["seed"]), parity=1, parameters=0)
            lagrangian = build_lagrangian(model, series, xi, order)
            if not lagrangian.report.satisfied:
                return _failed(name, "equivariant master equation fails", lagrangian.report.residual)
            return _passed(name, "to h^{}".format(order))
        checks.append(queer)
    if ODD_PAIRING in flavors(config):
        def general():
            name = "lagrangian/gl({0}|{0})".format(size)
            pairing, series = airy_solution()
            morita = MoritaMap(pairing, TraceAlgebra.q1())
            model = MatrixModel(morita.target, morita.target_pairing, TraceAlgebra.gl(size))
            rng = random.Random(config["seed"])
            lam = [[Fraction(rng.randint(-3, 3)) for _ in range(size)] for _ in range(size)]
            lagrangian = build_lagrangian(model, series.map(morita.apply), block_xi(lam), order)
            if not lagrangian.report.satisfied:
                return _failed(name, "equivariant master equation fails", lagrangian.report.residual)
            return _passed(name, "to h^{}".format(order))
        checks.append(general)
    return checks


SUITES = {
    "delta-squared": delta_squared_suite,
    "correspondence": correspondence_suite,
    "derham": derham_suite,
    "exactness": exactness_suite,
    "operads": operad_suite,
    "morita": morita_suite,
    "equivariant": equivariant_suite,
    "lagrangian": lagrangian_suite,
}


def run_checks(checks, jobs=1):
    """
    Run check functions concurrently, keeping their order
    """
    with ThreadPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(lambda check: check(), checks))


def run_suite(name, config):
    """
    Run a named suite, or every suite for "all"

    :raises InputError: on an unknown suite name
    :rtype: Report
    """
    if name != "all" and name not in SUITES:
        raise InputError("unknown suite {!r}; choose from {}".format(name, ", ".join(list(SUITES) + ["all"])))
    names = list(SUITES) if name == "all" else [name]
    start = time.perf_counter()
    checks = []
    for suite in names:
        logger.info("Running suite %s", suite)
        checks.extend(SUITES[suite](config))
    results = run_checks(checks, config["jobs"])
    report = Report(name, config, results, time.perf_counter() - start)
    logger.info("Suite %s finished in %.1f s: %s", name, report.elapsed, "pass" if report.ok else "FAIL")
    return report
