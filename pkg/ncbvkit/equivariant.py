"""
Equivariant calculus for the adjoint action on matrix models

Elements of the trace algebra act on the coordinates of a matrix model by
X -> [gamma, X]. Every such action has a quadratic hamiltonian S_gamma in
the coordinates; the Laplacian relates the two through the Cartan
homotopy formula, and exp(S_gamma) turns Laplacian-closed invariant
polynomials into equivariantly closed ones.

Odd directions of the Lie algebra carry formal odd parameters t[k] so that
every exponential series stops after finitely many terms.
"""
from collections import namedtuple
from fractions import Fraction
from logging import getLogger

from .bvcalculus import HSeries, QMEReport, master_residual
from .gradedcore import ZERO, casimir_sign, pairing_inverse, parity_sign, swap_sign
from .matrixrealization import element_product
from .ncbverrors import AlgebraError, InputError
from .spoly import SPoly, Var
from .tracealgebra import TraceAlgebra

logger = getLogger(__name__)

Lagrangian = namedtuple("Lagrangian", "quadratic potential zeta report")


class LieElement:
    """
    Homogeneous element of a trace algebra with polynomial coefficients

    :param algebra: The algebra
    :type algebra: TraceAlgebra
    :param coefficients: Map basis index to SPoly (or scalar)
    :param parity: Total parity; the coefficient of e_i has parity parity + |e_i|
    :raises AlgebraError: if a coefficient has the wrong parity
    """
    def __init__(self, algebra, coefficients, parity):
        self.algebra = algebra
        self.parity = int(parity) % 2
        self.coefficients = {}
        for index, value in coefficients.items():
            if not isinstance(value, SPoly):
                value = SPoly.constant(value)
            if not value:
                continue
            for monomial in value.terms:
                if (sum(var.parity for var in monomial) + algebra.parities[index]) % 2 != self.parity:
                    raise AlgebraError("coefficient of {} has the wrong parity for a {} element".format(
                        algebra.names[index], "odd" if self.parity else "even"))
            self.coefficients[index] = value

    @classmethod
    def from_matrix(cls, algebra, rows, parity):
        """
        Element given by its supermatrix

        :raises AlgebraError: if the matrix is not in the algebra
        """
        rows = [[value if value is None or isinstance(value, SPoly) else SPoly.constant(value) for value in row]
                for row in rows]
        return cls(algebra, algebra.coordinates(rows, zero=SPoly()), parity)

    def __bool__(self):
        return bool(self.coefficients)

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.algebra.name == other.algebra.name and self.parity == other.parity \
            and self.coefficients == other.coefficients

    __hash__ = None

    def __add__(self, other):
        result = dict(self.coefficients)
        for index, value in other.coefficients.items():
            result[index] = result[index] + value if index in result else value
        return LieElement(self.algebra, result, self.parity)

    def scale(self, factor):
        return LieElement(self.algebra, {index: value.scale(factor) for index, value in self.coefficients.items()},
                          self.parity)

    def __mul__(self, other):
        return LieElement(self.algebra, element_product(self.algebra, self.coefficients, other.coefficients),
                          self.parity + other.parity)

    def is_scalar(self):
        return all(not monomial for value in self.coefficients.values() for monomial in value.terms)

    def __repr__(self):
        return "LieElement({}, {{{}}})".format(self.algebra.name, ", ".join(
            "{}: {}".format(self.algebra.names[index], value) for index, value in sorted(self.coefficients.items())))


def lie_bracket(first, second):
    """
    Graded commutator [a, b] = ab - (-1)^{|a||b|} ba
    """
    return first * second + (second * first).scale(-swap_sign(first.parity, second.parity))


def square(element):
    return element * element


def random_lie_element(algebra, rng, parity=1, parameters=2, odd_directions=True, scale=3, name="t"):
    """
    Seeded random element with odd parameters t[0], t[1], ...

    Even elements get rational coefficients on even basis elements and
    parameter combinations on odd ones; odd elements get parameter
    combinations on even basis elements and, if odd_directions, rational
    coefficients on odd ones.
    """
    params = [Var(name, (k,), 1) for k in range(parameters)]

    def combination():
        total = SPoly()
        for param in params:
            total = total + SPoly.variable(param).scale(rng.randint(-scale, scale))
        return total

    coefficients = {}
    for index, basis_parity in enumerate(algebra.parities):
        if basis_parity == parity:
            if parity == 0 or odd_directions:
                coefficients[index] = SPoly.constant(Fraction(rng.randint(-scale, scale), rng.randint(1, scale)))
        else:
            coefficients[index] = combination()
    return LieElement(algebra, coefficients, parity)


def block_xi(lam):
    """
    The odd gl(n|n) element [[0, 1], [lam, 0]]

    Its square is the block-diagonal diag(lam, lam).
    """
    size = len(lam)
    algebra = TraceAlgebra.gl(size)
    rows = [[None] * (2 * size) for _ in range(2 * size)]
    for k in range(size):
        rows[k][size + k] = 1
        for m in range(size):
            if lam[k][m]:
                rows[size + k][m] = Fraction(lam[k][m])
    return LieElement.from_matrix(algebra, rows, 1)


def _check(model, gamma):
    if gamma.algebra.name != model.algebra.name:
        raise AlgebraError("element of {} cannot act on a model over {}".format(gamma.algebra.name,
                                                                             model.algebra.name))


def adjoint_action(model, gamma, poly):
    """
    Lie derivative of a coordinate polynomial along X -> [gamma, X]
    """
    _check(model, gamma)
    return model.adjoint_action(gamma, poly)


def hamiltonian(model, gamma):
    """
    Quadratic hamiltonian S_gamma of the adjoint action of gamma

    S_gamma = -1/2 sum_{a,b} s_b W_{ba} z_a L(z_b), with W the inverse of the
    Casimir pairing and s_b = (-1)^{|z_b|(|gamma| + 1)}. Its parity is |gamma| + 1.

    With this sign {S_a, S_b} = (-1)^{|a|} S_[a,b].
    """
    _check(model, gamma)
    algebra = model.algebra
    fspace = model.fspace
    inverse = pairing_inverse(model.pairing)
    tau = algebra.trace_parity
    images = model.adjoint_images(gamma)
    result = SPoly()
    for var_b, image in images.items():
        y, j = model.coordinates[var_b]
        even = fspace.letter_parity(y)
        sigma = casimir_sign(even, algebra.parities[j], tau)
        sign = swap_sign(var_b.parity, gamma.parity + 1)
        column = SPoly()
        for x in range(len(fspace.space)):
            letter = inverse.value(y, x)
            if not letter:
                continue
            for i in range(len(algebra)):
                gram = algebra.gram.get((j, i), ZERO)
                if gram:
                    column = column + SPoly.variable(model.var(x, i)).scale(sigma * letter * gram)
        result = result + (column * image).scale(sign)
    return result.scale(Fraction(-1, 2))


def cartan_homotopy_check(model, gamma, poly):
    """
    Check D(S P) - (-1)^{|S|} S D(P) = -L(P) for S the hamiltonian of gamma
    """
    ham = hamiltonian(model, gamma)
    sign = parity_sign(gamma.parity + 1)
    left = model.delta(ham * poly) - (ham * model.delta(poly)).scale(sign)
    right = -adjoint_action(model, gamma, poly)
    if left != right:
        logger.error("Cartan homotopy formula fails for %r", gamma)
    return left == right


def exponential(poly, order):
    """
    exp(P) for a nilpotent even P

    :raises InputError: if P^(order+1) does not vanish
    """
    result = SPoly.constant(1)
    power = SPoly.constant(1)
    for k in range(1, order + 2):
        power = (power * poly).scale(Fraction(1, k))
        if not power:
            return result
        if k > order:
            break
        result = result + power
    raise InputError("exponential does not terminate by order {}".format(order))


def equivariant_closedness_check(model, psi, gamma, order):
    """
    Check (D + S_zeta)(exp(S_gamma) psi) = 0 with zeta = gamma^2

    :param gamma: Odd element whose hamiltonian is nilpotent
    :raises AlgebraError: if psi is not Laplacian closed or gamma is not odd
    """
    if model.delta(psi):
        raise AlgebraError("psi is not closed under the Laplacian")
    if gamma.parity != 1:
        raise AlgebraError("equivariant closedness needs an odd element")
    zeta = square(gamma)
    form = exponential(hamiltonian(model, gamma), order) * psi
    residual = model.delta(form) + hamiltonian(model, zeta) * form
    if residual:
        logger.error("Equivariant closedness fails with %d residual monomials", len(residual.terms))
    return not residual


def equivariant_qme_residual(model, series, gamma, order):
    """
    h D(T) + 1/2 {T, T} + h^2 S_zeta with T = mu(S) + h S_gamma and zeta = 1/2 [gamma, gamma]

    :param series: S as an HSeries of FElements
    :rtype: QMEReport
    """
    _check(model, gamma)
    total = series.map(model.mu)
    if gamma:
        total = total + HSeries({1: hamiltonian(model, gamma)})
    residual = master_residual(total, model.delta, model.bracket, order)
    zeta = lie_bracket(gamma, gamma).scale(Fraction(1, 2))
    if zeta and order >= 2:
        residual = residual + HSeries({2: hamiltonian(model, zeta)}, order)
    satisfied = not residual
    if not satisfied:
        logger.info("Equivariant master equation fails at h^%d", residual.lowest_order())
    return QMEReport(residual, order, satisfied)


def build_lagrangian(model, series, xi, order):
    """
    Quadratic and potential parts of the matrix lagrangian

    :param xi: Odd element with rational coefficients
    :raises AlgebraError: if xi is not odd, has parameters, or its square disagrees with 1/2 [xi, xi]
    """
    _check(model, xi)
    if xi.parity != 1 or not xi.is_scalar():
        raise AlgebraError("lagrangian needs an odd element with rational entries")
    zeta = lie_bracket(xi, xi).scale(Fraction(1, 2))
    if zeta != square(xi):
        raise AlgebraError("1/2 [xi, xi] differs from xi^2")
    quadratic = hamiltonian(model, xi)
    potential = series.map(model.mu)
    report = equivariant_qme_residual(model, series, xi, order)
    return Lagrangian(quadratic, potential, zeta, report)
