"""
Odd Fourier transform to differential forms on the even coordinates

Every odd coordinate theta of a matrix model pairs with exactly one even
coordinate u under the Casimir form when the letter pairing is in Darboux
form. The transform replaces theta by the contraction with the vector
field d/du in the constant volume form of all even coordinates, which
turns the odd Laplacian into the de Rham differential.
"""
from collections import namedtuple
from fractions import Fraction
from logging import getLogger

from .cyclicspace import substitute
from .gradedcore import (PairingForm, ZERO, congruence_normal_form, congruent_image, diagonalize_symmetric,
                         exact_inverse, parity_sign)
from .ncbverrors import DegeneratePairingError, PairingError
from .spoly import SPoly

logger = getLogger(__name__)

DarbouxBasis = namedtuple("DarbouxBasis", "transform inverse standard")


class DForm:
    """
    Polynomial differential form in the even coordinates of a model

    Terms map (sorted tuple of differential positions, sorted tuple of
    polynomial positions) to coefficients; positions index the even
    coordinates in variable order.

    :param coordinates: Even coordinates in order
    :param terms: Map (differentials, monomial) to coefficient
    """
    __slots__ = ("coordinates", "terms")

    def __init__(self, coordinates, terms=None):
        self.coordinates = coordinates
        self.terms = {key: Fraction(value) for key, value in (terms or {}).items() if value}

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, DForm):
            return self.coordinates == other.coordinates and self.terms == other.terms
        return not self.terms if other == 0 else NotImplemented

    __hash__ = None

    def __add__(self, other):
        result = dict(self.terms)
        for key, value in other.terms.items():
            result[key] = result.get(key, ZERO) + value
        return DForm(self.coordinates, result)

    def __neg__(self):
        return DForm(self.coordinates, {key: -value for key, value in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        return DForm(self.coordinates, {key: factor * value for key, value in self.terms.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for (differentials, monomial), value in sorted(self.terms.items()):
            poly = " ".join(str(self.coordinates[k]) for k in monomial)
            form = "^".join("d{}".format(self.coordinates[k]) for k in differentials)
            pieces.append("{} {} {}".format(value, poly, form).replace("  ", " ").strip())
        return " + ".join(pieces)


def _contract(position, differentials):
    """
    Interior product with d/du_position, as (sign, remaining) or None
    """
    if position not in differentials:
        return None
    slot = differentials.index(position)
    return parity_sign(slot), differentials[:slot] + differentials[slot + 1:]


class OddFourier:
    """
    The odd Fourier transform of one matrix model

    :param model: Matrix model whose letter pairing is in Darboux form
    :type model: MatrixModel
    :raises PairingError: if an odd coordinate lacks a unique even partner
    """
    def __init__(self, model):
        self.logger = getLogger(__name__)
        self.model = model
        variables = sorted(model.coordinates)
        self.even = tuple(var for var in variables if not var.parity)
        odd = [var for var in variables if var.parity]
        self._position = {var: k for k, var in enumerate(self.even)}
        self.partner = {}
        self.weight = {}
        for theta in odd:
            partners = [u for u in self.even if model.omega(u, theta)]
            if len(partners) != 1:
                raise PairingError("pairing is not Darboux: {} has {} even partners".format(theta, len(partners)))
            self.partner[theta] = self._position[partners[0]]
            self.weight[theta] = model.omega(partners[0], theta)
        if len(set(self.partner.values())) != len(odd):
            raise PairingError("pairing is not Darboux: two odd coordinates share an even partner")
        self.theta_of = {position: theta for theta, position in self.partner.items()}
        self.volume = tuple(range(len(self.even)))

    def _image(self, monomial):
        """
        Transform of one SPoly monomial as (coefficient, differentials, polynomial part)
        """
        polynomial = tuple(sorted(self._position[var] for var in monomial if not var.parity))
        thetas = [var for var in monomial if var.parity]
        coefficient = Fraction(1)
        differentials = self.volume
        for theta in reversed(thetas):
            found = _contract(self.partner[theta], differentials)
            if found is None:
                return None
            sign, differentials = found
            coefficient *= sign * self.weight[theta]
        return coefficient, differentials, polynomial

    def forward(self, poly):
        """
        DForm of a coordinate polynomial
        """
        terms = {}
        for monomial, value in poly.terms.items():
            found = self._image(monomial)
            if found is None:
                continue
            coefficient, differentials, polynomial = found
            key = (differentials, polynomial)
            terms[key] = terms.get(key, ZERO) + value * coefficient
        return DForm(self.even, terms)

    def inverse(self, form):
        """
        Coordinate polynomial whose transform is the given form
        """
        result = {}
        for (differentials, polynomial), value in form.terms.items():
            missing = [k for k in self.volume if k not in differentials]
            factors = tuple(sorted([self.even[k] for k in polynomial] + [self.theta_of[k] for k in missing]))
            coefficient, image, _ = self._image(factors)
            if image != differentials:
                raise PairingError("form term {} is outside the image".format(differentials))
            result[factors] = result.get(factors, ZERO) + value / coefficient
        return SPoly(result)


def odd_fourier(poly, model):
    """
    Odd Fourier transform of a coordinate polynomial of a model
    """
    return OddFourier(model).forward(poly)


def inverse_fourier(form, model):
    """
    Inverse of :func:`odd_fourier`
    """
    return OddFourier(model).inverse(form)


def d_dr(form):
    """
    De Rham differential d(g du_S) = sum_j dg/du_j du_j ^ du_S
    """
    terms = {}
    for (differentials, monomial), value in form.terms.items():
        for position in sorted(set(monomial)):
            if position in differentials:
                continue
            multiplicity = monomial.count(position)
            slot = monomial.index(position)
            rest = monomial[:slot] + monomial[slot + 1:]
            before = sum(1 for k in differentials if k < position)
            merged = tuple(sorted(differentials + (position,)))
            key = (merged, rest)
            terms[key] = terms.get(key, ZERO) + value * multiplicity * parity_sign(before)
    return DForm(form.coordinates, terms)


def bigrading(form):
    """
    Set of (form degree, polynomial degree) pairs present in a form
    """
    return {(len(differentials), len(monomial)) for differentials, monomial in form.terms}


def intertwine_check(x, model):
    """
    True if the transform of the Laplacian equals d of the transform
    """
    fourier = OddFourier(model)
    poly = model.mu(x)
    left = fourier.forward(model.delta(poly))
    right = d_dr(fourier.forward(poly))
    if left != right:
        logger.error("Fourier transform does not intertwine on %s", x)
    return left == right


def _block(rows, indices):
    return [[rows[i][j] for j in indices] for i in indices]


def darboux_basis(pairing):
    """
    Rational change of basis bringing a pairing to standard form

    Odd pairings become l(x_i, x_{pi i}) = 1, pairing the i-th even with the
    i-th odd basis vector. Even pairings become diagonal on V0 (rational
    entries, not all equal to one) and symplectic pairs [[0, 1], [-1, 0]]
    on V1. The new basis vector b_k = sum_m T[m][k] a_m keeps the label of a_k.

    :return: DarbouxBasis(transform, inverse, standard form)
    :raises DegeneratePairingError: if the pairing is degenerate
    """
    pairing.check()
    space = pairing.space
    size = len(space)
    rows = pairing.rows()
    even = [k for k in range(size) if not space.parity(k)]
    odd = [k for k in range(size) if space.parity(k)]
    transform = [[ZERO] * size for _ in range(size)]
    if pairing.parity:
        for k in even:
            transform[k][k] = Fraction(1)
        inverse_block = exact_inverse([[rows[e][o] for o in odd] for e in even])
        for a, source in enumerate(odd):
            for b, target in enumerate(odd):
                transform[source][target] = inverse_block[a][b]
    else:
        columns, _ = diagonalize_symmetric(_block(rows, even)) if even else ([], [])
        for k, column in enumerate(columns):
            for m, value in enumerate(column):
                transform[even[m]][even[k]] = value
        if odd:
            planes = congruence_normal_form(_block(rows, odd), symmetric=False)
            if planes is None:
                raise DegeneratePairingError("odd block has no symplectic basis")
            for k, column in enumerate(planes):
                for m, value in enumerate(column):
                    transform[odd[m]][odd[k]] = value
    standard = PairingForm.from_rows(space, pairing.parity, congruent_image(rows, transform))
    logger.debug("Darboux transform found for %d basis vectors", size)
    return DarbouxBasis(transform, exact_inverse(transform), standard)


def pull_back(x, basis):
    """
    Rewrite an element in the letters of a Darboux basis

    a_m = sum_k inverse[k][m] b_k; the result is paired with basis.standard.
    """
    space = x.fspace.space
    images = {}
    for m, label in enumerate(space.labels):
        images[label] = [(basis.inverse[k][m], space.label(k)) for k in range(len(space)) if basis.inverse[k][m]]
    return substitute(x, images)

