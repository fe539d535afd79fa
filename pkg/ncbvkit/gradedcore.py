"""
Z/2-graded linear algebra over the rationals

Parities, the Koszul sign engine, graded spaces and graded-symmetric
pairing forms with their inverses. Every sign in the package is obtained
from :func:`koszul_sign`; the helpers :func:`reorder_sign` and
:func:`swap_sign` only translate common reorderings into its argument
format.
"""
from collections import namedtuple
from enum import IntEnum
from fractions import Fraction
from logging import getLogger
import math

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .ncbverrors import NcbvError, DegeneratePairingError, PairingError, UnknownLabelError, InputError

logger = getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


class Parity(IntEnum):
    """
    Parity of a homogeneous element, closed under addition mod 2
    """
    EVEN = 0
    ODD = 1

    def __add__(self, other):
        return Parity((int(self) + int(other)) % 2)

    __radd__ = __add__


def to_scalar(value):
    """
    Convert an int, Fraction or "p/q" string to an exact scalar

    :param value: Value to convert
    :type value: int or str or Fraction
    :return: The value in lowest terms
    :rtype: Fraction
    """
    if isinstance(value, float):
        raise InputError("floating point value {!r} is not an exact scalar".format(value))
    try:
        return Fraction(value)
    except (ValueError, TypeError) as error:
        raise InputError("not a rational number: {!r}".format(value)) from error


def format_scalar(value):
    """
    Format a scalar as "p" or "p/q"
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return "{}/{}".format(value.numerator, value.denominator)


def koszul_sign(items, permutation):
    """
    Koszul sign of permuting graded items

    Item ``i`` moves to position ``permutation[i]`` (positions count from
    zero). The sign is -1 raised to the number of inverted pairs of odd
    items.

    :param items: Parities of the items in their original order
    :type items: sequence of int or Parity
    :param permutation: New position of each item
    :type permutation: sequence of int
    :return: +1 or -1
    :rtype: int
    :raises ValueError: if the lengths differ or permutation is not a bijection
    """
    count = len(items)
    if count != len(permutation):
        raise ValueError("Koszul sign of {} items under a permutation of {} positions".format(
            count, len(permutation)))
    if sorted(permutation) != list(range(count)):
        raise ValueError("{!r} is not a permutation".format(permutation))
    odd = 0
    for i in range(count):
        if not items[i] % 2:
            continue
        target = permutation[i]
        for j in range(i + 1, count):
            if items[j] % 2 and target > permutation[j]:
                odd ^= 1
    return -1 if odd else 1


def reorder_sign(items, order):
    """
    Koszul sign of listing items in a new order

    :param items: Parities of the items in their original order
    :param order: Original indices listed in their new order
    :return: +1 or -1
    """
    permutation = [0] * len(order)
    for new, old in enumerate(order):
        permutation[old] = new
    return koszul_sign(items, permutation)


def swap_sign(first, second):
    """
    Koszul sign of exchanging two adjacent homogeneous blocks
    """
    return koszul_sign((first, second), (1, 0))


def parity_sign(parity):
    """
    (-1)^parity for an integer or Parity
    """
    return -1 if int(parity) % 2 else 1


def casimir_sign(letter, basis, trace_parity):
    """
    Sign carried by the Casimir pairing of a coordinate z_{y,j}

    (-1)^{|y||e_j| + |t|(|y| + |e_j| + 1)} for a letter y, a basis element
    e_j and a trace t. For the supertrace only the exchange of the letter
    with e_j is left.
    """
    return swap_sign(letter, basis) * swap_sign(trace_parity, letter + basis + 1)


class GradedSpace:
    """
    Finite Z/2-graded space with an ordered basis of labeled vectors

    The declaration order of the basis is the total order used for all
    canonical forms.

    :param basis: (label, parity) pairs
    :type basis: iterable
    """
    def __init__(self, basis):
        self.basis = tuple((label, Parity(int(parity) % 2)) for label, parity in basis)
        self._index = {}
        for position, (label, _) in enumerate(self.basis):
            if label in self._index:
                raise NcbvError("duplicate basis label {!r}".format(label))
            self._index[label] = position

    @property
    def labels(self):
        return tuple(label for label, _ in self.basis)

    @property
    def parities(self):
        return tuple(int(parity) for _, parity in self.basis)

    def index(self, label):
        """
        Position of a basis label

        :raises UnknownLabelError: if the label is not in the basis
        """
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabelError(label) from None

    def label(self, index):
        return self.basis[index][0]

    def parity(self, index):
        return int(self.basis[index][1])

    def dimensions(self):
        """
        Dimension pair (dim even, dim odd)
        """
        odd = sum(self.parities)
        return len(self.basis) - odd, odd

    def shifted(self):
        """
        The parity-shifted space with the same labels
        """
        return GradedSpace((label, int(parity) + 1) for label, parity in self.basis)

    def __len__(self):
        return len(self.basis)

    def __eq__(self, other):
        return isinstance(other, GradedSpace) and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        return "GradedSpace({!r})".format([(label, int(parity)) for label, parity in self.basis])


PairingReport = namedtuple("PairingReport", "ok reason cell")


class PairingForm:
    """
    Graded bilinear form on a graded space, stored sparsely

    :param space: Underlying graded space
    :type space: GradedSpace
    :param parity: Parity of the form
    :type parity: int
    :param entries: Map (row index, column index) to value
    :type entries: dict
    """
    def __init__(self, space, parity, entries):
        self.space = space
        self.parity = int(parity) % 2
        self.entries = {}
        for (row, col), value in entries.items():
            value = to_scalar(value)
            if value:
                self.entries[(row, col)] = value
        self._rows = None

    @classmethod
    def from_rows(cls, space, parity, rows):
        """
        Build a form from a full square matrix in basis order
        """
        if len(rows) != len(space) or any(len(row) != len(space) for row in rows):
            raise PairingError("pairing matrix must be {0}x{0}".format(len(space)))
        entries = {}
        for i, row in enumerate(rows):
            for j, value in enumerate(row):
                entries[(i, j)] = value
        return cls(space, parity, entries)

    @classmethod
    def from_labels(cls, space, parity, values):
        """
        Build a form from a map (label, label) to value
        """
        return cls(space, parity, {(space.index(a), space.index(b)): value
                                   for (a, b), value in values.items()})

    def value(self, row, col):
        return self.entries.get((row, col), ZERO)

    def row(self, index):
        """
        Nonzero entries (column, value) of one row
        """
        if self._rows is None:
            self._rows = [[] for _ in range(len(self.space))]
            for (i, j), value in sorted(self.entries.items()):
                self._rows[i].append((j, value))
        return self._rows[index]

    def rows(self):
        size = len(self.space)
        return [[self.value(i, j) for j in range(size)] for i in range(size)]

    def check(self):
        """
        Raise if the form violates a pairing invariant

        :raises PairingError: on symmetry or parity selection violations
        :raises DegeneratePairingError: on a singular matrix
        """
        report = validate_pairing(self)
        if not report.ok:
            if report.reason == "degenerate":
                raise DegeneratePairingError("pairing matrix is singular")
            raise PairingError("pairing fails {} at {}".format(report.reason, report.cell))

    def __eq__(self, other):
        return (isinstance(other, PairingForm) and self.space == other.space
                and self.parity == other.parity and self.entries == other.entries)

    def __repr__(self):
        return "PairingForm(parity={}, entries={!r})".format(self.parity, self.entries)


def validate_pairing(pairing):
    """
    Check graded symmetry, parity selection and nondegeneracy

    :param pairing: Form to check
    :type pairing: PairingForm
    :return: Report naming the first violated cell, labels as (row, column)
    :rtype: PairingReport
    """
    space = pairing.space
    size = len(space)
    for i in range(size):
        for j in range(size):
            value = pairing.value(i, j)
            sign = swap_sign(space.parity(i), space.parity(j))
            if value != sign * pairing.value(j, i):
                return PairingReport(False, "graded symmetry", (space.label(i), space.label(j)))
    for (i, j) in sorted(pairing.entries):
        if (space.parity(i) + space.parity(j)) % 2 != pairing.parity:
            return PairingReport(False, "parity selection", (space.label(i), space.label(j)))
    if exact_rank(pairing.rows()) < size:
        return PairingReport(False, "degenerate", None)
    return PairingReport(True, None, None)


def pairing_inverse(pairing):
    """
    Inverse two-tensor of a nondegenerate pairing

    Returns the form with entries l^{ab} such that sum_b l_{ab} l^{bc} is the
    identity; it has the parity and the graded symmetry of the input.

    :raises DegeneratePairingError: if the matrix is singular
    """
    inverse = exact_inverse(pairing.rows())
    result = PairingForm.from_rows(pairing.space, pairing.parity, inverse)
    space = pairing.space
    for (i, j), value in result.entries.items():
        if value != swap_sign(space.parity(i), space.parity(j)) * result.value(j, i):
            raise PairingError("inverse of a graded-symmetric form lost its symmetry at {}".format(
                (space.label(i), space.label(j))))
    return result


def _to_domain(rows, columns=None):
    columns = len(rows[0]) if rows else (columns or 0)
    return DomainMatrix([[QQ(int(Fraction(x).numerator), int(Fraction(x).denominator)) for x in row]
                         for row in rows], (len(rows), columns), QQ)


def _from_domain(matrix):
    return [[Fraction(int(x.p), int(x.q)) for x in row] for row in matrix.to_Matrix().tolist()]


def exact_rank(rows):
    """
    Exact rank of a rational matrix
    """
    if not rows or not rows[0]:
        return 0
    return _to_domain(rows).rank()


def exact_inverse(rows):
    """
    Exact inverse of a square rational matrix

    :raises DegeneratePairingError: if the matrix is singular
    """
    if not rows:
        return []
    matrix = _to_domain(rows)
    if matrix.rank() < len(rows):
        raise DegeneratePairingError("matrix of size {} is singular".format(len(rows)))
    return _from_domain(matrix.inv())


def matmul(left, right):
    """
    Product of two rational matrices given as row lists
    """
    inner = len(right)
    columns = len(right[0]) if right else 0
    return [[sum((row[k] * right[k][j] for k in range(inner) if row[k]), ZERO) for j in range(columns)]
            for row in left]


def transpose(rows):
    return [list(column) for column in zip(*rows)] if rows else []


def congruent_image(rows, transform):
    """
    The matrix T^t A T
    """
    return matmul(matmul(transpose(transform), rows), transform)


def _form(rows, u, v):
    total = ZERO
    for i, ui in enumerate(u):
        if not ui:
            continue
        row = rows[i]
        for j, vj in enumerate(v):
            if vj and row[j]:
                total += ui * row[j] * vj
    return total


def _combine(*terms):
    size = len(terms[0][1])
    return [sum((coefficient * vector[k] for coefficient, vector in terms), ZERO) for k in range(size)]


def _independent(vectors):
    chosen, reduced = [], []
    for vector in vectors:
        work = list(vector)
        for pivot, basis in reduced:
            if work[pivot]:
                factor = work[pivot] / basis[pivot]
                work = [a - factor * b for a, b in zip(work, basis)]
        pivot = next((k for k, value in enumerate(work) if value), None)
        if pivot is not None:
            reduced.append((pivot, work))
            chosen.append(vector)
    return chosen


def rational_sqrt(value):
    """
    Square root of a nonnegative rational if it is rational, else None
    """
    value = Fraction(value)
    if value < 0:
        return None
    numerator, denominator = math.isqrt(value.numerator), math.isqrt(value.denominator)
    if numerator * numerator == value.numerator and denominator * denominator == value.denominator:
        return Fraction(numerator, denominator)
    return None


def _isotropic(rows, vectors):
    for w in vectors:
        if not _form(rows, w, w) and any(_form(rows, w, x) for x in vectors):
            return w
    for first in range(len(vectors)):
        for second in range(first + 1, len(vectors)):
            w1, w2 = vectors[first], vectors[second]
            a, b, c = _form(rows, w1, w1), _form(rows, w2, w2), _form(rows, w1, w2)
            root = rational_sqrt(c * c - a * b)
            if root is None or not b:
                continue
            t = (-c + root) / b
            return _combine((ONE, w1), (t, w2))
    return None


def congruence_normal_form(rows, symmetric=True):
    """
    Split a nondegenerate symmetric or antisymmetric form into planes

    Returns the columns u1, v1, u2, v2, ... of a transform P such that
    P^t A P is block diagonal with blocks [[0, 1], [e, 0]], e = 1 for
    symmetric and e = -1 for antisymmetric input. Returns None when a
    symmetric form cannot be split into hyperbolic planes by rational
    isotropic vectors found from the current basis.
    """
    size = len(rows)
    vectors = [[ONE if k == i else ZERO for k in range(size)] for i in range(size)]
    epsilon = ONE if symmetric else -ONE
    columns = []
    while vectors:
        u = _isotropic(rows, vectors) if symmetric else vectors[0]
        if u is None:
            logger.debug("No rational isotropic vector among %d remaining vectors", len(vectors))
            return None
        partner = next((w for w in vectors if _form(rows, u, w)), None)
        if partner is None:
            raise DegeneratePairingError("form is degenerate")
        v = _combine((1 / _form(rows, u, partner), partner))
        if symmetric:
            v = _combine((ONE, v), (-_form(rows, v, v) / 2, u))
        columns.extend([u, v])
        projected = [_combine((ONE, w), (-epsilon * _form(rows, v, w), u), (-_form(rows, u, w), v))
                     for w in vectors]
        vectors = _independent(projected)
        if len(vectors) != size - len(columns):
            raise DegeneratePairingError("form is degenerate")
    return columns


def diagonalize_symmetric(rows):
    """
    Congruence diagonalization of a nondegenerate symmetric form

    :return: (columns of the transform, diagonal entries)
    :raises DegeneratePairingError: if the form is degenerate
    """
    size = len(rows)
    vectors = [[ONE if k == i else ZERO for k in range(size)] for i in range(size)]
    columns, diagonal = [], []
    while vectors:
        index = next((k for k, w in enumerate(vectors) if _form(rows, w, w)), None)
        if index is None:
            pair = next(((i, j) for i in range(len(vectors)) for j in range(i + 1, len(vectors))
                         if _form(rows, vectors[i], vectors[j])), None)
            if pair is None:
                raise DegeneratePairingError("form is degenerate")
            i, j = pair
            vectors[i] = _combine((ONE, vectors[i]), (ONE, vectors[j]))
            index = i
        u = vectors.pop(index)
        d = _form(rows, u, u)
        columns.append(u)
        diagonal.append(d)
        vectors = [_combine((ONE, w), (-_form(rows, u, w) / d, u)) for w in vectors]
    return columns, diagonal


def congruence_transform(source, target, symmetric=True):
    """
    A rational T with T^t source T = target, or None if not found

    Both forms are reduced to the normal form of
    :func:`congruence_normal_form`; forms of the same size with a normal
    form are congruent.
    """
    if len(source) != len(target):
        return None
    left = congruence_normal_form(source, symmetric)
    right = congruence_normal_form(target, symmetric)
    if left is None or right is None:
        return None
    if not source:
        return []
    return matmul(transpose(left), exact_inverse(transpose(right)))


def graded_congruence(first, second):
    """
    Parity preserving T with T^t first T = second, or None if not found

    Even forms are compared block by block: symmetric on the even part,
    antisymmetric on the odd part. Odd forms pair the two parts and are
    congruent whenever the dimensions agree.

    :param first: Source form
    :type first: PairingForm
    :param second: Target form
    :type second: PairingForm
    :return: Transform as a row list in basis order
    """
    if first.parity != second.parity or first.space.dimensions() != second.space.dimensions():
        return None
    first.check()
    second.check()
    size = len(first.space)
    transform = [[ZERO] * size for _ in range(size)]
    source_parts = [[k for k in range(size) if first.space.parity(k) == p] for p in (0, 1)]
    target_parts = [[k for k in range(size) if second.space.parity(k) == p] for p in (0, 1)]
    source_rows, target_rows = first.rows(), second.rows()

    def place(block, rows, cols):
        for a, row in enumerate(block):
            for b, value in enumerate(row):
                transform[rows[a]][cols[b]] = value

    if first.parity:
        (even, odd), (even2, odd2) = source_parts, target_parts
        place([[ONE if a == b else ZERO for b in range(len(even))] for a in range(len(even))], even, even2)
        source_block = [[source_rows[e][o] for o in odd] for e in even]
        target_block = [[target_rows[e][o] for o in odd2] for e in even2]
        place(matmul(exact_inverse(source_block), target_block), odd, odd2)
    else:
        for parity, (rows, cols) in enumerate(zip(source_parts, target_parts)):
            block = congruence_transform([[source_rows[i][j] for j in rows] for i in rows],
                                         [[target_rows[i][j] for j in cols] for i in cols], symmetric=not parity)
            if block is None:
                return None
            place(block, rows, cols)
    if congruent_image(source_rows, transform) != target_rows:
        logger.error("Block transform does not carry one form to the other")
        return None
    return transform


def forms_congruent(first, second):
    """
    True if :func:`graded_congruence` finds a transform
    """
    return graded_congruence(first, second) is not None
