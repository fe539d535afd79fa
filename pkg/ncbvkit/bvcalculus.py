"""
BV operator, odd bracket and quantum master equation on cyclic words

Delta acts on every unordered pair of letter positions of a term. A pair
inside one word splits it in two; a pair across two words joins them.
The letter pairing enters through l(a, b) with a the earlier letter.

A split or join can leave an empty cycle. It is replaced by the scalar
empty_trace, the value a matrix realization gives the trace of the
identity (k - k' for gl(k|k'), 0 for the queer algebras). The default 0
drops such terms. In the even flavor the empty cycle is odd, so only 0 is
allowed there.
"""
from collections import namedtuple
from fractions import Fraction
from logging import getLogger

from .cyclicspace import ODD_PAIRING, FElement, FSpace, monomial_basis
from .gradedcore import ZERO, exact_rank, parity_sign, reorder_sign, swap_sign, to_scalar
from .ncbverrors import AlgebraError, DimensionCapError, FlavorMismatchError

logger = getLogger(__name__)

QMEReport = namedtuple("QMEReport", "residual max_checked_order satisfied")
ExactnessReport = namedtuple("ExactnessReport", "n dimension kernel image exact")

# ξ² in the odd part of the queer algebra
QUEER_SQUARE = -1


def check_flavor(fspace, pairing):
    """
    Odd-pairing words need an odd form on V, even-pairing words an even one

    :raises FlavorMismatchError: on a mismatch
    """
    if pairing.space != fspace.space:
        raise FlavorMismatchError("pairing is defined on a different space")
    wanted = 1 if fspace.flavor == ODD_PAIRING else 0
    if pairing.parity != wanted:
        raise FlavorMismatchError("{} flavor needs a pairing of parity {}".format(fspace.flavor, wanted))


def _with_empty_cycles(coefficient, pieces, others, empty_trace):
    # Empty pieces have parity 0 in the odd flavor and leave the Koszul signs alone
    words = [piece for piece in pieces if piece]
    empties = len(pieces) - len(words)
    if empties:
        if not empty_trace:
            return None
        coefficient = coefficient * empty_trace ** empties
    return coefficient, words + others


def _delta_term(fspace, term, weight, empty_trace=ZERO):
    raw = []
    parities = [fspace.effective_parity(word) for word in term]
    count = len(term)
    letter = fspace.letter_parity
    odd = fspace.flavor == ODD_PAIRING
    for k, word in enumerate(term):
        others = [term[t] for t in range(count) if t != k]
        size = len(word)
        move = None
        for i in range(size):
            for j in range(i + 1, size):
                a, b = word[i], word[j]
                value = weight(a, b)
                if not value:
                    continue
                if move is None:
                    move = reorder_sign(parities, [k] + [t for t in range(count) if t != k])
                head, middle = word[j + 1:] + word[:i], word[i + 1:j]
                sign = move * fspace.rotation_sign(word, j + 1)
                if odd:
                    sign *= parity_sign(fspace.word_parity(head)) * swap_sign(letter(b), fspace.word_parity(middle))
                    found = _with_empty_cycles(sign * value, [head, middle], others, empty_trace)
                elif head and middle:
                    sign *= parity_sign(1 + letter(a) + fspace.word_parity(head)) \
                        * swap_sign(letter(a), fspace.word_parity(middle))
                    found = (2 * QUEER_SQUARE * sign * value, [head, middle] + others)
                else:
                    found = None
                if found is not None:
                    raw.append(found)
    for k in range(count):
        for m in range(k + 1, count):
            first, second = term[k], term[m]
            rest = [t for t in range(count) if t != k and t != m]
            others = [term[t] for t in rest]
            move = reorder_sign(parities, [k, m] + rest)
            for i, a in enumerate(first):
                for j, b in enumerate(second):
                    value = weight(a, b)
                    if not value:
                        continue
                    head, tail = first[i + 1:] + first[:i], second[j + 1:] + second[:j]
                    sign = move * fspace.rotation_sign(first, i + 1) * fspace.rotation_sign(second, j)
                    sign *= parity_sign(fspace.effective_parity(head))
                    found = _with_empty_cycles(sign * value, [head + tail], others, empty_trace)
                    if found is not None:
                        raw.append(found)
    return raw


def _check_empty_trace(fspace, empty_trace):
    empty_trace = to_scalar(empty_trace)
    if empty_trace and fspace.flavor != ODD_PAIRING:
        raise FlavorMismatchError("the empty cycle is odd in the {} flavor, its trace must be 0".format(fspace.flavor))
    return empty_trace


def _apply(x, weight, empty_trace=ZERO):
    raw = []
    for term, value in x.terms.items():
        raw.extend((value * coefficient, words)
                   for coefficient, words in _delta_term(x.fspace, term, weight, empty_trace))
    return FElement.from_positions(x.fspace, raw)


def delta(x, pairing, empty_trace=ZERO):
    """
    BV operator on F, lowering the letter count by two

    :param x: Element of F
    :type x: FElement
    :param pairing: Pairing on V of the parity matching the flavor
    :type pairing: PairingForm
    :param empty_trace: Value of an empty cycle, 0 or Tr(Id) of a realization
    :raises FlavorMismatchError: on a flavor or space mismatch, or a nonzero
        empty_trace in the even flavor
    """
    check_flavor(x.fspace, pairing)
    return _apply(x, pairing.value, _check_empty_trace(x.fspace, empty_trace))


def delta_pair(x, first, second, value=1):
    """
    Delta restricted to one pair of letters

    l(first, second) = value and l(second, first) follows from graded
    symmetry; every other letter pair is unpaired. This is the contraction
    of two flags in the operad realization.
    """
    fspace = x.fspace
    a, b = fspace.space.index(first), fspace.space.index(second)
    value = to_scalar(value)
    reverse = value * swap_sign(fspace.letter_parity(a), fspace.letter_parity(b)) * parity_sign(fspace.shift)
    table = {(a, b): value, (b, a): reverse}
    return _apply(x, lambda left, right: table.get((left, right), ZERO))


def bracket(x, y, pairing, empty_trace=ZERO):
    """
    Odd bracket {x, y} = D(xy) - D(x)y - (-1)^{|x|} x D(y)

    With a nonzero empty_trace two paired single letters bracket to a
    multiple of the unit, {(a), (b)} = l(a, b) empty_trace.
    """
    def laplacian(value):
        return delta(value, pairing, empty_trace)

    result = FElement(x.fspace)
    delta_y = laplacian(y)
    for parity, part in enumerate(x.parts()):
        if not part:
            continue
        result = result + laplacian(part * y) - laplacian(part) * y \
            - (part * delta_y).scale(parity_sign(parity))
    return result


class HSeries:
    """
    Finite series in a formal even variable h, truncated at an order

    Coefficients may be any values supporting addition, negation,
    multiplication and scaling (FElement or SPoly).

    :param coefficients: Map exponent to coefficient
    :param order: Highest exponent kept, None for no truncation
    """
    def __init__(self, coefficients=None, order=None):
        self.order = order
        self.coefficients = {exponent: value for exponent, value in sorted((coefficients or {}).items())
                             if value and (order is None or exponent <= order)}

    @staticmethod
    def _order(first, second):
        orders = [order for order in (first, second) if order is not None]
        return min(orders) if orders else None

    def __bool__(self):
        return bool(self.coefficients)

    def __eq__(self, other):
        if isinstance(other, HSeries):
            return self.coefficients == other.coefficients
        return not self.coefficients if other == 0 else NotImplemented

    __hash__ = None

    def __getitem__(self, exponent):
        return self.coefficients[exponent]

    def get(self, exponent, default=None):
        return self.coefficients.get(exponent, default)

    def items(self):
        return self.coefficients.items()

    def __add__(self, other):
        result = dict(self.coefficients)
        for exponent, value in other.coefficients.items():
            result[exponent] = result[exponent] + value if exponent in result else value
        return HSeries(result, self._order(self.order, other.order))

    def __neg__(self):
        return self.map(lambda value: -value)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        return self.map(lambda value: value.scale(factor))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        order = self._order(self.order, other.order)
        result = {}
        for first, left in self.coefficients.items():
            for second, right in other.coefficients.items():
                exponent = first + second
                if order is not None and exponent > order:
                    continue
                value = left * right
                result[exponent] = result[exponent] + value if exponent in result else value
        return HSeries(result, order)

    def map(self, function):
        """
        Apply a linear function to every coefficient
        """
        return HSeries({exponent: function(value) for exponent, value in self.coefficients.items()},
                       self.order)

    def shift(self, power):
        """
        Multiply by h^power
        """
        order = None if self.order is None else self.order + power
        return HSeries({exponent + power: value for exponent, value in self.coefficients.items()}, order)

    def truncate(self, order):
        return HSeries(self.coefficients, self._order(self.order, order))

    def lowest_order(self):
        return min(self.coefficients) if self.coefficients else None

    def __repr__(self):
        return "HSeries({})".format(", ".join("h^{}: {}".format(exponent, value)
                                             for exponent, value in self.coefficients.items()))


def exponent_pattern_warnings(series):
    """
    Advisory check that every term sits at h^{2g-1+i}, i its word count, g >= 0

    :return: List of messages, also logged as warnings
    """
    messages = []
    for exponent, value in series.items():
        for term in value.terms:
            genus_twice = exponent + 1 - len(term)
            if genus_twice < 0 or genus_twice % 2:
                messages.append("term with {} words at h^{} does not fit h^(2g-1+i)".format(
                    len(term), exponent))
    for message in messages:
        logger.warning(message)
    return messages


def solution_from_terms(fspace, terms, order=None):
    """
    Series from (coefficient, genus, list of label words) triples

    Each term lands at h^{2g-1+i} with i its number of words.
    """
    coefficients = {}
    for coefficient, genus, words in terms:
        exponent = 2 * genus - 1 + len(words)
        element = FElement.from_words(fspace, words, coefficient)
        coefficients[exponent] = coefficients[exponent] + element if exponent in coefficients else element
    return HSeries(coefficients, order)


def master_residual(series, laplacian, odd_bracket, order):
    """
    h D(S) + 1/2 {S, S} truncated at h^order, for any realization
    """
    result = {}

    def accumulate(exponent, value):
        if exponent > order or not value:
            return
        result[exponent] = result[exponent] + value if exponent in result else value

    items = sorted(series.items())
    for exponent, value in items:
        accumulate(exponent + 1, laplacian(value))
    for first, left in items:
        for second, right in items:
            if first + second <= order:
                accumulate(first + second, odd_bracket(left, right).scale(Fraction(1, 2)))
    return HSeries(result, order)


def qme_residual(series, pairing, order):
    """
    Residual of the quantum master equation h D(S) + 1/2 {S, S} = 0

    :param series: S as an HSeries of FElements
    :param order: Highest h exponent checked
    :rtype: QMEReport
    """
    residual = master_residual(series, lambda value: delta(value, pairing),
                               lambda left, right: bracket(left, right, pairing), order)
    satisfied = not residual
    if not satisfied:
        logger.info("Master equation fails at h^%d", residual.lowest_order())
    return QMEReport(residual, order, satisfied)


def _as_table(space, products):
    table = {}
    for (left, right), values in products.items():
        row = {}
        for label, value in values.items():
            index = space.index(label)
            row[index] = row.get(index, ZERO) + to_scalar(value)
        table[(space.index(left), space.index(right))] = {k: v for k, v in row.items() if v}
    return table


def _times(table, left, right):
    result = {}
    for i, x in left.items():
        for j, y in right.items():
            for k, value in table.get((i, j), {}).items():
                result[k] = result.get(k, ZERO) + x * y * value
    return {k: v for k, v in result.items() if v}


def cubic_action_from_algebra(products, pairing, flavor):
    """
    Cubic solution (1/6) sum l(a_i a_j, a_k) (a_i a_j a_k) of an algebra

    :param products: Map (label, label) to the product as a map label to coefficient
    :param pairing: Invariant pairing on the algebra
    :param flavor: ODD_PAIRING or EVEN_PAIRING
    :raises AlgebraError: if the product is not associative or the pairing not invariant
    """
    space = pairing.space
    table = _as_table(space, products)
    size = len(space)
    units = [{i: Fraction(1)} for i in range(size)]

    def pair(left, right):
        return sum((x * y * pairing.value(i, j) for i, x in left.items() for j, y in right.items()), ZERO)

    for i in range(size):
        for j in range(size):
            ij = _times(table, units[i], units[j])
            for k in range(size):
                jk = _times(table, units[j], units[k])
                if _times(table, ij, units[k]) != _times(table, units[i], jk):
                    raise AlgebraError("product is not associative on ({}, {}, {})".format(
                        space.label(i), space.label(j), space.label(k)))
                if pair(ij, units[k]) != pair(units[i], jk):
                    raise AlgebraError("pairing is not invariant on ({}, {}, {})".format(
                        space.label(i), space.label(j), space.label(k)))
    fspace = FSpace(space, flavor)
    raw = []
    for i in range(size):
        for j in range(size):
            ij = _times(table, units[i], units[j])
            for k in range(size):
                value = pair(ij, units[k])
                if value:
                    raw.append((value / 6, [(i, j, k)]))
    return FElement.from_positions(fspace, raw)


def _delta_matrix(fspace, pairing, source, target, empty_trace=ZERO):
    position = {term: row for row, term in enumerate(target)}
    rows = [[ZERO] * len(source) for _ in target]
    for column, term in enumerate(source):
        image = delta(FElement(fspace, {term: 1}), pairing, empty_trace)
        for result, value in image.terms.items():
            rows[position[result]][column] = value
    return rows


def exactness_check(fspace, pairing, n, cap=4000, empty_trace=ZERO):
    """
    Compare ker(D on F_n) with the image of D from F_{n+2}

    With empty_trace 0 nothing reaches the unit, so degree 0 is never exact.

    :param cap: Largest basis size allowed for F_{n+2}
    :raises DimensionCapError: if F_{n+2} is larger than cap
    :rtype: ExactnessReport
    """
    check_flavor(fspace, pairing)
    upper = monomial_basis(fspace, n + 2)
    if len(upper) > cap:
        raise DimensionCapError(len(upper), "F_{} is too large".format(n + 2))
    middle = monomial_basis(fspace, n)
    lower = monomial_basis(fspace, n - 2) if n >= 2 else []
    logger.debug("Exactness at n=%d: dimensions %d, %d, %d", n, len(upper), len(middle), len(lower))
    image = exact_rank(_delta_matrix(fspace, pairing, upper, middle, empty_trace)) if middle and upper else 0
    outgoing = exact_rank(_delta_matrix(fspace, pairing, middle, lower, empty_trace)) if middle and lower else 0
    kernel = len(middle) - outgoing
    return ExactnessReport(n, len(middle), kernel, image, kernel == image)

