"""
Matrix realization of cyclic words

A cyclic word (x1 ... xr) is sent to the trace polynomial
t(A_x1 ... A_xr), where A_x = sum_i e_i z_{x,i} runs over a basis of a
trace algebra and the coordinates z_{x,i} carry parity |x| + |e_i|. The
odd Laplacian on coordinate polynomials pairs two coordinates with the
Casimir form built from the letter pairing and the inverse trace pairing.
"""
from collections import namedtuple
from fractions import Fraction
from logging import getLogger

from .bvcalculus import check_flavor, delta
from .gradedcore import GradedSpace, PairingForm, ZERO, casimir_sign, exact_rank, parity_sign, swap_sign
from .ncbverrors import AlgebraError, FlavorMismatchError, PairingError
from .spoly import SPoly, Var, derivation, pair_contract, sort_factors

CorrespondenceReport = namedtuple("CorrespondenceReport", "ok combinatorial matrix difference")


def supertrace(rows, parities):
    """
    Supertrace sum_a (-1)^{|a|} M[a][a] of a matrix of SPoly entries

    :param rows: Square matrix, None entries are zero
    :param parities: Parity of each index
    :raises AlgebraError: if the matrix is not square
    """
    if any(len(row) != len(rows) for row in rows) or len(parities) != len(rows):
        raise AlgebraError("supertrace needs a square matrix with one parity per index")
    result = SPoly()
    for index, row in enumerate(rows):
        entry = row[index]
        if entry is None:
            continue
        result = result + (entry if isinstance(entry, SPoly) else SPoly.constant(entry)) \
            .scale(parity_sign(parities[index]))
    return result


def odd_trace(rows):
    """
    Odd trace 1/2 tr(G p) of a q(N) block matrix, p = [[0, -1], [1, 0]]

    :raises AlgebraError: if G does not commute with the odd involution
    """
    size = len(rows) // 2
    if len(rows) % 2 or any(len(row) != len(rows) for row in rows):
        raise AlgebraError("odd trace needs a 2N x 2N matrix")

    def entry(row, col):
        value = rows[row][col]
        if value is None:
            return SPoly()
        return value if isinstance(value, SPoly) else SPoly.constant(value)

    for row in range(size):
        for col in range(size):
            if entry(size + row, size + col) != entry(row, col) or entry(size + row, col) != -entry(row, size + col):
                raise AlgebraError("matrix does not commute with the odd involution at ({}, {})".format(row, col))
    total = SPoly()
    for c in range(size):
        total = total + entry(c, size + c) - entry(size + c, c)
    return total.scale(Fraction(1, 2))


def element_product(algebra, left, right):
    """
    Product of algebra elements with polynomial coefficients

    Elements are maps basis index to SPoly, (e_i c)(e_j c') = (-1)^{|c||e_j|} e_i e_j c c'.
    """
    result = {}
    for i, first in left.items():
        odd_part = first.parts()[1]
        for j, second in right.items():
            found = algebra.multiply(i, j)
            if found is None:
                continue
            target, coefficient = found
            value = first * second
            if algebra.parities[j]:
                value = value - (odd_part * second).scale(2)
            value = value.scale(coefficient)
            result[target] = result[target] + value if target in result else value
    return {index: value for index, value in result.items() if value}


class MatrixModel:
    """
    Matrix side of the correspondence for one space, pairing and algebra

    The odd-pairing flavor needs an algebra with an even trace (gl), the
    even-pairing flavor one with an odd trace (q).

    :param fspace: Space of cyclic words
    :type fspace: FSpace
    :param pairing: Pairing on V, or None for a model that only realizes words
    :type pairing: PairingForm
    :param algebra: Trace algebra
    :type algebra: TraceAlgebra
    """
    def __init__(self, fspace, pairing, algebra):
        self.logger = getLogger(__name__)
        if algebra.trace_parity != fspace.shift:
            raise FlavorMismatchError("{} flavor cannot be realized over {}".format(fspace.flavor, algebra.name))
        if pairing is not None:
            check_flavor(fspace, pairing)
            pairing.check()
        self.fspace = fspace
        self.pairing = pairing
        self.algebra = algebra
        self.coordinates = {}
        self._vars = {}
        for letter, label in enumerate(fspace.space.labels):
            for index, (symbol, suffix) in enumerate(algebra.variables):
                var = Var(symbol, (label,) + tuple(suffix),
                          (fspace.letter_parity(letter) + algebra.parities[index]) % 2)
                self.coordinates[var] = (letter, index)
                self._vars[(letter, index)] = var
        self._words = {}

    def var(self, letter, index):
        """
        Coordinate z_{x,i} of letter position x and algebra basis index i
        """
        return self._vars[(letter, index)]

    def letter_matrix(self, letter):
        """
        A_x as a map basis index to its coordinate polynomial
        """
        return {index: SPoly.variable(self.var(letter, index)) for index in range(len(self.algebra))}

    def omega(self, first, second):
        """
        Casimir pairing of two coordinates; formal parameters pair to zero
        """
        if self.pairing is None:
            raise PairingError("model was built without a pairing")
        if first not in self.coordinates or second not in self.coordinates:
            return ZERO
        x, i = self.coordinates[first]
        y, j = self.coordinates[second]
        value = self.pairing.value(x, y)
        if not value:
            return ZERO
        inverse = self.algebra.gram_inverse.get((i, j))
        if not inverse:
            return ZERO
        return value * inverse * casimir_sign(self.fspace.letter_parity(y), self.algebra.parities[j],
                                              self.algebra.trace_parity)

    def word_trace(self, word):
        """
        t(A_x1 ... A_xr) for a word of letter positions
        """
        cached = self._words.get(word)
        if cached is not None:
            return cached
        algebra = self.algebra
        states = {}
        for index in range(len(algebra)):
            states[(index, (self.var(word[0], index),))] = Fraction(1)
        for letter in word[1:]:
            following = {}
            for (current, monomial), value in states.items():
                parity = sum(factor.parity for factor in monomial)
                for right, target, coefficient in algebra.followers(current):
                    found = sort_factors(monomial + (self.var(letter, right),))
                    if found is None:
                        continue
                    sign, merged = found
                    key = (target, merged)
                    step = value * coefficient * sign * swap_sign(parity, algebra.parities[right])
                    following[key] = following.get(key, ZERO) + step
            states = {key: value for key, value in following.items() if value}
        terms = {}
        for (current, monomial), value in states.items():
            trace = algebra.trace_of(current)
            if trace:
                terms[monomial] = terms.get(monomial, ZERO) + trace * value
        result = SPoly(terms)
        self._words[word] = result
        return result

    def mu(self, x):
        """
        Trace polynomial of an element of F, multiplicative in the words
        """
        if x.fspace != self.fspace:
            raise FlavorMismatchError("element lives in a different space")
        result = SPoly()
        for term, value in x.terms.items():
            product = SPoly.constant(value)
            for word in term:
                product = product * self.word_trace(word)
            result = result + product
        return result

    def delta(self, poly):
        """
        Odd Laplacian on coordinate polynomials
        """
        return pair_contract(poly, self.omega)

    def bracket(self, first, second):
        """
        Odd bracket as the deviation of the Laplacian from a derivation
        """
        result = SPoly()
        delta_second = self.delta(second)
        for parity, part in enumerate(first.parts()):
            if not part:
                continue
            result = result + self.delta(part * second) - self.delta(part) * second \
                - (part * delta_second).scale(parity_sign(parity))
        return result

    def correspondence_check(self, x):
        """
        Compare the trace polynomial of Delta x with the Laplacian of the trace polynomial

        Empty cycles left by Delta x are valued at t(1), the supertrace of the
        identity for gl(k|k').

        :rtype: CorrespondenceReport
        """
        combinatorial = self.mu(delta(x, self.pairing, self.algebra.unit_trace))
        matrix = self.delta(self.mu(x))
        difference = combinatorial - matrix
        if difference:
            self.logger.error("Correspondence fails for %s: %d differing monomials", x, len(difference.terms))
        return CorrespondenceReport(not difference, combinatorial, matrix, difference)

    def adjoint_images(self, gamma):
        """
        Values z -> L(z) of the derivation induced by X -> [gamma, X]

        gamma has attributes coefficients (basis index to SPoly) and parity.
        """
        algebra = self.algebra
        parity = gamma.parity
        images = {}
        for letter in range(len(self.fspace.space)):
            matrix = self.letter_matrix(letter)
            left = element_product(algebra, gamma.coefficients, matrix)
            right = element_product(algebra, matrix, gamma.coefficients)
            sign = swap_sign(parity, self.fspace.letter_parity(letter))
            for index in range(len(algebra)):
                value = left.get(index, SPoly()) - right.get(index, SPoly()).scale(sign)
                if value:
                    images[self.var(letter, index)] = value.scale(swap_sign(parity, algebra.parities[index]))
        return images

    def adjoint_action(self, gamma, poly):
        """
        Apply the derivation induced by the adjoint action of gamma
        """
        return derivation(poly, self.adjoint_images(gamma), gamma.parity)

    def is_invariant(self, x, gammas):
        """
        True if the trace polynomial of x is annihilated by every gamma
        """
        poly = self.mu(x)
        return all(not self.adjoint_action(gamma, poly) for gamma in gammas)


def image_rank(elements, model):
    """
    Exact rank of the span of the trace polynomials of elements
    """
    images = [model.mu(x) for x in elements]
    monomials = sorted({monomial for image in images for monomial in image.terms})
    if not monomials or not images:
        return 0
    rows = [[image.terms.get(monomial, ZERO) for image in images] for monomial in monomials]
    return exact_rank(rows)


def tensor_with_trace_algebra(space, pairing, algebra):
    """
    (V, l) tensored with a trace algebra

    Basis labels are "v@e" for a label v and basis element e. The parity of
    v@e is the letter parity of v plus |e|, shifted back to V; the pairing
    is the Casimir form and changes parity with an odd trace.

    :return: (GradedSpace, PairingForm)
    """
    shift = 0 if pairing.parity else 1
    tau = algebra.trace_parity
    target_shift = (shift + tau) % 2
    basis = []
    for v, parity in space.basis:
        for name, algebra_parity in zip(algebra.names, algebra.parities):
            basis.append(("{}@{}".format(v, name), (int(parity) + shift + algebra_parity + target_shift) % 2))
    target = GradedSpace(basis)
    size = len(algebra)
    entries = {}
    for (x, y), value in pairing.entries.items():
        even = (space.parity(y) + shift) % 2
        for (i, j), inverse in algebra.gram_inverse.items():
            entries[(x * size + i, y * size + j)] = value * inverse * casimir_sign(even, algebra.parities[j], tau)
    return target, PairingForm(target, pairing.parity + tau, entries)

