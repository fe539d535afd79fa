"""
Morita maps between spaces of cyclic words

Tensoring (V, l) with a trace algebra sends every cyclic word to the
cyclic words of its matrix trace: (x1 ... xr) goes to the sum over basis
elements e_i1 ... e_ir of t(e_i1 ... e_ir) (x1@e_i1 ... xr@e_ir), with the
Koszul sign of pulling the algebra elements to the left. An odd trace
flips the flavor.
"""
from fractions import Fraction
from logging import getLogger

from .bvcalculus import qme_residual
from .cyclicspace import EVEN_PAIRING, ODD_PAIRING, FElement, FSpace
from .gradedcore import ZERO, swap_sign
from .matrixrealization import tensor_with_trace_algebra
from .ncbverrors import FlavorMismatchError


class MoritaMap:
    """
    The algebra map F(V) -> F(V x A) of a trace algebra A

    :param pairing: Pairing on the source space V
    :type pairing: PairingForm
    :param algebra: Tensor factor
    :type algebra: TraceAlgebra
    """
    def __init__(self, pairing, algebra):
        self.logger = getLogger(__name__)
        self.source_pairing = pairing
        self.algebra = algebra
        self.source = FSpace(pairing.space, ODD_PAIRING if pairing.parity else EVEN_PAIRING)
        space, self.target_pairing = tensor_with_trace_algebra(pairing.space, pairing, algebra)
        self.target = FSpace(space, ODD_PAIRING if self.target_pairing.parity else EVEN_PAIRING)
        self._words = {}
        self.logger.debug("Morita map over %s: %d letters to %d letters, %s to %s flavor", algebra.name,
                          len(pairing.space), len(space), self.source.flavor, self.target.flavor)

    def target_letter(self, letter, index):
        return letter * len(self.algebra) + index

    def word_image(self, word):
        """
        Image of one source word as raw (coefficient, [target word]) pairs
        """
        cached = self._words.get(word)
        if cached is not None:
            return cached
        algebra = self.algebra
        parities = self.target.letter_parities
        states = {}
        for index in range(len(algebra)):
            states[(index, (self.target_letter(word[0], index),))] = Fraction(1)
        for letter in word[1:]:
            following = {}
            for (current, letters), value in states.items():
                parity = sum(parities[target] for target in letters)
                for right, product, coefficient in algebra.followers(current):
                    key = (product, letters + (self.target_letter(letter, right),))
                    step = value * coefficient * swap_sign(parity, algebra.parities[right])
                    following[key] = following.get(key, ZERO) + step
            states = {key: value for key, value in following.items() if value}
        raw = []
        for (current, letters), value in states.items():
            trace = algebra.trace_of(current)
            if trace:
                raw.append((trace * value, [letters]))
        image = FElement.from_positions(self.target, raw)
        self._words[word] = image
        return image

    def apply(self, x):
        """
        Image of an element; multiplicative on products of words

        :raises FlavorMismatchError: if x is not over the source space
        """
        if x.fspace != self.source:
            raise FlavorMismatchError("element is not over the source space of the Morita map")
        result = FElement(self.target)
        for term, value in x.terms.items():
            product = FElement(self.target, {(): value})
            for word in term:
                product = product * self.word_image(word)
            result = result + product
        return result


def apply_morita(morita, x):
    """
    Image of x under a Morita map
    """
    return morita.apply(x)


def verify_solution_transport(series, morita, order):
    """
    Master equation residual of the transported series

    :rtype: QMEReport
    """
    transported = series.map(morita.apply)
    report = qme_residual(transported, morita.target_pairing, order)
    if not report.satisfied:
        getLogger(__name__).error("Transported series fails the master equation over %s", morita.algebra.name)
    return report
