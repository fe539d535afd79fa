"""
Permutation operads and their trace realizations

A permutation of a flag set is stored as the product of its cycles, each
cycle a cyclic word in the flags. Untwisted flags are even letters of the
odd-pairing flavor and are realized by supertraces over gl(N|N); twisted
flags are even letters of the even-pairing flavor, so every cycle is an
odd factor and the order of the cycles carries the orientation sign. They
are realized by odd traces over q(N).

Contracting two flags on the realization side pairs their coordinates with
the trace two-tensor; on the combinatorial side it is the BV operator
restricted to that pair of letters.
"""
from collections import namedtuple
from itertools import permutations
from logging import getLogger

from sympy.combinatorics import Permutation

from .bvcalculus import delta_pair
from .cyclicspace import EVEN_PAIRING, ODD_PAIRING, FElement, FSpace
from .gradedcore import GradedSpace, ZERO, swap_sign
from .matrixrealization import MatrixModel
from .ncbverrors import InputError
from .spoly import pair_contract
from .tracealgebra import TraceAlgebra

TensorRealization = namedtuple("TensorRealization", "model poly")


class PermTensor:
    """
    Linear combination of permutations of a flag set

    :param labels: Flags in their order
    :param element: The permutations as products of cycle words
    :type element: FElement
    """
    twisted = False

    def __init__(self, labels, element=None):
        self.labels = tuple(labels)
        self.fspace = self.space_for(self.labels)
        self.element = element if element is not None else FElement(self.fspace)

    @classmethod
    def space_for(cls, labels):
        if cls.twisted:
            return FSpace(GradedSpace((label, 1) for label in labels), EVEN_PAIRING)
        return FSpace(GradedSpace((label, 0) for label in labels), ODD_PAIRING)

    @classmethod
    def from_cycles(cls, labels, cycles, coefficient=1):
        """
        One permutation given by its cycles, fixed points included

        For twisted tensors the order of the cycles is the orientation.

        :raises InputError: unless every flag appears exactly once
        """
        labels = tuple(labels)
        flat = [flag for cycle in cycles for flag in cycle]
        if len(flat) != len(labels) or set(flat) != set(labels):
            raise InputError("cycles {!r} do not partition the flags {!r}".format(cycles, labels))
        tensor = cls(labels)
        tensor.element = FElement.from_words(tensor.fspace, [tuple(cycle) for cycle in cycles], coefficient)
        return tensor

    @classmethod
    def from_sympy(cls, labels, permutation, coefficient=1):
        """
        Permutation given as a sympy Permutation acting on flag positions
        """
        labels = tuple(labels)
        if permutation.size > len(labels):
            raise InputError("permutation of size {} on {} flags".format(permutation.size, len(labels)))
        permutation = Permutation(permutation.array_form, size=len(labels))
        cycles = permutation.full_cyclic_form
        return cls.from_cycles(labels, [[labels[k] for k in cycle] for cycle in cycles], coefficient)

    def permutations(self):
        """
        Terms as (cycles in canonical order, coefficient)
        """
        return [([self.fspace.labels(word) for word in term], value)
                for term, value in sorted(self.element.terms.items())]

    def to_sympy(self, cycles):
        """
        sympy Permutation of flag positions for a list of label cycles
        """
        return Permutation([[self.labels.index(flag) for flag in cycle] for cycle in cycles],
                           size=len(self.labels))

    def with_element(self, labels, element):
        tensor = type(self)(labels)
        tensor.element = FElement.from_terms(
            tensor.fspace, [(value, [element.fspace.labels(word) for word in term])
                            for term, value in element.terms.items()])
        return tensor

    def __add__(self, other):
        return type(self)(self.labels, self.element + other.element)

    def scale(self, factor):
        return type(self)(self.labels, self.element.scale(factor))

    def __eq__(self, other):
        return isinstance(other, PermTensor) and self.twisted == other.twisted \
            and self.labels == other.labels and self.element == other.element

    __hash__ = None

    def __repr__(self):
        return "{}({!r}, {})".format(type(self).__name__, self.labels, self.element)


class TwistedPermTensor(PermTensor):
    """
    Permutations with an ordered sequence of cycles

    Reordering the cycles by an odd permutation flips the sign.
    """
    twisted = True


def algebra_for(tensor, size):
    return TraceAlgebra.q(size) if tensor.twisted else TraceAlgebra.gl(size)


def realize(tensor, size):
    """
    Trace realization over gl(N|N) (untwisted) or q(N) (twisted)

    :rtype: TensorRealization
    """
    model = MatrixModel(tensor.fspace, None, algebra_for(tensor, size))
    return TensorRealization(model, model.mu(tensor.element))


def _remaining(labels, first, second):
    for flag in (first, second):
        if flag not in labels:
            raise InputError("unknown flag {!r}".format(flag))
    if first == second:
        raise InputError("cannot contract flag {!r} with itself".format(first))
    return tuple(flag for flag in labels if flag not in (first, second))


def contract_oracle(realization, first, second):
    """
    Contract the slots of two flags with the trace two-tensor

    The pair (z_{f,i}, z_{f',j}) is weighted by (-1)^{|e_i||e_j| + t(1 + |e_j|)} G^{ij},
    t the trace parity, and the reversed pair by graded symmetry.

    :rtype: TensorRealization
    """
    model = realization.model
    labels = _remaining(model.fspace.space.labels, first, second)
    algebra = model.algebra
    space = model.fspace.space
    a, b = space.index(first), space.index(second)
    tau = algebra.trace_parity

    def weight(left, right):
        (x, i), (y, j) = model.coordinates[left], model.coordinates[right]
        if (x, y) == (a, b):
            value = algebra.gram_inverse.get((i, j), ZERO)
            return value * swap_sign(algebra.parities[i], algebra.parities[j]) * swap_sign(tau, 1 + algebra.parities[j])
        if (x, y) == (b, a):
            return weight(right, left) * swap_sign(left.parity, right.parity)
        return ZERO

    result = pair_contract(realization.poly, weight)
    reduced = type_for(model)(labels)
    return TensorRealization(MatrixModel(reduced.fspace, None, algebra), result)


def type_for(model):
    return TwistedPermTensor if model.fspace.flavor == EVEN_PAIRING else PermTensor


def contract_comb(tensor, first, second):
    """
    Combinatorial contraction of two flags

    Untwisted: flags in different cycles join the cycles, non-adjacent
    flags in one cycle split it in two, adjacent flags give zero. Twisted:
    the join of (P f)(f' Q) is -(P Q) and a split doubles the coefficient.
    """
    labels = _remaining(tensor.labels, first, second)
    contracted = delta_pair(tensor.element, first, second, 1)
    return tensor.with_element(labels, contracted)


def printed_rule(tensor, first, second):
    """
    The contraction rule in its literal printed form

    Different cycles: both cycles kept with f and f' deleted. Same cycle,
    not adjacent: one cycle with f and f' deleted. Adjacent: zero.
    """
    labels = _remaining(tensor.labels, first, second)
    result = type(tensor)(labels)
    for cycles, value in tensor.permutations():
        holder = [k for k, cycle in enumerate(cycles) if first in cycle or second in cycle]
        if len(holder) == 1:
            cycle = cycles[holder[0]]
            distance = (cycle.index(second) - cycle.index(first)) % len(cycle)
            if distance in (1, len(cycle) - 1):
                continue
        kept = [[flag for flag in cycle if flag not in (first, second)] for cycle in cycles]
        kept = [cycle for cycle in kept if cycle]
        result = result + type(tensor).from_cycles(labels, kept, value)
    return result


def printed_rule_discrepancies(tensor):
    """
    Flag pairs where the printed rule disagrees with the trace contraction

    Each disagreement is logged as a warning.
    """
    logger = getLogger(__name__)
    found = []
    for first in tensor.labels:
        for second in tensor.labels:
            if first == second:
                continue
            if printed_rule(tensor, first, second) != contract_comb(tensor, first, second):
                logger.warning("Printed contraction rule differs from the trace contraction for (%s, %s)",
                               first, second)
                found.append((first, second))
    return found


def relabel(tensor, mapping):
    """
    Rename flags; the flag order follows the old order
    """
    labels = tuple(mapping.get(flag, flag) for flag in tensor.labels)
    if len(set(labels)) != len(labels):
        raise InputError("relabeling {!r} is not injective".format(mapping))
    result = type(tensor)(labels)
    result.element = FElement.from_terms(
        result.fspace, [(value, [[mapping.get(flag, flag) for flag in cycle] for cycle in cycles])
                        for cycles, value in tensor.permutations()])
    return result


def all_permutations(cls, labels):
    """
    Every permutation of the flags as a tensor with coefficient one
    """
    size = len(labels)
    return [cls.from_sympy(labels, Permutation(list(image))) for image in permutations(range(size))]
