"""
Exact supercommutative polynomials

Monomials are sorted tuples of :class:`Var`; an odd variable appears at
most once. Reordering factors into sorted position produces the Koszul
sign of the odd factors.
"""
from collections import namedtuple
from fractions import Fraction
from functools import lru_cache

from .gradedcore import ZERO, format_scalar, reorder_sign, swap_sign


class Var(namedtuple("Var", "name index parity")):
    """
    Polynomial variable, for example Var("A", ("a", 0, 1), 1) printed A[a,0,1]
    """
    __slots__ = ()

    def __str__(self):
        if not self.index:
            return self.name
        return "{}[{}]".format(self.name, ",".join(str(item) for item in self.index))


@lru_cache(maxsize=1 << 16)
def sort_factors(factors):
    """
    Sort a product of variables

    :param factors: Variables in product order
    :type factors: tuple
    :return: (sign, sorted monomial), or None if an odd variable repeats
    """
    order = sorted(range(len(factors)), key=factors.__getitem__)
    ordered = tuple(factors[k] for k in order)
    for first, second in zip(ordered, ordered[1:]):
        if first == second and first.parity:
            return None
    return reorder_sign([factor.parity for factor in factors], order), ordered


def monomial_parity(monomial):
    return sum(factor.parity for factor in monomial) % 2


class SPoly:
    """
    Polynomial in even and odd variables with rational coefficients

    :param terms: Map sorted monomial to coefficient
    :type terms: dict
    """
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {monomial: Fraction(value) for monomial, value in (terms or {}).items() if value}

    @classmethod
    def constant(cls, value):
        return cls({(): value})

    @classmethod
    def variable(cls, var):
        return cls({(var,): 1})

    @classmethod
    def from_factors(cls, factors, coefficient=1):
        """
        Monomial given by an unsorted product of variables
        """
        result = sort_factors(tuple(factors))
        if result is None or not coefficient:
            return cls()
        sign, monomial = result
        return cls({monomial: sign * Fraction(coefficient)})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, SPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == SPoly.constant(other).terms
        return NotImplemented

    __hash__ = None

    def __neg__(self):
        return SPoly({monomial: -value for monomial, value in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SPoly.constant(other)
        result = dict(self.terms)
        for monomial, value in other.terms.items():
            result[monomial] = result.get(monomial, ZERO) + value
        return SPoly(result)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor):
        factor = Fraction(factor)
        if not factor:
            return SPoly()
        return SPoly({monomial: factor * value for monomial, value in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        result = {}
        for left, first in self.terms.items():
            for right, second in other.terms.items():
                product = sort_factors(left + right)
                if product is None:
                    continue
                sign, monomial = product
                result[monomial] = result.get(monomial, ZERO) + sign * first * second
        return SPoly(result)

    def __rmul__(self, other):
        return self.scale(other)

    def parts(self):
        """
        Split into (even part, odd part)
        """
        even, odd = {}, {}
        for monomial, value in self.terms.items():
            (odd if monomial_parity(monomial) else even)[monomial] = value
        return SPoly(even), SPoly(odd)

    def parity(self):
        """
        Parity of a nonzero homogeneous polynomial

        :raises ValueError: for zero or inhomogeneous polynomials
        """
        parities = {monomial_parity(monomial) for monomial in self.terms}
        if len(parities) != 1:
            raise ValueError("polynomial is not homogeneous")
        return parities.pop()

    def degree_parts(self):
        """
        Split by total degree
        """
        parts = {}
        for monomial, value in self.terms.items():
            parts.setdefault(len(monomial), {})[monomial] = value
        return {degree: SPoly(terms) for degree, terms in sorted(parts.items())}

    def variables(self):
        return sorted({factor for monomial in self.terms for factor in monomial})

    def derivative(self, var):
        """
        Left partial derivative with respect to one variable
        """
        result = {}
        for monomial, value in self.terms.items():
            positions = [k for k, factor in enumerate(monomial) if factor == var]
            if not positions:
                continue
            first = positions[0]
            order = [first] + [k for k in range(len(monomial)) if k != first]
            sign = reorder_sign([factor.parity for factor in monomial], order)
            rest = monomial[:first] + monomial[first + 1:]
            result[rest] = result.get(rest, ZERO) + sign * len(positions) * value
        return SPoly(result)

    def __repr__(self):
        return "SPoly({!r})".format(str(self))

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for monomial, value in sorted(self.terms.items()):
            factors = []
            for var in dict.fromkeys(monomial):
                power = monomial.count(var)
                factors.append(str(var) if power == 1 else "{}^{}".format(var, power))
            magnitude = abs(value)
            text = "*".join(factors)
            if not text:
                text = format_scalar(magnitude)
            elif magnitude != 1:
                text = "{}*{}".format(format_scalar(magnitude), text)
            if not pieces:
                pieces.append(text if value > 0 else "-" + text)
            else:
                pieces.append(("+ " if value > 0 else "- ") + text)
        return " ".join(pieces)


def pair_contract(poly, pairing):
    """
    Second-order operator summing over unordered pairs of factor positions

    Each pair i < j of a monomial contributes the Koszul sign of moving the
    two factors to the front (in order), times pairing(v_i, v_j), times the
    remaining monomial.

    :param pairing: Callable returning the scalar pairing of two variables
    """
    result = {}
    for monomial, value in poly.terms.items():
        parities = [factor.parity for factor in monomial]
        size = len(monomial)
        for i in range(size):
            for j in range(i + 1, size):
                weight = pairing(monomial[i], monomial[j])
                if not weight:
                    continue
                rest = [k for k in range(size) if k != i and k != j]
                sign = reorder_sign(parities, [i, j] + rest)
                remaining = tuple(monomial[k] for k in rest)
                result[remaining] = result.get(remaining, ZERO) + sign * weight * value
    return SPoly(result)


def derivation(poly, images, parity):
    """
    Apply the derivation of the given parity fixed by its values on variables

    Variables missing from images are sent to zero.
    """
    result = SPoly()
    for monomial, value in poly.terms.items():
        for k, var in enumerate(monomial):
            image = images.get(var)
            if not image:
                continue
            prefix = monomial[:k]
            sign = swap_sign(sum(factor.parity for factor in prefix), parity)
            left = SPoly({prefix: value * sign})
            right = SPoly({monomial[k + 1:]: 1})
            result = result + left * image * right
    return result


def substitute(poly, images):
    """
    Algebra homomorphism sending each variable to a polynomial of the same parity

    Variables missing from images are kept.
    """
    result = SPoly()
    for monomial, value in poly.terms.items():
        term = SPoly.constant(value)
        for var in monomial:
            term = term * images.get(var, SPoly.variable(var))
        result = result + term
    return result
