"""
Finite-dimensional superalgebras with an invariant trace

Every algebra is given in a monomial basis: the product of two basis
elements is zero or a rational multiple of one basis element. This covers
the supermatrix algebras gl(k|k'), the queer algebras q(N), the Clifford
algebra Cl(1) = k[xi]/(xi^2 = 1) and their tensor products. The trace
pairing g_ij = t(e_i e_j) and its inverse G^{ij} (the Casimir two-tensor)
are precomputed.
"""
from fractions import Fraction
from logging import getLogger
import re

from .gradedcore import GradedSpace, PairingForm, ONE, ZERO, exact_inverse, parity_sign, swap_sign
from .ncbverrors import AlgebraError, InputError

SUPPORTED_ALGEBRAS = {
    "gl": "gl:N for gl(N|N), gl:k:k2 for gl(k|k2), supertrace",
    "q": "q:N for the queer algebra q(N), odd trace",
    "q1": "Clifford algebra Cl(1) = q(1) with basis {1, xi}, xi^2 = 1, odd trace",
}


class TraceAlgebra:
    """
    Superalgebra with a monomial basis and an invariant trace

    :param name: Display name, for example "gl(2|2)"
    :param basis: (name, parity) pairs of the basis elements
    :param products: Map (i, j) to (k, c) meaning e_i e_j = c e_k
    :param trace: Map i to t(e_i); missing entries are zero
    :param trace_parity: Parity of the trace functional
    :param variables: (symbol, index tuple) naming the coordinate of each basis element
    :param unit_trace: t(1), the value of the trace on the unit
    """
    def __init__(self, name, basis, products, trace, trace_parity, variables, unit_trace=ZERO):
        self.logger = getLogger(__name__)
        self.name = name
        self.names = tuple(label for label, _ in basis)
        self.parities = tuple(int(parity) % 2 for _, parity in basis)
        self.products = {key: (target, Fraction(coefficient))
                         for key, (target, coefficient) in products.items() if coefficient}
        self.trace = {index: Fraction(value) for index, value in trace.items() if value}
        self.trace_parity = int(trace_parity) % 2
        self.variables = tuple(variables)
        self.unit_trace = Fraction(unit_trace)
        self.kind = None
        self.shape = None
        self._followers = [[] for _ in self.names]
        for (left, right), (target, coefficient) in sorted(self.products.items()):
            self._followers[left].append((right, target, coefficient))
        self.gram = {}
        for (left, right), (target, coefficient) in self.products.items():
            value = coefficient * self.trace.get(target, ZERO)
            if value:
                self.gram[(left, right)] = value
        self.gram_inverse = self._invert_gram()

    def __len__(self):
        return len(self.names)

    def __repr__(self):
        return "TraceAlgebra({})".format(self.name)

    def _invert_gram(self):
        size = len(self.names)
        partners = {}
        for (row, col), value in self.gram.items():
            if row in partners:
                break
            partners[row] = (col, value)
        else:
            if len(partners) == size and len({col for col, _ in partners.values()}) == size:
                return {(col, row): 1 / value for row, (col, value) in partners.items()}
        self.logger.debug("Inverting the trace pairing of %s by elimination", self.name)
        rows = [[self.gram.get((i, j), ZERO) for j in range(size)] for i in range(size)]
        inverse = exact_inverse(rows)
        return {(i, j): inverse[i][j] for i in range(size) for j in range(size) if inverse[i][j]}

    def multiply(self, left, right):
        """
        Product of two basis elements as (index, coefficient), or None if zero
        """
        return self.products.get((left, right))

    def followers(self, index):
        """
        Nonzero right products of a basis element as (right, target, coefficient)
        """
        return self._followers[index]

    def trace_of(self, index):
        return self.trace.get(index, ZERO)

    def pairing_space(self):
        """
        The algebra as a graded space with its trace pairing

        :return: (GradedSpace, PairingForm) with labels the basis names
        """
        space = GradedSpace(zip(self.names, self.parities))
        return space, PairingForm(space, self.trace_parity, dict(self.gram))

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise AlgebraError("{} has no basis element {!r}".format(self.name, name)) from None

    def tensor(self, other):
        """
        Graded tensor product with the product of the two traces

        (a x b)(c x d) = (-1)^{|b||c|} ac x bd and (t x t')(a x b) = (-1)^{|t'||a|} t(a) t'(b).
        """
        size = len(other)
        basis, variables, trace, products = [], [], {}, {}
        for i, name in enumerate(self.names):
            for j, other_name in enumerate(other.names):
                basis.append(("{}*{}".format(name, other_name), self.parities[i] + other.parities[j]))
                variables.append(("T", (i, j)))
                value = self.trace_of(i) * other.trace_of(j)
                if value:
                    trace[i * size + j] = value * swap_sign(other.trace_parity, self.parities[i])
        for (a, c), (ac, first) in self.products.items():
            for (b, d), (bd, second) in other.products.items():
                sign = swap_sign(other.parities[b], self.parities[c])
                products[(a * size + b, c * size + d)] = (ac * size + bd, sign * first * second)
        return TraceAlgebra("{} x {}".format(self.name, other.name), basis, products, trace,
                            self.trace_parity + other.trace_parity, variables,
                            self.unit_trace * other.unit_trace)

    def matrix_of(self, coordinates):
        """
        Supermatrix of an element given by its basis coordinates

        gl(k|k') elements give (k+k') x (k+k') matrices, q(N) elements the
        2N x 2N block matrix [[X, Y], [-Y, X]]. Coordinates may be any ring
        elements supporting addition and negation.
        """
        if self.kind == "gl":
            size = sum(self.shape)
            rows = [[None] * size for _ in range(size)]
            for index, value in coordinates.items():
                row, col = divmod(index, size)
                rows[row][col] = value
            return rows
        if self.kind == "q":
            size = self.shape[0]
            rows = [[None] * (2 * size) for _ in range(2 * size)]
            for index, value in coordinates.items():
                odd, rest = divmod(index, size * size)
                row, col = divmod(rest, size)
                if odd:
                    rows[row][size + col] = value
                    rows[size + row][col] = -value
                else:
                    rows[row][col] = value
                    rows[size + row][size + col] = value
            return rows
        raise AlgebraError("{} has no supermatrix form".format(self.name))

    def coordinates(self, rows, zero=ZERO):
        """
        Basis coordinates of a supermatrix

        :raises AlgebraError: if the matrix has the wrong size or, for q(N),
            does not commute with the odd involution
        """
        def entry(row, col):
            value = rows[row][col]
            return zero if value is None else value

        if self.kind == "gl":
            size = sum(self.shape)
            if len(rows) != size or any(len(row) != size for row in rows):
                raise AlgebraError("{} needs a {}x{} matrix".format(self.name, size, size))
            return {row * size + col: entry(row, col) for row in range(size) for col in range(size)
                    if entry(row, col) != zero}
        if self.kind == "q":
            size = self.shape[0]
            if len(rows) != 2 * size or any(len(row) != 2 * size for row in rows):
                raise AlgebraError("{} needs a {}x{} matrix".format(self.name, 2 * size, 2 * size))
            result = {}
            for row in range(size):
                for col in range(size):
                    x, y = entry(row, col), entry(row, size + col)
                    if entry(size + row, size + col) != x or entry(size + row, col) != -y:
                        raise AlgebraError("matrix does not commute with the odd involution at ({}, {})"
                                           .format(row, col))
                    if x != zero:
                        result[row * size + col] = x
                    if y != zero:
                        result[size * size + row * size + col] = y
            return result
        raise AlgebraError("{} has no supermatrix form".format(self.name))

    @classmethod
    def gl(cls, even, odd=None):
        """
        gl(k|k') with the supertrace; gl(N) means gl(N|N)

        Matrix indices 0..k-1 are even, k..k+k'-1 odd.
        """
        odd = even if odd is None else odd
        if even < 0 or odd < 0 or even + odd < 1:
            raise InputError("gl({}|{}) is not a valid size".format(even, odd))
        size = even + odd

        def parity(index):
            return 0 if index < even else 1

        basis, variables, products, trace = [], [], {}, {}
        for a in range(size):
            for b in range(size):
                basis.append(("E{}_{}".format(a, b), parity(a) + parity(b)))
                variables.append(("A", (a, b)))
                for d in range(size):
                    products[(a * size + b, b * size + d)] = (a * size + d, ONE)
            trace[a * size + a] = parity_sign(parity(a))
        algebra = cls("gl({}|{})".format(even, odd), basis, products, trace, 0, variables, even - odd)
        algebra.kind, algebra.shape = "gl", (even, odd)
        return algebra

    @classmethod
    def q(cls, size):
        """
        The queer algebra q(N) with the odd trace otr(G) = tr(Y)

        Basis E_ab (even, block X) followed by E_ab xi (odd, block Y), where
        xi is the block matrix [[0, 1], [-1, 0]], so xi^2 = -1.
        """
        if size < 1:
            raise InputError("q({}) is not a valid size".format(size))
        square = size * size
        basis, variables, products, trace = [], [], {}, {}
        for odd in (0, 1):
            for a in range(size):
                for b in range(size):
                    basis.append(("{}{}_{}".format("Y" if odd else "X", a, b), odd))
                    variables.append(("Y" if odd else "X", (a, b)))
        for m in (0, 1):
            for n in (0, 1):
                sign = -1 if m and n else 1
                target = ((m + n) % 2) * square
                for a in range(size):
                    for b in range(size):
                        for d in range(size):
                            products[(m * square + a * size + b, n * square + b * size + d)] = (
                                target + a * size + d, sign)
        for a in range(size):
            trace[square + a * size + a] = ONE
        algebra = cls("q({})".format(size), basis, products, trace, 1, variables)
        algebra.kind, algebra.shape = "q", (size,)
        return algebra

    @classmethod
    def q1(cls):
        """
        Cl(1) = k[xi]/(xi^2 = 1) with otr(x + y xi) = y
        """
        basis = [("1", 0), ("xi", 1)]
        products = {(0, 0): (0, ONE), (0, 1): (1, ONE), (1, 0): (1, ONE), (1, 1): (0, ONE)}
        algebra = cls("q(1)", basis, products, {1: ONE}, 1, [("Q", (0,)), ("Q", (1,))])
        algebra.kind, algebra.shape = "q1", ()
        return algebra

    @classmethod
    def from_name(cls, text):
        """
        Parse "gl:N", "gl:k:k2", "q:N" or "q1"

        :raises InputError: on an unknown algebra name
        """
        text = text.strip()
        if text == "q1":
            return cls.q1()
        match = re.fullmatch(r"(gl|q):(\d+)(?::(\d+))?", text)
        if match is None or (match.group(1) == "q" and match.group(3) is not None):
            raise InputError("unknown algebra {!r}; supported: {}".format(
                text, "; ".join(SUPPORTED_ALGEBRAS.values())))
        if match.group(1) == "q":
            return cls.q(int(match.group(2)))
        second = match.group(3)
        return cls.gl(int(match.group(2)), None if second is None else int(second))
