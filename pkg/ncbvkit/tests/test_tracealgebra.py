from fractions import Fraction
import itertools

import pytest

from ncbvkit.ncbverrors import AlgebraError, InputError
from ncbvkit.tracealgebra import TraceAlgebra

ALGEBRAS = [TraceAlgebra.gl(1), TraceAlgebra.gl(2, 1), TraceAlgebra.q(2), TraceAlgebra.q1(),
            TraceAlgebra.q(1).tensor(TraceAlgebra.q1())]


def product(algebra, left, right):
    """
    Product of two sparse coordinate maps
    """
    result = {}
    for (i, a), (j, b) in itertools.product(left.items(), right.items()):
        found = algebra.multiply(i, j)
        if found is not None:
            k, c = found
            result[k] = result.get(k, 0) + a * b * c
    return {k: v for k, v in result.items() if v}


def trace(algebra, element):
    return sum((algebra.trace_of(k) * v for k, v in element.items()), Fraction(0))


class TestConstruction:
    def test_gl_basis(self):
        gl = TraceAlgebra.gl(1)
        assert gl.names == ("E0_0", "E0_1", "E1_0", "E1_1")
        assert gl.parities == (0, 1, 1, 0)
        assert gl.trace_of(0) == 1
        assert gl.trace_of(3) == -1
        assert gl.trace_parity == 0

    def test_gl_products(self):
        gl = TraceAlgebra.gl(1)
        assert gl.multiply(1, 2) == (0, 1)
        assert gl.multiply(1, 1) is None

    def test_queer_square(self):
        q = TraceAlgebra.q(1)
        assert q.names == ("X0_0", "Y0_0")
        assert q.multiply(1, 1) == (0, -1)
        assert q.trace_of(1) == 1
        assert q.trace_parity == 1

    def test_clifford_square(self):
        q1 = TraceAlgebra.q1()
        assert q1.multiply(1, 1) == (0, 1)
        assert q1.trace_of(1) == 1

    @pytest.mark.parametrize("text, name", [
        ("gl:2", "gl(2|2)"),
        ("gl:2:0", "gl(2|0)"),
        ("q:3", "q(3)"),
        ("q1", "q(1)"),
    ])
    def test_from_name(self, text, name):
        assert TraceAlgebra.from_name(text).name == name

    @pytest.mark.parametrize("text", ["sl:2", "q:1:1", "gl", "gl:0:0"])
    def test_from_name_rejects(self, text):
        with pytest.raises(InputError):
            TraceAlgebra.from_name(text)

    @pytest.mark.parametrize("algebra, value", [
        (TraceAlgebra.gl(1), 0),
        (TraceAlgebra.gl(2, 1), 1),
        (TraceAlgebra.gl(1, 3), -2),
        (TraceAlgebra.q(2), 0),
        (TraceAlgebra.q1(), 0),
        (TraceAlgebra.gl(2, 0).tensor(TraceAlgebra.gl(3, 1)), 4),
    ], ids=lambda item: getattr(item, "name", str(item)))
    def test_unit_trace(self, algebra, value):
        assert algebra.unit_trace == value

    def test_unknown_basis_name(self):
        with pytest.raises(AlgebraError):
            TraceAlgebra.gl(1).index("E5_5")


@pytest.mark.parametrize("algebra", ALGEBRAS, ids=lambda algebra: algebra.name)
class TestStructure:
    def test_associative(self, algebra):
        size = len(algebra)
        for a, b, c in itertools.product(range(size), repeat=3):
            left = product(algebra, product(algebra, {a: 1}, {b: 1}), {c: 1})
            right = product(algebra, {a: 1}, product(algebra, {b: 1}, {c: 1}))
            assert left == right, (a, b, c)

    def test_products_respect_parity(self, algebra):
        for (left, right), (target, _) in algebra.products.items():
            assert (algebra.parities[left] + algebra.parities[right]) % 2 == algebra.parities[target]

    def test_trace_vanishes_on_supercommutators(self, algebra):
        size = len(algebra)
        for a, b in itertools.product(range(size), repeat=2):
            sign = -1 if algebra.parities[a] * algebra.parities[b] else 1
            assert trace(algebra, product(algebra, {a: 1}, {b: 1})) == \
                sign * trace(algebra, product(algebra, {b: 1}, {a: 1}))

    def test_casimir_inverts_the_trace_pairing(self, algebra):
        size = len(algebra)
        for i, k in itertools.product(range(size), repeat=2):
            total = sum((algebra.gram.get((i, j), 0) * algebra.gram_inverse.get((j, k), 0) for j in range(size)),
                        Fraction(0))
            assert total == (1 if i == k else 0)

    def test_pairing_space_is_valid(self, algebra):
        _, form = algebra.pairing_space()
        form.check()


class TestMatrices:
    def test_queer_matrix_round_trip(self):
        q = TraceAlgebra.q(2)
        coordinates = {0: Fraction(1), 3: Fraction(-2), 5: Fraction(1, 3), 6: Fraction(4)}
        rows = q.matrix_of(coordinates)
        assert rows[0][0] == 1 and rows[2][2] == 1
        assert rows[0][3] == Fraction(1, 3) and rows[2][1] == Fraction(-1, 3)
        assert q.coordinates(rows) == coordinates

    def test_gl_matrix_round_trip(self):
        gl = TraceAlgebra.gl(1, 1)
        coordinates = {0: Fraction(2), 1: Fraction(5)}
        assert gl.coordinates(gl.matrix_of(coordinates)) == coordinates

    def test_non_queer_matrix(self):
        q = TraceAlgebra.q(1)
        with pytest.raises(AlgebraError):
            q.coordinates([[1, 0], [0, 2]])

    def test_wrong_size(self):
        with pytest.raises(AlgebraError):
            TraceAlgebra.gl(1).coordinates([[1]])

    def test_clifford_has_no_matrix_form(self):
        with pytest.raises(AlgebraError):
            TraceAlgebra.q1().matrix_of({0: 1})


class TestTensor:
    def test_even_factors(self):
        tensor = TraceAlgebra.gl(1, 0).tensor(TraceAlgebra.gl(1, 0))
        assert len(tensor) == 1
        assert tensor.trace_of(0) == 1
        assert tensor.multiply(0, 0) == (0, 1)

    def test_two_odd_traces_give_an_even_trace(self):
        tensor = TraceAlgebra.q(1).tensor(TraceAlgebra.q1())
        assert tensor.names == ("X0_0*1", "X0_0*xi", "Y0_0*1", "Y0_0*xi")
        assert tensor.trace_parity == 0
        assert tensor.trace_of(3) == -1
