"""
Tests for signs, graded spaces and pairing forms
"""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncbvkit.gradedcore import (GradedSpace, PairingForm, Parity, casimir_sign, congruence_transform, congruent_image,
                                diagonalize_symmetric, exact_inverse, exact_rank, forms_congruent, format_scalar,
                                graded_congruence, koszul_sign, matmul, pairing_inverse, parity_sign, rational_sqrt,
                                reorder_sign, swap_sign, to_scalar, transpose, validate_pairing)
from ncbvkit.ncbverrors import DegeneratePairingError, InputError, NcbvError, PairingError, UnknownLabelError
from ncbvkit.tracealgebra import TraceAlgebra


@st.composite
def graded_permutations(draw, max_size=6):
    size = draw(st.integers(min_value=0, max_value=max_size))
    items = draw(st.lists(st.integers(min_value=0, max_value=1), min_size=size, max_size=size))
    first = draw(st.permutations(list(range(size))))
    second = draw(st.permutations(list(range(size))))
    return items, first, second


def odd_pairing():
    space = GradedSpace([("x", 0), ("y", 1)])
    return PairingForm.from_labels(space, 1, {("x", "y"): 1, ("y", "x"): 1})


class TestSigns:
    @pytest.mark.parametrize("items, permutation, expected", [
        ((1, 1), (1, 0), -1),
        ((0, 1), (1, 0), 1),
        ((1, 1, 1), (1, 2, 0), 1),
        ((1, 0, 1), (2, 1, 0), -1),
        ((), (), 1),
    ])
    def test_koszul_sign_examples(self, items, permutation, expected):
        assert koszul_sign(items, permutation) == expected

    def test_koszul_sign_rejects_mismatched_lengths(self):
        with pytest.raises(ValueError):
            koszul_sign((1, 1), (0,))

    def test_koszul_sign_rejects_non_bijection(self):
        with pytest.raises(ValueError):
            koszul_sign((1, 1), (0, 0))

    @given(graded_permutations())
    @settings(max_examples=200)
    def test_koszul_sign_is_multiplicative(self, data):
        items, first, second = data
        moved = [0] * len(items)
        for i, parity in enumerate(items):
            moved[first[i]] = parity
        composite = [second[first[i]] for i in range(len(items))]
        assert koszul_sign(items, first) * koszul_sign(moved, second) == koszul_sign(items, composite)

    @given(graded_permutations())
    def test_identity_has_sign_one(self, data):
        items = data[0]
        assert koszul_sign(items, list(range(len(items)))) == 1

    @given(graded_permutations())
    def test_reorder_sign_inverts_positions(self, data):
        items, permutation, _ = data
        order = [0] * len(permutation)
        for old, new in enumerate(permutation):
            order[new] = old
        assert reorder_sign(items, order) == koszul_sign(items, permutation)

    @pytest.mark.parametrize("first, second, expected", [(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, -1)])
    def test_swap_sign(self, first, second, expected):
        assert swap_sign(first, second) == expected

    @pytest.mark.parametrize("parity, expected", [(0, 1), (1, -1), (2, 1), (Parity.ODD, -1)])
    def test_parity_sign(self, parity, expected):
        assert parity_sign(parity) == expected

    @pytest.mark.parametrize("letter, basis, trace_parity, expected", [
        (0, 0, 0, 1), (1, 1, 0, -1), (1, 0, 0, 1),
        (0, 0, 1, -1), (1, 0, 1, 1), (1, 1, 1, 1), (0, 1, 1, 1),
    ])
    def test_casimir_sign(self, letter, basis, trace_parity, expected):
        assert casimir_sign(letter, basis, trace_parity) == expected

    def test_parity_addition(self):
        assert Parity.ODD + Parity.ODD == Parity.EVEN
        assert Parity.EVEN + 1 == Parity.ODD


class TestScalars:
    @pytest.mark.parametrize("value, expected", [
        ("2/3", Fraction(2, 3)),
        (4, Fraction(4)),
        ("-6/4", Fraction(-3, 2)),
        (Fraction(1, 5), Fraction(1, 5)),
    ])
    def test_to_scalar(self, value, expected):
        assert to_scalar(value) == expected

    @pytest.mark.parametrize("value", [0.5, "abc", None])
    def test_to_scalar_rejects_inexact_values(self, value):
        with pytest.raises(InputError):
            to_scalar(value)

    def test_format_scalar(self):
        assert format_scalar(Fraction(-2, 3)) == "-2/3"
        assert format_scalar(Fraction(6, 3)) == "2"


class TestGradedSpace:
    def test_dimensions_and_lookup(self):
        space = GradedSpace([("a", 0), ("b", 1), ("c", 1)])
        assert space.dimensions() == (1, 2)
        assert space.index("c") == 2
        assert space.label(1) == "b"
        assert space.parities == (0, 1, 1)

    def test_unknown_label(self):
        space = GradedSpace([("a", 0)])
        with pytest.raises(UnknownLabelError) as error:
            space.index("z")
        assert error.value.label == "z"

    def test_duplicate_label(self):
        with pytest.raises(NcbvError):
            GradedSpace([("a", 0), ("a", 1)])

    def test_shifted_flips_parities(self):
        space = GradedSpace([("a", 0), ("b", 1)])
        assert space.shifted().parities == (1, 0)
        assert space.shifted().labels == space.labels


class TestPairing:
    def test_odd_pairing_is_valid(self):
        report = validate_pairing(odd_pairing())
        assert report.ok

    def test_swap_pairing_is_its_own_inverse(self):
        pairing = odd_pairing()
        assert pairing_inverse(pairing) == pairing

    def test_inverse_of_inverse(self):
        space = GradedSpace([("a", 0), ("b", 0), ("p", 1), ("q", 1)])
        pairing = PairingForm.from_rows(space, 0, [[2, 1, 0, 0], [1, 3, 0, 0], [0, 0, 0, 5], [0, 0, -5, 0]])
        inverse = pairing_inverse(pairing)
        product = matmul(pairing.rows(), inverse.rows())
        assert product == [[Fraction(int(i == j)) for j in range(4)] for i in range(4)]
        assert pairing_inverse(inverse) == pairing

    def test_degenerate_pairing(self):
        space = GradedSpace([("a", 0), ("b", 0)])
        pairing = PairingForm.from_labels(space, 0, {("a", "a"): 1})
        assert validate_pairing(pairing).reason == "degenerate"
        with pytest.raises(DegeneratePairingError):
            pairing_inverse(pairing)
        with pytest.raises(DegeneratePairingError):
            pairing.check()

    def test_asymmetric_pairing(self):
        space = GradedSpace([("a", 0), ("b", 0)])
        pairing = PairingForm.from_labels(space, 0, {("a", "b"): 1, ("b", "a"): 2})
        report = validate_pairing(pairing)
        assert not report.ok
        assert report.reason == "graded symmetry"
        assert report.cell == ("a", "b")
        with pytest.raises(PairingError):
            pairing.check()

    def test_parity_selection(self):
        space = GradedSpace([("x", 0), ("y", 1)])
        pairing = PairingForm.from_labels(space, 0, {("x", "y"): 1, ("y", "x"): 1})
        assert validate_pairing(pairing).reason == "parity selection"

    def test_from_rows_checks_shape(self):
        space = GradedSpace([("x", 0), ("y", 1)])
        with pytest.raises(PairingError):
            PairingForm.from_rows(space, 1, [[0, 1]])


class TestLinearAlgebra:
    def test_rank_and_inverse(self):
        rows = [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]
        assert exact_rank(rows) == 2
        assert matmul(rows, exact_inverse(rows)) == [[1, 0], [0, 1]]
        assert exact_rank([[1, 2], [2, 4]]) == 1

    def test_singular_inverse(self):
        with pytest.raises(DegeneratePairingError):
            exact_inverse([[1, 2], [2, 4]])

    @pytest.mark.parametrize("value, expected", [(Fraction(9, 4), Fraction(3, 2)), (2, None), (-1, None), (0, 0)])
    def test_rational_sqrt(self, value, expected):
        assert rational_sqrt(value) == expected

    def test_diagonalize_hyperbolic_plane(self):
        rows = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
        columns, diagonal = diagonalize_symmetric(rows)
        image = congruent_image(rows, transpose(columns))
        assert image == [[diagonal[0], 0], [0, diagonal[1]]]
        assert all(diagonal)

    def test_symmetric_congruence(self):
        source = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(-1)]]
        target = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
        transform = congruence_transform(source, target)
        assert congruent_image(source, transform) == target

    def test_antisymmetric_congruence(self):
        source = [[Fraction(0), Fraction(3)], [Fraction(-3), Fraction(0)]]
        target = [[Fraction(0), Fraction(1)], [Fraction(-1), Fraction(0)]]
        transform = congruence_transform(source, target, symmetric=False)
        assert congruent_image(source, transform) == target


class TestGradedCongruence:
    def test_queer_tensor_pairing_matches_gl(self):
        tensor = TraceAlgebra.q(1).tensor(TraceAlgebra.q1())
        gl = TraceAlgebra.gl(1)
        assert forms_congruent(tensor.pairing_space()[1], gl.pairing_space()[1])

    def test_odd_forms_of_equal_dimensions(self):
        space = GradedSpace([("x", 0), ("y", 1)])
        first = PairingForm.from_labels(space, 1, {("x", "y"): 2, ("y", "x"): 2})
        second = odd_pairing()
        transform = graded_congruence(first, second)
        assert congruent_image(first.rows(), transform) == second.rows()

    def test_dimension_mismatch(self):
        space = GradedSpace([("a", 0), ("b", 0)])
        other = GradedSpace([("p", 1), ("q", 1)])
        first = PairingForm.from_labels(space, 0, {("a", "a"): 1, ("b", "b"): 1})
        second = PairingForm.from_labels(other, 0, {("p", "q"): 1, ("q", "p"): -1})
        assert not forms_congruent(first, second)

    def test_parity_mismatch(self):
        space = GradedSpace([("a", 0), ("b", 1), ("c", 1)])
        even = PairingForm.from_labels(space, 0, {("a", "a"): 1, ("b", "c"): 1, ("c", "b"): -1})
        assert graded_congruence(even, odd_pairing()) is None
