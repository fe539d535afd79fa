from fractions import Fraction
import random

import pytest

from ncbvkit.bvcalculus import delta
from ncbvkit.cyclicspace import EVEN_PAIRING, ODD_PAIRING, FElement, FSpace, monomial_basis, random_element
from ncbvkit.derham import (DForm, OddFourier, bigrading, d_dr, darboux_basis, intertwine_check, inverse_fourier,
                            odd_fourier, pull_back)
from ncbvkit.gradedcore import GradedSpace, PairingForm
from ncbvkit.matrixrealization import MatrixModel
from ncbvkit.ncbverrors import DegeneratePairingError, PairingError
from ncbvkit.tracealgebra import TraceAlgebra


def odd_model():
    space = GradedSpace([("x", 0), ("y", 1)])
    pairing = PairingForm.from_labels(space, 1, {("x", "y"): 1, ("y", "x"): 1})
    return MatrixModel(FSpace(space, ODD_PAIRING), pairing, TraceAlgebra.gl(1))


def even_model():
    space = GradedSpace([("e", 0)])
    pairing = PairingForm.from_labels(space, 0, {("e", "e"): 1})
    return MatrixModel(FSpace(space, EVEN_PAIRING), pairing, TraceAlgebra.q(1))


def skewed_pairing():
    space = GradedSpace([("x0", 0), ("x1", 0), ("y0", 1), ("y1", 1)])
    values = {("x0", "y0"): 1, ("x0", "y1"): 1, ("x1", "y1"): 1}
    values.update({(b, a): value for (a, b), value in list(values.items())})
    return PairingForm.from_labels(space, 1, values)


def random_form(coordinates, rng, terms=4, degree=3):
    size = len(coordinates)
    result = {}
    for _ in range(terms):
        differentials = tuple(sorted(rng.sample(range(size), rng.randint(0, size))))
        monomial = tuple(sorted(rng.randrange(size) for _ in range(rng.randint(0, degree))))
        result[(differentials, monomial)] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return DForm(coordinates, result)


class TestDeRham:
    def test_differential_of_a_coordinate(self):
        form = DForm(("u", "v"), {((), (0,)): 1})
        assert d_dr(form) == DForm(("u", "v"), {((0,), ()): 1})

    def test_sign_of_wedge_reordering(self):
        form = DForm(("u", "v"), {((0,), (0, 1)): 1})
        assert d_dr(form) == DForm(("u", "v"), {((0, 1), (0,)): -1})

    def test_d_squared_is_zero(self):
        rng = random.Random(2)
        coordinates = ("u", "v", "w")
        for _ in range(20):
            assert not d_dr(d_dr(random_form(coordinates, rng)))

    def test_bigrading(self):
        form = DForm(("u", "v"), {((0,), (1, 1)): 1, ((), ()): 2})
        assert bigrading(form) == {(1, 2), (0, 0)}
        assert str(DForm(("u", "v"))) == "0"


@pytest.mark.parametrize("build, largest", [(odd_model, 3), (even_model, 4)], ids=["gl(1|1)", "q(1)"])
class TestFourier:
    def test_laplacian_becomes_the_de_rham_differential(self, build, largest):
        model = build()
        for count in range(1, largest + 1):
            for term in monomial_basis(model.fspace, count):
                assert intertwine_check(FElement(model.fspace, {term: 1}), model), term

    def test_inverse_transform(self, build, largest):
        model = build()
        rng = random.Random(9)
        for count in range(1, largest + 1):
            poly = model.mu(random_element(model.fspace, count, rng))
            assert inverse_fourier(odd_fourier(poly, model), model) == poly

    def test_every_odd_coordinate_has_a_partner(self, build, largest):
        fourier = OddFourier(build())
        assert len(fourier.partner) == len(fourier.even)


class TestDarboux:
    def test_non_darboux_pairing_is_rejected(self):
        pairing = skewed_pairing()
        model = MatrixModel(FSpace(pairing.space, ODD_PAIRING), pairing, TraceAlgebra.gl(1))
        with pytest.raises(PairingError):
            OddFourier(model)

    def test_odd_standard_form(self):
        basis = darboux_basis(skewed_pairing())
        standard = basis.standard
        assert standard.value(0, 2) == 1
        assert standard.value(1, 3) == 1
        assert standard.value(0, 3) == 0
        assert standard.value(1, 2) == 0

    def test_standard_form_is_darboux(self):
        standard = darboux_basis(skewed_pairing()).standard
        model = MatrixModel(FSpace(standard.space, ODD_PAIRING), standard, TraceAlgebra.gl(1))
        fourier = OddFourier(model)
        assert len(fourier.partner) == len(fourier.even)

    def test_even_standard_form(self):
        space = GradedSpace([("e", 0), ("p", 1), ("q", 1)])
        pairing = PairingForm.from_labels(space, 0, {("e", "e"): 2, ("p", "q"): 3, ("q", "p"): -3})
        standard = darboux_basis(pairing).standard
        assert standard.value(0, 0) == 2
        assert standard.value(1, 2) == 1
        assert standard.value(2, 1) == -1

    def test_degenerate_pairing(self):
        space = GradedSpace([("x", 0), ("y", 1)])
        with pytest.raises(DegeneratePairingError):
            darboux_basis(PairingForm(space, 1, {}))

    def test_pull_back_commutes_with_delta(self):
        pairing = skewed_pairing()
        basis = darboux_basis(pairing)
        fspace = FSpace(pairing.space, ODD_PAIRING)
        rng = random.Random(4)
        for count in range(2, 5):
            x = random_element(fspace, count, rng)
            assert delta(pull_back(x, basis), basis.standard) == pull_back(delta(x, pairing), basis)
