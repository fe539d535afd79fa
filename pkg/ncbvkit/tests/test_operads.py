import itertools

import pytest
from sympy.combinatorics import Permutation

from ncbvkit.ncbverrors import InputError
from ncbvkit.operads import (PermTensor, TwistedPermTensor, all_permutations, contract_comb, contract_oracle,
                             printed_rule, printed_rule_discrepancies, realize, relabel)

FLAGS = ("f", "a", "g", "b")


class TestPermTensor:
    def test_cycles_must_partition_the_flags(self):
        with pytest.raises(InputError):
            PermTensor.from_cycles(("a", "b"), [["a"]])
        with pytest.raises(InputError):
            PermTensor.from_cycles(("a", "b"), [["a", "b"], ["a"]])

    def test_from_sympy_includes_fixed_points(self):
        tensor = PermTensor.from_sympy(("p", "q", "r"), Permutation([[0, 1]], size=3))
        assert tensor == PermTensor.from_cycles(("p", "q", "r"), [["p", "q"], ["r"]])
        assert tensor.permutations() == [([("p", "q"), ("r",)], 1)]

    def test_to_sympy(self):
        tensor = PermTensor(("p", "q", "r"))
        assert tensor.to_sympy([["p", "q"], ["r"]]).signature() == -1
        assert tensor.to_sympy([["p", "q", "r"]]).signature() == 1

    def test_rotation_of_a_cycle(self):
        assert PermTensor.from_cycles(("p", "q", "r"), [["q", "r", "p"]]) == \
            PermTensor.from_cycles(("p", "q", "r"), [["p", "q", "r"]])

    def test_twisted_cycle_order_is_an_orientation(self):
        forward = TwistedPermTensor.from_cycles(("p", "q"), [["p"], ["q"]])
        backward = TwistedPermTensor.from_cycles(("p", "q"), [["q"], ["p"]])
        assert forward == backward.scale(-1)
        assert PermTensor.from_cycles(("p", "q"), [["p"], ["q"]]) == \
            PermTensor.from_cycles(("p", "q"), [["q"], ["p"]])

    def test_twisted_reversal_sign(self):
        labels = ("p", "q", "r")
        forward = TwistedPermTensor.from_cycles(labels, [["p"], ["q"], ["r"]])
        backward = TwistedPermTensor.from_cycles(labels, [["r"], ["q"], ["p"]])
        assert forward == backward.scale(-1)

    def test_all_permutations(self):
        tensors = all_permutations(PermTensor, ("p", "q", "r"))
        assert len(tensors) == 6
        for first, second in itertools.combinations(tensors, 2):
            assert first != second


class TestContraction:
    def test_join(self):
        tensor = PermTensor.from_cycles(FLAGS, [["f", "a"], ["g", "b"]])
        assert contract_comb(tensor, "f", "g") == PermTensor.from_cycles(("a", "b"), [["a", "b"]])

    def test_split(self):
        tensor = PermTensor.from_cycles(FLAGS, [["f", "a", "g", "b"]])
        assert contract_comb(tensor, "f", "g") == PermTensor.from_cycles(("a", "b"), [["a"], ["b"]])

    def test_adjacent_flags(self):
        tensor = PermTensor.from_cycles(FLAGS, [["f", "g", "a", "b"]])
        assert not contract_comb(tensor, "f", "g").element

    def test_twisted_join_has_a_sign(self):
        tensor = TwistedPermTensor.from_cycles(FLAGS, [["f", "a"], ["g", "b"]])
        assert contract_comb(tensor, "f", "g") == TwistedPermTensor.from_cycles(("a", "b"), [["a", "b"]], -1)

    def test_twisted_split_doubles(self):
        tensor = TwistedPermTensor.from_cycles(FLAGS, [["f", "a", "g", "b"]])
        assert contract_comb(tensor, "f", "g") == TwistedPermTensor.from_cycles(("a", "b"), [["b"], ["a"]], 2)

    def test_contracting_a_flag_with_itself(self):
        tensor = PermTensor.from_cycles(FLAGS, [["f", "a"], ["g", "b"]])
        with pytest.raises(InputError):
            contract_comb(tensor, "f", "f")
        with pytest.raises(InputError):
            contract_comb(tensor, "f", "z")

    def test_join_on_the_trace_side(self):
        tensor = PermTensor.from_cycles(FLAGS, [["f", "a"], ["g", "b"]])
        contracted = contract_oracle(realize(tensor, 1), "f", "g")
        assert contracted.poly == realize(PermTensor.from_cycles(("a", "b"), [["a", "b"]]), 1).poly


@pytest.mark.parametrize("cls", [PermTensor, TwistedPermTensor], ids=["untwisted", "twisted"])
class TestTraceRealization:
    def test_contractions_agree_with_traces(self, cls):
        labels = ("p", "q", "r")
        for tensor in all_permutations(cls, labels):
            realization = realize(tensor, 2)
            for first, second in itertools.permutations(labels, 2):
                oracle = contract_oracle(realization, first, second)
                combinatorial = realize(contract_comb(tensor, first, second), 2)
                assert oracle.poly == combinatorial.poly, (tensor, first, second)

    def test_contraction_commutes_with_relabeling(self, cls):
        mapping = {"f": "u", "a": "v", "g": "w", "b": "s"}
        for tensor in all_permutations(cls, FLAGS):
            left = contract_comb(relabel(tensor, mapping), "u", "w")
            right = relabel(contract_comb(tensor, "f", "g"), mapping)
            assert left == right


def test_printed_rule_on_a_join(caplog):
    tensor = PermTensor.from_cycles(FLAGS, [["f", "a"], ["g", "b"]])
    assert printed_rule(tensor, "f", "g") == PermTensor.from_cycles(("a", "b"), [["a"], ["b"]])
    found = printed_rule_discrepancies(tensor)
    assert ("f", "g") in found
    assert "Printed contraction rule differs" in caplog.text


def test_relabel_must_be_injective():
    tensor = PermTensor.from_cycles(("p", "q"), [["p", "q"]])
    with pytest.raises(InputError):
        relabel(tensor, {"p": "q"})
