from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import arrays, matrix, naive_matmul, tuples
from tenskit.errors import ParseError, ValidationError
from tenskit.exprlang import (Compose, ContractStep, Factor, MulStep, Outer, Scale, Sum, evaluate, evaluate_text,
                              free_labels, parse, pretty_print, reference_evaluate, validate)
from tenskit.numeric import Array
from tenskit.tensormap import TensorMap, compose_general, parse_labels

X = [[1, 2], [3, 4]]


def F(name, subs="", supers=""):
    return Factor(name, parse_labels(subs), parse_labels(supers))


ENV = {
    "g": TensorMap(Array(2, 2, 0, (1, 2, 2, 5)), "ab", ""),
    "u": TensorMap(Array.vector([1, 0]), "", "a"),
    "v": TensorMap(Array.vector([0, 1]), "", "a"),
    "x": TensorMap(matrix(X), "a", "b"),
    "d": TensorMap(matrix([[1, 0], [0, 1]]), "a", "b"),
}


class TestParse:
    def test_juxtaposition(self):
        e = parse("g_ab u^a v^b")
        assert e == Compose(Compose(F("g", "ab"), F("u", "", "a")), F("v", "", "b"))

    def test_explicit_operators_agree(self):
        assert parse("f_a^b . g_c^a") == parse("f_a^b ∘ g_c^a") == parse("f_a^b g_c^a")

    def test_braces_and_decorations(self):
        e = parse("t_{a'}^{b*}")
        assert e == F("t", "a'", "b*")

    def test_outer_alias(self):
        assert parse("u^a ⊗ v^b") == parse("u^a & v^b") == Outer(F("u", "", "a"), F("v", "", "b"))

    def test_scalars_and_sums(self):
        e = parse("2 x_a^b - 1/2 d_a^b")
        assert e == Sum(Scale(Fraction(2), F("x", "a", "b")), Scale(Fraction(-1, 2), F("d", "a", "b")))

    @pytest.mark.parametrize("text", ["", "x_a^", "x_a^b +", "(x_a^b", "x_a^b)", "x_a^b^c", "3", "x_a^b $"])
    def test_syntax_errors(self, text):
        with pytest.raises(ParseError):
            parse(text)

    def test_error_position(self):
        with pytest.raises(ParseError) as info:
            parse("x_a^b + + y")
        assert info.value.pos == 8


class TestDiscipline:
    def test_legitimate(self):
        parse("s_a t^a")
        parse("s_a ∘ t^a")

    def test_reversed_rejected(self):
        with pytest.raises(ValidationError) as info:
            parse("t^a . s_a")
        assert str(info.value.label) == "a"
        assert "columns" in str(info.value)

    @pytest.mark.parametrize("text", ["t_aa", "t^aa", "s_a t^a r^a", "u^a ⊗ v^a", "x_a^b + x_a^c", "s_a t_a"])
    def test_rejected(self, text):
        with pytest.raises(ValidationError):
            parse(text)

    def test_self_contraction(self):
        plan = validate(parse("x_a^a"), ENV)
        assert [type(s) for s in plan.steps][-1] is ContractStep
        assert free_labels(parse("x_a^a")) == ((), ())

    def test_sum_order_insensitive(self):
        parse("t_ab + t_ba")

    def test_crossed_plan(self):
        plan = validate(parse("s_ab t_f^bda"))
        assert sum(isinstance(s, MulStep) for s in plan.steps) == 1
        assert [str(x) for x in plan.subs + plan.supers] == ["f", "d"]

    def test_unbound_and_valence(self):
        with pytest.raises(ValidationError):
            validate(parse("y_a^b"), ENV)
        with pytest.raises(ValidationError):
            validate(parse("x_ab"), ENV)


class TestEvaluate:
    def test_metric_pairing(self):
        assert evaluate_text("g_ab u^a v^b", ENV).coeffs.item() == 2

    def test_trace(self):
        assert evaluate_text("x_a^a", ENV).coeffs.item() == 5

    def test_delta(self):
        assert evaluate_text("d_a^b v^a", ENV).coeffs == ENV["v"].coeffs

    def test_matrix_product(self):
        got = evaluate_text("x_a^b x_c^a", ENV)
        assert got.coeffs.rows() == naive_matmul(X, X)

    def test_order_of_scalar_factors(self):
        env = {"s": TensorMap(Array.vector([3, 4], upper=False), "a", ""), "t": TensorMap(Array.vector([1, 2]), "", "a")}
        assert evaluate_text("s_a t^a", env).coeffs.item() == 11

    def test_linear_combination(self):
        got = evaluate_text("2 x_a^b - d_a^b", ENV)
        assert got.coeffs.rows() == [[1, 4], [6, 7]]

    def test_crossed(self):
        s = TensorMap(Array.from_function(2, 2, 0, lambda i, _: 3 * i[0] + i[1]), "ab", "")
        t = TensorMap(Array.from_function(2, 1, 3, lambda i, j: i[0] + 2 * j[0] - j[1] + 5 * j[2]), "f", "bda")
        q = evaluate_text("s_ab t_f^bda", {"s": s, "t": t})
        for f, d in tuples(2, 2):
            assert q.coeffs[f, d] == sum(s.coeffs[a, b] * t.coeffs[f, b, d, a] for a, b in tuples(2, 2))

    @settings(max_examples=60)
    @given(st.data())
    def test_engine_cross_check(self, data):
        dim = data.draw(st.integers(1, 3))
        f = TensorMap(data.draw(arrays(dim=dim, subs=1, supers=1)), "a", "b")
        g = TensorMap(data.draw(arrays(dim=dim, subs=1, supers=1)), "c", "a")
        env = {"f": f, "g": g}
        want = compose_general(f, g, ["a"])
        e = parse("f_a^b . g_c^a")
        assert evaluate(validate(e, env), env) == want == reference_evaluate(e, env)


EXPRS = ["g_ab u^a v^b", "2 x_a^b", "x_a^b + -1 d_a^b", "(x_a^b + d_a^b) x_c^a", "x_a^b (x_c^a + d_c^a)",
         "u^a ⊗ v^b", "1/3 (2 x_a^b)", "x_a^b + (d_a^b + x_a^b)", "(2 x_a^b) . d_c^a", "t_{a''}^{b*}"]


@pytest.mark.parametrize("text", EXPRS)
def test_round_trip(text):
    e = parse(text)
    assert parse(pretty_print(e)) == e
    assert pretty_print(parse(pretty_print(e))) == pretty_print(e)
