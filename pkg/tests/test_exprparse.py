import math
from fractions import Fraction

import pytest

from zcurv.exprparse import (ExprSyntaxError, eval_float, eval_jet,
                             parse_expression, used_variables)
from zcurv.jets import Jet


def build(text, base=(0, 0), order=6):
    node = parse_expression(text)
    return eval_jet(node, Jet.variable("x", base, order),
                    Jet.variable("y", base, order))


def test_polynomials():
    assert build("x^2 - 2*x*y + 1") == Jet((0, 0), 6, {
        (2, 0): 1, (1, 1): -2, (0, 0): 1})


def test_rational_constants_are_exact():
    jet = build("2/3 + x/2")
    assert jet.coefficient(0, 0) == Fraction(2, 3)
    assert jet.coefficient(1, 0) == Fraction(1, 2)


def test_exp_ln_and_negative_powers():
    assert build("ln(exp(x))") == Jet.variable("x", (0, 0), 6)
    inv = build("(1+x)^-1")
    assert inv * build("1+x") == Jet.constant(1, order=6)


def test_unary_signs():
    assert build("-x + +y") == build("y - x")


def test_precedence():
    assert build("2*x^2") == build("2*(x^2)")
    assert build("-x^2") == -(build("x^2"))
    assert build("6/2/3") == Jet.constant(1, order=6)


def test_float_evaluation():
    node = parse_expression("exp(x) * ln(y) + 3/4")
    got = eval_float(node, 0.5, 2.0)
    assert got == pytest.approx(math.exp(0.5) * math.log(2.0) + 0.75)


def test_used_variables():
    assert used_variables(parse_expression("x^2 + 1")) == {"x"}
    assert used_variables(parse_expression("x*y")) == {"x", "y"}
    assert used_variables(parse_expression("3/2")) == set()


@pytest.mark.parametrize("text", [
    "x +", "(x", "x)", "2 **, x", "foo(x)", "x^y", "x^(1/2)", "@", "exp x",
])
def test_syntax_errors(text):
    with pytest.raises(ExprSyntaxError):
        parse_expression(text)


def test_error_positions_are_one_based():
    with pytest.raises(ExprSyntaxError) as err:
        parse_expression("x + @")
    assert "position 5" in str(err.value)


def test_evaluation_errors_surface():
    with pytest.raises(ValueError):
        build("ln(x)")  # zero body at the default base point
    with pytest.raises(ValueError):
        build("1/x")
