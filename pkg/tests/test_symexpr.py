from fractions import Fraction

import pytest

from zcurv.symexpr import Atom, Expr, exp_linear, fn


def test_operator_word_normalisation():
    f = fn("f")
    assert f.d_plus().d_plus() == f.deriv_x()
    assert f.d_minus().d_minus() == f.deriv_y()
    assert (f.d_plus().d_minus() + f.d_minus().d_plus()).is_zero()
    # D+ D+ D- f = dx D- f
    assert f.d_minus().d_plus().d_plus() == f.d_minus().deriv_x()


def test_partial_derivatives_commute_with_everything():
    f = fn("f")
    assert f.deriv_x().deriv_y() == f.deriv_y().deriv_x()
    assert f.d_plus().deriv_x() == f.deriv_x().d_plus()


def test_odd_atoms_anticommute_and_square_to_zero():
    a, b = fn("alpha", 1), fn("beta", 1)
    assert (a * b + b * a).is_zero()
    assert (a * a).is_zero()
    c = fn("c")
    assert a * c == c * a


def test_parity_of_derivatives():
    a = fn("alpha", 1)
    assert a.parity() == 1
    assert a.d_plus().parity() == 0
    assert a.d_plus().d_minus().parity() == 1
    assert a.deriv_x().parity() == 1


def test_super_leibniz_in_the_symbolic_ring():
    a, b = fn("alpha", 1), fn("b")
    # D+(alpha*b) = D+(alpha)*b - alpha*D+(b)
    lhs = (a * b).d_plus()
    rhs = a.d_plus() * b - a * b.d_plus()
    assert lhs == rhs


def test_even_leibniz():
    u, v = fn("u"), fn("v")
    assert (u * v).deriv_x() == u.deriv_x() * v + u * v.deriv_x()


def test_substitution_applies_derivative_words():
    lnb = fn("lnb")
    expr = fn("alpha", 1).d_minus()
    out = expr.substitute({"alpha": lnb.d_plus()})
    assert out == lnb.d_plus().d_minus()
    assert out == -(lnb.d_minus().d_plus())


def test_substitution_in_products():
    a, b = fn("alpha", 1), fn("beta", 1)
    out = (a * b).substitute({"alpha": fn("u", 1), "beta": fn("v", 1)})
    assert out == fn("u", 1) * fn("v", 1)


def test_render_canonical():
    a, b = fn("a"), fn("B")
    assert (a.deriv_x() - b.deriv_y() * 2).render() == "a_x - 2*B_y"
    assert (a * b * 2).render() == "2*a*B"
    assert (a * a).render() == "a^2"
    assert fn("F").d_minus().d_plus().render() == "D+(D-(F))"
    assert Expr().render() == "0"
    assert (exp_linear([(2, "F1"), (-1, "F2")]) * Fraction(1, 2)).render() \
        == "(1/2)*exp(2*F1 - F2)"


def test_rational_constants():
    one = Expr.rational(1)
    assert (one * Fraction(3, 2)).render() == "3/2"
    assert (fn("a") - fn("a")).is_zero()


def test_exp_atoms_cannot_be_differentiated():
    with pytest.raises(ValueError):
        exp_linear([(1, "G")]).deriv_x()


def test_atom_render_with_mixed_word():
    atom = Atom("a", dx=1, dp=1)
    assert atom.render() == "D+(a)_x"
