from fractions import Fraction
import math

import pytest

from weil.errors import ArityViolation, DomainError, ExprSyntaxError, UnknownIdentifier
from weil.expr import (
    Add,
    Box,
    Call,
    Const,
    Mul,
    Pow,
    SmoothMap,
    Var,
    canonical,
    derive,
    eval_real,
    parse,
    pretty,
    substitute,
    to_polynomial,
)


def test_parse_shapes():
    assert parse("x0^2 + 3*x1", 2) == Add((Pow(Var(0), 2), Mul((Const(Fraction(3)), Var(1)))))
    assert parse("sin(x0)*exp(x1)", 2) == Mul((Call("sin", Var(0)), Call("exp", Var(1))))


@pytest.mark.parametrize("src, pos", [("x0 +", 4), ("(x0", 3), ("x0^-1", 3), ("2 $ x0", 2)])
def test_syntax_errors_carry_positions(src, pos):
    with pytest.raises(ExprSyntaxError) as info:
        parse(src, 2)
    assert info.value.position == pos


def test_unknown_identifier_and_arity():
    with pytest.raises(UnknownIdentifier):
        parse("foo(x0)", 1)
    with pytest.raises(ArityViolation) as info:
        parse("x0 + x2", 2)
    assert info.value.position == 5


def test_precedence():
    # ^ binds tighter than unary minus, right-assoc; binary ops left-assoc
    assert eval_real(parse("-x0^2", 1), (3,)) == -9
    assert eval_real(parse("2^3^2", 0), ()) == 512
    assert eval_real(parse("8/4/2", 0), ()) == 1
    assert eval_real(parse("5 - 3 - 1", 0), ()) == 1


def test_decimals_are_exact():
    assert eval_real(parse("0.1 + 0.2", 0), ()) == Fraction(3, 10)


def test_derivatives():
    assert pretty(derive(parse("x0^3", 1), 0)) == "3*x0^2"
    assert derive(parse("sin(x0)*exp(x1)", 2), 0) == canonical(parse("cos(x0)*exp(x1)", 2))
    assert derive(parse("x0/x1", 2), 1) == canonical(parse("-x0/x1^2", 2))


def test_derive_commutes_with_sums():
    a, b = parse("x0^2*x1", 2), parse("sin(x1)", 2)
    lhs = canonical(derive(Add((a, b)), 1))
    rhs = canonical(Add((derive(a, 1), derive(b, 1))))
    assert lhs == rhs


def test_log_and_sqrt_derivatives_are_quotients():
    assert pretty(derive(parse("log(x0)", 1), 0)) == "1/x0"
    d = derive(parse("sqrt(x0)", 1), 0)
    assert math.isclose(eval_real(d, (4.0,)), 0.25)


def test_eval_real():
    assert eval_real(parse("x0^2", 1), (3,)) == 9
    assert eval_real(parse("sin(x0)", 1), (0,)) == 0
    for src, pt in [("log(x0)", (0,)), ("sqrt(x0)", (-1,)), ("1/x0", (0,))]:
        with pytest.raises(DomainError):
            eval_real(parse(src, 1), pt)


def test_finite_differences_on_polynomials():
    e = parse("x0^3*x1 - 2*x0*x1^2 + x1/3", 2)
    p, h = (0.7, -1.3), 1e-5
    for i in range(2):
        up = list(p); up[i] += h
        dn = list(p); dn[i] -= h
        fd = (eval_real(e, up) - eval_real(e, dn)) / (2 * h)
        exact = float(eval_real(derive(e, i), p))
        assert abs(fd - exact) <= 1e-6 * max(1.0, abs(exact))


def test_substitute_and_polynomial():
    e = substitute(parse("x0^2", 1), [parse("x0 + x1", 2)])
    assert str(to_polynomial(e, 2)) == "x0^2 + 2*x0*x1 + x1^2"


def test_canonical_form_is_idempotent():
    e = parse("x1*(2 + x0) + 0*x0 + 1*x1^1", 2)
    c = canonical(e)
    assert canonical(c) == c
    assert canonical(parse(pretty(e), 2)) == c
    assert pretty(parse(pretty(e), 2)) == pretty(e)


def test_smooth_map_and_box():
    f = SmoothMap.parse(["x0*x1", "sin(x0)"], 2, domain=Box.of([(0, 1), (0, 1)]))
    assert (f.arity, f.coarity) == (2, 2)
    assert f.has_primitives() and not f.is_polynomial()
    assert f.domain.contains((0.5, 0.5)) and not f.domain.contains((1, 0.5))
    with pytest.raises(ArityViolation):
        SmoothMap.parse(["x0"], 1, domain=Box.of([(0, 1), (0, 1)]))
