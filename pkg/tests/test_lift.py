from fractions import Fraction

import pytest

from weil.algebra import augmentation, identity, new_morphism, preset, tensor
from weil.errors import DomainError, ModeMismatch
from weil.expr import Box, SmoothMap, eval_real
from weil.lift import (
    WeilPoint,
    alpha_on_chart,
    iterated_lift,
    lift_map,
    nested_to_tensor,
    prolong,
    taylor_primitive,
    tensor_to_nested,
)

# Frozen oracle values: sympy expansion modulo the relations, mpmath Taylor
# coefficients at 40 digits (see the decisions ledger for the oracle script).
COS_EXP = 0.7821633631846826   # cos(0.3)*exp(-0.2)
SIN_EXP = 0.24195148134959938  # sin(0.3)*exp(-0.2)


def lift(src, w, point, arity=None):
    pts = [p.strip() for p in point.split(",")]
    f = SmoothMap.parse(src, arity or len(pts))
    return lift_map(f, w)(WeilPoint.of(w, pts))


def test_cube_on_dual_numbers():
    out = lift("x0^3", preset("dual"), "2 + 3*x0")
    assert out.coords_vec[0].coords == [8, 36]


def test_reals_lift_is_identity():
    r = preset("R")
    f = SmoothMap.parse(["x0*x1 - 7/3", "x1^3"], 2)
    p = WeilPoint.of(r, ["2", "5"])
    assert [e.coords[0] for e in lift_map(f, r)(p).coords_vec] == [Fraction(23, 3), 125]


def test_square_on_dual_squared():
    out = lift("x0^2", preset("dual⊗dual"), "1 + x0 + x1")
    assert out.coords_vec[0].coords == [1, 2, 2, 2]


def test_mixed_primitives_on_dual():
    d = preset("dual").float()
    out = lift(["sin(x0)*exp(x1)"], d, "0.3 + x0, -0.2")
    assert abs(out.coords_vec[0].coords[1] - COS_EXP) < 1e-12
    assert abs(out.coords_vec[0].coords[0] - SIN_EXP) < 1e-12


def test_second_order_polynomial_lift():
    w = preset("W2,2")
    out = lift(["x0^2*x1 + 3*x1", "x0 - x1^3"], w, "1/2 + x0 - x1, 2 + 3*x0 + x1^2/2")
    assert out.coords_vec[0].coords == [Fraction(13, 2), Fraction(47, 4), -2, 5, -7, Fraction(29, 8)]
    assert out.coords_vec[1].coords == [Fraction(-15, 2), -35, -1, -54, 0, -6]


def test_third_order_primitive_lift():
    j = preset("jet3").float()
    expect = [0.54030230586813972, -1.14263966374765330, -2.49339542841800259, -0.71006389915562398]
    for method in ("taylor", "direct"):
        f = SmoothMap.parse(["exp(x0)*cos(x1)"], 2)
        got = lift_map(f, j, method)(WeilPoint.of(j, ["x0", "1 + 2*x0"])).coords_vec[0].coords
        assert all(abs(a - b) < 1e-12 for a, b in zip(got, expect))


@pytest.mark.parametrize("method", ["taylor", "direct"])
def test_primitives_need_float_mode(method):
    d = preset("dual")
    with pytest.raises(ModeMismatch):
        lift_map(SmoothMap.parse(["sin(x0)"], 1), d, method)(WeilPoint.of(d, ["x0"]))


def test_domain_checks():
    d = preset("dual").float()
    with pytest.raises(DomainError):
        lift(["log(x0)"], d, "x0")
    f = SmoothMap.parse(["x0"], 1, domain=Box.of([(0, 1)]))
    with pytest.raises(DomainError):
        lift_map(f, preset("dual"))(WeilPoint.of(preset("dual"), ["2 + x0"]))


def test_primitive_series():
    d, j3 = preset("dual").float(), preset("jet3").float()
    assert taylor_primitive("exp", 0.0, d.gen(0)).coords == [1.0, 1.0]
    got = taylor_primitive("sin", 0.0, j3.gen(0)).coords
    assert all(abs(a - b) < 1e-15 for a, b in zip(got, [0, 1, 0, -1 / 6]))
    with pytest.raises(DomainError):
        taylor_primitive("log", 0.0, d.gen(0))


def test_alpha_on_chart():
    jet2, d = preset("jet2"), preset("dual")
    trunc = new_morphism(jet2, d, ["x0"])
    p = WeilPoint.of(jet2, ["1 + x0 + x0^2"])
    assert alpha_on_chart(trunc, p) == WeilPoint.of(d, ["1 + x0"])
    assert alpha_on_chart(identity(jet2), p) == p
    assert alpha_on_chart(augmentation(jet2), p) == WeilPoint.of(preset("R"), ["1"])


def test_iterated_lift_matches_tensor_lift():
    w1, w2 = preset("jet2"), preset("dual")
    t = tensor(w1, w2)
    f = SmoothMap.parse(["x0^3 - x0*x1", "x1^2 + 1/2"], 2)
    p = WeilPoint.of(t.algebra, ["1 + x0 - x1 + 2*x0*x1", "-1 + x0^2 + 3*x1"])
    nested = tensor_to_nested(w1, w2, p)
    back = nested_to_tensor(w1, w2, iterated_lift(f, w1, w2, nested), t.algebra)
    assert back == lift_map(f, t.algebra)(p)


def test_prolongation_is_lift_in_flat_coordinates():
    d = preset("dual")
    f = SmoothMap.parse(["x0*x1", "x0^2"], 2)
    g = prolong(f, d)
    assert (g.arity, g.coarity) == (4, 4)
    p = WeilPoint.of(d, ["2 + x0", "3 - x0"])
    vals = [float(c) for c in p.flat()]
    out = [float(c) for c in lift_map(f, d)(p).flat()]
    assert [float(eval_real(c, vals)) for c in g.components] == out
