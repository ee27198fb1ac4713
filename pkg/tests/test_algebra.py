from fractions import Fraction

import pytest

from weil import errors
from weil.algebra import (
    augmentation,
    compose,
    composable_pairs,
    dumps,
    from_document,
    identity,
    kron_positions,
    loads,
    new_morphism,
    new_weil_algebra,
    preset,
    preset_family,
    preset_morphisms,
    real_line,
    tensor,
    tensor_morphism,
    to_document,
    unit_inclusion,
)
from weil.poly import Polynomial, groebner, reduce

# Basis listings below come from an independent Groebner/enumeration run
# (sympy, grevlex, monomials of degree <= 4 that reduce to themselves).


def test_dual_numbers():
    w = new_weil_algebra(1, ["x0^2"])
    assert (w.dim, w.basis_labels(), w.nilpotency_index) == (2, ["1", "x0"], 2)


def test_dual_squared_presentation():
    w = new_weil_algebra(2, ["x0^2", "x1^2"])
    assert w.dim == 4
    assert sorted(w.basis_labels()) == sorted(["1", "x0", "x1", "x0*x1"])
    assert w.nilpotency_index == 3


def test_first_order_two_generators():
    w = new_weil_algebra(2, ["x0^2", "x1^2", "x0*x1"])
    assert (w.dim, w.basis_labels(), w.nilpotency_index) == (3, ["1", "x0", "x1"], 2)


@pytest.mark.parametrize("n, rels, exc", [
    (1, ["x0^2 - x0"], errors.NotLocal),
    (1, ["1"], errors.NotLocal),
    (1, [], errors.EmptyRelationsWithGenerators),
    (2, ["x0^2"], errors.NotFiniteDimensional),
    (1, ["x1^2"], errors.WrongVariableCount),
])
def test_rejected_presentations(n, rels, exc):
    with pytest.raises(exc):
        new_weil_algebra(n, rels)


def test_zero_generators_is_the_reals():
    r = new_weil_algebra(0, [])
    assert r.dim == 1 and r.nilpotency_index == 1


def test_element_reduction():
    assert preset("dual").element("3 + 5*x0 + 7*x0^2").coords == [3, 5]
    assert preset("R").element("4").coords == [4]
    assert preset("Dn2").element("x0*x1").coords == [0, 0, 0]


def test_arithmetic():
    d = preset("dual")
    assert d.element("1 + x0") * d.element("1 - x0") == d.unit()
    a = d.element("2 + 3*x0")
    assert (a * a).coords == [4, 12]
    for w in preset_family():
        e = w.from_coords(range(1, w.dim + 1))
        assert e * w.unit() == e


def test_inverse_and_division():
    d = preset("dual")
    a = d.element("2 + x0")
    assert a.inverse().coords == [Fraction(1, 2), Fraction(-1, 4)]
    assert a * a.inverse() == d.unit()
    with pytest.raises(errors.DomainError):
        d.element("x0").inverse()


def test_exact_printing():
    d = preset("dual")
    assert str(d.element("2 + x0").inverse()) == "1/2 - 1/4*x0"


def test_float_mode_mismatch():
    d = preset("dual")
    with pytest.raises(errors.ModeMismatch):
        d.unit() + d.float().unit()


def test_tensor_dimensions():
    d = preset("dual")
    assert tensor(d, d).algebra.same_presentation(new_weil_algebra(2, ["x0^2", "x1^2"]))
    assert tensor(preset("jet2"), d).algebra.dim == 6
    t = tensor(d, preset("R"))
    assert t.algebra.dim == 2
    assert t.left.matrix == [[1, 0], [0, 1]]


def test_kron_positions_cover_basis():
    w1, w2 = preset("jet2"), preset("dual")
    pos = kron_positions(w1, w2)
    assert sorted(pos) == list(range(6))


def test_truncation_morphism():
    jet2, d = preset("jet2"), preset("dual")
    trunc = new_morphism(jet2, d, ["x0"])
    assert trunc.matrix == [[1, 0, 0], [0, 1, 0]]


def test_relation_not_killed():
    with pytest.raises(errors.RelationNotKilled) as info:
        new_morphism(preset("dual"), preset("jet2"), ["x0"])
    assert info.value.relation == "x0^2"


def test_non_local_morphism():
    d = preset("dual")
    with pytest.raises(errors.NotLocalMorphism):
        new_morphism(d, d, ["1 + x0"])


def test_augmentation_is_unit_projection():
    for w in preset_family():
        m = augmentation(w).matrix
        assert m == [[1] + [0] * (w.dim - 1)]


def test_composition_examples():
    jet2, d = preset("jet2"), preset("dual")
    trunc = new_morphism(jet2, d, ["x0"])
    assert compose(identity(d), trunc) == trunc
    assert compose(augmentation(d), trunc) == augmentation(jet2)
    assert compose(augmentation(d), unit_inclusion(d)) == identity(real_line())


def test_composition_mismatch():
    with pytest.raises(errors.CompositionMismatch):
        compose(augmentation(preset("dual")), augmentation(preset("jet2")))


def test_tensor_morphisms():
    jet2, d = preset("jet2"), preset("dual")
    assert tensor_morphism(identity(jet2), identity(d)) == identity(tensor(jet2, d).algebra)
    trunc = new_morphism(jet2, d, ["x0"])
    m = tensor_morphism(trunc, augmentation(d))
    assert (m.source.dim, m.target.dim) == (6, 2)
    # d^i e^j -> d^i when i < 2 and j = 0, else 0
    src = m.source
    for j, b in enumerate(src.basis):
        image = m.apply(src.basis_element(j))
        expect = d.element("x0" if b == (1, 0) else "1" if b == (0, 0) else "0")
        assert image == expect


def test_morphism_multiplicative_on_basis():
    for phi in preset_morphisms():
        s = phi.source
        for i in range(s.dim):
            for j in range(s.dim):
                a, b = s.basis_element(i), s.basis_element(j)
                assert phi(a * b) == phi(a) * phi(b)


def test_preset_catalogue():
    assert [w.name for w in preset_family()] == ["R", "dual", "jet2", "jet3", "Dn2", "dual⊗dual"]
    assert len(preset_morphisms()) == 30
    assert len(composable_pairs()) == 155
    assert preset("W2,2").dim == 6
    assert preset("jet4").dim == 5
    assert preset("dual(x)dual").dim == 4
    with pytest.raises(KeyError):
        preset("nope")


def test_document_round_trip(tmp_path):
    for w in preset_family():
        back = from_document(to_document(w))
        assert back.same_presentation(w)
        assert loads(dumps(w)).same_presentation(w)
    doc = to_document(preset("jet2"))
    assert doc["format_version"] == 1 and doc["relations"] == ["x0^3"]


def test_groebner_and_reduction():
    p = lambda s: Polynomial.parse(s, 2)
    gb = groebner([p("x0^2 - x1"), p("x1^2")])
    assert reduce(p("x0^4"), gb).is_zero()
    r = reduce(p("x0^3 + x0*x1"), gb)
    assert r == reduce(r, gb)
