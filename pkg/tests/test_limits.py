import json

import pytest

from weil.algebra import WeilMorphism, identity, new_weil_algebra, preset, unit_inclusion
from weil.errors import ConeNotVerified, LimitNotWeil, NotConnected, UnsupportedBundle
from weil.expr import Box, SmoothMap
from weil.limits import (
    Chart,
    WeilDiagram,
    builtin_diagram,
    check_microlinear_chart,
    check_transversal,
    check_vertical_embedding,
    compute_limit,
    diagram_from_document,
    equalizer_vertical,
    product_cone,
    pullback_d2,
    vertical_cone,
    vertical_weil,
    zero_over_product,
)


def test_pullback_of_augmentations():
    cert = compute_limit(pullback_d2())
    assert cert.is_limit
    assert cert.apex.same_presentation(new_weil_algebra(2, ["x0^2", "x1^2", "x0*x1"]))
    # legs commute with both edges
    for s, t, phi in pullback_d2().edges:
        assert phi @ cert.legs[s] == cert.legs[t]


def test_equalizer_of_identical_pair():
    w = preset("jet2")
    cert = compute_limit(WeilDiagram([w, w], [(0, 1, identity(w)), (0, 1, identity(w))]))
    assert cert.apex.same_presentation(w)


def test_equalizer_killing_nilpotents():
    cert = compute_limit(equalizer_vertical())
    assert cert.apex.dim == 1 and cert.is_limit


def test_limit_errors():
    d = preset("dual")
    with pytest.raises(NotConnected):
        compute_limit(WeilDiagram([d, d], []))
    # Valid morphisms out of a Weil algebra are local, so a connected limit is
    # always local; a corrupted matrix is needed to reach the defensive check.
    r = preset("R")
    bogus = WeilMorphism(r, d, [], [[1], [1]], name="bogus")
    with pytest.raises(LimitNotWeil):
        compute_limit(WeilDiagram([r, d], [(0, 1, bogus), (0, 1, unit_inclusion(d))]))


def test_diagram_document():
    doc = {"format_version": 1, "nodes": ["dual", "R", "dual"],
           "edges": [{"source": 0, "target": 1, "images": ["0"]},
                     {"source": 2, "target": 1, "images": ["0"]}]}
    cert = compute_limit(diagram_from_document(json.loads(json.dumps(doc))))
    assert cert.apex.dim == 3


@pytest.mark.parametrize("chart", ["R0", "R1", "R2", "box:(0,1)", "box:(0,1)x(0,1)"])
def test_microlinear_charts(chart):
    cert = compute_limit(builtin_diagram("pullback-D2"))
    assert check_microlinear_chart(Chart.parse(chart), cert).passed


def test_microlinear_needs_a_verified_limit():
    cert = compute_limit(pullback_d2())
    cert.is_limit = False
    with pytest.raises(ConeNotVerified):
        check_microlinear_chart(Chart.parse("R1"), cert)


def test_product_cone_is_transversal():
    probes = [preset(n) for n in ["R", "dual", "jet2"]]
    assert check_transversal(product_cone(1, 2), probes).passed
    box = Box.of([(0, 1)])
    assert check_transversal(product_cone(1, 1, box, box)).passed


def test_non_limit_cone_fails_at_reals():
    rep = check_transversal(zero_over_product(), [preset("R")])
    assert not rep.passed
    assert rep.probes == ["R:fail"]


def test_vertical_carrier():
    carrier = vertical_weil(1, 2, preset("dual"))
    assert carrier.describe() == "R^1 x (dual)^2"
    assert (carrier.dim, carrier.nilpotent_dim) == (5, 2)
    assert carrier.transversal.passed
    assert check_transversal(vertical_cone(1, 2, preset("dual"))).passed


def test_vertical_degenerate_cases():
    assert vertical_weil(2, 1, preset("R")).dim == 3
    c = vertical_weil(0, 2, preset("jet2"))
    assert (c.dim, c.nilpotent_dim) == (6, 4)


def test_vertical_rejects_non_projection():
    bad = SmoothMap.parse(["x0 + x1"], 2)
    with pytest.raises(UnsupportedBundle):
        vertical_weil(1, 1, preset("dual"), projection=bad)
    ok = SmoothMap.parse(["x0"], 2)
    assert vertical_weil(1, 1, preset("dual"), projection=ok).dim == 3


def test_vertical_embedding():
    d = preset("dual")
    assert check_vertical_embedding(1, 1, d, [preset("R"), d]).passed
    assert check_vertical_embedding(1, 2, d).passed
    assert check_vertical_embedding(1, 1, preset("R")).passed
