import json

import pytest

from weil import faults
from weil.algebra import augmentation, identity, new_morphism, preset, unit_inclusion
from weil.errors import ProbeSetNotClosed
from weil.expr import Box, SmoothMap
from weil.laws import (
    check_alpha_functoriality,
    check_alpha_on_R,
    check_composition_law,
    check_embedding_identities,
    check_monoidal_coherence,
    check_tw_of_R,
    check_weil_membership,
    close_probe_set,
    random_maps,
    report_document,
    run_suite,
    summarize,
)

SQUARE = SmoothMap.parse(["x0^2"], 1)


def trunc21():
    return new_morphism(preset("jet2"), preset("dual"), ["x0"])


def test_composition_on_dual_numbers():
    d = preset("dual")
    assert check_composition_law(d, d, SQUARE, trials=20).passed


@pytest.mark.parametrize("other", ["dual", "jet3", "Dn2"])
def test_composition_with_reals_on_either_side(other):
    r, w = preset("R"), preset(other)
    assert check_composition_law(r, w, SQUARE, trials=10).passed
    assert check_composition_law(w, r, SQUARE, trials=10).passed


def test_alpha_functoriality_examples():
    d = preset("dual")
    assert check_alpha_functoriality(trunc21(), augmentation(d), n=2).passed
    assert check_alpha_functoriality(identity(d), identity(d)).passed
    rep = check_alpha_functoriality(trunc21(), augmentation(d), n=0)
    assert rep.passed


def test_monoidal_coherence_examples():
    d = preset("dual")
    f = SmoothMap.parse(["x0*x1 - x1^2", "x0^3"], 2)
    assert check_monoidal_coherence(augmentation(d), d, f, trials=10).passed
    assert check_monoidal_coherence(identity(preset("jet2")), d, f, trials=10).passed
    assert check_monoidal_coherence(trunc21(), preset("R"), f, trials=10).passed


def test_reals_carrier_and_alpha_on_reals():
    for name in ["R", "dual", "jet2", "jet3", "Dn2", "dual⊗dual"]:
        assert check_tw_of_R(preset(name), random_maps(0, 3), trials=5).passed
    for phi in [trunc21(), augmentation(preset("jet3")), unit_inclusion(preset("dual"))]:
        assert check_alpha_on_R(phi, trials=5).passed


def test_embedding_examples():
    probes = [preset(n) for n in ["R", "dual", "jet2", "dual⊗dual"]]
    d = preset("dual")
    assert check_embedding_identities(1, d, identity(d), probes).passed
    assert check_embedding_identities(2, preset("R"), trunc21(), probes).passed
    assert check_embedding_identities(2, d, augmentation(d), probes, box=Box.of([(0, 1), (0, 1)])).passed


def test_probe_closure():
    d = preset("dual")
    probes = [preset("R"), d]
    closed, added = close_probe_set(probes, [d])
    assert [w.dim for w in added] == [4]
    with pytest.raises(ProbeSetNotClosed):
        close_probe_set(probes, [d], strict=True)


def test_locality_battery():
    assert check_weil_membership().passed
    with faults.inject("skip_locality_check"):
        assert not check_weil_membership().passed


def test_report_is_deterministic():
    a = report_document(run_suite("alpha", seed=7, trials=3, n_maps=2))
    b = report_document(run_suite("alpha", seed=7, trials=3, n_maps=2))
    assert a == b
    doc = json.loads(a)
    assert doc["format_version"] == 1
    assert {"law", "statement", "status", "seed", "trials"} <= set(doc["results"][0])


def test_fault_makes_a_failure_with_counterexample():
    with faults.inject("drop_factorial"):
        reports = run_suite("composition", seed=3, trials=3, n_maps=3, stop_on_fail=True)
    bad = [r for r in reports if not r.passed]
    assert bad and bad[0].counterexample
    assert summarize(reports)["composition"][0] < len(reports)


def test_unknown_fault_is_rejected():
    with pytest.raises(ValueError):
        with faults.inject("nonsense"):
            pass
