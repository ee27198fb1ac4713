"""Acceptance criteria, one test each; a pass/fail line per criterion is printed.

Run alone with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""

import math
import time

import pytest

from weil import faults
from weil.algebra import preset, preset_family, preset_morphisms
from weil.expr import SmoothMap
from weil.laws import EMBEDDING_PROBES, run_suite, summarize
from weil.lift import WeilPoint, lift_map
from weil.limits import (
    Chart,
    builtin_diagram,
    check_microlinear_chart,
    check_vertical_embedding,
    compute_limit,
    vertical_weil,
)

SEED = 42
RESULTS = {}


def record(n, title, ok, detail):
    line = f"criterion {n} {'PASS' if ok else 'FAIL'}: {title} ({detail})"
    RESULTS[n] = line
    print(line)
    assert ok, line


def failures(reports):
    return [r.law for r in reports if not r.passed]


@pytest.fixture(scope="module")
def alpha_reports():
    start = time.perf_counter()
    reports = run_suite("alpha", seed=SEED, trials=50, n_maps=20)
    return reports, time.perf_counter() - start


def test_criterion_1_derivatives():
    start = time.perf_counter()
    d = preset("dual")
    cube = lift_map(SmoothMap.parse(["x0^3"], 1), d)(WeilPoint.of(d, ["2 + x0"]))
    exact_ok = cube.coords_vec[0].coords[1] == 12 and isinstance(cube.coords_vec[0].coords[1], int)

    tt = preset("dual⊗dual").float()
    f = SmoothMap.parse(["sin(x0)*exp(x1)"], 2)
    out = lift_map(f, tt)(WeilPoint.of(tt, ["0.3 + x0", "-0.2 + x1"])).coords_vec[0]
    mixed = out.coords[tt.index[(1, 1)]]
    oracle = math.cos(0.3) * math.exp(-0.2)
    g = lambda x, y: math.sin(x) * math.exp(y)
    h = 1e-4
    fd = (g(0.3 + h, -0.2 + h) - g(0.3 + h, -0.2 - h)
          - g(0.3 - h, -0.2 + h) + g(0.3 - h, -0.2 - h)) / (4 * h * h)
    elapsed = time.perf_counter() - start
    ok = exact_ok and abs(mixed - oracle) <= 1e-9 and abs(mixed - fd) <= 1e-5 and elapsed < 1
    record(1, "derivative correctness", ok,
           f"x^3 nilpotent coord {cube.coords_vec[0].coords[1]}, mixed {mixed:.12f}, "
           f"|oracle diff| {abs(mixed - oracle):.1e}, |fd diff| {abs(mixed - fd):.1e}, {elapsed:.3f}s")


def test_criterion_2_composition_law():
    start = time.perf_counter()
    reports = run_suite("composition", seed=SEED, trials=50, n_maps=20)
    elapsed = time.perf_counter() - start
    pairs = len(preset_family()) ** 2
    checked = sum(r.checked for r in reports)
    ok = not failures(reports) and len(reports) == pairs and checked == pairs * 20 * 50 and elapsed < 30
    record(2, "composition law", ok,
           f"{len(reports)} pairs, {checked} exact comparisons, {len(failures(reports))} failures, {elapsed:.1f}s")


def test_criterion_3_alpha_and_coherence(alpha_reports):
    reports, elapsed = alpha_reports
    start = time.perf_counter()
    coherence = run_suite("coherence", seed=SEED, trials=50, n_maps=20)
    elapsed += time.perf_counter() - start
    counts = summarize(reports + coherence)
    kinds = ("alpha_functoriality", "naturality", "coherence")
    ok = all(k in counts and counts[k][0] == counts[k][1] for k in kinds)
    ok = ok and counts["alpha_functoriality"][1] == 155 and counts["coherence"][1] == 180
    record(3, "alpha functoriality, naturality, coherence", ok,
           ", ".join(f"{k} {counts[k][0]}/{counts[k][1]}" for k in kinds) + f", {elapsed:.1f}s")


def test_criterion_4_reals(alpha_reports):
    reports, _ = alpha_reports
    counts = summarize(reports)
    ok = (counts["tw_of_R"] == (len(preset_family()),) * 2
          and counts["alpha_on_R"] == (len(preset_morphisms()),) * 2)
    record(4, "T^W(R) = W and alpha_phi(R) = phi", ok,
           f"tw_of_R {counts['tw_of_R'][0]}/{counts['tw_of_R'][1]}, "
           f"alpha_on_R {counts['alpha_on_R'][0]}/{counts['alpha_on_R'][1]}")


def test_criterion_5_embedding():
    reports = run_suite("embedding", seed=SEED)
    charts = {r.law.split("[", 1)[1].split(",", 1)[0] for r in reports}
    probes_ok = all(set(EMBEDDING_PROBES) <= set(r.probes) for r in reports)
    ok = not failures(reports) and probes_ok and charts == {"n=0", "n=1", "n=2"}
    boxed = [r for r in reports if "box" in r.law]
    ok = ok and bool(boxed) and all(r.passed for r in boxed)
    record(5, "embedding identities at probe level", ok,
           f"{len(reports)} checks over charts R0, R1, R2, (0,1)^2, {len(failures(reports))} failures")


def test_criterion_6_microlinearity():
    start = time.perf_counter()
    cert = compute_limit(builtin_diagram("pullback-D2"))
    verdicts = {c: check_microlinear_chart(Chart.parse(c), cert).passed
                for c in ("R1", "R2", "box:(0,1)")}
    elapsed = time.perf_counter() - start
    ok = cert.apex.dim == 3 and cert.is_limit and all(verdicts.values()) and elapsed < 5
    record(6, "microlinearity", ok,
           f"apex dim {cert.apex.dim}, " + ", ".join(f"{c} {'pass' if v else 'fail'}" for c, v in verdicts.items())
           + f", {elapsed:.2f}s")


def test_criterion_7_vertical():
    d = preset("dual")
    carrier = vertical_weil(1, 2, d)
    emb = check_vertical_embedding(1, 2, d)
    presets = {w.name for w in preset_family()}
    passed_on = {p.split(":")[0] for p in carrier.transversal.probes if p.endswith(":pass")}
    ok = (carrier.describe() == "R^1 x (dual)^2" and carrier.nilpotent_dim == 2
          and carrier.transversal.passed and presets <= passed_on and emb.passed)
    record(7, "vertical Weil functor", ok,
           f"carrier {carrier.describe()}, nilpotent dim {carrier.nilpotent_dim}, "
           f"transversal over {len(passed_on)} presets, embedding {emb.status}")


def test_criterion_8_mutations():
    caught = {}
    for fault in faults.KNOWN:
        with faults.inject(fault):
            reports = run_suite("all", seed=SEED, trials=5, n_maps=3, stop_on_fail=True)
        caught[fault] = failures(reports)
    ok = all(caught.values())
    record(8, "mutation sensitivity", ok,
           ", ".join(f"{k} -> {v[0] if v else 'nothing'}" for k, v in caught.items()))


def test_criterion_9_property_suites():
    import test_properties as props
    suites = {
        "parser_round_trip": props.test_parser_round_trip,
        "normal_form_idempotent": props.test_normal_form_idempotent,
        "morphism_multiplicative": props.test_morphism_multiplicative,
    }
    for name, fn in suites.items():
        props.CASE_COUNT[name] = 0
        props.CASE_DIGEST.pop(name, None)
        fn()
    counts = {k: props.CASE_COUNT[k] for k in suites}
    first = props.CASE_DIGEST["parser_round_trip"].hexdigest()
    props.CASE_DIGEST.pop("parser_round_trip")
    suites["parser_round_trip"]()
    same = props.CASE_DIGEST["parser_round_trip"].hexdigest() == first
    ok = all(c >= 1000 for c in counts.values()) and same
    record(9, "property suites", ok,
           ", ".join(f"{k} {c} cases" for k, c in counts.items()) + f", rerun identical: {same}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
