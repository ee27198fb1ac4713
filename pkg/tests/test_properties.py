"""Property suites: parser round-trip, normal-form idempotence, morphism multiplicativity.

Each runs 1000 derandomized cases, so results are identical from run to run.
"""

import hashlib
from collections import Counter, defaultdict
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from weil.algebra import preset, preset_family, preset_morphisms
from weil.expr import PRIMITIVES, Add, Call, Const, Div, Mul, Pow, Var, canonical, parse, pretty
from weil.poly import Polynomial, reduce

CASES = settings(max_examples=1000, deadline=None, derandomize=True, database=None)
ARITY = 3

# case counts and a digest of the generated inputs, per property
CASE_COUNT = Counter()
CASE_DIGEST = defaultdict(hashlib.sha256)


def seen(name, *values):
    CASE_COUNT[name] += 1
    CASE_DIGEST[name].update(repr(values).encode())


fractions = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6))
leaves = st.one_of(st.builds(Const, fractions), st.builds(Var, st.integers(0, ARITY - 1)))


def _branches(children):
    return st.one_of(
        st.builds(lambda ts: Add(tuple(ts)), st.lists(children, min_size=2, max_size=3)),
        st.builds(lambda fs: Mul(tuple(fs)), st.lists(children, min_size=2, max_size=3)),
        st.builds(Div, children, children),
        st.builds(Pow, children, st.integers(0, 4)),
        st.builds(Call, st.sampled_from(sorted(PRIMITIVES)), children),
    )


exprs = st.recursive(leaves, _branches, max_leaves=12)


@CASES
@given(exprs)
def test_parser_round_trip(e):
    seen("parser_round_trip", e)
    text = pretty(e)
    again = parse(text, ARITY)
    assert pretty(again) == text
    assert canonical(again) == canonical(parse(pretty(again), ARITY))


monomials = st.tuples(*[st.integers(0, 4)] * 2)
polys = st.dictionaries(monomials, fractions, max_size=6)
algebras = st.sampled_from([w for w in preset_family() if w.n_gens <= 2] + [preset("W2,2")])


@CASES
@given(algebras, polys)
def test_normal_form_idempotent(w, terms):
    seen("normal_form_idempotent", w.name, sorted(terms.items()))
    n = w.n_gens
    p = Polynomial(n, {m[:n]: c for m, c in terms.items()}) if n else Polynomial.constant(0, sum(terms.values()))
    once = reduce(p, w.groebner)
    assert reduce(once, w.groebner) == once
    e = w.element(p)
    assert w.element(str(e)) == e
    assert w.element(once) == e


@CASES
@given(exprs)
def test_canonical_form_idempotent(e):
    seen("canonical_form_idempotent", e)
    c = canonical(e)
    assert canonical(c) == c


MORPHISMS = preset_morphisms()


@st.composite
def morphism_and_elements(draw):
    phi = draw(st.sampled_from(MORPHISMS))
    vec = st.lists(fractions, min_size=phi.source.dim, max_size=phi.source.dim)
    return phi, phi.source.from_coords(draw(vec)), phi.source.from_coords(draw(vec))


@CASES
@given(morphism_and_elements())
def test_morphism_multiplicative(case):
    phi, a, b = case
    seen("morphism_multiplicative", phi.name, a.coords, b.coords)
    assert phi(a * b) == phi(a) * phi(b)
    assert phi(a + b) == phi(a) + phi(b)
    assert phi(phi.source.unit()) == phi.target.unit()
