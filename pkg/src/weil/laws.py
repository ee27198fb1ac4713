"""Executable checks of the functor laws for Weil functors on charts.

Every check draws its inputs from a seeded PRNG, compares both sides of an
identity exactly (rational mode) and returns a :class:`LawReport`.  A failing
report keeps the first counterexample together with the seed needed to
reproduce it.

The probe-level embedding checks compare two functors on a finite set of Weil
algebras ("probes"); each report lists the probes it used.
"""

import json
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .algebra import (
    PRESET_FAMILY,
    composable_pairs,
    compose,
    identity,
    kron_positions,
    new_weil_algebra,
    preset,
    preset_family,
    preset_morphisms,
    real_line,
    tensor,
    tensor_morphism,
)
from .errors import NotLocal, ProbeSetNotClosed, WeilError
from .expr import Box, Const, SmoothMap, Var, add, from_polynomial, mul, to_polynomial
from .lift import (
    WeilPoint,
    alpha_on_chart,
    close_points,
    iterated_lift,
    lift_map,
    nested_to_tensor,
    prolong,
    tensor_to_nested,
)
from .linalg import matvec

FORMAT_VERSION = 1

STATEMENTS = {
    "composition": "T^W2 o T^W1 = T^(W1 (x) W2)",
    "alpha_functoriality": "alpha_psi o alpha_phi = alpha_(psi o phi); alpha_id = id",
    "naturality": "alpha_phi o T^W1 f = T^W2 f o alpha_phi",
    "coherence": "T^W(alpha_phi) = alpha_(phi (x) id_W); alpha_phi after T^W = alpha_(id_W (x) phi)",
    "alpha_on_R": "alpha_phi(R) = phi",
    "tw_of_R": "T^W(R) = W",
    "identity_functor": "T^R = id; T^W(id) = id",
    "products": "T^W (f, g) = (T^W f, T^W g)",
    "two_paths": "Taylor sum = direct evaluation with algebra arithmetic",
    "embedding": "i o T^W = (W (x) -)^* o i; i(alpha_phi(M)) = alpha_phi o i",
    "weil_membership": "non-local presentations are rejected",
}


@dataclass
class LawReport:
    law: str
    statement: str
    status: str = "pass"
    seed: object = None
    trials: int = 0
    probes: list = field(default_factory=list)
    checked: int = 0
    counterexample: dict = None

    @property
    def passed(self):
        return self.status == "pass"

    def fail(self, **payload):
        if self.status == "pass":
            self.status = "fail"
            self.counterexample = {k: _jsonable(v) for k, v in payload.items()}

    def to_dict(self):
        d = asdict(self)
        if d["counterexample"] is None:
            del d["counterexample"]
        return d


def _jsonable(v):
    if isinstance(v, (str, int, bool)) or v is None:
        return v
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return str(v)


def _report(kind, label, seed, trials, probes=()):
    law = kind if label is None else f"{kind}[{label}]"
    return LawReport(law, STATEMENTS[kind], seed=seed, trials=trials,
                     probes=[_name(p) for p in probes])


def _name(w):
    return w.name or f"<{w.n_gens} gens, dim {w.dim}>"


def _rng(seed, label):
    return random.Random(f"{seed}:{label}")


# -- random inputs ------------------------------------------------------

def random_polynomial_map(rng, n=None, m=None, max_degree=3, max_terms=4):
    """Polynomial map ``R^n -> R^m`` with small rational coefficients."""
    n = rng.choice([1, 2]) if n is None else n
    m = rng.choice([1, 2]) if m is None else m
    comps = []
    for _ in range(m):
        terms = []
        for _ in range(rng.randint(1, max_terms)):
            c = Fraction(rng.randint(-5, 5), rng.choice([1, 1, 2, 3]))
            factors = [Const(c)]
            if n:
                for _ in range(rng.randint(0, max_degree)):
                    factors.append(Var(rng.randrange(n)))
            terms.append(mul(*factors))
        comps.append(from_polynomial(to_polynomial(add(*terms), n)))
    return SmoothMap(n, tuple(comps))


def random_element(rng, w):
    return w.from_coords([rng.randint(-5, 5) for _ in range(w.dim)])


def random_point(rng, w, n):
    return WeilPoint(w, [random_element(rng, w) for _ in range(n)])


def random_maps(seed, count=20):
    rng = _rng(seed, "maps")
    return [random_polynomial_map(rng) for _ in range(count)]


def _endo_maps(seed, n, count):
    rng = _rng(seed, f"endo{n}")
    return [random_polynomial_map(rng, n=n, m=n) for _ in range(count)]


# -- individual laws ----------------------------------------------------

def check_composition_law(w1, w2, f, trials=50, seed=0, report=None):
    """Lift through ``W1`` then ``W2`` versus one lift through ``W1 (x) W2``.

    Points of ``(W1 (x) W2)^n`` are identified with ``W2``-points of ``W1^n``
    through the fixed tensor-basis bijection.
    """
    rep = report or _report("composition", f"{_name(w1)},{_name(w2)}", seed, trials)
    rng = _rng(seed, f"composition:{_name(w1)}:{_name(w2)}:{f}")
    t = tensor(w1, w2).algebra
    big = lift_map(f, t)
    for _ in range(trials):
        nested = [[random_element(rng, w2) for _ in range(w1.dim)] for _ in range(f.arity)]
        lhs = nested_to_tensor(w1, w2, iterated_lift(f, w1, w2, nested), t)
        rhs = big(nested_to_tensor(w1, w2, nested, t))
        rep.checked += 1
        if lhs != rhs:
            rep.fail(map=str(f), W1=_name(w1), W2=_name(w2),
                     point=[[e.coords for e in row] for row in nested],
                     lhs=str(lhs), rhs=str(rhs))
            break
    return rep


def check_alpha_functoriality(phi, psi, n=1, trials=50, seed=0, report=None):
    """``alpha_psi o alpha_phi = alpha_(psi o phi)`` and ``alpha_id = id``."""
    rep = report or _report("alpha_functoriality", f"{phi.name},{psi.name}", seed, trials)
    rng = _rng(seed, f"alpha:{phi.name}:{psi.name}:{n}")
    both = compose(psi, phi)
    ident = identity(phi.source)
    for _ in range(trials):
        p = random_point(rng, phi.source, n)
        lhs = alpha_on_chart(psi, alpha_on_chart(phi, p))
        rhs = alpha_on_chart(both, p)
        rep.checked += 1
        if lhs != rhs or alpha_on_chart(ident, p) != p:
            rep.fail(phi=phi.name, psi=psi.name, point=str(p), lhs=str(lhs), rhs=str(rhs))
            break
    return rep


def check_naturality(phi, f, trials=50, seed=0, report=None):
    """``alpha_phi`` commutes with lifted maps."""
    rep = report or _report("naturality", f"{phi.name}", seed, trials)
    rng = _rng(seed, f"naturality:{phi.name}:{f}")
    f1, f2 = lift_map(f, phi.source), lift_map(f, phi.target)
    for _ in range(trials):
        p = random_point(rng, phi.source, f.arity)
        lhs = alpha_on_chart(phi, f1(p))
        rhs = f2(alpha_on_chart(phi, p))
        rep.checked += 1
        if lhs != rhs:
            rep.fail(phi=phi.name, map=str(f), point=str(p), lhs=str(lhs), rhs=str(rhs))
            break
    return rep


def _lifted_linear(phi, n, w, nested):
    """``T^W`` of the chart map ``phi^n`` on W-points of ``source^n``."""
    d1 = phi.source.dim
    lin = SmoothMap.linear(_block_diag(phi.matrix, n), arity=n * d1)
    flat = [e for row in nested for e in row]
    out = lift_map(lin, w)(WeilPoint(w, flat))
    d2 = phi.target.dim
    return [list(out.coords_vec[i * d2:(i + 1) * d2]) for i in range(n)]


def _block_diag(matrix, n):
    rows, cols = len(matrix), len(matrix[0]) if matrix else 0
    out = []
    for b in range(n):
        for r in range(rows):
            row = [0] * (n * cols)
            row[b * cols:(b + 1) * cols] = matrix[r]
            out.append(row)
    return out


def check_monoidal_coherence(phi, w, f, trials=50, seed=0, report=None):
    """Both coherence squares for ``alpha`` against tensoring with ``W``.

    First square: ``T^W`` applied to the chart map ``alpha_phi`` agrees with
    ``alpha_(phi (x) id_W)`` on ``(W1 (x) W)^n``.  Second square:
    ``alpha_phi`` applied to W1-points of ``T^W R^n`` agrees with
    ``alpha_(id_W (x) phi)`` on ``(W (x) W1)^n``.  Both are tested at random
    points and at their images under the lift of ``f``.
    """
    rep = report or _report("coherence", f"{phi.name},{_name(w)}", seed, trials)
    rng = _rng(seed, f"coherence:{phi.name}:{_name(w)}:{f}")
    w1, w2 = phi.source, phi.target
    right = tensor_morphism(phi, identity(w))
    left = tensor_morphism(identity(w), phi)
    t1, t2 = tensor(w1, w).algebra, tensor(w2, w).algebra
    s1, s2 = tensor(w, w1).algebra, tensor(w, w2).algebra
    n = f.arity
    lift_t1, lift_s1 = lift_map(f, t1), lift_map(f, s1)
    for _ in range(trials):
        q = random_point(rng, t1, n)
        for pt in (q, lift_t1(q)):
            k = pt.n
            lhs = nested_to_tensor(w2, w, _lifted_linear(phi, k, w, tensor_to_nested(w1, w, pt)), t2)
            rhs = alpha_on_chart(right, pt)
            rep.checked += 1
            if lhs != rhs:
                rep.fail(diagram=1, phi=phi.name, W=_name(w), point=str(pt), lhs=str(lhs), rhs=str(rhs))
                return rep
        q = random_point(rng, s1, n)
        for pt in (q, lift_s1(q)):
            # component i, W-basis b: a W1-element; alpha_phi acts on each of them
            nested = tensor_to_nested(w, w1, pt)
            lhs = nested_to_tensor(w, w2, [[phi.apply(e) for e in row] for row in nested], s2)
            rhs = alpha_on_chart(left, pt)
            rep.checked += 1
            if lhs != rhs:
                rep.fail(diagram=2, phi=phi.name, W=_name(w), point=str(pt), lhs=str(lhs), rhs=str(rhs))
                return rep
    return rep


def check_alpha_on_R(phi, trials=50, seed=0, report=None):
    """On the chart ``R`` the transformation ``alpha_phi`` is ``phi`` itself."""
    rep = report or _report("alpha_on_R", phi.name, seed, trials)
    rng = _rng(seed, f"alphaR:{phi.name}")
    src = phi.source
    points = [src.basis_element(j) for j in range(src.dim)]
    points += [random_element(rng, src) for _ in range(trials)]
    for e in points:
        got = alpha_on_chart(phi, WeilPoint(src, [e]))[0]
        want = matvec(phi.matrix, e.coords)
        rep.checked += 1
        if got.coords != want:
            rep.fail(phi=phi.name, element=str(e), alpha=got.coords, matrix=want)
            break
    return rep


def check_tw_of_R(w, maps=(), trials=50, seed=0, report=None):
    """``T^W(R)`` has carrier ``W``: the identity lifts to the identity and a
    polynomial map on ``R`` lifts to evaluation inside ``W``."""
    rep = report or _report("tw_of_R", _name(w), seed, trials)
    rng = _rng(seed, f"twR:{_name(w)}")
    ident = SmoothMap.identity(1)
    if prolong(ident, w).arity != w.dim:
        rep.fail(W=_name(w), carrier_dim=prolong(ident, w).arity, dim=w.dim)
        return rep
    unary = [g for g in maps if g.arity == 1]
    for i in range(trials):
        e = random_element(rng, w)
        p = WeilPoint(w, [e])
        rep.checked += 1
        if lift_map(ident, w)(p) != p:
            rep.fail(W=_name(w), point=str(p), reason="identity not preserved")
            break
        for g in unary[:3]:
            want = [c_poly.evaluate([e], one=w.unit()) for c_poly in _polys(g)]
            got = lift_map(g, w)(p).coords_vec
            if list(got) != want:
                rep.fail(W=_name(w), map=str(g), point=str(p), lhs=str(got), rhs=[str(x) for x in want])
                return rep
    return rep


def _polys(g):
    from .expr import to_polynomial

    return [to_polynomial(c, g.arity) for c in g.components]


def check_identity_functor(f, w, trials=50, seed=0, report=None):
    """``T^R f = f`` and ``T^W id = id``."""
    rep = report or _report("identity_functor", _name(w), seed, trials)
    rng = _rng(seed, f"identity:{_name(w)}:{f}")
    r = real_line()
    ident = lift_map(SmoothMap.identity(f.arity), w)
    for _ in range(trials):
        a = [rng.randint(-5, 5) for _ in range(f.arity)]
        got = lift_map(f, r)(WeilPoint.of(r, a)).base()
        want = f(a)
        p = random_point(rng, w, f.arity)
        rep.checked += 1
        if got != want or ident(p) != p:
            rep.fail(map=str(f), point=a, lhs=got, rhs=want)
            break
    return rep


def check_products(f, g, w, trials=50, seed=0, report=None):
    rep = report or _report("products", _name(w), seed, trials)
    rng = _rng(seed, f"products:{_name(w)}:{f}:{g}")
    if f.arity != g.arity:
        g = SmoothMap(f.arity, tuple(Const(0) for _ in g.components)) if g.arity else g
    paired = lift_map(f.pair(g), w)
    lf, lg = lift_map(f, w), lift_map(g, w)
    for _ in range(trials):
        p = random_point(rng, w, f.arity)
        lhs = paired(p)
        rhs = WeilPoint(w, list(lf(p).coords_vec) + list(lg(p).coords_vec))
        rep.checked += 1
        if lhs != rhs:
            rep.fail(f=str(f), g=str(g), point=str(p), lhs=str(lhs), rhs=str(rhs))
            break
    return rep


TWO_PATH_MAPS = (
    ("sin(x0)*exp(x1)", 2),
    ("log(x0) + sqrt(x1)", 2),
    ("cos(x0^2 - x1)/(1 + x1^2)", 2),
    ("exp(sin(x0))", 1),
    ("x0/(x0 + 2) - x0^3/5", 1),
)


def check_two_paths(w, maps=None, trials=20, seed=0, report=None, tol=1e-9):
    """Taylor-sum route versus direct algebra evaluation.

    Polynomial maps are compared exactly; maps built from primitives are
    evaluated in the float twin and compared within ``tol`` (scaled).
    """
    rep = report or _report("two_paths", _name(w), seed, trials)
    rng = _rng(seed, f"twopaths:{_name(w)}")
    if maps is None:
        maps = [SmoothMap.parse(src, n) for src, n in TWO_PATH_MAPS]
    for f in maps:
        wf = w.float() if f.has_primitives() else w
        for _ in range(trials):
            if f.has_primitives():
                base = [rng.uniform(0.2, 2.0) for _ in range(f.arity)]
                nil = [[rng.uniform(-1, 1) for _ in range(w.dim - 1)] for _ in range(f.arity)]
            else:
                base = [Fraction(rng.randint(1, 9), rng.randint(1, 3)) for _ in range(f.arity)]
                nil = [[rng.randint(-5, 5) for _ in range(w.dim - 1)] for _ in range(f.arity)]
            p = WeilPoint(wf, [wf.from_coords([b] + v) for b, v in zip(base, nil)])
            a = lift_map(f, wf, "taylor")(p)
            b = lift_map(f, wf, "direct")(p)
            rep.checked += 1
            same = close_points(a, b, tol) if wf.mode == "float" else a == b
            if not same:
                rep.fail(map=str(f), W=_name(w), point=str(p), taylor=str(a), direct=str(b))
                return rep
    return rep


NON_LOCAL_BATTERY = (
    (1, ["x0^2 - x0"]),
    (1, ["x0^3 - x0"]),
    (2, ["x0^2", "x1^2 - x1"]),
    (2, ["x0*x1 - 1", "x0^2", "x1^2"]),
)


def check_weil_membership(report=None):
    """Presentations that are not local must be refused at construction."""
    rep = report or _report("weil_membership", None, None, len(NON_LOCAL_BATTERY))
    for n, rels in NON_LOCAL_BATTERY:
        rep.checked += 1
        try:
            w = new_weil_algebra(n, rels)
        except NotLocal:
            continue
        rep.fail(generators=n, relations=rels, accepted_dim=w.dim)
        break
    return rep


# -- probe-level functors ----------------------------------------------

@dataclass
class ChartValue:
    """Carrier of ``T^W M`` for a chart ``M`` (``R^n`` or an open box)."""

    algebra: object
    n: int
    box: Box

    @property
    def dim(self):
        return self.n * self.algebra.dim

    def constraints(self):
        """``{coordinate index: interval}`` for bounded base coordinates."""
        d = self.algebra.dim
        return {i * d: iv for i, iv in enumerate(self.box.intervals) if iv != (None, None)}


class ProbedFunctor:
    """A functor on Weil algebras restricted to a finite probe set.

    ``values[j]`` is the carrier at ``probes[j]``; ``arrows[(name, i, j)]`` is
    the matrix of the map induced by a morphism ``probes[i] -> probes[j]``.
    """

    def __init__(self, probes, values, arrows):
        self.probes = probes
        self.values = values
        self.arrows = arrows


def _index_of(probes, w):
    for i, p in enumerate(probes):
        if p.same_presentation(w):
            return i
    return None


def close_probe_set(probes, factors, strict=False):
    """Add ``F (x) P`` for each factor ``F`` and probe ``P`` when missing."""
    probes = list(probes)
    missing = []
    for fac in factors:
        for p in list(probes):
            t = tensor(fac, p).algebra
            if _index_of(probes, t) is None and _index_of(missing, t) is None:
                missing.append(t)
    if missing and strict:
        raise ProbeSetNotClosed(
            "probe set is not closed under the needed tensor products: "
            + ", ".join(_name(m) for m in missing)
        )
    return probes + missing, missing


def probe_morphisms(probes):
    """Preset morphisms whose source and target are both probes."""
    out = []
    for phi in preset_morphisms():
        i, j = _index_of(probes, phi.source), _index_of(probes, phi.target)
        if i is not None and j is not None:
            out.append((phi, i, j))
    return out


def chart_functor(n, box, probes):
    """``i(M)``: ``W -> T^W M`` with arrows ``alpha_phi(M) = phi^n``."""
    values = [ChartValue(w, n, box) for w in probes]
    arrows = {(phi.name, i, j): _block_diag(phi.matrix, n) for phi, i, j in probe_morphisms(probes)}
    return ProbedFunctor(probes, values, arrows)


def _tensor_identification(w, wp, n):
    """Index map from W'-points of ``W^n`` (flattened) to ``(W (x) W')^n``."""
    pos = kron_positions(w, wp)
    d, dp = w.dim, wp.dim
    out = {}
    for i in range(n):
        for b in range(d):
            for c in range(dp):
                out[(i * d + b) * dp + c] = i * d * dp + pos[b * dp + c]
    return out


def _compare_under(sigma_src, sigma_tgt, a, b):
    """Is ``a == P_tgt b P_src^-1`` for the index maps ``sigma``?"""
    if len(a) != len(b) or (a and len(a[0]) != len(b[0])):
        return False
    for r, row in enumerate(b):
        ar = a[sigma_tgt[r]]
        for c, x in enumerate(row):
            if ar[sigma_src[c]] != x:
                return False
    return True


def _lifted_matrix(matrix, w):
    """Matrix of ``T^W`` of a linear chart map, read off from the lift."""
    cols_in = len(matrix[0]) if matrix else 0
    lin = SmoothMap.linear(matrix, arity=cols_in)
    lifted = lift_map(lin, w)
    d = w.dim
    size_in = cols_in * d
    columns = []
    for c in range(size_in):
        flat = [0] * size_in
        flat[c] = 1
        columns.append(lifted(WeilPoint.from_flat(w, flat, cols_in)).flat())
    rows_out = len(matrix) * d
    return [[columns[c][r] for c in range(size_in)] for r in range(rows_out)]


def check_embedding_identities(n, w, phi, probes, box=None, strict=False, trials=10, seed=0):
    """Probe-level comparison of the two embedding identities.

    ``n`` is the chart dimension and ``box`` an optional open box.  First
    identity: ``i(M)(W (x) P)`` and ``i(T^W M)(P)`` agree on carriers, base
    constraints, arrows and lifted maps for every probe ``P``.  Second
    identity: ``T^P`` of the chart map ``alpha_phi(M)`` equals
    ``alpha_(phi (x) id_P)(M)`` for every probe ``P``.
    """
    box = Box.full(n) if box is None else box
    given = list(probes)
    closed, added = close_probe_set(given, [w, phi.source, phi.target], strict=strict)
    chart = f"n={n}" if box.is_full() else f"n={n},box{box}"
    rep = _report("embedding", f"{chart},{_name(w)},{phi.name}", seed, trials, closed)
    rng = _rng(seed, f"embedding:{n}:{_name(w)}:{phi.name}")

    im = chart_functor(n, box, closed)
    d = w.dim
    tm_box = Box(tuple(iv for i in range(n) for iv in [box.intervals[i]] + [(None, None)] * (d - 1)))
    itm = chart_functor(n * d, tm_box, closed)
    idx = {j: _index_of(closed, tensor(w, p).algebra) for j, p in enumerate(closed)}

    # identity functor at the probe R
    r = _index_of(closed, real_line())
    if r is not None and (im.values[r].dim != n or im.values[r].constraints() != {
            i: iv for i, iv in enumerate(box.intervals) if iv != (None, None)}):
        rep.fail(reason="i(M)(R) is not M")
        return rep

    maps = _endo_maps(seed, n, 2) if n else []
    for j, p in enumerate(given):
        lhs_val = im.values[idx[j]]
        rhs_val = itm.values[j]
        sigma = _tensor_identification(w, p, n)
        rep.checked += 1
        if lhs_val.dim != rhs_val.dim:
            rep.fail(identity="embedding", probe=_name(p), lhs_dim=lhs_val.dim, rhs_dim=rhs_val.dim)
            return rep
        moved = {sigma[k]: iv for k, iv in rhs_val.constraints().items()}
        if moved != lhs_val.constraints():
            rep.fail(identity="embedding", probe=_name(p), lhs=lhs_val.constraints(), rhs=moved)
            return rep
        # arrows out of this probe
        for psi, i0, j0 in probe_morphisms(closed):
            if i0 != j or j0 >= len(given):
                continue
            a = _block_diag(tensor_morphism(identity(w), psi).matrix, n)
            b = itm.arrows[(psi.name, i0, j0)]
            sig_t = _tensor_identification(w, closed[j0], n)
            rep.checked += 1
            if not _compare_under(sigma, sig_t, a, b):
                rep.fail(identity="embedding", probe=_name(p), arrow=psi.name)
                return rep
        # maps: i(T^W f)(P) against i(f)(W (x) P)
        tp = tensor(w, p).algebra
        for f in maps:
            lit = lift_map(prolong(f, w), p)
            big = lift_map(f, tp)
            for _ in range(trials):
                q = random_point(rng, p, n * d)
                got = lit(q).flat()
                want = big(_permute_point(q, sigma, tp, n)).flat()
                rep.checked += 1
                if any(want[sigma[k]] != v for k, v in enumerate(got)):
                    rep.fail(identity="embedding", probe=_name(p), map=str(f), point=str(q))
                    return rep

    w1, w2 = phi.source, phi.target
    base_matrix = _block_diag(phi.matrix, n)
    for p in given:
        lhs = _lifted_matrix(base_matrix, p) if n else []
        rhs = _block_diag(tensor_morphism(phi, identity(p)).matrix, n)
        s_src = _tensor_identification(w1, p, n)
        s_tgt = _tensor_identification(w2, p, n)
        rep.checked += 1
        if n and not _compare_under(s_src, s_tgt, rhs, lhs):
            rep.fail(identity="alpha", probe=_name(p), phi=phi.name)
            return rep
    return rep


def _permute_point(q, sigma, tp, n):
    flat = q.flat()
    out = [0] * len(flat)
    for k, v in enumerate(flat):
        out[sigma[k]] = v
    return WeilPoint.from_flat(tp, out, n)


# -- suite runner -----------------------------------------------------

SUITES = ("composition", "alpha", "coherence", "embedding", "all")

EMBEDDING_PROBES = ("R", "dual", "jet2", "jet3", "dual⊗dual")
EMBEDDING_CHARTS = ((0, None), (1, None), (2, None), (2, Box.of([(0, 1), (0, 1)])))


def run_suite(suite="all", seed=0, trials=50, n_maps=20, stop_on_fail=False):
    """Run a named suite over the preset family; returns a list of reports."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    family = preset_family()
    maps = random_maps(seed, n_maps)
    reports = []

    def done():
        return stop_on_fail and any(not r.passed for r in reports)

    if suite in ("composition", "all"):
        for w1 in family:
            for w2 in family:
                rep = _report("composition", f"{_name(w1)},{_name(w2)}", seed, trials)
                for f in maps:
                    check_composition_law(w1, w2, f, trials, seed, rep)
                    if not rep.passed:
                        break
                reports.append(rep)
                if done():
                    return reports

    if suite in ("alpha", "all"):
        for phi, psi in composable_pairs():
            rep = _report("alpha_functoriality", f"{phi.name},{psi.name}", seed, trials)
            for n in (0, 1, 2):
                check_alpha_functoriality(phi, psi, n, trials, seed, rep)
            reports.append(rep)
        for phi in preset_morphisms():
            rep = _report("naturality", phi.name, seed, trials)
            for f in maps:
                check_naturality(phi, f, trials, seed, rep)
                if not rep.passed:
                    break
            reports.append(rep)
            reports.append(check_alpha_on_R(phi, trials, seed))
        for w in family:
            reports.append(check_tw_of_R(w, maps, trials, seed))
            rep = _report("identity_functor", _name(w), seed, trials)
            for f in maps[:5]:
                check_identity_functor(f, w, 10, seed, rep)
            reports.append(rep)
            rep = _report("products", _name(w), seed, trials)
            for f, g in zip(maps[:5], maps[5:10]):
                check_products(f, g, w, 10, seed, rep)
            reports.append(rep)
            reports.append(check_two_paths(w, seed=seed))
        reports.append(check_weil_membership())
        if done():
            return reports

    if suite in ("coherence", "all"):
        for phi in preset_morphisms():
            for w in family:
                rep = _report("coherence", f"{phi.name},{_name(w)}", seed, trials)
                # spread the trial points over the random maps
                per = -(-trials // len(maps)) if maps else trials
                for f in maps:
                    check_monoidal_coherence(phi, w, f, per, seed, rep)
                    if not rep.passed:
                        break
                reports.append(rep)
                if done():
                    return reports

    if suite in ("embedding", "all"):
        probes = [preset(p) for p in EMBEDDING_PROBES]
        for n, box in EMBEDDING_CHARTS:
            for w in (preset("R"), preset("dual"), preset("jet2")):
                for phi in _embedding_morphisms():
                    reports.append(check_embedding_identities(n, w, phi, probes, box, trials=3, seed=seed))
                    if done():
                        return reports
    return reports


def _embedding_morphisms():
    wanted = ("id_dual", "trunc21", "aug_dual", "square12", "sum")
    by_name = {m.name: m for m in preset_morphisms()}
    return [by_name[k] for k in wanted]


def suite_passed(reports):
    return all(r.passed for r in reports)


def report_document(reports):
    doc = {
        "format_version": FORMAT_VERSION,
        "results": [r.to_dict() for r in sorted(reports, key=lambda r: r.law)],
    }
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def summarize(reports):
    """Per-kind pass counts, e.g. ``{"composition": (36, 36)}``."""
    out = {}
    for r in reports:
        kind = r.law.split("[", 1)[0]
        ok, total = out.get(kind, (0, 0))
        out[kind] = (ok + r.passed, total + 1)
    return out


__all__ = [
    "LawReport", "ProbedFunctor", "ChartValue", "run_suite", "report_document",
    "check_composition_law", "check_alpha_functoriality", "check_naturality",
    "check_monoidal_coherence", "check_alpha_on_R", "check_tw_of_R",
    "check_identity_functor", "check_products", "check_two_paths",
    "check_embedding_identities", "check_weil_membership", "close_probe_set",
    "chart_functor", "random_polynomial_map", "random_point", "suite_passed",
    "summarize", "PRESET_FAMILY", "WeilError",
]
