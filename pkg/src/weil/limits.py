"""Finite connected limits of Weil algebras, microlinearity and vertical lifts.

Everything here reduces to exact linear algebra.  A limit of a diagram of
algebras is the subspace of compatible tuples inside the product of the node
carriers; a cone is a limit exactly when its comparison map onto that subspace
is a bijection.  The same test, applied after lifting every map by ``T^W``,
decides microlinearity of charts and transversality of chart-level cones.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    WeilElement,
    augmentation,
    compose,
    from_document,
    identity,
    new_morphism,
    new_weil_algebra,
    preset,
    preset_family,
    preset_morphisms,
    unit_inclusion,
)
from .errors import (
    AlgebraMismatch,
    ConeNotVerified,
    LimitNotWeil,
    NotConnected,
    UnsupportedBundle,
)
from .expr import Box, SmoothMap, Var, is_polynomial, to_polynomial
from .laws import LawReport, _lifted_matrix
from .linalg import in_span, matmul, nullspace, rank, rref
from .poly import Polynomial, basis_key

FORMAT_VERSION = 1


@dataclass
class WeilDiagram:
    """Nodes are algebras; edges are ``(source index, target index, morphism)``."""

    nodes: list
    edges: list
    name: str = None

    def __post_init__(self):
        for s, t, phi in self.edges:
            if not (0 <= s < len(self.nodes) and 0 <= t < len(self.nodes)):
                raise ValueError(f"edge ({s}, {t}) refers to a missing node")
            if not (phi.source.same_presentation(self.nodes[s])
                    and phi.target.same_presentation(self.nodes[t])):
                raise AlgebraMismatch(f"edge ({s}, {t}) does not match its node algebras")

    def is_connected(self):
        if not self.nodes:
            return False
        seen = {0}
        stack = [0]
        adj = {i: set() for i in range(len(self.nodes))}
        for s, t, _ in self.edges:
            adj[s].add(t)
            adj[t].add(s)
        while stack:
            for j in adj[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == len(self.nodes)

    def offsets(self):
        out, acc = [], 0
        for w in self.nodes:
            out.append(acc)
            acc += w.dim
        return out, acc


@dataclass
class ConeCertificate:
    """A cone over a diagram together with the evidence for its verdict."""

    diagram: WeilDiagram
    apex: object
    legs: list
    is_limit: bool
    compatible_dim: int
    comparison_rank: int
    generators: list = field(default_factory=list)
    witness: str = None

    def summary(self):
        return {
            "apex_dim": self.apex.dim if self.apex is not None else None,
            "apex_generators": self.apex.n_gens if self.apex is not None else None,
            "apex_relations": list(self.apex.relation_sources) if self.apex is not None else None,
            "compatible_dim": self.compatible_dim,
            "comparison_rank": self.comparison_rank,
            "is_limit": self.is_limit,
            "witness": self.witness,
        }


def _compatibility_rows(diagram, block=1, lift=None):
    """Rows of ``phi(u_s) - u_t = 0`` on the product carrier.

    ``block`` repeats each node ``block`` times (charts ``R^n``); ``lift``
    optionally maps an edge matrix to its lifted matrix.
    """
    offs, total = diagram.offsets()
    total *= block
    rows = []
    for s, t, phi in diagram.edges:
        m = phi.matrix
        ds, dt = phi.source.dim, phi.target.dim
        for b in range(block):
            for r in range(dt):
                row = [Fraction(0)] * total
                for c in range(ds):
                    if m[r][c]:
                        row[offs[s] * block + b * ds + c] += m[r][c]
                row[offs[t] * block + b * dt + r] -= 1
                rows.append(row)
    return rows, total


def _product(u, v, diagram):
    """Componentwise product of two tuples in the product of node algebras."""
    offs, _ = diagram.offsets()
    out = []
    for w, o in zip(diagram.nodes, offs):
        a, b = u[o:o + w.dim], v[o:o + w.dim]
        out.extend(w.mul_coords(a, b))
    return out


def _unit_tuple(diagram):
    out = []
    for w in diagram.nodes:
        out.extend([1] + [0] * (w.dim - 1))
    return out


def compute_limit(diagram):
    """Limit of a connected diagram of Weil algebras, re-presented.

    Returns a :class:`ConeCertificate` whose apex is a freshly presented Weil
    algebra and whose legs are morphisms to every node.
    """
    if not diagram.is_connected():
        raise NotConnected("limits are computed for connected diagrams only")
    rows, total = _compatibility_rows(diagram)
    L = nullspace(rows, total)
    offs, _ = diagram.offsets()
    unit = _unit_tuple(diagram)
    if not in_span(L, unit):
        raise LimitNotWeil("the unit tuple is not compatible")
    for u in L:
        augs = {u[o] for o in offs}
        if len(augs) > 1:
            raise LimitNotWeil("compatible tuple with unequal base values: the limit is not local")
    for i, u in enumerate(L):
        for v in L[i:]:
            if not in_span(L, _product(u, v, diagram)):
                raise LimitNotWeil("compatible tuples are not closed under multiplication")

    # maximal ideal: compatible tuples with zero base value
    aug0 = offs[0]
    N = [[x - u[aug0] * e for x, e in zip(u, unit)] for u in L]
    N, _ = rref(N, total)
    N2 = [_product(u, v, diagram) for i, u in enumerate(N) for v in N[i:]]
    gens = []
    for u in N:
        if not in_span(N2 + gens, u):
            gens.append(u)
    s = len(gens)
    apex, monomials = _present(gens, diagram, len(L), total)
    legs = []
    for node, (w, o) in enumerate(zip(diagram.nodes, offs)):
        imgs = [WeilElement(w, [Fraction(x) for x in g[o:o + w.dim]]) for g in gens]
        legs.append(new_morphism(apex, w, [w.from_coords(e.coords) for e in imgs],
                                 name=f"leg{node}"))
    # legs commute with the edges
    for src, tgt, phi in diagram.edges:
        if compose(phi, legs[src]).matrix != legs[tgt].matrix:
            raise LimitNotWeil("projection legs do not commute with an edge")
    cmp_rank = rank([m for m in monomials], total) if monomials else 0
    is_limit = cmp_rank == len(L) == apex.dim
    return ConeCertificate(diagram, apex, legs, is_limit, len(L), cmp_rank, gens,
                           None if is_limit else "comparison map is not a bijection")


def _present(gens, diagram, dim_l, total):
    """Presentation of the subalgebra generated by ``gens``.

    Monomials in the generators are listed in basis order; each one is either
    kept as a new basis vector or recorded as a linear relation among the
    kept ones.  Monomials past the nilpotency bound are relations ``m = 0``.
    """
    s = len(gens)
    unit = _unit_tuple(diagram)
    kept_exps, kept_vecs = [], []
    relations = []
    values = {}
    degree = 0
    while True:
        layer = _exps_of_degree(s, degree)
        layer.sort(key=basis_key)
        all_zero = True
        for e in layer:
            if degree == 0:
                v = unit
            else:
                i = max(j for j, a in enumerate(e) if a)
                prev = e[:i] + (e[i] - 1,) + e[i + 1:]
                v = _product(values[prev], gens[i], diagram)
            values[e] = v
            if any(v):
                all_zero = False
            coeffs = _solve_in(kept_vecs, v)
            if coeffs is None:
                kept_exps.append(e)
                kept_vecs.append(v)
            else:
                rel = Polynomial.monomial(e, Fraction(1))
                for ce, c in zip(kept_exps, coeffs):
                    if c:
                        rel = rel - Polynomial.monomial(ce, c)
                relations.append(rel)
        if degree > 0 and all_zero:
            break
        degree += 1
        if degree > dim_l + 1:
            raise LimitNotWeil("generators of the limit are not nilpotent")
    apex = new_weil_algebra(s, relations)
    if apex.dim != len(kept_exps):
        raise LimitNotWeil("recovered presentation has the wrong dimension")
    return apex, kept_vecs


def _exps_of_degree(n, d):
    if n == 0:
        return [()] if d == 0 else []
    if n == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in _exps_of_degree(n - 1, d - first):
            out.append((first,) + rest)
    return out


def _solve_in(vectors, v):
    """Coefficients expressing ``v`` in the independent ``vectors``, or None."""
    from .linalg import solve

    if not vectors:
        return [] if not any(v) else None
    return solve(vectors, v)


# -- diagrams -------------------------------------------------------------

def pullback_d2():
    """``dual -> R <- dual`` along both augmentations."""
    d, r = preset("dual"), preset("R")
    aug = augmentation(d)
    return WeilDiagram([d, r, d], [(0, 1, aug), (2, 1, aug)], name="pullback-D2")


def equalizer_vertical(w=None):
    """``W`` with the parallel pair ``id`` and ``unit o aug``.

    This is the algebra-level shadow of the vertical-lift equalizer: its limit
    keeps exactly the elements with no nilpotent part.
    """
    w = preset("dual") if w is None else w
    back = compose(unit_inclusion(w), augmentation(w))
    return WeilDiagram([w, w], [(0, 1, identity(w)), (0, 1, back)], name="equalizer-vertical")


BUILTIN_DIAGRAMS = {"pullback-D2": pullback_d2, "equalizer-vertical": equalizer_vertical}


def builtin_diagram(name):
    try:
        return BUILTIN_DIAGRAMS[name]()
    except KeyError:
        raise KeyError(f"unknown diagram {name!r}; built-ins: {sorted(BUILTIN_DIAGRAMS)}") from None


def diagram_from_document(doc, resolve=None):
    """Build a diagram from ``{"nodes": [...], "edges": [...]}``.

    Nodes are preset names or presentation objects; edges are
    ``{"source": i, "target": j, "images": [...]}`` with images written as
    polynomials in the target's generators.  ``resolve`` may map extra names to
    algebras (the CLI session registry).
    """
    if doc.get("format_version", FORMAT_VERSION) != FORMAT_VERSION:
        raise ValueError(f"unsupported format_version {doc.get('format_version')}")
    nodes = []
    for spec in doc["nodes"]:
        if isinstance(spec, str):
            w = resolve(spec) if resolve else None
            nodes.append(w if w is not None else preset(spec))
        else:
            nodes.append(from_document(spec))
    edges = []
    for e in doc["edges"]:
        s, t = e["source"], e["target"]
        edges.append((s, t, new_morphism(nodes[s], nodes[t], list(e["images"]))))
    return WeilDiagram(nodes, edges, name=doc.get("name"))


def load_diagram(path, resolve=None):
    with open(path, encoding="utf-8") as fh:
        return diagram_from_document(json.load(fh), resolve)


# -- charts ---------------------------------------------------------------

@dataclass(frozen=True)
class Chart:
    """``R^n``, or an open box in it."""

    n: int
    box: Box = None

    def __post_init__(self):
        if self.box is None:
            object.__setattr__(self, "box", Box.full(self.n))
        if self.box.dim != self.n:
            raise ValueError("box dimension differs from chart dimension")

    @classmethod
    def parse(cls, text):
        """``R2`` or ``box:(0,1)x(0,1)``."""
        text = text.strip()
        if text.startswith("R") and text[1:].isdigit():
            return cls(int(text[1:]))
        if text.startswith("box:"):
            pairs = []
            for part in text[4:].split("x"):
                lo, hi = part.strip().strip("()").split(",")
                pairs.append((Fraction(lo), Fraction(hi)))
            return cls(len(pairs), Box.of(pairs))
        raise ValueError(f"unrecognised chart {text!r}")

    def __str__(self):
        if self.box.is_full():
            return f"R{self.n}"
        return "box:" + "x".join(f"({lo},{hi})" for lo, hi in self.box.intervals)


def check_microlinear_chart(chart, cert):
    """Is ``W -> T^W M`` sending the limit cone ``cert`` to a limit cone?

    The node carriers are ``W_i^n``; the arrows are ``phi^n``.  A family of
    node points is compatible when it solves the edge equations, and it must
    come from exactly one apex point.  For a box, base values agree along
    every leg, so the open condition holds at the apex iff it holds at the
    nodes; this is checked on the leg matrices.
    """
    if not isinstance(cert, ConeCertificate) or not cert.is_limit:
        raise ConeNotVerified("microlinearity needs a verified limit certificate")
    diagram = cert.diagram
    n = chart.n
    rep = LawReport(f"microlinear[{chart},{diagram.name or 'diagram'}]",
                    "T^D M is a limit diagram", seed=None, trials=0,
                    probes=[w.name or str(w.dim) for w in diagram.nodes])
    rows, total = _compatibility_rows(diagram, block=n)
    compat = nullspace(rows, total) if total else []
    offs, _ = diagram.offsets()
    # comparison map apex^n -> prod node^n
    cols = []
    for b in range(n):
        for c in range(cert.apex.dim):
            v = [Fraction(0)] * total
            for leg, w, o in zip(cert.legs, diagram.nodes, offs):
                for r in range(w.dim):
                    v[o * n + b * w.dim + r] = Fraction(leg.matrix[r][c])
            cols.append(v)
    rep.checked += 1
    for v in cols:
        if rows and any(sum(x * y for x, y in zip(row, v)) != 0 for row in rows):
            rep.fail(reason="apex image is not compatible", chart=str(chart))
            return rep
    r = rank(cols, total) if cols else 0
    rep.checked += 1
    if not (r == len(cols) == len(compat)):
        rep.fail(reason="comparison map is not a bijection", rank=r,
                 apex_dim=len(cols), compatible_dim=len(compat))
        return rep
    # base values: every leg preserves the base coordinate
    for leg in cert.legs:
        rep.checked += 1
        if leg.matrix[0] != [1] + [0] * (cert.apex.dim - 1):
            rep.fail(reason="leg does not preserve base points", leg=leg.name)
            return rep
    return rep


# -- chart-level cones and transversality ---------------------------------

@dataclass
class ChartCone:
    """A cone of chart maps over a diagram of charts.

    ``nodes`` are chart dimensions (with optional boxes), ``edges`` are
    ``(s, t, map)``, ``legs[i]`` is the map from the apex to node ``i``.  All
    maps must be linear in this implementation.
    """

    apex: Chart
    nodes: list
    edges: list
    legs: list
    name: str = None


def _linear_matrix(f):
    """Matrix of a linear SmoothMap, or ``None`` if it is not linear."""
    out = []
    for c in f.components:
        if not is_polynomial(c):
            return None
        p = to_polynomial(c, f.arity)
        row = [Fraction(0)] * f.arity
        for m, v in p.terms.items():
            if sum(m) != 1:
                return None
            row[m.index(1)] = Fraction(v)
        out.append(row)
    return out


def check_transversal(cone, probes=None):
    """Decide limit-ness of ``T^W`` applied to a chart cone, per probe.

    Each probe gets a verdict in ``probes`` order; the report passes only if
    every probe does.  Including ``R`` makes a pass imply the cone itself is a
    limit.
    """
    probes = preset_family() if probes is None else probes
    rep = LawReport(f"transversal[{cone.name or 'cone'}]", "T^W C is a limit cone for every probe W",
                    seed=None, trials=len(probes), probes=[w.name or str(w.dim) for w in probes])
    mats = {}
    for label, f in [("edge", e[2]) for e in cone.edges] + [("leg", f) for f in cone.legs]:
        m = _linear_matrix(f)
        if m is None:
            raise UnsupportedBundle(f"{label} map {f} is not linear")
        mats[id(f)] = m
    verdicts = {}
    for w in probes:
        ok, why = _cone_is_limit(cone, mats, w)
        verdicts[w.name or str(w.dim)] = "pass" if ok else "fail"
        rep.checked += 1
        if not ok and rep.passed:
            rep.fail(probe=w.name, reason=why)
    rep.probes = [f"{k}:{v}" for k, v in verdicts.items()]
    return rep


def _cone_is_limit(cone, mats, w):
    d = w.dim
    dims = [c.n * d for c in cone.nodes]
    offs = [sum(dims[:i]) for i in range(len(dims))]
    total = sum(dims)
    rows = []
    for s, t, f in cone.edges:
        m = _lifted_matrix(mats[id(f)], w) if mats[id(f)] else [[]] * (cone.nodes[t].n * d)
        for r in range(cone.nodes[t].n * d):
            row = [Fraction(0)] * total
            for c in range(cone.nodes[s].n * d):
                if m[r][c]:
                    row[offs[s] + c] += m[r][c]
            row[offs[t] + r] -= 1
            rows.append(row)
    compat = nullspace(rows, total) if rows else nullspace([], total)
    apex_dim = cone.apex.n * d
    cols = []
    leg_mats = [_lifted_matrix(mats[id(f)], w) if cone.apex.n else [[] for _ in range(n.n * d)]
                for f, n in zip(cone.legs, cone.nodes)]
    for c in range(apex_dim):
        v = [Fraction(0)] * total
        for i, lm in enumerate(leg_mats):
            for r in range(dims[i]):
                v[offs[i] + r] = Fraction(lm[r][c])
        cols.append(v)
    for v in cols:
        if any(sum(x * y for x, y in zip(row, v)) != 0 for row in rows):
            return False, "legs do not commute with the edges"
    r = rank(cols, total) if cols else 0
    if not (r == apex_dim == len(compat)):
        return False, f"comparison rank {r}, apex dim {apex_dim}, compatible dim {len(compat)}"
    ok, why = _boxes_agree(cone, mats)
    return ok, why


def _boxes_agree(cone, mats):
    """Open-box condition: the apex box is cut out by the node boxes.

    Supported when every leg is a coordinate projection; then each apex
    coordinate's interval must be the intersection of the intervals it is
    sent to.
    """
    if all(n.box.is_full() for n in cone.nodes) and cone.apex.box.is_full():
        return True, None
    hits = {j: [] for j in range(cone.apex.n)}
    for f, node in zip(cone.legs, cone.nodes):
        m = mats[id(f)]
        for r, row in enumerate(m):
            nz = [c for c, x in enumerate(row) if x]
            if len(nz) != 1 or row[nz[0]] != 1:
                return False, "box check needs coordinate-projection legs"
            hits[nz[0]].append(node.box.intervals[r])
    for j, ivs in hits.items():
        lo = max((iv[0] for iv in ivs if iv[0] is not None), default=None)
        hi = min((iv[1] for iv in ivs if iv[1] is not None), default=None)
        if (lo, hi) != tuple(cone.apex.box.intervals[j]):
            return False, f"apex interval {cone.apex.box.intervals[j]} differs from {(lo, hi)}"
    return True, None


def product_cone(m, n, box_m=None, box_n=None):
    """``R^(m+n)`` with its two projections: a limit over two discrete nodes."""
    bm = Box.full(m) if box_m is None else box_m
    bn = Box.full(n) if box_n is None else box_n
    p1 = SmoothMap(m + n, tuple(Var(i) for i in range(m)))
    p2 = SmoothMap(m + n, tuple(Var(m + i) for i in range(n)))
    return ChartCone(Chart(m + n, bm * bn), [Chart(m, bm), Chart(n, bn)], [], [p1, p2],
                     name=f"product R{m}xR{n}")


def zero_over_product():
    """``R^0`` over ``R^1, R^1``: not a limit (wrong dimension)."""
    return ChartCone(Chart(0), [Chart(1), Chart(1)], [], [_zero_map(0, 1), _zero_map(0, 1)],
                     name="R0 over R1,R1")


def _zero_map(a, b):
    from .expr import Const

    return SmoothMap(a, tuple(Const(0) for _ in range(b)))


# -- vertical Weil functor ------------------------------------------------

@dataclass
class VerticalCarrier:
    """Equalizer carving ``R^m x W^n`` out of ``W^(m+n)``."""

    m: int
    n: int
    algebra: object
    dim: int
    nilpotent_dim: int
    inclusion: list
    cone: ChartCone
    transversal: LawReport = None

    def describe(self):
        name = self.algebra.name or f"W(dim {self.algebra.dim})"
        return f"R^{self.m} x ({name})^{self.n}"


def _parallel_maps(m, n, w):
    """Linear maps ``T^W pi`` and ``alpha_unit o alpha_aug o T^W pi``."""
    d = w.dim
    big = (m + n) * d
    tpi = [[Fraction(int(c == r)) for c in range(big)] for r in range(m * d)]
    flat = []
    for r in range(m * d):
        keep = r % d == 0
        flat.append([Fraction(int(keep and c == r)) for c in range(big)])
    return tpi, flat


def vertical_weil(m, n, w, probes=None, projection=None, base_box=None, fiber_box=None):
    """Vertical lift of the trivial bundle ``R^(m+n) -> R^m`` through ``W``.

    ``projection`` may be given as a SmoothMap to be validated: it must be the
    projection onto the first ``m`` coordinates.
    """
    if projection is not None:
        m_ = _linear_matrix(projection)
        want = [[Fraction(int(c == r)) for c in range(m + n)] for r in range(m)]
        if m_ is None or projection.arity != m + n or m_ != want:
            raise UnsupportedBundle("only coordinate projections R^(m+n) -> R^m are supported")
    w = w.rational()
    d = w.dim
    tpi, flat = _parallel_maps(m, n, w)
    big = (m + n) * d
    rows = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(tpi, flat)]
    eq = nullspace(rows, big) if rows else nullspace([], big)
    # canonical injection R^m x W^n -> W^(m+n)
    inc_cols = []
    for i in range(m):
        v = [Fraction(0)] * big
        v[i * d] = Fraction(1)
        inc_cols.append(v)
    for j in range(n * d):
        v = [Fraction(0)] * big
        v[m * d + j] = Fraction(1)
        inc_cols.append(v)
    inclusion = [[col[r] for col in inc_cols] for r in range(big)]
    if rank(inc_cols, big) != len(eq) or any(not in_span(eq, c) for c in inc_cols):
        raise AssertionError("equalizer differs from the canonical injection")
    cone = vertical_cone(m, n, w, base_box, fiber_box)
    carrier = VerticalCarrier(m, n, w, len(eq), n * (d - 1), inclusion, cone)
    if probes is not False:
        carrier.transversal = check_transversal(cone, preset_family() if probes is None else probes)
    return carrier


def vertical_cone(m, n, w, base_box=None, fiber_box=None):
    """Chart-level equalizer cone ``R^(m+n*d) -> W^(m+n) => W^m``."""
    d = w.dim
    tpi, flat = _parallel_maps(m, n, w)
    big = (m + n) * d
    apex_n = m + n * d
    inc = []
    for r in range(big):
        i, j = divmod(r, d)
        if i < m:
            inc.append([Fraction(int(j == 0 and c == i)) for c in range(apex_n)])
        else:
            inc.append([Fraction(int(c == m + (i - m) * d + j)) for c in range(apex_n)])
    to_base = matmul(tpi, inc)
    e_box = None
    apex_box = None
    node_m_box = None
    if base_box is not None or fiber_box is not None:
        bb = Box.full(m) if base_box is None else base_box
        fb = Box.full(n) if fiber_box is None else fiber_box
        e_box = Box(tuple(iv for b in (bb * fb).intervals for iv in [b] + [(None, None)] * (d - 1)))
        node_m_box = Box(tuple(iv for b in bb.intervals for iv in [b] + [(None, None)] * (d - 1)))
        apex_box = Box(tuple(bb.intervals) + tuple(
            iv for b in fb.intervals for iv in [b] + [(None, None)] * (d - 1)))
    apex = Chart(apex_n, apex_box)
    nodes = [Chart(big, e_box), Chart(m * d, node_m_box)]
    edges = [(0, 1, SmoothMap.linear(tpi, arity=big)), (0, 1, SmoothMap.linear(flat, arity=big))]
    legs = [SmoothMap.linear(inc, arity=apex_n), SmoothMap.linear(to_base, arity=apex_n)]
    return ChartCone(apex, nodes, edges, legs, name=f"vertical m={m} n={n} {w.name or ''}".strip())


def check_vertical_embedding(m, n, w, probes=None):
    """Lifted equalizers stay equalizers; ``alpha_phi`` restricts to them.

    For each probe ``P`` the cone lifted by ``P`` must again be an equalizer
    (this is transversality), and its carrier must match the vertical lift of
    the same bundle through ``W (x) P``.  For every preset morphism
    ``phi: W1 -> W2``, ``phi^(m+n)`` must send the ``W1``-equalizer into the
    ``W2``-equalizer and agree there with ``id x phi^n``.
    """
    probes = preset_family() if probes is None else probes
    rep = LawReport(f"vertical_embedding[m={m},n={n},{w.name}]",
                    "T^P of the vertical equalizer is an equalizer; alpha_phi restricts",
                    seed=None, trials=len(probes), probes=[p.name or str(p.dim) for p in probes])
    cone = vertical_cone(m, n, w)
    sub = check_transversal(cone, probes)
    rep.checked += sub.checked
    if not sub.passed:
        rep.fail(part="lifted equalizer", detail=sub.counterexample)
        return rep
    # explicit lifted equalizer: kernel of the difference of the lifted pair
    tpi, flat = _parallel_maps(m, n, w)
    big = (m + n) * w.dim
    for p in probes:
        rep.checked += 1
        if not tpi:
            continue
        a = _lifted_matrix(tpi, p)
        b = _lifted_matrix(flat, p)
        rows = [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]
        kernel = len(nullspace(rows, big * p.dim))
        want = (m + n * w.dim) * p.dim
        if kernel != want:
            rep.fail(part="lifted equalizer dimension", probe=p.name, kernel=kernel, expected=want)
            return rep
    for phi in preset_morphisms():
        w1, w2 = phi.source, phi.target
        c1 = vertical_weil(m, n, w1, probes=False)
        c2 = vertical_weil(m, n, w2, probes=False)
        big_phi = _block(phi.matrix, m + n)
        small = _restricted(phi.matrix, m, n)
        rep.checked += 1
        lhs = matmul(big_phi, c1.inclusion) if c1.inclusion else []
        rhs = matmul(c2.inclusion, small) if c2.inclusion and small else []
        if lhs != rhs:
            rep.fail(part="alpha restriction", phi=phi.name)
            return rep
    return rep


def _block(matrix, k):
    rows, cols = len(matrix), len(matrix[0])
    out = []
    for b in range(k):
        for r in range(rows):
            row = [Fraction(0)] * (k * cols)
            row[b * cols:(b + 1) * cols] = [Fraction(x) for x in matrix[r]]
            out.append(row)
    return out


def _restricted(matrix, m, n):
    """``id_(R^m) x phi^n`` on ``R^m x W1^n``."""
    d2, d1 = len(matrix), len(matrix[0])
    rows = m + n * d2
    cols = m + n * d1
    out = [[Fraction(0)] * cols for _ in range(rows)]
    for i in range(m):
        out[i][i] = Fraction(1)
    for b in range(n):
        for r in range(d2):
            for c in range(d1):
                out[m + b * d2 + r][m + b * d1 + c] = Fraction(matrix[r][c])
    return out
