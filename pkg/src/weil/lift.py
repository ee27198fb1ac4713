"""The Weil functor on charts: lifting smooth maps to Weil-algebra points.

A point of ``T^W(R^n)`` is an ``n``-tuple of elements of ``W``.  Writing each
component as ``a_i + nu_i`` (real base point plus nilpotent part), the lift of
``f`` is the truncated Taylor sum

    T^W f (a + nu) = sum_{|alpha| < k} d^alpha f(a) / alpha! * nu^alpha

with ``k`` the nilpotency index of ``W``.  Nothing is approximated: every
``nu^alpha`` with ``|alpha| >= k`` vanishes in ``W``.

A second route (``method="direct"``) evaluates the expression tree with
algebra arithmetic, expanding each primitive by its own Taylor series.  The two
must agree; the law suite compares them.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from . import faults
from .algebra import WeilElement, all_close, kron_positions
from .errors import AlgebraMismatch, ArityViolation, DomainError, ModeMismatch
from .expr import (
    Add, Box, Call, Const, Div, Mul, Pow, SmoothMap, Var,
    derive, eval_real, has_primitives, is_polynomial, to_polynomial,
)
from .poly import Polynomial


@dataclass(frozen=True)
class WeilPoint:
    """A point of ``W^n``: one algebra element per chart coordinate."""

    algebra: object
    coords_vec: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords_vec", tuple(self.coords_vec))
        for e in self.coords_vec:
            if not e.algebra == self.algebra:
                raise AlgebraMismatch("point components live in different algebras")

    @classmethod
    def of(cls, algebra, values):
        """Build from numbers, polynomial strings or elements."""
        out = []
        for v in values:
            if isinstance(v, WeilElement):
                if v.algebra.same_presentation(algebra) and v.algebra.mode != algebra.mode:
                    v = algebra.from_coords(v.coords)
                out.append(v)
            elif isinstance(v, str):
                out.append(algebra.element(v))
            else:
                out.append(algebra.scalar(v))
        return cls(algebra, out)

    @classmethod
    def from_flat(cls, algebra, flat, n=None):
        d = algebra.dim
        if n is None:
            n = len(flat) // d if d else 0
        if len(flat) != n * d:
            raise ValueError("flat coordinate list has the wrong length")
        return cls(algebra, [algebra.from_coords(flat[i * d:(i + 1) * d]) for i in range(n)])

    @property
    def n(self):
        return len(self.coords_vec)

    def base(self):
        return [e.coords[0] for e in self.coords_vec]

    def flat(self):
        return [c for e in self.coords_vec for c in e.coords]

    def __len__(self):
        return len(self.coords_vec)

    def __getitem__(self, i):
        return self.coords_vec[i]

    def __eq__(self, other):
        if not isinstance(other, WeilPoint):
            return NotImplemented
        return (self.algebra.same_presentation(other.algebra) and self.n == other.n
                and all(a == b for a, b in zip(self.coords_vec, other.coords_vec)))

    __hash__ = None

    def __str__(self):
        return "(" + ", ".join(str(e) for e in self.coords_vec) + ")"


# -- Taylor data ----------------------------------------------------------

def _alphas(n, k):
    """Multi-indices with ``|alpha| < k``, built by increasing variable index."""
    out = [(0,) * n]
    frontier = [((0,) * n, 0)]
    for _ in range(1, k):
        nxt = []
        for alpha, last in frontier:
            for i in range(last, n):
                a = alpha[:i] + (alpha[i] + 1,) + alpha[i + 1:]
                out.append(a)
                nxt.append((a, i))
        frontier = nxt
    return out


def _alpha_factorial(alpha):
    out = 1
    for a in alpha:
        out *= factorial(a)
    return out


@lru_cache(maxsize=4096)
def taylor_terms(component, n, k, drop_factorial=False):
    """Non-zero ``(alpha, d^alpha f / alpha!)`` for ``|alpha| < k``.

    ``component`` is an :class:`Expr` or a :class:`Polynomial`; the
    coefficients come back in the same representation.  Partials are built by
    repeated differentiation along a tree of multi-indices so each one is
    computed once.
    """
    poly = component if isinstance(component, Polynomial) else None
    if poly is None and is_polynomial(component):
        poly = to_polynomial(component, n)
    root = poly if poly is not None else component
    partial = {(0,) * n: root}
    out = []
    frontier = [((0,) * n, 0)]
    if not _is_zero(root):
        out.append(((0,) * n, root))
    for _ in range(1, k):
        nxt = []
        for alpha, last in frontier:
            g = partial[alpha]
            for i in range(last, n):
                dg = g.derive(i) if poly is not None else derive(g, i)
                if _is_zero(dg):
                    continue
                a = alpha[:i] + (alpha[i] + 1,) + alpha[i + 1:]
                partial[a] = dg
                nxt.append((a, i))
                out.append((a, dg))
        frontier = nxt
    result = []
    for alpha, g in out:
        fac = _alpha_factorial(alpha)
        if fac != 1 and not drop_factorial:
            g = g.scale(Fraction(1, fac)) if poly is not None else g / Const(fac)
        if poly is not None:
            g = Polynomial(g.nvars, g.terms)  # integral coefficients back to int
        result.append((alpha, g))
    return tuple(result)


def _is_zero(g):
    if isinstance(g, Polynomial):
        return g.is_zero()
    return isinstance(g, Const) and g.value == 0


# -- core evaluation ------------------------------------------------------

def _coeff_value(coeff, base, n, ctx=None):
    """Value of a Taylor coefficient at the base point.

    The base entries are reals, or elements of another Weil algebra (the
    iterated lift), or symbolic ring elements (prolongation).  ``ctx`` caches
    the split of an algebra-valued base point across coefficients.
    """
    b0 = base[0] if base else None
    if isinstance(b0, WeilElement):
        if ctx is None:
            ctx = {}
        if "inner" not in ctx:
            nus = [e.nilpotent_part().coords for e in base]
            ctx["inner"] = ([e.coords[0] for e in base], nus, {})
        real, nus, powers = ctx["inner"]
        v = b0.algebra
        return WeilElement(v, _taylor_coords(coeff, n, v, real, nus, powers))
    if isinstance(coeff, Polynomial):
        if b0 is None or isinstance(b0, (int, Fraction, float)):
            return coeff.evaluate(base)
        return coeff.evaluate(base, one=_ring_one(b0))
    if b0 is None or isinstance(b0, (int, Fraction, float)):
        return eval_real(coeff, base)
    from .expr import substitute

    return substitute(coeff, base)


def _ring_one(x):
    if isinstance(x, Polynomial):
        return Polynomial.constant(x.nvars, Fraction(1))
    return 1


def _taylor_coords(component, n, w, base, nus, powers=None):
    """Coordinates of ``T^W component`` at ``base + nus`` (``nus`` as coord lists).

    ``powers`` memoizes ``nu^alpha`` and may be shared between components
    evaluated at the same point.
    """
    k = w.nilpotency_index
    terms = taylor_terms(component, n, k, faults.active("drop_factorial"))
    d = w.dim
    acc = [w._zero] * d
    if powers is None:
        powers = {}
    if not powers:
        unit = [w._zero] * d
        unit[0] = w._conv(1)
        powers[(0,) * n] = unit
    for alpha, coeff in terms:
        c = _coeff_value(coeff, base, n)
        if not c:
            continue
        pw = _nu_power(alpha, powers, nus, w)
        for j, p in enumerate(pw):
            if p:
                acc[j] = acc[j] + c * p
    return acc


def _nu_power(alpha, powers, nus, w):
    got = powers.get(alpha)
    if got is not None:
        return got
    i = max(j for j, a in enumerate(alpha) if a)
    prev = alpha[:i] + (alpha[i] - 1,) + alpha[i + 1:]
    out = w.mul_coords(_nu_power(prev, powers, nus, w), nus[i])
    powers[alpha] = out
    return out


def _check_point(f, point):
    if not isinstance(point, WeilPoint):
        raise TypeError("expected a WeilPoint")
    if point.n != f.arity:
        raise ArityViolation(f"map takes {f.arity} inputs, point has {point.n}")
    w = point.algebra
    if f.has_primitives() and w.mode == "rational":
        raise ModeMismatch("map uses transcendental primitives; evaluate over W.float()")
    base = point.base()
    if f.domain is not None and not f.domain.contains(base):
        raise DomainError(f"base point {base} lies outside the domain of the map")
    return w, base


class Lift:
    """``T^W f`` as a callable on :class:`WeilPoint` values."""

    def __init__(self, f, algebra, method="taylor"):
        if method not in ("taylor", "direct"):
            raise ValueError(f"unknown method {method!r}")
        self.map = f
        self.algebra = algebra
        self.method = method

    def __call__(self, point):
        if not isinstance(point, WeilPoint):
            point = WeilPoint.of(self.algebra, point)
        if not point.algebra.same_presentation(self.algebra):
            raise AlgebraMismatch("point is not over the lifted algebra")
        w, base = _check_point(self.map, point)
        if self.method == "direct":
            return WeilPoint(w, direct_eval(self.map, point))
        nus = [e.nilpotent_part().coords for e in point.coords_vec]
        n = self.map.arity
        powers = {}
        comps = [WeilElement(w, _taylor_coords(c, n, w, base, nus, powers))
                 for c in self.map.components]
        return WeilPoint(w, comps)


def lift_map(f, algebra, method="taylor"):
    """Return ``T^W f``; call it on points of ``W^n``."""
    return Lift(f, algebra, method)


def lift_coords(f, algebra, flat):
    """``T^W f`` on flat coordinates (length ``n * dim W``)."""
    return lift_map(f, algebra)(WeilPoint.from_flat(algebra, flat, f.arity)).flat()


# -- direct route ---------------------------------------------------------

def _primitive_series(name, a, k, exact):
    """``prim^(j)(a) / j!`` for ``j < k``."""
    if name == "log":
        if a <= 0:
            raise DomainError(f"log needs a positive base point, got {a}")
    if name == "sqrt":
        if a < 0 or (a == 0 and k > 1):
            raise DomainError(f"sqrt needs a positive base point, got {a}")
    if exact:
        value = _exact_value(name, a)
        if value is None:
            raise ModeMismatch(f"{name}({a}) is irrational; use a float algebra")
    else:
        a = float(a)
    out = []
    if name in ("sin", "cos"):
        s = _exact_value("sin", a) if exact else math.sin(a)
        c = _exact_value("cos", a) if exact else math.cos(a)
        cycle = [s, c, -s, -c] if name == "sin" else [c, -s, -c, s]
        for j in range(k):
            out.append(cycle[j % 4] / factorial(j))
    elif name == "exp":
        e = value if exact else math.exp(a)
        out = [e / factorial(j) for j in range(k)]
    elif name == "log":
        out.append(value if exact else math.log(a))
        for j in range(1, k):
            out.append((-1) ** (j - 1) / (j * a ** j) if not exact else Fraction((-1) ** (j - 1), j) / a ** j)
    elif name == "sqrt":
        r = value if exact else math.sqrt(a)
        coef = Fraction(1)
        for j in range(k):
            # binomial(1/2, j) * a^(1/2 - j)
            out.append(coef * r / a ** j if exact else float(coef) * r / a ** j)
            coef = coef * (Fraction(1, 2) - j) / (j + 1)
    else:
        raise ValueError(f"unknown primitive {name!r}")
    return out


def _exact_value(name, a):
    a = Fraction(a)
    if name == "sin" and a == 0:
        return Fraction(0)
    if name == "cos" and a == 0:
        return Fraction(1)
    if name == "exp" and a == 0:
        return Fraction(1)
    if name == "log" and a == 1:
        return Fraction(0)
    if name == "sqrt" and a >= 0:
        n, d = math.isqrt(a.numerator), math.isqrt(a.denominator)
        if n * n == a.numerator and d * d == a.denominator:
            return Fraction(n, d)
    return None


def taylor_primitive(prim, a, nu):
    """``sum_{j<k} prim^(j)(a) / j! * nu^j`` for a nilpotent ``nu``."""
    w = nu.algebra
    if nu.coords[0] != 0:
        raise ValueError("nu must have zero unit coordinate")
    k = w.nilpotency_index
    coefs = _primitive_series(prim, a, k, w.mode == "rational")
    out = w.zero()
    power = w.unit()
    for j, c in enumerate(coefs):
        if j:
            power = power * nu
        if c:
            out = out + power.scale(c)
    return out


def direct_eval(f, point):
    """Evaluate each component of ``f`` with algebra arithmetic."""
    w = point.algebra
    memo = {}

    def ev(e):
        got = memo.get(e)
        if got is not None:
            return got
        if isinstance(e, Const):
            r = w.scalar(float(e.value) if w.mode == "float" else e.value)
        elif isinstance(e, Var):
            r = point.coords_vec[e.index]
        elif isinstance(e, Add):
            r = w.zero()
            for t in e.terms:
                r = r + ev(t)
        elif isinstance(e, Mul):
            r = w.unit()
            for t in e.factors:
                r = r * ev(t)
        elif isinstance(e, Div):
            den = ev(e.den)
            if den.coords[0] == 0:
                raise DomainError("division by an element with zero base value")
            r = ev(e.num) * den.inverse()
        elif isinstance(e, Pow):
            r = ev(e.base) ** e.exp
        elif isinstance(e, Call):
            u = ev(e.arg)
            r = taylor_primitive(e.name, u.coords[0], u.nilpotent_part())
        else:
            raise TypeError(e)
        memo[e] = r
        return r

    return [ev(c) for c in f.components]


# -- natural transformations ---------------------------------------------

def alpha_on_chart(phi, point):
    """``alpha_phi`` on ``R^n``: apply ``phi`` to every component."""
    if not point.algebra.same_presentation(phi.source):
        raise AlgebraMismatch("point is not over the source of the morphism")
    tgt = phi.target.with_mode(point.algebra.mode)
    return WeilPoint(tgt, [phi.apply(e) for e in point.coords_vec])


# -- iterated lifts and the tensor identification -------------------------

def iterated_lift(f, w1, w2, nested):
    """``T^W2 (T^W1 f)`` at a W2-point of ``W1^n``.

    ``nested[i]`` is the list of W1-coordinates of component ``i``, each a
    W2-element.  The outer Taylor sum is taken in ``W1``; its coefficients
    ``d^alpha f / alpha!`` are themselves lifted through ``W2``.  Returns the
    same nested shape for the ``m`` outputs.
    """
    n = f.arity
    base = [row[0] for row in nested]
    zero2 = w2.zero()
    nus = [[zero2] + list(row[1:]) for row in nested]
    powers, ctx = {}, {}
    return [_taylor_coords_ring(c, n, w1, base, nus, zero2, powers, ctx) for c in f.components]


def _taylor_coords_ring(component, n, w, base, nus, zero, powers=None, ctx=None):
    k = w.nilpotency_index
    terms = taylor_terms(component, n, k, faults.active("drop_factorial"))
    d = w.dim
    acc = [zero] * d
    unit = [zero] * d
    unit[0] = zero + 1
    if powers is None:
        powers = {}
    powers.setdefault((0,) * n, unit)
    if ctx is None:
        ctx = {}
    for alpha, coeff in terms:
        c = _coeff_value(coeff, base, n, ctx)
        if not c:
            continue
        pw = _nu_power(alpha, powers, nus, w)
        for j, p in enumerate(pw):
            if p:
                acc[j] = acc[j] + c * p
    return acc


def nested_to_tensor(w1, w2, nested, tensor_algebra):
    """W2-points of ``W1^n`` -> points of ``(W1 (x) W2)^n``."""
    pos = kron_positions(w1, w2)
    d2 = w2.dim
    comps = []
    for row in nested:
        coords = [tensor_algebra._zero] * tensor_algebra.dim
        for b, e in enumerate(row):
            for c, x in enumerate(e.coords):
                coords[pos[b * d2 + c]] = x
        comps.append(WeilElement(tensor_algebra, coords))
    return WeilPoint(tensor_algebra, comps)


def tensor_to_nested(w1, w2, point):
    """Inverse of :func:`nested_to_tensor`."""
    pos = kron_positions(w1, w2)
    d1, d2 = w1.dim, w2.dim
    w2m = w2.with_mode(point.algebra.mode)
    out = []
    for e in point.coords_vec:
        row = []
        for b in range(d1):
            row.append(WeilElement(w2m, [e.coords[pos[b * d2 + c]] for c in range(d2)]))
        out.append(row)
    return out


# -- symbolic prolongation -----------------------------------------------

def prolong(f, w):
    """``T^W f`` as an explicit chart map ``R^(n*d) -> R^(m*d)``.

    Coordinates are ordered component-major: ``(i, j) -> i * d + j`` with
    ``j`` running over the basis of ``W``.  Polynomial maps stay polynomial.
    The domain restricts only the base coordinates.
    """
    n, d = f.arity, w.dim
    N = n * d
    if f.is_polynomial():
        base = [Polynomial.variable(N, i * d, Fraction(1)) for i in range(n)]
        zero = Polynomial(N)
        nus = [[zero] + [Polynomial.variable(N, i * d + j, Fraction(1)) for j in range(1, d)]
               for i in range(n)]
    else:
        base = [Var(i * d) for i in range(n)]
        zero = Const(0)
        nus = [[zero] + [Var(i * d + j) for j in range(1, d)] for i in range(n)]
    comps = []
    for c in f.components:
        coords = _taylor_coords_ring(c, n, _Symbolic(w, zero), base, nus, zero)
        for x in coords:
            comps.append(_as_expr(x))
    domain = None
    if f.domain is not None:
        ivs = []
        for i in range(n):
            ivs.append(f.domain.intervals[i])
            ivs.extend([(None, None)] * (d - 1))
        domain = Box(tuple(ivs))
    return SmoothMap(N, tuple(comps), domain)


class _Symbolic:
    """View of an algebra whose coordinate zero is a symbolic ring zero."""

    def __init__(self, w, zero):
        self._w = w
        self._zero = zero
        self.dim = w.dim
        self.nilpotency_index = w.nilpotency_index

    def mul_coords(self, a, b):
        out = [self._zero] * self.dim
        table = self._w._table
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                for k, c in table[i][j]:
                    out[k] = out[k] + ai * bj * c
        return out


def _as_expr(x):
    from .expr import as_expr, from_polynomial

    if isinstance(x, Polynomial):
        return from_polynomial(x)
    return as_expr(x)


def jet_of(point_result, w):
    """Map output coordinates to ``{monomial label: coefficient}``."""
    labels = w.basis_labels()
    return [dict(zip(labels, e.coords)) for e in point_result.coords_vec]


def close_points(p, q, tol=1e-9):
    return all(all_close(a.coords, b.coords, tol) for a, b in zip(p.coords_vec, q.coords_vec))
