"""Expression language for chart-level smooth maps ``R^n -> R^m``.

Grammar (variables are ``x0 .. x{n-1}``)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' unary)?            # right associative
    atom    := number | 'x' digits | func '(' expr ')' | '(' expr ')'
    func    := 'sin' | 'cos' | 'exp' | 'log' | 'sqrt'
    number  := digits ('.' digits)?

Exponents must fold to non-negative integer constants.  Decimal literals are
read exactly (``0.3`` is ``3/10``).

Nodes are immutable and hashable.  The smart constructors :func:`add`,
:func:`mul`, :func:`div`, :func:`power` do constant folding and 0/1
absorption; :func:`canonical` additionally sorts operands so structural
equality is meaningful.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    ArityViolation,
    DomainError,
    ExprSyntaxError,
    UnknownIdentifier,
)

PRIMITIVES = ("sin", "cos", "exp", "log", "sqrt")


class Expr:
    __slots__ = ("_hash",)
    prec = 5

    def _key(self):
        raise NotImplementedError

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            h = hash((type(self).__name__, self._key()))
            object.__setattr__(self, "_hash", h)
            return h

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other):
            return False
        return hash(self) == hash(other) and self._key() == other._key()

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(map(repr, self._key()))})"

    def __str__(self):
        return _print(self)

    # arithmetic sugar, used when expressions act as coefficients
    def __add__(self, other):
        return add(self, as_expr(other))

    def __radd__(self, other):
        return add(as_expr(other), self)

    def __sub__(self, other):
        return add(self, neg(as_expr(other)))

    def __rsub__(self, other):
        return add(as_expr(other), neg(self))

    def __mul__(self, other):
        return mul(self, as_expr(other))

    def __rmul__(self, other):
        return mul(as_expr(other), self)

    def __neg__(self):
        return neg(self)

    def __truediv__(self, other):
        return div(self, as_expr(other))

    def __pow__(self, n):
        return power(self, n)


class Const(Expr):
    __slots__ = ("value",)

    def __init__(self, value):
        object.__setattr__(self, "value", Fraction(value))

    def _key(self):
        return (self.value,)

    def __bool__(self):
        return self.value != 0

    @property
    def prec(self):
        if self.value.denominator != 1:
            return 2
        return 3 if self.value < 0 else 5


class Var(Expr):
    __slots__ = ("index",)

    def __init__(self, index):
        object.__setattr__(self, "index", index)

    def _key(self):
        return (self.index,)


class Add(Expr):
    __slots__ = ("terms",)
    prec = 1

    def __init__(self, terms):
        object.__setattr__(self, "terms", tuple(terms))

    def _key(self):
        return self.terms


class Mul(Expr):
    __slots__ = ("factors",)
    prec = 2

    def __init__(self, factors):
        object.__setattr__(self, "factors", tuple(factors))

    def _key(self):
        return self.factors


class Div(Expr):
    __slots__ = ("num", "den")
    prec = 2

    def __init__(self, num, den):
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def _key(self):
        return (self.num, self.den)


class Pow(Expr):
    __slots__ = ("base", "exp")
    prec = 4

    def __init__(self, base, exp):
        if not isinstance(exp, int) or exp < 0:
            raise ValueError("Pow exponent must be a non-negative integer")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "exp", exp)

    def _key(self):
        return (self.base, self.exp)


class Call(Expr):
    __slots__ = ("name", "arg")

    def __init__(self, name, arg):
        if name not in PRIMITIVES:
            raise ValueError(f"unknown primitive {name}")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "arg", arg)

    def _key(self):
        return (self.name, self.arg)


for _cls in (Const, Var, Add, Mul, Div, Pow, Call):
    _cls.__setattr__ = lambda self, k, v: (_ for _ in ()).throw(AttributeError("Expr is immutable"))

ZERO = Const(0)
ONE = Const(1)


def as_expr(x):
    if isinstance(x, Expr):
        return x
    if isinstance(x, (int, Fraction)):
        return Const(x)
    raise TypeError(f"cannot use {x!r} in an expression")


# -- smart constructors --------------------------------------------------

def add(*terms):
    flat = []
    const = Fraction(0)
    for t in terms:
        parts = t.terms if isinstance(t, Add) else (t,)
        for p in parts:
            if isinstance(p, Const):
                const += p.value
            else:
                flat.append(p)
    if const != 0:
        flat.append(Const(const))
    if not flat:
        return ZERO
    if len(flat) == 1:
        return flat[0]
    return Add(flat)


def mul(*factors):
    flat = []
    const = Fraction(1)
    for f in factors:
        parts = f.factors if isinstance(f, Mul) else (f,)
        for p in parts:
            if isinstance(p, Const):
                const *= p.value
            else:
                flat.append(p)
    if const == 0:
        return ZERO
    if const != 1 or not flat:
        flat.insert(0, Const(const))
    if len(flat) == 1:
        return flat[0]
    return Mul(flat)


def neg(e):
    return mul(Const(-1), e)


def div(num, den):
    if isinstance(den, Const):
        if den.value == 0:
            raise DomainError("division by the constant 0")
        return mul(Const(1 / den.value), num)
    if num == ZERO:
        return ZERO
    return Div(num, den)


def power(base, n):
    if n == 0:
        return ONE
    if n == 1:
        return base
    if isinstance(base, Const):
        return Const(base.value ** n)
    if isinstance(base, Pow):
        return Pow(base.base, base.exp * n)
    return Pow(base, n)


def call(name, arg):
    return Call(name, arg)


def _sort_key(e):
    order = {Const: 0, Var: 1, Pow: 2, Call: 3, Mul: 4, Div: 5, Add: 6}
    return (order[type(e)], _print(e))


@lru_cache(maxsize=8192)
def canonical(e):
    """Flatten, fold constants, absorb 0/1 and sort operands."""
    if isinstance(e, (Const, Var)):
        return e
    if isinstance(e, Add):
        out = add(*(canonical(t) for t in e.terms))
        if isinstance(out, Add):
            consts = [t for t in out.terms if isinstance(t, Const)]
            rest = sorted((t for t in out.terms if not isinstance(t, Const)), key=_sort_key)
            out = Add(rest + consts)
        return out
    if isinstance(e, Mul):
        out = mul(*(canonical(f) for f in e.factors))
        if isinstance(out, Mul):
            consts = [f for f in out.factors if isinstance(f, Const)]
            rest = sorted((f for f in out.factors if not isinstance(f, Const)), key=_sort_key)
            out = Mul(consts + rest)
        return out
    if isinstance(e, Div):
        num, den = canonical(e.num), canonical(e.den)
        if isinstance(den, Const) and den.value == 0:
            return Div(num, den)  # left for eval_real to reject
        if isinstance(num, Const) and isinstance(den, Const):
            return Const(num.value / den.value)
        return canonical(div(num, den)) if isinstance(den, Const) else div(num, den)
    if isinstance(e, Pow):
        return power(canonical(e.base), e.exp)
    if isinstance(e, Call):
        return Call(e.name, canonical(e.arg))
    raise TypeError(e)


# -- printing ------------------------------------------------------------

def _fmt_fraction(v):
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _looks_negative(e):
    if isinstance(e, Const):
        return e.value < 0
    if isinstance(e, Mul):
        return isinstance(e.factors[0], Const) and e.factors[0].value < 0
    return False


def _negated(e):
    if isinstance(e, Const):
        return Const(-e.value)
    head = -e.factors[0].value
    rest = e.factors[1:]
    if head == 1:
        return rest[0] if len(rest) == 1 else Mul(rest)
    return Mul((Const(head),) + rest)


def _wrap(e, min_prec):
    s = _print(e)
    return f"({s})" if e.prec < min_prec else s


def pretty(e):
    """Render the canonical form of ``e`` in the input grammar."""
    return _print(canonical(e))


@lru_cache(maxsize=65536)
def _print(e):
    if isinstance(e, Const):
        return _fmt_fraction(e.value)
    if isinstance(e, Var):
        return f"x{e.index}"
    if isinstance(e, Add):
        out = _print(e.terms[0])
        for t in e.terms[1:]:
            if _looks_negative(t):
                out += " - " + _wrap(_negated(t), 2)
            else:
                out += " + " + _wrap(t, 2)
        return out
    if isinstance(e, Mul):
        fs = e.factors
        if isinstance(fs[0], Const) and fs[0].value == -1 and len(fs) > 1:
            rest = fs[1:]
            if len(rest) == 1:
                return "-" + _wrap(rest[0], 3)
            if _looks_negative(rest[0]):
                return "-(" + _print(Mul(rest)) + ")"
            return "-" + _print(Mul(rest))
        head = fs[0]
        if isinstance(head, Const) and head.value < 0 and head.value.denominator == 1:
            parts = [_print(head)]
        else:
            parts = [_wrap(head, 3)]
        for f in fs[1:]:
            parts.append(_wrap(f, 4) if _looks_negative(f) else _wrap(f, 3))
        return "*".join(parts)
    if isinstance(e, Div):
        num = _print(e.num) if e.num.prec >= 2 else f"({_print(e.num)})"
        den = f"({_print(e.den)})" if _looks_negative(e.den) else _wrap(e.den, 4)
        return f"{num}/{den}"
    if isinstance(e, Pow):
        base = _print(e.base) if e.base.prec >= 5 else f"({_print(e.base)})"
        return f"{base}^{e.exp}"
    if isinstance(e, Call):
        return f"{e.name}({_print(e.arg)})"
    raise TypeError(e)


# -- parsing -------------------------------------------------------------

class _Parser:
    def __init__(self, src, arity):
        self.src = src
        self.arity = arity
        self.pos = 0

    def skip(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def expect(self, ch):
        if self.peek() != ch:
            got = self.peek() or "end of input"
            raise ExprSyntaxError(f"expected {ch!r}, got {got!r}", self.pos)
        self.pos += 1

    def parse(self):
        e = self.expr()
        if self.peek():
            raise ExprSyntaxError(f"unexpected {self.peek()!r}", self.pos)
        return e

    def expr(self):
        terms = [self.term()]
        while self.peek() in ("+", "-"):
            op = self.src[self.pos]
            self.pos += 1
            t = self.term()
            terms.append(t if op == "+" else _neg_literal(t))
        return terms[0] if len(terms) == 1 else Add(_flatten(terms, Add))

    def term(self):
        left = self.unary()
        while self.peek() in ("*", "/"):
            op = self.src[self.pos]
            self.pos += 1
            right = self.unary()
            if op == "*":
                left = Mul(_flatten([left, right], Mul))
            else:
                left = Div(left, right)
        return left

    def unary(self):
        if self.peek() == "-":
            self.pos += 1
            return _neg_literal(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            at = self.pos
            exp = canonical(self.unary())
            if not isinstance(exp, Const) or exp.value.denominator != 1 or exp.value < 0:
                raise ExprSyntaxError("exponent must be a non-negative integer", at)
            return Pow(base, int(exp.value))
        return base

    def atom(self):
        ch = self.peek()
        start = self.pos
        if ch == "(":
            self.pos += 1
            e = self.expr()
            self.expect(")")
            return e
        if ch.isdigit() or ch == ".":
            while self.pos < len(self.src) and (self.src[self.pos].isdigit() or self.src[self.pos] == "."):
                self.pos += 1
            text = self.src[start:self.pos]
            try:
                return Const(Fraction(text))
            except ValueError:
                raise ExprSyntaxError(f"bad number {text!r}", start) from None
        if ch.isalpha() or ch == "_":
            while self.pos < len(self.src) and (self.src[self.pos].isalnum() or self.src[self.pos] == "_"):
                self.pos += 1
            name = self.src[start:self.pos]
            if name in PRIMITIVES:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(name, arg)
            if name[0] == "x" and name[1:].isdigit():
                idx = int(name[1:])
                if idx >= self.arity:
                    raise ArityViolation(f"{name} used with arity {self.arity}", start)
                return Var(idx)
            raise UnknownIdentifier(f"unknown identifier {name!r}", start)
        raise ExprSyntaxError(f"unexpected {ch or 'end of input'!r}", start)


def _flatten(items, cls):
    out = []
    for it in items:
        if isinstance(it, cls):
            out.extend(it.factors if cls is Mul else it.terms)
        else:
            out.append(it)
    return out


def _neg_literal(e):
    if isinstance(e, Const):
        return Const(-e.value)
    return Mul(_flatten([Const(-1), e], Mul))


def parse(src, arity):
    """Parse ``src`` into an :class:`Expr` over variables ``x0..x{arity-1}``."""
    if isinstance(src, bytes):
        src = src.decode("utf-8")
    return _Parser(src, arity).parse()


# -- analysis ------------------------------------------------------------

@lru_cache(maxsize=None)
def free_vars(e):
    if isinstance(e, Var):
        return frozenset((e.index,))
    if isinstance(e, Const):
        return frozenset()
    return frozenset().union(*(free_vars(c) for c in children(e)))


def children(e):
    if isinstance(e, Add):
        return e.terms
    if isinstance(e, Mul):
        return e.factors
    if isinstance(e, Div):
        return (e.num, e.den)
    if isinstance(e, Pow):
        return (e.base,)
    if isinstance(e, Call):
        return (e.arg,)
    return ()


@lru_cache(maxsize=None)
def has_primitives(e):
    return isinstance(e, Call) or any(has_primitives(c) for c in children(e))


@lru_cache(maxsize=None)
def is_polynomial(e):
    """True when ``e`` uses only + - * ^ and division by constants."""
    if isinstance(e, (Const, Var)):
        return True
    if isinstance(e, Call):
        return False
    if isinstance(e, Div):
        return is_polynomial(e.num) and not free_vars(e.den) and not has_primitives(e.den)
    return all(is_polynomial(c) for c in children(e))


def max_var(e):
    fv = free_vars(e)
    return max(fv) if fv else -1


# -- differentiation -----------------------------------------------------

def _primitive_derivative(name, u):
    if name == "sin":
        return call("cos", u)
    if name == "cos":
        return neg(call("sin", u))
    if name == "exp":
        return call("exp", u)
    if name == "log":
        return div(ONE, u)
    if name == "sqrt":
        return div(ONE, mul(Const(2), call("sqrt", u)))
    raise ValueError(name)


@lru_cache(maxsize=65536)
def derive(e, var):
    """Symbolic partial derivative with respect to ``x{var}``."""
    if var not in free_vars(e):
        return ZERO
    if isinstance(e, Var):
        return ONE
    if isinstance(e, Add):
        return add(*(derive(t, var) for t in e.terms))
    if isinstance(e, Mul):
        fs = e.factors
        terms = []
        for i, f in enumerate(fs):
            df = derive(f, var)
            if df != ZERO:
                terms.append(mul(*fs[:i], df, *fs[i + 1:]))
        return add(*terms)
    if isinstance(e, Div):
        du, dv = derive(e.num, var), derive(e.den, var)
        top = add(mul(du, e.den), neg(mul(e.num, dv)))
        return div(top, power(e.den, 2))
    if isinstance(e, Pow):
        return mul(Const(e.exp), power(e.base, e.exp - 1), derive(e.base, var))
    if isinstance(e, Call):
        return mul(_primitive_derivative(e.name, e.arg), derive(e.arg, var))
    raise TypeError(e)


# -- evaluation ----------------------------------------------------------

def _is_rational(x):
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _prim_real(name, x):
    x = float(x)
    if name == "log":
        if x <= 0:
            raise DomainError(f"log of non-positive value {x}")
        return math.log(x)
    if name == "sqrt":
        if x < 0:
            raise DomainError(f"sqrt of negative value {x}")
        return math.sqrt(x)
    return getattr(math, name)(x)


def eval_real(e, point):
    """Numeric value of ``e`` at ``point``.

    Exact (Fraction) when the point is rational and ``e`` has no
    transcendental primitives; float otherwise.
    """
    exact = all(_is_rational(p) for p in point) and not has_primitives(e)
    vals = [Fraction(p) for p in point] if exact else [float(p) for p in point]
    if max_var(e) >= len(vals):
        raise ArityViolation(f"point of length {len(vals)} too short for {pretty(e)}")
    return _eval(e, vals, exact)


def _eval(e, vals, exact):
    if isinstance(e, Const):
        return e.value if exact else float(e.value)
    if isinstance(e, Var):
        return vals[e.index]
    if isinstance(e, Add):
        total = 0
        for t in e.terms:
            total = total + _eval(t, vals, exact)
        return total
    if isinstance(e, Mul):
        prod = 1
        for f in e.factors:
            prod = prod * _eval(f, vals, exact)
        return prod
    if isinstance(e, Div):
        d = _eval(e.den, vals, exact)
        if d == 0:
            raise DomainError(f"division by zero in {pretty(e)}")
        return _eval(e.num, vals, exact) / d
    if isinstance(e, Pow):
        return _eval(e.base, vals, exact) ** e.exp
    if isinstance(e, Call):
        return _prim_real(e.name, _eval(e.arg, vals, exact))
    raise TypeError(e)


def substitute(e, exprs):
    """Replace each ``x{i}`` by ``exprs[i]``."""
    if isinstance(e, Const):
        return e
    if isinstance(e, Var):
        return exprs[e.index]
    if isinstance(e, Add):
        return add(*(substitute(t, exprs) for t in e.terms))
    if isinstance(e, Mul):
        return mul(*(substitute(f, exprs) for f in e.factors))
    if isinstance(e, Div):
        return div(substitute(e.num, exprs), substitute(e.den, exprs))
    if isinstance(e, Pow):
        return power(substitute(e.base, exprs), e.exp)
    if isinstance(e, Call):
        return call(e.name, substitute(e.arg, exprs))
    raise TypeError(e)


# -- bridge to sparse polynomials ---------------------------------------

def to_polynomial(e, nvars):
    """Expand a polynomial expression; ``None`` when ``e`` is not polynomial."""
    from .poly import Polynomial

    if not is_polynomial(e) or max_var(e) >= nvars:
        return None
    return _to_poly(e, nvars, Polynomial)


def _to_poly(e, n, P):
    if isinstance(e, Const):
        return P.constant(n, e.value)
    if isinstance(e, Var):
        return P.variable(n, e.index, Fraction(1))
    if isinstance(e, Add):
        out = P(n)
        for t in e.terms:
            out = out + _to_poly(t, n, P)
        return out
    if isinstance(e, Mul):
        out = P.constant(n, Fraction(1))
        for f in e.factors:
            out = out * _to_poly(f, n, P)
        return out
    if isinstance(e, Div):
        d = _eval(e.den, [], True)
        if d == 0:
            raise DomainError("division by the constant 0")
        return _to_poly(e.num, n, P).scale(1 / d)
    if isinstance(e, Pow):
        return _to_poly(e.base, n, P) ** e.exp
    raise TypeError(e)


def from_polynomial(p):
    """Expression for a :class:`~weil.poly.Polynomial` (deglex term order)."""
    terms = []
    for m, c in p.sorted_terms():
        factors = [Const(c)]
        for i, k in enumerate(m):
            if k:
                factors.append(power(Var(i), k))
        terms.append(mul(*factors))
    return add(*terms)


# -- maps and domains ----------------------------------------------------

@dataclass(frozen=True)
class Box:
    """Product of open intervals; ``None`` bounds mean unbounded."""

    intervals: tuple

    @classmethod
    def full(cls, n):
        return cls(((None, None),) * n)

    @classmethod
    def of(cls, pairs):
        return cls(tuple((lo, hi) for lo, hi in pairs))

    @property
    def dim(self):
        return len(self.intervals)

    def contains(self, point):
        if len(point) != self.dim:
            return False
        for x, (lo, hi) in zip(point, self.intervals):
            if lo is not None and not x > lo:
                return False
            if hi is not None and not x < hi:
                return False
        return True

    def is_full(self):
        return all(lo is None and hi is None for lo, hi in self.intervals)

    def __mul__(self, other):
        return Box(self.intervals + other.intervals)

    def __str__(self):
        fmt = lambda v, inf: inf if v is None else str(v)
        return "x".join(f"({fmt(lo, '-inf')},{fmt(hi, 'inf')})" for lo, hi in self.intervals) or "point"


@dataclass(frozen=True)
class SmoothMap:
    """Chart-level map ``R^arity -> R^coarity`` given by expression components."""

    arity: int
    components: tuple
    domain: Box = None

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        for c in self.components:
            if max_var(c) >= self.arity:
                raise ArityViolation(f"component {pretty(c)} exceeds arity {self.arity}")
        if self.domain is not None and self.domain.dim != self.arity:
            raise ArityViolation("domain box dimension differs from arity")

    @classmethod
    def parse(cls, sources, arity, domain=None):
        if isinstance(sources, str):
            sources = [sources]
        return cls(arity, tuple(parse(s, arity) for s in sources), domain)

    @classmethod
    def identity(cls, n, domain=None):
        return cls(n, tuple(Var(i) for i in range(n)), domain)

    @classmethod
    def linear(cls, matrix, arity=None, domain=None):
        """Map ``u -> matrix . u``; ``matrix`` is a list of rows."""
        if arity is None:
            arity = len(matrix[0]) if matrix else 0
        comps = []
        for row in matrix:
            comps.append(add(*(mul(Const(c), Var(j)) for j, c in enumerate(row) if c != 0)))
        return cls(arity, tuple(comps), domain)

    @property
    def coarity(self):
        return len(self.components)

    def __call__(self, point):
        if self.domain is not None and not self.domain.contains(point):
            raise DomainError(f"{point} outside the domain of the map")
        return [eval_real(c, point) for c in self.components]

    def compose(self, inner):
        """``self o inner``."""
        if inner.coarity != self.arity:
            raise ArityViolation("composition arity mismatch")
        comps = tuple(substitute(c, inner.components) for c in self.components)
        return SmoothMap(inner.arity, comps, inner.domain)

    def pair(self, other):
        """``x -> (self(x), other(x))``."""
        if other.arity != self.arity:
            raise ArityViolation("pairing maps of different arity")
        return SmoothMap(self.arity, self.components + other.components, self.domain)

    def is_polynomial(self):
        return all(is_polynomial(c) for c in self.components)

    def has_primitives(self):
        return any(has_primitives(c) for c in self.components)

    def __str__(self):
        return "(" + ", ".join(pretty(c) for c in self.components) + ")"
