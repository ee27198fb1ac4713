"""Sparse multivariate polynomials and Buchberger completion.

Polynomials are dictionaries ``{exponent tuple: coefficient}`` over a fixed
number of variables ``x0..x{n-1}``.  Coefficients are usually
:class:`fractions.Fraction`, but the ring operations only need ``+``, ``*``
and comparison with zero, so floats work too.

The monomial order is degree-lexicographic with ``x0 > x1 > ...``.
"""

from fractions import Fraction
from itertools import combinations
from math import factorial


def exact(c):
    """Collapse integral Fractions to ``int`` (cheaper arithmetic, same value)."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def deglex_key(exps):
    """Sort key for the term order (larger key = larger monomial)."""
    return (sum(exps), exps)


def basis_key(exps):
    """Sort key for listing bases: degree ascending, ``x0``-heavy first."""
    return (sum(exps), tuple(-e for e in exps))


def monomial_str(exps):
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) if parts else "1"


def _fmt_coeff(c):
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return repr(c) if isinstance(c, float) else str(c)


class Polynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if len(m) != nvars:
                    raise ValueError(f"monomial {m} has wrong length for {nvars} variables")
                if c != 0:
                    self.terms[tuple(m)] = exact(c)

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars, i, coeff=1):
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, {tuple(exps): coeff})

    @classmethod
    def monomial(cls, exps, coeff=1):
        return cls(len(exps), {tuple(exps): coeff})

    @classmethod
    def parse(cls, src, nvars):
        """Parse a polynomial written in the expression grammar."""
        from .expr import parse, to_polynomial

        p = to_polynomial(parse(src, nvars), nvars)
        if p is None:
            from .errors import NotPolynomial

            raise NotPolynomial(f"{src!r} is not a polynomial")
        return p

    # -- basic protocol -------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if other == 0:
            return not self.terms
        return self.terms == {(0,) * self.nvars: other}

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def leading_monomial(self):
        return max(self.terms, key=deglex_key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: deglex_key(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for m, c in self.sorted_terms():
            neg = c < 0 if not isinstance(c, complex) else False
            mag = -c if neg else c
            if all(e == 0 for e in m):
                body = _fmt_coeff(mag)
            elif mag == 1:
                body = monomial_str(m)
            else:
                body = f"{_fmt_coeff(mag)}*{monomial_str(m)}"
            if not out:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({self.nvars}, {str(self)!r})"

    # -- ring operations ----------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials over different variable counts")
            return other
        return Polynomial.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        res = dict(self.terms)
        for m, c in other.terms.items():
            v = res.get(m, 0) + c
            if v == 0:
                res.pop(m, None)
            else:
                res[m] = v
        out = Polynomial(self.nvars)
        out.terms = res
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Polynomial(self.nvars)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c):
        if c == 0:
            return Polynomial(self.nvars)
        out = Polynomial(self.nvars)
        out.terms = {m: v * c for m, v in self.terms.items()}
        return out

    def mul_term(self, exps, c):
        out = Polynomial(self.nvars)
        out.terms = {
            tuple(a + b for a, b in zip(m, exps)): v * c for m, v in self.terms.items()
        }
        return out

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        res = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                res[m] = res.get(m, 0) + c1 * c2
        return Polynomial(self.nvars, res)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        out = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- calculus / evaluation -----------------------------------------
    def derive(self, i):
        res = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                dm = m[:i] + (e - 1,) + m[i + 1:]
                res[dm] = c * e
        out = Polynomial(self.nvars)
        out.terms = res
        return out

    def taylor_coefficient(self, alpha):
        """``d^alpha p / alpha!`` as a polynomial."""
        p = self
        for i, a in enumerate(alpha):
            for _ in range(a):
                p = p.derive(i)
        denom = 1
        for a in alpha:
            denom *= factorial(a)
        return p.scale(Fraction(1, denom)) if denom != 1 else p

    def evaluate(self, point, one=1):
        """Evaluate at ``point``; entries may be numbers or ring elements.

        ``one`` is the multiplicative unit used for the constant term, so that
        evaluating over an algebra returns an algebra element.
        """
        if len(point) != self.nvars:
            raise ValueError(f"need {self.nvars} values, got {len(point)}")
        total = None
        powers = [{0: one} for _ in point]
        for m, c in self.terms.items():
            term = None
            for i, e in enumerate(m):
                if not e:
                    continue
                cache = powers[i]
                if e not in cache:
                    k = max(cache)
                    acc = cache[k]
                    while k < e:
                        acc = acc * point[i]
                        k += 1
                        cache[k] = acc
                f = cache[e]
                term = f if term is None else term * f
            term = one * c if term is None else term * c
            total = term if total is None else total + term
        if total is None:
            return one * 0
        return total

    def substitute_shift(self, offset, nvars):
        """Re-index into ``nvars`` variables starting at ``offset``."""
        out = Polynomial(nvars)
        out.terms = {
            (0,) * offset + m + (0,) * (nvars - offset - self.nvars): c
            for m, c in self.terms.items()
        }
        return out


# -- Groebner machinery ---------------------------------------------------

def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def reduce(p, basis):
    """Full reduction of ``p`` modulo ``basis`` (a list of monic polynomials)."""
    leads = [(g.leading_monomial(), g) for g in basis]
    rem = {}
    work = dict(p.terms)
    while work:
        m = max(work, key=deglex_key)
        c = work.pop(m)
        for lm, g in leads:
            if _divides(lm, m):
                q = tuple(a - b for a, b in zip(m, lm))
                for gm, gc in g.terms.items():
                    if gm == lm:
                        continue
                    t = tuple(a + b for a, b in zip(gm, q))
                    v = work.get(t, 0) - c * gc
                    if v == 0:
                        work.pop(t, None)
                    else:
                        work[t] = v
                break
        else:
            rem[m] = c
    out = Polynomial(p.nvars)
    out.terms = rem
    return out


def _monic(p):
    lc = p.leading_coefficient()
    return p if lc == 1 else p.scale(Fraction(1) / lc)


def _s_poly(f, g):
    lf, lg = f.leading_monomial(), g.leading_monomial()
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    return f.mul_term(tuple(a - b for a, b in zip(lcm, lf)), 1) - g.mul_term(
        tuple(a - b for a, b in zip(lcm, lg)), 1
    )


def groebner(polys):
    """Reduced Groebner basis (deglex) of the ideal generated by ``polys``."""
    basis = [_monic(p) for p in polys if not p.is_zero()]
    if not basis:
        return []
    pairs = list(combinations(range(len(basis)), 2))
    while pairs:
        i, j = pairs.pop()
        f, g = basis[i], basis[j]
        lf, lg = f.leading_monomial(), g.leading_monomial()
        if all(a == 0 or b == 0 for a, b in zip(lf, lg)):
            continue  # coprime leading monomials: S-poly reduces to zero
        r = reduce(_s_poly(f, g), basis)
        if not r.is_zero():
            basis.append(_monic(r))
            k = len(basis) - 1
            pairs.extend((t, k) for t in range(k))
    # minimise then inter-reduce
    basis.sort(key=lambda g: deglex_key(g.leading_monomial()))
    minimal = []
    for g in basis:
        lm = g.leading_monomial()
        if not any(_divides(h.leading_monomial(), lm) for h in minimal):
            minimal.append(g)
    reduced = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        lm = g.leading_monomial()
        tail = Polynomial(g.nvars, {m: c for m, c in g.terms.items() if m != lm})
        tail = reduce(tail, others) if others else tail
        reduced.append(_monic(tail + Polynomial.monomial(lm, 1)))
    reduced.sort(key=lambda g: deglex_key(g.leading_monomial()))
    return reduced
