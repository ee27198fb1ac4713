"""Weil algebras presented as quotients ``R[x0..x{n-1}]/I``.

An algebra is built once from its relations: the ideal is completed to a
reduced Groebner basis (deglex), the standard monomials give the basis, and
every monomial below the nilpotency index is reduced and tabulated.  After
that all arithmetic is table lookups on coordinate vectors.

Coefficients are exact rationals in rational mode (``int`` when integral,
:class:`~fractions.Fraction` otherwise, which keeps the common case fast).  A float
twin of any algebra (``W.float()``) shares the presentation and is used when
transcendental primitives are evaluated.
"""

import json
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import NamedTuple

from . import faults
from .errors import (
    AlgebraMismatch,
    ArityViolation,
    CompositionMismatch,
    DomainError,
    EmptyRelationsWithGenerators,
    ModeMismatch,
    NotFiniteDimensional,
    NotLocal,
    NotLocalMorphism,
    NotPolynomial,
    RelationNotKilled,
    WrongVariableCount,
)
from .poly import Polynomial, basis_key, exact, groebner, monomial_str, reduce

FORMAT_VERSION = 1
DEFAULT_TOL = 1e-9


def _parse_relation(src, n):
    if isinstance(src, Polynomial):
        if src.nvars != n:
            raise WrongVariableCount(f"relation over {src.nvars} variables, algebra has {n}")
        return src, str(src)
    try:
        return Polynomial.parse(src, n), src
    except ArityViolation as exc:
        raise WrongVariableCount(str(exc)) from None


def _monomials_of_degree(n, d):
    for combo in combinations_with_replacement(range(n), d):
        exps = [0] * n
        for i in combo:
            exps[i] += 1
        yield tuple(exps)


class WeilAlgebra:
    """Finite-dimensional local algebra ``R[x0..x{n-1}]/I``.

    Use :func:`new_weil_algebra` (or :func:`preset`) to build one.
    """

    def __init__(self, n_gens, relations, sources, gb, basis, reduction, k,
                 mode="rational", tol=DEFAULT_TOL, name=None):
        self.n_gens = n_gens
        self.relations = tuple(relations)
        self.relation_sources = tuple(sources)
        self.groebner = tuple(gb)
        self.basis = tuple(basis)
        self.index = {b: i for i, b in enumerate(self.basis)}
        self.reduction = reduction
        self.nilpotency_index = k
        self.mode = mode
        self.tol = tol
        self.name = name
        self._twin = None
        self._build_table()

    @property
    def dim(self):
        return len(self.basis)

    @property
    def key(self):
        return (self.n_gens, self.groebner)

    def _conv(self, c):
        return float(c) if self.mode == "float" else c

    def _build_table(self):
        d, k = self.dim, self.nilpotency_index
        table = []
        monomial = True
        for a in self.basis:
            row = []
            for b in self.basis:
                m = tuple(x + y for x, y in zip(a, b))
                if sum(m) >= k or m not in self.reduction:
                    row.append(())
                    continue
                entries = tuple((j, self._conv(exact(c))) for j, c in enumerate(self.reduction[m]) if c != 0)
                if len(entries) > 1 or any(c != 1 for _, c in entries):
                    monomial = False
                row.append(entries)
            table.append(row)
        self._table = table
        self._monomial = monomial
        if monomial:
            self._fast = [[e[0][0] if e else -1 for e in row] for row in table]
        self._zero = 0.0 if self.mode == "float" else 0
        assert len(table) == d

    # -- identity -------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, WeilAlgebra) and self.key == other.key and self.mode == other.mode

    def __hash__(self):
        return hash((self.key, self.mode))

    def same_presentation(self, other):
        return self.key == other.key

    def __repr__(self):
        label = self.name or (f"R[x0..x{self.n_gens - 1}]/I" if self.n_gens else "R")
        return f"<WeilAlgebra {label} dim={self.dim} k={self.nilpotency_index} {self.mode}>"

    def __matmul__(self, other):
        return tensor(self, other).algebra

    def float(self):
        """Float-coefficient twin sharing this presentation."""
        if self.mode == "float":
            return self
        if self._twin is None:
            twin = WeilAlgebra(self.n_gens, self.relations, self.relation_sources, self.groebner,
                               self.basis, self.reduction, self.nilpotency_index,
                               mode="float", tol=self.tol, name=self.name)
            twin._twin = self
            self._twin = twin
        return self._twin

    def rational(self):
        return self if self.mode == "rational" else self._twin

    def with_mode(self, mode):
        return self.float() if mode == "float" else self.rational()

    # -- elements -------------------------------------------------------
    def from_coords(self, coords):
        coords = list(coords)
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
        if self.mode == "float":
            coords = [float(c) for c in coords]
        else:
            if any(isinstance(c, float) for c in coords):
                raise ModeMismatch("float coordinate in a rational algebra")
            coords = [exact(Fraction(c)) for c in coords]
        return WeilElement(self, coords)

    def zero(self):
        return WeilElement(self, [self._zero] * self.dim)

    def unit(self):
        return self.scalar(1)

    def scalar(self, c):
        coords = [self._zero] * self.dim
        coords[0] = self._coerce_scalar(c)
        return WeilElement(self, coords)

    def gen(self, i):
        if not 0 <= i < self.n_gens:
            raise WrongVariableCount(f"generator x{i} out of range")
        exps = [0] * self.n_gens
        exps[i] = 1
        return WeilElement(self, self._reduce_monomial(tuple(exps)))

    def gens(self):
        return [self.gen(i) for i in range(self.n_gens)]

    def basis_element(self, j):
        coords = [self._zero] * self.dim
        coords[j] = self._conv(1)
        return WeilElement(self, coords)

    def _coerce_scalar(self, c):
        if self.mode == "rational":
            if isinstance(c, float):
                raise ModeMismatch("float scalar used with a rational algebra")
            return exact(Fraction(c))
        return float(c)

    def _reduce_monomial(self, m):
        if sum(m) >= self.nilpotency_index:
            return [self._zero] * self.dim
        coords = self.reduction.get(m)
        if coords is None:
            coords = _normal_form_coords(Polynomial.monomial(m, Fraction(1)), self.groebner, self.index)
        return [self._conv(c) for c in coords]

    def element(self, poly):
        """Normal form of ``poly`` (a string in ``x0..`` or a Polynomial)."""
        if isinstance(poly, str):
            try:
                poly = Polynomial.parse(poly, self.n_gens)
            except ArityViolation as exc:
                raise WrongVariableCount(str(exc)) from None
        elif isinstance(poly, (int, Fraction, float)):
            return self.scalar(poly)
        if poly.nvars != self.n_gens:
            raise WrongVariableCount(f"polynomial in {poly.nvars} variables, algebra has {self.n_gens}")
        coords = [self._zero] * self.dim
        for m, c in poly.terms.items():
            c = self._coerce_scalar(c)
            for j, v in enumerate(self._reduce_monomial(m)):
                if v:
                    coords[j] += c * v
        return WeilElement(self, coords)

    # -- coordinate kernels ---------------------------------------------
    def mul_coords(self, a, b):
        """Product of two coordinate vectors.

        Works for any coefficient ring whose zero is falsy (numbers, sparse
        polynomials, expressions).
        """
        d = self.dim
        zero = self._zero
        out = [zero] * d
        if self._monomial:
            fast = self._fast
            for i, ai in enumerate(a):
                if not ai:
                    continue
                row = fast[i]
                for j, bj in enumerate(b):
                    if not bj:
                        continue
                    k = row[j]
                    if k >= 0:
                        out[k] = out[k] + ai * bj
            return out
        table = self._table
        for i, ai in enumerate(a):
            if not ai:
                continue
            row = table[i]
            for j, bj in enumerate(b):
                if not bj:
                    continue
                for k, c in row[j]:
                    out[k] = out[k] + ai * bj * c
        return out

    def basis_labels(self):
        return [monomial_str(b) for b in self.basis]


def _normal_form_coords(p, gb, index):
    r = reduce(p, list(gb)) if gb else p
    coords = [0] * len(index)
    for m, c in r.terms.items():
        coords[index[m]] += c
    return [exact(c) for c in coords]


def new_weil_algebra(n_gens, relations, name=None):
    """Build the Weil algebra ``R[x0..x{n_gens-1}] / (relations)``.

    ``relations`` are polynomial strings (or :class:`Polynomial` objects).
    Raises :class:`EmptyRelationsWithGenerators`, :class:`NotFiniteDimensional`
    or :class:`NotLocal` when the quotient is not a Weil algebra.
    """
    if n_gens < 0:
        raise ValueError("n_gens must be non-negative")
    parsed = [_parse_relation(r, n_gens) for r in relations]
    polys = [p for p, _ in parsed]
    sources = [s for _, s in parsed]
    if n_gens > 0 and not polys:
        raise EmptyRelationsWithGenerators(
            f"{n_gens} generators with no relations is a polynomial ring, not finite-dimensional"
        )
    gb = groebner(polys)
    if any(g.degree() == 0 for g in gb):
        if not faults.active("skip_locality_check"):
            raise NotLocal("the relations generate the unit ideal (zero algebra)")
        gb = []
    leads = [g.leading_monomial() for g in gb]
    bounds = []
    for i in range(n_gens):
        pure = [m[i] for m in leads if all(e == 0 for j, e in enumerate(m) if j != i) and m[i] > 0]
        if not pure:
            raise NotFiniteDimensional(f"no power of x{i} is a leading monomial of the ideal")
        bounds.append(min(pure))
    basis = []
    _enumerate_standard((), bounds, leads, basis)
    basis.sort(key=basis_key)
    index = {b: i for i, b in enumerate(basis)}
    dim = len(basis)

    def nf(m):
        return _normal_form_coords(Polynomial.monomial(m, Fraction(1)), gb, index)

    if not faults.active("skip_locality_check"):
        for i in range(n_gens):
            exps = [0] * n_gens
            exps[i] = dim
            if any(c != 0 for c in nf(tuple(exps))):
                raise NotLocal(f"generator x{i} is not nilpotent")
    k = None
    for deg in range(1, dim + 1):
        if all(all(c == 0 for c in nf(m)) for m in _monomials_of_degree(n_gens, deg)):
            k = deg
            break
    if k is None:
        k = dim + 1  # only reachable with the locality check disabled
    reduction = {}
    for deg in range(0, k + 1):
        for m in _monomials_of_degree(n_gens, deg):
            reduction[m] = tuple(nf(m))
    return WeilAlgebra(n_gens, polys, sources, gb, basis, reduction, k, name=name)


def _enumerate_standard(prefix, bounds, leads, out):
    i = len(prefix)
    if i == len(bounds):
        if not any(all(a <= b for a, b in zip(lm, prefix)) for lm in leads):
            out.append(prefix)
        return
    for e in range(bounds[i]):
        _enumerate_standard(prefix + (e,), bounds, leads, out)


class WeilElement:
    """Element of a Weil algebra, stored as normal-form coordinates."""

    __slots__ = ("algebra", "coords")
    __hash__ = None

    def __init__(self, algebra, coords):
        self.algebra = algebra
        self.coords = list(coords)

    @property
    def augmentation(self):
        return self.coords[0]

    def nilpotent_part(self):
        c = list(self.coords)
        c[0] = self.algebra._zero
        return WeilElement(self.algebra, c)

    def is_unit(self):
        return self.coords[0] != 0

    def __bool__(self):
        return any(self.coords)

    def _check(self, other):
        if isinstance(other, WeilElement):
            if other.algebra is self.algebra or other.algebra == self.algebra:
                return other
            if other.algebra.same_presentation(self.algebra):
                raise ModeMismatch("rational and float elements mixed")
            raise AlgebraMismatch("elements of different algebras")
        return self.algebra.scalar(other)

    def __add__(self, other):
        o = self._check(other)
        return WeilElement(self.algebra, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        return WeilElement(self.algebra, [a - b for a, b in zip(self.coords, o.coords)])

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return WeilElement(self.algebra, [-a for a in self.coords])

    def scale(self, c):
        c = self.algebra._coerce_scalar(c)
        return WeilElement(self.algebra, [a * c for a in self.coords])

    def __mul__(self, other):
        if not isinstance(other, WeilElement):
            return self.scale(other)
        o = self._check(other)
        return WeilElement(self.algebra, self.algebra.mul_coords(self.coords, o.coords))

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        out = self.algebra.unit()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self):
        a = self.coords[0]
        if a == 0:
            raise DomainError("element with zero augmentation is not invertible")
        inv_a = 1.0 / a if self.algebra.mode == "float" else Fraction(1) / a
        q = self.nilpotent_part().scale(-inv_a)
        total = self.algebra.unit()
        term = self.algebra.unit()
        for _ in range(1, self.algebra.nilpotency_index):
            term = term * q
            total = total + term
        return total.scale(inv_a)

    def __truediv__(self, other):
        if isinstance(other, WeilElement):
            return self * self._check(other).inverse()
        if other == 0:
            raise DomainError("division by zero")
        c = self.algebra._coerce_scalar(other)
        return self.scale(1.0 / c if self.algebra.mode == "float" else Fraction(1) / c)

    def __eq__(self, other):
        if not isinstance(other, WeilElement):
            if isinstance(other, (int, Fraction, float)):
                other = self.algebra.scalar(other) if not (
                    isinstance(other, float) and self.algebra.mode == "rational") else None
                if other is None:
                    return False
            else:
                return NotImplemented
        if not other.algebra.same_presentation(self.algebra):
            return False
        if self.algebra.mode == "float" or other.algebra.mode == "float":
            return all_close(self.coords, other.coords, self.algebra.tol)
        return self.coords == other.coords

    def __str__(self):
        labels = self.algebra.basis_labels()
        parts = []
        for lab, c in zip(labels, self.coords):
            if c == 0:
                continue
            cs = _fmt(c)
            if lab == "1":
                parts.append(cs)
            elif c == 1:
                parts.append(lab)
            elif c == -1:
                parts.append(f"-{lab}")
            else:
                parts.append(f"{cs}*{lab}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def __repr__(self):
        return f"WeilElement({self})"


def _fmt(c):
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return repr(c)


def close(a, b, tol=DEFAULT_TOL):
    """Coordinate comparison: absolute ``tol`` scaled by ``max(1, |value|)``."""
    if isinstance(a, float) or isinstance(b, float):
        return abs(a - b) <= tol * max(1.0, abs(a), abs(b))
    return a == b


def all_close(xs, ys, tol=DEFAULT_TOL):
    return len(xs) == len(ys) and all(close(a, b, tol) for a, b in zip(xs, ys))


# -- tensor products -----------------------------------------------------

class TensorProduct(NamedTuple):
    algebra: WeilAlgebra
    left: "WeilMorphism"
    right: "WeilMorphism"


@lru_cache(maxsize=256)
def _tensor_algebra(w1, w2):
    n1, n2 = w1.n_gens, w2.n_gens
    n = n1 + n2
    rels = [r.substitute_shift(0, n) for r in w1.relations]
    rels += [r.substitute_shift(n1, n) for r in w2.relations]
    name = None
    if w1.name and w2.name:
        name = f"{_paren(w1.name)}⊗{_paren(w2.name)}"
    return new_weil_algebra(n, rels, name=name)


def _paren(name):
    return name if "⊗" not in name else f"({name})"


def tensor(w1, w2):
    """``W1 (x)_R W2`` with its two canonical inclusions."""
    w1, w2 = w1.rational(), w2.rational()
    t = _tensor_algebra(w1, w2)
    if t.dim != w1.dim * w2.dim:
        raise AssertionError("tensor dimension is not multiplicative")
    n1 = w1.n_gens
    left = new_morphism(w1, t, [t.gen(i) for i in range(n1)])
    right = new_morphism(w2, t, [t.gen(n1 + j) for j in range(w2.n_gens)])
    return TensorProduct(t, left, right)


def kron_positions(w1, w2):
    """``pos[i * dim(W2) + j]`` = tensor-basis index of ``b_i (x) c_j``."""
    w1, w2 = w1.rational(), w2.rational()
    if faults.active("transpose_tensor_order"):
        t = _tensor_algebra(w2, w1)
        return [t.index[c + b] for b in w1.basis for c in w2.basis]
    t = _tensor_algebra(w1, w2)
    return [t.index[b + c] for b in w1.basis for c in w2.basis]


# -- morphisms -----------------------------------------------------------

class WeilMorphism:
    """Algebra map determined by the images of the source generators."""

    def __init__(self, source, target, gen_images, matrix, name=None):
        self.source = source
        self.target = target
        self.gen_images = tuple(gen_images)
        self.matrix = matrix
        self.name = name

    def __repr__(self):
        imgs = ", ".join(str(g) for g in self.gen_images)
        return f"<WeilMorphism {self.name or ''} {self.source!r} -> {self.target!r} [{imgs}]>"

    def __eq__(self, other):
        return (isinstance(other, WeilMorphism) and self.source == other.source
                and self.target == other.target and self.matrix == other.matrix)

    __hash__ = None

    def apply(self, e):
        if not e.algebra.same_presentation(self.source):
            raise AlgebraMismatch("element does not live in the morphism's source")
        tgt = self.target.with_mode(e.algebra.mode)
        coords = e.coords
        out = []
        for row in self.matrix:
            acc = tgt._zero
            for m, c in zip(row, coords):
                if m and c:
                    acc = acc + m * c
            out.append(acc)
        if tgt.mode == "float":
            out = [float(x) for x in out]
        return WeilElement(tgt, out)

    __call__ = apply

    def __matmul__(self, other):
        return compose(self, other)


def new_morphism(source, target, gen_images, name=None):
    """Validate generator images and build the induced linear matrix."""
    source, target = source.rational(), target.rational()
    if len(gen_images) != source.n_gens:
        raise WrongVariableCount(
            f"{len(gen_images)} generator images for a source with {source.n_gens} generators"
        )
    imgs = []
    for g in gen_images:
        if isinstance(g, (str, Polynomial)):
            g = target.element(g)
        if not isinstance(g, WeilElement) or not g.algebra.same_presentation(target):
            raise AlgebraMismatch("generator image does not lie in the target algebra")
        if g.algebra.mode != "rational":
            raise ModeMismatch("morphisms are built from rational generator images")
        imgs.append(g)
    if not faults.active("skip_locality_check"):
        for i, g in enumerate(imgs):
            if g.coords[0] != 0:
                raise NotLocalMorphism(f"image of x{i} has unit coordinate {g.coords[0]}")
    one = target.unit()
    for rel, src in zip(source.relations, source.relation_sources):
        if not rel.evaluate(imgs, one=one) == target.zero():
            raise RelationNotKilled(src)
    columns = [_eval_monomial(b, imgs, one) for b in source.basis]
    matrix = [[col.coords[i] for col in columns] for i in range(target.dim)]
    return WeilMorphism(source, target, imgs, matrix, name=name)


def _eval_monomial(exps, imgs, one):
    out = one
    for g, e in zip(imgs, exps):
        if e:
            out = out * (g ** e)
    return out


def identity(w):
    w = w.rational()
    return new_morphism(w, w, w.gens(), name=f"id_{w.name or 'W'}")


R_ALGEBRA = None


def real_line():
    """The algebra ``R`` (no generators), the unit for the tensor product."""
    global R_ALGEBRA
    if R_ALGEBRA is None:
        R_ALGEBRA = new_weil_algebra(0, [], name="R")
    return R_ALGEBRA


def augmentation(w):
    w = w.rational()
    r = real_line()
    return new_morphism(w, r, [r.zero()] * w.n_gens, name=f"aug_{w.name or 'W'}")


def unit_inclusion(w):
    w = w.rational()
    return new_morphism(real_line(), w, [], name=f"unit_{w.name or 'W'}")


def compose(psi, phi):
    """``psi o phi`` (apply ``phi`` first)."""
    if not phi.target.same_presentation(psi.source):
        raise CompositionMismatch("target of the first map is not the source of the second")
    imgs = [psi.apply(g) for g in phi.gen_images]
    name = f"{psi.name}∘{phi.name}" if psi.name and phi.name else None
    return new_morphism(phi.source, psi.target, imgs, name=name)


def tensor_morphism(phi, psi):
    """``phi (x) psi`` acting blockwise on the two generator sets."""
    src = tensor(phi.source, psi.source)
    tgt = tensor(phi.target, psi.target)
    imgs = [tgt.left.apply(g) for g in phi.gen_images]
    imgs += [tgt.right.apply(g) for g in psi.gen_images]
    name = f"{phi.name}⊗{psi.name}" if phi.name and psi.name else None
    return new_morphism(src.algebra, tgt.algebra, imgs, name=name)


def kron_matrix(phi, psi):
    """Matrix of ``phi (x) psi`` assembled as a permuted Kronecker product."""
    ps = kron_positions(phi.source, psi.source)
    pt = kron_positions(phi.target, psi.target)
    dt = len(pt)
    ds = len(ps)
    out = [[Fraction(0)] * ds for _ in range(dt)]
    a, b = phi.matrix, psi.matrix
    d2s, d2t = psi.source.dim, psi.target.dim
    for i1, row1 in enumerate(a):
        for i2, row2 in enumerate(b):
            r = pt[i1 * d2t + i2]
            for j1, x in enumerate(row1):
                if not x:
                    continue
                for j2, y in enumerate(row2):
                    if y:
                        out[r][ps[j1 * d2s + j2]] += x * y
    return out


# -- presets -------------------------------------------------------------

def _all_monomials_relations(n, d):
    return [str(Polynomial.monomial(m, 1)) for m in _monomials_of_degree(n, d)]


@lru_cache(maxsize=None)
def preset(name):
    """Named algebras: ``R``, ``dual``, ``jet<k>``, ``Dn<n>``, ``W<k>,<n>``.

    ``jet<k>`` is ``R[d]/(d^(k+1))``; ``Dn<n>`` kills all degree-2 monomials in
    ``n`` variables; ``W<k>,<n>`` kills all degree ``k+1`` monomials.  Names
    joined by ``⊗`` (or ``(x)``) denote tensor products.
    """
    name = name.strip()
    for sep in ("⊗", "(x)"):
        if sep in name:
            parts = [p for p in name.split(sep)]
            out = preset(parts[0])
            for p in parts[1:]:
                out = tensor(out, preset(p)).algebra
            return _renamed(out, name.replace("(x)", "⊗"))
    if name == "R":
        return real_line()
    if name == "dual":
        return new_weil_algebra(1, ["x0^2"], name="dual")
    if name.startswith("jet") and name[3:].isdigit():
        k = int(name[3:])
        return new_weil_algebra(1, [f"x0^{k + 1}"], name=name)
    if name.startswith("Dn") and name[2:].isdigit():
        n = int(name[2:])
        if n == 0:
            return _renamed(real_line(), name)
        return new_weil_algebra(n, _all_monomials_relations(n, 2), name=name)
    if name.startswith("W") and "," in name:
        k, n = name[1:].split(",", 1)
        if k.strip().isdigit() and n.strip().isdigit():
            k, n = int(k), int(n)
            if n == 0:
                return _renamed(real_line(), name)
            return new_weil_algebra(n, _all_monomials_relations(n, k + 1), name=name)
    raise KeyError(f"unknown preset algebra {name!r}")


def _renamed(w, name):
    if w.name == name:
        return w
    out = WeilAlgebra(w.n_gens, w.relations, w.relation_sources, w.groebner, w.basis,
                      w.reduction, w.nilpotency_index, name=name)
    return out


PRESET_FAMILY = ("R", "dual", "jet2", "jet3", "Dn2", "dual⊗dual")


def preset_family():
    return [preset(n) for n in PRESET_FAMILY]


def _m(src, tgt, imgs, name):
    return new_morphism(preset(src), preset(tgt), imgs, name=name)


@lru_cache(maxsize=None)
def _preset_morphisms():
    out = []
    for n in PRESET_FAMILY:
        w = preset(n)
        out.append(identity(w))
        if n != "R":
            out.append(augmentation(w))
            out.append(unit_inclusion(w))
    out += [
        _m("jet3", "jet2", ["x0"], "trunc32"),
        _m("jet3", "dual", ["x0"], "trunc31"),
        _m("jet2", "dual", ["x0"], "trunc21"),
        _m("dual", "jet2", ["x0^2"], "square12"),
        _m("jet2", "jet3", ["x0^2"], "square23"),
        _m("dual", "Dn2", ["x0"], "in0"),
        _m("dual", "Dn2", ["x1"], "in1"),
        _m("Dn2", "dual", ["x0", "x0"], "fold"),
        _m("dual⊗dual", "Dn2", ["x0", "x1"], "restrict"),
        _m("dual⊗dual", "dual", ["x0", "x0"], "diagonal"),
        _m("dual", "dual⊗dual", ["x0"], "left"),
        _m("dual", "dual⊗dual", ["x1"], "right"),
        _m("jet2", "dual⊗dual", ["x0 + x1"], "sum"),
        _m("dual⊗dual", "dual⊗dual", ["x1", "x0"], "swap"),
    ]
    return tuple(out)


def preset_morphisms():
    """Fixed catalogue of morphisms among :data:`PRESET_FAMILY`."""
    return list(_preset_morphisms())


def composable_pairs(morphisms=None):
    """All ``(phi, psi)`` with ``target(phi) == source(psi)``."""
    ms = preset_morphisms() if morphisms is None else morphisms
    return [(phi, psi) for phi in ms for psi in ms if phi.target.same_presentation(psi.source)]


# -- presentation documents ---------------------------------------------

def to_document(w):
    doc = {
        "format_version": FORMAT_VERSION,
        "generators": w.n_gens,
        "relations": list(w.relation_sources),
    }
    if w.name:
        doc["name"] = w.name
    return doc


def from_document(doc):
    if doc.get("format_version", FORMAT_VERSION) != FORMAT_VERSION:
        raise ValueError(f"unsupported format_version {doc.get('format_version')}")
    if "generators" not in doc or "relations" not in doc:
        raise ValueError("presentation needs 'generators' and 'relations'")
    n = doc["generators"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError("'generators' must be an integer")
    rels = doc["relations"]
    if not isinstance(rels, list) or not all(isinstance(r, str) for r in rels):
        raise ValueError("'relations' must be a list of polynomial strings")
    try:
        return new_weil_algebra(n, rels, name=doc.get("name"))
    except NotPolynomial:
        raise


def dumps(w):
    return json.dumps(to_document(w), indent=2, ensure_ascii=False) + "\n"


def loads(text):
    return from_document(json.loads(text))


def load_algebra(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def save_algebra(w, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(w))
