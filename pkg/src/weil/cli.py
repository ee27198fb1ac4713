"""Command-line front end: ``weil algebra|morphism|eval|laws|limits``.

Exit codes: 0 success (all checks pass), 1 a check failed, 2 bad input.
User-defined algebras and morphisms persist in a small JSON session file
(``--session``, default ``./weil-session.json``).
"""

import argparse
import json
import os
import sys
from fractions import Fraction
from math import factorial

from . import faults
from .algebra import (
    dumps,
    from_document,
    load_algebra,
    new_morphism,
    preset,
    tensor,
    to_document,
)
from .errors import DomainError, DuplicateName, LimitNotWeil, WeilError
from .expr import SmoothMap
from .laws import SUITES, report_document, run_suite, summarize
from .lift import WeilPoint, lift_map
from .limits import (
    Chart,
    builtin_diagram,
    check_microlinear_chart,
    check_transversal,
    check_vertical_embedding,
    compute_limit,
    load_diagram,
    product_cone,
    vertical_cone,
    vertical_weil,
    zero_over_product,
)

SESSION_VERSION = 1
DEFAULT_SESSION = "weil-session.json"


class InputError(Exception):
    pass


# -- session -------------------------------------------------------------

class Session:
    """Named algebras and morphisms on top of the built-in presets."""

    def __init__(self, path=None):
        self.path = path or DEFAULT_SESSION
        self.algebras = {}
        self.morphisms = {}
        if os.path.exists(self.path):
            with open(self.path, encoding="utf-8") as fh:
                doc = json.load(fh)
            self.algebras = dict(doc.get("algebras", {}))
            self.morphisms = dict(doc.get("morphisms", {}))

    def save(self):
        doc = {"format_version": SESSION_VERSION, "algebras": self.algebras,
               "morphisms": self.morphisms}
        with open(self.path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True, ensure_ascii=False)
            fh.write("\n")

    def algebra(self, name):
        if name in self.algebras:
            w = from_document(self.algebras[name])
            w.name = name
            return w
        try:
            return preset(name)
        except KeyError:
            raise InputError(f"unknown algebra {name!r}") from None

    def _is_preset(self, name):
        try:
            preset(name)
            return True
        except (KeyError, ValueError):
            return False

    def register_algebra(self, name, w):
        if name in self.algebras or self._is_preset(name):
            raise DuplicateName(f"algebra name {name!r} is already taken")
        doc = to_document(w)
        doc["name"] = name
        self.algebras[name] = doc

    def register_morphism(self, name, source, target, images):
        if name in self.morphisms:
            raise DuplicateName(f"morphism name {name!r} is already taken")
        self.morphisms[name] = {"source": source, "target": target, "images": images}

    def morphism(self, name):
        if name not in self.morphisms:
            raise InputError(f"unknown morphism {name!r}")
        m = self.morphisms[name]
        return new_morphism(self.algebra(m["source"]), self.algebra(m["target"]),
                            list(m["images"]), name=name)


# -- output helpers ------------------------------------------------------

def _num(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    return x


def _emit(args, human, data):
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False, default=str))
    else:
        print(human)


def _algebra_info(w):
    return {
        "name": w.name,
        "generators": w.n_gens,
        "relations": list(w.relation_sources),
        "dim": w.dim,
        "basis": w.basis_labels(),
        "nilpotency_index": w.nilpotency_index,
    }


def _algebra_text(w):
    info = _algebra_info(w)
    rels = ", ".join(info["relations"]) or "(none)"
    return (f"{w.name or 'algebra'}: dim {w.dim}, basis [{', '.join(info['basis'])}], "
            f"k = {w.nilpotency_index}\n  generators {w.n_gens}, relations {rels}")


# -- commands ------------------------------------------------------------

def cmd_algebra(args, session):
    if args.action == "show":
        w = session.algebra(args.name)
        _emit(args, _algebra_text(w), _algebra_info(w))
        return 0
    if args.action == "define":
        w = load_algebra(args.file)
        name = args.name or w.name or os.path.splitext(os.path.basename(args.file))[0]
        session.register_algebra(name, w)
        session.save()
        w.name = name
        _emit(args, _algebra_text(w), _algebra_info(w))
        return 0
    if args.action == "tensor":
        rest = list(args.rest)
        if len(rest) < 2:
            raise InputError("usage: algebra tensor A B [as NAME]")
        a, b = session.algebra(rest[0]), session.algebra(rest[1])
        name = None
        if len(rest) > 2:
            if len(rest) != 4 or rest[2] != "as":
                raise InputError("usage: algebra tensor A B [as NAME]")
            name = rest[3]
        t = tensor(a, b).algebra
        if name:
            session.register_algebra(name, t)
            session.save()
            t.name = name
        _emit(args, _algebra_text(t), _algebra_info(t))
        return 0
    if args.action == "export":
        w = session.algebra(args.name)
        print(dumps(w), end="")
        return 0
    if args.action == "list":
        names = sorted(session.algebras)
        _emit(args, "\n".join(names) if names else "(no user algebras)", names)
        return 0
    raise InputError(f"unknown algebra action {args.action!r}")


def cmd_morphism(args, session):
    if args.action == "define":
        phi = new_morphism(session.algebra(args.source), session.algebra(args.target),
                           list(args.images), name=args.name)
        session.register_morphism(args.name, args.source, args.target, list(args.images))
        session.save()
    else:
        phi = session.morphism(args.name)
    data = {"name": phi.name, "source": phi.source.name, "target": phi.target.name,
            "images": [str(g) for g in phi.gen_images],
            "matrix": [[_num(x) for x in row] for row in phi.matrix]}
    rows = "\n".join("  [" + ", ".join(str(_num(x)) for x in row) + "]" for row in phi.matrix)
    _emit(args, f"{phi.name}: {phi.source.name} -> {phi.target.name}\nmatrix:\n{rows}", data)
    return 0


def _split_list(text):
    return [p.strip() for p in text.split(",") if p.strip()]


def _extract(kind, w, element, arity):
    labels = w.basis_labels()
    coef = dict(zip(w.basis, element.coords))
    if kind == "jet":
        out = {}
        for b, lab in zip(w.basis, labels):
            fac = 1
            for e in b:
                fac *= factorial(e)
            out[lab] = coef[b] * fac
        return out
    n = w.n_gens
    if kind == "gradient":
        grad = []
        for i in range(n):
            m = tuple(int(j == i) for j in range(n))
            grad.append(coef.get(m))
        return grad
    if kind == "hessian":
        if n != arity:
            raise InputError(f"hessian needs one generator per input ({arity}), algebra has {n}")
        if not any(sum(b) == 2 for b in w.basis):
            raise InputError("hessian needs an algebra with degree-2 basis monomials "
                             "(e.g. a tensor of dual numbers or W2,n); Dn algebras are first order")
        h = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                m = [0] * n
                m[i] += 1
                m[j] += 1
                m = tuple(m)
                if m in coef:
                    h[i][j] = coef[m] * (2 if i == j else 1)
        return h
    raise InputError(f"unknown extraction {kind!r}")


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_jsonable(v) for v in x]
    return _num(x)


def cmd_eval(args, session):
    w = session.algebra(args.algebra)
    points = _split_list(args.point)
    comps = _split_list(args.map)
    arity = args.arity if args.arity is not None else len(points)
    f = SmoothMap.parse(comps, arity)
    if len(points) != arity:
        raise InputError(f"point has {len(points)} entries, map takes {arity}")
    wm = w.float() if (f.has_primitives() or args.float) else w
    p = WeilPoint.of(wm, points)
    out = lift_map(f, wm, args.method)(p)
    data = {"algebra": w.name, "basis": w.basis_labels(),
            "outputs": [[_num(x) for x in e.coords] for e in out.coords_vec]}
    lines = []
    for i, e in enumerate(out.coords_vec):
        lines.append(f"f{i} = {e}    coords [{', '.join(str(_num(x)) for x in e.coords)}]")
    if args.extract:
        ext = [_extract(args.extract, wm, e, arity) for e in out.coords_vec]
        data[args.extract] = [_jsonable(x) for x in ext]
        for i, x in enumerate(ext):
            lines.append(f"{args.extract}[f{i}] = {json.dumps(_jsonable(x))}")
    _emit(args, "\n".join(lines), data)
    return 0


def cmd_laws(args, session):
    with faults.inject(*(args.inject_fault or [])):
        reports = run_suite(args.suite, seed=args.seed, trials=args.trials, n_maps=args.maps)
    ok = all(r.passed for r in reports)
    if args.report:
        text = report_document(reports)
        if args.report == "-":
            print(text, end="")
        else:
            with open(args.report, "w", encoding="utf-8") as fh:
                fh.write(text)
    if args.report != "-":
        if args.json:
            print(report_document(reports), end="")
        else:
            for kind, (good, total) in sorted(summarize(reports).items()):
                print(f"{kind:22s} {good:4d}/{total:<4d} {'pass' if good == total else 'FAIL'}")
            for r in reports:
                if not r.passed:
                    print(f"FAIL {r.law}: {json.dumps(r.counterexample, ensure_ascii=False)[:300]}")
            print(f"seed {args.seed}: {'all pass' if ok else 'failures found'}")
    return 0 if ok else 1


def _diagram(spec, session):
    if os.path.exists(spec):
        return load_diagram(spec, resolve=lambda n: session.algebra(n) if n in session.algebras else None)
    try:
        return builtin_diagram(spec)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None


def _probes(text, session):
    if not text:
        return None
    return [session.algebra(n) for n in _split_list(text)]


def _report_line(rep):
    return f"{rep.law}: {rep.status}" + (
        f" ({json.dumps(rep.counterexample, ensure_ascii=False)})" if rep.counterexample else "")


def cmd_limits(args, session):
    if args.action == "compute":
        cert = compute_limit(_diagram(args.diagram, session))
        s = cert.summary()
        legs = "\n".join(f"  leg to node {i}: images [{', '.join(str(g) for g in leg.gen_images)}]"
                         for i, leg in enumerate(cert.legs))
        human = (f"apex dim {s['apex_dim']}, generators {s['apex_generators']}, "
                 f"relations [{', '.join(s['apex_relations'])}]\n"
                 f"basis [{', '.join(cert.apex.basis_labels())}]\n{legs}\n"
                 f"limit verified: {cert.is_limit}")
        _emit(args, human, s)
        return 0 if cert.is_limit else 1
    if args.action == "microlinear":
        cert = compute_limit(_diagram(args.diagram, session))
        rep = check_microlinear_chart(Chart.parse(args.chart), cert)
        _emit(args, _report_line(rep), rep.to_dict())
        return 0 if rep.passed else 1
    if args.action == "transversal":
        cone = _cone(args.cone, session)
        rep = check_transversal(cone, _probes(args.probes, session))
        _emit(args, _report_line(rep) + "\n  " + ", ".join(rep.probes), rep.to_dict())
        return 0 if rep.passed else 1
    if args.action == "vertical":
        w = session.algebra(args.algebra)
        probes = _probes(args.probes, session)
        carrier = vertical_weil(args.base, args.fiber, w, probes)
        emb = check_vertical_embedding(args.base, args.fiber, w, probes)
        ok = carrier.transversal.passed and emb.passed
        data = {"carrier": carrier.describe(), "dim_over_base_point": carrier.dim,
                "nilpotent_dim": carrier.nilpotent_dim,
                "transversal": carrier.transversal.to_dict(), "embedding": emb.to_dict()}
        human = (f"carrier {carrier.describe()} (dimension {carrier.dim}, "
                 f"nilpotent directions {carrier.nilpotent_dim})\n"
                 f"{_report_line(carrier.transversal)}\n  {', '.join(carrier.transversal.probes)}\n"
                 f"{_report_line(emb)}")
        _emit(args, human, data)
        return 0 if ok else 1
    raise InputError(f"unknown limits action {args.action!r}")


def _cone(spec, session):
    kind, _, rest = spec.partition(":")
    try:
        if kind == "product":
            m, n = (int(x) for x in rest.split(","))
            return product_cone(m, n)
        if kind == "zero":
            return zero_over_product()
        if kind == "vertical":
            m, n, alg = rest.split(",")
            return vertical_cone(int(m), int(n), session.algebra(alg.strip()))
    except ValueError:
        pass
    raise InputError(f"unrecognised cone {spec!r}; use product:M,N, zero or vertical:M,N,ALG")


# -- parser --------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="weil", description="Weil algebras, lifts and law checks.")
    p.add_argument("--session", help=f"session file (default ./{DEFAULT_SESSION})")
    p.add_argument("--json", action="store_true", help="structured output")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("algebra", help="define, show or tensor algebras")
    asub = a.add_subparsers(dest="action", required=True)
    x = asub.add_parser("define", help="register an algebra from a presentation file")
    x.add_argument("file")
    x.add_argument("--name")
    x = asub.add_parser("show", help="basis, dimension and nilpotency index")
    x.add_argument("name")
    x = asub.add_parser("tensor", help="tensor product: A B [as NAME]")
    x.add_argument("rest", nargs="+")
    x = asub.add_parser("export", help="print a presentation document")
    x.add_argument("name")
    asub.add_parser("list", help="list user-defined algebras")

    m = sub.add_parser("morphism", help="define or show algebra morphisms")
    msub = m.add_subparsers(dest="action", required=True)
    x = msub.add_parser("define")
    x.add_argument("name")
    x.add_argument("source")
    x.add_argument("target")
    x.add_argument("images", nargs="*", help="generator images as polynomials in the target")
    x = msub.add_parser("show")
    x.add_argument("name")

    e = sub.add_parser("eval", help="evaluate the lift of a map at a Weil point")
    e.add_argument("map", help="comma-separated components, e.g. 'x0^3' or 'x0*x1, sin(x0)'")
    e.add_argument("algebra")
    e.add_argument("--point", required=True, help="comma-separated elements, e.g. '2 + x0'")
    e.add_argument("--arity", type=int)
    e.add_argument("--extract", choices=["jet", "gradient", "hessian"])
    e.add_argument("--method", choices=["taylor", "direct"], default="taylor")
    e.add_argument("--float", action="store_true", help="evaluate with float coefficients")

    l = sub.add_parser("laws", help="run the law suites over the preset family")
    l.add_argument("suite", choices=SUITES)
    l.add_argument("--seed", type=int, default=0)
    l.add_argument("--trials", type=int, default=50)
    l.add_argument("--maps", type=int, default=20)
    l.add_argument("--report", help="write the report document here ('-' for stdout)")
    l.add_argument("--inject-fault", action="append", choices=faults.KNOWN, help=argparse.SUPPRESS)

    t = sub.add_parser("limits", help="limits, microlinearity, transversality, vertical lifts")
    tsub = t.add_subparsers(dest="action", required=True)
    x = tsub.add_parser("compute")
    x.add_argument("diagram", help="built-in name (pullback-D2, equalizer-vertical) or JSON file")
    x = tsub.add_parser("microlinear")
    x.add_argument("--chart", required=True, help="R<n> or box:(a,b)x(c,d)")
    x.add_argument("--diagram", required=True)
    x = tsub.add_parser("transversal")
    x.add_argument("--cone", required=True, help="product:M,N | zero | vertical:M,N,ALG")
    x.add_argument("--probes", help="comma-separated algebra names (default: presets)")
    x = tsub.add_parser("vertical")
    x.add_argument("--base", type=int, required=True)
    x.add_argument("--fiber", type=int, required=True)
    x.add_argument("--algebra", required=True)
    x.add_argument("--probes")
    return p


COMMANDS = {"algebra": cmd_algebra, "morphism": cmd_morphism, "eval": cmd_eval,
            "laws": cmd_laws, "limits": cmd_limits}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        session = Session(args.session)
        return COMMANDS[args.command](args, session)
    except LimitNotWeil as exc:
        print(f"limit is not a Weil algebra: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2
    except WeilError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (InputError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
