"""Command-line front end: ``hypercert construct | check | certify | matrix``.

Every command prints one JSON report on stdout. Exit status is 0 for a passing
verdict, 1 for a failing one (falsified, outside, invalid) and 2 for usage or
input errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import __version__
from .certificates import (
    GramCertificate,
    SeparationCertificate,
    icosahedral_obstruction,
    sos_recovery_check,
    vamos_certificate,
    verify_gram,
    verify_separation,
)
from .constructions import (
    det_symmetric,
    graph_cubic,
    linear_forms,
    nesterov_maximizer,
    singular_cubic,
    std_cubic,
    vamos_family,
    vamos_specialized,
    degree_lift,
    variable_lift,
)
from .errors import HypercertError, NotHyperbolicError
from .graphs import Graph, icosahedral_graph
from .hyperbolic import (
    HyperbolicContext,
    check_interlaces,
    cone_membership,
    hermite_at,
    bezoutian_at,
    hyperbolic_eigenvalues,
    hyperbolicity_test,
    parameterized_bezoutian,
    parameterized_congruence,
    parameterized_hermite,
    phi_functional,
)
from .linalg import QMatrix
from .poly import MvPoly, as_fraction
from .sampling import resolve_seed

SCHEMA = "hypercert-report/1"
POLY_FORMAT = "hypercert-poly"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- file formats -------------------------------------------------------------------

class PolyFile:
    """A polynomial plus optional metadata (direction, variable names, identity point)."""

    def __init__(self, poly: MvPoly, e=None, names=None, meta=None):
        self.poly = poly
        self.e = e
        self.names = list(names) if names else [f"x{i}" for i in range(poly.nvars)]
        self.meta = dict(meta or {})

    def to_json(self) -> dict:
        out = {"format": POLY_FORMAT, "version": 1, "poly": self.poly.to_json(), "names": self.names}
        if self.e is not None:
            out["e"] = [str(v) for v in self.e]
        if self.meta:
            out["meta"] = self.meta
        return out

    @classmethod
    def load(cls, path: str) -> "PolyFile":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read polynomial file {path}: {exc}") from exc
        if "poly" in data:
            poly = MvPoly.from_json(data["poly"])
            e = [as_fraction(v) for v in data["e"]] if data.get("e") else None
            return cls(poly, e, data.get("names"), data.get("meta"))
        return cls(MvPoly.from_json(data))


def parse_vector(text: str, n: int, pf: PolyFile | None = None) -> tuple[Fraction, ...]:
    """``e3`` (unit vector), ``I`` (identity of a determinant file), or ``1,1/2,-3``."""
    text = text.strip()
    if text == "I":
        ident = (pf.meta.get("identity") if pf else None)
        if ident is None:
            raise UsageError("'I' is only defined for determinant polynomial files")
        return tuple(as_fraction(v) for v in ident)
    if text.startswith("e") and text[1:].isdigit():
        k = int(text[1:])
        if k >= n:
            raise UsageError(f"{text} is out of range for {n} variables")
        return tuple(Fraction(int(i == k)) for i in range(n))
    try:
        vec = tuple(as_fraction(v) for v in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad vector {text!r}") from exc
    if len(vec) != n:
        raise UsageError(f"vector {text!r} has {len(vec)} entries, expected {n}")
    return vec


def parse_assignments(items: Sequence[str], names: Sequence[str]) -> dict[int, Fraction]:
    out = {}
    for item in items:
        for part in item.split(","):
            if "=" not in part:
                raise UsageError(f"bad assignment {part!r}; use name=value")
            name, val = part.split("=", 1)
            name = name.strip()
            if name not in names:
                raise UsageError(f"unknown variable {name!r}")
            out[list(names).index(name)] = as_fraction(val)
    return out


def load_graph(spec: str) -> Graph:
    builtin = {
        "icosahedron": icosahedral_graph,
        "triangle": lambda: Graph.complete(3),
        "edge": lambda: Graph.complete(2),
    }
    if spec in builtin:
        return builtin[spec]()
    if spec.startswith("K") and spec[1:].isdigit():
        return Graph.complete(int(spec[1:]))
    path = Path(spec)
    try:
        text = path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read graph {spec}: {exc}") from exc
    if text.lstrip().startswith("{"):
        return Graph.from_json(text)
    return Graph.from_edge_text(text)


def _ctx(pf: PolyFile, e_text: str | None) -> HyperbolicContext:
    if e_text is not None:
        e = parse_vector(e_text, pf.poly.nvars, pf)
    elif pf.e is not None:
        e = pf.e
    else:
        raise UsageError("no direction: pass --e or use a file that records one")
    return HyperbolicContext.create(pf.poly, e)


def _vec_json(v) -> list[str]:
    return [str(x) for x in v]


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True, default=str).encode()).hexdigest()[:16]


def _file_digest(paths: Sequence[str]) -> dict:
    out = {}
    for p in paths:
        try:
            out[p] = hashlib.sha256(Path(p).read_bytes()).hexdigest()[:16]
        except OSError:
            out[p] = None
    return out


# -- commands -----------------------------------------------------------------------

def cmd_construct(args) -> tuple[str, dict, list[str]]:
    kind = args.kind
    rest = args.params
    meta: dict = {"construction": kind}
    if kind == "vamos":
        pf = PolyFile(vamos_specialized(), (1, 1, 1, 1), ["x1", "x2", "x3", "x4"], meta)
    elif kind == "vamos-family":
        if len(rest) != 2:
            raise UsageError("usage: construct vamos-family N D")
        ctx = vamos_family(int(rest[0]), int(rest[1]))
        pf = PolyFile(ctx.p, ctx.e, [f"x{i + 1}" for i in range(ctx.nvars)], meta)
    elif kind == "graph":
        if len(rest) != 1:
            raise UsageError("usage: construct graph NAME|FILE")
        g = load_graph(rest[0])
        text = g.to_edge_text()
        _write(args.output, text)
        return "ok", {"graph": g.to_json()}, [args.output] if args.output else []
    elif kind == "graph-cubic":
        if len(rest) != 2:
            raise UsageError("usage: construct graph-cubic GRAPH K [--normalized]")
        g = load_graph(rest[0])
        lc = graph_cubic(g, as_fraction(rest[1]), normalized=args.normalized)
        meta.update({"k": str(lc.k), "normalized": lc.normalized, "graph": g.to_json()})
        pf = PolyFile(lc.poly, lc.e, lc.names, meta)
    elif kind == "std-cubic":
        if len(rest) != 1:
            raise UsageError("usage: construct std-cubic QFILE")
        q = PolyFile.load(rest[0]).poly
        p = std_cubic(q)
        pf = PolyFile(p, tuple(Fraction(int(i == 0)) for i in range(p.nvars)),
                      [f"x{i}" for i in range(p.nvars)], meta)
    elif kind == "det":
        if len(rest) != 1:
            raise UsageError("usage: construct det D")
        sp = det_symmetric(int(rest[0]))
        meta.update({"size": int(rest[0]), "identity": _vec_json(sp.ctx.e)})
        pf = PolyFile(sp.ctx.p, sp.ctx.e, sp.names, meta)
    elif kind == "singular-cubic":
        sp = singular_cubic()
        meta["pencil"] = [[_vec_json(r) for r in a.data] for a in sp.pencil]
        pf = PolyFile(sp.ctx.p, sp.ctx.e, ["x1", "x2", "x3"], meta)
    elif kind == "linear-forms":
        if len(rest) != 2:
            raise UsageError("usage: construct linear-forms 'a1;a2;...' E")
        forms = [[as_fraction(v) for v in f.split(",")] for f in rest[0].split(";")]
        e = [as_fraction(v) for v in rest[1].split(",")]
        sp = linear_forms(forms, e)
        meta["forms"] = [_vec_json(f) for f in sp.forms]
        pf = PolyFile(sp.ctx.p, sp.ctx.e, None, meta)
    elif kind == "lift-degree":
        if len(rest) != 1 or args.ell is None or args.u is None:
            raise UsageError("usage: construct lift-degree POLYFILE --ell V --u V --k K [--e V]")
        base = PolyFile.load(rest[0])
        ctx = _ctx(base, args.e)
        ell = MvPoly.linear(parse_vector(args.ell, ctx.nvars, base))
        p = degree_lift(ctx, parse_vector(args.u, ctx.nvars, base), ell, args.k)
        pf = PolyFile(p, ctx.e, base.names, meta)
    elif kind == "lift-variable":
        if len(rest) != 1 or args.q is None or args.e_prime is None:
            raise UsageError("usage: construct lift-variable POLYFILE --q V --e-prime V [--e V]")
        base = PolyFile.load(rest[0])
        ctx = _ctx(base, args.e)
        qv = [as_fraction(v) for v in args.q.split(",")]
        ep = [as_fraction(v) for v in args.e_prime.split(",")]
        p = variable_lift(ctx, MvPoly.linear(qv), ep)
        names = list(base.names) + [f"x{ctx.nvars + i + 1}" for i in range(len(qv))]
        pf = PolyFile(p, tuple(ctx.e) + (Fraction(0),) * len(qv), names, meta)
    else:
        raise UsageError(f"unknown construction {kind!r}")
    _write(args.output, json.dumps(pf.to_json(), indent=1) + "\n")
    result = {"nvars": pf.poly.nvars, "degree": pf.poly.degree(), "terms": len(pf.poly)}
    if pf.e is not None:
        result["e"] = _vec_json(pf.e)
    if args.output is None:
        result["polynomial"] = pf.to_json()
    return "ok", result, [args.output] if args.output else []


def _write(path: str | None, text: str):
    if path:
        Path(path).write_text(text)


def cmd_check(args) -> tuple[str, dict, list[str]]:
    pf = PolyFile.load(args.poly)
    ctx = _ctx(pf, args.e)
    artifacts = []
    if args.kind == "hyperbolic":
        rep = hyperbolicity_test(ctx, trials=args.trials, seed=args.seed, complement=args.complement,
                                 jobs=args.jobs, points=_probe_points(pf))
        if args.log:
            _write(args.log, rep.json_lines() + "\n")
            artifacts.append(args.log)
        return rep.verdict, rep.to_json(), artifacts
    if args.kind == "member":
        if args.u is None:
            raise UsageError("check member needs --u")
        m = cone_membership(ctx, parse_vector(args.u, ctx.nvars, pf))
        return m.status, m.to_json(), artifacts
    if args.kind == "eigenvalues":
        if args.x is None:
            raise UsageError("check eigenvalues needs --x")
        x = parse_vector(args.x, ctx.nvars, pf)
        try:
            iso = hyperbolic_eigenvalues(ctx, x, as_fraction(args.width))
        except NotHyperbolicError as exc:
            return "falsified", {"reason": str(exc), "witness": _vec_json(exc.witness)}, artifacts
        return "real_rooted", {"x": _vec_json(x), "intervals": iso.to_json(),
                               "approx": [float(v) for v in iso.midpoints()]}, artifacts
    if args.kind == "interlace":
        if args.q is None:
            raise UsageError("check interlace needs --q QFILE")
        q = PolyFile.load(args.q).poly
        rep = check_interlaces(ctx, q, samples=args.trials, width=as_fraction(args.width), seed=args.seed)
        return rep.to_json()["verdict"], rep.to_json(), artifacts
    raise UsageError(f"unknown check {args.kind!r}")


def _probe_points(pf: PolyFile) -> list:
    """Graph cubics are also probed at the Nesterov maximizer of their graph."""
    if pf.meta.get("construction") != "graph-cubic":
        return []
    g = Graph.from_json(pf.meta["graph"])
    if not g.edges:
        return []
    return [nesterov_maximizer(g).line_point()]


def cmd_certify(args) -> tuple[str, dict, list[str]]:
    kind = args.kind
    if kind == "vamos-not-sos":
        rep = vamos_certificate()
        return ("not_sos" if rep.ok else "failed"), rep.to_json(), []
    if kind == "icosa-not-sos":
        rep = icosahedral_obstruction()
        return ("obstruction" if rep.ok else "failed"), rep.to_json(), []
    if args.file is None:
        raise UsageError(f"certify {kind} needs a certificate file")
    try:
        data = json.loads(Path(args.file).read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read certificate {args.file}: {exc}") from exc
    if kind == "gram":
        v = verify_gram(GramCertificate.from_json(data))
        return v.status, v.to_json(), []
    if kind == "separation":
        v = verify_separation(SeparationCertificate.from_json(data))
        return v.status, v.to_json(), []
    if kind == "sos-recovery":
        q = QMatrix([[as_fraction(x) for x in r] for r in data["gram"]])
        v = sos_recovery_check(q, int(data["d"]), int(data["m"]))
        return v.status, v.to_json(), []
    raise UsageError(f"unknown certificate kind {kind!r}")


def cmd_matrix(args) -> tuple[str, dict, list[str]]:
    pf = PolyFile.load(args.poly)
    ctx = _ctx(pf, args.e)
    artifacts = [args.output] if args.output else []
    if args.kind == "phi":
        if args.x is None or args.y is None:
            raise UsageError("matrix phi needs --x and --y")
        x = parse_vector(args.x, ctx.nvars, pf)
        y = [as_fraction(v) for v in args.y.split(",")]
        xi = phi_functional(ctx, x, y)
        _write(args.output, json.dumps({"functional": _vec_json(xi)}) + "\n")
        return "ok", {"functional": _vec_json(xi)}, artifacts
    u = parse_vector(args.u, ctx.nvars, pf) if args.u else ctx.e
    if args.x is not None:
        x = parse_vector(args.x, ctx.nvars, pf)
        if args.kind == "bezout":
            m = bezoutian_at(ctx, x, u)
        elif args.kind == "hermite":
            m = hermite_at(ctx, x, u)
        else:
            raise UsageError("congruence is only available symbolically")
        text = m.to_csv() if args.format == "csv" else json.dumps(m.to_json()) + "\n"
        _write(args.output, text)
        return "ok", {"matrix": m.to_json()}, artifacts
    builders = {
        "bezout": lambda: parameterized_bezoutian(ctx, u),
        "hermite": lambda: parameterized_hermite(ctx, u),
        "congruence": lambda: parameterized_congruence(ctx),
    }
    pm = builders[args.kind]()
    if args.at:
        pm = pm.substitute(parse_assignments(args.at, pf.names))
    if args.format == "csv":
        raise UsageError("csv output needs a concrete --x")
    out = pm.to_json()
    out["names"] = pf.names
    out["display"] = [[v.format(pf.names) for v in row] for row in pm.entries]
    _write(args.output, json.dumps(out) + "\n")
    return "ok", out, artifacts


RANDOMIZED = {"hyperbolic", "interlace"}

PASS = {"ok", "passed", "inside", "boundary", "real_rooted", "consistent", "valid_sos",
        "not_sos", "obstruction", "identity_holds"}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hypercert", description="Exact tools for hyperbolic polynomials.")
    ap.add_argument("--version", action="version", version=f"hypercert {__version__}")
    ap.add_argument("--no-timings", action="store_true", help="omit wall-clock timings from the report")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a polynomial file")
    c.add_argument("kind", choices=["vamos", "vamos-family", "graph", "graph-cubic", "std-cubic", "det",
                                    "singular-cubic", "linear-forms", "lift-degree", "lift-variable"])
    c.add_argument("params", nargs="*")
    c.add_argument("--normalized", action="store_true")
    c.add_argument("--e")
    c.add_argument("--u")
    c.add_argument("--ell")
    c.add_argument("--k", type=int, default=1)
    c.add_argument("--q")
    c.add_argument("--e-prime", dest="e_prime")
    c.add_argument("-o", "--output")

    k = sub.add_parser("check", help="hyperbolicity, membership, eigenvalues, interlacing")
    k.add_argument("kind", choices=["hyperbolic", "member", "eigenvalues", "interlace"])
    k.add_argument("poly")
    k.add_argument("--e")
    k.add_argument("--u")
    k.add_argument("--x")
    k.add_argument("--q")
    k.add_argument("--trials", type=int, default=200)
    k.add_argument("--seed", type=int)
    k.add_argument("--jobs", type=int, default=1)
    k.add_argument("--complement", action="store_true", help="sample x in a hyperplane missing e")
    k.add_argument("--width", default="1/1000000000")
    k.add_argument("--log", help="write one JSON line per trial")

    f = sub.add_parser("certify", help="verify certificates")
    f.add_argument("kind", choices=["vamos-not-sos", "icosa-not-sos", "gram", "separation", "sos-recovery"])
    f.add_argument("file", nargs="?")

    m = sub.add_parser("matrix", help="Bezoutian, Hermite, congruence or phi")
    m.add_argument("kind", choices=["bezout", "hermite", "congruence", "phi"])
    m.add_argument("poly")
    m.add_argument("--e")
    m.add_argument("--u")
    m.add_argument("--x")
    m.add_argument("--y")
    m.add_argument("--at", action="append", default=[], help="substitute name=value (repeatable)")
    m.add_argument("--symbolic", action="store_true", help="keep x symbolic (the default without --x)")
    m.add_argument("--format", choices=["json", "csv"], default="json")
    m.add_argument("-o", "--output")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "check" and args.kind in RANDOMIZED:
        args.seed = resolve_seed(args.seed)
    elif hasattr(args, "seed"):
        args.seed = None
    handlers = {"construct": cmd_construct, "check": cmd_check, "certify": cmd_certify, "matrix": cmd_matrix}
    start = time.perf_counter()
    try:
        verdict, result, artifacts = handlers[args.command](args)
    except (UsageError, HypercertError, ValueError, KeyError) as exc:
        print(json.dumps({"schema": SCHEMA, "command": args.command, "error": str(exc)}), file=sys.stderr)
        return EXIT_USAGE
    elapsed = time.perf_counter() - start
    inputs = {k: v for k, v in sorted(vars(args).items()) if k not in ("output", "log")}
    paths = [p for p in (getattr(args, "poly", None), getattr(args, "file", None), getattr(args, "q", None))
             if p and Path(p).is_file()]
    report = {
        "schema": SCHEMA,
        "command": f"{args.command} {getattr(args, 'kind', '')}".strip(),
        "inputs_digest": _digest({"args": inputs, "files": _file_digest(paths)}),
        "seed": getattr(args, "seed", None),
        "verdict": verdict,
        "witnesses": _witnesses(result),
        "artifacts": artifacts,
        "result": result,
    }
    if not args.no_timings:
        report["timings"] = {"total_s": round(elapsed, 6)}
    print(json.dumps(report, indent=1, sort_keys=True))
    return EXIT_OK if verdict in PASS else EXIT_FAIL


def _witnesses(result: dict) -> list:
    out = []
    for key in ("witness", "x"):
        if result.get(key) is not None and key in result:
            out.append({key: result[key]})
            break
    return out


if __name__ == "__main__":
    sys.exit(main())
