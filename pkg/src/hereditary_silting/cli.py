"""``hsilt``: JSON in, JSON out.

Input documents come from ``--file`` or stdin; results go to stdout as JSON and
a one-line summary goes to stderr.  Exit codes: 0 success, 1 suite failure,
2 too many unknowns, 64 usage error, 65 invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Callable, Mapping, Sequence

from . import kronlat, kronrep, verifier
from .dercat import GradedComplex, PerfectComplex, UndualizableComplexError, plus_dual, star_dual
from .specz import Filtration, aisle_member, coaisle_member, truncate, validate_filtration
from .zatoms import UndualizableError, UnsupportedEntryError, coverage_report
from .zchains import (
    ZEpiChain, boundedness_report, build_cosilting, build_silting, filtration_of_chain, validate_chain,
)

EX_USAGE, EX_DATAERR = 64, 65
SEED_ENV = "HSILT_SEED"
FIELDS = (2, 3, 4, 5, 7)


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit 2
        raise UsageError(message)


# input --------------------------------------------------------------------------

def _load(args: argparse.Namespace) -> Any:
    try:
        if args.file and args.file != "-":
            with open(args.file, encoding="utf-8") as fh:
                return json.load(fh)
        return json.load(sys.stdin)
    except OSError as exc:
        raise InputError(f"cannot read input: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"input is not JSON: {exc}") from exc


def _need(doc: Any, key: str) -> Any:
    if not isinstance(doc, Mapping) or key not in doc:
        raise InputError(f"input needs a {key!r} field")
    return doc[key]


def parse_params(data: Any, q: int | None = None) -> Any:
    """A Z chain, a filtration, a Kronecker chain or an HRS marker."""
    try:
        return _parse_params(data, q)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise InputError(f"malformed parameters: {exc!r}") from exc


def _parse_params(data: Any, q: int | None) -> Any:
    if not isinstance(data, Mapping):
        raise InputError("parameters must be a JSON object")
    if "hrs" in data:
        return kronlat.HRS(int(data["hrs"]), int(data.get("q", q or 2)))
    if "jumps" in data:
        c = kronlat.KronChain.from_json(data)
        rep = kronlat.validate_kron_chain(c)
        if not rep["valid"]:
            raise InputError("; ".join(rep["problems"]))
        return c
    if "chain" in data:
        return ZEpiChain.from_json(data)
    if "low" in data or "steps" in data:
        f = Filtration.from_json(data)
        problems = validate_filtration(f)
        if problems:
            raise InputError(f"not a filtration: {problems}")
        return f
    raise InputError("unrecognised parameters: expected a chain, filtration or HRS marker")


def _rep(data: Any, q: int) -> kronrep.KronRep:
    if isinstance(data, Mapping) and "label" in data:
        return kronrep.Label.from_json(data, q).module(q)
    return kronrep.KronRep.from_json(data)


def _complex(data: Any) -> GradedComplex:
    return GradedComplex.from_json(data)


# commands -----------------------------------------------------------------------

def _z_chain(args: argparse.Namespace) -> ZEpiChain:
    c = parse_params(_load(args))
    if not isinstance(c, ZEpiChain):
        raise InputError("expected a chain over Z")
    return c


def cmd_chain(args: argparse.Namespace) -> tuple[Any, str, int]:
    c = _z_chain(args)
    report = validate_chain(c)
    if args.action == "validate":
        return report, f"chain {c}: {'valid' if report['valid'] else 'invalid'}", 0 if report["valid"] else EX_DATAERR
    if not report["valid"]:
        raise InputError(f"invalid chain: {report}")
    if args.action == "build-silting":
        t = build_silting(c)
        return t.to_json(), f"T = {t}", 0
    if args.action == "build-cosilting":
        x = build_cosilting(c)
        return x.to_json(), f"C = {x}", 0
    f = filtration_of_chain(c)
    return {"filtration": f.to_json(), "boundedness": boundedness_report(c)}, f"Phi = {f}", 0


def cmd_tstructure(args: argparse.Namespace) -> tuple[Any, str, int]:
    doc = _load(args)
    params = parse_params(_need(doc, "params"), args.q)
    kron = isinstance(params, (kronlat.KronChain, kronlat.HRS))
    if args.action == "member":
        x = _complex(_need(doc, "x"))
        if kron:
            v = kronlat.tstructure_member_kron(x, params)
            return {"coaisle": v}, f"coaisle member: {_tri(v)}", 0
        f = filtration_of_chain(params) if isinstance(params, ZEpiChain) else params
        out = {"aisle": aisle_member(x, f), "coaisle": coaisle_member(x, f)}
        return out, f"aisle {out['aisle']}, coaisle {out['coaisle']}", 0
    if args.action == "truncate":
        if kron:
            raise InputError("truncation triangles are computed over Z only")
        f = filtration_of_chain(params) if isinstance(params, ZEpiChain) else params
        tri = truncate(_complex(_need(doc, "x")), f)
        return tri.to_json(), f"u = {tri.u}; v = {tri.v}", 0
    # check
    seed = _seed(args)
    if "corpus" in doc:
        corpus = [_complex(x) for x in doc["corpus"]]
    elif kron:
        corpus = list(verifier.kron_corpus(params.q).items)
    else:
        corpus = list(verifier.z_corpus(seed, args.n).items)
    if kron:
        rep = verifier.check_cosilting(kronlat.build_kron_cosilting(params), params, corpus, _window(args))
    elif isinstance(params, ZEpiChain):
        rep = verifier.check_ttriple(params, corpus, _window(args) or verifier.DEFAULT_WINDOW)
        verifier._absorb(rep, verifier.check_cosilting(build_cosilting(params), params, corpus, _window(args)),
                         "cosilting")
    else:
        rep = verifier.check_ttriple(params, corpus, _window(args) or verifier.DEFAULT_WINDOW)
    return rep.to_json(args.full), rep.summary(), rep.exit_code


def _tri(v: bool | None) -> str:
    return "unknown" if v is None else str(v).lower()


def cmd_kron(args: argparse.Namespace) -> tuple[Any, str, int]:
    q = args.q
    a = args.action
    if a == "quasisimples":
        pts = kronrep.quasi_simples(q)
        out = [{"point": x.to_json(q), "name": x.label(q),
                "module": kronrep.R(x).module(q).to_json()} for x in pts]
        return out, f"{len(pts)} quasi-simple regular modules over F_{q}", 0
    if a == "enumerate-compact-silting":
        found = kronlat.enumerate_compact_silting(args.index_bound, args.length_bound, q)
        out = [{"chain": c.to_json(), "silting": t.to_json()} for c, t in found]
        return out, f"{len(found)} compact silting complexes", 0
    doc = _load(args)
    if a == "build":
        p = parse_params(doc.get("params", doc) if isinstance(doc, Mapping) else doc, q)
        if not isinstance(p, (kronlat.KronChain, kronlat.HRS)):
            raise InputError("expected Kronecker parameters (jumps or hrs)")
        t, c = kronlat.build_kron_silting(p), kronlat.build_kron_cosilting(p)
        return {"silting": t.to_json(), "cosilting": c.to_json()}, f"T = {t}; C = {c}", 0
    m = _rep(_need(doc, "m"), q)
    if a in ("hom", "ext"):
        n = _rep(_need(doc, "n"), q)
        d = kronrep.hom_dim(m, n) if a == "hom" else kronrep.ext1_dim(m, n)
        return {"functor": a, "dim": d}, f"dim {a} = {d}", 0
    if a == "tau":
        t = kronrep.ar_translate_inverse(m) if args.inverse else kronrep.ar_translate(m)
        return t.to_json(), f"{'tau^-1' if args.inverse else 'tau'} has dimension vector {t.dim}", 0
    summands = kronrep.classify(m)
    out = [{"summand": lab.to_json(m.q), "name": lab.name(m.q), "multiplicity": mu, "class": cls}
           for lab, mu, cls in summands]
    return out, " + ".join(f"{s['multiplicity']}x{s['name']}" for s in out) or "0", 0


def cmd_dualize(args: argparse.Namespace) -> tuple[Any, str, int]:
    doc = _load(args)
    if args.star or (isinstance(doc, Mapping) and "ranks" in doc):
        d = star_dual(PerfectComplex.from_json(doc))
        return d.to_json(), "applied * to a perfect complex", 0
    x = _complex(doc)
    try:
        d = plus_dual(x)
    except (UndualizableComplexError, UndualizableError) as exc:
        raise InputError(str(exc)) from exc
    return d.to_json(), f"{x} -> {d}", 0


def cmd_verify(args: argparse.Namespace) -> tuple[Any, str, int]:
    fn = verifier.SUITES[args.suite]
    kw: dict[str, Any] = {}
    if args.suite in verifier.SEEDED:
        kw["seed"] = _seed(args)
    if args.window is not None and args.suite in ("orthogonality", "silting"):
        kw["window"] = _window(args)
    rep = fn(**kw)
    return rep.to_json(args.full), rep.summary(), rep.exit_code


def cmd_report(args: argparse.Namespace) -> tuple[Any, str, int]:
    z = coverage_report()
    k = kronrep.kron_coverage_report(args.q)
    n_unknown = len(z.get("unknown", [])) + len(k.get("unknown", []))
    return {"Z": z, "kronecker": k}, f"{n_unknown} permitted-unknown pairs", 0


def _window(args: argparse.Namespace) -> int | None:
    if args.window is None:
        return verifier.DEFAULT_WINDOW
    if args.window < 0:
        raise UsageError("--window must be >= 0")
    return args.window or None


def _seed(args: argparse.Namespace) -> int:
    if args.seed is not None:
        return args.seed
    raw = os.environ.get(SEED_ENV, "7")
    try:
        return int(raw)
    except ValueError as exc:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from exc


# parser -------------------------------------------------------------------------

def _field(s: str) -> int:
    q = int(s)
    if q not in FIELDS:
        raise argparse.ArgumentTypeError(f"q must be one of {FIELDS}")
    return q


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--file", "-f", help="input JSON (default: stdin)")
    common.add_argument("--q", type=_field, default=2, help="field size for the Kronecker algebra")
    common.add_argument("--seed", type=int, default=None, help=f"corpus seed (default ${SEED_ENV} or 7)")
    common.add_argument("--window", type=int, default=None,
                        help="Hom window [1, W]; 0 stretches it to the degree spread")
    common.add_argument("--full", action="store_true", help="include every item in reports")
    common.add_argument("--compact", action="store_true", help="single-line JSON")

    p = _Parser(prog="hsilt", description="Silting and cosilting objects over Z and the Kronecker algebra.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("chain", parents=[common], help="chains of epimorphisms over Z")
    c.add_argument("action", choices=["validate", "build-silting", "build-cosilting", "to-filtration"])
    c.set_defaults(run=cmd_chain)

    t = sub.add_parser("tstructure", parents=[common], help="t-structures from parameters")
    t.add_argument("action", choices=["member", "truncate", "check"])
    t.add_argument("--n", type=int, default=100, help="size of the seeded corpus for check")
    t.set_defaults(run=cmd_tstructure)

    k = sub.add_parser("kron", parents=[common], help="Kronecker modules and silting complexes")
    k.add_argument("action", choices=["quasisimples", "hom", "ext", "tau", "classify",
                                      "enumerate-compact-silting", "build"])
    k.add_argument("--inverse", action="store_true", help="tau^-1 instead of tau")
    k.add_argument("--index-bound", type=int, default=3)
    k.add_argument("--length-bound", type=int, default=4)
    k.set_defaults(run=cmd_kron)

    d = sub.add_parser("dualize", parents=[common], help="character dual of a complex, or * of a perfect one")
    d.add_argument("--star", action="store_true")
    d.set_defaults(run=cmd_dualize)

    v = sub.add_parser("verify", parents=[common], help="run a verifier suite")
    v.add_argument("suite", choices=sorted(verifier.SUITES))
    v.set_defaults(run=cmd_verify)

    r = sub.add_parser("report", parents=[common], help="coverage of the Hom/Ext verdict tables")
    r.add_argument("what", choices=["coverage"])
    r.set_defaults(run=cmd_report)
    return p


def run(argv: Sequence[str] | None = None, out: Callable[[str], Any] | None = None,
        err: Callable[[str], Any] | None = None) -> int:
    out = out or (lambda s: sys.stdout.write(s))
    err = err or (lambda s: sys.stderr.write(s))
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        err(f"hsilt: usage error: {exc}\n")
        return EX_USAGE
    try:
        payload, summary, code = args.run(args)
    except UsageError as exc:
        err(f"hsilt: usage error: {exc}\n")
        return EX_USAGE
    except (InputError, UnsupportedEntryError, kronrep.KronError, ValueError, KeyError, TypeError) as exc:
        err(f"hsilt: invalid input: {exc}\n")
        return EX_DATAERR
    indent = None if args.compact else 2
    out(json.dumps(payload, indent=indent, sort_keys=True) + "\n")
    err(summary + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
