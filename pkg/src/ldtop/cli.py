"""Command-line front end: ``ldtop <command> ...``.

Inputs are fixture names (see ``ldtop fixtures``) or files in the text
formats of :mod:`ldtop.textio` and :mod:`ldtop.connectedness`.  Results are
printed as JSON (default) or text.  Exit codes: 0 verdict computed, 2 parse
error, 3 violated precondition, 4 budget exhausted.

Budgets default to 10^4 live cosets, 16 stages and grammar bound 3; the
environment variables ``LDTOP_COSETS``, ``LDTOP_STAGES`` and ``LDTOP_GRAMMAR``
override the defaults, explicit flags override both.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import fixtures
from .complex import Exhaustion, FiniteComplex, euler_characteristic, glue_complexes
from .connectedness import (SCHEMAS, NotDefinable, Schema, definability_of_union, ld_connected,
                            op_connected, witness_search)
from .covering import deck_count, finite_cover, lazy_cover, verify_covering, verify_subgroup_image
from .errors import LdtopError, ParseError
from .fundamental import (EQUIVALENCE, edge_path_presentation, hurewicz_h1_check,
                          pi1_is_trivial, pi2_via_hurewicz, whitehead_check)
from .groups import simplify
from .homology import colimit_homology, homology_basis, long_exact_sequence
from .textio import read_complex_text, read_glue_text, write_complex_text

DEFAULTS = {"cosets": 10_000, "stages": 16, "grammar": 3}
ENV = {"cosets": "LDTOP_COSETS", "stages": "LDTOP_STAGES", "grammar": "LDTOP_GRAMMAR"}


def budget(name: str, flag: int | None) -> int:
    if flag is not None:
        return flag
    raw = os.environ.get(ENV[name])
    if raw is None:
        return DEFAULTS[name]
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"{ENV[name]} must be an integer, got {raw!r}") from None


def load_input(ref: str) -> tuple[object, str]:
    """A fixture by name or a file; returns the object and the text hashed
    into the report digest."""
    if ref in fixtures.COMPLEXES:
        return fixtures.COMPLEXES[ref](), f"fixture:{ref}"
    if ref in fixtures.EXHAUSTIONS:
        return fixtures.EXHAUSTIONS[ref](), f"fixture:{ref}"
    path = Path(ref)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"no fixture or readable file named {ref!r}") from exc
    return read_complex_text(text), text


def load_complex(ref: str) -> tuple[FiniteComplex, str]:
    obj, text = load_input(ref)
    if isinstance(obj, Exhaustion):
        return obj.last, text
    return obj, text


def load_schema(ref: str):
    if ref in SCHEMAS:
        return SCHEMAS[ref](), f"fixture:{ref}"
    try:
        text = Path(ref).read_text()
    except OSError as exc:
        raise ParseError(f"no schema fixture or readable file named {ref!r}") from exc
    return Schema.from_text(text), text


class RunReport:
    def __init__(self, command: str, digest_parts: list[str]):
        self.command = command
        h = hashlib.sha256()
        for part in digest_parts:
            h.update(part.encode())
            h.update(b"\0")
        self.digest = h.hexdigest()
        self.results: dict = {}
        self.verdicts: dict = {}
        self.text: list[str] = []
        self.started = time.perf_counter()

    def to_json(self, timing: bool) -> dict:
        out = {"command": self.command, "inputs": self.digest,
               "results": self.results, "verdicts": self.verdicts}
        if timing:
            out["timing_s"] = round(time.perf_counter() - self.started, 6)
        return out


def _base_vertex(K: FiniteComplex, flag: int | None) -> int:
    if flag is not None:
        return flag
    if not K.vertices:
        raise LdtopError("empty complex has no base vertex")
    return min(K.vertices)


# subcommands --------------------------------------------------------------------------

def cmd_homology(args, rep: RunReport) -> None:
    obj, _ = load_input(args.input)
    if args.colimit:
        if not isinstance(obj, Exhaustion):
            raise LdtopError("--colimit needs an exhaustion")
        k = budget("stages", args.stages)
        ch = colimit_homology(obj, args.dim, min(k, _available(obj, k)) - 1)
        rep.results = ch.to_json()
        rep.verdicts = {"stable": ch.stable}
        rep.text.append(f"H_{args.dim} colimit = {ch.group}  (stable: {ch.stable})")
        rep.text += [f"  stage {i}: {g}" for i, g in enumerate(ch.stage_groups)]
        return
    K = obj.last if isinstance(obj, Exhaustion) else obj
    A = load_complex(args.relative)[0] if args.relative else FiniteComplex(frozenset())
    dims = [args.dim] if args.dim is not None else list(range(max(K.dim, 0) + 1))
    out = {}
    for n in dims:
        hb = homology_basis(K, n, A)
        out[str(n)] = hb.to_json()
        rep.text.append(f"H_{n} = {hb.group}")
    rep.results = out[str(args.dim)] if args.dim is not None else out
    if args.relative:
        les = long_exact_sequence(K, A)
        rep.verdicts = {"exact": les.exact}


def _available(X: Exhaustion, k: int) -> int:
    if X.extendable:
        return k
    return len(X)


def cmd_pi1(args, rep: RunReport) -> None:
    K, _ = load_complex(args.input)
    v0 = _base_vertex(K, args.base)
    P, _ = edge_path_presentation(K, v0)
    Q = simplify(P)
    trivial = pi1_is_trivial(K, v0, budget("cosets", args.cosets))
    rep.results = {"presentation": P.to_text(), "simplified": Q.to_text(),
                   "generators": P.ngens, "relators": len(P.relators)}
    rep.verdicts = {"trivial": trivial}
    rep.text += [P.to_text().rstrip(), f"simplified:\n{Q.to_text().rstrip()}", f"trivial: {trivial}"]


def cmd_hurewicz(args, rep: RunReport) -> None:
    K, _ = load_complex(args.input)
    v0 = _base_vertex(K, args.base)
    chk = hurewicz_h1_check(K, v0)
    pi2 = pi2_via_hurewicz(K, v0, budget("cosets", args.cosets))
    rep.results = {"pi1_ab": chk.pi1_ab.to_json(), "h1": chk.h1.to_json(),
                   "pi2": pi2 if isinstance(pi2, str) else pi2.to_json()}
    rep.verdicts = {"h1_agrees": chk.agree}
    rep.text += [f"pi1^ab = {chk.pi1_ab}", f"H_1 = {chk.h1}", f"agree: {chk.agree}", f"pi2 = {pi2}"]


def cmd_cover(args, rep: RunReport) -> None:
    K, _ = load_complex(args.input)
    v0 = _base_vertex(K, args.base)
    P, _ = edge_path_presentation(K, v0)
    L = [P.parse_word(w) for w in args.subgroup]
    cosets = budget("cosets", args.cosets)
    if args.radius is not None:
        C = lazy_cover(K, v0, L, args.rewriting, args.radius, cosets)
        verified = bool(verify_covering(C))
    else:
        C = finite_cover(K, v0, L, cosets)
        verified = bool(verify_covering(C)) and verify_subgroup_image(C, L, cosets)
    E = C.complex
    notes = {(v,): f"sheet {C.labels[v][0]}" for v in E.vertices}
    summary = {"sheets": C.sheet_count, "euler_base": euler_characteristic(K),
               "euler_total": euler_characteristic(E), "verified": verified}
    if C.table is not None and args.radius is None:
        summary["deck"] = deck_count(C).to_json()
    rep.results = dict(summary, complex=write_complex_text(E, notes))
    rep.verdicts = {"verified": verified}
    rep.text += [write_complex_text(E, notes).rstrip(),
                 "# " + ", ".join(f"{k}={v}" for k, v in summary.items())]


def cmd_connect(args, rep: RunReport) -> None:
    S, _ = load_schema(args.input)
    k = budget("grammar", args.k)
    ld = ld_connected(S)
    op = op_connected(S)
    ps = witness_search(S, "PS", args.ps_k if args.ps_k is not None else 1 if S.dim == 1 else 2)
    e = witness_search(S, "E", k)
    rep.results = {"connected": ld.connected, "op": op, "ps": ps.to_json(), "e": e.to_json(),
                   "components": [str(c) for c in ld.components]}
    if S.dim == 1 and not ld.connected:
        rep.results["definability"] = [_definability_json(S, i) for i in range(len(ld.components))]
    rep.verdicts = {"connected": ld.connected, "op": op}
    rep.text += [f"connected: {ld.connected} ({len(ld.components)} components)", f"op: {op}",
                 f"ps witness: {ps}", f"e witness: {e}"]


def _definability_json(S, i):
    d = definability_of_union(S, i)
    if isinstance(d, NotDefinable):
        return d.to_json()
    return {"definable": True, "set": str(d)}


def cmd_glue(args, rep: RunReport) -> None:
    try:
        text = Path(args.input).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {args.input!r}") from exc
    spec = read_glue_text(text, lambda name: load_complex(name)[0])
    K = glue_complexes(spec)
    groups = [homology_basis(K, n).group for n in range(max(K.dim, 0) + 1)]
    rep.results = {"euler": euler_characteristic(K), "homology": [g.to_json() for g in groups],
                   "complex": write_complex_text(K)}
    rep.text += [write_complex_text(K).rstrip(), f"# euler={euler_characteristic(K)}"]
    rep.text += [f"# H_{n} = {g}" for n, g in enumerate(groups)]


def _parse_map(text: str) -> dict[int, int]:
    out = {}
    for pair in text.replace(",", " ").split():
        a, sep, b = pair.partition(":")
        if not sep:
            raise ParseError(f"bad map entry {pair!r}")
        try:
            out[int(a)] = int(b)
        except ValueError:
            raise ParseError(f"bad map entry {pair!r}") from None
    return out


def cmd_whitehead(args, rep: RunReport) -> None:
    if args.name:
        if args.name not in fixtures.MAPS:
            raise ParseError(f"unknown map fixture {args.name!r}")
        src, tgt, f = fixtures.MAPS[args.name]
    else:
        if not (args.source and args.target and args.map):
            raise ParseError("give a map fixture or --source, --target and --map")
        src, tgt, f = args.source, args.target, _parse_map(args.map)
    K, _ = load_complex(src)
    L, _ = load_complex(tgt)
    v0 = _base_vertex(K, args.base)
    w = whitehead_check(K, L, f, v0, budget("cosets", args.cosets))
    rep.results = w.to_json()
    rep.verdicts = {"verdict": w.verdict, "certified": w.verdict == EQUIVALENCE}
    rep.text.append(f"{w.verdict}" + (f" (degree {w.failed_degree})" if w.failed_degree is not None else ""))


def cmd_fixtures(args, rep: RunReport) -> None:
    rep.results = {"complexes": sorted(fixtures.COMPLEXES), "exhaustions": sorted(fixtures.EXHAUSTIONS),
                   "schemas": sorted(SCHEMAS), "maps": sorted(fixtures.MAPS)}
    rep.text += [f"{k}: {', '.join(v)}" for k, v in rep.results.items()]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ldtop", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--timing", action="store_true", help="include wall time in JSON output")
    # the same options are accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser
    sub.add_parser = lambda *a, **kw: _add(*a, parents=[common], **kw)

    h = sub.add_parser("homology", help="integral homology of a complex or exhaustion")
    h.add_argument("input")
    h.add_argument("--dim", type=int)
    h.add_argument("--relative", help="subcomplex A for H_n(K, A)")
    h.add_argument("--colimit", action="store_true")
    h.add_argument("--stages", type=int)
    h.set_defaults(run=cmd_homology)

    for name, fn, hint in (("pi1", cmd_pi1, "edge-path group presentation"),
                           ("hurewicz", cmd_hurewicz, "compare pi_1^ab with H_1, pi_2 with H_2")):
        q = sub.add_parser(name, help=hint)
        q.add_argument("input")
        q.add_argument("--base", type=int)
        q.add_argument("--cosets", type=int)
        q.set_defaults(run=fn)

    c = sub.add_parser("cover", help="covering complex for a subgroup")
    c.add_argument("input")
    c.add_argument("--subgroup", action="append", default=[],
                   help='subgroup generator as a word, e.g. "a a" (upper case = inverse)')
    c.add_argument("--base", type=int)
    c.add_argument("--cosets", type=int)
    c.add_argument("--radius", type=int, help="build a lazy cover out to this radius")
    c.add_argument("--rewriting", choices=("auto", "free", "abelian"), default="auto")
    c.set_defaults(run=cmd_cover)

    k = sub.add_parser("connect", help="connectedness verdicts for a schema")
    k.add_argument("input")
    k.add_argument("--k", type=int, help="grammar bound for the E search")
    k.add_argument("--ps-k", type=int, help="grammar bound for the PS search")
    k.set_defaults(run=cmd_connect)

    g = sub.add_parser("glue", help="glue complexes along vertex identifications")
    g.add_argument("input")
    g.set_defaults(run=cmd_glue)

    w = sub.add_parser("whitehead", help="homotopy-equivalence certificate for a map")
    w.add_argument("name", nargs="?")
    w.add_argument("--source")
    w.add_argument("--target")
    w.add_argument("--map", help='vertex map "0:0,1:0,..."')
    w.add_argument("--base", type=int)
    w.add_argument("--cosets", type=int)
    w.set_defaults(run=cmd_whitehead)

    f = sub.add_parser("fixtures", help="list built-in fixtures")
    f.set_defaults(run=cmd_fixtures)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    parts = []
    for a in argv:
        if a == "--timing":
            continue
        parts.append(a)
        if os.path.isfile(a):
            parts.append(Path(a).read_text())
    rep = RunReport(args.command, parts)
    try:
        args.run(args, rep)
    except LdtopError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    if args.format == "json":
        print(json.dumps(rep.to_json(args.timing), indent=2, sort_keys=True))
    else:
        print("\n".join(rep.text))
    return 0


if __name__ == "__main__":
    sys.exit(main())
