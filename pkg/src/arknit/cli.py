"""Command-line front end: algebra specs in, JSON reports and DOT files out.

Algebra spec grammar (whitespace and newlines are free)::

    spec     := "(" spec ")" | builtin | quiver
    builtin  := "nakayama" INT INT | "linear_an" INT
              | ("t2_of" | "auslander_of" | "stable_auslander_of") spec
    quiver   := "vertices" ":" NAME+ ";"
                "arrows" ":" (NAME ":" NAME "->" NAME)+ ";"
                ["relations" ":" rel ("," rel)* ";"]
    rel      := ["+" | "-"] term (("+" | "-") term)*
    term     := [INT ["/" INT] ["*"]] NAME ("*" NAME)*

In a relation ``x*y`` is the path that first follows x and then y.

Exit codes: 0 finite or passed, 2 a knitting bound was exceeded, 1 error.
"""
from __future__ import annotations

import argparse
import json
import re
import shlex
import sys
from fractions import Fraction
from typing import Optional

from .covering import (
    CoveringError,
    LineCover,
    WindowTooSmall,
    interval_module,
    push_down,
    shift,
    verify_ar_preservation,
    verify_precovering,
    verify_stabilizer,
    verify_translation_cover,
)
from .fdalg import Algebra, AlgebraError, QuiverPresentation, compile_bound_quiver, linear_an, nakayama
from .fdmod import find_isomorphism, is_projective, local_rank, zero_module, identity_map, zero_map
from .fdmod.decomp import DEFAULT_SEED, set_seed
from .knit import DEFAULT_MAX_DIM, DEFAULT_MAX_MODULES, NotFinite, enumerate_indecomposables, export_dot
from .morphcat import MorphObject, auslander_algebra, ind_counts, t2_of

SCHEMA = "arknit-report/1"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_EXCEEDED = 2


class SpecError(ValueError):
    """Malformed algebra spec, located by line and column."""

    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


# spec parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(->)|([A-Za-z_][A-Za-z0-9_]*)|(\d+)|([():;,*/+\-]))")


def _tokenize(text: str) -> list:
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise SpecError(f"unexpected character {text[pos]!r}", *_where(text, pos))
        start = m.start(m.lastindex)
        kind = ("arrow", "name", "int", "sym")[m.lastindex - 1]
        toks.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    return toks


def _where(text: str, pos: int) -> tuple:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def error(self, msg: str, tok=None):
        if tok is None:
            tok = self.peek()
        pos = tok[2] if tok is not None else len(self.text)
        return SpecError(msg, *_where(self.text, pos))

    def peek(self, k: int = 0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise self.error("unexpected end of spec")
        self.i += 1
        return tok

    def expect(self, value: str):
        tok = self.next()
        if tok[1] != value:
            raise self.error(f"expected {value!r}, found {tok[1]!r}", tok)
        return tok

    def integer(self) -> int:
        tok = self.next()
        if tok[0] != "int":
            raise self.error(f"expected an integer, found {tok[1]!r}", tok)
        return int(tok[1])

    def name(self) -> str:
        tok = self.next()
        if tok[0] not in ("name", "int"):
            raise self.error(f"expected a name, found {tok[1]!r}", tok)
        return tok[1]

    def parse(self) -> Algebra:
        alg = self.spec()
        if self.peek() is not None:
            raise self.error(f"unexpected {self.peek()[1]!r} after the spec")
        return alg

    def spec(self) -> Algebra:
        tok = self.peek()
        if tok is None:
            raise self.error("empty spec")
        if tok[1] == "(":
            self.next()
            alg = self.spec()
            self.expect(")")
            return alg
        if tok[1] == "vertices":
            return self.quiver()
        tok = self.next()
        word = tok[1]
        try:
            if word == "nakayama":
                n, t = self.integer(), self.integer()
                return nakayama(n, t)
            if word == "linear_an":
                return linear_an(self.integer())
            if word in ("t2_of", "auslander_of", "stable_auslander_of"):
                inner = self.spec()
                if word == "t2_of":
                    return t2_of(inner)
                data = auslander_algebra(inner)
                alg = data.A if word == "auslander_of" else data.gamma
                alg.name = f"{word} ({inner.name})"
                return alg
        except (ValueError, AlgebraError, NotFinite) as exc:
            if isinstance(exc, SpecError):
                raise
            raise self.error(f"{word}: {exc}", tok) from exc
        raise self.error(f"unknown builtin {word!r}", tok)

    def section(self, word: str) -> None:
        self.expect(word)
        self.expect(":")

    def quiver(self) -> Algebra:
        start = self.peek()
        self.section("vertices")
        verts = []
        while self.peek() is not None and self.peek()[1] != ";":
            v = self.name()
            if v in verts:
                raise self.error(f"vertex {v!r} repeated", self.toks[self.i - 1])
            verts.append(v)
        self.expect(";")
        self.section("arrows")
        arrows = []
        names = set()
        while self.peek() is not None and self.peek()[1] != ";":
            tok = self.peek()
            a = self.name()
            self.expect(":")
            s = self.name()
            self.expect("->")
            t = self.name()
            if a in names:
                raise self.error(f"arrow {a!r} repeated", tok)
            for v in (s, t):
                if v not in verts:
                    raise self.error(f"arrow {a!r} uses unknown vertex {v!r}", tok)
            names.add(a)
            arrows.append((a, s, t))
        self.expect(";")
        rels = []
        if self.peek() is not None and self.peek()[1] == "relations":
            self.section("relations")
            while self.peek() is not None and self.peek()[1] != ";":
                rels.append(self.relation(arrows))
                if self.peek() is not None and self.peek()[1] == ",":
                    self.next()
            if self.peek() is not None:
                self.expect(";")
        try:
            return compile_bound_quiver(QuiverPresentation(verts, arrows, rels), name="quiver")
        except (ValueError, AlgebraError) as exc:
            raise self.error(str(exc), start) from exc

    def relation(self, arrows) -> dict:
        ends = {a: (s, t) for a, s, t in arrows}
        rel: dict = {}
        sign = 1
        first = True
        while True:
            tok = self.peek()
            if tok is not None and tok[1] in ("+", "-"):
                sign = -1 if tok[1] == "-" else 1
                self.next()
            elif not first:
                break
            first = False
            coef = Fraction(1)
            if self.peek() is not None and self.peek()[0] == "int":
                num = self.integer()
                den = 1
                if self.peek() is not None and self.peek()[1] == "/":
                    self.next()
                    den = self.integer()
                    if den == 0:
                        raise self.error("zero denominator", self.toks[self.i - 1])
                coef = Fraction(num, den)
                if self.peek() is not None and self.peek()[1] == "*":
                    self.next()
            ptok = self.peek()
            path = [self.name()]
            while self.peek() is not None and self.peek()[1] == "*":
                self.next()
                path.append(self.name())
            for a in path:
                if a not in ends:
                    raise self.error(f"unknown arrow {a!r} in relation", ptok)
            for a, b in zip(path, path[1:]):
                if ends[a][1] != ends[b][0]:
                    raise self.error(f"path {'*'.join(path)} does not compose at {a}*{b}", ptok)
            key = tuple(path)
            rel[key] = rel.get(key, 0) + sign * coef
            sign = 1
        rel = {p: (int(c) if c.denominator == 1 else c) for p, c in rel.items() if c != 0}
        if not rel:
            raise self.error("relation is zero")
        return rel


def parse_spec(text: str) -> Algebra:
    """Algebra described by a spec string."""
    return _Parser(text).parse()


# reports ----------------------------------------------------------------------


def _verdict_json(v) -> dict:
    out = {
        "verdict": "Finite" if v.finite else "ExceededBound",
        "count": v.count,
        "bound": v.bound,
        "modules": [list(m.dims) for m in v.modules],
    }
    if v.quiver is not None:
        q = v.quiver
        out["arrows"] = [[x, y, d[0], d[1]] for (x, y), d in q.arrows.items()]
        out["tau"] = [[x, tx] for x, tx in q.tau.items()]
        out["projective"] = sorted(q.projective)
        out["injective"] = sorted(q.injective)
    return out


def _report(args, command: str, **fields) -> dict:
    rep = {
        "schema": SCHEMA,
        "command": command,
        "argv": list(args.argv),
        "seed": f"{args.seed:#x}",
        "bounds": {"max_modules": args.max_modules, "max_dim": args.max_dim},
    }
    rep.update(fields)
    return rep


def _emit(args, rep: dict) -> None:
    text = json.dumps(rep, indent=2, sort_keys=True) + "\n"
    if getattr(args, "json", None):
        with open(args.json, "w") as fh:
            fh.write(text)
    if not getattr(args, "quiet", False):
        sys.stdout.write(text)


# commands -----------------------------------------------------------------------


def cmd_knit(args) -> tuple:
    alg = parse_spec(args.spec)
    v = enumerate_indecomposables(alg, args.max_modules, args.max_dim)
    if args.dot:
        if v.quiver is None:
            raise NotFinite("no AR quiver to export: knitting exceeded a bound")
        with open(args.dot, "w") as fh:
            fh.write(export_dot(v.quiver))
    rep = _report(args, "knit", spec=args.spec, algebra={"dim": alg.dim, "vertices": alg.n_vertices}, **_verdict_json(v))
    return rep, EXIT_OK if v.finite else EXIT_EXCEEDED


def cmd_mono(args) -> tuple:
    lam = parse_spec(args.spec)
    base = enumerate_indecomposables(lam, args.max_modules, args.max_dim)
    if not base.finite:
        raise NotFinite(f"base algebra exceeded {base.bound}")
    data = auslander_algebra(lam, base)
    counts = ind_counts(lam, base, args.max_modules, args.max_dim, morph=args.morph, data=data)
    s = counts.s_verdict
    fields = {
        "spec": args.spec,
        "base_count": counts.base_count,
        "gamma_dim": data.gamma.dim,
        "S": {
            "verdict": "Finite" if s.finite else "ExceededBound",
            "bound": s.bound,
            "gamma_count": s.count,
            "count": counts.s_count,
        },
    }
    finite = s.finite
    if args.morph:
        h = counts.h_verdict
        fields["H"] = {
            "verdict": "Finite" if h.finite else "ExceededBound",
            "bound": h.bound,
            "auslander_count": h.count,
            "count": counts.h_count,
        }
        finite = finite and h.finite
    if s.finite:
        sys.stderr.write(f"#ind S = {s.count} + 2*{counts.base_count} = {counts.s_count}\n")
    return _report(args, "mono", **fields), EXIT_OK if finite else EXIT_EXCEEDED


def _window(c_n: int, t: int, text: Optional[str]) -> LineCover:
    if text is None:
        return LineCover(c_n, t)
    m = re.fullmatch(r"\s*(-?\d+)\s*:\s*(-?\d+)\s*", text)
    if m is None:
        raise ValueError(f"window must look like lo:hi, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > -3 * t or hi < 3 * t:
        raise WindowTooSmall(f"window [{lo}, {hi}] needs margin 3t = {3 * t} around vertex 0")
    return LineCover(c_n, t, lo, hi)


def _grid(c: LineCover) -> list:
    """Interval modules starting in the fundamental domain [0, n-1]."""
    return [interval_module(c, i, i + k) for i in range(c.n) for k in range(c.t)]


def _check_pushdown(c: LineCover) -> dict:
    out = {"dimension": True, "indecomposable": True, "shift_invariance": True}
    for m in _grid(c):
        fm = push_down(c, m)
        out["dimension"] &= fm.dim == m.dim
        out["indecomposable"] &= local_rank(fm) == 1
        for g in (-1, 1):
            out["shift_invariance"] &= find_isomorphism(fm, push_down(c, shift(c, m, g))) is not None
    return out


def _check_stabilizer(c: LineCover) -> dict:
    ok = all(verify_stabilizer(c, g, h, m) for m in _grid(c) for g in (-1, 0, 1) for h in (-1, 0, 1))
    return {"cocycle": ok}


def _check_precovering(c: LineCover) -> dict:
    ms = _grid(c)
    others = [interval_module(c, i, i + k) for i in range(-c.t, c.n + c.t) for k in range(c.t)]
    ok = all(verify_precovering(c, m, nn).passed for m in ms for nn in others)
    return {"identity": ok, "pairs": len(ms) * len(others)}


def _check_ar(c: LineCover) -> dict:
    mods = [m for m in _grid(c) if not is_projective(m)]
    ok_mod = all(verify_ar_preservation(c, m).passed for m in mods)
    objs = []
    for m in _grid(c):
        z = zero_module(m.algebra)
        objs += [MorphObject(z, m, zero_map(z, m)), MorphObject(m, m, identity_map(m)), MorphObject(m, z, zero_map(m, z))]
    ok_morph = all(verify_ar_preservation(c, x).passed for x in objs if not is_projective(_t2(x)))
    return {"modules": ok_mod, "morph_trivial_shapes": ok_morph}


def _t2(x):
    from .morphcat import as_t2_module

    return as_t2_module(x)


def _check_quiver(c: LineCover) -> dict:
    out = {}
    for level in ("module", "morph"):
        rep = verify_translation_cover(c, level)
        out[level] = rep.passed
        out[f"{level}_axioms"] = rep.axioms
        out[f"{level}_label"] = rep.label
    return out


_CHECKS = {
    "pushdown": _check_pushdown,
    "stabilizer": _check_stabilizer,
    "precovering": _check_precovering,
    "ar": _check_ar,
    "quiver": _check_quiver,
}


def _passed(res: dict) -> bool:
    return all(v for k, v in res.items() if isinstance(v, bool))


def cmd_cover(args) -> tuple:
    c = _window(args.n, args.t, args.window)
    wanted = [k for k in _CHECKS if args.all or getattr(args, k)]
    if not wanted:
        wanted = list(_CHECKS)
    results = {k: _CHECKS[k](c) for k in wanted}
    passed = all(_passed(r) for r in results.values())
    rep = _report(
        args, "cover", n=args.n, t=args.t, window=[c.lo, c.hi],
        checks={k: dict(r, passed=_passed(r)) for k, r in results.items()}, passed=passed,
    )
    return rep, EXIT_OK if passed else EXIT_ERROR


def _manifest_entries(path: str) -> list:
    entries = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            expect = EXIT_OK
            if "=>" in line:
                line, _, tail = line.rpartition("=>")
                try:
                    expect = int(tail.strip())
                except ValueError as exc:
                    raise SpecError(f"bad expected exit code {tail.strip()!r}", lineno, raw.index("=>") + 3) from exc
            try:
                argv = shlex.split(line)
            except ValueError as exc:
                raise SpecError(str(exc), lineno, 1) from exc
            entries.append((lineno, argv, expect))
    return entries


def cmd_report(args) -> tuple:
    results = []
    ok = True
    for lineno, argv, expect in _manifest_entries(args.manifest):
        sub, code, err = _run(argv)
        entry = {"line": lineno, "argv": argv, "expected_exit": expect, "exit": code, "passed": code == expect}
        if sub is not None:
            entry["report"] = sub
        if err is not None:
            entry["error"] = err
        ok = ok and entry["passed"]
        results.append(entry)
    rep = _report(args, "report", manifest=args.manifest, entries=results, passed=ok)
    return rep, EXIT_OK if ok else EXIT_ERROR


_COMMANDS = {"knit": cmd_knit, "mono": cmd_mono, "cover": cmd_cover, "report": cmd_report}


class _Parser_(argparse.ArgumentParser):
    """Usage errors exit with 1, keeping 2 for exceeded bounds."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _glue_window(argv: list) -> list:
    """Let ``--window -6:6`` through although its value starts with a dash."""
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--window" and i + 1 < len(argv):
            out.append(f"--window={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def build_parser() -> argparse.ArgumentParser:
    p = _Parser_(prog="arknit", description=__doc__.split("\n")[0])
    common = _Parser_(add_help=False)
    common.add_argument("--seed", type=lambda s: int(s, 16), default=DEFAULT_SEED, help="hex seed for randomized searches")
    common.add_argument("--max-modules", type=int, default=DEFAULT_MAX_MODULES)
    common.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)
    common.add_argument("--json", help="also write the report to this path")
    common.add_argument("--quiet", action="store_true", help="do not print the report")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser_)
    k = sub.add_parser("knit", parents=[common], help="knit the AR quiver of an algebra")
    k.add_argument("spec")
    k.add_argument("--dot", help="write the AR quiver as Graphviz text")
    m = sub.add_parser("mono", parents=[common], help="count indecomposables of the monomorphism category")
    m.add_argument("spec")
    m.add_argument("--morph", action="store_true", help="also count the morphism category")
    c = sub.add_parser("cover", parents=[common], help="verify the line covering of L(n, t)")
    c.add_argument("n", type=int)
    c.add_argument("t", type=int)
    c.add_argument("--window", help="window lo:hi, default [-3t, n-1+3t]")
    c.add_argument("--all", action="store_true")
    for name in _CHECKS:
        c.add_argument(f"--{name}", action="store_true")
    r = sub.add_parser("report", parents=[common], help="run a manifest of commands")
    r.add_argument("manifest")
    return p


def _run(argv: list) -> tuple:
    """(report or None, exit code, error message or None)."""
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_window(argv))
    except SystemExit as exc:
        return None, EXIT_ERROR if exc.code else EXIT_OK, "invalid arguments"
    args.argv = list(argv)
    set_seed(args.seed)
    try:
        rep, code = _COMMANDS[args.command](args)
    except (SpecError, NotFinite, CoveringError, AlgebraError, ValueError, OSError) as exc:
        return None, EXIT_ERROR, f"{type(exc).__name__}: {exc}"
    finally:
        set_seed(DEFAULT_SEED)
    return rep, code, None


def main(argv: Optional[list] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_glue_window(argv))
    args.argv = argv
    set_seed(args.seed)
    try:
        rep, code = _COMMANDS[args.command](args)
    except (SpecError, NotFinite, CoveringError, AlgebraError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_ERROR
    _emit(args, rep)
    return code


if __name__ == "__main__":
    sys.exit(main())
