"""Line-oriented session files: a ring header, named ideals/matrices/modules, then commands.

    ring p=32003 vars=[x,y,z]
    ideal I = [x^2*y, x*y^2*z, z^3]
    ideal N = [x^2, y, z^2]
    witnesses I N
    resolve I --module N --steps 8 --emit minors
"""

from __future__ import annotations

import argparse
import re
import shlex
from dataclasses import dataclass, field

from .algebra import DEFAULT_PRIME, AlgebraError, ParseError, Polynomial, Ring
from .graded import GradedMatrix
from .ideals import Ideal
from .resolution import PresentedModule

COMMANDS = ("burch-index", "burch-chain", "bi-n", "witnesses", "resolve", "minors", "verify", "fuzz")
VERIFY_KINDS = ("big1", "big2", "dual2", "dualpos", "twist1", "duality")
MODULE_KINDS = ("ideal", "quotient", "cokernel", "free")
EMIT = ("minors", "betti", "matrices")

_NAME = r"[A-Za-z_][A-Za-z_0-9]*"
_RING_RE = re.compile(r"ring(?:\s+p\s*=\s*(?P<p>\d+))?\s+vars\s*=\s*\[(?P<vars>[^\]]*)\]\s*\Z")
_DEF_RE = re.compile(rf"(?P<kw>ideal|matrix|module)\s+(?P<name>{_NAME})\s*=\s*(?P<body>.*)\Z")


class _ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgError(message)


def _command_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="", add_help=False)
    sub = top.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("burch-index", add_help=False)
    p.add_argument("ideal")
    p.add_argument("--module", dest="N")

    p = sub.add_parser("burch-chain", add_help=False)
    p.add_argument("ideal")
    p.add_argument("--max-iter", type=int)

    for name in ("bi-n", "witnesses"):
        p = sub.add_parser(name, add_help=False)
        p.add_argument("ideal")
        p.add_argument("N")

    for name in ("resolve", "minors"):
        p = sub.add_parser(name, add_help=False)
        p.add_argument("ideal")
        p.add_argument("--module", required=True)
        p.add_argument("--steps", type=int)
        p.add_argument("--degree-bound", type=int)
        p.add_argument("--window", type=int)
        p.add_argument("--emit", choices=EMIT, default="minors")

    p = sub.add_parser("verify", add_help=False)
    p.add_argument("kind", choices=VERIFY_KINDS)
    p.add_argument("ideal")
    p.add_argument("N", nargs="?")
    p.add_argument("--module")
    p.add_argument("--N", dest="N_flag")
    p.add_argument("--step", type=int)
    p.add_argument("--column", type=int)
    p.add_argument("--steps", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--degree-bound", type=int)
    p.add_argument("--max-iter", type=int)

    p = sub.add_parser("fuzz", add_help=False)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--vars", type=int, default=3)
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--max-gens", type=int, default=4)
    p.add_argument("--binomial", type=float, default=0.0)
    p.add_argument("--steps", type=int)
    p.add_argument("--seed", type=int)
    return top


_PARSER = _command_parser()


@dataclass
class Command:
    text: str
    args: argparse.Namespace = field(compare=False, repr=False)
    line: int = field(default=0, compare=False)

    @property
    def name(self) -> str:
        return self.args.command


@dataclass
class SessionSpec:
    prime: int
    variables: tuple
    ideals: dict = field(default_factory=dict)     # name -> tuple of Polynomial
    matrices: dict = field(default_factory=dict)   # name -> rows of Polynomial
    modules: dict = field(default_factory=dict)    # name -> (kind, argument)
    commands: list = field(default_factory=list)

    @property
    def ring(self) -> Ring:
        return Ring(self.variables, self.prime)

    def ideal(self, name: str) -> Ideal:
        return Ideal(self.ring, self.ideals[name])

    def module(self, name: str) -> PresentedModule:
        if name in self.modules:
            kind, arg = self.modules[name]
            if kind == "ideal":
                return PresentedModule.of_ideal(self.ideal(arg))
            if kind == "quotient":
                return PresentedModule.quotient(self.ideal(arg))
            if kind == "cokernel":
                return PresentedModule.cokernel(self.matrix(arg))
            return PresentedModule.free(self.ring, arg)
        return PresentedModule.of_ideal(self.ideal(name))

    def matrix(self, name: str) -> GradedMatrix:
        return GradedMatrix.from_rows(self.ring, self.matrices[name])

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "vars": list(self.variables),
            "ideals": {k: [str(g) for g in v] for k, v in self.ideals.items()},
            "matrices": {k: [[str(e) for e in row] for row in v] for k, v in self.matrices.items()},
            "modules": {k: [kind, list(arg) if kind == "free" else arg] for k, (kind, arg) in self.modules.items()},
            "commands": [c.text for c in self.commands],
        }

    def __str__(self):
        out = [f"ring p={self.prime} vars=[{','.join(self.variables)}]"]
        for k, v in self.ideals.items():
            out.append(f"ideal {k} = [{', '.join(str(g) for g in v)}]")
        for k, v in self.matrices.items():
            rows = ", ".join("[" + ", ".join(str(e) for e in row) + "]" for row in v)
            out.append(f"matrix {k} = [{rows}]")
        for k, (kind, arg) in self.modules.items():
            a = "[" + ", ".join(str(t) for t in arg) + "]" if kind == "free" else arg
            out.append(f"module {k} = {kind} {a}")
        out.extend(c.text for c in self.commands)
        return "\n".join(out) + "\n"


def _split_top(body: str, line: int, col: int) -> list:
    """Split ``[a, b, [c, d]]`` at top-level commas; returns (text, column) pairs."""
    s = body.rstrip()
    if not s.startswith("[") or not s.endswith("]"):
        raise ParseError("expected a bracketed list", line, col)
    items, depth, start = [], 0, 1
    for i, ch in enumerate(s):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced ']'", line, col + i)
        elif ch == "," and depth == 1:
            items.append((s[start:i], col + start))
            start = i + 1
        if depth == 0 and i != len(s) - 1:
            raise ParseError("text after closing ']'", line, col + i + 1)
    if depth != 0:
        raise ParseError("unbalanced '['", line, col)
    last = s[start:-1]
    if last.strip() or items:
        items.append((last, col + start))
    out = []
    for text, c in items:
        lead = len(text) - len(text.lstrip())
        if not text.strip():
            raise ParseError("empty list item", line, c)
        out.append((text.strip(), c + lead))
    return out


def _homogeneous(f: Polynomial, line: int, col: int) -> Polynomial:
    if f.is_homogeneous():
        return f
    d = f.degree()
    for c, m in f.terms:
        if sum(m) != d:
            from .algebra import format_poly

            term = format_poly({m: c}, f.ring.names, f.ring.prime)
            raise ParseError(f"inhomogeneous generator {f}: term {term} has degree {sum(m)}, expected {d}",
                             line, col)
    return f


def parse_session(text: str, prime: int | None = None) -> SessionSpec:
    """Parse and validate a session document; ``prime`` overrides the header."""
    spec = None
    pending = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        col = len(body) - len(body.lstrip()) + 1
        body = body.strip()
        if body.startswith("ring"):
            if spec is not None:
                raise ParseError("ring declared twice", lineno, col)
            m = _RING_RE.match(body)
            if not m:
                raise ParseError("expected 'ring p=<prime> vars=[...]'", lineno, col)
            names = tuple(v.strip() for v in m.group("vars").split(",") if v.strip())
            p = prime if prime is not None else int(m.group("p") or DEFAULT_PRIME)
            try:
                Ring(names, p)
            except AlgebraError as e:
                raise ParseError(str(e), lineno, col) from None
            spec = SessionSpec(p, names)
            continue
        if spec is None:
            raise ParseError("the first statement must be the ring header", lineno, col)
        m = _DEF_RE.match(body)
        if m:
            kw, name = m.group("kw"), m.group("name")
            bcol = col + m.start("body")
            if name in spec.ideals or name in spec.matrices or name in spec.modules:
                raise ParseError(f"name {name!r} defined twice", lineno, col + m.start("name"))
            if kw == "ideal":
                gens = []
                for item, c in _split_top(m.group("body"), lineno, bcol):
                    f = spec.ring.parse(item, lineno, c)
                    gens.append(_homogeneous(f, lineno, c))
                spec.ideals[name] = tuple(gens)
            elif kw == "matrix":
                rows = []
                for item, c in _split_top(m.group("body"), lineno, bcol):
                    rows.append(tuple(spec.ring.parse(e, lineno, c2) for e, c2 in _split_top(item, lineno, c)))
                if len({len(r) for r in rows}) > 1:
                    raise ParseError("matrix rows have different lengths", lineno, bcol)
                try:
                    GradedMatrix.from_rows(spec.ring, rows)
                except AlgebraError as e:
                    raise ParseError(f"inhomogeneous matrix: {e}", lineno, bcol) from None
                spec.matrices[name] = tuple(rows)
            else:
                parts = m.group("body").split(None, 1)
                if len(parts) != 2 or parts[0] not in MODULE_KINDS:
                    raise ParseError(f"expected 'module {name} = <{'|'.join(MODULE_KINDS)}> <arg>'", lineno, bcol)
                kind, arg = parts[0], parts[1].strip()
                if kind == "free":
                    try:
                        arg = tuple(int(t) for t, _ in _split_top(arg, lineno, bcol))
                    except ValueError:
                        raise ParseError("free module twists must be integers", lineno, bcol) from None
                elif kind == "cokernel":
                    if arg not in spec.matrices:
                        raise ParseError(f"unknown matrix {arg!r}", lineno, bcol)
                elif arg not in spec.ideals:
                    raise ParseError(f"unknown ideal {arg!r}", lineno, bcol)
                spec.modules[name] = (kind, arg)
            continue
        pending.append((lineno, col, body))
    if spec is None:
        raise ParseError("missing ring header", 1, 1)
    for lineno, col, body in pending:
        spec.commands.append(parse_command(spec, body, lineno, col))
    return spec


def parse_command(spec: SessionSpec, body: str, line: int = 1, col: int = 1) -> Command:
    try:
        tokens = shlex.split(body)
    except ValueError as e:
        raise ParseError(str(e), line, col) from None
    if not tokens or tokens[0] not in COMMANDS:
        raise ParseError(f"unknown statement {tokens[0] if tokens else body!r}", line, col)
    try:
        args = _PARSER.parse_args(tokens)
    except _ArgError as e:
        raise ParseError(f"{tokens[0]}: {e}", line, col) from None
    _check_names(spec, args, line, col)
    return Command(" ".join(shlex.quote(t) for t in tokens), args, line)


def _check_names(spec: SessionSpec, args, line: int, col: int) -> None:
    def need_ideal(name):
        if name is not None and name not in spec.ideals:
            raise ParseError(f"unknown ideal {name!r}", line, col)

    def need_module(name):
        if name is not None and name not in spec.ideals and name not in spec.modules:
            raise ParseError(f"unknown module {name!r}", line, col)

    if args.command == "fuzz":
        return
    need_ideal(args.ideal)
    if args.command in ("bi-n", "witnesses", "burch-index"):
        need_ideal(args.N)
    elif args.command in ("resolve", "minors"):
        need_module(args.module)
    elif args.command == "verify":
        need_ideal(args.N)
        need_ideal(args.N_flag)
        need_module(args.module)
        if args.kind in ("big1", "big2", "dual2", "dualpos") and args.module is None:
            raise ParseError(f"verify {args.kind} needs --module", line, col)
        if args.kind in ("twist1", "duality") and (args.N or args.N_flag) is None:
            raise ParseError(f"verify {args.kind} needs an ideal N", line, col)
