"""Command-line driver: run a session file and emit text or JSON."""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter
from dataclasses import dataclass, field

from . import analysis
from .algebra import AlgebraError, ParseError
from .burch import bi_chain, bi_n, burch_n, duality_check, realization_witnesses, realized_witnesses, realizing_pairs
from .graded import ResourceCapError
from .ideals import Ideal, is_depth_zero, maximal_ideal
from .report import FALSIFIED, Report, jsonable
from .resolution import DEFAULT_DEGREE_BOUND, resolve
from .session import SessionSpec, parse_command, parse_session

SCHEMA_VERSION = "1.0"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FALSIFIED = 2
EXIT_RESOURCE = 3


@dataclass
class Defaults:
    steps: int = 10
    max_iter: int = 50
    window: int = analysis.DEFAULT_WINDOW
    degree_bound: int = DEFAULT_DEGREE_BOUND
    seed: int = 1


@dataclass
class Outcome:
    results: list = field(default_factory=list)
    falsified: bool = False
    capped: bool = False
    failed: bool = False

    @property
    def exit_code(self) -> int:
        if self.failed:
            return EXIT_USAGE
        if self.falsified:
            return EXIT_FALSIFIED
        if self.capped:
            return EXIT_RESOURCE
        return EXIT_OK


def _pick(value, default):
    return default if value is None else value


def _entry_table(res, I) -> list:
    rows = []
    for j in res.indices():
        A = res.A(j)
        cols = Counter("(" + ", ".join(str(g) for g in res.column_ideal(j, c).mod(I)) + ")"
                       for c in range(A.ncols))
        rows.append({"j": j, "rank": A.ncols, "entry_ideal": res.entry_ideal(j).mod(I),
                     "column_ideals": dict(sorted(cols.items()))})
    return rows


def _cmd_burch_index(spec, a, d):
    I = spec.ideal(a.ideal)
    N = spec.ideal(a.N) if a.N else maximal_ideal(I.ring)
    bi = bi_n(I, N)
    out = {"ideal": I, "N": N, "bi_n": bi.mod(I), "bi_n_literal": bi.reduced(),
           "burch": burch_n(I, N, bi=bi)}
    if N == maximal_ideal(I.ring):
        dz = is_depth_zero(I)
        out["depth_zero"] = dz
        # the zero convention replaces the literal length when depth is positive
        out["positive_depth_convention"] = not dz
    return out, []


def _cmd_burch_chain(spec, a, d):
    I = spec.ideal(a.ideal)
    chain = bi_chain(I, max_iter=_pick(a.max_iter, d.max_iter))
    table = [{"j": s.j, "BI": s.ideal.mod(I), "colon": s.inner.mod(I), "burch": s.index} for s in chain.steps]
    return {"ideal": I, "table": table, "first_zero": chain.first_zero, "gb": chain.gb,
            "bd": chain.bd, "status": chain.status}, []


def _cmd_bi_n(spec, a, d):
    I, N = spec.ideal(a.ideal), spec.ideal(a.N)
    bi = bi_n(I, N)
    return {"ideal": I, "N": N, "bi_n": bi.mod(I), "bi_n_literal": bi.reduced(),
            "burch": burch_n(I, N, bi=bi)}, []


def _cmd_witnesses(spec, a, d):
    I, N = spec.ideal(a.ideal), spec.ideal(a.N)
    return {"ideal": I, "N": N,
            "realization": realization_witnesses(I, N),
            "realized": realized_witnesses(I, N),
            "pairs": [[xs, x] for xs, x in realizing_pairs(I, N)]}, []


def _resolution(spec, a, d, name=None):
    I = spec.ideal(a.ideal)
    M = spec.module(name or a.module)
    return I, resolve(I, M, steps=_pick(a.steps, d.steps), degree_bound=_pick(a.degree_bound, d.degree_bound))


def _cmd_resolve(spec, a, d):
    I, res = _resolution(spec, a, d)
    out = {"ideal": I, "module": res.module.describe(), "start": res.start, "last": res.last,
           "complete": res.complete, "ranks": res.ranks()}
    if a.emit == "minors":
        out["minors"] = _entry_table(res, I)
    elif a.emit == "betti":
        out["twists"] = res.twists()
    else:
        out["resolution"] = res.to_json()
    return out, []


def _cmd_minors(spec, a, d):
    I, res = _resolution(spec, a, d)
    rep = analysis.periodicity_report(res, window=_pick(a.window, d.window))
    return {"ideal": I, "module": res.module.describe(), "minors": _entry_table(res, I)}, [rep]


def _cmd_verify(spec, a, d):
    I = spec.ideal(a.ideal)
    steps = _pick(a.steps, d.steps)
    window = _pick(a.window, d.window)
    Nname = a.N_flag or a.N
    kind = a.kind
    if kind == "duality":
        return {}, [duality_check(I, spec.ideal(Nname))]
    if kind == "twist1":
        M = spec.module(a.module) if a.module else None
        return {}, [analysis.check_twist1_conditions(I, spec.ideal(Nname), steps=steps, M=M)]
    M = spec.module(a.module)
    if kind == "big1":
        chain = bi_chain(I, max_iter=_pick(a.max_iter, d.max_iter))
        return {}, [analysis.verify_big1(I, M, steps=steps, window=window, chain=chain)]
    if kind == "big2":
        return {}, [analysis.verify_big2(I, M, steps=steps, window=window)]
    res = resolve(I, M, steps=steps, degree_bound=_pick(a.degree_bound, d.degree_bound))
    if kind == "dualpos":
        return {}, [analysis.verify_dualpos(I, res)]
    # dual2: a single column, or a scan of the first two matrices
    if a.step is not None and a.column is not None:
        A = res.A(a.step)
        if not 0 <= a.column < A.ncols:
            raise AlgebraError(f"column {a.column} out of range for A_{a.step}")
        N = spec.ideal(Nname) if Nname else Ideal(I.ring, [f for f in A.column(a.column) if f])
        return {}, [analysis.verify_dual2(I, res, N, a.step, a.column)]
    reports = []
    steps_to_scan = [a.step] if a.step is not None else [j for j in (res.start, res.start + 1) if j <= res.last]
    for m in steps_to_scan:
        A = res.A(m)
        for c in range(A.ncols):
            N = spec.ideal(Nname) if Nname else Ideal(I.ring, [f for f in A.column(c) if f and f not in I])
            if N.is_zero():
                continue
            r = analysis.verify_dual2(I, res, N, m, c)
            r.data["column"] = c
            if r.preconditions_met:
                reports.append(r)
    if not reports:
        r = Report("DUAL2")
        r.require("some column satisfies the hypotheses", False, steps_to_scan)
        reports.append(r)
    return {"triggered": len(reports)}, reports


def _cmd_fuzz(spec, a, d):
    cfg = analysis.FuzzConfig(seed=_pick(a.seed, d.seed), count=a.count, nvars=a.vars,
                              max_degree=a.max_degree, max_gens=a.max_gens,
                              binomial_fraction=a.binomial, steps=_pick(a.steps, 4))
    batch = analysis.fuzz(cfg)
    return {"config": cfg.__dict__, "counts": batch.counts()}, batch.reports


HANDLERS = {
    "burch-index": _cmd_burch_index,
    "burch-chain": _cmd_burch_chain,
    "bi-n": _cmd_bi_n,
    "witnesses": _cmd_witnesses,
    "resolve": _cmd_resolve,
    "minors": _cmd_minors,
    "verify": _cmd_verify,
    "fuzz": _cmd_fuzz,
}


def run(spec: SessionSpec, defaults: Defaults | None = None) -> Outcome:
    """Execute the commands in order; errors are recorded per command."""
    d = defaults or Defaults()
    out = Outcome()
    for cmd in spec.commands:
        entry = {"command": cmd.text}
        try:
            data, reports = HANDLERS[cmd.name](spec, cmd.args, d)
        except ResourceCapError as e:
            entry["error"] = {"kind": "resource-cap", "message": str(e)}
            out.capped = True
            out.results.append(entry)
            continue
        except AlgebraError as e:
            entry["error"] = {"kind": "usage", "message": str(e)}
            out.failed = True
            out.results.append(entry)
            continue
        entry["output"] = jsonable(data)
        entry["reports"] = [r.to_json() for r in reports]
        out.falsified = out.falsified or any(r.conclusion == FALSIFIED for r in reports)
        out.results.append(entry)
    return out


def document(spec: SessionSpec, outcome: Outcome) -> dict:
    return {"schema_version": SCHEMA_VERSION, "session": spec.to_json(), "results": outcome.results}


def _render(x, indent: int = 0) -> list:
    pad = "  " * indent
    lines = []
    if isinstance(x, dict):
        for k, v in x.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_render(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(x, list):
        for v in x:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.extend(_render(v, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(pad + _inline(x))
    return lines


def _flat(v) -> bool:
    if isinstance(v, dict):
        return all(not isinstance(t, (dict, list)) for t in v.values())
    return all(not isinstance(t, (dict, list)) for t in v)


def _inline(v) -> str:
    if isinstance(v, list):
        return "(" + ", ".join(_inline(t) for t in v) + ")"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_inline(t)}" for k, t in v.items()) + "}"
    if v is None:
        return "-"
    return str(v)


def render_text(doc: dict) -> str:
    lines = [f"# burchres report (schema {doc['schema_version']})",
             f"ring p={doc['session']['prime']} vars=[{','.join(doc['session']['vars'])}]"]
    for entry in doc["results"]:
        lines.append("")
        lines.append(f"> {entry['command']}")
        if "error" in entry:
            lines.append(f"  error ({entry['error']['kind']}): {entry['error']['message']}")
            continue
        lines.extend(_render(entry["output"], 1))
        for rep in entry["reports"]:
            lines.append(f"  {rep['subject']}: {rep['conclusion']}  (prefix {rep['prefix_length']})")
            for pre in rep["preconditions"]:
                lines.append(f"    [{'x' if pre['met'] else ' '}] {pre['name']}")
            lines.extend(_render(rep["data"], 2))
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="burchres", description="Burch invariants and resolution periodicity checks.")
    ap.add_argument("session", help="session file, or '-' for stdin")
    ap.add_argument("-c", "--command", action="append", default=[],
                    help="extra command line appended to the session (repeatable)")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--prime", type=int, help="override the ring header's prime")
    ap.add_argument("--steps", type=int, default=10)
    ap.add_argument("--max-iter", type=int, default=50)
    ap.add_argument("--window", type=int, default=analysis.DEFAULT_WINDOW)
    ap.add_argument("--degree-bound", type=int, default=DEFAULT_DEGREE_BOUND)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("-o", "--output", help="write the report here instead of stdout")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        text = sys.stdin.read() if args.session == "-" else open(args.session, encoding="utf-8").read()
    except OSError as e:
        print(f"burchres: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        spec = parse_session(text, prime=args.prime)
        for k, extra in enumerate(args.command, start=1):
            spec.commands.append(parse_command(spec, extra, line=0, col=1))
    except ParseError as e:
        print(f"{args.session}:{e}", file=sys.stderr)
        return EXIT_USAGE
    except AlgebraError as e:
        print(f"{args.session}: {e}", file=sys.stderr)
        return EXIT_USAGE
    d = Defaults(args.steps, args.max_iter, args.window, args.degree_bound, args.seed)
    outcome = run(spec, d)
    doc = document(spec, outcome)
    body = json.dumps(doc, indent=2) + "\n" if args.format == "json" else render_text(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        try:
            sys.stdout.write(body)
            sys.stdout.flush()
        except BrokenPipeError:
            # reader went away (e.g. piped into head); keep the exit code
            sys.stdout = open(os.devnull, "w")
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
