"""Verifiers for the periodicity statements, run on finite resolution prefixes."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .algebra import Polynomial, Ring
from .burch import (
    INFINITE,
    UNBOUNDED,
    bi_chain,
    bi_n,
    burch_n,
    realization_witnesses,
    realizes,
    duality_check,
)
from .graded import GradedMatrix, ResourceCapError
from .ideals import (
    Ideal,
    colon,
    ideal_sum,
    maximal_ideal,
    mingens,
    product,
    is_minimal_generator,
)
from .report import FALSIFIED, INCONCLUSIVE, VERIFIED, Report
from .resolution import PresentedModule, Resolution, column_ideal, entry_ideal, resolve

DEFAULT_WINDOW = 4


def _entry_ideals(res: Resolution, upto: int | None = None) -> dict:
    last = res.last if upto is None else upto
    return {j: res.entry_ideal(j) for j in range(res.start, last + 1)}


def _lift(J: Ideal, I: Ideal) -> Ideal:
    return ideal_sum(J, I)


# -- periodicity ----------------------------------------------------------------

def _tail_pattern(seq: list, window: int):
    """Smallest period (1 or 2) and onset position that explain the last ``window`` entries."""
    n = len(seq)
    for period in (1, 2):
        k = n - 1 - period
        while k >= 0 and seq[k] == seq[k + period]:
            k -= 1
        onset = k + 1
        if n - onset >= max(window, period + 1):
            return period, onset
    return None, None


def periodicity_report(res: Resolution, window: int = DEFAULT_WINDOW) -> Report:
    rep = Report("PERIODICITY")
    upto = res.last
    if res.complete:
        upto = max(upto, res.start + window + 1)
    have = upto - res.start + 1
    rep.prefix_length = upto
    if not rep.require("prefix covers window + 2 steps", have >= window + 2, have):
        return rep
    E = _entry_ideals(res, upto)
    idx = sorted(E)
    seq = [E[j] for j in idx]
    period, onset = _tail_pattern(seq, window)
    rep.data["entry_ideals"] = {j: E[j].mod(res.I) or ("0",) for j in idx}
    if period is None:
        rep.data["pattern"] = "none"
        return rep
    rep.data.update({"period": period, "onset": idx[onset],
                     "tail": [seq[-1].mod(res.I), seq[-2].mod(res.I)][: period]})
    rep.conclusion = VERIFIED
    return rep


def _scaled_equal(A: GradedMatrix, B: GradedMatrix, rperm, cperm, p: int) -> bool:
    """Is ``A[r][c] = u_r v_c B[rperm r][cperm c]`` for nonzero scalars u, v?"""
    u: dict = {}
    v: dict = {}
    pairs = []
    for c in range(A.ncols):
        for r in range(A.nrows):
            a = A.entry(r, c)
            b = B.entry(rperm[r], cperm[c])
            if a.is_zero() != b.is_zero():
                return False
            if a.is_zero():
                continue
            if a.monic() != b.monic():
                return False
            pairs.append((r, c, a.lead_coefficient() * pow(b.lead_coefficient(), p - 2, p) % p))
    # propagate the row and column scalars over the bipartite graph of entries
    for r, c, ratio in pairs:
        if r in u and c in v:
            if u[r] * v[c] % p != ratio:
                return False
        elif r in u:
            v[c] = ratio * pow(u[r], p - 2, p) % p
        elif c in v:
            u[r] = ratio * pow(v[c], p - 2, p) % p
        else:
            u[r] = 1
            v[c] = ratio
    for r, c, ratio in pairs:
        if u[r] * v[c] % p != ratio:
            return False
    return True


def equivalent_matrices(A: GradedMatrix, B: GradedMatrix, max_size: int = 5):
    """Equal up to row/column permutation and unit scaling; ``None`` when too big to decide."""
    if (A.nrows, A.ncols) != (B.nrows, B.ncols):
        return False
    if A.nrows > max_size or A.ncols > max_size:
        return None
    p = A.ring.prime
    for rperm in itertools.permutations(range(A.nrows)):
        for cperm in itertools.permutations(range(A.ncols)):
            if _scaled_equal(A, B, rperm, cperm, p):
                return True
    return False


def matrix_period(res: Resolution, start: int, period: int = 2):
    """Check ``A_j ~ A_{j+period}`` for every pair inside the prefix from ``start``."""
    out = {}
    for j in range(start, res.last - period + 1):
        out[j] = equivalent_matrices(res.A(j), res.A(j + period))
    return out


# -- periodicity verifiers -----------------------------------------------------------

def verify_big1(I: Ideal, M: PresentedModule, steps: int = 10, window: int = DEFAULT_WINDOW,
                res: Resolution | None = None, chain=None) -> Report:
    rep = Report("BIG1")
    chain = chain or bi_chain(I)
    gb = chain.gb
    rep.data.update({"gb": gb, "bd": chain.bd})
    met = gb != UNBOUNDED and gb >= 2
    rep.require("gb(I) >= 2", met, gb)
    if not met:
        return rep
    res = res or resolve(I, M, steps=steps)
    rep.prefix_length = res.last
    E = _entry_ideals(res)
    D = {m: ideal_sum(E[m], E[m + 1]) for m in sorted(E) if m + 1 in E}
    ms = sorted(D)
    rep.data["D"] = {m: D[m].mod(I) for m in ms}
    if len(ms) < window:
        rep.data["status"] = "prefix shorter than window"
        return rep
    tail = [D[m] for m in ms[-window:]]
    if any(t != tail[0] for t in tail):
        rep.data["status"] = "tail not constant"
        return rep
    onset = ms[-1]
    while onset - 1 in D and D[onset - 1] == tail[0]:
        onset -= 1
    bd = chain.bd
    top = len(chain.steps) if bd == INFINITE else bd
    q = None
    for j in range(0, top + 1):
        if _lift(chain.bi(j), I) == tail[0]:
            q = j
            break
    rep.data.update({"onset": onset, "stable": tail[0].mod(I), "q": q})
    rep.conclusion = VERIFIED if q is not None else INCONCLUSIVE
    return rep


def _reduced_entries(col, I: Ideal) -> list:
    return [f for f in col if f and f not in I]


def verify_dual2(I: Ideal, res: Resolution, N: Ideal, m: int, c: int) -> Report:
    """Column version: ``I_1(c_m) ⊄ BI_N(I)`` and ``I_1(c_m) ⊆ N`` force ``N ⊆ I_1(A_{m+2a})``."""
    rep = Report("DUAL2")
    A = res.A(m)
    C = column_ideal(A, c, I)
    bi = bi_n(I, N)
    h1 = rep.require("I1(c_m) not in BI_N(I)", not _lift(bi, I).contains(C), C.mod(I))
    h2 = rep.require("I1(c_m) inside N", _lift(N, I).contains(C), N.mod(I))
    return _dual_conclusion(rep, I, res, N, m, [A.column(c)], bi, h1 and h2)


def verify_dual1(I: Ideal, res: Resolution, N: Ideal, m: int) -> Report:
    """Whole-matrix version of the even-offset containment."""
    rep = Report("DUAL2")
    rep.data["variant"] = "matrix"
    A = res.A(m)
    E = entry_ideal(A, I)
    bi = bi_n(I, N)
    h1 = rep.require("I1(A_m) not in BI_N(I)", not _lift(bi, I).contains(E), E.mod(I))
    h2 = rep.require("I1(A_m) inside N", _lift(N, I).contains(E), N.mod(I))
    return _dual_conclusion(rep, I, res, N, m, A.columns(), bi, h1 and h2)


def _dual_conclusion(rep, I, res, N, m, columns, bi, met) -> Report:
    rep.data.update({"m": m, "N": N.mod(I)})
    if not met:
        return rep
    # realized entries and the realization witnesses that realize them
    realized = [f for col in columns for f in _reduced_entries(col, I) if f not in _lift(bi, I)]
    stars = [xs for xs in realization_witnesses(I, N) if any(realizes(I, xs, x) for x in realized)]
    rep.data["realized_entries"] = realized[:8]
    rep.data["realizers"] = stars
    even, odd, failures = [], [], []
    NI = _lift(N, I)
    a = 1
    while m + 2 * a - 1 <= res.last:
        j_odd = m + 2 * a - 1
        Eo = res.entry_ideal(j_odd)
        for xs in stars:
            ok = xs in Eo
            odd.append((j_odd, xs, ok))
            if not ok:
                failures.append(f"x* = {xs} missing from I1(A_{j_odd})")
        j_even = m + 2 * a
        if j_even <= res.last:
            ok = res.entry_ideal(j_even).contains(NI)
            even.append((j_even, ok))
            if not ok:
                failures.append(f"N not inside I1(A_{j_even})")
        a += 1
    rep.prefix_length = res.last
    rep.data.update({"even": even, "odd": odd, "failures": failures})
    if not even:
        rep.data["status"] = "prefix too short"
        return rep
    rep.conclusion = FALSIFIED if failures else VERIFIED
    return rep


def _column_trigger(I: Ideal, A: GradedMatrix):
    """A column whose ideal has one of its own entries outside its Burch ideal."""
    for c in range(A.ncols):
        entries = _reduced_entries(A.column(c), I)
        if not entries:
            continue
        J = Ideal(I.ring, entries)
        bi = _lift(bi_n(I, J), I)
        for x in entries:
            if x not in bi:
                return c, x
    return None


def verify_dualpos(I: Ideal, res: Resolution) -> Report:
    rep = Report("DUALPOS")
    trigger = None
    for j in res.indices():
        A = res.A(j)
        if A.is_zero():
            continue
        E = entry_ideal(A, I)
        if not E.is_unit() and E != I and burch_n(I, Ideal(I.ring, _reduced_entries(A.nonzero_entries(), I))) not in (0,):
            trigger = (j, "matrix", None)
            break
        hit = _column_trigger(I, A)
        if hit is not None:
            trigger = (j, "column", hit)
            break
    rep.prefix_length = res.last
    if not rep.require("Burch trigger in prefix", trigger is not None, trigger and {"step": trigger[0], "kind": trigger[1]}):
        return rep
    j0 = trigger[0]
    zero_after = [j for j in range(j0 + 1, res.last + 1) if res.A(j).is_zero()]
    rep.data.update({"trigger_step": j0, "zero_steps": zero_after, "finite_length": res.complete})
    if res.complete or zero_after:
        rep.conclusion = FALSIFIED
    else:
        rep.conclusion = VERIFIED
    return rep


def shared_realizers(I: Ideal) -> list:
    """Triples ``(alpha, i, j)`` with ``alpha x_i`` and ``alpha x_j`` minimal generators of I."""
    ring = I.ring
    n = ring.nvars
    gens = mingens(I)
    out = []
    seen = set()
    for g in gens:
        for i in range(n):
            if not all(m[i] > 0 for m in g.data):
                continue
            alpha = Polynomial._raw(ring, {tuple(e - (k == i) for k, e in enumerate(m)): c
                                           for m, c in g.data.items()})
            for j in range(n):
                if j == i:
                    continue
                key = (alpha, min(i, j), max(i, j))
                if key in seen:
                    continue
                if is_minimal_generator(I, alpha * ring.var(j)):
                    seen.add(key)
                    out.append((alpha, min(i, j), max(i, j)))
    return out


def verify_big2(I: Ideal, M: PresentedModule, steps: int = 6, window: int = DEFAULT_WINDOW,
                res: Resolution | None = None) -> Report:
    rep = Report("BIG2")
    ring = I.ring
    n = ring.nvars
    pairs = shared_realizers(I)
    covered = sorted({k for _, i, j in pairs for k in (i, j)})
    rep.require("shared realizer for every variable", len(covered) == n,
                [{"alpha": a, "x_i": ring.names[i], "x_j": ring.names[j]} for a, i, j in pairs])
    res = res or resolve(I, M, steps=steps)
    rep.prefix_length = res.last
    found = {}
    for xj in range(n):
        X = _lift(Ideal(ring, [ring.var(xj)]), I)
        for m in res.indices():
            A = res.A(m)
            for c in range(A.ncols):
                if not _reduced_entries(A.column(c), I):
                    continue
                if X.contains(column_ideal(A, c, I)):
                    found[xj] = (m, c)
                    break
            if xj in found:
                break
    rep.require("column inside (x_j) for every variable", len(found) == n,
                {ring.names[k]: {"step": v[0], "column": v[1]} for k, v in found.items()})
    E = _entry_ideals(res)
    mx = _lift(maximal_ideal(ring), I)
    tail = sorted(E)[-window:]
    rep.data["tail"] = {j: E[j] == mx for j in tail}
    if not rep.preconditions_met:
        return rep
    rep.conclusion = VERIFIED if all(E[j] == mx for j in tail) else INCONCLUSIVE
    return rep


def colength_one_subideals(N: Ideal) -> list:
    """For each minimal generator n: (n, (other generators) + n*m)."""
    ring = N.ring
    gens = mingens(N)
    out = []
    for k, g in enumerate(gens):
        others = [h for t, h in enumerate(gens) if t != k]
        Q = Ideal(ring, others + [g * v for v in ring.gens()])
        out.append((g, Q))
    return out


def check_twist1_conditions(I: Ideal, N: Ideal, steps: int = 6, M: PresentedModule | None = None,
                            q_steps: int | None = None) -> Report:
    """Scan the untwisting hypotheses; with ``M`` also check the sums of consecutive entry ideals.

    The colength-one ideals are resolved through ``q_steps`` (default ``min(steps, 4)``),
    independently of the prefix length used for ``M``.
    """
    rep = Report("TWIST1")
    q_steps = min(steps, 4) if q_steps is None else q_steps
    ring = I.ring
    table = {}
    for g in mingens(N):
        table[str(g)] = burch_n(I, Ideal(ring, [g]))
    rep.require("Burch_(n)(I) >= 1 for each minimal generator", all(v != 0 for v in table.values()), table)
    per_q = []
    all_found = True
    for g, Q in colength_one_subideals(N):
        stars = [Ideal(ring, [s]) for s in realization_witnesses(I, Ideal(ring, [g]))]
        targets = {_lift(S, I) for S in stars}
        hit = None
        try:
            resq = resolve(I, PresentedModule.of_ideal(Q), steps=q_steps)
        except ResourceCapError as e:
            per_q.append({"n": g, "Q": Q, "error": str(e)})
            all_found = False
            continue
        for i in resq.indices():
            B = resq.A(i)
            for c in range(B.ncols):
                entries = _reduced_entries(B.column(c), I)
                if len(entries) != 1:
                    continue
                if _lift(Ideal(ring, entries), I) in targets:
                    hit = (i, c, entries[0])
                    break
            if hit:
                break
        per_q.append({"n": g, "Q": Q.mod(I), "column": None if hit is None else
                      {"step": hit[0], "index": hit[1], "entry": hit[2]}})
        all_found = all_found and hit is not None
    rep.require("each colength-one Q has a column [n*]", all_found, per_q)
    rep.data["coverage"] = "monomial generators only" if not N.is_monomial else "complete for monomial N"
    if M is None:
        rep.conclusion = VERIFIED if rep.preconditions_met else INCONCLUSIVE
        rep.data["bound"] = "v >= j + 5"
        return rep
    res = resolve(I, M, steps=steps)
    rep.prefix_length = res.last
    j0 = None
    for j in res.indices():
        A = res.A(j)
        for c in range(A.ncols):
            if not _reduced_entries(A.column(c), I):
                continue
            C = column_ideal(A, c, I)
            if any(_lift(Ideal(ring, [g]), I).contains(C) for g in mingens(N)):
                j0 = j
                break
        if j0 is not None:
            break
    rep.require("column inside some (n)", j0 is not None, j0)
    if not rep.preconditions_met:
        return rep
    NI = _lift(N, I)
    checks = {}
    for v in range(max(j0 + 5, res.start), res.last):
        checks[v] = ideal_sum(res.entry_ideal(v), res.entry_ideal(v + 1)).contains(NI)
    rep.data.update({"j": j0, "checks": checks})
    if not checks:
        rep.data["status"] = "prefix too short"
        return rep
    rep.conclusion = VERIFIED if all(checks.values()) else FALSIFIED
    return rep


# -- randomized campaign ---------------------------------------------------------

@dataclass
class FuzzConfig:
    seed: int = 1
    count: int = 100
    nvars: int = 3
    max_degree: int = 3
    max_gens: int = 4
    binomial_fraction: float = 0.0
    steps: int = 4


@dataclass
class FuzzBatch:
    config: FuzzConfig
    reports: list = field(default_factory=list)

    def counts(self) -> dict:
        out = {VERIFIED: 0, FALSIFIED: 0, INCONCLUSIVE: 0}
        for r in self.reports:
            out[r.conclusion] += 1
        return out

    def to_json(self) -> dict:
        return {"config": self.config.__dict__, "counts": self.counts(),
                "reports": [r.to_json() for r in self.reports]}


def _random_monomial(rng: random.Random, n: int, d: int) -> tuple:
    cuts = sorted(rng.randint(0, d) for _ in range(n - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [d])]
    return tuple(parts)


def random_ideal(rng: random.Random, ring: Ring, max_degree: int, max_gens: int,
                 binomial: bool = False) -> Ideal:
    n = ring.nvars
    k = rng.randint(1, max_gens)
    gens = []
    for _ in range(k):
        d = rng.randint(2, max_degree)
        m = _random_monomial(rng, n, d)
        f = ring.monomial(m)
        if binomial:
            m2 = _random_monomial(rng, n, d)
            if m2 != m:
                f = f - ring.monomial(m2, rng.randint(1, ring.prime - 1))
        gens.append(f)
    return Ideal(ring, gens)


def fuzz(config: FuzzConfig) -> FuzzBatch:
    rng = random.Random(config.seed)
    ring = Ring(tuple(f"x{i + 1}" for i in range(config.nvars)))
    batch = FuzzBatch(config)
    for case in range(config.count):
        binomial = rng.random() < config.binomial_fraction
        I = random_ideal(rng, ring, config.max_degree, config.max_gens, binomial)
        N = random_ideal(rng, ring, config.max_degree - 1 if config.max_degree > 2 else 2, 2)
        if rng.random() < 0.5:
            N = Ideal(ring, [ring.var(rng.randrange(config.nvars))])
        if I.is_unit():
            continue
        # chain monotonicity
        chain = bi_chain(I, max_iter=8)
        mono = all(chain.bi(j - 1).contains(chain.bi(j)) for j in range(1, len(chain.steps) + 1))
        rep = Report("FUZZ", seed=config.seed)
        rep.data.update({"case": case, "I": I, "check": "chain monotonicity", "steps": len(chain.steps)})
        rep.conclusion = VERIFIED if mono else FALSIFIED
        batch.reports.append(rep)
        # duality
        d = duality_check(I, N)
        d.seed = config.seed
        d.data["case"] = case
        d.data["I"] = I
        d.data["N"] = N
        batch.reports.append(d)
        # column-wise dual2 on the resolution of N where triggered
        try:
            res = resolve(I, PresentedModule.of_ideal(N), steps=config.steps)
        except ResourceCapError:
            continue
        for m in (res.start, res.start + 1):
            if m > res.last:
                continue
            A = res.A(m)
            for c in range(A.ncols):
                entries = _reduced_entries(A.column(c), I)
                if not entries:
                    continue
                Nc = Ideal(ring, entries)
                r = verify_dual2(I, res, Nc, m, c)
                if r.preconditions_met:
                    r.seed = config.seed
                    r.data["case"] = case
                    batch.reports.append(r)
    return batch
