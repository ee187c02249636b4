"""Burch ideals, Burch indices, the iterated chain and witness sets."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Polynomial
from .ideals import (
    INFINITE,
    Ideal,
    colength,
    colon,
    intersect,
    is_depth_zero,
    is_minimal_generator,
    maximal_ideal,
    mingens,
    product,
)
from .report import FALSIFIED, INCONCLUSIVE, VERIFIED, Report

UNBOUNDED = "UNBOUNDED"
STABILIZED = "STABILIZED"
CAPPED = "CAPPED"


def bi_n(I: Ideal, N: Ideal) -> Ideal:
    """``nI : (I : N)`` as an ideal of the polynomial ring."""
    n = maximal_ideal(I.ring)
    return colon(product(n, I), colon(I, N))


def burch_n(I: Ideal, N: Ideal, bi: Ideal | None = None):
    """Length of ``N / (BI_N(I) ∩ N)``; zero for positive depth when ``N`` is maximal."""
    if N == maximal_ideal(I.ring) and not is_depth_zero(I):
        return 0
    if bi is None:
        bi = bi_n(I, N)
    return colength(N, intersect(bi, N))


@dataclass
class BurchStep:
    j: int
    ideal: Ideal        # BI^j
    inner: Ideal        # (I : BI^{j-1})
    index: object       # Burch^j

    def to_json(self):
        from .report import jsonable

        return {"j": self.j, "BI": str(self.ideal), "colon": str(self.inner), "burch": jsonable(self.index)}


@dataclass
class BurchChain:
    ideal: Ideal
    steps: list = field(default_factory=list)
    first_zero: int | None = None
    gb: object = 0
    bd: object = 0
    status: str = CAPPED

    def bi(self, j: int) -> Ideal:
        """``BI^j``; past the last step the chain is constant when stabilized."""
        if j == 0:
            return maximal_ideal(self.ideal.ring)
        if j <= len(self.steps):
            return self.steps[j - 1].ideal
        if self.status == STABILIZED:
            return self.steps[-1].ideal
        raise IndexError(f"BI^{j} was not computed")

    def burch(self, j: int):
        if 1 <= j <= len(self.steps):
            return self.steps[j - 1].index
        if self.status == STABILIZED and j > len(self.steps):
            return self.steps[-1].index
        raise IndexError(f"Burch^{j} was not computed")

    def to_json(self) -> dict:
        from .report import jsonable

        return {
            "ideal": str(self.ideal),
            "steps": [s.to_json() for s in self.steps],
            "first_zero": self.first_zero,
            "gb": jsonable(self.gb),
            "bd": jsonable(self.bd),
            "status": self.status,
        }


def bi_chain(I: Ideal, max_iter: int = 50) -> BurchChain:
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    chain = BurchChain(I)
    prev = maximal_ideal(I.ring)
    for j in range(1, max_iter + 1):
        inner = colon(I, prev)
        cur = colon(product(maximal_ideal(I.ring), I), inner)
        idx = burch_n(I, prev, bi=cur)
        chain.steps.append(BurchStep(j, cur, inner, idx))
        if idx == 0 and chain.first_zero is None:
            chain.first_zero = j
        if cur == prev:
            chain.status = STABILIZED
            break
        prev = cur
    values = [s.index for s in chain.steps]
    if chain.first_zero is not None:
        n = chain.first_zero
        chain.gb = 0 if n == 1 else max(values[: n - 1])
    elif chain.status == STABILIZED and INFINITE not in values:
        chain.gb = max(values)
    else:
        chain.gb = UNBOUNDED
    ones = 0
    for v in values:
        if v != 1:
            break
        ones += 1
    if ones == len(values) and (chain.status == STABILIZED or not values):
        chain.bd = INFINITE if values else 0
    else:
        chain.bd = ones
    return chain


def _monic_all(fs) -> tuple:
    return tuple(f.monic() for f in fs)


def realization_witnesses(I: Ideal, N: Ideal) -> tuple:
    """Minimal generators ``x*`` of ``(I : N)`` with ``x* N`` not inside ``nI``."""
    nI = product(maximal_ideal(I.ring), I)
    out = []
    for xs in mingens(colon(I, N)):
        if any((xs * g) not in nI for g in N.gens):
            out.append(xs)
    return _monic_all(out)


def realized_witnesses(I: Ideal, N: Ideal) -> tuple:
    """Minimal generators of ``N`` outside ``BI_N(I)``."""
    bi = bi_n(I, N)
    return _monic_all(f for f in mingens(N) if f not in bi)


def realizes(I: Ideal, x_star, x) -> bool:
    ring = I.ring
    x_star = ring(x_star) if not isinstance(x_star, Polynomial) else x_star
    x = ring(x) if not isinstance(x, Polynomial) else x
    return is_minimal_generator(I, x_star * x)


def realizing_pairs(I: Ideal, N: Ideal) -> list:
    return [(xs, x) for xs in realization_witnesses(I, N) for x in realized_witnesses(I, N)
            if realizes(I, xs, x)]


def duality_check(I: Ideal, N: Ideal) -> Report:
    rep = Report("DUALITY")
    b = burch_n(I, N)
    if not rep.require("burch_N(I) > 0", b != 0, b):
        rep.data["status"] = "not applicable"
        return rep
    J = colon(I, N)
    b2 = burch_n(I, J)
    pairs = realizing_pairs(I, N)
    nI = product(maximal_ideal(I.ring), I)
    bi_dual = bi_n(I, J)
    swapped = []
    ok = b2 != 0
    for xs, x in pairs:
        x_realizes = x in colon(I, J) and any((x * g) not in nI for g in J.gens)
        xs_realized = xs in J and xs not in bi_dual
        good = x_realizes and xs_realized and realizes(I, x, xs)
        swapped.append({"realizer": x, "realized": xs, "holds": good})
        ok = ok and good
    rep.data.update({"burch_N": b, "dual_ideal": J, "burch_dual": b2,
                     "pairs": [[xs, x] for xs, x in pairs], "swapped": swapped})
    rep.conclusion = VERIFIED if ok else FALSIFIED
    return rep


__all__ = [
    "bi_n", "burch_n", "bi_chain", "BurchChain", "BurchStep", "realization_witnesses",
    "realized_witnesses", "realizes", "realizing_pairs", "duality_check", "UNBOUNDED",
    "STABILIZED", "CAPPED", "INCONCLUSIVE",
]
