"""Structured verification outcomes."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

VERIFIED = "VERIFIED"
FALSIFIED = "FALSIFIED"
INCONCLUSIVE = "INCONCLUSIVE"

SUBJECTS = ("BIG1", "BIG2", "DUAL2", "DUALPOS", "TWIST1", "DUALITY", "PERIODICITY", "FUZZ")


def jsonable(x: Any):
    """Convert algebra objects into plain JSON values (strings for polynomials and ideals)."""
    from .algebra import Polynomial
    from .ideals import Ideal

    if isinstance(x, (Polynomial, Ideal)):
        return str(x)
    if isinstance(x, float) and math.isinf(x):
        return "INFINITE"
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        seq = list(x)
        if isinstance(x, (set, frozenset)):
            seq = sorted(seq, key=str)
        return [jsonable(v) for v in seq]
    if hasattr(x, "to_json"):
        return x.to_json()
    return x


@dataclass
class Report:
    subject: str
    preconditions: list = field(default_factory=list)  # (name, met, witness)
    conclusion: str = INCONCLUSIVE
    data: dict = field(default_factory=dict)
    prefix_length: int | None = None
    seed: int | None = None

    def __post_init__(self):
        if self.subject not in SUBJECTS:
            raise ValueError(f"unknown report subject {self.subject!r}")

    def require(self, name: str, met: bool, witness=None) -> bool:
        self.preconditions.append((name, bool(met), witness))
        return bool(met)

    @property
    def preconditions_met(self) -> bool:
        return all(met for _, met, _ in self.preconditions)

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "preconditions": [{"name": n, "met": m, "witness": jsonable(w)} for n, m, w in self.preconditions],
            "conclusion": self.conclusion,
            "data": jsonable(self.data),
            "prefix_length": self.prefix_length,
            "seed": self.seed,
        }

    def summary(self) -> str:
        pre = ", ".join(f"{n}={'yes' if m else 'no'}" for n, m, _ in self.preconditions)
        return f"{self.subject}: {self.conclusion}" + (f" [{pre}]" if pre else "")
