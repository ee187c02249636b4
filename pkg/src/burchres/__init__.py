"""Burch ideals, iterated Burch indices and minimal resolutions over S/I, with periodicity checks."""

from .algebra import AlgebraError, ParseError, Polynomial, Ring
from .analysis import (
    FuzzConfig,
    check_twist1_conditions,
    fuzz,
    periodicity_report,
    verify_big1,
    verify_big2,
    verify_dual1,
    verify_dual2,
    verify_dualpos,
)
from .burch import (
    bi_chain,
    bi_n,
    burch_n,
    duality_check,
    realization_witnesses,
    realized_witnesses,
    realizes,
)
from .graded import GradedFreeModule, GradedMatrix, ResourceCapError, syzygies, syzygies_mod
from .groebner import GroebnerBasis, buchberger
from .ideals import (
    INFINITE,
    Ideal,
    colength,
    colon,
    double_colon,
    intersect,
    is_depth_zero,
    maximal_ideal,
    mingens,
)
from .report import FALSIFIED, INCONCLUSIVE, VERIFIED, Report
from .resolution import PresentedModule, Resolution, betti, column_ideal, entry_ideal, resolve, tor_dims
from .session import SessionSpec, parse_session

__version__ = "0.1.0"
