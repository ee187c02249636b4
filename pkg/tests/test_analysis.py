import json

import pytest

from burchres import analysis as an
from burchres.algebra import Ring
from burchres.graded import GradedMatrix
from burchres.ideals import Ideal, maximal_ideal
from burchres.report import FALSIFIED, INCONCLUSIVE, VERIFIED, Report
from burchres.resolution import PresentedModule, resolve

FOUR = ("x*z", "y*z", "z*w", "x*w")


def test_report_subject_validated():
    with pytest.raises(ValueError):
        Report("NOPE")


def test_periodicity_free_module_constant_zero(xy):
    res = resolve(Ideal(xy, ["x^2*y"]), PresentedModule.free(xy), steps=3)
    rep = an.periodicity_report(res)
    assert rep.conclusion == VERIFIED
    assert rep.data["period"] == 1 and rep.data["tail"] == [()]


def test_periodicity_ex45():
    R = Ring(("a", "b"))
    I = Ideal(R, ["a", "b^2"]) ** 2
    res = resolve(I, PresentedModule.quotient(Ideal(R, ["a", "b^2"])), steps=7)
    rep = an.periodicity_report(res)
    assert rep.conclusion == VERIFIED
    assert rep.data["period"] == 1 and rep.data["onset"] == 1
    assert [str(g) for g in rep.data["tail"][0]] == ["a", "b^2"]


def test_periodicity_needs_prefix(xy):
    res = resolve(Ideal(xy, ["x^2*y"]), PresentedModule.of_ideal(maximal_ideal(xy)), steps=3)
    rep = an.periodicity_report(res, window=4)
    assert rep.conclusion == INCONCLUSIVE and not rep.preconditions_met


def test_periodicity_no_pattern():
    R = Ring(("x1", "x2", "x3"))
    I = Ideal(R, ["x2*x3 + 28*x3^2", "x2^2 - 30*x3^2", "x1*x3^2", "x1^3*x3"])
    res = resolve(I, PresentedModule.quotient(Ideal(R, ["x2 + 28*x3"])), steps=6)
    rep = an.periodicity_report(res, window=4)
    assert rep.preconditions_met and rep.conclusion == INCONCLUSIVE


def test_periodicity_invariant_under_presentation(xy):
    # the same module presented two ways gives the same entry-ideal pattern
    I = Ideal(xy, ["x^2*y"])
    a = resolve(I, PresentedModule.quotient(maximal_ideal(xy)), steps=7)
    b = resolve(I, PresentedModule.cokernel(GradedMatrix.from_rows(xy, [["y", "x"]])), steps=7)
    ra, rb = an.periodicity_report(a), an.periodicity_report(b)
    assert (ra.data["period"], ra.data["tail"]) == (rb.data["period"], rb.data["tail"])


def test_equivalent_matrices(xy):
    A = GradedMatrix.from_rows(xy, [["x", "0"], ["-y", "x*y"]])
    B = GradedMatrix.from_rows(xy, [["-y", "x*y"], ["x", "0"]])
    C = GradedMatrix.from_rows(xy, [["-x", "x^2"], ["y", "0"]])
    D = GradedMatrix.from_rows(xy, [["3*x", "0"], ["-3*y", "5*x*y"]])
    assert an.equivalent_matrices(A, B)
    assert an.equivalent_matrices(A, D)
    assert not an.equivalent_matrices(A, C)
    big = GradedMatrix.from_rows(xy, [["x"] * 6])
    assert an.equivalent_matrices(big, big) is None


def test_x2y_matrices_two_periodic(xy):
    res = resolve(Ideal(xy, ["x^2*y"]), PresentedModule.of_ideal(maximal_ideal(xy)), steps=7)
    assert all(an.matrix_period(res, 1).values())


def test_big1_precondition(xyz):
    I = Ideal(xyz, ["x^2*y", "y^2*z", "z^2*x"])
    rep = an.verify_big1(I, PresentedModule.of_ideal(maximal_ideal(xyz)), steps=3)
    assert not rep.preconditions_met and rep.conclusion == INCONCLUSIVE


def test_big2_pairing_fails(xy):
    rep = an.verify_big2(Ideal(xy, ["x^2"]), PresentedModule.of_ideal(maximal_ideal(xy)), steps=3)
    assert not rep.preconditions[0][1]
    assert rep.conclusion == INCONCLUSIVE


def test_shared_realizers_partial_coverage():
    R = Ring(("x1", "x2", "y"))
    I = Ideal(R, ["x1*y", "x2*y", "y^3"])
    pairs = an.shared_realizers(I)
    assert [(str(a), i, j) for a, i, j in pairs] == [("y", 0, 1)]


def test_shared_realizers_four_variables(xyzw):
    pairs = an.shared_realizers(Ideal(xyzw, list(FOUR)))
    covered = {k for _, i, j in pairs for k in (i, j)}
    assert covered == {0, 1, 2, 3}
    assert ("z", 0, 1) in [(str(a), i, j) for a, i, j in pairs]


def test_dual2_x2y_column(xy):
    I = Ideal(xy, ["x^2*y"])
    res = resolve(I, PresentedModule.quotient(maximal_ideal(xy)), steps=6)
    rep = an.verify_dual2(I, res, Ideal(xy, ["x"]), 1, 0)
    assert rep.conclusion == VERIFIED
    assert [j for j, ok in rep.data["even"]] == [3, 5]
    assert rep.data["realizers"]


def test_dual2_hypothesis_fails(xy):
    I = Ideal(xy, ["x^2*y"])
    res = resolve(I, PresentedModule.quotient(maximal_ideal(xy)), steps=4)
    # the column (x, y) of A_2 is not inside (x)
    rep = an.verify_dual2(I, res, Ideal(xy, ["x"]), 2, 1)
    assert not rep.preconditions_met and rep.conclusion == INCONCLUSIVE


def test_dual1_matrix_variant(xy):
    I = Ideal(xy, ["x^2*y"])
    res = resolve(I, PresentedModule.quotient(Ideal(xy, ["x*y"])), steps=6)
    rep = an.verify_dual1(I, res, Ideal(xy, ["x*y"]), 1)
    assert rep.preconditions_met and rep.conclusion == VERIFIED


def test_dualpos(xy, xyzw):
    I = Ideal(xy, ["x^2*y"])
    res = resolve(I, PresentedModule.of_ideal(maximal_ideal(xy)), steps=6)
    assert an.verify_dualpos(I, res).conclusion == VERIFIED
    free = resolve(I, PresentedModule.free(xy), steps=3)
    rep = an.verify_dualpos(I, free)
    assert rep.conclusion == INCONCLUSIVE and not rep.preconditions_met
    J4 = Ideal(xyzw, list(FOUR))
    res4 = resolve(J4, PresentedModule.of_ideal(Ideal(xyzw, ["x^2*y^2", "z^3", "y*w"])), steps=6)
    assert an.verify_dualpos(J4, res4).conclusion == VERIFIED


def test_twist1_maximal_ideal_four_variables(xyzw):
    I = Ideal(xyzw, list(FOUR))
    rep = an.check_twist1_conditions(I, maximal_ideal(xyzw), steps=4)
    assert rep.preconditions_met and rep.conclusion == VERIFIED
    assert len(rep.preconditions[1][2]) == 4


def test_twist1_principal(xy):
    I = Ideal(xy, ["x^2*y"])
    rep = an.check_twist1_conditions(I, Ideal(xy, ["x"]), steps=4)
    assert len(rep.preconditions[1][2]) == 1


def test_twist1_generator_table(xyz):
    I = Ideal(xyz, ["x^2*y", "x*y^2*z", "z^3"])
    rep = an.check_twist1_conditions(I, Ideal(xyz, ["x^2", "y", "z^2"]), steps=3)
    table = rep.preconditions[0][2]
    assert table["y"] >= 1
    assert set(table) == {"y", "x^2", "z^2"}


def test_twist1_with_module_checks_bound(xyzw):
    I = Ideal(xyzw, list(FOUR))
    M = PresentedModule.quotient(Ideal(xyzw, ["x^2*y^2", "z^3", "y*w"]))
    rep = an.check_twist1_conditions(I, maximal_ideal(xyzw), steps=8, M=M)
    assert rep.conclusion == VERIFIED
    assert all(rep.data["checks"].values())


def test_fuzz_empty_batch():
    batch = an.fuzz(an.FuzzConfig(count=0))
    assert batch.reports == [] and batch.counts() == {VERIFIED: 0, FALSIFIED: 0, INCONCLUSIVE: 0}


def test_fuzz_deterministic():
    cfg = an.FuzzConfig(seed=5, count=15)
    a = json.dumps(an.fuzz(cfg).to_json())
    b = json.dumps(an.fuzz(an.FuzzConfig(seed=5, count=15)).to_json())
    assert a == b
    assert json.dumps(an.fuzz(an.FuzzConfig(seed=6, count=15)).to_json()) != a


def test_fuzz_binomial_runs():
    batch = an.fuzz(an.FuzzConfig(seed=2, count=10, binomial_fraction=1.0, max_degree=3))
    assert batch.counts()[FALSIFIED] == 0
