import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from burchres.algebra import Ring, monomials_of_degree
from burchres.burch import (
    CAPPED,
    STABILIZED,
    UNBOUNDED,
    bi_chain,
    bi_n,
    burch_n,
    duality_check,
    realization_witnesses,
    realized_witnesses,
    realizes,
    realizing_pairs,
)
from burchres.ideals import Ideal, maximal_ideal, power
from burchres.report import FALSIFIED, INCONCLUSIVE, VERIFIED

R3 = Ring(("x", "y", "z"))


def test_bi_n_realization_example(xyz):
    I = Ideal(xyz, ["x^2*y", "x*y^2*z", "z^3"])
    N = Ideal(xyz, ["x^2", "y", "z^2"])
    assert bi_n(I, N) == Ideal(xyz, ["x", "z^2", "y*z", "y^2"])
    assert burch_n(I, N) == 1


def test_bi_n_of_square_of_maximal(xy):
    n2 = power(maximal_ideal(xy), 2)
    assert bi_n(n2, Ideal(xy, ["y"])) == n2


def test_positive_depth_zero_convention(xy):
    I = Ideal(xy, ["x"])
    # literal formula gives the maximal ideal, the convention sets the index to zero
    assert bi_n(I, maximal_ideal(xy)) == maximal_ideal(xy)
    assert burch_n(I, maximal_ideal(xy)) == 0


def test_burch_index_is_finite(xy):
    # nN lies in BI_N(I), so N / (BI_N ∩ N) always has finite length
    I = Ideal(xy, ["x^2"])
    assert burch_n(I, Ideal(xy, ["x"])) == 1
    assert burch_n(I, Ideal(xy, ["y"])) == 0


def test_chain_cap_status():
    R = Ring(("x1", "x2", "y"))
    I = Ideal(R, ["x1*y", "x2*y", "y^3"])
    chain = bi_chain(I, max_iter=1)
    assert chain.status == CAPPED and len(chain.steps) == 1
    with pytest.raises(IndexError):
        chain.bi(3)
    with pytest.raises(ValueError):
        bi_chain(I, max_iter=0)


def test_chain_stabilizes_for_example_family():
    R = Ring(("x1", "y"))
    I = Ideal(R, ["x1*y", "y^3"])
    chain = bi_chain(I)
    assert chain.status == STABILIZED
    assert [s.index for s in chain.steps] == [1, 2, 0]
    assert chain.gb == 2 and chain.first_zero == 3
    # past the stabilization point the chain is constant
    assert chain.bi(10) == chain.bi(len(chain.steps))


def test_gb_unbounded_when_no_zero_and_not_stable(xy):
    I = Ideal(xy, ["x^2", "x*y"])
    chain = bi_chain(I, max_iter=1)
    if chain.first_zero is None:
        assert chain.gb == UNBOUNDED


def test_realizes(xyz):
    I = Ideal(xyz, ["x^2*y", "x*y^2*z", "z^3"])
    assert realizes(I, "x*y*z", "y")
    assert not realizes(I, "x*y*z", "x^2")


def test_duality_not_applicable(xy):
    I = Ideal(xy, ["x^2*y"])
    rep = duality_check(I, maximal_ideal(xy))
    assert rep.conclusion == INCONCLUSIVE and not rep.preconditions_met


def _monomial_ideal(draw, n, max_deg, max_gens):
    k = draw(st.integers(1, max_gens))
    gens = []
    for _ in range(k):
        d = draw(st.integers(2, max_deg))
        gens.append(draw(st.sampled_from(monomials_of_degree(n, d))))
    return gens


@st.composite
def pairs(draw):
    I = _monomial_ideal(draw, 3, 4, 4)
    N = _monomial_ideal(draw, 3, 2, 2) if draw(st.booleans()) else [draw(st.sampled_from(monomials_of_degree(3, 1)))]
    return Ideal(R3, [R3.monomial(m) for m in I]), Ideal(R3, [R3.monomial(m) for m in N])


@settings(max_examples=60, deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow])
@given(pairs())
def test_equivalence_triangle(pair):
    I, N = pair
    b = burch_n(I, N)
    has_star = bool(realization_witnesses(I, N))
    has_realized = bool(realized_witnesses(I, N))
    # the zero convention applies only to N = n with positive depth
    if N == maximal_ideal(R3) and b == 0:
        return
    assert has_star == has_realized == (b != 0)
    if b != 0:
        assert realizing_pairs(I, N)


@settings(max_examples=60, deadline=None, derandomize=True)
@given(pairs())
def test_realized_never_in_burch_ideal(pair):
    I, N = pair
    bi = bi_n(I, N)
    for x in realized_witnesses(I, N):
        assert x not in bi
        assert x in N


@settings(max_examples=40, deadline=None, derandomize=True)
@given(pairs())
def test_duality_never_falsified(pair):
    I, N = pair
    assert duality_check(I, N).conclusion in (VERIFIED, INCONCLUSIVE)
