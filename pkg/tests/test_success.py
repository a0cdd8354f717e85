import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import brute_success, brute_success_fraction

from subfield_impact import (
    K_EXPONENT,
    CitationDistribution,
    Method,
    Orientation,
    SuccessResult,
    oriented_max,
    success_exact,
    success_from_if,
    success_simplified,
)
from subfield_impact.errors import DomainError, EmptyDistribution

D = CitationDistribution.from_citations
counts = st.lists(st.integers(0, 50), min_size=1, max_size=60)


def test_identical_is_half():
    d = D([0, 1, 1, 4, 9])
    assert success_exact(d, d).s_tr == 0.5


def test_hand_example():
    # brute force over the 9 pairs: 6.5 / 9
    r = success_exact(D([0, 1, 2]), D([0, 0, 1]))
    assert r.s_tr == pytest.approx(13 / 18, abs=1e-15)
    assert brute_success([0, 1, 2], [0, 0, 1]) == pytest.approx(13 / 18, abs=1e-15)
    assert (r.method, r.n_t, r.n_r) == (Method.EXACT, 3, 3)


def test_strict_dominance():
    assert success_exact(D([1, 2, 3]), D([0, 0])).s_tr == 1.0


def test_empty_distribution():
    with pytest.raises(EmptyDistribution):
        success_exact(CitationDistribution(np.zeros(0)), D([1]))


def test_from_if_examples():
    assert success_from_if(3.0, 3.0, 0.0).s_tr == 0.5
    assert success_from_if(2.0, 1.0, 0.0).s_tr == pytest.approx(1 / (1 + 2 ** -1.23), abs=1e-15)
    assert success_from_if(2.0, 1.0, 0.0).s_tr == pytest.approx(0.7011062, abs=5e-7)
    # q = 2: 0.25 + 0.75 / 3
    assert success_from_if(1.0, 1.0, 0.5).s_tr == pytest.approx(0.5, abs=1e-15)
    assert success_from_if(2.0, 1.0, 0.0).rho == 2.0


@pytest.mark.parametrize("args", [(0.0, 1.0, 0.1), (1.0, 0.0, 0.1), (1.0, 1.0, 1.0), (1.0, 1.0, -0.1)])
def test_from_if_domain(args):
    with pytest.raises(DomainError):
        success_from_if(*args)


def test_simplified():
    assert K_EXPONENT == 1.23
    assert success_simplified(1.0).s_tr == 0.5
    assert success_simplified(2.0).s_tr == success_from_if(2.0, 1.0, 0.0).s_tr
    vals = [success_simplified(r).s_tr for r in (1e2, 1e4, 1e6)]
    assert vals == sorted(vals) and vals[-1] < 1.0 and vals[-1] > 0.99999
    with pytest.raises(DomainError):
        success_simplified(0.0)


def test_oriented_max():
    a = SuccessResult(0.3, Method.EXACT)
    b = SuccessResult(0.7, Method.EXACT)
    assert oriented_max(a, b) == (b, Orientation.B_OVER_A)
    assert oriented_max(b, a) == (b, Orientation.A_OVER_B)
    h = SuccessResult(0.5, Method.EXACT)
    assert oriented_max(h, h)[1] is Orientation.NONE


@settings(max_examples=200, deadline=None)
@given(counts, counts)
def test_exact_matches_enumeration_and_complement(t, r):
    s_tr = success_exact(D(t), D(r)).s_tr
    s_rt = success_exact(D(r), D(t)).s_tr
    assert abs(s_tr - brute_success(t, r)) <= 1e-12
    assert s_tr == float(brute_success_fraction(t, r))
    assert abs(s_tr + s_rt - 1.0) <= 1e-12
    best, _ = oriented_max(success_exact(D(t), D(r)), success_exact(D(r), D(t)))
    assert best.s_tr >= 0.5


@given(counts, st.integers(0, 20), st.integers(1, 5))
def test_stochastic_dominance(r, shift_at, bump):
    # raising some counts makes t dominate r
    t = [c + bump if i <= shift_at else c for i, c in enumerate(r)]
    assert success_exact(D(t), D(r)).s_tr > 0.5


@given(st.floats(0.0, 0.95), st.floats(0.1, 10), st.floats(1.001, 2.0))
def test_monotone_in_rho(f0, rho, factor):
    assert success_from_if(rho * factor, 1.0, f0).s_tr > success_from_if(rho, 1.0, f0).s_tr
    assert success_simplified(rho * factor).s_tr > success_simplified(rho).s_tr
