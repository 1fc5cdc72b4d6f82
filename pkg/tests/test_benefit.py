from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpf

from sigtau import benefit
from sigtau.arith import Factorization, f1, parse
from sigtau.benefit import BenefitQuery, ben, ben_direct, ben_p, enumerate_budget
from sigtau.errors import DomainError
from sigtau.realx import LOG2
from sigtau.superchampion import alpha_for, psi

M1 = parse("2^8·3^5·5^3·7^2·11^2·13^2·P(17..113)")


@given(st.sampled_from([2, 3, 5, 7, 113, 127, 1009]), st.integers(0, 12), st.integers(1, 60))
def test_ben_p_nonnegative_for_maximizing_alpha(p, beta, i):
    # at any eps, the maximizing exponent alpha makes every ben_p >= 0
    eps = psi(p, 1) * mpf(i) / 61
    alpha = alpha_for(p, eps)
    assert ben_p(p, beta, alpha, eps) >= -mpf("1e-30")


def test_query_validation(seq):
    with pytest.raises(ValueError):
        BenefitQuery(seq[46].eps_hi, M1, seq[46].eps_hi * LOG2)
    with pytest.raises(ValueError):
        BenefitQuery(seq[46].eps_hi, M1, -1)
    with pytest.raises(ValueError):
        BenefitQuery(mpf("0.2"), M1, mpf("0.01"))
    with pytest.raises(IndexError):
        BenefitQuery.at_index(seq, len(seq), mpf("0.001"))
    # both neighbours maximize at eps_i
    BenefitQuery(seq[46].eps_hi, seq[45].n, mpf("0.001"))


def test_ben_sum_equals_direct_form(seq):
    q = BenefitQuery.at_index(seq, 47, mp.log(mpf("2.6") / mpf("2.597")))
    hits = enumerate_budget(q)
    assert len(hits) > 50
    for h in hits:
        d = ben_direct(h.n, q)
        assert abs(h.ben - d) <= mpf("1e-18") * max(abs(d), mpf("1e-12"))
        assert abs(ben(h.n, q) - h.ben) <= mpf("1e-30")
        assert h.ben <= q.budget + benefit.BEN_TOL
        assert h.tau_ratio == Fraction(h.n.tau(), q.reference.tau())


def test_completeness_against_brute_force(small):
    eps, budget = mpf(1) / 5, mpf("0.05")
    ref = Factorization.from_int(120)
    q = BenefitQuery(eps, ref, budget)
    found = {h.n.value() for h in enumerate_budget(q) if h.n.value() <= 10**6}
    n = np.arange(1, 10**6 + 1)
    score = np.log(small["sigma"][1:] / n) - 0.2 * np.log(small["tau"][1:].astype(np.float64))
    ref_score = float(mp.log(mpf(360) / 120) - eps * mp.log(16))
    b = ref_score - score
    assert not np.any(np.abs(b - float(budget)) < 1e-9)  # nothing on the boundary
    brute = {int(k) for k in n[b <= float(budget)]}
    assert found == brute


def test_monotone_budget(seq):
    small_b = {h.key for h in enumerate_budget(BenefitQuery.at_index(seq, 48, mpf("0.0005")))}
    big_b = {h.key for h in enumerate_budget(BenefitQuery.at_index(seq, 48, mpf("0.001")))}
    assert small_b < big_b


def test_interpolation_with_benefit(seq):
    i = 47
    lo, hi = seq[i - 1], seq[i]
    best = max(f1(lo.stats), f1(hi.stats))
    q = BenefitQuery.at_index(seq, i, mpf("0.002"))
    checked = 0
    for h in enumerate_budget(q):
        if lo.tau() <= h.n.tau() <= hi.tau():
            assert h.f1 <= mp.exp(-h.ben) * best * (1 + mpf("1e-30"))
            checked += 1
    assert checked > 10


def test_exceptions(seq):
    hits = benefit.exceptions(seq)
    assert len(hits) == 12
    assert hits[0].n == M1
    assert [benefit.relative_to(h, M1)[0] for h in hits[:3]] == ["1", "127", "127·131"]
    assert benefit.relative_to(hits[5], M1) == ("2·127·131", Fraction(40, 9))
    assert all(h.f1 > mpf("2.597") for h in hits)


def test_render_deviation():
    assert benefit.render_deviation([(2, 1), (127, 1)]) == "2·127"
    assert benefit.render_deviation([(113, -1)]) == "1/113"
    assert benefit.render_deviation([(2, -1), (113, -1)]) == "1/(2·113)"
    assert benefit.render_deviation([(2, 2), (3, -1)]) == "2^2/3"
    assert benefit.render_deviation([]) == "1"


def test_census_small_thresholds(seq):
    assert benefit.nu_census("2.597", seq).count == 12
    res = benefit.nu_census("2.596", seq, keep_hits=True)
    assert res.count == 45
    assert all(h.f1 >= mpf("2.596") for h in res.hits)
    assert len({h.key for h in res.hits}) == 45
    with pytest.raises(DomainError):
        benefit.nu_census("2.58", seq)


def test_census_windows_cover_records(seq):
    x = mpf("2.595")
    wins = dict(benefit.census_windows(seq, x, 200))
    for i in range(1, 201):
        if f1(seq.stats(i)) >= x:
            assert i in wins and i + 1 in wins
    assert all(b < seq[i].eps_hi * LOG2 for i, b in wins.items())
