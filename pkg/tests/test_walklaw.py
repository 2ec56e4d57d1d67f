"""Lattice walk laws: mass, symmetry, entropy, moments, typicality radii."""

import math

import numpy as np
import pytest
from scipy import special

from cayleymix import walklaw


def test_poisson_law_matches_formula():
    s = 1.0
    law = walklaw.poisson_law(s)
    assert law.lo == 0
    for j in range(6):
        assert law.prob(j) == pytest.approx(math.exp(-s) * s**j / math.factorial(j), rel=1e-13)
    assert law.pmf.sum() == pytest.approx(1.0, abs=1e-13)


def test_srw_zero_point_is_bessel():
    # continuous-time SRW on Z: P(X_s = 0) = e^{-s} I_0(s)
    for s in (0.5, 2.0, 10.0):
        law = walklaw.srw_law(s)
        assert law.prob(0) == pytest.approx(math.exp(-s) * special.i0(s), rel=1e-12)
        # frozen value for s = 2
    assert walklaw.srw_law(2.0).prob(0) == pytest.approx(0.308508322553671, abs=1e-13)


def test_srw_symmetry_and_mass():
    for s in (0.1, 1.0, 25.0):
        law = walklaw.srw_law(s)
        assert law.pmf.sum() == pytest.approx(1.0, abs=1e-12)
        for j in range(1, 8):
            assert law.prob(j) == law.prob(-j)
        assert law.mean == pytest.approx(0.0, abs=1e-9)


def test_srw_law_is_skellam():
    # X_s = N_+ - N_- with independent Poisson(s/2) counts
    s = 3.0
    law = walklaw.srw_law(s)
    for j in (-2, 0, 1, 4):
        skellam = math.exp(-s) * special.iv(abs(j), s)
        assert law.prob(j) == pytest.approx(skellam, rel=1e-12)


def test_truncation_mass_invariant():
    for kind in ("poisson", "srw"):
        for s in (1e-3, 1.0, 50.0, 400.0):
            law = walklaw.make_law(kind, s)
            assert abs(law.pmf.sum() - 1.0) <= 1e-12


def test_entropy_poisson_frozen_value():
    # H(Po(1)) = sum_j e^{-1}/j! * (1 + log j!) known to high precision
    law = walklaw.poisson_law(1.0)
    assert walklaw.entropy(law) == pytest.approx(1.3048422422562515, abs=1e-12)


def test_entropy_closed_form_agreement():
    for s in np.geomspace(1e-3, 50, 40):
        direct = walklaw.entropy(walklaw.poisson_law(float(s)))
        closed = walklaw.entropy_directed_closed_form(float(s))
        assert abs(direct - closed) <= 1e-10


def test_entropy_monotone_in_s():
    for kind in ("poisson", "srw"):
        grid = np.geomspace(1e-2, 100, 30)
        vals = [walklaw.entropy(walklaw.make_law(kind, float(s))) for s in grid]
        assert all(b > a for a, b in zip(vals, vals[1:]))


def test_q_moments_variance_limits():
    # srw: Var Q_1 -> 1/2 as s -> infinity
    assert walklaw.q_moments(walklaw.srw_law(1e4)).var_Q1 == pytest.approx(0.5, abs=0.02)
    # poisson: Var Q_1 ~ s log^2(1/s) as s -> 0
    s = 1e-3
    v = walklaw.q_moments(walklaw.poisson_law(s)).var_Q1
    assert 0.8 <= v / (s * math.log(1 / s) ** 2) <= 1.25


def test_q_moments_mean_is_entropy():
    for kind, s in (("poisson", 2.0), ("srw", 3.0)):
        law = walklaw.make_law(kind, s)
        assert walklaw.q_moments(law).mean_Q1 == pytest.approx(walklaw.entropy(law), abs=1e-12)


def test_r_alpha_poisson_example():
    # threshold k^{-3/2} = 0.125: P(|X-1| > 0) ~ 0.632, P(|X-1| > 1) ~ 0.080
    law = walklaw.poisson_law(1.0)
    assert walklaw.r_alpha(law, 4) == 1


def test_r_alpha_monotone_in_k():
    law = walklaw.srw_law(2.0)
    rs = [walklaw.r_alpha(law, k) for k in (2, 4, 16, 64, 256)]
    assert all(b >= a for a, b in zip(rs, rs[1:]))


def test_p_alpha_positive_within_support():
    for kind, s in (("poisson", 0.75), ("poisson", 5.0), ("srw", 1.0)):
        law = walklaw.make_law(kind, s)
        r = walklaw.r_alpha(law, 8)
        assert walklaw.p_alpha(law, r) > 0.0


def test_p_alpha_rejects_negative_r():
    with pytest.raises(walklaw.WalkLawError):
        walklaw.p_alpha(walklaw.poisson_law(1.0), -1)


def test_srw_unimodality():
    for s in (0.1, 1.0, 10.0, 100.0):
        law = walklaw.srw_law(s)
        probs = [law.prob(j) for j in range(0, 30)]
        assert all(a >= b for a, b in zip(probs, probs[1:]))


def test_tail_stats_poisson_r0():
    stats = walklaw.tail_stats(walklaw.poisson_law(1.0), 0)
    # with centre s = 1 and r = 0, the upper tail is P(X >= 1) = 1 - e^{-1}
    assert stats["upper_tail"] == pytest.approx(1.0 - math.exp(-1.0), abs=1e-12)
    assert stats["upper_point"] == pytest.approx(math.exp(-1.0), rel=1e-12)


def test_tail_ratio_asymptotics():
    # P(X_s >= s + r) / P(X_s = s + r) grows like (s/r) for r << s
    s, r = 100.0, 10
    stats = walklaw.tail_stats(walklaw.poisson_law(s), r)
    ratio = stats["upper_tail"] / stats["upper_point"]
    assert 0.1 * (s / r) <= ratio <= 10 * (s / r)


def test_srw_log_tail():
    s, r = 100.0, 150
    stats = walklaw.tail_stats(walklaw.srw_law(s), r)
    target = r * min(r / s, 1.0) * math.log(max(r / s, math.e))
    assert target / 10 <= -math.log(stats["upper_tail"]) <= target * 10


def test_make_law_rejects_bad_kind():
    with pytest.raises(walklaw.WalkLawError):
        walklaw.make_law("binomial", 1.0)
