"""Cross-module invariant checks bundled behind the `validate` subcommand.

Each check raises on failure; the harness turns that into a per-check
pass/fail report.  These mirror the library's internal contracts on small,
fast instances; the full experimental claims live in the test suite.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from . import entropic, mixingstats, spectral, typdist, walklaw
from .group import element_order, make_group, sample_generators, subgroup_generated


def check_canonical_decomposition():
    """Isomorphic side-length multisets must canonicalise identically.

    Brute-force isomorphism witness: the multiset of element orders.
    """
    spec_a, spec_b = make_group([6, 4]), make_group([12, 2])
    assert spec_a.invariant_factors == spec_b.invariant_factors == (2, 12)
    for sides in [[2, 3], [4, 9], [6, 10], [8, 2, 3]]:
        spec = make_group(sides)
        canon = make_group(spec.invariant_factors)
        profile = sorted(
            element_order(spec, e) for e in itertools.product(*(range(m) for m in sides))
        )
        profile_c = sorted(
            element_order(canon, e)
            for e in itertools.product(*(range(m) for m in canon.side_lengths))
        )
        assert profile == profile_c, f"order profiles differ for {sides}"


def check_law_mass():
    for kind in ("poisson", "srw"):
        for s in (0.0, 1e-3, 0.5, 1.0, 7.0, 100.0):
            law = walklaw.make_law(kind, s)
            total = float(law.pmf.sum())
            assert 1.0 - 1e-12 <= total <= 1.0 + 1e-12, (kind, s, total)
            assert law.pmf.min() >= 0.0
            if kind == "srw":
                assert np.allclose(law.pmf, law.pmf[::-1], atol=1e-14, rtol=0)


def check_entropy_closed_form():
    for s in np.geomspace(1e-3, 50.0, 25):
        direct = walklaw.entropy(walklaw.poisson_law(float(s)))
        closed = walklaw.entropy_directed_closed_form(float(s))
        assert abs(direct - closed) <= 1e-10, (s, direct - closed)


def check_unimodality():
    for s in np.geomspace(0.1, 100.0, 20):
        law = walklaw.srw_law(float(s))
        right = law.pmf[-law.lo :]
        assert np.all(np.diff(right) <= 1e-18), f"srw pmf not decreasing on Z_+ at s={s}"


def check_srw_zero_point():
    # rate-1 SRW at twice the entropic time stays below 2 n^{-1/k}
    lam0 = 0.5
    for n, k in [(10**6, 4), (10**9, 6), (10**6, 6)]:
        if k > lam0 * math.log(n):
            continue
        sched = entropic.solve_t0("srw", k, n)
        law = walklaw.srw_law(2.0 * sched.t0 / k)
        assert law.prob(0) <= 2.0 * n ** (-1.0 / k), (n, k)


def check_rp_bounds():
    for kind in ("poisson", "srw"):
        for k in (4, 8, 16, 64):
            for n in (10**4, 10**6):
                sched = entropic.solve_t0(kind, k, n)
                law = walklaw.make_law(kind, sched.t0 / k)
                r = walklaw.r_alpha(law, k)
                p = walklaw.p_alpha(law, r)
                r_star = 0.5 * n ** (1.0 / k) * math.log(k) ** 2
                p_star = n ** (-1.0 / k) * k**-2
                assert r <= r_star, (kind, k, n, r, r_star)
                assert p >= p_star, (kind, k, n, p, p_star)


def check_vz_uniform():
    spec = make_group([12])
    for v in [(4, 6), (1,), (3, 9), (2, 4)]:
        result = mixingstats.verify_vz_uniform(spec, v)
        assert result["ok"], (v, result["gcds"])
    spec23 = make_group([2, 3])
    assert mixingstats.verify_vz_uniform(spec23, (3,))["ok"]


def check_divisibility_bound():
    """Conditioned nonzero with |v| <= 2r, divisibility by gamma has
    probability at most 1/gamma (exact, via the full truncated pmf)."""
    for s in (0.2, 0.5, 1.0, 2.0):
        law = walklaw.srw_law(2 * s)
        r = walklaw.r_alpha(law, 8)
        sup, pmf = law.support, law.pmf
        window = (np.abs(sup) <= 2 * r) & (sup != 0) & (pmf > 0)
        total = pmf[window].sum()
        if total == 0:
            continue
        for gamma in range(2, 2 * r + 2):
            mass = pmf[window & (sup % gamma == 0)].sum()
            assert mass <= total / gamma * (1 + 1e-12), (s, gamma)


def check_spectral_oracle():
    rng = np.random.default_rng(5)
    for sides in [[7], [12], [3, 5], [2, 2, 3]]:
        spec = make_group(sides)
        gens = sample_generators(spec, 3, int(rng.integers(2**32)))
        spectrum = spectral.eigenvalues(spec, gens, directed=False)
        t = 1.7
        dist = spectral.walk_distribution(spectrum, t)
        # independent oracle: uniformised series over the dense transition matrix
        probs = _matrix_exp_law(spec, gens, directed=False, t=t)
        assert np.abs(dist.probs - probs).max() <= 1e-8
        # Parseval
        n = spec.n
        lhs = n * float(np.square(dist.probs - 1.0 / n).sum())
        hat = np.exp(t * (spectrum.eigenvalues - 1.0))
        rhs = float((np.abs(hat) ** 2)[1:].sum())  # skip trivial character
        assert abs(lhs - rhs) <= 1e-9


def _matrix_exp_law(spec, gens, directed: bool, t: float) -> np.ndarray:
    from .group import add, element_of, index_of, neg

    n = spec.n
    P = np.zeros((n, n))
    w = 1.0 / (gens.k * (1 if directed else 2))
    for z in gens.elems:
        moves = [z] if directed else [z, neg(spec, z)]
        for mv in moves:
            for i in range(n):
                j = index_of(spec, add(spec, element_of(spec, i), mv))
                P[i, j] += w
    # uniformised series e^{t(P-I)} = e^{-t} sum t^m P^m / m!
    out = np.zeros(n)
    state = np.zeros(n)
    state[0] = 1.0
    log_coeff = -t
    term = math.exp(-t)
    m = 0
    acc = state * term
    while term > 1e-18 or m < t + 10:
        m += 1
        state = state @ P
        term *= t / m
        acc = acc + state * term
        if m > 10 * t + 200:
            break
    return acc


def check_tv_lower_bound_once():
    spec = make_group([512])
    sched = entropic.solve_t0("srw", 4, spec.n)
    gens = sample_generators(spec, 4, 11)
    spectrum = spectral.eigenvalues(spec, gens, directed=False)
    t = entropic.solve_t_alpha(sched, 0.0)
    tv = spectral.tv_distance(spectral.walk_distribution(spectrum, t))
    lb = mixingstats.lower_bound_estimate(sched, t, sched.omega, 20000, 3)
    assert tv >= lb["value"] - 3 * lb["stderr"]


def check_ball_counts():
    for k in (1, 2, 3, 4):
        for R in (0, 1, 2.9, 5):
            for p in (1.0, 2.0, math.inf):
                exact = typdist.brute_force_count(k, p, R)
                if p == 1.0:
                    assert typdist.ball_count_l1(k, R).count == exact
                elif p == math.inf:
                    assert typdist.ball_count_linf(k, R).count == exact


def check_generation_detection():
    spec = make_group([4])
    gens = sample_generators(spec, 2, 0)
    size = subgroup_generated(spec, gens)
    spectrum = spectral.eigenvalues(spec, gens, directed=False)
    assert (size < spec.n) == spectral.detect_non_generating(spectrum)


def all_checks():
    return [
        ("canonical_decomposition", check_canonical_decomposition),
        ("law_mass_and_symmetry", check_law_mass),
        ("entropy_closed_form", check_entropy_closed_form),
        ("srw_unimodality", check_unimodality),
        ("srw_zero_point_bound", check_srw_zero_point),
        ("r_p_bounds", check_rp_bounds),
        ("vz_uniform_collapse", check_vz_uniform),
        ("divisibility_bound", check_divisibility_bound),
        ("spectral_transform_oracle", check_spectral_oracle),
        ("tv_lower_bound", check_tv_lower_bound_once),
        ("lattice_ball_counts", check_ball_counts),
        ("generation_detection", check_generation_detection),
    ]
