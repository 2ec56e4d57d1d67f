"""Character spectrum, exact walk law, and TV/L2 distances."""

import math

import numpy as np
import pytest

from cayleymix import spectral
from cayleymix.group import GeneratorMultiset, make_group, sample_generators


def _gens(elems):
    return GeneratorMultiset(elems=tuple(elems), k=len(elems), seed=0)


def test_z2_closed_form():
    # single generator 1 on Z_2, undirected: p_t(0) = (1 + e^{-2t})/2
    spec = make_group([2])
    eig = spectral.eigenvalues(spec, _gens([(1,)]), directed=False)
    t = 0.7
    dist = spectral.walk_distribution(eig, t)
    assert dist.probs[0] == pytest.approx((1 + math.exp(-2 * t)) / 2, rel=1e-13)
    assert spectral.tv_distance(dist) == pytest.approx(math.exp(-2 * t) / 2, rel=1e-12)


def test_z3_directed_eigenvalues():
    # lambda_chi = omega^{chi} for the single generator 1 on Z_3
    spec = make_group([3])
    eig = spectral.eigenvalues(spec, _gens([(1,)]), directed=True)
    w = np.exp(2j * math.pi / 3)
    expect = sorted([1.0 + 0j, w, w**2], key=lambda z: (round(z.real, 9), round(z.imag, 9)))
    got = sorted(eig.eigenvalues.tolist(), key=lambda z: (round(z.real, 9), round(z.imag, 9)))
    assert np.allclose(got, expect)


def test_undirected_spectrum_is_real():
    spec = make_group([6, 4])
    gens = sample_generators(spec, 3, 7)
    eig = spectral.eigenvalues(spec, gens, directed=False)
    assert np.max(np.abs(np.imag(eig.eigenvalues))) <= 1e-15


def test_walk_distribution_is_probability():
    spec = make_group([5, 9])
    gens = sample_generators(spec, 4, 3)
    for directed in (False, True):
        eig = spectral.eigenvalues(spec, gens, directed=directed)
        for t in (0.0, 0.5, 5.0):
            dist = spectral.walk_distribution(eig, t)
            assert dist.probs.sum() == pytest.approx(1.0, abs=1e-9)
            assert dist.probs.min() >= -1e-12


def test_t_zero_is_point_mass():
    spec = make_group([7])
    gens = sample_generators(spec, 2, 1)
    dist = spectral.walk_distribution(spectral.eigenvalues(spec, gens, directed=True), 0.0)
    assert dist.probs[0] == pytest.approx(1.0, abs=1e-12)
    assert spectral.tv_distance(dist) == pytest.approx(1.0 - 1.0 / 7, rel=1e-12)


def test_matches_matrix_exponential_small_groups():
    # independent oracle: uniformized matrix exponential of the generator walk
    rng = np.random.default_rng(5)
    for _ in range(6):
        sides = [int(rng.integers(2, 7)) for _ in range(int(rng.integers(1, 3)))]
        spec = make_group(sides)
        k = int(rng.integers(1, 4))
        gens = sample_generators(spec, k, int(rng.integers(0, 100)))
        directed = bool(rng.integers(0, 2))
        t = float(rng.uniform(0.1, 3.0))
        # build the n x n rate matrix directly
        from cayleymix.group import add, element_of, index_of, neg

        n = spec.n
        P = np.zeros((n, n))
        for i in range(n):
            x = element_of(spec, i)
            for z in gens.elems:
                steps = [z] if directed else [z, neg(spec, z)]
                w = 1.0 / (k * len(steps) / (1 if directed else 2))
                for sgn in steps:
                    P[i, index_of(spec, add(spec, x, sgn))] += 1.0 / (k * (1 if directed else 2))
        # uniformized exp(t(P - I)) row 0
        from scipy.linalg import expm

        heat = expm(t * (P - np.eye(n)))[0]
        eig = spectral.eigenvalues(spec, gens, directed=directed)
        dist = spectral.walk_distribution(eig, t)
        assert np.max(np.abs(dist.probs - heat)) <= 1e-8


def test_parseval_identity():
    # n * sum_x (p(x) - 1/n)^2 == sum_{chi != triv} |exp(t(lambda-1))|^2
    spec = make_group([6, 4])
    gens = sample_generators(spec, 3, 11)
    eig = spectral.eigenvalues(spec, gens, directed=True)
    t = 1.3
    dist = spectral.walk_distribution(eig, t)
    lhs = spectral.l2_distance(dist) ** 2
    factors = np.exp(t * (eig.eigenvalues - 1.0))
    idx = int(np.argmax(np.abs(factors - 1.0) < 1e-14))  # trivial character
    rhs = float(np.sum(np.abs(factors) ** 2)) - 1.0
    assert lhs == pytest.approx(rhs, abs=1e-9)


def test_tv_at_most_half_l2():
    spec = make_group([64])
    gens = sample_generators(spec, 3, 2)
    eig = spectral.eigenvalues(spec, gens, directed=False)
    for t in (0.5, 2.0, 10.0):
        dist = spectral.walk_distribution(eig, t)
        assert spectral.tv_distance(dist) <= 0.5 * spectral.l2_distance(dist) + 1e-12


def test_tv_curve_monotone_trend():
    spec = make_group([512])
    gens = sample_generators(spec, 4, 9)
    times = [0.5, 1.0, 2.0, 4.0, 8.0, 16.0]
    curve = spectral.tv_curve(spec, gens, False, times)
    tvs = [row[1] for row in curve]
    assert all(b <= a + 1e-12 for a, b in zip(tvs, tvs[1:]))


def test_detect_non_generating():
    spec = make_group([4])
    eig_bad = spectral.eigenvalues(spec, _gens([(2,)]), directed=False)
    assert spectral.detect_non_generating(eig_bad)
    eig_good = spectral.eigenvalues(spec, _gens([(1,)]), directed=False)
    assert not spectral.detect_non_generating(eig_good)


def test_size_cap():
    with pytest.raises(spectral.SpectralError):
        spec = make_group([2**23])
        gens = sample_generators(spec, 2, 0)
        spectral.eigenvalues(spec, gens, directed=False)
