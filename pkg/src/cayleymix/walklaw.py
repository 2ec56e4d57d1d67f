"""Laws of one auxiliary lattice coordinate and their information statistics.

Two kinds, both run at rate 1/k and evaluated at time t = s*k:

* ``poisson`` -- rate-1/k Poisson counting process on Z_+ (directed walk);
* ``srw``     -- rate-1/k continuous-time simple random walk on Z
  (undirected walk), realised as the difference of two independent
  Poisson(s/2) counts, i.e. pmf(x) = e^{-s} I_x(s).

All pmfs are truncated to a window carrying all but <= 1e-14 of the mass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

TRUNCATION_MASS = 1e-14
# Per-side trim threshold; two sides stay within TRUNCATION_MASS.  The
# convolution is relatively accurate even on far-tail entries, so the trim
# only drops denormal-scale dust; large-deviation tail probabilities stay
# representable across the whole 18-sigma window.
_TRIM = 1e-280


class WalkLawError(ValueError):
    pass


@dataclass(frozen=True)
class LatticeWalkLaw:
    kind: str  # "poisson" or "srw"
    s: float
    lo: int
    pmf: np.ndarray  # probabilities over integers lo, lo+1, ...

    @property
    def hi(self) -> int:
        return self.lo + len(self.pmf) - 1

    @property
    def support(self) -> np.ndarray:
        return np.arange(self.lo, self.lo + len(self.pmf))

    def prob(self, x: int) -> float:
        if self.lo <= x <= self.hi:
            return float(self.pmf[x - self.lo])
        return 0.0

    @property
    def mean(self) -> float:
        return float(np.dot(self.support, self.pmf))


@dataclass(frozen=True)
class QMoments:
    mean_Q1: float
    var_Q1: float
    fourth_central_Q1: float


def _poisson_window(s: float) -> np.ndarray:
    """Poisson(s) pmf on [0, hi], hi wide enough that the tail is < 1e-15.

    An 18-sigma window keeps large-deviation tails (out to ~15 sigma, mass
    ~1e-15) inside the stored support for large s; for small s the Gaussian
    picture fails and a flat margin of 35 is needed to push the factorial
    tail below the trim threshold.
    """
    if s < 0:
        raise WalkLawError("s must be >= 0")
    if s == 0:
        return np.array([1.0])
    hi = int(math.ceil(s + max(35.0, 18.0 * math.sqrt(s))))
    x = np.arange(0, hi + 1)
    logp = -s + x * math.log(s) - gammaln(x + 1)
    return np.exp(logp)


def _trim(lo: int, pmf: np.ndarray) -> tuple[int, np.ndarray]:
    keep = np.flatnonzero(np.cumsum(pmf) >= _TRIM)
    first = int(keep[0]) if len(keep) else 0
    tail = np.cumsum(pmf[::-1])[::-1]
    keep_hi = np.flatnonzero(tail >= _TRIM)
    last = int(keep_hi[-1]) if len(keep_hi) else len(pmf) - 1
    return lo + first, np.ascontiguousarray(pmf[first : last + 1])


def poisson_law(s: float) -> LatticeWalkLaw:
    pmf = _poisson_window(float(s))
    lo, pmf = _trim(0, pmf)
    return LatticeWalkLaw(kind="poisson", s=float(s), lo=lo, pmf=pmf)


def srw_law(s: float) -> LatticeWalkLaw:
    """Rate-1 continuous-time SRW on Z at time s, as a Skellam(s/2, s/2)."""
    s = float(s)
    if s < 0:
        raise WalkLawError("s must be >= 0")
    if s == 0:
        return LatticeWalkLaw(kind="srw", s=0.0, lo=0, pmf=np.array([1.0]))
    half = _poisson_window(s / 2.0)
    pmf = np.convolve(half, half[::-1])
    pmf = 0.5 * (pmf + pmf[::-1])  # exact symmetry about 0
    lo, pmf = _trim(-(len(half) - 1), pmf)
    # keep the window symmetric so pmf(x) == pmf(-x) exactly
    m = max(-lo, lo + len(pmf) - 1)
    sym = np.zeros(2 * m + 1)
    sym[lo + m : lo + m + len(pmf)] = pmf
    return LatticeWalkLaw(kind="srw", s=s, lo=-m, pmf=sym)


@lru_cache(maxsize=4096)
def _law_cached(kind: str, s: float) -> LatticeWalkLaw:
    return poisson_law(s) if kind == "poisson" else srw_law(s)


def make_law(kind: str, s: float) -> LatticeWalkLaw:
    if kind not in ("poisson", "srw"):
        raise WalkLawError(f"unknown kind {kind!r}")
    return _law_cached(kind, float(s))


def entropy(law: LatticeWalkLaw) -> float:
    """Shannon entropy -sum p log p in nats, accumulated smallest-first."""
    p = law.pmf[law.pmf > 0]
    terms = -(p * np.log(p))
    return math.fsum(np.sort(terms))


def entropy_directed_closed_form(s: float) -> float:
    """Entropy of Poisson(s) via the series s log(1/s) + s + E[log X!].

    Equals entropy(poisson_law(s)) identically; evaluated independently as
    a weighted sum of log-factorials with truncation error <= 1e-12.
    """
    s = float(s)
    if s < 0:
        raise WalkLawError("s must be >= 0")
    if s == 0:
        return 0.0
    hi = int(math.ceil(s + max(35.0, 12.0 * math.sqrt(s))))
    ell = np.arange(2, hi + 1)
    lf = gammaln(ell + 1.0)
    weights = np.exp(-s + ell * math.log(s) - lf)
    series = math.fsum(np.sort(weights * lf))
    return s * math.log(1.0 / s) + s + series


def q_moments(law: LatticeWalkLaw) -> QMoments:
    """Moments of Q_1 = -log pmf(W_1) under the law itself."""
    p = law.pmf[law.pmf > 0]
    q = -np.log(p)
    mean = math.fsum(np.sort(p * q))
    c = q - mean
    var = math.fsum(np.sort(p * c * c))
    fourth = math.fsum(np.sort(p * c**4))
    return QMoments(mean_Q1=mean, var_Q1=var, fourth_central_Q1=fourth)


def r_alpha(law: LatticeWalkLaw, k: int) -> int:
    """Smallest integer r with P(|W_1 - E W_1| > r) <= k^{-3/2}.

    The deviation event is evaluated on the integer support against the
    exact real mean (no rounding).  Deviations are compared with a small
    absolute slack so that window truncation, which perturbs the computed
    mean by O(1e-14), cannot flip a point across the threshold |w - E| = r.
    """
    if k < 2:
        raise WalkLawError("k must be >= 2")
    threshold = float(k) ** -1.5
    dev = np.abs(law.support - law.mean) - 1e-9
    order = np.argsort(dev)
    sorted_dev = dev[order]
    p = law.pmf[order]
    # suffix[i] = exact mass of points with deviation rank >= i
    suffix = np.concatenate([np.cumsum(p[::-1])[::-1], [0.0]])
    r = 0
    while True:
        idx = int(np.searchsorted(sorted_dev, r, side="right"))
        if suffix[idx] <= threshold:
            return r
        r += 1


def p_alpha(law: LatticeWalkLaw, r: int) -> float:
    """Minimum point mass on the integer window of half-width r around the
    rounded mean, clamped to the support lattice (a Poisson window may
    otherwise reach below zero, where the mass is identically zero)."""
    if r < 0:
        raise WalkLawError("r must be >= 0")
    c = round(law.mean)
    lo = max(c - r, law.lo)
    hi = min(c + r, law.hi)
    if lo > hi:
        raise WalkLawError("window does not meet the support")
    return min(law.prob(j) for j in range(lo, hi + 1))


def tail_stats(law: LatticeWalkLaw, r: int) -> dict[str, float]:
    """Exact tail and point probabilities at distance r from the law's centre.

    Centre is s for the poisson kind (so events are {X >= s+r} etc., which
    requires s+r integral) and 0 for the srw kind.
    """
    if r < 0:
        raise WalkLawError("r must be >= 0")
    centre = law.s if law.kind == "poisson" else 0.0
    up = centre + r
    lo_pt = centre - r
    if abs(up - round(up)) > 1e-9:
        raise WalkLawError(f"s+r = {up} is not on the law's lattice")
    up, lo_pt = int(round(up)), int(round(lo_pt))
    sup = law.support
    upper_tail = float(np.sum(law.pmf[sup >= up]))
    lower_tail = float(np.sum(law.pmf[sup <= lo_pt]))
    upper_point = law.prob(up)
    lower_point = law.prob(lo_pt)
    if upper_point == 0.0 or (lo_pt >= law.lo and lower_point == 0.0 and law.kind == "srw"):
        raise WalkLawError(f"point probability vanishes at r={r}; window truncated")
    return {
        "upper_tail": upper_tail,
        "upper_point": upper_point,
        "lower_tail": lower_tail,
        "lower_point": lower_point,
    }
