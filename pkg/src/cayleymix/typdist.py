"""Lattice-ball counting, minimal radii, and graph / L_p distances on
sampled Cayley graphs."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .group import AbelianGroupSpec, GeneratorMultiset

BFS_MAX = 10**8
ENUM_BUDGET = 10**8
BRUTE_K_MAX = 6


class TypDistError(ValueError):
    pass


@dataclass(frozen=True)
class BallCount:
    k: int
    p: float
    R: float
    count: float  # int in exact mode
    exactness: str  # "exact" or "volume-approx"


@dataclass(frozen=True)
class DistanceHistogram:
    group: AbelianGroupSpec
    counts: dict[int, int]
    reached: int
    directed: bool
    p: float | None = None  # None: graph metric

    @property
    def max_distance(self) -> int:
        return max(self.counts)


def ball_count_l1(k: int, R: float, directed: bool = False) -> BallCount:
    """Exact number of lattice points with L1 norm <= R.

    Undirected: sum over the number i of nonzero coordinates of
    2^i C(k,i) C(floor(R), i).  Directed (nonnegative orthant): the simplex
    count C(floor(R)+k, k).
    """
    if k < 1 or R < 0:
        raise TypDistError("need k >= 1, R >= 0")
    fR = int(math.floor(R))
    if directed:
        count = math.comb(fR + k, k)
    else:
        count = sum((2**i) * math.comb(k, i) * math.comb(fR, i) for i in range(0, min(k, fR) + 1))
    return BallCount(k=k, p=1.0, R=R, count=count, exactness="exact")


def ball_count_linf(k: int, R: float, directed: bool = False) -> BallCount:
    if k < 1 or R < 0:
        raise TypDistError("need k >= 1, R >= 0")
    fR = int(math.floor(R))
    count = (fR + 1) ** k if directed else (2 * fR + 1) ** k
    return BallCount(k=k, p=math.inf, R=R, count=count, exactness="exact")


def ball_volume_lp(k: int, p: float, R: float) -> float:
    """Volume of the L_p ball of radius R in R^k via log-gamma."""
    if not (1 <= p < math.inf) or R <= 0:
        raise TypDistError("need p in [1, inf), R > 0")
    log_v = k * (math.log(2.0) + math.lgamma(1.0 / p + 1.0) + math.log(R)) - math.lgamma(k / p + 1.0)
    return math.exp(log_v)


def brute_force_count(k: int, p: float, R: float, directed: bool = False) -> int:
    """Direct enumeration of lattice points in the ball; test oracle and
    exact fallback for small k."""
    fR = int(math.floor(R))
    total = 0

    def rec(depth: int, budget_p: float):
        nonlocal total
        if depth == k:
            total += 1
            return
        limit = int(math.floor(budget_p ** (1.0 / p))) if p < math.inf else fR
        rng = range(0, limit + 1) if directed else range(-limit, limit + 1)
        for x in rng:
            rem = budget_p - (abs(x) ** p if p < math.inf else 0)
            if p == math.inf or rem >= -1e-12:
                rec(depth + 1, rem)

    rec(0, float(R) ** p if p < math.inf else float(R))
    return total


def ball_count_lp(k: int, p: float, R: float, directed: bool = False) -> BallCount:
    if p == 1.0:
        return ball_count_l1(k, R, directed)
    if p == math.inf:
        return ball_count_linf(k, R, directed)
    if not 1 < p < math.inf:
        raise TypDistError(f"p = {p} out of range")
    if R >= k ** (1.0 + 1.0 / p):
        vol = ball_volume_lp(k, p, R)
        if directed:
            vol /= 2.0**k
        return BallCount(k=k, p=p, R=R, count=vol, exactness="volume-approx")
    if k > BRUTE_K_MAX:
        raise TypDistError(f"R < k^(1+1/p) and k > {BRUTE_K_MAX}: no counting mode")
    return BallCount(k=k, p=p, R=R, count=brute_force_count(k, p, R, directed), exactness="exact")


def default_radius_omega(k: int, n: int) -> float:
    return max(math.log(k) ** 2, k / n ** (1.0 / (2.0 * k)))


def minimal_radius(k: int, p: float, n: int, omega: float | None = None, directed: bool = False) -> dict:
    """Minimal integer M with |B_{k,p}(M)| >= n e^omega."""
    if omega is None:
        omega = default_radius_omega(k, n)
    target = n * math.exp(omega)
    hi = 1
    while ball_count_lp(k, p, hi, directed).count < target:
        hi *= 2
    lo = hi // 2
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if ball_count_lp(k, p, mid, directed).count >= target:
            hi = mid
        else:
            lo = mid
    if ball_count_lp(k, p, lo, directed).count >= target:
        hi = lo
    achieved = ball_count_lp(k, p, hi, directed)
    return {"M": hi, "count": achieved.count, "omega": omega, "exactness": achieved.exactness}


def reference_radius(k: int, p: float, n: int, directed: bool = False) -> float:
    """Closed-form reference radius k^{1/p} n^{1/k} / C_p (halved target for
    the directed orthant via the doubled constant)."""
    if p == math.inf:
        return n ** (1.0 / k) if directed else 0.5 * n ** (1.0 / k)
    cp = 2.0 * math.exp(math.lgamma(1.0 / p + 1.0)) * (p * math.e) ** (1.0 / p)
    if directed:
        cp *= 2.0
    return k ** (1.0 / p) * n ** (1.0 / k) / cp


def graph_distances(spec: AbelianGroupSpec, gens: GeneratorMultiset, directed: bool) -> DistanceHistogram:
    """BFS from the identity over x -> x + Z_i (and x - Z_i if undirected)."""
    if spec.n > BFS_MAX:
        raise TypDistError(f"n = {spec.n} exceeds BFS limit {BFS_MAX}")
    moduli = np.array(spec.side_lengths, dtype=np.int64)
    strides = np.array(spec.strides, dtype=np.int64)
    steps = [np.array(z, dtype=np.int64) for z in gens.elems]
    if not directed:
        steps += [(-s) % moduli for s in steps]
    steps_arr = np.ascontiguousarray(np.array(steps, dtype=np.int64))
    dist = _kernels.bfs_distances(moduli, strides, steps_arr, spec.n)
    reached_mask = dist >= 0
    values, freq = np.unique(dist[reached_mask], return_counts=True)
    counts = {int(v): int(c) for v, c in zip(values, freq)}
    return DistanceHistogram(
        group=spec, counts=counts, reached=int(reached_mask.sum()), directed=directed, p=None
    )


def lp_distances(spec: AbelianGroupSpec, gens: GeneratorMultiset, p: float, R_max: float, directed: bool = False) -> DistanceHistogram:
    """L_p word distances by best-first expansion of lattice points.

    Points are settled in order of nondecreasing ||x||_p; the first arrival
    at a group element fixes its distance (every lattice point admits a
    coordinatewise-monotone path from 0 with nondecreasing norm).
    """
    k = gens.k
    if k > 12:
        raise TypDistError("k > 12 exceeds the enumeration budget")
    est = ball_count_lp(k, p, max(R_max, 1.0), directed).count
    if est > ENUM_BUDGET:
        raise TypDistError(f"ball size {est:.3g} exceeds enumeration budget")
    moduli = spec.side_lengths

    def norm(x: tuple[int, ...]) -> float:
        if p == math.inf:
            return float(max(abs(c) for c in x))
        if p == 1.0:
            return float(sum(abs(c) for c in x))
        return float(sum(abs(c) ** p for c in x)) ** (1.0 / p)

    def group_index(x: tuple[int, ...]) -> int:
        coords = [0] * len(moduli)
        for xi, z in zip(x, gens.elems):
            for j, m in enumerate(moduli):
                coords[j] = (coords[j] + xi * z[j]) % m
        idx = 0
        for c, s in zip(coords, spec.strides):
            idx += c * s
        return idx

    origin = (0,) * k
    heap: list[tuple[float, tuple[int, ...]]] = [(0.0, origin)]
    seen_points = {origin}
    settled: dict[int, float] = {}
    budget = ENUM_BUDGET
    while heap:
        nrm, x = heapq.heappop(heap)
        if nrm > R_max + 1e-12:
            break
        gi = group_index(x)
        if gi not in settled:
            settled[gi] = nrm
            if len(settled) == spec.n:
                break
        for i in range(k):
            deltas = (1,) if directed else (1, -1)
            for dsign in deltas:
                y = x[:i] + (x[i] + dsign,) + x[i + 1 :]
                if y in seen_points:
                    continue
                ny = norm(y)
                if ny <= R_max + 1e-12:
                    seen_points.add(y)
                    heapq.heappush(heap, (ny, y))
                    budget -= 1
                    if budget <= 0:
                        raise TypDistError("enumeration budget exceeded")
    counts: dict[int, int] = {}
    for d in settled.values():
        key = int(round(d)) if p == 1.0 or p == math.inf else int(math.ceil(d - 1e-12))
        counts[key] = counts.get(key, 0) + 1
    return DistanceHistogram(group=spec, counts=counts, reached=len(settled), directed=directed, p=p)


def quantile(hist: DistanceHistogram, beta: float) -> int:
    """D(beta): minimal radius whose ball covers a beta-fraction of G."""
    n = hist.group.n
    if not 0 < beta <= hist.reached / n:
        raise TypDistError(f"beta = {beta} unattainable (coverage {hist.reached / n:.4f})")
    acc = 0
    for d in sorted(hist.counts):
        acc += hist.counts[d]
        if acc >= beta * n:
            return d
    raise TypDistError("unreachable")
