"""Q-statistics, typicality, the deterministic TV lower bound, the Gaussian
cutoff profile, and the collapsed estimator of the modified-L2 quantity."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .entropic import EntropicSchedule, solve_t_alpha
from .group import AbelianGroupSpec, element_of, index_of
from .walklaw import LatticeWalkLaw, make_law, r_alpha

BRUTE_FORCE_MAX = 10**7


class MixingStatsError(ValueError):
    pass


@dataclass(frozen=True)
class TypicalitySpec:
    law: LatticeWalkLaw
    k: int
    r: int
    global_log_threshold: float  # log n + omega


@dataclass(frozen=True)
class QSample:
    q: float
    w: tuple[int, ...]
    locally_typical: bool | None
    globally_typical: bool | None


def psi(alpha: float) -> float:
    """Standard normal upper tail P(N(0,1) >= alpha)."""
    return 0.5 * math.erfc(alpha / math.sqrt(2.0))


def _draw_coords(law: LatticeWalkLaw, rng: np.random.Generator, shape) -> np.ndarray:
    """Inverse-CDF sampling of window indices (not values)."""
    cum = np.cumsum(law.pmf)
    cum[-1] = 1.0
    u = rng.random(shape)
    return np.searchsorted(cum, u, side="right").clip(0, len(law.pmf) - 1)


def _q_of(law: LatticeWalkLaw, idx: np.ndarray) -> np.ndarray:
    logp = np.full(len(law.pmf), np.inf)
    pos = law.pmf > 0
    logp[pos] = -np.log(law.pmf[pos])
    return logp[idx]


def sample_Q(law: LatticeWalkLaw, k: int, trials: int, seed: int, typ: TypicalitySpec | None = None) -> list[QSample]:
    """trials iid draws of the k-coordinate vector W with Q = sum -log pmf(W_i)."""
    if trials < 1:
        raise MixingStatsError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    idx = _draw_coords(law, rng, (trials, k))
    w = idx + law.lo
    q = _q_of(law, idx).sum(axis=1)
    if typ is not None:
        loc = (np.abs(w - law.mean).max(axis=1) <= typ.r + 1e-9).tolist()
        glob = (q >= typ.global_log_threshold).tolist()
    else:
        loc = glob = [None] * trials
    return [
        QSample(q=float(q[i]), w=tuple(int(x) for x in w[i]), locally_typical=loc[i], globally_typical=glob[i])
        for i in range(trials)
    ]


def _q_sums(kind: str, t: float, k: int, trials: int, seed: int) -> np.ndarray:
    law = make_law(kind, t / k)
    rng = np.random.default_rng(seed)
    idx = _draw_coords(law, rng, (trials, k))
    return _q_of(law, idx).sum(axis=1)


def lower_bound_estimate(schedule: EntropicSchedule, t: float, omega: float, trials: int, seed: int) -> dict:
    """Monte-Carlo value of P(Q(t) <= log n - omega) - e^{-omega}.

    Valid as a TV lower bound for every generator multiset; may be negative
    (then vacuous), reported raw.
    """
    if omega <= 0:
        raise MixingStatsError("omega must be > 0")
    q = _q_sums(schedule.kind, t, schedule.k, trials, seed)
    phat = float(np.mean(q <= math.log(schedule.n) - omega))
    return {
        "value": phat - math.exp(-omega),
        "stderr": math.sqrt(phat * (1.0 - phat) / trials),
        "phat": phat,
    }


def clt_profile(schedule: EntropicSchedule, alphas, trials: int, seed: int) -> list[dict]:
    """alpha -> P-hat(Q(t_alpha) <= log n - omega), against the Gaussian tail."""
    rows = []
    for i, alpha in enumerate(alphas):
        t = solve_t_alpha(schedule, alpha)
        q = _q_sums(schedule.kind, t, schedule.k, trials, seed + i)
        phat = float(np.mean(q <= math.log(schedule.n) - schedule.omega))
        rows.append(
            {
                "alpha": float(alpha),
                "t": t,
                "phat": phat,
                "stderr": math.sqrt(phat * (1.0 - phat) / trials),
                "psi": psi(alpha),
            }
        )
    return rows


def typicality_spec(spec: AbelianGroupSpec, schedule: EntropicSchedule, alpha: float, omega: float | None = None) -> TypicalitySpec:
    t = solve_t_alpha(schedule, alpha)
    law = make_law(schedule.kind, t / schedule.k)
    om = schedule.omega if omega is None else omega
    return TypicalitySpec(
        law=law,
        k=schedule.k,
        r=r_alpha(law, schedule.k),
        global_log_threshold=math.log(spec.n) + om,
    )


def estimate_D_alpha(
    spec: AbelianGroupSpec,
    k: int,
    schedule: EntropicSchedule,
    alpha: float,
    trials: int,
    seed: int,
    omega: float | None = None,
    batch: int = 1 << 16,
) -> dict:
    """Estimate n P(V.Z = 0 | typical) - 1 with the generator average
    collapsed exactly.

    ``trials`` counts accepted (jointly typical) pairs.  Per accepted pair
    with difference vector V != 0 the conditional hitting probability of the
    identity is prod_j gcd(V_1,...,V_k,m_j)/m_j exactly; V = 0 contributes 1.
    """
    typ = typicality_spec(spec, schedule, alpha, omega)
    law, r = typ.law, typ.r
    if 2 * r >= min(spec.side_lengths):
        raise MixingStatsError(f"local radius 2r = {2 * r} not below min side {min(spec.side_lengths)}")
    rng = np.random.default_rng(seed)
    moduli = np.array(spec.side_lengths, dtype=np.int64)
    n = spec.n
    contribs: list[np.ndarray] = []
    accepted = 0
    proposed = 0
    singles_typical = 0
    singles_drawn = 0
    max_proposed = max(200, trials) * 10_000
    while accepted < trials:
        if proposed > max_proposed:
            if accepted == 0:
                raise MixingStatsError("zero accepted pairs")
            break
        idx = _draw_coords(law, rng, (2 * batch, k))
        w = idx + law.lo
        q = _q_of(law, idx).sum(axis=1)
        typical = (np.abs(w - law.mean).max(axis=1) <= r + 1e-9) & (q >= typ.global_log_threshold)
        w1, w2 = w[:batch], w[batch:]
        ok = typical[:batch] & typical[batch:]
        proposed += batch
        singles_typical += int(np.count_nonzero(typical))
        singles_drawn += 2 * batch
        v = np.abs(w1[ok] - w2[ok]).astype(np.int64)
        g = np.gcd.reduce(v, axis=1)  # gcd(0, x) = x, so zeros drop out
        c = np.ones(len(g))
        nonzero = g > 0
        for m in moduli:
            c[nonzero] *= np.gcd(g[nonzero], m) / m
        contribs.append(c)
        accepted += len(c)
    all_c = np.concatenate(contribs) if contribs else np.array([])
    mean = float(all_c.mean())
    stderr = float(all_c.std(ddof=1) / math.sqrt(len(all_c))) if len(all_c) > 1 else float("inf")
    return {
        "estimate": n * mean - 1.0,
        "stderr": n * stderr,
        "p_typ": singles_typical / singles_drawn if singles_drawn else 0.0,
        "pair_rate": accepted / proposed if proposed else 0.0,
        "accepted": int(accepted),
        "r": r,
    }


def verify_vz_uniform(spec: AbelianGroupSpec, v) -> dict:
    """Brute-force check that v.Z over uniform Z is uniform on the subgroup
    prod_j g_j Z_{m_j/g_j}, g_j = gcd(v_1,...,v_k,m_j).  Exact equality."""
    k = len(v)
    if spec.n**k > BRUTE_FORCE_MAX:
        raise MixingStatsError("group too large for brute force")
    g = [math.gcd(*(abs(int(x)) for x in v), m) for m in spec.side_lengths]
    counts = np.zeros(spec.n, dtype=np.int64)
    for z in product(*[product(*(range(m) for m in spec.side_lengths)) for _ in range(k)]):
        coords = tuple(
            sum(int(v[i]) * z[i][j] for i in range(k)) % m for j, m in enumerate(spec.side_lengths)
        )
        counts[index_of(spec, coords)] += 1
    support_size = 1
    for m, gj in zip(spec.side_lengths, g):
        support_size *= m // gj
    expected_each = spec.n**k // support_size
    observed_support = np.flatnonzero(counts)
    on_subgroup = all(
        all(c % gj == 0 for c, gj in zip(element_of(spec, int(i)), g)) for i in observed_support
    )
    uniform = bool(np.all(counts[observed_support] == expected_each)) and len(observed_support) == support_size
    return {
        "ok": uniform and on_subgroup,
        "gcds": g,
        "support_size": support_size,
        "expected_count": expected_each,
        "counts": counts,
    }
