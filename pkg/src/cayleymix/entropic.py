"""Entropic and cutoff times.

t_0 is the time at which one rate-1/k coordinate carries entropy (log n)/k;
t_alpha shifts the target by alpha*sqrt(v*k)/k where v is the variance of
the coordinate's information content at t_0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .walklaw import entropy, make_law, q_moments

ENTROPY_TOL = 1e-10
MAX_ITER = 200
# kappa = k / log n thresholds separating the sparse / comparable / dense regimes
KAPPA_LO = 0.2
KAPPA_HI = 5.0


class EntropicError(ValueError):
    pass


@dataclass(frozen=True)
class EntropicSchedule:
    kind: str
    k: int
    n: int
    t0: float
    v: float
    omega: float
    kappa: float

    def entropy_target(self, alpha: float) -> float:
        return (math.log(self.n) + alpha * math.sqrt(self.v * self.k)) / self.k


def _entropy_at(kind: str, s: float) -> float:
    return entropy(make_law(kind, s))


def _solve_s(kind: str, target: float) -> float:
    """Invert the strictly increasing map s -> entropy(kind, s)."""
    if target <= 0:
        raise EntropicError(f"entropy target {target} <= 0; alpha too negative")
    s_hi = 1.0
    for _ in range(MAX_ITER):
        if _entropy_at(kind, s_hi) >= target:
            break
        s_hi *= 2.0
    else:
        raise EntropicError("could not bracket entropy target")
    s = brentq(
        lambda x: _entropy_at(kind, x) - target,
        0.0,
        s_hi,
        xtol=1e-300,
        rtol=8.9e-16,
        maxiter=MAX_ITER,
    )
    if abs(_entropy_at(kind, s) - target) > ENTROPY_TOL:
        raise EntropicError("entropy tolerance not reached")
    return float(s)


def solve_t0(kind: str, k: int, n: int) -> EntropicSchedule:
    if k < 2 or n < 3:
        raise EntropicError("need k >= 2 and n >= 3")
    target = math.log(n) / k
    s0 = _solve_s(kind, target)
    v = q_moments(make_law(kind, s0)).var_Q1
    return EntropicSchedule(
        kind=kind,
        k=k,
        n=n,
        t0=s0 * k,
        v=v,
        omega=(v * k) ** 0.25,
        kappa=k / math.log(n),
    )


def solve_t_alpha(schedule: EntropicSchedule, alpha: float) -> float:
    """Time at which the coordinate entropy hits the alpha-shifted target."""
    return _solve_s(schedule.kind, schedule.entropy_target(alpha)) * schedule.k


def default_omega(schedule: EntropicSchedule) -> float:
    return (schedule.v * schedule.k) ** 0.25


def asymptotic_t0(kind: str, k: int, n: int) -> dict:
    """Closed-form t0 estimate in the sparse/dense regimes; solver value between."""
    if k < 2 or n < 3:
        raise EntropicError("need k >= 2 and n >= 3")
    kappa = k / math.log(n)
    if kappa < KAPPA_LO:
        return {"regime": "<", "estimate": k * n ** (2.0 / k) / (2.0 * math.pi * math.e)}
    if kappa > KAPPA_HI:
        return {"regime": ">", "estimate": k / (kappa * math.log(kappa))}
    return {"regime": "=", "estimate": solve_t0(kind, k, n).t0}


def validate_hypotheses(spec, k: int, which: str, eta: float = 0.5, p: float = 1.0) -> dict:
    """Check the small-print side conditions of the cutoff / typical-distance
    claims at finite n.

    Returns per-clause booleans with computed margins; the asymptotic limits
    are reported as finite-n ratios for the experimenter to judge.  Never
    raises on a failed clause.
    """
    n, d, m_star = spec.n, spec.dim, spec.min_side
    logn, logk = math.log(n), math.log(k)
    report: dict = {"which": which, "k": k, "n": n, "d": d, "m_star": m_star}
    if which == "cutoff":
        min_side_rhs = n ** (1.0 / k) * logk**2
        loglogk = math.log(logk) if logk > 0 else float("-inf")
        branch_a_lhs = d * (1.0 / k + 2.0 * loglogk / logn)
        logloglogn = math.log(math.log(logn))
        report["clauses"] = {
            "min_side": {"ok": m_star > min_side_rhs, "lhs": m_star, "rhs": min_side_rhs},
            "branch_small_k": {
                "ok": k <= eta * logn / 3.0 and branch_a_lhs <= 1.0 - eta,
                "k_bound": eta * logn / 3.0,
                "d_expr": branch_a_lhs,
                "d_bound": 1.0 - eta,
                "eta": eta,
            },
            "branch_large_k": {
                "ok": k >= logn / (4.0 * logloglogn) and d <= logn / (30.0 * logk),
                "k_bound": logn / (4.0 * logloglogn),
                "d_bound": logn / (30.0 * logk),
            },
        }
        report["ok"] = report["clauses"]["min_side"]["ok"] and (
            report["clauses"]["branch_small_k"]["ok"] or report["clauses"]["branch_large_k"]["ok"]
        )
    elif which == "typdist":
        ratio = k ** (1.0 / p) * n ** (1.0 / k) / m_star if p != math.inf else n ** (1.0 / k) / m_star
        kappa = k / logn
        report["clauses"] = {
            "side_ratio": {"ok": ratio < 1.0, "ratio": ratio, "comment": "wants -> 0"},
            "kappa": {"value": kappa, "comment": "p=inf wants -> 0; p in (1,inf) wants k <= log n/loglog n"},
            "p_range_k": {
                "ok": p == 1.0 or (p == math.inf and kappa < 1.0) or k <= logn / math.log(logn),
            },
            "dim_vs_k": {"ok": d < k, "d": d, "k": k},
        }
        report["ok"] = all(c.get("ok", True) for c in report["clauses"].values())
    else:
        raise EntropicError(f"unknown hypothesis set {which!r}")
    return report
