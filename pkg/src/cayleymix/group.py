"""Finite Abelian group arithmetic, canonical decomposition, generator sampling.

Groups are direct sums of cyclic factors Z_{m_1} + ... + Z_{m_d}.  Elements
are coordinate tuples, identified with flat indices through a mixed-radix
bijection (last coordinate fastest-varying), which is what the dense-array
modules index by.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

MAX_ORDER = 2**32
MAX_CLOSURE = 10**7


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class AbelianGroupSpec:
    """A fixed decomposition plus its canonical invariant-factor form."""

    side_lengths: tuple[int, ...]
    n: int
    invariant_factors: tuple[int, ...]
    dim: int
    min_side: int

    @property
    def strides(self) -> tuple[int, ...]:
        out = []
        acc = 1
        for m in reversed(self.side_lengths):
            out.append(acc)
            acc *= m
        return tuple(reversed(out))

    def __str__(self) -> str:
        return "x".join(str(m) for m in self.side_lengths)


@dataclass(frozen=True)
class GeneratorMultiset:
    """k iid-uniform group elements; repeats are kept (Cayley multigraph)."""

    elems: tuple[tuple[int, ...], ...]
    k: int
    seed: int


def _factorize(m: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def make_group(side_lengths) -> AbelianGroupSpec:
    """Build a group spec, computing invariant factors by prime-power regrouping.

    For each prime, the prime-power exponents across the given factors are
    sorted descending; the i-th invariant factor (largest first) is the
    product of the i-th largest prime power of every prime.
    """
    sides = tuple(int(m) for m in side_lengths)
    if not sides:
        raise GroupError("need at least one side length")
    n = 1
    for m in sides:
        if m < 2:
            raise GroupError(f"side length {m} < 2")
        n *= m
        if n > MAX_ORDER:
            raise GroupError(f"group order exceeds {MAX_ORDER}")

    by_prime: dict[int, list[int]] = {}
    for m in sides:
        for p, e in _factorize(m).items():
            by_prime.setdefault(p, []).append(e)
    depth = max(len(v) for v in by_prime.values())
    factors = []
    for i in range(depth):
        f = 1
        for p, exps in by_prime.items():
            exps_sorted = sorted(exps, reverse=True)
            if i < len(exps_sorted):
                f *= p ** exps_sorted[i]
        factors.append(f)
    factors.reverse()  # ascending: each divides the next
    return AbelianGroupSpec(
        side_lengths=sides,
        n=n,
        invariant_factors=tuple(factors),
        dim=len(factors),
        min_side=factors[0],
    )


def parse_group(literal: str) -> AbelianGroupSpec:
    """Parse the CLI group literal "m1xm2x...xmd", e.g. "65536" or "6x4"."""
    try:
        sides = [int(tok) for tok in literal.lower().split("x")]
    except ValueError as exc:
        raise GroupError(f"bad group literal {literal!r}") from exc
    return make_group(sides)


def _check_elem(spec: AbelianGroupSpec, elem) -> tuple[int, ...]:
    e = tuple(int(c) for c in elem)
    if len(e) != len(spec.side_lengths):
        raise GroupError("coordinate count mismatch")
    for c, m in zip(e, spec.side_lengths):
        if not 0 <= c < m:
            raise GroupError(f"coordinate {c} out of range [0,{m})")
    return e


def index_of(spec: AbelianGroupSpec, elem) -> int:
    e = _check_elem(spec, elem)
    return sum(c * s for c, s in zip(e, spec.strides))


def element_of(spec: AbelianGroupSpec, index: int) -> tuple[int, ...]:
    if not 0 <= index < spec.n:
        raise GroupError(f"index {index} out of range [0,{spec.n})")
    coords = []
    for m in reversed(spec.side_lengths):
        coords.append(index % m)
        index //= m
    return tuple(reversed(coords))


def add(spec: AbelianGroupSpec, a, b) -> tuple[int, ...]:
    ea, eb = _check_elem(spec, a), _check_elem(spec, b)
    return tuple((x + y) % m for x, y, m in zip(ea, eb, spec.side_lengths))


def neg(spec: AbelianGroupSpec, a) -> tuple[int, ...]:
    return scale(spec, -1, a)


def scale(spec: AbelianGroupSpec, c: int, a) -> tuple[int, ...]:
    ea = _check_elem(spec, a)
    return tuple((c * x) % m for x, m in zip(ea, spec.side_lengths))


def sample_generators(spec: AbelianGroupSpec, k: int, seed: int) -> GeneratorMultiset:
    """Draw k iid uniform elements, one exact uniform draw per coordinate."""
    if k < 1:
        raise GroupError("k must be >= 1")
    rng = np.random.default_rng(seed)
    cols = [rng.integers(0, m, size=k) for m in spec.side_lengths]
    elems = tuple(tuple(int(cols[j][i]) for j in range(len(cols))) for i in range(k))
    return GeneratorMultiset(elems=elems, k=k, seed=seed)


def dot(spec: AbelianGroupSpec, w, gens: GeneratorMultiset) -> tuple[int, ...]:
    """Evaluate the word sum(w_i * Z_i) in G."""
    if len(w) != gens.k:
        raise GroupError("weight vector length != k")
    coords = [0] * len(spec.side_lengths)
    for wi, z in zip(w, gens.elems):
        for j, (c, m) in enumerate(zip(z, spec.side_lengths)):
            coords[j] = (coords[j] + wi * c) % m
    return tuple(coords)


def subgroup_generated(spec: AbelianGroupSpec, gens: GeneratorMultiset) -> int:
    """Size of the subgroup generated by the multiset (closure under add/negate)."""
    if spec.n > MAX_CLOSURE:
        raise GroupError("group too large for closure; use spectral detection")
    steps = set()
    for z in gens.elems:
        steps.add(z)
        steps.add(neg(spec, z))
    ident = tuple(0 for _ in spec.side_lengths)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for z in steps:
                y = add(spec, x, z)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def element_order(spec: AbelianGroupSpec, elem) -> int:
    e = _check_elem(spec, elem)
    return math.lcm(*(m // math.gcd(c, m) for c, m in zip(e, spec.side_lengths)))
