"""Exact law of the continuous-time walk on G via the character transform.

The transition operator of the rate-1 walk is diagonal in the character
basis; the walk law at time t is recovered by a mixed-radix inverse
transform of the per-character heat factors exp(t(lambda - 1)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .group import AbelianGroupSpec, GeneratorMultiset

SPECTRAL_MAX = 2**22
RESIDUE_TOL = 1e-9
EIG_ONE_TOL = 1e-12


class SpectralError(ValueError):
    pass


@dataclass(frozen=True)
class CharacterSpectrum:
    group: AbelianGroupSpec
    directed: bool
    eigenvalues: np.ndarray  # flat, mixed-radix character index; complex

    def grid(self) -> np.ndarray:
        return self.eigenvalues.reshape(self.group.side_lengths)


@dataclass(frozen=True)
class DistributionOverGroup:
    group: AbelianGroupSpec
    probs: np.ndarray

    def __post_init__(self):
        total = float(self.probs.sum())
        if abs(total - 1.0) > 1e-9:
            raise SpectralError(f"probabilities sum to {total}")
        if float(self.probs.min()) < -1e-12:
            raise SpectralError("negative probability beyond tolerance")


def eigenvalues(spec: AbelianGroupSpec, gens: GeneratorMultiset, directed: bool) -> CharacterSpectrum:
    """Transition-operator eigenvalues, one per character.

    Directed walk: lambda_chi = (1/k) sum_j chi(Z_j); undirected each
    generator is used together with its inverse, giving the cosine average.
    """
    if spec.n > SPECTRAL_MAX:
        raise SpectralError(f"n = {spec.n} exceeds spectral limit {SPECTRAL_MAX}")
    dims = spec.side_lengths
    d = len(dims)
    lam = np.zeros(dims, dtype=complex if directed else float)
    axes = [np.arange(m) for m in dims]
    for z in gens.elems:
        theta = np.zeros(dims)
        for r in range(d):
            shape = [1] * d
            shape[r] = dims[r]
            theta = theta + (2.0 * math.pi * z[r] / dims[r]) * axes[r].reshape(shape)
        lam = lam + (np.exp(1j * theta) if directed else np.cos(theta))
    lam = lam / gens.k
    return CharacterSpectrum(group=spec, directed=directed, eigenvalues=lam.reshape(-1).astype(complex))


def walk_distribution(spectrum: CharacterSpectrum, t: float) -> DistributionOverGroup:
    """Law of the walk at time t >= 0 by inverse character transform."""
    if t < 0:
        raise SpectralError("t must be >= 0")
    factors = np.exp(t * (spectrum.grid() - 1.0))
    # p(x) = (1/n) sum_chi exp(t(lambda_chi - 1)) chi(x)^{-1}; with the
    # numpy forward-FFT sign convention this is fftn(.)/n.
    raw = np.fft.fftn(factors) / spectrum.group.n
    residue = float(np.abs(raw.imag).max())
    if residue > RESIDUE_TOL:
        raise SpectralError(f"imaginary residue {residue} exceeds {RESIDUE_TOL}")
    return DistributionOverGroup(group=spectrum.group, probs=raw.real.reshape(-1))


def tv_distance(dist: DistributionOverGroup) -> float:
    n = dist.group.n
    tv = 0.5 * float(np.abs(dist.probs - 1.0 / n).sum())
    l2 = l2_distance(dist)
    assert tv <= 0.5 * l2 + 1e-12, "TV exceeded half the L2 distance"
    return tv


def l2_distance(dist: DistributionOverGroup) -> float:
    n = dist.group.n
    return math.sqrt(n * float(np.square(dist.probs - 1.0 / n).sum()))


def tv_curve(spec: AbelianGroupSpec, gens: GeneratorMultiset, directed: bool, times) -> list[tuple[float, float, float]]:
    """(t, TV, L2) rows sharing one spectrum factorisation."""
    spectrum = eigenvalues(spec, gens, directed)
    out = []
    for t in times:
        dist = walk_distribution(spectrum, float(t))
        out.append((float(t), tv_distance(dist), l2_distance(dist)))
    return out


def detect_non_generating(spectrum: CharacterSpectrum) -> bool:
    """True iff the eigenvalue 1 has multiplicity > 1, i.e. the generators
    fall in a proper subgroup."""
    return int(np.count_nonzero(np.abs(spectrum.eigenvalues - 1.0) <= EIG_ONE_TOL)) > 1
