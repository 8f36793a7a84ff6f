"""Seeded generators of harmonic self-maps of the disk."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ..errors import DomainError, GenerationError
from ..harmonic import GridSpec, HarmonicMap, boundary_maximum, canonical, is_sense_preserving
from ..series import DEFAULT_ORDER, ComplexSeries
from ..transforms import MobiusAutomorphism, order_for_tail

REJECTION_BUDGET = 1000
BOUNDARY_SAMPLES = 2048
NORMALIZATION_SLACK = 1e-9


class Family(str, Enum):
    POLYNOMIAL = "polynomial"
    POISSON_EXTENSION = "poisson_extension"
    MOBIUS_WITNESS = "mobius_witness"


_FAMILY_CODE = {Family.POLYNOMIAL: 1, Family.POISSON_EXTENSION: 2, Family.MOBIUS_WITNESS: 3}


@dataclass(frozen=True)
class SampleSpec:
    """Recipe for one generated map.

    ``zero`` places the zero of order ``p`` (polynomial and Mobius
    families); ``rotation`` is the unimodular factor of the Mobius family.
    """

    seed: int
    p: int = 1
    degree: int = 4
    family: Family = Family.POLYNOMIAL
    decay: float = 0.5
    zero: complex = 0j
    rotation: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "zero", complex(self.zero))
        if self.p < 1:
            raise DomainError("p must be >= 1")
        if self.degree < self.p:
            raise DomainError("degree must be >= p")
        if not 0.0 < self.decay < 1.0:
            raise DomainError("decay must lie in (0, 1)")
        if abs(self.zero) >= 1.0:
            raise DomainError("the zero must lie inside the disk")


@dataclass(frozen=True)
class Sample:
    spec: SampleSpec
    map: HarmonicMap
    alpha: complex = 1 + 0j
    attempts: int = 1
    extras: dict = field(default_factory=dict)


def rng_for(spec: SampleSpec, stream: int = 0) -> np.random.Generator:
    key = [spec.seed & 0xFFFFFFFFFFFFFFFF, spec.p, spec.degree, _FAMILY_CODE[spec.family], stream]
    return np.random.default_rng(key)


def _complex_normal(rng: np.random.Generator, n: int) -> np.ndarray:
    return (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / math.sqrt(2.0)


def _vanishing_product(a: complex, p: int, poly: np.ndarray) -> np.ndarray:
    # coefficients of (z - a)^p * poly(z) about 0
    root = np.array([1.0 + 0j])
    for _ in range(p):
        root = np.convolve(root, [-a, 1.0])
    return np.convolve(root, poly)


def polynomial_map(A, B, p: int, zero: complex = 0j, order: int = DEFAULT_ORDER) -> HarmonicMap:
    """Canonical form of ``h = (z-zero)^p A(z)``, ``g = (z-zero)^p B(z)``."""
    hc = _vanishing_product(complex(zero), p, np.asarray(A, dtype=np.complex128))
    gc = _vanishing_product(complex(zero), p, np.asarray(B, dtype=np.complex128))
    n = max(order, hc.size - 1)
    return canonical(HarmonicMap.from_coeffs(hc, gc, order=n))


def normalize_to_disk(w: HarmonicMap, slack: float = NORMALIZATION_SLACK) -> tuple[HarmonicMap, complex]:
    """Scale so that ``max_T |w| = 1/(1+slack)``; returns the map and the maximizing point."""
    m, t = boundary_maximum(w, BOUNDARY_SAMPLES)
    if m <= 0:
        raise GenerationError("map vanishes on the boundary sample")
    return w.scaled(1.0 / (m * (1.0 + slack))), complex(math.cos(t), math.sin(t))


def _dilatation_factor(coeffs: np.ndarray, p: int, a: complex) -> np.ndarray:
    # h = (z-a)^p A  =>  h' = (z-a)^(p-1) (p A + (z-a) A'); returns p A + (z-a) A'
    A = np.polynomial.Polynomial(coeffs)
    shift = np.polynomial.Polynomial([-a, 1.0])
    return (p * A + shift * A.deriv()).coef.astype(np.complex128)


def _draw_polynomial(spec: SampleSpec, grid: GridSpec) -> Sample:
    """Draw ``A``, ``B``; reject when ``h'`` has a zero in the disk other than
    the one forced at ``zero``, otherwise rescale ``B`` so that the
    dilatation ``g'/h'`` (analytic on the closed disk) stays below 1 on the
    circle, hence everywhere inside.
    """
    rng = rng_for(spec)
    m = spec.degree - spec.p + 1
    damp = spec.decay ** np.arange(m)
    circle = np.exp(2j * np.pi * np.arange(BOUNDARY_SAMPLES) / BOUNDARY_SAMPLES)
    for attempt in range(1, REJECTION_BUDGET + 1):
        A = _complex_normal(rng, m) * damp
        B = _complex_normal(rng, m) * damp
        u = rng.uniform(0.05, 0.95)
        qa = _dilatation_factor(A, spec.p, spec.zero)
        roots = np.roots(qa[::-1]) if qa.size > 1 else np.array([])
        if np.any(np.abs(roots) <= 1.0):
            continue
        qb = _dilatation_factor(B, spec.p, spec.zero)
        ratio = float(np.max(np.abs(np.polyval(qb[::-1], circle) / np.polyval(qa[::-1], circle))))
        if ratio >= 0.95:
            B = B * (u / ratio)
        w = polynomial_map(A, B, spec.p, spec.zero)
        if not is_sense_preserving(w, grid):
            continue
        w, alpha = normalize_to_disk(w)
        return Sample(spec, w, alpha, attempt)
    raise GenerationError(
        f"no sense-preserving polynomial map after {REJECTION_BUDGET} draws "
        f"(seed={spec.seed}, p={spec.p}, degree={spec.degree}, decay={spec.decay})"
    )


def _draw_poisson(spec: SampleSpec) -> Sample:
    """Harmonic extension of ``F(t) = rho(t) exp(i(theta0 + p t + eps(t)))``.

    ``rho`` in ``[1/2, 1]`` and the phase perturbation ``eps`` are low-degree
    trigonometric polynomials, so ``|F| <= 1`` and the Fourier tail beyond
    the truncation order is negligible.
    """
    rng = rng_for(spec)
    n = BOUNDARY_SAMPLES
    t = 2.0 * np.pi * np.arange(n) / n
    theta0 = rng.uniform(0.0, 2.0 * np.pi)
    k = np.arange(1, 5)
    amp = 0.5 * spec.decay ** (k - 1)
    ca, sa = rng.standard_normal(4) * amp, rng.standard_normal(4) * amp
    eps = (ca[:, None] * np.cos(k[:, None] * t) + sa[:, None] * np.sin(k[:, None] * t)).sum(axis=0)
    depth, t1 = rng.uniform(0.0, 0.5), rng.uniform(0.0, 2.0 * np.pi)
    rho = 1.0 - depth * 0.5 * (1.0 + np.cos(t - t1))
    F = rho * np.exp(1j * (theta0 + spec.p * t + eps))
    c = np.fft.fft(F) / n
    N = DEFAULT_ORDER
    h = c[: N + 1]
    g = np.zeros(N + 1, dtype=np.complex128)
    g[1:] = np.conj(c[-1 : -N - 1 : -1])
    return Sample(spec, HarmonicMap(ComplexSeries(h), ComplexSeries(g)), 1 + 0j)


def mobius_witness(a: complex, p: int = 1, rotation: float = 0.0) -> HarmonicMap:
    """``e^{i rotation} ((z - a)/(1 - conj(a) z))^p`` as an analytic map (``g = 0``).

    The truncation order is chosen so the dropped tail is below 1e-17 on the
    closed disk.
    """
    a = complex(a)
    order = max(order_for_tail(abs(a), p), p)
    blaschke = -MobiusAutomorphism(a).series(order)  # (z - a)/(1 - conj(a) z)
    h = blaschke**p * complex(math.cos(rotation), math.sin(rotation))
    return HarmonicMap(h, ComplexSeries(np.zeros(order + 1)))


def generate_sample(spec: SampleSpec, grid: GridSpec = GridSpec()) -> Sample:
    if spec.family is Family.POLYNOMIAL:
        return _draw_polynomial(spec, grid)
    if spec.family is Family.POISSON_EXTENSION:
        return _draw_poisson(spec)
    return Sample(spec, mobius_witness(spec.zero, spec.p, spec.rotation), 1 + 0j)


def generate(spec: SampleSpec) -> HarmonicMap:
    """Deterministic map for ``spec``; see :func:`generate_sample` for the witness point."""
    return generate_sample(spec).map


def boundary_witness(sample: Sample) -> tuple[HarmonicMap, complex]:
    """Rescale so the boundary maximum is exactly 1 at ``sample.alpha``."""
    w = sample.map
    value = abs(w(sample.alpha))
    return w.scaled(1.0 / value), sample.alpha


def random_zero(seed: int, p: int, radius: float = 0.6) -> complex:
    """Deterministic zero location in ``|a| <= radius`` for relocated-zero corpora."""
    rng = np.random.default_rng([seed & 0xFFFFFFFFFFFFFFFF, p, 7919])
    r = radius * math.sqrt(rng.uniform())
    t = rng.uniform(0.0, 2.0 * np.pi)
    return complex(r * math.cos(t), r * math.sin(t))
