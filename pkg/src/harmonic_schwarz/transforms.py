"""Disk automorphisms, the angular projection to an analytic strip map, and
the tangent transport from the strip ``|Re| < 1`` into the disk."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import series as ser
from .errors import DomainError, NormalizationError
from .harmonic import HarmonicMap, require_canonical
from .series import ComplexSeries

_TAIL_EPS = 1e-17


@dataclass(frozen=True)
class MobiusAutomorphism:
    """The involution ``z -> (a - z) / (1 - conj(a) z)`` swapping 0 and ``a``."""

    a: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", complex(self.a))
        if abs(self.a) >= 1.0 - 1e-12:
            raise DomainError(f"|a| must be < 1, got {abs(self.a)!r}")

    def __call__(self, z):
        return mobius_eval(self, z)

    def derivative(self, z):
        return mobius_derivative(self, z)

    def series(self, order: int) -> ComplexSeries:
        """Taylor series about 0: ``a - (1 - |a|^2) sum_{k>=1} conj(a)^{k-1} z^k``."""
        c = np.empty(order + 1, dtype=np.complex128)
        c[0] = self.a
        ab = np.conj(self.a)
        c[1:] = -(1.0 - abs(self.a) ** 2) * ab ** np.arange(order)
        return ComplexSeries(c)


def mobius_eval(m: MobiusAutomorphism, z):
    z = np.asarray(z, dtype=np.complex128)
    out = (m.a - z) / (1.0 - np.conj(m.a) * z)
    return complex(out) if out.ndim == 0 else out


def mobius_derivative(m: MobiusAutomorphism, z):
    z = np.asarray(z, dtype=np.complex128)
    out = (abs(m.a) ** 2 - 1.0) / (1.0 - np.conj(m.a) * z) ** 2
    return complex(out) if out.ndim == 0 else out


def order_for_tail(ratio: float, base: int = 0, eps: float = _TAIL_EPS) -> int:
    """Truncation order at which a geometric tail ``ratio^N`` (times a
    polynomial factor of degree ``base``) falls below ``eps``."""
    if ratio <= 0:
        return max(base, 1)
    n = max(base, 1)
    while n * math.log(ratio) + base * math.log(n + 1) > math.log(eps):
        n += 1
    return n


def precompose_mobius(w: HarmonicMap, a: complex, order: int | None = None) -> HarmonicMap:
    """Series of ``W = w o phi_a`` about 0: ``H = h o phi_a``, ``G = g o phi_a``.

    ``h`` and ``g`` are first re-expanded about ``a``; the co-analytic part
    is composed as an analytic series and conjugated only on evaluation.
    An ``order`` above the map's truncation zero-pads it, which is exact for
    polynomial maps only.
    """
    m = MobiusAutomorphism(a)
    if w.center != 0:
        raise DomainError("precomposition expects a map expanded about 0")
    n = w.truncation_order if order is None else order
    if n > w.truncation_order:
        # zero padding: only meaningful for polynomial maps
        w = HarmonicMap(w.h.truncate(n), w.g.truncate(n))
    phi = m.series(n)
    h_a = w.h.recenter(m.a, n)
    g_a = w.g.recenter(m.a, n)
    return HarmonicMap(ser.compose(h_a, phi, n), ser.compose(g_a, phi, n))


def projection(w: HarmonicMap, theta: float) -> ComplexSeries:
    """Analytic ``f = h e^{-i theta} + g e^{i theta}`` with ``Re f = Re(w e^{-i theta})``."""
    require_canonical(w)
    e = complex(math.cos(theta), math.sin(theta))
    return w.h * np.conj(e) + w.g * e


def strip_to_disk(f: ComplexSeries, order: int | None = None) -> ComplexSeries:
    """Series of ``tan((pi/4) f)``.

    ``f`` must vanish at 0.  Polynomial inputs are zero-padded to ``order``;
    a high order keeps the truncation tail negligible close to the unit
    circle.
    """
    if f.center != 0:
        raise DomainError("strip transport works with series about 0")
    if abs(f.coeffs[0]) > 1e-12:
        raise NormalizationError("f(0) must be 0")
    n = f.truncation_order if order is None else order
    inner = f.truncate(n) * (math.pi / 4.0)
    c = np.array(inner.coeffs)
    c[0] = 0.0
    return ser.compose(ser.tan_series(n), ComplexSeries(c), n)


def cayley_of_strip(f_values):
    """``(e^{i pi f/2} - 1) / (e^{i pi f/2} + 1)`` evaluated directly; equals ``i tan(pi f/4)``."""
    e = np.exp(0.5j * np.pi * np.asarray(f_values, dtype=np.complex128))
    return (e - 1.0) / (e + 1.0)


def tangent_half_inequality(zeta: complex) -> tuple[float, float]:
    """``(tan(|Re zeta|/2), |(e^{i zeta} - 1)/(e^{i zeta} + 1)|)``, valid for ``|Re zeta| <= pi/2``."""
    zeta = complex(zeta)
    if abs(zeta.real) > math.pi / 2 * (1 + 1e-15):
        raise DomainError("|Re zeta| must not exceed pi/2")
    e = np.exp(1j * zeta)
    return math.tan(abs(zeta.real) / 2.0), float(abs((e - 1.0) / (e + 1.0)))
