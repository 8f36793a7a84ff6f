"""Harmonic maps ``w = h + conj(g)`` and their Wirtinger calculus."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import series as ser
from .errors import (
    CanonicalizationError,
    CriticalPointError,
    DomainError,
    HarmonicSchwarzError,
    NotAZeroError,
    NotSensePreservingError,
)
from .series import ComplexSeries

ZERO_TOL = 1e-10


@dataclass(frozen=True)
class GridSpec:
    """Polar grid ``r_k = rmax*k/radii`` (k = 1..radii), ``theta_j = 2*pi*j/angles``.

    The origin is deliberately not a node: at a zero of order p >= 2 the
    Jacobian vanishes there for every map.
    """

    radii: int = 64
    angles: int = 256
    rmax: float = 0.999

    def __post_init__(self) -> None:
        if self.radii < 1 or self.angles < 1:
            raise DomainError("grid needs at least one radius and one angle")
        if not 0.0 < self.rmax <= 1.0:
            raise DomainError("rmax must lie in (0, 1]")

    @property
    def size(self) -> int:
        return self.radii * self.angles

    def polar(self) -> tuple[np.ndarray, np.ndarray]:
        r = self.rmax * np.arange(1, self.radii + 1) / self.radii
        t = 2.0 * np.pi * np.arange(self.angles) / self.angles
        return r, t

    def nodes(self) -> np.ndarray:
        """Complex nodes, shape ``(radii, angles)``; flat index is ``k*angles + j``."""
        r, t = self.polar()
        return r[:, None] * np.exp(1j * t)[None, :]


@dataclass(frozen=True)
class HarmonicMap:
    h: ComplexSeries
    g: ComplexSeries

    def __post_init__(self) -> None:
        if self.h.center != self.g.center:
            raise DomainError("h and g must share their center")
        if self.h.truncation_order != self.g.truncation_order:
            raise DomainError("h and g must share their truncation order")

    @classmethod
    def from_coeffs(cls, h, g, order: int | None = None, center: complex = 0j) -> HarmonicMap:
        """Build from coefficient lists, zero-padding both to a common order."""
        hs, gs = ComplexSeries(h, center), ComplexSeries(g, center)
        n = max(hs.truncation_order, gs.truncation_order) if order is None else order
        return cls(hs.truncate(n), gs.truncate(n))

    @property
    def center(self) -> complex:
        return self.h.center

    @property
    def truncation_order(self) -> int:
        return self.h.truncation_order

    def __call__(self, z):
        return evaluate(self, z)

    def scaled(self, c: complex) -> HarmonicMap:
        """``c * w``, i.e. ``c*h + conj(conj(c)*g)``."""
        return HarmonicMap(self.h * c, self.g * np.conj(c))

    def recenter(self, z0: complex, order: int | None = None) -> HarmonicMap:
        return HarmonicMap(self.h.recenter(z0, order), self.g.recenter(z0, order))

    def to_json(self) -> dict:
        return {"h": self.h.to_json(), "g": self.g.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> HarmonicMap:
        return cls(ComplexSeries.from_json(data["h"]), ComplexSeries.from_json(data["g"]))

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=1) + "\n")

    @classmethod
    def load(cls, path) -> HarmonicMap:
        return cls.from_json(json.loads(Path(path).read_text()))


def evaluate(w: HarmonicMap, z):
    """``h(z) + conj(g(z))``."""
    return w.h(z) + np.conj(w.g(z))


def wirtinger(w: HarmonicMap, z):
    """``(w_z, w_zbar) = (h'(z), conj(g'(z)))``."""
    return w.h.derivative()(z), np.conj(w.g.derivative()(z))


def directional_derivative(w: HarmonicMap, z, alpha):
    """``e^{i alpha} w_z + e^{-i alpha} w_zbar`` for a direction angle ``alpha``."""
    wz, wzb = wirtinger(w, z)
    e = np.exp(1j * np.asarray(alpha, dtype=float))
    return e * wz + np.conj(e) * wzb


def directional_extremes(w: HarmonicMap, z):
    """Largest and smallest ``|d_alpha w(z)|`` over all directions."""
    wz, wzb = wirtinger(w, z)
    a, b = np.abs(wz), np.abs(wzb)
    return a + b, np.abs(a - b)


def jacobian(w: HarmonicMap, z):
    wz, wzb = wirtinger(w, z)
    return np.abs(wz) ** 2 - np.abs(wzb) ** 2


def dilatation(w: HarmonicMap, z):
    """Second complex dilatation ``g'(z) / h'(z)``."""
    hp = w.h.derivative()(z)
    if np.any(hp == 0):
        raise CriticalPointError("h' vanishes, the dilatation is undefined there")
    return w.g.derivative()(z) / hp


@dataclass(frozen=True)
class ZeroOrder:
    """Order ``p`` of a zero and the order-p Taylor coefficients of ``h`` and ``g`` there."""

    p: int
    a_p: complex
    b_p: complex

    @property
    def lambda_p(self) -> float:
        return abs(self.a_p) + abs(self.b_p)


def zero_order_at(w: HarmonicMap, z0: complex = 0j, tol: float = ZERO_TOL) -> ZeroOrder:
    """Order of the zero of ``w`` at ``z0`` after re-expanding about ``z0``.

    The additive constant shared by ``h`` and ``g`` is moved so that both
    vanish at ``z0``; the remaining coefficients are compared against
    ``tol`` scaled by the coefficient magnitude.
    """
    scale = max(1.0, float(np.max(np.abs(w.h.coeffs))), float(np.max(np.abs(w.g.coeffs))))
    value = evaluate(w, z0)
    if abs(value) > tol * scale:
        raise NotAZeroError(f"|w(z0)| = {abs(value):.3e} exceeds tolerance")
    hc = np.array(w.h.recenter(z0).coeffs)
    gc = np.array(w.g.recenter(z0).coeffs)
    hc[0] = 0.0
    gc[0] = 0.0
    n = ser.zero_order(ComplexSeries(hc, z0), tol * scale)
    m = ser.zero_order(ComplexSeries(gc, z0), tol * scale)
    if n is None and m is None:
        raise HarmonicSchwarzError("w vanishes identically near z0")
    if n is None or (m is not None and m < n):
        raise NotSensePreservingError(f"g vanishes to lower order ({m}) than h ({n})")
    p = n if m is None else min(n, m)
    a_p, b_p = complex(hc[p]), complex(gc[p])
    if abs(b_p) >= abs(a_p):
        raise NotSensePreservingError(f"|b_p| = {abs(b_p):.6g} >= |a_p| = {abs(a_p):.6g}")
    return ZeroOrder(p, a_p, b_p)


@dataclass(frozen=True)
class SensePreservationReport:
    sense_preserving: bool
    min_jacobian: float
    argmin: complex

    def __bool__(self) -> bool:
        return self.sense_preserving


def is_sense_preserving(w: HarmonicMap, grid: GridSpec = GridSpec()) -> SensePreservationReport:
    """Grid certificate for ``J_w > 0`` on ``{0 < |z| <= grid.rmax}``."""
    z = grid.nodes().ravel()
    jac = jacobian(w, z)
    i = int(np.argmin(jac))
    return SensePreservationReport(bool(jac[i] > 0), float(jac[i]), complex(z[i]))


def is_canonical(w: HarmonicMap, tol: float = 1e-14) -> bool:
    return w.center == 0 and abs(w.g.coeffs[0]) <= tol


def canonical(w: HarmonicMap) -> HarmonicMap:
    """Equivalent representation about 0 with ``g(0) = 0``."""
    if w.center != 0:
        w = w.recenter(0j)
    g0 = complex(w.g.coeffs[0])
    return HarmonicMap(w.h + np.conj(g0), w.g - g0)


def require_canonical(w: HarmonicMap, tol: float = 1e-12) -> None:
    if w.center != 0 or abs(w.h.coeffs[0]) > tol or abs(w.g.coeffs[0]) > tol:
        raise CanonicalizationError("expected a map about 0 with h(0) = g(0) = 0")


def boundary_maximum(w: HarmonicMap, samples: int = 2048, refine: bool = True) -> tuple[float, float]:
    """``max |w|`` on the unit circle and the angle where it is attained.

    The maximum over ``samples`` equispaced angles is polished by a bounded
    scalar search around the best few local maxima of the sampled values.
    """
    from scipy.optimize import minimize_scalar

    t = 2.0 * np.pi * np.arange(samples) / samples
    vals = np.abs(evaluate(w, np.exp(1j * t)))
    best = int(np.argmax(vals))
    if not refine:
        return float(vals[best]), float(t[best])
    is_peak = (vals >= np.roll(vals, 1)) & (vals >= np.roll(vals, -1))
    peaks = np.flatnonzero(is_peak)
    peaks = peaks[np.argsort(vals[peaks])[::-1][:8]]
    step = 2.0 * np.pi / samples
    best_val, best_t = float(vals[best]), float(t[best])
    for i in peaks:
        res = minimize_scalar(
            lambda s: -abs(evaluate(w, np.exp(1j * s))),
            bounds=(t[i] - step, t[i] + step),
            method="bounded",
            options={"xatol": 1e-12},
        )
        if -res.fun > best_val:
            best_val, best_t = float(-res.fun), float(res.x)
    return best_val, float(np.mod(best_t, 2.0 * np.pi))
