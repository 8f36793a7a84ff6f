"""Closed-form Schwarz-type bounds for disk self-maps vanishing to order p.

Throughout, ``s`` is the coefficient aggregate ``|a_p| + |b_p|`` (or its
transported analogue ``Lambda_p(a) (1 - |a|^2)^p``).  Harmonic self-maps of
the disk always have ``s <= 4/pi``; larger values are rejected, never
clamped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CoefficientBoundError, DomainError
from .harmonic import HarmonicMap

FOUR_OVER_PI = 4.0 / math.pi
QUARTER_PI = math.pi / 4.0
_UNIT_TOL = 1e-12


def _check_p(p: int) -> None:
    if int(p) != p or p < 1:
        raise DomainError(f"p must be a positive integer, got {p!r}")


def _check_r(r: float) -> None:
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"r must lie in [0, 1], got {r!r}")


def _check_s(s: float) -> None:
    if s < 0:
        raise DomainError(f"s must be non-negative, got {s!r}")
    if s > FOUR_OVER_PI * (1 + 1e-15):
        raise CoefficientBoundError(f"s = {s!r} exceeds 4/pi")


@dataclass(frozen=True)
class BoundQuery:
    p: int
    s: float
    r: float = 1.0
    a: complex = 0j
    alpha: complex = 1 + 0j
    beta: complex = 1 + 0j

    def __post_init__(self) -> None:
        _check_p(self.p)
        _check_r(self.r)
        _check_s(self.s)
        if abs(self.a) >= 1:
            raise DomainError("the zero a must lie inside the disk")
        for name in ("alpha", "beta"):
            if abs(abs(getattr(self, name)) - 1.0) > _UNIT_TOL:
                raise DomainError(f"|{name}| must be 1")


def analytic_schwarz_pick_bound(p: int, ap_mod: float, r: float) -> float:
    """``r^p (r + |a_p|) / (1 + |a_p| r)`` for analytic self-maps with a zero of order p at 0."""
    _check_p(p)
    _check_r(r)
    if not 0.0 <= ap_mod <= 1.0:
        raise DomainError(f"|a_p| must lie in [0, 1], got {ap_mod!r}")
    return r**p * (r + ap_mod) / (1.0 + ap_mod * r)


def classical_harmonic_bound(p: int, r: float) -> float:
    """``(4/pi) arctan(r^p)``."""
    _check_p(p)
    _check_r(r)
    return FOUR_OVER_PI * math.atan(r**p)


def moebius_ratio(x: float, r: float) -> float:
    """``(r + (pi/4) x) / (1 + (pi/4) x r)``; increasing in ``x`` for ``r < 1``."""
    if x < 0:
        raise DomainError("x must be non-negative")
    _check_r(r)
    c = QUARTER_PI * x
    return (r + c) / (1.0 + c * r)


def improved_harmonic_bound(p: int, s: float, r: float) -> float:
    """``(4/pi) arctan[r^p (r + (pi/4)s) / (1 + (pi/4)s r)]``."""
    _check_p(p)
    _check_s(s)
    _check_r(r)
    return FOUR_OVER_PI * math.atan(r**p * moebius_ratio(s, r))


def improved_harmonic_bound_array(p: int, s: float, r: np.ndarray) -> np.ndarray:
    """Vectorized :func:`improved_harmonic_bound` over radii."""
    _check_p(p)
    _check_s(s)
    r = np.asarray(r, dtype=float)
    if np.any((r < 0) | (r > 1)):
        raise DomainError("radii must lie in [0, 1]")
    c = QUARTER_PI * s
    return FOUR_OVER_PI * np.arctan(r**p * (r + c) / (1.0 + c * r))


def coefficient_margin(w: HarmonicMap, n: int) -> float:
    """``4/pi - (|a_n| + |b_n|)``; negative values mean the map is not a disk self-map."""
    if w.center != 0:
        raise DomainError("coefficient margins are read off the expansion about 0")
    if not 1 <= n <= w.truncation_order:
        raise DomainError(f"n must lie in 1..{w.truncation_order}")
    return FOUR_OVER_PI - (abs(w.h.coeffs[n]) + abs(w.g.coeffs[n]))


def boundary_lower_bound(p: int, s: float) -> float:
    """``(2/pi) [(p+1) + (pi/4)(p-1)s] / [1 + (pi/4)s]``."""
    _check_p(p)
    _check_s(s)
    c = QUARTER_PI * s
    return (2.0 / math.pi) * ((p + 1) + (p - 1) * c) / (1.0 + c)


def limit_slope(p: int, s: float) -> float:
    """Closed form of ``lim_{r -> 1-} (1 - M(r)^2) / (1 - r)`` for ``M = improved_harmonic_bound(p, s, .)``."""
    _check_p(p)
    _check_s(s)
    c = QUARTER_PI * s
    return FOUR_OVER_PI * ((p + 1) + (p - 1) * c) / (1.0 + c)


def _one_minus_bound_sq(p: int, s: float, h: float) -> float:
    # 1 - M(1-h)^2 without cancellation: with x = r^p phi(r),
    # 1 - x = (1 - r^p) + r^p (1 - phi),  1 - phi = h (1 - c) / (1 + c r),
    # 1 - M = (4/pi) arctan((1 - x) / (1 + x)).
    c = QUARTER_PI * s
    r = 1.0 - h
    lr = p * math.log1p(-h)
    rp = math.exp(lr)
    one_minus_x = -math.expm1(lr) + rp * h * (1.0 - c) / (1.0 + c * r)
    x = 1.0 - one_minus_x
    one_minus_m = FOUR_OVER_PI * math.atan(one_minus_x / (1.0 + x))
    return one_minus_m * (2.0 - one_minus_m)


def limit_slope_numeric(p: int, s: float, ks=range(2, 9)) -> float:
    """Difference quotient ``(1 - M(r)^2)/(1 - r)`` at ``r = 1 - 10^-k`` plus one Richardson step.

    The quotient has error ``O(1 - r)``; combining the two smallest steps
    (ratio 10) cancels the leading term.
    """
    _check_p(p)
    _check_s(s)
    table = limit_slope_table(p, s, ks)
    (_, q_coarse), (_, q_fine) = table[-2], table[-1]
    return (10.0 * q_fine - q_coarse) / 9.0


def limit_slope_table(p: int, s: float, ks=range(2, 9)) -> list[tuple[float, float]]:
    """``[(1 - r, quotient)]`` for each ``r = 1 - 10^-k``."""
    out = []
    for k in ks:
        h = 10.0 ** (-k)
        out.append((h, _one_minus_bound_sq(p, s, h) / h))
    return out


def general_boundary_lower_bound(q: BoundQuery) -> float:
    """Boundary bound at ``alpha`` for a zero of order ``p`` at ``a``.

    ``q.s`` is ``Lambda_p(a) (1 - |a|^2)^p``.  The bound is the origin
    bound rescaled by the Poisson-kernel factor ``(1-|a|^2)/|1 - conj(a) alpha|^2``.
    """
    c = QUARTER_PI * q.s
    core = (2.0 / math.pi) * ((q.p + 1) + (q.p - 1) * c) / (1.0 + c)
    a2 = abs(q.a) ** 2
    return core * (1.0 - a2) / abs(1.0 - np.conj(q.a) * q.alpha) ** 2


def transported_aggregate(lambda_p: float, a: complex, p: int) -> float:
    """``Lambda_p(a) (1 - |a|^2)^p``, the aggregate seen after moving the zero to 0."""
    return lambda_p * (1.0 - abs(a) ** 2) ** p
