"""Numerical probe of how tight the boundary bound is within a map family.

A Nelder-Mead simplex search minimizes ``attained - bound`` over the real
parameter vector of a family.  The boundary theorem forbids negative
margins, so a negative best margin is flagged as a suspected
implementation error rather than reported as a discovery.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from ..errors import DomainError, HarmonicSchwarzError
from ..harmonic import GridSpec, is_sense_preserving
from .checks import check_boundary_theorem
from .generate import Family, SampleSpec, mobius_witness, normalize_to_disk, polynomial_map, rng_for

log = logging.getLogger(__name__)

SIMPLEX_CONFIG = {
    "reflection": 1.0,
    "expansion": 2.0,
    "contraction": 0.5,
    "shrink": 0.5,
    "iterations_per_dim": 200,
}
MOBIUS_RANGE = (0.0, 0.9)
SUSPECT_MARGIN = -1e-6
# objective value for parameters outside the family's hypotheses
PENALTY = 10.0
_COARSE_GRID = GridSpec(radii=32, angles=128, rmax=0.999)


@dataclass
class SharpnessResult:
    family: str
    p: int
    best_margin: float
    params: list[float]
    trace: list[tuple[list[float], float]] = field(default_factory=list)
    projections: int = 0
    suspected_error: bool = False
    config: dict = field(default_factory=lambda: dict(SIMPLEX_CONFIG))

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "p": self.p,
            "best_margin": self.best_margin,
            "params": list(self.params),
            "projections": self.projections,
            "suspected_error": self.suspected_error,
            "config": self.config,
            "trace": [{"params": list(x), "margin": m} for x, m in self.trace],
        }


class _Objective:
    """Margin as a function of real parameters, recording every evaluation."""

    def __init__(self, p: int, spec: SampleSpec, free: tuple[str, ...]):
        self.p, self.spec, self.free = p, spec, free
        self.trace: list[tuple[list[float], float]] = []
        self.projections = 0

    def __call__(self, x: np.ndarray) -> float:
        x = np.asarray(x, dtype=float)
        effective = x
        try:
            margin, effective = self.margin(x)
        except HarmonicSchwarzError:
            margin = PENALTY
        self.trace.append((np.asarray(effective, dtype=float).tolist(), float(margin)))
        return margin

    def margin(self, x: np.ndarray) -> tuple[float, np.ndarray]:
        """Margin at ``x`` and the parameters actually used (after projection)."""
        raise NotImplementedError

    def initial(self) -> np.ndarray:
        raise NotImplementedError


class _MobiusObjective(_Objective):
    # w = e^{i rot} ((z - a)/(1 - a z))^p with real a, probed at alpha = 1

    def initial(self) -> np.ndarray:
        x = []
        if "zero" in self.free:
            x.append(min(max(abs(self.spec.zero), MOBIUS_RANGE[0]), MOBIUS_RANGE[1]))
        if "rotation" in self.free:
            x.append(self.spec.rotation)
        return np.array(x, dtype=float)

    def margin(self, x: np.ndarray) -> tuple[float, np.ndarray]:
        x = x.copy()
        a, rot = abs(self.spec.zero), self.spec.rotation
        i = 0
        if "zero" in self.free:
            clipped = min(max(x[0], MOBIUS_RANGE[0]), MOBIUS_RANGE[1])
            if clipped != x[0]:
                self.projections += 1
                x[0] = clipped
            a, i = float(x[0]), 1
        if "rotation" in self.free:
            rot = float(x[i])
        w = mobius_witness(a, self.p, rot)
        return check_boundary_theorem(w, 1 + 0j, a=a).min_margin, x


class _PolynomialObjective(_Objective):
    # h = z^p A(z), g = z^p B(z); x packs Re/Im of A then of B

    def initial(self) -> np.ndarray:
        rng = rng_for(self.spec, stream=1)
        m = self.spec.degree - self.p + 1
        damp = self.spec.decay ** np.arange(m)
        A = (rng.standard_normal(m) + 1j * rng.standard_normal(m)) * damp
        A[0] = 1.0 + abs(A[0])
        B = (rng.standard_normal(m) + 1j * rng.standard_normal(m)) * damp * 0.2
        return np.concatenate([A.real, A.imag, B.real, B.imag])

    def margin(self, x: np.ndarray) -> tuple[float, np.ndarray]:
        m = x.size // 4
        A = x[:m] + 1j * x[m : 2 * m]
        B = x[2 * m : 3 * m] + 1j * x[3 * m :]
        if abs(B[0]) >= abs(A[0]):
            return PENALTY, x
        w = polynomial_map(A, B, self.p)
        if not is_sense_preserving(w, _COARSE_GRID):
            return PENALTY, x
        w, alpha = normalize_to_disk(w, slack=0.0)
        return check_boundary_theorem(w, alpha).min_margin, x


def sharpness_search(
    p: int, family: SampleSpec, iterations: int | None = None, free: tuple[str, ...] | None = None
) -> SharpnessResult:
    """Smallest boundary margin found by a simplex search over ``family``.

    ``mobius_witness`` searches the real zero ``a`` in [0, 0.9] and/or the
    rotation (``free`` picks which, default the zero); ``polynomial``
    searches all coefficients of ``A`` and ``B`` in ``h = z^p A``,
    ``g = z^p B``.  Parameters leaving the admissible range are clipped and
    counted in ``projections``.
    """
    if family.family is Family.MOBIUS_WITNESS:
        obj: _Objective = _MobiusObjective(p, family, free or ("zero",))
    elif family.family is Family.POLYNOMIAL:
        obj = _PolynomialObjective(p, family, ("coefficients",))
    else:
        raise DomainError(f"no boundary witnesses for the {family.family.value} family")
    x0 = obj.initial()
    dim = x0.size
    maxiter = iterations if iterations is not None else SIMPLEX_CONFIG["iterations_per_dim"] * dim
    initial_simplex = np.vstack([x0] + [x0 + 0.1 * e for e in np.eye(dim)])
    res = minimize(
        obj,
        x0,
        method="Nelder-Mead",
        options={"maxiter": maxiter, "initial_simplex": initial_simplex, "xatol": 1e-10, "fatol": 1e-12},
    )
    best_i = int(np.argmin([m for _, m in obj.trace]))
    params, best = obj.trace[best_i]
    result = SharpnessResult(
        family=family.family.value,
        p=p,
        best_margin=best,
        params=params,
        trace=obj.trace,
        projections=obj.projections,
        suspected_error=best < SUSPECT_MARGIN,
    )
    if result.suspected_error:
        log.error("negative boundary margin %.3e at %s: suspected implementation error", best, params)
    if not math.isfinite(res.fun):
        log.warning("simplex search ended on a non-finite objective")
    return result
