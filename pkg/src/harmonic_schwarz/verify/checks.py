"""Per-map checks of every inequality and identity.

Each check returns a :class:`VerificationReport` for a single map; corpus
runners merge them.  Margins are signed so that a negative value is a
finding: ``bound - attained`` for upper bounds, ``attained - bound`` for
lower bounds and ``-error`` for identities.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .. import bounds as bnd
from .. import series as ser
from ..errors import DomainError, HarmonicSchwarzError, NotSensePreservingError, WitnessInvalidError
from ..harmonic import GridSpec, HarmonicMap, evaluate, is_sense_preserving, wirtinger, zero_order_at
from ..transforms import cayley_of_strip, precompose_mobius, strip_to_disk
from .report import SampleRecord, VerificationReport

INTERIOR_TOL = 1e-9
BOUNDARY_TOL = 1e-6
IDENTITY_TOL = 1e-8
FD_STEPS = (1e-3, 1e-4, 1e-5, 1e-6)
FD_REL_TOL = 1e-3
WITNESS_TOL = 1e-9
ORDERING_SLACK = 1e-12


def _worst(seed: int, p: int, grid_index: int, z: complex, **kw) -> dict:
    return {"seed": seed, "p": p, "grid_index": grid_index, "z": [z.real, z.imag], **kw}


def check_interior_bound(
    w: HarmonicMap, grid: GridSpec = GridSpec(), tol: float = INTERIOR_TOL, seed: int = 0
) -> VerificationReport:
    """``|w(z)| <= improved_harmonic_bound(p, |a_p|+|b_p|, |z|)`` at every grid node.

    Also tracks the weaker arctan bound and the ordering
    improved <= classical <= (4/pi) r^p.
    """
    sp = is_sense_preserving(w, grid)
    if not sp:
        raise NotSensePreservingError(f"J = {sp.min_jacobian:.3e} at {sp.argmin!r}")
    zo = zero_order_at(w, 0j)
    p, s = zo.p, zo.lambda_p
    r, theta = grid.polar()
    z = grid.nodes()
    rr = np.broadcast_to(r[:, None], z.shape)
    attained = np.abs(evaluate(w, z))
    improved = bnd.improved_harmonic_bound_array(p, s, rr)
    classical = bnd.FOUR_OVER_PI * np.arctan(rr**p)
    power = bnd.FOUR_OVER_PI * rr**p
    margin = (improved - attained).ravel()
    i = int(np.argmin(margin))
    k, j = divmod(i, grid.angles)
    ordering = int(np.count_nonzero(improved > classical + ORDERING_SLACK))
    ordering += int(np.count_nonzero(classical > power + ORDERING_SLACK))
    rec = SampleRecord(
        "lemma1.3", seed, p, s, float(r[k]), float(theta[j]),
        float(attained.flat[i]), float(improved.flat[i]), float(margin[i]), i,
    )
    violations = int(np.count_nonzero(margin < -tol))
    return VerificationReport(
        checked_inequality="lemma1.3",
        samples=1,
        grid_points=grid.size,
        min_margin=float(margin[i]),
        worst_case=_worst(seed, p, i, complex(z.flat[i])),
        violations=violations + ordering,
        tolerance=tol,
        records=[rec],
        extras={
            "min_classical_margin": float(np.min(classical - attained)),
            "ordering_violations": ordering,
            "bound_violations": violations,
        },
    )


def boundary_attained(w: HarmonicMap, alpha: complex, beta: complex) -> float:
    """``Re(conj(beta) [w_z(alpha) alpha + w_zbar(alpha) conj(alpha)])``."""
    wz, wzb = wirtinger(w, alpha)
    return (np.conj(beta) * (wz * alpha + wzb * np.conj(alpha))).real


def radial_quotients(w: HarmonicMap, alpha: complex, beta: complex, steps=FD_STEPS) -> list[float]:
    """``Re(conj(beta) (w(alpha) - w((1-t) alpha)) / t)`` for each step ``t``."""
    wa = evaluate(w, alpha)
    return [float((np.conj(beta) * (wa - evaluate(w, (1.0 - t) * alpha)) / t).real) for t in steps]


def check_boundary_theorem(
    w: HarmonicMap,
    alpha: complex = 1 + 0j,
    tol: float = BOUNDARY_TOL,
    a: complex = 0j,
    seed: int = 0,
    witness_tol: float = WITNESS_TOL,
) -> VerificationReport:
    """Boundary derivative at ``alpha`` against the general boundary bound.

    ``w`` must be smooth on the closed disk, map ``alpha`` onto the circle
    and vanish to order ``p`` at ``a``.
    """
    alpha = complex(alpha)
    if abs(abs(alpha) - 1.0) > 1e-12:
        raise DomainError("alpha must be unimodular")
    wa = complex(evaluate(w, alpha))
    if abs(abs(wa) - 1.0) > witness_tol:
        raise WitnessInvalidError(f"|w(alpha)| = {abs(wa)!r} is not 1")
    beta = wa / abs(wa)
    zo = zero_order_at(w, a)
    s = bnd.transported_aggregate(zo.lambda_p, a, zo.p)
    bound = bnd.general_boundary_lower_bound(bnd.BoundQuery(zo.p, s, a=complex(a), alpha=alpha, beta=beta))
    attained = float(boundary_attained(w, alpha, beta))
    margin = attained - bound
    quotients = radial_quotients(w, alpha, beta)
    fd_err = abs(quotients[-1] - attained) / max(abs(attained), 1e-300)
    fd_fail = int(fd_err > FD_REL_TOL)
    theta = cmath.phase(alpha)
    rec = SampleRecord("boundary", seed, zo.p, s, 1.0, theta, attained, bound, margin, 0)
    return VerificationReport(
        checked_inequality="boundary",
        samples=1,
        grid_points=1,
        min_margin=margin,
        worst_case=_worst(seed, zo.p, 0, alpha, a=[complex(a).real, complex(a).imag]),
        violations=int(margin < -tol) + fd_fail,
        tolerance=tol,
        records=[rec],
        extras={"max_fd_rel_error": fd_err, "fd_failures": fd_fail},
    )


def _identity_report(
    name: str, checks: dict, tol: float, seed: int, p: int, rec_fields: tuple, z: complex, grid_points: int = 1
) -> VerificationReport:
    # checks: {label: (error, limit)}; the margin of a label is limit - error
    margins = {k: lim - err for k, (err, lim) in checks.items()}
    failing = sorted(k for k, m in margins.items() if m < 0)
    worst_label = min(margins, key=margins.get)
    worst = margins[worst_label]
    s, grid_r, grid_theta, attained, bound = rec_fields
    rec = SampleRecord(name, seed, p, s, grid_r, grid_theta, attained, bound, worst, 0)
    return VerificationReport(
        checked_inequality=name,
        samples=1,
        grid_points=grid_points,
        min_margin=worst,
        worst_case=_worst(seed, p, 0, z, check=worst_label),
        violations=int(bool(failing)),
        tolerance=tol,
        records=[rec],
        extras={f"max_{k}_error": float(err) for k, (err, _) in checks.items()},
    )


def check_transport_identities(
    w: HarmonicMap, a: complex, tol: float = IDENTITY_TOL, seed: int = 0, order: int | None = None
) -> VerificationReport:
    """Moving the zero at ``a`` to 0 by ``W = w o phi_a``.

    Checks ``mu(0, W) = mu(a, w)``, the vanishing of ``D^n W(0)`` below
    ``p`` (at ``1e-9 * scale``), ``D^p H(0) = D^p h(a) phi_a'(0)^p`` and its
    co-analytic twin, and ``|H_p| + |G_p| = Lambda_p(a) (1 - |a|^2)^p``
    (relative, at ``tol``).
    """
    a = complex(a)
    zo = zero_order_at(w, a)
    p = zo.p
    W = precompose_mobius(w, a, order)
    scale = max(1.0, float(np.max(np.abs(W.h.coeffs[: p + 1]))), float(np.max(np.abs(W.g.coeffs[: p + 1]))))
    try:
        order_ok = zero_order_at(W, 0j).p == p
    except HarmonicSchwarzError:
        order_ok = False
    low = max((abs(W.h.coeffs[n]) + abs(W.g.coeffs[n]) for n in range(1, p)), default=0.0)
    dphi = abs(a) ** 2 - 1.0
    lhs = abs(W.h.coeffs[p]) + abs(W.g.coeffs[p])
    rhs = bnd.transported_aggregate(zo.lambda_p, a, p)
    checks = {
        "order": (0.0 if order_ok else 1.0, 0.5),
        "low_derivatives": (low, 1e-9 * scale),
        "analytic_part": (abs(W.h.coeffs[p] - zo.a_p * dphi**p) / scale, tol),
        "coanalytic_part": (abs(W.g.coeffs[p] - zo.b_p * dphi**p) / scale, tol),
        "magnitude": (abs(lhs - rhs) / max(1.0, rhs), tol),
    }
    return _identity_report("transport", checks, tol, seed, p, (rhs, abs(a), cmath.phase(a), lhs, rhs), a)


def check_strip_transport(
    f: ser.ComplexSeries,
    order: int = 256,
    grid: GridSpec = GridSpec(radii=32, angles=128, rmax=0.95),
    tol: float = 1e-9,
    points: int = 100,
    seed: int = 0,
) -> VerificationReport:
    """``delta = tan(pi f/4)`` for strip-valued ``f``: disk-valued, same zero
    order, ``D^p delta(0) = (pi/4) D^p f(0)``, and ``d = i delta`` with ``d``
    the Cayley image evaluated directly from ``f``."""
    z = grid.nodes().ravel()
    fz = f(z)
    if np.max(np.abs(fz.real)) >= 1.0:
        raise DomainError("f is not strip-valued on the grid")
    delta = strip_to_disk(f, order)
    dz = delta(z)
    modmax = float(np.max(np.abs(dz)))
    fc = np.array(f.coeffs)
    fc[0] = 0
    dc = np.array(delta.coeffs)
    dc[0] = 0
    p = ser.zero_order(ser.ComplexSeries(fc))
    q = ser.zero_order(ser.ComplexSeries(dc))
    target = (math.pi / 4.0) * f.derivative_at(p)
    idx = np.linspace(0, z.size - 1, points).round().astype(int)
    checks = {
        # strict |delta| < 1: error is the modulus, limit the largest float below 1
        "modulus": (modmax, np.nextafter(1.0, 0.0)),
        "order": (0.0 if p == q else 1.0, 0.5),
        "leading_derivative": (abs(delta.derivative_at(p) - target) / max(1.0, abs(target)), tol),
        "cayley": (float(np.max(np.abs(cayley_of_strip(fz[idx]) - 1j * dz[idx]))), tol),
    }
    return _identity_report("strip", checks, tol, seed, p, (modmax, grid.rmax, 0.0, modmax, 1.0), 0j, grid.size)


def check_coefficients(w: HarmonicMap, nmax: int = 16, tol: float = INTERIOR_TOL, seed: int = 0) -> VerificationReport:
    """``|a_n| + |b_n| <= 4/pi`` for ``n = 1..nmax``."""
    margins = np.array([bnd.coefficient_margin(w, n) for n in range(1, nmax + 1)])
    i = int(np.argmin(margins))
    n = i + 1
    attained = abs(w.h.coeffs[n]) + abs(w.g.coeffs[n])
    rec = SampleRecord("coefficients", seed, n, attained, 0.0, 0.0, attained, bnd.FOUR_OVER_PI, float(margins[i]), n)
    return VerificationReport(
        checked_inequality="coefficients",
        samples=1,
        grid_points=nmax,
        min_margin=float(margins[i]),
        worst_case={"seed": seed, "p": n, "grid_index": n, "z": [0.0, 0.0]},
        violations=int(np.count_nonzero(margins < -tol)),
        tolerance=tol,
        records=[rec],
    )
