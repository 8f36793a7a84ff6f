"""Seeded corpora for every check.

Sample ``i`` of a corpus started at ``seed`` uses seed ``seed + i``; every
(seed, check) pair is independent, so ``workers > 1`` fans the samples out
over processes and the merge reassembles a result identical to the serial
run.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import numpy as np

from ..harmonic import GridSpec
from ..series import ComplexSeries
from ..transforms import projection
from .checks import (
    BOUNDARY_TOL,
    IDENTITY_TOL,
    INTERIOR_TOL,
    check_boundary_theorem,
    check_coefficients,
    check_interior_bound,
    check_strip_transport,
    check_transport_identities,
)
from .generate import Family, SampleSpec, boundary_witness, generate_sample, mobius_witness, random_zero
from .report import VerificationReport, merge_reports

DEFAULT_PS = (1, 2, 3)
DEGREE_SPREAD = 5
MOBIUS_ZEROS = (0.0, 0.3, 0.5, 0.8)
CLOSED_FORM_PS = (1, 2, 3, 4, 5)


def _map(fn, items, workers: int):
    if workers <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=8))


def _jobs(seed: int, samples: int, ps) -> list[tuple[int, int, int]]:
    # (sample seed, p, degree); degrees cycle through p .. p+4
    return [(seed + i, p, p + i % DEGREE_SPREAD) for p in ps for i in range(samples)]


def _interior_job(job, grid: GridSpec, tol: float, decay: float) -> VerificationReport:
    s, p, deg = job
    sample = generate_sample(SampleSpec(seed=s, p=p, degree=deg, decay=decay), grid)
    return check_interior_bound(sample.map, grid, tol, seed=s)


def interior_corpus(
    seed: int = 42,
    samples: int = 200,
    ps=DEFAULT_PS,
    grid: GridSpec = GridSpec(),
    tol: float = INTERIOR_TOL,
    decay: float = 0.5,
    workers: int = 1,
) -> VerificationReport:
    fn = partial(_interior_job, grid=grid, tol=tol, decay=decay)
    return merge_reports(_map(fn, _jobs(seed, samples, ps), workers), "lemma1.3")


def _boundary_job(job, tol: float, decay: float) -> VerificationReport:
    s, p, deg = job
    # odd samples carry the zero away from the origin, exercising the general bound
    zero = random_zero(s, p) if s % 2 else 0j
    sample = generate_sample(SampleSpec(seed=s, p=p, degree=deg, decay=decay, zero=zero))
    w, alpha = boundary_witness(sample)
    return check_boundary_theorem(w, alpha, tol, a=zero, seed=s)


def closed_form_witnesses(tol: float = BOUNDARY_TOL) -> list[VerificationReport]:
    """``z^p`` for p = 1..5 and ``(z-a)/(1-conj(a) z)`` for the standard zeros, at alpha = 1."""
    out = []
    for p in CLOSED_FORM_PS:
        out.append(check_boundary_theorem(mobius_witness(0j, p), 1 + 0j, tol, a=0j, seed=-p))
    for k, a in enumerate(MOBIUS_ZEROS):
        out.append(check_boundary_theorem(mobius_witness(a, 1), 1 + 0j, tol, a=a, seed=-100 - k))
    return out


def boundary_corpus(
    seed: int = 42,
    samples: int = 100,
    ps=DEFAULT_PS,
    tol: float = BOUNDARY_TOL,
    decay: float = 0.5,
    include_closed_forms: bool = True,
    workers: int = 1,
) -> VerificationReport:
    fn = partial(_boundary_job, tol=tol, decay=decay)
    reports = _map(fn, _jobs(seed, samples, ps), workers)
    if include_closed_forms:
        reports += closed_form_witnesses(tol)
    return merge_reports(reports, "boundary")


def _transport_job(job, tol: float, decay: float) -> VerificationReport:
    s, p, deg = job
    zero = random_zero(s, p)
    sample = generate_sample(SampleSpec(seed=s, p=p, degree=deg, decay=decay, zero=zero))
    return check_transport_identities(sample.map, zero, tol, seed=s)


def transport_corpus(
    seed: int = 42, samples: int = 100, ps=DEFAULT_PS, tol: float = IDENTITY_TOL, decay: float = 0.5, workers: int = 1
) -> VerificationReport:
    """``samples`` maps in total, cycling through ``ps``."""
    jobs = [(seed + i, ps[i % len(ps)], ps[i % len(ps)] + i % DEGREE_SPREAD) for i in range(samples)]
    fn = partial(_transport_job, tol=tol, decay=decay)
    return merge_reports(_map(fn, jobs, workers), "transport")


def strip_sample(seed: int, p: int = 1, degree: int | None = None, decay: float = 0.5) -> ComplexSeries:
    """Analytic strip map ``f`` with ``f(0) = 0`` and a zero of order ``p``:
    the angular projection of a generated harmonic self-map."""
    degree = p + seed % DEGREE_SPREAD if degree is None else degree
    w = generate_sample(SampleSpec(seed=seed, p=p, degree=degree, decay=decay)).map
    theta = np.random.default_rng([seed & 0xFFFFFFFFFFFFFFFF, p, 104729]).uniform(0.0, 2.0 * math.pi)
    return projection(w, theta)


def _strip_job(job, tol: float, order: int) -> VerificationReport:
    s, p, deg = job
    return check_strip_transport(strip_sample(s, p, deg), order=order, tol=tol, seed=s)


def strip_corpus(
    seed: int = 42, samples: int = 50, ps=DEFAULT_PS, tol: float = 1e-9, order: int = 256, workers: int = 1
) -> VerificationReport:
    jobs = [(seed + i, ps[i % len(ps)], ps[i % len(ps)] + i % DEGREE_SPREAD) for i in range(samples)]
    fn = partial(_strip_job, tol=tol, order=order)
    return merge_reports(_map(fn, jobs, workers), "strip")


def _poisson_job(job, nmax: int, tol: float, decay: float) -> VerificationReport:
    s, p = job
    sample = generate_sample(SampleSpec(seed=s, p=p, degree=p, family=Family.POISSON_EXTENSION, decay=decay))
    return check_coefficients(sample.map, nmax, tol, seed=s)


def poisson_corpus(
    seed: int = 42, samples: int = 200, nmax: int = 16, tol: float = INTERIOR_TOL, decay: float = 0.5, workers: int = 1
) -> VerificationReport:
    """Coefficient margins of harmonic extensions; the winding number cycles through 1..3."""
    jobs = [(seed + i, 1 + i % 3) for i in range(samples)]
    fn = partial(_poisson_job, nmax=nmax, tol=tol, decay=decay)
    return merge_reports(_map(fn, jobs, workers), "coefficients")


CORPORA = {
    "lemma1.3": interior_corpus,
    "boundary": boundary_corpus,
    "transport": transport_corpus,
    "strip": strip_corpus,
    "coefficients": poisson_corpus,
}
