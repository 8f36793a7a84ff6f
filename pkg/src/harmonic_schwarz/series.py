"""Truncated complex power series and the Faa di Bruno engine.

A :class:`ComplexSeries` stores ``c_0 .. c_N`` for

    s(z) = sum_k c_k (z - z0)^k,   k = 0..N

and treats everything above order ``N`` as unknown.  Products and
compositions are exact through ``N`` and discard the rest.  All values are
immutable; every operation returns a new series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from scipy.special import comb

from .errors import (
    ArityError,
    CompositionDomainError,
    DomainError,
    PartitionCapError,
    TruncationOrderError,
)

DEFAULT_ORDER = 32
PARTITION_CAP = 20
ZERO_TOL = 1e-12

# relative tolerance for "inner(center) == outer.center" in compose
_CENTER_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ComplexSeries:
    """Truncated power series with complex coefficients about ``center``."""

    coeffs: np.ndarray
    center: complex = 0j

    def __post_init__(self) -> None:
        c = np.array(self.coeffs, dtype=np.complex128).reshape(-1)
        if c.size == 0:
            raise DomainError("a series needs at least the constant coefficient")
        if not np.all(np.isfinite(c)):
            raise DomainError("series coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "center", complex(self.center))

    @property
    def truncation_order(self) -> int:
        return self.coeffs.size - 1

    def __repr__(self) -> str:
        return f"ComplexSeries(order={self.truncation_order}, center={self.center!r}, coeffs={self.coeffs!r})"

    def __call__(self, z):
        return evaluate(self, z)

    def __len__(self) -> int:
        return self.coeffs.size

    def __getitem__(self, k: int) -> complex:
        return complex(self.coeffs[k])

    # -- arithmetic (truncated at the smaller order) -------------------------

    def _check_center(self, other: ComplexSeries) -> None:
        if other.center != self.center:
            raise DomainError("series are expanded about different centers")

    def __add__(self, other):
        if isinstance(other, ComplexSeries):
            self._check_center(other)
            n = min(len(self), len(other))
            return ComplexSeries(self.coeffs[:n] + other.coeffs[:n], self.center)
        c = self.coeffs.copy()
        c[0] += complex(other)
        return ComplexSeries(c, self.center)

    __radd__ = __add__

    def __neg__(self) -> ComplexSeries:
        return ComplexSeries(-self.coeffs, self.center)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ComplexSeries):
            self._check_center(other)
            n = min(len(self), len(other))
            return ComplexSeries(_mul(self.coeffs, other.coeffs, n), self.center)
        return ComplexSeries(self.coeffs * complex(other), self.center)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> ComplexSeries:
        if k < 0:
            raise DomainError("negative powers need series division, which is not provided")
        out = np.zeros(len(self), dtype=np.complex128)
        out[0] = 1.0
        base = self.coeffs
        while k:
            if k & 1:
                out = _mul(out, base, len(self))
            k >>= 1
            if k:
                base = _mul(base, base, len(self))
        return ComplexSeries(out, self.center)

    # -- calculus ------------------------------------------------------------

    def derivative_at(self, k: int) -> complex:
        return derivative_at(self, k)

    def derivative(self) -> ComplexSeries:
        """Series of s' (one order lower)."""
        if self.truncation_order == 0:
            return ComplexSeries([0j], self.center)
        k = np.arange(1, len(self))
        return ComplexSeries(self.coeffs[1:] * k, self.center)

    def truncate(self, order: int) -> ComplexSeries:
        """Cut to ``order``, or zero-pad when ``order`` exceeds the current one.

        Padding is only meaningful for polynomials, whose higher
        coefficients really are zero.
        """
        if order < 0:
            raise DomainError("order must be non-negative")
        if order <= self.truncation_order:
            return ComplexSeries(self.coeffs[: order + 1], self.center)
        c = np.zeros(order + 1, dtype=np.complex128)
        c[: len(self)] = self.coeffs
        return ComplexSeries(c, self.center)

    def recenter(self, new_center: complex, order: int | None = None) -> ComplexSeries:
        return recenter(self, new_center, order)

    def conjugate_coeffs(self) -> ComplexSeries:
        """Series whose coefficients are conjugated: z -> conj(s(conj z))."""
        return ComplexSeries(np.conj(self.coeffs), np.conj(self.center))

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "center": [self.center.real, self.center.imag],
            "coeffs": [[c.real, c.imag] for c in self.coeffs.tolist()],
        }

    @classmethod
    def from_json(cls, data: dict) -> ComplexSeries:
        re, im = data.get("center", [0.0, 0.0])
        coeffs = [complex(a, b) for a, b in data["coeffs"]]
        return cls(coeffs, complex(re, im))


def _mul(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    return np.convolve(a[:n], b[:n])[:n]


# -- constructors ------------------------------------------------------------


def polynomial(coeffs: Iterable[complex], order: int | None = None, center: complex = 0j) -> ComplexSeries:
    """Series of a polynomial, zero-padded up to ``order`` if given."""
    s = ComplexSeries(list(coeffs), center)
    return s if order is None else s.truncate(order)


def identity(order: int = DEFAULT_ORDER, center: complex = 0j) -> ComplexSeries:
    """The series of z about ``center``: ``center + (z - center)``."""
    c = np.zeros(max(order, 1) + 1, dtype=np.complex128)
    c[0] = center
    c[1] = 1.0
    return ComplexSeries(c, center)


def monomial(k: int, order: int = DEFAULT_ORDER, coefficient: complex = 1.0) -> ComplexSeries:
    """``coefficient * z**k`` about 0."""
    if k > order:
        raise TruncationOrderError(f"z^{k} does not fit in order {order}")
    c = np.zeros(order + 1, dtype=np.complex128)
    c[k] = coefficient
    return ComplexSeries(c)


@lru_cache(maxsize=32)
def _tan_coeffs(order: int) -> tuple[float, ...]:
    # tan' = 1 + tan^2  =>  (n+1) t_{n+1} = [n == 0] + sum_i t_i t_{n-i}
    t = np.zeros(order + 1)
    for n in range(order):
        acc = float(np.dot(t[: n + 1], t[n::-1]))
        if n == 0:
            acc += 1.0
        t[n + 1] = acc / (n + 1)
    return tuple(t)


def tan_series(order: int = DEFAULT_ORDER) -> ComplexSeries:
    """Maclaurin series of tan (radius of convergence pi/2)."""
    return ComplexSeries(np.array(_tan_coeffs(order), dtype=np.complex128))


# -- core operations ---------------------------------------------------------


def evaluate(s: ComplexSeries, z):
    """Horner evaluation of ``s`` at a scalar or array ``z``."""
    u = np.asarray(z, dtype=np.complex128) - s.center
    c = s.coeffs
    last = np.flatnonzero(c)
    top = int(last[-1]) if last.size else 0
    out = np.full(u.shape, c[top], dtype=np.complex128)
    for k in range(top - 1, -1, -1):
        out = out * u + c[k]
    if out.ndim == 0:
        return complex(out)
    return out


def derivative_at(s: ComplexSeries, k: int) -> complex:
    """``D^k s(center) = k! c_k``."""
    if k < 0 or k > s.truncation_order:
        raise TruncationOrderError(
            f"derivative of order {k} requested from a series truncated at {s.truncation_order}"
        )
    return complex(math.factorial(k) * s.coeffs[k])


def compose(outer: ComplexSeries, inner: ComplexSeries, order: int | None = None) -> ComplexSeries:
    """Truncated series of ``outer(inner(z))`` about ``inner.center``.

    ``inner`` must satisfy ``inner(inner.center) == outer.center`` so the
    composition is a formal power series.  The result is exact through
    ``order`` (default: the smaller of the two truncation orders).
    """
    start = inner.coeffs[0]
    scale = max(1.0, abs(outer.center))
    if abs(start - outer.center) > _CENTER_TOL * scale:
        raise CompositionDomainError(
            f"inner series starts at {complex(start)!r}, outer is centered at {outer.center!r}"
        )
    common = min(outer.truncation_order, inner.truncation_order)
    n = common if order is None else order
    if n > common:
        raise TruncationOrderError(f"composition order {n} exceeds the operands' truncation {common}")
    u = np.zeros(n + 1, dtype=np.complex128)
    u[1:] = inner.coeffs[1 : n + 1]

    oc = outer.coeffs[: n + 1]
    nz = np.flatnonzero(oc)
    top = int(nz[-1]) if nz.size else 0
    out = np.zeros(n + 1, dtype=np.complex128)
    out[0] = oc[top]
    for k in range(top - 1, -1, -1):
        out = np.convolve(out, u)[: n + 1]
        out[0] += oc[k]
    return ComplexSeries(out, inner.center)


def recenter(s: ComplexSeries, new_center: complex, order: int | None = None) -> ComplexSeries:
    """Re-expand ``s`` about ``new_center`` by the binomial theorem.

    Exact (up to rounding) when ``s`` is a polynomial.  With ``order`` only
    the first ``order + 1`` coefficients are produced.
    """
    n = s.truncation_order
    m = n if order is None else min(order, n)
    d = complex(new_center) - s.center
    if d == 0:
        return ComplexSeries(s.coeffs[: m + 1], s.center)
    k = np.arange(n + 1)
    out = np.empty(m + 1, dtype=np.complex128)
    for j in range(m + 1):
        kk = k[j:]
        out[j] = np.sum(s.coeffs[j:] * comb(kk, j) * d ** (kk - j))
    return ComplexSeries(out, complex(new_center))


def zero_order(s: ComplexSeries, tol: float = ZERO_TOL) -> int | None:
    """Smallest ``k`` with ``|c_k| > tol``; ``None`` if every coefficient is below ``tol``."""
    if tol <= 0:
        raise DomainError("tol must be positive")
    idx = np.flatnonzero(np.abs(s.coeffs) > tol)
    return int(idx[0]) if idx.size else None


# -- Faa di Bruno -------------------------------------------------------------


@dataclass(frozen=True)
class PartitionTerm:
    """Multiplicity vector ``(k_1..k_n)`` with ``sum j*k_j = n`` and weight ``n!/prod k_j!``."""

    multiplicities: tuple[int, ...]
    multinomial_weight: int

    @property
    def n(self) -> int:
        return sum((j + 1) * k for j, k in enumerate(self.multiplicities))

    @property
    def outer_order(self) -> int:
        """``k_1 + ... + k_n``, the derivative order applied to the outer function."""
        return sum(self.multiplicities)


def _multiplicity_vectors(n: int):
    ks = [0] * n

    def rec(j: int, rem: int):
        # assign k_j for part size j (1-based), largest parts first
        if j == 0:
            if rem == 0:
                yield tuple(ks)
            return
        for kj in range(rem // j, -1, -1):
            ks[j - 1] = kj
            yield from rec(j - 1, rem - j * kj)
        ks[j - 1] = 0

    yield from rec(n, n)


def _weight(n: int, ks: Sequence[int]) -> int:
    # exact integer n! / prod(k_j!), built from binomials to stay in small ints
    w, used = 1, 0
    for k in ks:
        if k:
            used += k
            w *= math.comb(used, k)
    return w * math.perm(n, n - used)


@lru_cache(maxsize=None)
def _partitions(n: int) -> tuple[PartitionTerm, ...]:
    terms = [PartitionTerm(ks, _weight(n, ks)) for ks in _multiplicity_vectors(n)]
    terms.sort(key=lambda t: t.multiplicities, reverse=True)
    return tuple(terms)


def enumerate_partitions(n: int) -> list[PartitionTerm]:
    """All multiplicity vectors of weighted degree ``n`` with exact weights.

    The count equals the partition number p(n).
    """
    if not 1 <= n <= PARTITION_CAP:
        raise PartitionCapError(f"n must lie in 1..{PARTITION_CAP}, got {n}")
    return list(_partitions(n))


def faa_di_bruno(outer_derivs: Sequence[complex], inner: ComplexSeries, n: int) -> complex:
    """``D^n (m o q)`` at ``inner.center``.

    ``outer_derivs[j-1]`` must hold ``(D^j m)(q(center))`` for ``j = 1..n``;
    ``inner`` is the series of ``q``, so ``D^j q(center) / j! = inner[j]``.
    """
    if n < 1:
        raise DomainError("Faa di Bruno needs n >= 1")
    if len(outer_derivs) < n:
        raise ArityError(f"need {n} outer derivatives, got {len(outer_derivs)}")
    if inner.truncation_order < n:
        raise TruncationOrderError(f"inner series truncated at {inner.truncation_order} < {n}")
    q = inner.coeffs
    total = 0j
    for term in enumerate_partitions(n):
        prod = complex(outer_derivs[term.outer_order - 1])
        for j, k in enumerate(term.multiplicities, start=1):
            if k:
                prod *= q[j] ** k
        total += term.multinomial_weight * prod
    return total
