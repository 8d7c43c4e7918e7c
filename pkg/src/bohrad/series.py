"""Truncated power series for unit-bounded analytic functions on shifted disks.

The domain is the disk Omega(gamma) = { z : |z + gamma/(1-gamma)| < 1/(1-gamma) }
for 0 <= gamma < 1; gamma = 0 recovers the unit disk.  Every function here is
represented by the Taylor coefficients of its restriction to the unit disk.

Three generators are provided:

* ``extremal_coefficients`` — the Mobius map of Omega(gamma) onto the disk,
  ``(a - gamma - (1-gamma) z) / (1 - a gamma - a (1-gamma) z)``, whose
  coefficients decay like q^k with q = a (1-gamma) / (1 - a gamma);
* ``blaschke_coefficients`` — finite Blaschke products on the unit disk,
  coefficients decaying like max|zero|^k;
* ``affine_compose`` — pre-composition with the affine map
  w = (1-gamma) z + gamma that sends Omega(gamma) onto the unit disk, turning
  any unit-bounded disk function into a member over Omega(gamma).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np

from . import _kernels

DEFAULT_ORDER = 200


@dataclass(frozen=True)
class DomainParams:
    """Shifted-disk parameter gamma in [0, 1)."""

    gamma: float

    def __post_init__(self):
        if not (0.0 <= self.gamma < 1.0):
            raise ValueError(f"gamma must be in [0, 1), got {self.gamma}")


class CoefficientSeries:
    """Taylor coefficients c_0 ... c_M of a function analytic on the unit disk."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients):
        arr = np.asarray(coefficients, dtype=np.complex128)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("coefficients must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(arr)):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "coefficients", arr)

    @property
    def order(self) -> int:
        return self.coefficients.size - 1

    def moduli(self) -> np.ndarray:
        return np.abs(self.coefficients)

    def padded(self, order: int) -> "CoefficientSeries":
        """Truncate or zero-pad to exactly order+1 entries."""
        if order == self.order:
            return self
        out = np.zeros(order + 1, dtype=np.complex128)
        n = min(order, self.order) + 1
        out[:n] = self.coefficients[:n]
        return CoefficientSeries(out)

    def evaluate(self, z: complex) -> complex:
        """Horner evaluation of the truncated series at z."""
        acc = 0.0 + 0.0j
        for c in self.coefficients[::-1]:
            acc = acc * z + c
        return acc

    def __len__(self) -> int:
        return self.coefficients.size

    def __repr__(self) -> str:
        return f"CoefficientSeries(order={self.order})"


@dataclass(frozen=True)
class Extremal:
    """The extremal Mobius map of Omega(gamma) onto the disk, parameter a in [0,1)."""

    domain: DomainParams
    a: float

    def __post_init__(self):
        if not (0.0 <= self.a < 1.0):
            raise ValueError(f"a must be in [0, 1), got {self.a}")


@dataclass(frozen=True)
class BlaschkeComposed:
    """A finite Blaschke product pre-composed with the affine map onto Omega(gamma)."""

    domain: DomainParams
    zeros: tuple
    rotation: complex

    def __post_init__(self):
        zeros = tuple(complex(z) for z in self.zeros)
        object.__setattr__(self, "zeros", zeros)
        object.__setattr__(self, "rotation", complex(self.rotation))
        for z in zeros:
            if abs(z) >= 1.0:
                raise ValueError(f"Blaschke zero {z} must lie strictly inside the unit disk")
        if abs(abs(self.rotation) - 1.0) > 1e-12:
            raise ValueError("rotation must be unimodular")


@dataclass(frozen=True)
class Raw:
    """An arbitrary coefficient list; membership in the bounded class is not implied."""

    series: CoefficientSeries


BoundedFunction = Union[Extremal, BlaschkeComposed, Raw]


def extremal_coefficients(domain: DomainParams, a: float, order: int) -> CoefficientSeries:
    """Disk coefficients of the extremal map.

    c_0 = (a-gamma)/(1-a*gamma) and, for k >= 1,
    c_k = -[(1-a^2)/(a(1-a*gamma))] * [a(1-gamma)/(1-a*gamma)]^k.
    The k >= 1 formula has a removable singularity at a = 0, where the map is
    the affine function -gamma - (1-gamma) z; that case is returned explicitly.
    """
    if not (0.0 <= a < 1.0):
        raise ValueError(f"a must be in [0, 1), got {a}")
    if order < 0:
        raise ValueError("order must be >= 0")
    g = domain.gamma
    c = np.zeros(order + 1, dtype=np.complex128)
    if a == 0.0:
        c[0] = -g
        if order >= 1:
            c[1] = -(1.0 - g)
        return CoefficientSeries(c)
    c[0] = (a - g) / (1.0 - a * g)
    q = a * (1.0 - g) / (1.0 - a * g)
    pref = (1.0 - a * a) / (a * (1.0 - a * g))
    k = np.arange(1, order + 1)
    c[1:] = -pref * q ** k
    return CoefficientSeries(c)


@lru_cache(maxsize=64)
def _affine_matrix(gamma: float, order: int) -> np.ndarray:
    return _kernels.binomial_transform(gamma, order)


def affine_compose(outer: CoefficientSeries, domain: DomainParams) -> CoefficientSeries:
    """Coefficients of z -> F((1-gamma) z + gamma) given the coefficients of F.

    Exact binomial accumulation: each power ((1-gamma) z + gamma)^k contributes
    its expansion row; gamma = 0 is the identity.
    """
    if domain.gamma == 0.0:
        return outer
    t = _affine_matrix(domain.gamma, outer.order)
    return CoefficientSeries(outer.coefficients @ t)


def blaschke_coefficients(zeros, rotation: complex, order: int) -> CoefficientSeries:
    """Taylor coefficients of rotation * prod (z - z_i)/(1 - conj(z_i) z).

    Each factor is folded in by exact series division against its two-term
    denominator, so the cost is linear in the truncation order per zero.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    zeros = np.asarray([complex(z) for z in zeros], dtype=np.complex128)
    if zeros.size and np.max(np.abs(zeros)) >= 1.0:
        raise ValueError("all Blaschke zeros must lie strictly inside the unit disk")
    rotation = complex(rotation)
    if abs(abs(rotation) - 1.0) > 1e-12:
        raise ValueError("rotation must be unimodular")
    return CoefficientSeries(_kernels.blaschke_series(zeros, rotation, order))


def coefficients_of(f: BoundedFunction, order: int) -> CoefficientSeries:
    """Disk coefficients of any test function, truncated or padded to order."""
    if isinstance(f, Extremal):
        return extremal_coefficients(f.domain, f.a, order)
    if isinstance(f, BlaschkeComposed):
        disk = blaschke_coefficients(f.zeros, f.rotation, order)
        return affine_compose(disk, f.domain)
    if isinstance(f, Raw):
        return f.series.padded(order)
    raise TypeError(f"not a bounded-function descriptor: {f!r}")


def evaluate_direct(f: BoundedFunction, z: complex) -> complex:
    """Closed-form evaluation, bypassing the series (oracle for truncation tests)."""
    if isinstance(f, Extremal):
        g, a = f.domain.gamma, f.a
        return (a - g - (1.0 - g) * z) / (1.0 - a * g - a * (1.0 - g) * z)
    if isinstance(f, BlaschkeComposed):
        w = (1.0 - f.domain.gamma) * z + f.domain.gamma
        val = f.rotation
        for zero in f.zeros:
            val *= (w - zero) / (1.0 - np.conj(zero) * w)
        return complex(val)
    if isinstance(f, Raw):
        return f.series.evaluate(z)
    raise TypeError(f"not a bounded-function descriptor: {f!r}")


def coefficient_cap(f: BoundedFunction, order: int) -> float:
    """Certified bound on |c_k| for k > order (0 for Raw: the series is finite)."""
    if isinstance(f, Raw):
        return 0.0
    c = coefficients_of(f, 0)
    gamma = f.domain.gamma
    return (1.0 - abs(c.coefficients[0]) ** 2) / (1.0 + gamma)


def tail_bound(f: BoundedFunction, r: float, order: int) -> float:
    """Certified bound on sum_{k > order} |c_k| r^k at radius r < 1."""
    if not (0.0 <= r < 1.0):
        raise ValueError("r must be in [0, 1)")
    if isinstance(f, Raw):
        m = f.series.moduli()
        if order >= f.series.order:
            return 0.0
        k = np.arange(order + 1, f.series.order + 1)
        return float(np.sum(m[order + 1 :] * r ** k))
    if isinstance(f, Extremal):
        g, a = f.domain.gamma, f.a
        if a == 0.0:
            return 0.0 if order >= 1 else (1.0 - g) * r
        q = a * (1.0 - g) / (1.0 - a * g)
        pref = (1.0 - a * a) / (a * (1.0 - a * g))
        return pref * (q * r) ** (order + 1) / (1.0 - q * r)
    return coefficient_cap(f, order) * r ** (order + 1) / (1.0 - r)


@dataclass(frozen=True)
class LemmaBoundReport:
    """Worst excess of |c_n| over the membership bound (1-|c_0|^2)/(1+gamma)."""

    max_violation: float
    worst_index: int


def lemma_bound_report(series: CoefficientSeries, domain: DomainParams) -> LemmaBoundReport:
    """Check |c_n| <= (1-|c_0|^2)/(1+gamma) for n >= 1 over the stored coefficients.

    A non-positive max_violation means the bound holds; members of the bounded
    class on Omega(gamma) always satisfy it.
    """
    m = series.moduli()
    if m[0] > 1.0 + 1e-12:
        raise ValueError(f"|c_0| = {m[0]} exceeds 1: not a candidate member")
    if series.order == 0:
        return LemmaBoundReport(0.0, -1)
    cap = (1.0 - m[0] ** 2) / (1.0 + domain.gamma)
    excess = m[1:] - cap
    worst = int(np.argmax(excess))
    return LemmaBoundReport(float(excess[worst]), worst + 1)
