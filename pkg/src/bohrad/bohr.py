"""Weighted Bohr sums A_f = |c_0|^p phi_0(r) + sum |c_k| phi_k(r) and checks.

Verification is truncation-aware: a failure is only declared when the excess
over phi_0 exceeds the certified bound on the mass dropped by truncating the
series, so a true member is never flagged because of a finite cutoff.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import weights
from .radius import RadiusQuery
from .series import (
    DEFAULT_ORDER,
    BoundedFunction,
    CoefficientSeries,
    DomainParams,
    Raw,
    coefficient_cap,
    coefficients_of,
    extremal_coefficients,
)
from .weights import WeightFamily


@dataclass
class BohrReport:
    """Grid evaluation of the weighted Bohr sum against phi_0."""

    radii: np.ndarray
    bohr_sums: np.ndarray
    phi0_values: np.ndarray
    max_excess: float
    truncation_bound: float
    tolerance: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "radii": list(map(float, self.radii)),
            "bohr_sums": list(map(float, self.bohr_sums)),
            "phi0_values": list(map(float, self.phi0_values)),
            "max_excess": float(self.max_excess),
            "truncation_bound": float(self.truncation_bound),
            "tolerance": float(self.tolerance),
            "pass": bool(self.passed),
        }


def bohr_sum(series: CoefficientSeries, family: WeightFamily, p: float, r: float) -> float:
    """|c_0|^p phi_0(r) + sum_{k=1}^M |c_k| phi_k(r) over the stored coefficients."""
    if not (0.0 < p <= 2.0):
        raise ValueError(f"p must be in (0, 2], got {p}")
    v = weights.phi_vector(family, series.order, r)
    m = series.moduli()
    return float(m[0] ** p * v[0] + m[1:] @ v[1:])


@lru_cache(maxsize=512)
def _phi_matrix(family, radius: float, grid_points: int, order: int) -> np.ndarray:
    """Row i holds [phi_0(r_i), ..., phi_order(r_i)] over the linspace grid."""
    radii = np.linspace(0.0, radius, grid_points)
    mat = np.vstack([weights.phi_vector(family, order, float(r)) for r in radii])
    mat.flags.writeable = False
    return mat


@lru_cache(maxsize=512)
def _tail_allowance(family, radius: float, grid_points: int, order: int) -> float:
    radii = np.linspace(0.0, radius, grid_points)
    return max(weights.phi_tail_mass(family, float(r), order) for r in radii)


def verify_up_to_radius(
    f: BoundedFunction,
    query: RadiusQuery,
    radius: float,
    grid_points: int = 16,
    order: int = DEFAULT_ORDER,
    tol: float = 1e-9,
) -> BohrReport:
    """Evaluate the Bohr sum of f on a uniform grid over [0, radius].

    Membership of f in the bounded class on the query's domain is a caller
    assertion; feeding a non-member is how negative controls are run.
    """
    if not (0.0 <= radius < 1.0):
        raise ValueError("radius must be in [0, 1)")
    if grid_points < 1:
        raise ValueError("grid_points must be >= 1")
    if isinstance(f, Raw):
        order = max(order, f.series.order)  # keep the stored series intact
    series = coefficients_of(f, order)
    cap = coefficient_cap(f, order)
    radii = np.linspace(0.0, radius, grid_points)
    pmat = _phi_matrix(query.family, float(radius), int(grid_points), int(order))
    m = series.moduli()
    sums = pmat[:, 0] * m[0] ** query.p + pmat[:, 1:] @ m[1:]
    phi0s = pmat[:, 0]
    trunc = cap * _tail_allowance(query.family, float(radius), int(grid_points), int(order))
    max_excess = float(np.max(sums - phi0s))
    return BohrReport(
        radii=radii,
        bohr_sums=sums,
        phi0_values=phi0s,
        max_excess=max_excess,
        truncation_bound=float(trunc),
        tolerance=float(tol),
        passed=max_excess <= tol + trunc,
    )


@dataclass(frozen=True)
class ExtremalMargin:
    """Observed excess of the extremal family over phi_0, with its linear model."""

    margin: float
    first_order_prediction: float


def extremal_margin(
    domain: DomainParams,
    a: float,
    family: WeightFamily,
    p: float,
    r: float,
    order: int = 600,
) -> ExtremalMargin:
    """Bohr-sum excess of the extremal map at radius r, against the expansion

        margin = ((1-a)/(1-gamma)) [2 sum phi_k(r) - p (1+gamma) phi_0(r)] + O((1-a)^2)

    valid as a -> 1 with gamma < a.  Just beyond the sharp radius the bracket
    is positive, so the margin is positive for a close enough to 1: that is
    the numerical sharpness certificate.
    """
    if not (domain.gamma < a < 1.0):
        raise ValueError(f"requires gamma < a < 1, got gamma={domain.gamma}, a={a}")
    series = extremal_coefficients(domain, a, order)
    p0 = float(weights.phi0(family, r))
    margin = bohr_sum(series, family, p, r) - p0
    pred = (
        (1.0 - a)
        / (1.0 - domain.gamma)
        * (2.0 * float(weights.tail_sum(family, r)) - p * (1.0 + domain.gamma) * p0)
    )
    return ExtremalMargin(margin=float(margin), first_order_prediction=float(pred))


def p_bound_check(x, p: float):
    """(1 - x^p)/(1 - x^2) - p/2, which is >= 0 on [0,1) for p in (0,2]."""
    arr = np.asarray(x, dtype=np.float64)
    if np.any(arr < 0.0) or np.any(arr >= 1.0):
        raise ValueError("x must lie in [0, 1)")
    if not (0.0 < p <= 2.0):
        raise ValueError(f"p must be in (0, 2], got {p}")
    value = (1.0 - arr ** p) / (1.0 - arr ** 2) - p / 2.0
    return float(value) if np.ndim(x) == 0 else value
