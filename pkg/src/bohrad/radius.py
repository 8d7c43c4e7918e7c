"""Sharp radius computation for weighted Bohr inequalities on shifted disks.

The radius is the minimal positive root of

    (1 + gamma) * phi_0(x) = (2/p) * sum_{k>=1} phi_k(x),

located as the first positive-to-nonpositive sign change of the gap function
on a refining scan, then bisected to tolerance.  The bracket is certain by
construction: gap(lo) > 0 >= gap(hi) at every step.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import weights
from .series import DomainParams
from .weights import WeightFamily

SCAN_STEP = 1e-3
FINE_STEP = 1e-6
SCAN_END = 1.0 - 1e-9
DEFAULT_TOL = 1e-12
_BLOCK = 128


class NoRootError(Exception):
    """The gap never crosses from positive to non-positive on (0, 1)."""


@dataclass(frozen=True)
class RadiusQuery:
    family: WeightFamily
    domain: DomainParams
    p: float

    def __post_init__(self):
        if not (0.0 < self.p <= 2.0):
            raise ValueError(f"p must be in (0, 2], got {self.p}")


@dataclass(frozen=True)
class RadiusResult:
    radius: float
    bracket: tuple
    residual: float
    sharp_window_ok: bool
    evaluations: int


def gap(query: RadiusQuery, x):
    """(1+gamma) phi_0(x) - (2/p) sum_{k>=1} phi_k(x); positive below the radius."""
    g = query.domain.gamma
    return (1.0 + g) * weights.phi0(query.family, x) - (2.0 / query.p) * weights.tail_sum(
        query.family, x
    )


def _first_bracket(query: RadiusQuery):
    """Scan for the first sign change of gap from positive to non-positive.

    Coarse step 1e-3 up to just below 1.  If the gap is already non-positive
    at the very first coarse point, a 1e-6 scan near 0 guards families whose
    gap needs care there (the Bernardi family vanishes at 0+).
    """
    coarse = np.append(np.arange(1, 1000) * SCAN_STEP, SCAN_END)
    evals = 1
    start = 1
    prev = coarse[0]
    if float(gap(query, coarse[0])) <= 0.0:
        fine = np.arange(1, 2001) * FINE_STEP
        gf = np.asarray(gap(query, fine))
        evals += fine.size
        pos = np.nonzero(gf > 0.0)[0]
        if pos.size == 0:
            raise NoRootError(
                "gap(x) <= 0 at all sampled points in (0, 2e-3): "
                "no positive-to-nonpositive crossing exists"
            )
        i = int(pos[0])
        nonpos_after = np.nonzero(gf[i + 1 :] <= 0.0)[0]
        if nonpos_after.size:
            j = i + 1 + int(nonpos_after[0])
            return (float(fine[j - 1]), float(fine[j])), evals
        prev = fine[-1]
        start = 2  # fine scan already covered up to 2e-3
    for lo_i in range(start, coarse.size, _BLOCK):
        block = coarse[lo_i : lo_i + _BLOCK]
        gb = np.asarray(gap(query, block))
        evals += block.size
        nonpos = np.nonzero(gb <= 0.0)[0]
        if nonpos.size:
            j = int(nonpos[0])
            lo = prev if j == 0 else block[j - 1]
            return (float(lo), float(block[j])), evals
        prev = block[-1]
    raise NoRootError("gap(x) > 0 on all of (0, 1): the inequality holds up to 1")


def minimal_root(query: RadiusQuery, tol: float = DEFAULT_TOL, window_epsilon=None) -> RadiusResult:
    """Locate the minimal positive root of the gap equation to |hi-lo| <= tol.

    The bracket is refined by vectorized 16-section (bisection batched 15
    interior points at a time); tracking the first non-positive interior
    point keeps gap(lo) > 0 >= gap(hi) certain at every step.
    """
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    (lo, hi), evals = _first_bracket(query)
    frac = np.arange(1, 16) / 16.0
    while hi - lo > tol:
        pts = lo + (hi - lo) * frac
        if pts[0] <= lo or pts[-1] >= hi:  # float spacing exhausted
            break
        gp = np.asarray(gap(query, pts))
        evals += pts.size
        nonpos = np.nonzero(gp <= 0.0)[0]
        if nonpos.size:
            j = int(nonpos[0])
            hi = float(pts[j])
            if j > 0:
                lo = float(pts[j - 1])
        else:
            lo = float(pts[-1])
    radius = 0.5 * (lo + hi)
    residual = float(gap(query, radius))
    evals += 1
    epsilon = window_epsilon
    if epsilon is None:
        epsilon = min(0.05, 0.5 * (1.0 - radius))
    ok = sharpness_window_check(query, radius, epsilon)
    evals += 32
    return RadiusResult(radius, (lo, hi), residual, ok, evals)


def sharpness_window_check(
    query: RadiusQuery, radius: float, epsilon: float, samples: int = 32
) -> bool:
    """True iff gap < 0 at all sample points in (radius, radius + epsilon).

    A strictly negative window certifies the radius cannot be enlarged; a
    tangent gap leaves the check false (reported as indeterminate upstream).
    """
    if not epsilon > 0.0:
        raise ValueError("epsilon must be positive")
    if radius + epsilon >= 1.0:
        raise ValueError("window (radius, radius+epsilon) must stay inside [0, 1)")
    pts = radius + epsilon * np.arange(1, samples + 1) / (samples + 1.0)
    return bool(np.all(np.asarray(gap(query, pts)) < 0.0))
