"""Randomized suite runners and brute-force oracles.

Every cell of a suite is a (family, gamma, p) triple.  Cells draw their own
deterministic RNG stream from (seed, cell index), so two runs with the same
config produce byte-identical reports and any failure replays from the report
alone via the serialized worst-offender descriptor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import weights
from .bohr import extremal_margin, verify_up_to_radius
from .radius import NoRootError, RadiusQuery, minimal_root
from .series import (
    BlaschkeComposed,
    BoundedFunction,
    CoefficientSeries,
    DomainParams,
    Extremal,
    Raw,
    lemma_bound_report,
)
from .weights import (
    AlphaCesaro,
    Bernardi,
    BetaCesaro,
    EvenPowers,
    Linear,
    LinearPlusOne,
    OddPowers,
    PowerTail,
    Quadratic,
    WeightFamily,
    family_name,
    family_params,
)

OPERATOR_FAMILY_TYPES = (BetaCesaro, AlphaCesaro, Bernardi)

DEFAULT_FAMILIES = (
    PowerTail(1),
    EvenPowers(),
    OddPowers(),
    LinearPlusOne(1),
    Linear(1),
    Quadratic(1),
    BetaCesaro(1.0),
    AlphaCesaro(0.0),
    Bernardi(1, 1.0),
)

SHARPNESS_OFFSET = 0.01
SHARPNESS_A_STEPS = (1e-2, 1e-3, 1e-4)  # values of 1 - a for the Richardson ladder


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 20260811
    samples_per_cell: int = 500
    gamma_grid: tuple = (0.0, 0.25, 0.5, 0.75)
    p_grid: tuple = (0.5, 1.0, 2.0)
    families: tuple = DEFAULT_FAMILIES
    tolerance: float = 1e-9
    grid_points: int = 12
    truncation_order: int = 200
    negative_controls: bool = True

    def __post_init__(self):
        if self.samples_per_cell < 1:
            raise ValueError("samples_per_cell must be >= 1")
        for g in self.gamma_grid:
            if not (0.0 <= g < 1.0):
                raise ValueError(f"gamma {g} outside [0, 1)")
        for p in self.p_grid:
            if not (0.0 < p <= 2.0):
                raise ValueError(f"p {p} outside (0, 2]")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        object.__setattr__(self, "gamma_grid", tuple(float(g) for g in self.gamma_grid))
        object.__setattr__(self, "p_grid", tuple(float(p) for p in self.p_grid))
        object.__setattr__(self, "families", tuple(self.families))


def default_config(**overrides) -> SuiteConfig:
    return replace(SuiteConfig(), **overrides) if overrides else SuiteConfig()


def iter_cells(config: SuiteConfig):
    """Cells in deterministic order; operator families run at p = 1 only."""
    for family in config.families:
        p_values = config.p_grid
        if isinstance(family, OPERATOR_FAMILY_TYPES):
            p_values = tuple(p for p in config.p_grid if p == 1.0)
        for gamma in config.gamma_grid:
            for p in p_values:
                yield family, gamma, p


@dataclass
class CellResult:
    family: WeightFamily
    gamma: float
    p: float
    radius: float | None = None
    n_pass: int = 0
    n_fail: int = 0
    worst_excess: float = -math.inf
    worst_function: dict | None = None
    skipped: str | None = None
    control_ok: bool | None = None
    status: str | None = None  # sharpness suite: pass / fail / indeterminate
    margin: float | None = None
    richardson_ratios: tuple = field(default_factory=tuple)

    def to_dict(self) -> dict:
        out = {
            "query": {
                "family": family_name(self.family),
                "params": family_params(self.family),
                "gamma": self.gamma,
                "p": self.p,
            },
            "radius": self.radius,
            "n_pass": self.n_pass,
            "n_fail": self.n_fail,
            "worst_excess": None if self.worst_excess == -math.inf else self.worst_excess,
            "worst_function_descriptor": self.worst_function,
        }
        if self.skipped is not None:
            out["skipped"] = self.skipped
        if self.control_ok is not None:
            out["negative_control_ok"] = self.control_ok
        if self.status is not None:
            out["status"] = self.status
            out["margin"] = self.margin
            out["richardson_ratios"] = list(self.richardson_ratios)
        return out


@dataclass
class SuiteReport:
    kind: str
    seed: int
    cells: list
    overall_pass: bool
    controls_ok: bool | None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "seed": self.seed,
            "overall_pass": self.overall_pass,
            "controls_ok": self.controls_ok,
            "cells": [c.to_dict() for c in self.cells],
        }


def random_bounded_function(domain: DomainParams, rng: np.random.Generator) -> BlaschkeComposed:
    """Draw 0-5 Blaschke zeros uniformly in |z| <= 0.8 plus a random rotation."""
    n = int(rng.integers(0, 6))
    radii = 0.8 * np.sqrt(rng.uniform(size=n))
    angles = 2.0 * np.pi * rng.uniform(size=n)
    zeros = tuple(radii * np.exp(1j * angles))
    rotation = np.exp(2j * np.pi * rng.uniform())
    return BlaschkeComposed(domain, zeros, rotation)


def function_descriptor(f: BoundedFunction) -> dict:
    """JSON-serializable descriptor sufficient to rebuild the function."""
    if isinstance(f, BlaschkeComposed):
        return {
            "kind": "blaschke",
            "gamma": f.domain.gamma,
            "zeros": [[z.real, z.imag] for z in f.zeros],
            "rotation": [f.rotation.real, f.rotation.imag],
        }
    if isinstance(f, Extremal):
        return {"kind": "extremal", "gamma": f.domain.gamma, "a": f.a}
    if isinstance(f, Raw):
        return {
            "kind": "raw",
            "coefficients": [[c.real, c.imag] for c in f.series.coefficients],
        }
    raise TypeError(f"not a bounded-function descriptor: {f!r}")


def _deterministic_functions(domain: DomainParams):
    fns = [Raw(CoefficientSeries([c])) for c in (0.0, 1.0, -1.0, 0.5)]
    fns += [Extremal(domain, a) for a in (0.5, 0.9, 0.999)]
    return fns


def run_inequality_suite(config: SuiteConfig) -> SuiteReport:
    """Verify the weighted inequality per cell: random members plus the
    deterministic set, all checked up to the computed sharp radius."""
    cells = []
    any_controls = False
    for idx, (family, gamma, p) in enumerate(iter_cells(config)):
        domain = DomainParams(gamma)
        query = RadiusQuery(family, domain, p)
        cell = CellResult(family=family, gamma=gamma, p=p)
        try:
            root = minimal_root(query)
        except NoRootError as exc:
            cell.skipped = f"no root: {exc}"
            cells.append(cell)
            continue
        cell.radius = root.radius
        rng = np.random.default_rng([config.seed, idx])
        fns = [random_bounded_function(domain, rng) for _ in range(config.samples_per_cell)]
        fns.extend(_deterministic_functions(domain))
        for f in fns:
            report = verify_up_to_radius(
                f,
                query,
                root.radius,
                grid_points=config.grid_points,
                order=config.truncation_order,
                tol=config.tolerance,
            )
            if report.passed:
                cell.n_pass += 1
            else:
                cell.n_fail += 1
            if report.max_excess > cell.worst_excess:
                cell.worst_excess = report.max_excess
                cell.worst_function = function_descriptor(f)
        if config.negative_controls:
            any_controls = True
            # the control is flagged if either check catches it: the
            # coefficient bound (|a_1| = 2 cannot belong to the class) or,
            # failing that, the inequality itself
            control = Raw(CoefficientSeries([0.0, 2.0]))
            report = verify_up_to_radius(
                control,
                query,
                root.radius,
                grid_points=config.grid_points,
                order=config.truncation_order,
                tol=config.tolerance,
            )
            membership = lemma_bound_report(control.series, domain)
            cell.control_ok = (membership.max_violation > 1e-10) or (not report.passed)
        cells.append(cell)
    overall = all(c.n_fail == 0 for c in cells if c.skipped is None)
    controls = (
        all(c.control_ok for c in cells if c.control_ok is not None) if any_controls else None
    )
    return SuiteReport(
        kind="inequality", seed=config.seed, cells=cells, overall_pass=overall, controls_ok=controls
    )


def run_sharpness_suite(config: SuiteConfig) -> SuiteReport:
    """Check that the extremal family violates the inequality just beyond the
    radius, and record the Richardson ladder of the first-order expansion."""
    cells = []
    for family, gamma, p in iter_cells(config):
        domain = DomainParams(gamma)
        query = RadiusQuery(family, domain, p)
        cell = CellResult(family=family, gamma=gamma, p=p)
        try:
            root = minimal_root(query)
        except NoRootError as exc:
            cell.skipped = f"no root: {exc}"
            cells.append(cell)
            continue
        cell.radius = root.radius
        r_test = root.radius + SHARPNESS_OFFSET
        if r_test >= 1.0:
            cell.skipped = "radius too close to 1 for the sharpness window"
            cells.append(cell)
            continue
        if 1.0 - min(SHARPNESS_A_STEPS) <= gamma:
            cell.skipped = "gamma too close to 1 for the extremal parameter ladder"
            cells.append(cell)
            continue
        ratios = []
        margins = {}
        for one_minus_a in SHARPNESS_A_STEPS:
            em = extremal_margin(domain, 1.0 - one_minus_a, family, p, r_test)
            margins[one_minus_a] = em.margin
            ratios.append(abs(em.margin - em.first_order_prediction) / one_minus_a)
        cell.margin = margins[1e-3]
        cell.richardson_ratios = tuple(ratios)
        if cell.margin > 0.0:
            cell.status = "pass"
            cell.n_pass = 1
        elif not root.sharp_window_ok:
            cell.status = "indeterminate"  # tangent gap: violation test is inconclusive
        else:
            cell.status = "fail"
            cell.n_fail = 1
        cells.append(cell)
    overall = all(c.n_fail == 0 for c in cells if c.skipped is None)
    return SuiteReport(
        kind="sharpness", seed=config.seed, cells=cells, overall_pass=overall, controls_ok=None
    )


def brute_force_tail(family: WeightFamily, r: float, terms: int) -> float:
    """sum_{k=1}^{terms} phi_k(r) by direct summation; no closed forms anywhere."""
    if terms < 1:
        raise ValueError("terms must be >= 1")
    return math.fsum(weights.phi_k(family, k, r) for k in range(1, terms + 1))
