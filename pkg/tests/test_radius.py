"""Root location for the gap equation (1+gamma) phi_0 = (2/p) tail."""

import math

import numpy as np
import pytest

from bohrad.radius import (
    NoRootError,
    RadiusQuery,
    gap,
    minimal_root,
    sharpness_window_check,
)
from bohrad.series import DomainParams
from bohrad.weights import (
    AlphaCesaro,
    Bernardi,
    BetaCesaro,
    CustomFamily,
    EvenPowers,
    Linear,
    LinearPlusOne,
    OddPowers,
    PowerTail,
    Quadratic,
)

BUILTINS = [
    PowerTail(1),
    EvenPowers(),
    OddPowers(),
    LinearPlusOne(1),
    Linear(1),
    Quadratic(1),
    BetaCesaro(1.0),
    AlphaCesaro(0.0),
    Bernardi(1, 1.0),
]


def q(family, gamma=0.0, p=1.0):
    return RadiusQuery(family, DomainParams(gamma), p)


class TestGap:
    def test_at_origin(self):
        assert gap(q(PowerTail(1)), 0.0) == 1.0

    def test_classical_root(self):
        assert gap(q(PowerTail(1)), 1.0 / 3.0) == pytest.approx(0.0, abs=1e-15)

    def test_odd_family_value(self):
        # tail = r/(1-r^2): 1 - 2*(0.5/0.75) = -1/3
        assert gap(q(OddPowers()), 0.5) == pytest.approx(-1.0 / 3.0, abs=1e-15)

    def test_vectorized(self):
        xs = np.array([0.0, 0.25, 0.5])
        np.testing.assert_allclose(
            gap(q(PowerTail(1)), xs), [1.0, 1.0 - 2.0 / 3.0, -1.0], atol=1e-15
        )

    def test_rejects_x_out_of_range(self):
        with pytest.raises(ValueError):
            gap(q(PowerTail(1)), 1.0)


class TestMinimalRoot:
    def test_classical_anchor(self):
        res = minimal_root(q(PowerTail(1)))
        assert res.radius == pytest.approx(1.0 / 3.0, abs=1e-10)

    @pytest.mark.parametrize("gamma", [0.0, 0.2, 0.5, 0.9])
    def test_power_tail_linear_solve(self, gamma):
        res = minimal_root(q(PowerTail(1), gamma))
        assert res.radius == pytest.approx((1 + gamma) / (3 + gamma), abs=1e-10)

    def test_odd_quadratic_solve(self):
        res = minimal_root(q(OddPowers()))
        assert res.radius == pytest.approx(math.sqrt(2) - 1, abs=1e-10)

    def test_even_quadratic_solve(self):
        res = minimal_root(q(EvenPowers()))
        assert res.radius == pytest.approx(1.0 / math.sqrt(3), abs=1e-10)

    @pytest.mark.parametrize("family", BUILTINS, ids=str)
    @pytest.mark.parametrize("gamma,p", [(0.0, 1.0), (0.5, 0.5), (0.75, 2.0)])
    def test_result_invariants(self, family, gamma, p):
        if isinstance(family, (BetaCesaro, AlphaCesaro, Bernardi)) and p != 1.0:
            p = 1.0
        query = q(family, gamma, p)
        res = minimal_root(query, tol=1e-12)
        lo, hi = res.bracket
        assert gap(query, lo) > 0.0
        assert gap(query, hi) <= 0.0
        assert lo <= res.radius <= hi
        assert hi - lo <= 1e-12
        assert 0.0 < res.radius < 1.0
        assert res.evaluations > 0

    @pytest.mark.parametrize("family", BUILTINS, ids=str)
    def test_root_is_genuine_not_grid_artifact(self, family):
        query = q(family, 0.25, 1.0)
        res = minimal_root(query, tol=1e-12)
        h = 1e-6
        slope = (gap(query, res.radius + h) - gap(query, res.radius - h)) / (2 * h)
        assert abs(res.residual) <= 10.0 * 1e-12 * abs(slope)

    @pytest.mark.parametrize("family", BUILTINS, ids=str)
    def test_no_earlier_crossing_at_half_step(self, family):
        # grid independence: nothing is missed below the located bracket
        query = q(family, 0.25, 1.0)
        res = minimal_root(query)
        lo = res.bracket[0]
        fine = np.arange(1, math.floor(lo / 5e-4) + 1) * 5e-4
        assert np.all(np.asarray(gap(query, fine)) > 0.0)

    def test_monotone_in_gamma(self):
        radii = [minimal_root(q(PowerTail(1), g)).radius for g in np.arange(0.0, 0.91, 0.1)]
        assert all(b > a for a, b in zip(radii, radii[1:]))
        closed = [(1 + g) / (3 + g) for g in np.arange(0.0, 0.91, 0.1)]
        np.testing.assert_allclose(radii, closed, atol=1e-10)

    @pytest.mark.parametrize("family", [PowerTail(1), EvenPowers(), OddPowers(), Quadratic(1)], ids=str)
    def test_monotone_in_p(self, family):
        radii = [minimal_root(q(family, 0.3, p)).radius for p in (0.25, 0.5, 1.0, 1.5, 2.0)]
        assert all(b >= a - 1e-12 for a, b in zip(radii, radii[1:]))

    def test_rejects_invalid_p(self):
        with pytest.raises(ValueError):
            q(PowerTail(1), p=0.0)
        with pytest.raises(ValueError):
            q(PowerTail(1), p=2.5)

    def test_rejects_bad_tol(self):
        with pytest.raises(ValueError):
            minimal_root(q(PowerTail(1)), tol=0.0)

    def test_no_root_when_tail_vanishes(self):
        dead = CustomFamily(
            name="no-tail",
            phi0_fn=lambda r: np.ones_like(r),
            phi_k_fn=lambda k, r: np.zeros_like(r),
            tail_fn=lambda r: np.zeros_like(r),
        )
        with pytest.raises(NoRootError):
            minimal_root(q(dead))

    def test_fine_scan_catches_tiny_root(self):
        # gap is already negative at the first coarse point; the 1e-6 rescan
        # near 0 must still isolate the crossing at about 1/2001
        steep = CustomFamily(
            name="steep-tail",
            phi0_fn=lambda r: np.ones_like(r),
            phi_k_fn=lambda k, r: 1000.0 * r ** k,
            tail_fn=lambda r: 1000.0 * r / (1.0 - r),
        )
        res = minimal_root(q(steep))
        assert res.radius == pytest.approx(1.0 / 2001.0, rel=1e-6)

    def test_no_root_when_gap_never_positive(self):
        upside_down = CustomFamily(
            name="zero-head",
            phi0_fn=lambda r: np.zeros_like(r),
            phi_k_fn=lambda k, r: r ** k,
            tail_fn=lambda r: r / (1.0 - r),
        )
        with pytest.raises(NoRootError):
            minimal_root(q(upside_down))

    def test_bernardi_gap_positive_near_zero(self):
        # phi_0 vanishes at 0+, but the gap is still positive on the first
        # grid points: the standard scan applies
        query = q(Bernardi(1, 1.0), 0.5, 1.0)
        assert gap(query, 1e-3) > 0.0
        res = minimal_root(query)
        assert 0.0 < res.radius < 1.0


class TestSharpnessWindow:
    def test_classical_window(self):
        assert sharpness_window_check(q(PowerTail(1)), 1.0 / 3.0, 0.05) is True

    def test_power_tail_n2_p2(self):
        query = q(PowerTail(2), 0.0, 2.0)
        res = minimal_root(query)
        assert sharpness_window_check(query, res.radius, 0.02) is True

    def test_false_below_radius(self):
        # a window strictly below the root sees a positive gap
        assert sharpness_window_check(q(PowerTail(1)), 0.2, 0.05) is False

    def test_window_must_stay_inside_domain(self):
        with pytest.raises(ValueError):
            sharpness_window_check(q(PowerTail(1)), 0.98, 0.05)
        with pytest.raises(ValueError):
            sharpness_window_check(q(PowerTail(1)), 0.5, 0.0)

    @pytest.mark.parametrize("family", BUILTINS, ids=str)
    def test_all_builtins_have_sharp_windows(self, family):
        res = minimal_root(q(family, 0.25, 1.0))
        assert res.sharp_window_ok is True
