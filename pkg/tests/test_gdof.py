import io
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linprog

from icci.channel import GdofExponents
from icci.gdof import (
    CURVE_CSV_HEADER,
    build_gdof_region,
    dof_curve_samples,
    dof_ic,
    dof_ic_lp,
    dof_icci,
    dof_icci_lp,
    dof_uplift,
    gdof_coeffs,
    multiplexing_gain,
    multiplexing_targets,
    per_user_dof_optimum,
    symmetric_region,
    write_curve_csv,
)
from icci.region import contains, vertices

exps = st.floats(min_value=0.0, max_value=3.0)
GRID = [k / 100.0 for k in range(301)]


class TestGdofCoeffs:
    def test_alpha06(self):
        c = gdof_coeffs(GdofExponents(1, 0.6, 0.6, 1))
        assert (c.a1, c.d1, c.e1, c.g1) == (0.4, 1.0, 0.6, 1.0)
        assert (c.a2, c.d2, c.e2, c.g2) == (c.a1, c.d1, c.e1, c.g1)

    def test_no_interference(self):
        c = gdof_coeffs(GdofExponents(1, 0, 0, 1))
        assert c.a1 == c.d1 == c.e1 == c.g1 == 1.0

    def test_strong_interference(self):
        c = gdof_coeffs(GdofExponents(1, 2, 2, 1))
        assert c.a1 == 0.0 and c.e1 == 2.0 and c.g1 == 2.0

    @given(exps, exps, exps, exps)
    def test_ordering(self, a11, a12, a21, a22):
        c = gdof_coeffs(GdofExponents(a11, a12, a21, a22))
        for a, d, e, g in ((c.a1, c.d1, c.e1, c.g1), (c.a2, c.d2, c.e2, c.g2)):
            assert a <= d <= g
            assert a <= e <= g


class TestGdofRegion:
    def test_alpha06_membership(self):
        region = build_gdof_region(gdof_coeffs(GdofExponents(1, 0.6, 0.6, 1)))
        assert region.label == "gdof"
        assert len(region.halfspaces) == 9
        assert contains(region, (0.2, 0.6, 0.6))
        assert not contains(region, (0.2 + 1e-6, 0.6, 0.6))
        pts = vertices(region).points
        target = np.array([0.2, 0.6, 0.6])
        assert np.min(np.max(np.abs(pts - target), axis=1)) < 1e-9

    def test_zero_coeffs_collapse(self):
        region = build_gdof_region(gdof_coeffs(GdofExponents(0, 0, 0, 0)))
        assert len(vertices(region)) == 1

    def test_private_only_slice(self):
        # with d0 pinned to zero the best symmetric point is 0.6 per user
        region = build_gdof_region(gdof_coeffs(GdofExponents(1, 0.6, 0.6, 1)))
        res = linprog(
            c=[0, -1, 0],
            A_ub=region.coefficient_matrix(),
            b_ub=region.rhs_vector(),
            A_eq=[[1, 0, 0], [0, 1, -1]],
            b_eq=[0, 0],
            bounds=[(0, None)] * 3,
            method="highs",
        )
        assert res.status == 0
        assert -res.fun == pytest.approx(0.6, abs=1e-9)


class TestSymmetricRegion:
    def test_alpha06_rows(self):
        rows = symmetric_region(0.6)
        assert [(hs.c, hs.rhs) for hs in rows] == [
            ((1, 1, 0), 1.0),
            ((0, 1, 0), 0.6),
            ((1, 2, 0), pytest.approx(1.4)),
        ]

    def test_weak_and_strong_collapse(self):
        assert [hs.rhs for hs in symmetric_region(0.0)] == [1.0, 1.0, 2.0]
        assert [hs.rhs for hs in symmetric_region(3.0)] == [3.0, 1.0, 3.0]


class TestClosedForms:
    def test_spot_values(self):
        assert dof_ic(0.6) == 0.6
        assert dof_icci(0.6) == 0.7
        assert dof_uplift(0.6) == pytest.approx(0.1, abs=1e-12)
        assert dof_ic(0.0) == 1.0
        assert dof_ic(2.5) == 1.0
        assert dof_icci(0.25) == 0.875
        assert dof_icci(1.0) == 0.5 and dof_uplift(1.0) == 0.0

    def test_rejects_bad_alpha(self):
        for bad in (-0.1, math.inf, math.nan):
            with pytest.raises(ValueError):
                dof_ic(bad)

    def test_uplift_support(self):
        for alpha in GRID:
            u = dof_uplift(alpha)
            if 2.0 / 3.0 <= alpha <= 2.0 or alpha == 0.0:
                assert u == 0.0
            else:
                assert u > 0.0

    def test_continuity_at_breakpoints(self):
        h = 0.01
        for curve in (dof_ic, dof_icci):
            for b in (0.5, 2.0 / 3.0, 1.0, 2.0):
                assert abs(curve(b) - curve(b - h)) <= 1.5 * h + 1e-9
                assert abs(curve(b + h) - curve(b)) <= 1.5 * h + 1e-9


class TestLpCrossCheck:
    def test_grid_agreement(self):
        for alpha in GRID:
            assert dof_icci_lp(alpha) == pytest.approx(dof_icci(alpha), abs=1e-9)
            assert dof_ic_lp(alpha) == pytest.approx(dof_ic(alpha), abs=1e-9)

    def test_alpha06_optimum_point(self):
        value, point = per_user_dof_optimum(0.6)
        assert value == pytest.approx(0.7, abs=1e-12)
        # the optimum face contains (0.2, 0.6); check feasibility and value
        assert (point.d0 + 2 * point.d1) / 2 == pytest.approx(0.7, abs=1e-12)
        rows = symmetric_region(0.6)
        for hs in rows:
            assert hs.c[0] * point.d0 + hs.c[1] * point.d1 <= hs.rhs + 1e-9

    def test_trivial_optima(self):
        value, point = per_user_dof_optimum(0.0)
        assert value == pytest.approx(1.0, abs=1e-12)
        assert (point.d0, point.d1) == (pytest.approx(0.0, abs=1e-9), pytest.approx(1.0))
        assert dof_icci_lp(3.0) == pytest.approx(1.5, abs=1e-12)

    def test_region_module_consistency(self):
        # symmetric slice of the full 3-D polytope gives the same curve
        for alpha in (0.0, 0.3, 0.5, 0.6, 2.0 / 3.0, 0.8, 1.0, 1.5, 2.0, 2.5, 3.0):
            region = build_gdof_region(gdof_coeffs(GdofExponents(1, alpha, alpha, 1)))
            res = linprog(
                c=[-0.5, -0.5, -0.5],  # per-user total (r0 + r1 + r2) / 2
                A_ub=region.coefficient_matrix(),
                b_ub=region.rhs_vector(),
                A_eq=[[0, 1, -1]],
                b_eq=[0],
                bounds=[(0, None)] * 3,
                method="highs",
            )
            assert res.status == 0
            assert -res.fun == pytest.approx(dof_icci(alpha), abs=1e-9)


class TestMultiplexing:
    def test_targets_track_exponent_coeffs(self):
        t = multiplexing_targets(GdofExponents(1, 0.6, 0.6, 1))
        assert t["A1"] == 0.4 and t["D1"] == 1.0 and t["E1"] == 0.6
        assert t["G1"] == 1.0 and t["G1p"] == 1.0

    @pytest.mark.parametrize(
        "exponents",
        [GdofExponents(1, 0.6, 0.6, 1), GdofExponents(1, 0, 0, 1), GdofExponents(1, 2, 2, 1)],
    )
    def test_finite_power_convergence(self, exponents):
        targets = multiplexing_targets(exponents)
        lo = multiplexing_gain(exponents, 1e6)
        hi = multiplexing_gain(exponents, 1e12)
        dev_lo = max(abs(lo[k] - targets[k]) for k in targets)
        dev_hi = max(abs(hi[k] - targets[k]) for k in targets)
        assert dev_hi <= 0.05
        assert dev_hi < dev_lo

    def test_rejects_small_power(self):
        with pytest.raises(ValueError):
            multiplexing_gain(GdofExponents(1, 1, 1, 1), 1.0)


class TestCurveCsv:
    def test_sample_grid(self):
        samples = dof_curve_samples()
        assert len(samples) == 301
        assert samples[0].alpha == 0.0
        assert samples[-1].alpha == pytest.approx(3.0, abs=1e-12)
        s = samples[60]
        assert s.alpha == pytest.approx(0.6, abs=1e-12)
        assert s.d_icci == pytest.approx(0.7, abs=1e-9)
        assert s.d_uplift == pytest.approx(s.d_icci - s.d_ic, abs=0)

    def test_csv_round_trip(self):
        buf = io.StringIO()
        count = write_curve_csv(buf, alpha_min=0.0, alpha_max=0.1, step=0.05)
        assert count == 3
        lines = buf.getvalue().splitlines()
        assert lines[0] == ",".join(CURVE_CSV_HEADER)
        assert len(lines) == 4
        fields = lines[2].split(",")
        assert float(fields[0]) == 0.05
        assert float(fields[2]) == dof_icci(0.05)  # full precision round trip
