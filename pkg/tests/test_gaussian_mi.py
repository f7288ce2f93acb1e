import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from icci.bounds import cap, inner_coeffs
from icci.channel import ChannelGains
from icci.gaussian_mi import (
    mi_discrepancy,
    mutual_info_terms,
    successive_decode_chain,
)

mags = st.floats(min_value=1e-2, max_value=1e2)
gains_st = st.builds(ChannelGains, mags, mags, mags, mags)

STAGE_TARGETS = (0.2, 0.2, 0.2, 0.4)


class TestMiOracle:
    def test_worked_channel_matches_closed_form(self, worked_channel):
        terms = mutual_info_terms(worked_channel)
        coeffs = inner_coeffs(worked_channel)
        assert terms.a1 == pytest.approx(math.log2(6), abs=1e-9)
        for key, value in terms.as_dict().items():
            assert value == pytest.approx(coeffs.as_dict()[key], abs=1e-9)
        assert mi_discrepancy(worked_channel) <= 1e-9

    def test_point_to_point_collapse(self):
        gains = ChannelGains(7.0, 0.0, 0.0, 2.0)
        t = mutual_info_terms(gains)
        expect = cap(49.0)
        for v in (t.a1, t.d1, t.e1, t.g1, t.g1p):
            assert v == pytest.approx(expect, abs=1e-9)

    def test_zero_channel(self):
        t = mutual_info_terms(ChannelGains(0, 0, 0, 0))
        assert all(v == pytest.approx(0.0, abs=1e-12) for v in t.as_dict().values())

    @given(gains_st)
    def test_discrepancy_fuzz(self, gains):
        assert mi_discrepancy(gains) <= 1e-9

    @given(gains_st)
    def test_conditioning_order(self, gains):
        # chain rule: wider conditioning never increases the reach
        t = mutual_info_terms(gains)
        for a, e, g, gp in ((t.a1, t.e1, t.g1, t.g1p), (t.a2, t.e2, t.g2, t.g2p)):
            assert gp >= g - 1e-12
            assert g >= e - 1e-12
            assert g >= a - 1e-12


class TestDecodeChain:
    def test_stage_ratios_near_targets(self):
        report = successive_decode_chain(1e10)
        assert report.include_common
        assert len(report.stages) == 4
        for stage, target in zip(report.stages, STAGE_TARGETS):
            assert stage.ratio == pytest.approx(target, abs=0.05)
            assert stage.rate >= 0 and stage.sinr > 0

    def test_stage_order_labels(self):
        labels = [s.label for s in successive_decode_chain(1e10).stages]
        assert labels == ["own-public", "common", "cross-public", "own-private"]

    def test_individual_rate_share(self):
        report = successive_decode_chain(1e10)
        assert report.individual_ratio == pytest.approx(0.6, abs=0.05)
        assert report.per_user_ratio == pytest.approx(0.7, abs=0.05)

    def test_without_common_layer(self):
        report = successive_decode_chain(1e10, include_common=False)
        assert report.common_ratio == 0.0
        assert report.individual_ratio == pytest.approx(0.6, abs=0.05)
        common = [s for s in report.stages if s.label == "common"]
        assert len(common) == 1
        assert common[0].rate == 0.0 and common[0].ratio == 0.0

    def test_deviation_shrinks_with_power(self):
        devs = []
        for p in (1e6, 1e8, 1e10, 1e12):
            report = successive_decode_chain(p)
            devs.append(max(abs(s.ratio - t) for s, t in zip(report.stages, STAGE_TARGETS)))
        assert devs == sorted(devs, reverse=True)
        assert devs[-1] < devs[0]

    def test_rejects_low_power(self):
        with pytest.raises(ValueError):
            successive_decode_chain(100.0)

    def test_report_dict(self):
        d = successive_decode_chain(1e6).as_dict()
        assert d["p"] == 1e6
        assert {"label", "sinr", "rate", "ratio"} <= set(d["stages"][0])
