"""
Unit tests for the inseparability criteria
"""
import math

import numpy as np
import pytest

from app.core import gaussian as gc
from app.core.exceptions import InvalidArgumentError
from app.models.gaussian import GaussianState
from app.models.reports import Verdict
from app.services import circuits, criteria
from app.services.criteria import partial_three_mode_crit1_reference
from tests.reference_forms import (
    family_crit1,
    family_crit2,
    partial_three_mode_crit1,
    partial_three_mode_crit2,
    traced_tan_product,
    traced_total_variance,
)
from tests.conftest import random_state


def traced_pair(r: float) -> GaussianState:
    """Modes 2, 3 of the N = 3 family state with r1 = r2 = r."""
    return gc.partial_trace(circuits.family_state(3, r, r), [1, 2])


class TestVarianceSum:
    """crit_variance_sum (crit1)."""

    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    @pytest.mark.parametrize("r1,r2", [(0.3, 0.3), (1.0, 0.0), (0.0, 2.0), (1e-4, 1e-4), (2.0, 1.0)])
    def test_family_closed_form(self, n, r1, r2):
        report = criteria.crit_variance_sum(circuits.family_state(n, r1, r2))
        assert abs(report.value - family_crit1(r1, r2)) < 1e-12
        assert report.threshold == 0.5
        assert report.verdict == Verdict.RULES_OUT_FULL
        assert report.margin == pytest.approx(report.value - report.threshold, abs=0)

    def test_one_squeezer_violation(self):
        report = criteria.crit_variance_sum(circuits.family_state(3, 1.0, 0.0))
        assert report.value == pytest.approx((math.exp(-2) + 1) / 4, abs=1e-12)
        assert report.value < 0.5

    @pytest.mark.parametrize("n", [2, 3, 6])
    def test_vacuum_on_threshold(self, n):
        report = criteria.crit_variance_sum(gc.vacuum_state(n))
        assert report.value == pytest.approx(0.5, abs=1e-15)
        assert report.verdict == Verdict.BOUNDARY

    def test_scope_note_present(self):
        report = criteria.crit_variance_sum(gc.vacuum_state(3))
        assert "genuine multipartite" in report.scope_note

    def test_monotone_in_squeezing(self):
        values_r1 = [criteria.crit_variance_sum(circuits.family_state(4, r, 0.5)).value for r in np.linspace(0, 2, 9)]
        values_r2 = [criteria.crit_variance_sum(circuits.family_state(4, 0.5, r)).value for r in np.linspace(0, 2, 9)]
        assert all(a > b for a, b in zip(values_r1, values_r1[1:]))
        assert all(a > b for a, b in zip(values_r2, values_r2[1:]))

    def test_sampled_estimate_close(self):
        state = circuits.family_state(3, 0.5, 0.5)
        estimate = criteria.sampled_variance_sum(state, seed=2, shots=50000)
        assert estimate == pytest.approx(math.exp(-1) / 2, rel=0.05)

    def test_single_mode_rejected(self):
        with pytest.raises(InvalidArgumentError):
            criteria.crit_variance_sum(gc.vacuum_state(1))


class TestRelativeTotal:
    """crit_relative_total (crit2)."""

    @pytest.mark.parametrize("n", [2, 3, 4, 7])
    def test_family_closed_form(self, n):
        for r1, r2 in [(0.3, 0.3), (1.0, 0.2), (1e-4, 0.0)]:
            report = criteria.crit_relative_total(circuits.family_state(n, r1, r2))
            assert abs(report.value - family_crit2(n, r1, r2)) < 1e-12
            assert report.threshold == n / 2
            assert report.verdict == Verdict.RULES_OUT_FULL

    def test_vacuum_on_threshold(self):
        report = criteria.crit_relative_total(gc.vacuum_state(3))
        assert report.value == pytest.approx(1.5, abs=1e-15)
        assert report.verdict == Verdict.BOUNDARY

    def test_tensor_of_vacua_on_threshold(self):
        state = gc.tensor([gc.vacuum_state(1), gc.vacuum_state(2), gc.vacuum_state(1)])
        assert criteria.crit_variance_sum(state).verdict == Verdict.BOUNDARY
        assert criteria.crit_relative_total(state).verdict == Verdict.BOUNDARY

    def test_two_mode_coincidence(self, rng):
        for _ in range(200):
            state = random_state(rng, 2, max_squeeze=1.0, thermal=rng.random() < 0.5)
            crit1 = criteria.crit_variance_sum(state)
            crit2 = criteria.crit_relative_total(state)
            assert crit2.value == pytest.approx(2 * crit1.value, rel=1e-12)
            assert crit1.verdict == crit2.verdict

    def test_observables_commute(self):
        for n in (2, 3, 5):
            products = gc.symplectic_products(criteria.relative_total_observables(n))
            assert np.max(np.abs(products)) < 1e-12


class TestPartialThreeMode:
    """Both criteria on the partial three-mode state."""

    @pytest.mark.parametrize("r", [0.0, 0.1, 0.5, 1.0, 2.5])
    def test_crit2_closed_form(self, r):
        report = criteria.crit_relative_total(circuits.make_partial_three_mode(r))
        assert abs(report.value - partial_three_mode_crit2(r)) < 1e-12

    def test_crit2_example_values(self):
        value = criteria.crit_relative_total(circuits.make_partial_three_mode(0.5)).value
        assert value == pytest.approx(1.16168, abs=1e-4)
        assert criteria.crit_relative_total(circuits.make_partial_three_mode(1.0)).value == pytest.approx(
            1.54205, abs=1e-4
        )

    def test_crit2_violated_below_crossing(self):
        for r in (0.05, 0.3, 0.6, 0.9):
            report = criteria.crit_relative_total(circuits.make_partial_three_mode(r))
            assert report.verdict == Verdict.RULES_OUT_FULL

    @pytest.mark.parametrize("r", [1.0, 2.0])
    def test_crit2_satisfied_for_large_squeezing(self, r):
        report = criteria.crit_relative_total(circuits.make_partial_three_mode(r))
        assert report.verdict == Verdict.CONSISTENT_FULL

    def test_both_on_threshold_at_zero(self):
        state = circuits.make_partial_three_mode(0.0)
        assert criteria.crit_variance_sum(state).verdict == Verdict.BOUNDARY
        assert criteria.crit_relative_total(state).verdict == Verdict.BOUNDARY

    @pytest.mark.parametrize("r", [0.0, 0.2, 0.7, 1.0])
    def test_crit1_matches_covariance_oracle(self, r):
        value = criteria.crit_variance_sum(circuits.make_partial_three_mode(r)).value
        assert abs(value - partial_three_mode_crit1(r)) < 1e-12

    def test_crit1_reference_formula_differs(self):
        assert partial_three_mode_crit1_reference(0.0) == pytest.approx(0.5, abs=1e-15)
        assert partial_three_mode_crit1(0.0) == pytest.approx(0.5, abs=1e-15)
        for r in (0.1, 0.5, 1.0):
            value = criteria.crit_variance_sum(circuits.make_partial_three_mode(r)).value
            assert abs(value - partial_three_mode_crit1_reference(r)) > 1e-3

    def test_scan_rows(self):
        rows = criteria.partial_three_mode_scan(criteria.default_scan_grid())
        assert len(rows) == 201
        assert rows[0].r == 0.0 and rows[-1].r == 1.0
        assert rows[0].crit1_value == pytest.approx(0.5, abs=1e-15)
        assert rows[0].crit2_value == pytest.approx(1.5, abs=1e-15)
        for row in rows:
            assert abs(row.crit2_value - partial_three_mode_crit2(row.r)) < 1e-12


class TestTanProduct:
    """tan_product on the traced two-mode state."""

    @pytest.mark.parametrize("r", [1e-3, 0.5, 1.0, 2.0])
    def test_closed_form_and_violation(self, r):
        report = criteria.tan_product(traced_pair(r), 0, 1)
        assert abs(report.value - traced_tan_product(r)) < 1e-12
        assert report.value < 0.25
        assert report.verdict == Verdict.RULES_OUT_PAIR
        assert report.modes == [0, 1]

    def test_example_value(self):
        assert criteria.tan_product(traced_pair(1.0), 0, 1).value == pytest.approx(0.08639, abs=1e-5)

    def test_boundary_at_zero(self):
        report = criteria.tan_product(traced_pair(0.0), 0, 1)
        assert report.value == pytest.approx(0.25, abs=1e-15)
        assert report.verdict == Verdict.BOUNDARY

    def test_same_mode_rejected(self):
        with pytest.raises(InvalidArgumentError):
            criteria.tan_product(gc.vacuum_state(3), 1, 1)

    @pytest.mark.parametrize("r", [0.3, 1.0, 2.0])
    def test_total_variance_of_traced_pair(self, r):
        report = criteria.crit_relative_total(traced_pair(r))
        assert abs(report.value - traced_total_variance(r)) < 1e-12

    def test_total_variance_misses_large_squeezing(self):
        state = traced_pair(2.0)
        assert criteria.crit_relative_total(state).value > 1.0
        assert criteria.tan_product(state, 0, 1).verdict == Verdict.RULES_OUT_PAIR


class TestPptTest:
    """ppt_test (time-reversal criterion)."""

    def test_two_mode_squeezed_vacuum_unphysical(self):
        for r in (1e-3, 0.5, 2.0):
            report = criteria.ppt_test(circuits.family_state(2, r, r), [0])
            assert report.verdict == Verdict.PPT_UNPHYSICAL
            assert report.value < 0

    def test_vacuum_physical(self):
        report = criteria.ppt_test(gc.vacuum_state(2), [1])
        assert report.verdict == Verdict.PPT_PHYSICAL
        assert report.threshold == 0.0

    def test_traced_pair_unphysical(self):
        assert criteria.ppt_test(traced_pair(0.5), [0]).verdict == Verdict.PPT_UNPHYSICAL

    def test_strongly_squeezed_product_physical(self):
        product = gc.tensor([gc.squeezed_vacuum(8.0, "position"), gc.squeezed_vacuum(8.0, "momentum")])
        assert criteria.ppt_test(product, [0]).verdict == Verdict.PPT_PHYSICAL
        entangled = circuits.family_state(2, 8.0, 8.0)
        assert criteria.ppt_test(entangled, [0]).verdict == Verdict.PPT_UNPHYSICAL

    @pytest.mark.parametrize("party", [[], [0, 1], [3]])
    def test_invalid_subset_rejected(self, party):
        with pytest.raises(InvalidArgumentError):
            criteria.ppt_test(gc.vacuum_state(2), party)


class TestBundle:
    """evaluate_all and genuine_multipartite_check."""

    def test_family_bundle(self):
        bundle = criteria.evaluate_all(circuits.family_state(3, 0.5, 0.5))
        assert bundle.crit1.value == pytest.approx(math.exp(-1) / 2, abs=1e-12)
        assert bundle.crit1.value == pytest.approx(0.1839, abs=1e-4)
        assert bundle.crit1.verdict == Verdict.RULES_OUT_FULL
        assert len(bundle.tan_pairs) == 3
        assert len(bundle.ppt_cuts) == 3
        assert all(cut.verdict == Verdict.PPT_UNPHYSICAL for cut in bundle.ppt_cuts)
        assert bundle.genuine.witnessed
        assert bundle.crit1_sampled is None

    def test_vacuum_bundle(self):
        bundle = criteria.evaluate_all(gc.vacuum_state(3))
        assert bundle.crit1.verdict == Verdict.BOUNDARY
        assert bundle.crit2.verdict == Verdict.BOUNDARY
        assert all(p.verdict == Verdict.BOUNDARY for p in bundle.tan_pairs)
        assert all(c.verdict == Verdict.PPT_PHYSICAL for c in bundle.ppt_cuts)
        assert not bundle.genuine.witnessed

    def test_partial_three_mode_not_symmetric(self):
        report = criteria.genuine_multipartite_check(circuits.make_partial_three_mode(0.5))
        assert report.violated
        assert report.pure
        assert not report.symmetric
        assert not report.witnessed

    def test_sampled_crit1_included(self):
        bundle = criteria.evaluate_all(circuits.family_state(3, 0.5, 0.5), seed=4, shots=2000)
        assert bundle.crit1_sampled is not None
        assert bundle.seed == 4 and bundle.shots == 2000

    def test_report_serialization(self):
        payload = criteria.crit_variance_sum(gc.vacuum_state(2)).model_dump(mode="json")
        assert set(payload) >= {"criterion", "value", "threshold", "margin", "verdict", "scope_note"}
        assert payload["verdict"] == "boundary"
