"""Dominance checks: hand cases, iff-consistency, and faithful reporting."""

import numpy as np
import pytest

from shrinklogit import (
    DegenerateTermsError,
    EstimatorSpec,
    LinearRestriction,
    MissingRestrictionError,
    RiskScenario,
    check_all,
    check_c31,
    check_t33,
    check_t34,
    check_t35,
    check_t36,
    check_t37,
    is_psd,
    ld_matrix,
    risk,
    symmetrize,
)
from helpers import random_scenario


def diag_scenario(c_diag, beta, h_rows, h=None):
    h_rows = np.atleast_2d(np.asarray(h_rows, dtype=float))
    h = np.zeros(h_rows.shape[0]) if h is None else np.asarray(h, dtype=float)
    return RiskScenario(
        C=np.diag(np.asarray(c_diag, dtype=float)),
        beta_true=np.asarray(beta, dtype=float),
        restriction=LinearRestriction(h_rows, h),
    )


class TestT33:
    def test_estimators_coincide_at_d_one(self):
        rng = np.random.default_rng(0)
        scenario = random_scenario(rng, 4, 2)
        verdict = check_t33(scenario, 1.0)
        assert verdict.applicable
        assert verdict.condition_holds
        assert verdict.delta_psd
        assert verdict.witnesses["bias_norm"] == pytest.approx(0.0, abs=1e-14)

    def test_zero_truth_reduces_to_matrix_difference(self):
        rng = np.random.default_rng(1)
        scenario = random_scenario(rng, 3, 1, beta_norm=1.0)
        scenario = RiskScenario(
            C=scenario.C, beta_true=np.zeros(3), restriction=scenario.restriction
        )
        d = 0.4
        verdict = check_t33(scenario, d)
        assert verdict.condition_holds  # zero bias passes the quadratic test
        L = ld_matrix(scenario.C, d)
        difference = symmetrize(
            scenario.A @ scenario.C @ scenario.A - L @ scenario.A @ L
        )
        assert verdict.delta_psd == is_psd(difference).ok

    def test_iff_consistency_on_aligned_scenarios(self):
        # eigen-aligned restrictions make the side conditions hold, so the
        # quadratic criterion must agree with the direct PSD check both ways
        rng = np.random.default_rng(2)
        seen = {True: 0, False: 0}
        for _ in range(150):
            m = int(rng.integers(2, 7))
            q = int(rng.integers(1, min(m, 4)))
            scenario = random_scenario(
                rng, m, q, aligned=True, beta_norm=float(rng.uniform(0.1, 8.0))
            )
            d = float(rng.uniform(0, 0.95))
            verdict = check_t33(scenario, d)
            assert verdict.applicable
            assert verdict.condition_holds == verdict.delta_psd
            seen[verdict.condition_holds] += 1
        assert min(seen.values()) >= 10

    def test_generic_scenarios_usually_inapplicable(self):
        # with dense random restrictions the shrinkage rotates range(A),
        # so the range-inclusion side condition fails
        rng = np.random.default_rng(3)
        applicable = 0
        for _ in range(50):
            scenario = random_scenario(rng, 4, 2)
            verdict = check_t33(scenario, 0.5)
            applicable += int(verdict.applicable)
        assert applicable < 10

    def test_requires_restriction(self):
        with pytest.raises(MissingRestrictionError):
            check_t33(RiskScenario(C=np.eye(2), beta_true=np.zeros(2)), 0.5)


class TestT34:
    def test_hand_arithmetic_case(self):
        # lam = (4, 1), restricted first eigendirection, beta on the second:
        # lhs = 4.2 * 5.8 / 0.8^2 = 38.0625, rhs = 1/1 = 1, condition false
        scenario = diag_scenario([4.0, 1.0], [0.0, 1.0], [[1.0, 0.0]])
        verdict = check_t34(scenario, 0.2)
        assert verdict.lhs == pytest.approx(38.0625)
        assert verdict.rhs == pytest.approx(1.0)
        assert not verdict.condition_holds
        # trace oracle for the actual difference
        delta = risk(scenario, EstimatorSpec("rmle")).mse - risk(
            scenario, EstimatorSpec("raule", 0.2)
        ).mse
        assert verdict.witnesses["delta_mse"] == pytest.approx(delta, abs=1e-12)

    def test_zero_truth_never_satisfies_condition(self):
        rng = np.random.default_rng(4)
        scenario = random_scenario(rng, 3, 1)
        scenario = RiskScenario(
            C=scenario.C, beta_true=np.zeros(3), restriction=scenario.restriction
        )
        verdict = check_t34(scenario, 0.3)
        assert verdict.rhs == pytest.approx(0.0)
        assert not verdict.condition_holds
        # sufficiency only: the difference itself may still be nonnegative
        assert verdict.witnesses["delta_mse"] >= -1e-8

    def test_near_collapse_limit(self):
        rng = np.random.default_rng(5)
        scenario = random_scenario(rng, 3, 1)
        verdict = check_t34(scenario, 0.999)
        assert verdict.lhs > 1e6
        assert not verdict.condition_holds
        assert abs(verdict.witnesses["delta_mse"]) < 1e-3

    def test_exact_d_one_gives_infinite_lhs(self):
        rng = np.random.default_rng(6)
        scenario = random_scenario(rng, 3, 1)
        verdict = check_t34(scenario, 1.0)
        assert np.isinf(verdict.lhs)
        assert not verdict.condition_holds

    def test_full_restriction_degenerates(self):
        scenario = diag_scenario([2.0, 3.0], [0.0, 0.0], np.eye(2))
        with pytest.raises(DegenerateTermsError):
            check_t34(scenario, 0.5)


class TestT35:
    def test_full_restriction_with_zero_truth(self):
        scenario = diag_scenario([2.0, 3.0], [0.0, 0.0], np.eye(2))
        verdict = check_t35(scenario, 0.5)
        assert verdict.applicable  # A = 0 so the product has no spectrum above 1
        assert verdict.condition_holds
        assert verdict.delta_psd  # difference is C^-1 itself

    def test_d_one_with_zero_truth(self):
        rng = np.random.default_rng(7)
        scenario = random_scenario(rng, 4, 2)
        scenario = RiskScenario(
            C=scenario.C, beta_true=np.zeros(4), restriction=scenario.restriction
        )
        verdict = check_t35(scenario, 1.0)
        assert verdict.applicable
        assert verdict.condition_holds
        assert verdict.delta_psd  # C^-1 - A is nonnegative definite

    def test_iff_consistency_where_applicable(self):
        rng = np.random.default_rng(8)
        applicable = 0
        seen = {True: 0, False: 0}
        for _ in range(200):
            m = int(rng.integers(2, 7))
            q = int(rng.integers(1, min(m, 4)))
            aligned = bool(rng.random() < 0.5)
            scenario = random_scenario(
                rng, m, q, aligned=aligned, beta_norm=float(rng.uniform(0.1, 8.0))
            )
            verdict = check_t35(scenario, float(rng.uniform(0, 0.95)))
            if not verdict.applicable:
                continue
            applicable += 1
            assert verdict.condition_holds == verdict.delta_psd
            seen[verdict.condition_holds] += 1
        assert applicable >= 100
        assert min(seen.values()) >= 10


class TestT36:
    def test_condition_true_case_with_nonnegative_difference(self):
        # lam = (1.2, 1.0), restricted first eigendirection, beta^2 = 6 on the
        # second: lhs(0) = 3.84 < rhs = 6 and the differences stay nonnegative
        scenario = diag_scenario([1.2, 1.0], [0.0, np.sqrt(6.0)], [[1.0, 0.0]])
        v34 = check_t34(scenario, 0.0)
        v36 = check_t36(scenario, 0.0)
        assert v34.condition_holds and v36.condition_holds
        assert v34.witnesses["delta_mse"] == pytest.approx(0.0625, abs=1e-12)
        assert v36.witnesses["delta_mse"] == pytest.approx(1.0 / 1.2 + 1.0 - 0.9375, abs=1e-12)
        assert v34.delta_psd and v36.delta_psd

    def test_d_one_difference_is_trace_gap(self):
        rng = np.random.default_rng(9)
        scenario = random_scenario(rng, 4, 2)
        verdict = check_t36(scenario, 1.0)
        expected = float(np.trace(scenario.c_inv) - np.trace(scenario.A))
        assert verdict.witnesses["delta_mse"] == pytest.approx(expected, abs=1e-10)
        assert verdict.delta_psd

    def test_full_restriction_direct_math(self):
        # the check itself degenerates for H = I, but the underlying scalar
        # difference trace(C^-1) - mse(RAULE) stays nonnegative
        scenario = diag_scenario([2.0, 3.0], [0.0, 0.0], np.eye(2))
        for d in (0.0, 0.5, 1.0):
            delta = risk(scenario, EstimatorSpec("mle")).mse - risk(
                scenario, EstimatorSpec("raule", d)
            ).mse
            assert delta >= -1e-12


class TestReportedBoundIsNotUniversal:
    """The printed scalar condition can hold while the MSE difference is
    negative; the verdicts must report that combination honestly."""

    def test_counterexample_reported_faithfully(self):
        # lam = (4, 1), restricted first eigendirection, beta = (0, 5):
        # lhs(0) = 24 < rhs = 25, yet mse(RAULE) = 2.125 > mse(RMLE) = 1
        scenario = diag_scenario([4.0, 1.0], [0.0, 5.0], [[1.0, 0.0]])
        v34 = check_t34(scenario, 0.0)
        assert v34.lhs == pytest.approx(24.0)
        assert v34.rhs == pytest.approx(25.0)
        assert v34.condition_holds
        assert v34.witnesses["delta_mse"] == pytest.approx(-1.125, abs=1e-12)
        assert not v34.delta_psd
        v36 = check_t36(scenario, 0.0)
        assert v36.condition_holds
        assert v36.witnesses["delta_mse"] == pytest.approx(-0.875, abs=1e-12)
        assert not v36.delta_psd


class TestT37:
    def test_random_scenarios(self):
        rng = np.random.default_rng(10)
        for _ in range(200):
            m = int(rng.integers(2, 9))
            q = int(rng.integers(1, min(m, 4)))
            scenario = random_scenario(
                rng, m, q,
                beta_norm=float(rng.uniform(0.1, 5.0)),
                project=bool(rng.random() < 0.5),
            )
            verdict = check_t37(scenario, float(rng.uniform(0, 1)))
            assert verdict.applicable and verdict.condition_holds
            assert verdict.delta_psd
            assert verdict.witnesses["delta_min_eigenvalue"] >= -1e-8

    def test_d_one_reduces_to_lemma_difference(self):
        rng = np.random.default_rng(11)
        scenario = random_scenario(rng, 4, 2)
        verdict = check_t37(scenario, 1.0)
        assert verdict.delta_psd

    def test_full_restriction(self):
        scenario = diag_scenario([2.0, 3.0], [1.0, -1.0], np.eye(2), h=[1.0, -1.0])
        verdict = check_t37(scenario, 0.5)
        assert verdict.delta_psd


class TestC31AndCheckAll:
    def test_scalar_consequence_holds(self):
        rng = np.random.default_rng(12)
        for _ in range(50):
            scenario = random_scenario(rng, 4, 2, beta_norm=float(rng.uniform(0.2, 4.0)))
            verdict = check_c31(scenario, float(rng.uniform(0, 1)))
            assert verdict.delta_psd
            assert verdict.witnesses["delta_mse"] >= -1e-8

    def test_check_all_order_and_records(self):
        rng = np.random.default_rng(13)
        scenario = random_scenario(rng, 4, 1)
        verdicts = check_all(scenario, 0.5)
        assert [v.theorem for v in verdicts] == ["T3.3", "T3.4", "T3.5", "T3.6", "T3.7", "C3.1"]
        record = verdicts[0].as_record()
        assert record["theorem"] == "T3.3"
        assert "quadratic_form" in record

    def test_verdicts_are_reproducible(self):
        rng = np.random.default_rng(14)
        scenario = random_scenario(rng, 3, 1)
        first = check_all(scenario, 0.3)
        second = check_all(scenario, 0.3)
        for a, b in zip(first, second):
            assert a == b
