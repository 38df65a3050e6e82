import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from seqdisc import (
    CaseLabel,
    ConstraintError,
    DomainError,
    SYMMETRY_BREAK_OVERLAP,
    Scenario,
    bob_optimal,
    bob_success,
    charlie_optimal,
    critical_prior_PC,
    joint_optimal,
    joint_success,
    solve_q_star,
)

scenarios = st.builds(
    Scenario,
    s=st.floats(min_value=1e-3, max_value=0.999),
    p1=st.floats(min_value=1e-3, max_value=0.5),
)


class TestBobSuccess:
    def test_no_information_extracted_at_t_eq_s(self):
        assert bob_success(Scenario(0.05, 0.5), 0.05, 1.0) == 0.0

    def test_direct_arithmetic_equal_priors(self):
        assert bob_success(Scenario(0.05, 0.5), 0.1, 0.5) == pytest.approx(0.5, abs=1e-12)

    def test_direct_arithmetic_boundary_strategy(self):
        # q2b = s^2/t^2 = 0.25, so 0.8 * 0.75
        assert bob_success(Scenario(0.05, 0.2), 0.1, 1.0) == pytest.approx(0.6, abs=1e-12)

    @pytest.mark.parametrize("t", [0.01, 1.5, 0.0])
    def test_rejects_bad_t(self, t):
        with pytest.raises(DomainError):
            bob_success(Scenario(0.05, 0.5), t, 0.5)

    def test_rejects_infeasible_q1b(self):
        with pytest.raises(ConstraintError, match="bound"):
            bob_success(Scenario(0.05, 0.5), 0.1, 0.1)  # below s^2/t^2 = 0.25


class TestBobOptimal:
    def test_equal_priors_interior(self):
        res = bob_optimal(Scenario(0.05, 0.5), 0.1)
        assert res.value == pytest.approx(0.5, abs=1e-12)
        assert res.case_label is CaseLabel.CASE_I

    def test_skewed_prior_boundary(self):
        res = bob_optimal(Scenario(0.05, 0.1), 0.06)
        assert res.value == pytest.approx(0.9 * (1 - (0.05 / 0.06) ** 2), abs=1e-12)
        assert res.case_label is CaseLabel.CASE_II
        assert res.boundary_prior == pytest.approx(0.0025 / 0.0061, abs=1e-12)

    @pytest.mark.parametrize("p1", [0.5, 0.3, 0.05])
    def test_zero_at_t_eq_s(self, p1):
        assert bob_optimal(Scenario(0.1, p1), 0.1).value == pytest.approx(0.0, abs=1e-12)

    def test_argmax_reproduces_value(self):
        for s, p1, t in [(0.05, 0.5, 0.1), (0.05, 0.1, 0.06), (0.3, 0.4, 0.7)]:
            res = bob_optimal(Scenario(s, p1), t)
            assert bob_success(Scenario(s, p1), t, res.argmax["q1b"]) == pytest.approx(
                res.value, abs=1e-12
            )

    @pytest.mark.parametrize("s,p1,t", [(0.05, 0.5, 0.1), (0.05, 0.1, 0.06), (0.2, 0.3, 0.5)])
    def test_dominates_dense_q_grid(self, s, p1, t):
        sc = Scenario(s, p1)
        best = max(bob_success(sc, t, q) for q in np.linspace((s / t) ** 2, 1.0, 1000))
        assert bob_optimal(sc, t).value >= best - 1e-9

    def test_monotone_nondecreasing_in_t(self):
        for s, p1 in [(0.05, 0.5), (0.1, 0.2), (0.3, 0.4)]:
            vals = [bob_optimal(Scenario(s, p1), t).value for t in np.linspace(s, 1.0, 50)]
            assert np.all(np.diff(vals) >= -1e-12)

    def test_enhanced_by_prior_deviation(self):
        for s, t in [(0.05, 0.1), (0.2, 0.5)]:
            vals = [bob_optimal(Scenario(s, p1), t).value for p1 in np.linspace(0.5, 0.01, 40)]
            assert np.all(np.diff(vals) >= -1e-12)

    def test_continuous_across_case_boundary(self):
        s, t = 0.05, 0.1
        p_star = s * s / (s * s + t * t)
        sc = Scenario(s, p_star)
        case1 = 1.0 - 2.0 * math.sqrt(p_star * (1 - p_star)) * s / t
        case2 = (1 - p_star) * (1 - (s / t) ** 2)
        assert case1 == pytest.approx(case2, abs=1e-9)
        below = bob_optimal(Scenario(s, p_star * (1 - 1e-9)), t).value
        above = bob_optimal(Scenario(s, p_star * (1 + 1e-9)), t).value
        assert below == pytest.approx(above, abs=1e-8)


class TestCharlieOptimal:
    def test_nothing_left_at_t_one(self):
        assert charlie_optimal(Scenario(0.04, 0.5), 1.0).value == pytest.approx(0.0, abs=1e-12)

    def test_equal_priors(self):
        res = charlie_optimal(Scenario(0.04, 0.5), 0.2)
        assert res.value == pytest.approx(0.8, abs=1e-12)
        assert res.case_label is CaseLabel.CASE_I

    def test_skewed_prior_boundary(self):
        res = charlie_optimal(Scenario(0.01, 0.02), 0.2)
        assert res.value == pytest.approx(0.98 * 0.96, abs=1e-12)
        assert res.case_label is CaseLabel.CASE_II

    def test_monotone_nonincreasing_in_t(self):
        for s, p1 in [(0.05, 0.5), (0.1, 0.2)]:
            vals = [charlie_optimal(Scenario(s, p1), t).value for t in np.linspace(s, 1.0, 50)]
            assert np.all(np.diff(vals) <= 1e-12)

    def test_continuous_across_case_boundary(self):
        s, t = 0.05, 0.3
        p_star = t * t / (1 + t * t)
        case1 = 1.0 - 2.0 * math.sqrt(p_star * (1 - p_star)) * t
        case2 = (1 - p_star) * (1 - t * t)
        assert case1 == pytest.approx(case2, abs=1e-9)


class TestJointSuccess:
    def test_zero_at_t_one(self):
        # q1c q2c = 1 forces q1c = q2c = 1
        assert joint_success(Scenario(0.04, 0.5), 1.0, 0.5, 1.0) == pytest.approx(0.0, abs=1e-12)

    def test_symmetric_point(self):
        assert joint_success(Scenario(0.04, 0.5), 0.2, 0.2, 0.2) == pytest.approx(0.64, abs=1e-12)

    def test_boundary_strategies(self):
        assert joint_success(Scenario(0.04, 0.5), 0.2, 1.0, 1.0) == pytest.approx(
            0.4608, abs=1e-12
        )

    def test_rejects_infeasible(self):
        with pytest.raises(ConstraintError):
            joint_success(Scenario(0.04, 0.5), 0.2, 0.01, 0.2)


class TestSolveQStar:
    @pytest.mark.parametrize("s", [0.04, 0.09])
    def test_equal_priors_root_is_sqrt_s(self, s):
        assert solve_q_star(Scenario(s, 0.5)) == pytest.approx(math.sqrt(s), abs=1e-12)

    def test_against_numpy_roots(self):
        s, p1, p2 = 0.04, 0.4, 0.6
        q = solve_q_star(Scenario(s, p1))
        roots = np.roots([p1, -p1, 0.0, p2 * s, -p2 * s * s])
        real = [float(r.real) for r in roots if abs(r.imag) < 1e-12 and s <= r.real <= 1.0]
        obj = lambda q: p1 * (1 - q) ** 2 + p2 * (1 - s / q) ** 2
        assert q == pytest.approx(max(real, key=obj), abs=1e-10)

    def test_residual_contract(self):
        rng = np.random.default_rng(1)
        for _ in range(1000):
            s = float(rng.uniform(1e-3, 0.999))
            p1 = float(rng.uniform(1e-3, 0.5))
            q = solve_q_star(Scenario(s, p1))
            assert s <= q <= 1.0
            residual = p1 * q**4 - p1 * q**3 + (1 - p1) * s * q - (1 - p1) * s * s
            assert abs(residual) < 1e-12

    def test_rejects_degenerate_overlap(self):
        with pytest.raises(DomainError):
            solve_q_star(Scenario(0.0, 0.5))


class TestJointOptimal:
    def test_equal_priors_small_s(self):
        res = joint_optimal(Scenario(0.04, 0.5))
        assert res.value == pytest.approx(0.64, abs=1e-12)
        assert res.case_label is CaseLabel.CASE_I
        assert res.argmax["t"] == pytest.approx(0.2, abs=1e-12)

    def test_symmetry_broken_large_s(self):
        res = joint_optimal(Scenario(0.36, 0.5))
        assert res.value == pytest.approx(0.2048, abs=1e-12)
        assert res.case_label is CaseLabel.CASE_II

    def test_small_prior_limit(self):
        res = joint_optimal(Scenario(0.04, 1e-9))
        assert res.value == pytest.approx((1 - 0.04) ** 2, rel=1e-6)
        assert res.case_label is CaseLabel.CASE_II

    def test_dominates_feasible_grid(self):
        sc = Scenario(0.04, 0.3)
        best = joint_optimal(sc).value
        count = 0
        for t in np.linspace(sc.s, 1.0, 22):
            for q1b in np.linspace((sc.s / t) ** 2, 1.0, 22):
                for q1c in np.linspace(t * t, 1.0, 22):
                    count += 1
                    assert joint_success(sc, t, q1b, q1c) <= best + 1e-9
        assert count >= 10_000


class TestCriticalPrior:
    def test_half_at_symmetry_breaking_overlap(self):
        res = critical_prior_PC(SYMMETRY_BREAK_OVERLAP)
        assert res.value == pytest.approx(0.5, abs=1e-6)

    def test_branch_agreement_at_crossing(self):
        pc = critical_prior_PC(0.04)
        assert pc.case_i_applies and 0.0 < pc.value < 0.5
        sc = Scenario(0.04, pc.value)
        q = solve_q_star(sc)
        v1 = sc.p1 * (1 - q) ** 2 + sc.p2 * (1 - sc.s / q) ** 2
        v2 = sc.p2 * (1 - sc.s) ** 2
        assert v1 == pytest.approx(v2, abs=1e-9)

    def test_joint_optimal_switches_case_at_pc(self):
        pc = critical_prior_PC(0.04).value
        assert joint_optimal(Scenario(0.04, pc * (1 - 1e-6))).case_label is CaseLabel.CASE_II
        assert joint_optimal(Scenario(0.04, pc * (1 + 1e-6))).case_label is CaseLabel.CASE_I

    def test_sentinel_when_case_i_vanishes(self):
        res = critical_prior_PC(0.36)
        assert not res.case_i_applies
        assert res.value >= 0.5

    def test_rejects_degenerate_overlap(self):
        with pytest.raises(DomainError):
            critical_prior_PC(1.0)


@settings(max_examples=60, deadline=None)
@given(scenarios)
def test_joint_optimum_matches_symmetric_slice(sc):
    # the optimum never falls below the best symmetric strategy at t = sqrt(s)
    t = math.sqrt(sc.s)
    best = joint_optimal(sc, compute_boundary=False).value
    for q in np.linspace(max(sc.s, 1e-6), 1.0, 50):
        assert joint_success(sc, t, q, q) <= best + 1e-9
