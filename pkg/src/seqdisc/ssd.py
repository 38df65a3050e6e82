"""Closed-form optima for sequential unambiguous state discrimination.

Bob measures first, attenuating the state overlap from s to t (s <= t <= 1);
unitarity forces his failure parameters to satisfy q1b * q2b = (s/t)**2.  The
qubit then travels to Charlie, who discriminates the forwarded pair of overlap
t, with q1c * q2c = t**2.  Average success probabilities:

    P_b    = p1*(1 - q1b) + p2*(1 - q2b)
    P_ssd  = p1*(1 - q1b)*(1 - q1c) + p2*(1 - q2b)*(1 - q2c)

Each maximization is piecewise: an interior stationary point where feasible
(case I), otherwise the boundary q1 = 1 where the observer ignores the less
likely state (case II).  The joint optimum sits at t = sqrt(s) and
q1b = q1c = q*, with q* a root of

    p1*q**4 - p1*q**3 + p2*s*q - p2*s**2 = 0.

Case I survives at equal priors only for s < 3 - 2*sqrt(2); beyond that the
optimal strategy breaks the symmetry and ignores one state even at p1 = 1/2.
The prior separating the joint cases, P_C, has no closed form and is located
by bisection with the quartic re-solved at every trial prior.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .core import (
    DomainError,
    NumericError,
    Scenario,
    StrategyParams,
)

#: Overlap above which case I vanishes even at equal priors.
SYMMETRY_BREAK_OVERLAP = 3.0 - 2.0 * math.sqrt(2.0)

_TIE_TOL = 1e-12
_QSTAR_SCAN_CELLS = 1000


class CaseLabel(str, Enum):
    CASE_I = "CaseI"
    CASE_II = "CaseII"
    CASE_III = "CaseIII"


@dataclass(frozen=True)
class PiecewiseResult:
    """Optimal value of a piecewise maximization plus its provenance.

    ``argmax`` maps parameter names (q1b, q2b, t, ...) to the optimizing
    values; ``boundary_prior`` is the critical p1 separating the analytic
    cases for the instance, when one is defined.
    """

    value: float
    case_label: CaseLabel
    argmax: dict
    boundary_prior: float | None = None

    def __post_init__(self) -> None:
        if not -_TIE_TOL <= self.value <= 1.0 + _TIE_TOL:
            raise NumericError(f"probability {self.value} outside [0, 1]")
        object.__setattr__(self, "value", min(1.0, max(0.0, self.value)))


def _check_t(scenario: Scenario, t: float) -> None:
    if t <= 0.0 or t < scenario.s or t > 1.0:
        raise DomainError(f"overlap t={t} outside [s, 1] = [{scenario.s}, 1]")


def bob_success(scenario: Scenario, t: float, q1b: float) -> float:
    """Bob's average success probability for failure parameter q1b.

    q2b is fixed by the constraint q1b * q2b = (s/t)**2.
    """
    _check_t(scenario, t)
    params = StrategyParams.from_q1(q1b, scenario.s / t)
    return scenario.p1 * (1.0 - params.q1) + scenario.p2 * (1.0 - params.q2)


def _stage_optimum(p1: float, p2: float, r: float) -> tuple[float, float, CaseLabel]:
    """Maximize p1*(1-q1) + p2*(1-r^2/q1) over q1 in [r^2, 1].

    Returns (value, q1, case).  The interior stationary point q1 = sqrt(p2/p1)*r
    is used when it is feasible and not beaten by the boundary q1 = 1; ties
    within 1e-12 resolve to case I.
    """
    v_boundary = p2 * (1.0 - r * r)
    q_int = math.sqrt(p2 / p1) * r
    if q_int <= 1.0 + _TIE_TOL:
        v_int = 1.0 - 2.0 * math.sqrt(p1 * p2) * r
        if v_int > v_boundary or abs(v_int - v_boundary) < _TIE_TOL:
            return v_int, min(q_int, 1.0), CaseLabel.CASE_I
    return v_boundary, 1.0, CaseLabel.CASE_II


def bob_optimal(scenario: Scenario, t: float) -> PiecewiseResult:
    """Bob's optimal success probability at fixed overlap attenuation s -> t.

    Case I: 1 - 2*sqrt(p1*p2)*s/t at q1b = sqrt(p2/p1)*s/t, valid for
    p1 >= s^2/(s^2 + t^2).  Case II: p2*(1 - s^2/t^2) at q1b = 1 (Bob ignores
    state 1).
    """
    _check_t(scenario, t)
    r = scenario.s / t
    value, q1b, label = _stage_optimum(scenario.p1, scenario.p2, r)
    params = StrategyParams.from_q1(q1b, r)
    s2, t2 = scenario.s**2, t**2
    boundary = s2 / (s2 + t2) if s2 + t2 > 0.0 else 0.0
    return PiecewiseResult(
        value, label, {"t": t, "q1b": params.q1, "q2b": params.q2}, boundary
    )


def charlie_optimal(scenario: Scenario, t: float) -> PiecewiseResult:
    """Charlie's optimal success probability given Bob left overlap t.

    Case I: 1 - 2*sqrt(p1*p2)*t at q1c = sqrt(p2/p1)*t for p1 >= t^2/(1+t^2);
    case II: p2*(1 - t^2) at q1c = 1.
    """
    _check_t(scenario, t)
    value, q1c, label = _stage_optimum(scenario.p1, scenario.p2, t)
    params = StrategyParams.from_q1(q1c, t)
    boundary = t * t / (1.0 + t * t)
    return PiecewiseResult(
        value, label, {"t": t, "q1c": params.q1, "q2c": params.q2}, boundary
    )


def joint_success(scenario: Scenario, t: float, q1b: float, q1c: float) -> float:
    """Probability that both Bob and Charlie identify the state."""
    _check_t(scenario, t)
    bob = StrategyParams.from_q1(q1b, scenario.s / t)
    charlie = StrategyParams.from_q1(q1c, t)
    return scenario.p1 * (1.0 - bob.q1) * (1.0 - charlie.q1) + scenario.p2 * (
        1.0 - bob.q2
    ) * (1.0 - charlie.q2)


def _quartic(p1: float, p2: float, s: float, q):
    q = np.asarray(q, dtype=float)
    q2 = q * q
    return p1 * q2 * q2 - p1 * q2 * q + p2 * s * q - p2 * s * s


def _joint_case1_objective(p1: float, p2: float, s: float, q: float) -> float:
    return p1 * (1.0 - q) ** 2 + p2 * (1.0 - s / q) ** 2


def solve_q_star(scenario: Scenario) -> float:
    """Root of p1*q^4 - p1*q^3 + p2*s*q - p2*s^2 = 0 on [s, 1] maximizing the
    symmetric joint objective p1*(1-q)^2 + p2*(1-s/q)^2.

    The quartic is the stationarity condition of the objective.  Roots are
    located by a sign-change scan over 1000 subintervals of [s, 1], each
    refined by bisection to width 1e-14; among the roots found, the one with
    the largest objective value is returned.
    """
    s, p1, p2 = scenario.s, scenario.p1, scenario.p2
    if not 0.0 < s < 1.0:
        raise DomainError(f"q* is defined for 0 < s < 1, got s={s}")
    grid = np.linspace(s, 1.0, _QSTAR_SCAN_CELLS + 1)
    vals = _quartic(p1, p2, s, grid)

    roots = [float(g) for g, v in zip(grid, vals) if v == 0.0]
    change = vals[:-1] * vals[1:] < 0.0
    idx = np.nonzero(change)[0]
    if idx.size:
        lo, hi = grid[idx].copy(), grid[idx + 1].copy()
        flo = vals[idx].copy()
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            fmid = _quartic(p1, p2, s, mid)
            same = flo * fmid > 0.0
            lo = np.where(same, mid, lo)
            flo = np.where(same, fmid, flo)
            hi = np.where(same, hi, mid)
        roots.extend((0.5 * (lo + hi)).tolist())
    if not roots:
        raise NumericError(
            "no real root in [s, 1] for quartic coefficients "
            f"[{p1}, {-p1}, 0, {p2 * s}, {-p2 * s * s}]"
        )
    return max(roots, key=lambda q: _joint_case1_objective(p1, p2, s, q))


class CriticalPrior(NamedTuple):
    """Critical prior for the joint optimum; below it case I never wins."""

    value: float
    case_i_applies: bool


def _joint_branch_values(s: float, p1: float) -> tuple[float, float, float]:
    """(case I value, case II value, q*) for the joint optimum at prior p1."""
    q_star = solve_q_star(Scenario(s, p1))
    v1 = _joint_case1_objective(p1, 1.0 - p1, s, q_star)
    v2 = (1.0 - p1) * (1.0 - s) ** 2
    return v1, v2, q_star


def critical_prior_PC(s: float) -> CriticalPrior:
    """Prior at which the two branches of the joint optimum exchange.

    Defined implicitly by  p*(1-q*)^2 + (1-p)*(1-s/q*)^2 = (1-p)*(1-s)^2 with
    the quartic re-solved at each trial prior.  For s >= 3 - 2*sqrt(2) case I
    never applies on (0, 1/2]; the sentinel value 0.5 is returned with the
    flag cleared.
    """
    if not 0.0 < s < 1.0:
        raise DomainError(f"critical prior is defined for 0 < s < 1, got s={s}")

    def gap(p1: float) -> float:
        v1, v2, _ = _joint_branch_values(s, p1)
        return v1 - v2

    g_half = gap(0.5)
    if g_half < 0.0:
        return CriticalPrior(0.5, False)
    if g_half == 0.0:
        return CriticalPrior(0.5, True)
    lo, hi = 1e-9, 0.5
    if gap(lo) >= 0.0:
        raise NumericError(f"failed to bracket the critical prior on (0, 1/2) for s={s}")
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if gap(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    p_c = 0.5 * (lo + hi)
    if abs(gap(p_c)) > 1e-10:
        raise NumericError(f"critical-prior bisection stalled at p1={p_c} for s={s}")
    return CriticalPrior(p_c, True)


def joint_optimal(scenario: Scenario, *, compute_boundary: bool = True) -> PiecewiseResult:
    """Optimal probability that both observers identify the state.

    Case I (p1 >= P_C): p1*(1-q*)^2 + p2*(1-s/q*)^2 at t = sqrt(s) and
    q1b = q1c = q*.  Case II: p2*(1-s)^2 at q1b = q1c = 1, where both
    observers ignore state 1.  For s >= 3 - 2*sqrt(2) case II always wins.
    """
    s, p1, p2 = scenario.s, scenario.p1, scenario.p2
    if s == 0.0:
        return PiecewiseResult(
            1.0,
            CaseLabel.CASE_I,
            {"t": 0.0, "q_star": 0.0, "q1b": 0.0, "q2b": 0.0, "q1c": 0.0, "q2c": 0.0},
            0.0,
        )
    if s == 1.0:
        return PiecewiseResult(
            0.0,
            CaseLabel.CASE_II,
            {"t": 1.0, "q1b": 1.0, "q2b": 1.0, "q1c": 1.0, "q2c": 1.0},
            0.5,
        )
    v1, v2, q_star = _joint_branch_values(s, p1)
    boundary = critical_prior_PC(s).value if compute_boundary else None
    t_opt = math.sqrt(s)
    if v1 > v2 or abs(v1 - v2) < _TIE_TOL:
        argmax = {
            "t": t_opt,
            "q_star": q_star,
            "q1b": q_star,
            "q2b": s / q_star,
            "q1c": q_star,
            "q2c": s / q_star,
        }
        return PiecewiseResult(v1, CaseLabel.CASE_I, argmax, boundary)
    argmax = {"t": t_opt, "q_star": q_star, "q1b": 1.0, "q2b": s, "q1c": 1.0, "q2c": s}
    return PiecewiseResult(v2, CaseLabel.CASE_II, argmax, boundary)
