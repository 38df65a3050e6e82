"""Brute-force grid maximizers certifying every closed-form optimum.

Each oracle evaluates the defining objective on a dense grid of the feasible
set (boundaries always included, since the optima frequently sit at q = 1)
and refines around the best point.  They share nothing with the piecewise
closed forms beyond the objective definitions themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .core import DomainError, NumericError, Scenario
from .protocols import (
    at_least_one_protocol3,
    at_least_one_ssd,
    protocol1_optimal,
    protocol2_optimal,
    protocol3_optimal,
)
from .ssd import bob_optimal, charlie_optimal, joint_optimal

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_JOINT_POINTS = 301
_REFINE_POINTS = 33

#: Standard certification grid.
CERT_S_VALUES = (0.04, 0.1716, 0.2, 0.36, 0.6)
CERT_P1_VALUES = (0.05, 0.1, 0.2, 0.3, 0.4, 0.5)


@dataclass(frozen=True)
class GridSpec:
    """Grid-search configuration: resolution, refinement rounds, tolerance."""

    points_per_axis: int = 2001
    refinement_passes: int = 2
    tolerance: float = 1e-6

    def __post_init__(self) -> None:
        if self.points_per_axis < 100:
            raise DomainError(f"points_per_axis={self.points_per_axis} below 100")
        if self.tolerance <= 0.0:
            raise DomainError(f"tolerance={self.tolerance} must be positive")


def _golden_max(f: Callable[[float], float], lo: float, hi: float, iters: int = 70):
    if hi <= lo:
        return lo, f(lo)
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def _max_1d(
    f_vec: Callable[[np.ndarray], np.ndarray], lo: float, hi: float, spec: GridSpec
) -> tuple[float, float]:
    """Grid scan with golden-section refinement of a scalar objective."""
    xs = np.linspace(lo, hi, spec.points_per_axis)
    vals = f_vec(xs)
    i = int(np.argmax(vals))
    best_x, best_v = float(xs[i]), float(vals[i])

    def f(x: float) -> float:
        return float(f_vec(np.array([x]))[0])

    step = xs[1] - xs[0] if len(xs) > 1 else 0.0
    for _ in range(spec.refinement_passes):
        if step <= 0.0:
            break
        x, v = _golden_max(f, max(lo, best_x - step), min(hi, best_x + step))
        if v > best_v:
            best_x, best_v = x, v
        step *= 1e-2
    for x_edge in (lo, hi):
        v = f(x_edge)
        if v > best_v:
            best_x, best_v = x_edge, v
    return best_v, best_x


def _stage_objective(p1: float, p2: float, r: float):
    """Success probability of one discrimination stage as a function of q1."""
    r2 = r * r
    if r2 == 0.0:
        return lambda q: p1 * (1.0 - q) + p2  # orthogonal flags: q2 = 0
    return lambda q: p1 * (1.0 - q) + p2 * (1.0 - r2 / q)


def _grid_max_stage(p1: float, p2: float, r: float, spec: GridSpec) -> tuple[float, float]:
    return _max_1d(_stage_objective(p1, p2, r), r * r, 1.0, spec)


def grid_maximize_bob(
    scenario: Scenario, t: float, spec: GridSpec | None = None
) -> tuple[float, float]:
    """Brute-force maximum of Bob's success over q1b in [(s/t)^2, 1]."""
    spec = spec or GridSpec()
    if t <= 0.0 or t < scenario.s or t > 1.0:
        raise DomainError(f"overlap t={t} outside [s, 1] = [{scenario.s}, 1]")
    value, q1b = _grid_max_stage(scenario.p1, scenario.p2, scenario.s / t, spec)
    return value, q1b


def grid_maximize_charlie(
    scenario: Scenario, t: float, spec: GridSpec | None = None
) -> tuple[float, float]:
    """Brute-force maximum of Charlie's success over q1c in [t^2, 1]."""
    spec = spec or GridSpec()
    if t <= 0.0 or t < scenario.s or t > 1.0:
        raise DomainError(f"overlap t={t} outside [s, 1] = [{scenario.s}, 1]")
    value, q1c = _grid_max_stage(scenario.p1, scenario.p2, t, spec)
    return value, q1c


def _joint_term(q1b, q2b, q1c, q2c, p1, p2):
    return p1 * (1.0 - q1b) * (1.0 - q1c) + p2 * (1.0 - q2b) * (1.0 - q2c)


def _union_term(q1b, q2b, q1c, q2c, p1, p2):
    return p1 * (1.0 - q1b * q1c) + p2 * (1.0 - q2b * q2c)


def _max_3d(
    scenario: Scenario, spec: GridSpec, term: Callable
) -> tuple[float, float, float, float]:
    """Maximize a two-stage objective over (t, q1b, q1c) with local refinement.

    q1b ranges over [(s/t)^2, 1] and q1c over [t^2, 1]; both are parametrized
    by normalized coordinates in [0, 1] so the search box is rectangular.
    """
    s, p1, p2 = scenario.s, scenario.p1, scenario.p2
    n = min(spec.points_per_axis, _JOINT_POINTS)
    t_lo_global = max(s, 1e-9)

    def evaluate(ts: np.ndarray, us: np.ndarray, vs: np.ndarray):
        best = (-1.0, 0.0, 0.0, 0.0)
        r2 = (s / ts) ** 2
        for j, t in enumerate(ts):
            lob = r2[j]
            q1b = (lob + us * (1.0 - lob))[:, None]
            q1c = (t * t + vs * (1.0 - t * t))[None, :]
            q2b = np.where(q1b > 0.0, r2[j] / np.where(q1b > 0.0, q1b, 1.0), 1.0)
            q2c = t * t / q1c
            val = term(q1b, q2b, q1c, q2c, p1, p2)
            k = int(np.argmax(val))
            v = float(val.flat[k])
            if v > best[0]:
                ib, ic = divmod(k, val.shape[1])
                best = (v, float(t), float(q1b[ib, 0]), float(q1c[0, ic]))
        return best

    ts = np.linspace(t_lo_global, 1.0, n)
    us = np.linspace(0.0, 1.0, n)
    vs = np.linspace(0.0, 1.0, n)
    best = evaluate(ts, us, vs)

    t_step = (1.0 - t_lo_global) / (n - 1)
    u_step = 1.0 / (n - 1)
    for _ in range(spec.refinement_passes):
        t0 = best[1]
        lob = (s / t0) ** 2 if t0 > 0 else 0.0
        u0 = (best[2] - lob) / (1.0 - lob) if lob < 1.0 else 0.0
        v0 = (best[3] - t0 * t0) / (1.0 - t0 * t0) if t0 < 1.0 else 0.0
        ts = np.linspace(
            max(t_lo_global, t0 - 1.5 * t_step), min(1.0, t0 + 1.5 * t_step), _REFINE_POINTS
        )
        us = np.linspace(max(0.0, u0 - 1.5 * u_step), min(1.0, u0 + 1.5 * u_step), _REFINE_POINTS)
        vs = np.linspace(max(0.0, v0 - 1.5 * u_step), min(1.0, v0 + 1.5 * u_step), _REFINE_POINTS)
        cand = evaluate(ts, us, vs)
        if cand[0] > best[0]:
            best = cand
        t_step *= 3.0 / _REFINE_POINTS
        u_step *= 3.0 / _REFINE_POINTS
    return best


def grid_maximize_joint(
    scenario: Scenario, spec: GridSpec | None = None
) -> tuple[float, float, float, float]:
    """Brute-force maximum of the joint success over (t, q1b, q1c).

    The scan resolution is capped at 301 points per axis (2.7e7 evaluations)
    before refinement.
    """
    spec = spec or GridSpec()
    return _max_3d(scenario, spec, _joint_term)


def grid_maximize_union_ssd(
    scenario: Scenario, spec: GridSpec | None = None
) -> tuple[float, float, float, float]:
    """Brute-force maximum of P(at least one succeeds) over (t, q1b, q1c)."""
    spec = spec or GridSpec()
    return _max_3d(scenario, spec, _union_term)


def grid_maximize_protocol2(
    scenario: Scenario, spec: GridSpec | None = None
) -> tuple[float, float, float]:
    """Brute-force value of protocol (2): Bob's stage maximized first, then
    Charlie's stage at the induced conditional priors.

    When Bob's stage peaks at the boundary q1b = 1 his success implies state 2
    and Charlie needs no measurement; the Charlie coordinate is then reported
    as NaN.
    """
    spec = spec or GridSpec()
    s, p1, p2 = scenario.s, scenario.p1, scenario.p2
    bob_val, q1b = _grid_max_stage(p1, p2, s, spec)
    exact_boundary = p2 * (1.0 - s * s)
    if exact_boundary >= bob_val:
        bob_val, q1b = exact_boundary, 1.0
    if q1b == 1.0:
        return bob_val, 1.0, math.nan
    q2b = s * s / q1b
    b1 = p1 * (1.0 - q1b)
    b2 = p2 * (1.0 - q2b)
    p1p, p2p = b1 / (b1 + b2), b2 / (b1 + b2)
    charlie_val, q1c = _grid_max_stage(p1p, p2p, s, spec)
    return bob_val * charlie_val, q1b, q1c


def _cloning_candidates(g1: np.ndarray, s: float) -> tuple[np.ndarray, np.ndarray]:
    """Both branches of gamma2 solving the cloning overlap constraint.

    Writes the constraint as A*cos(th2) + B*sin(th2) = s with A = s^2*sqrt(g1)
    and B = sqrt(1-g1); samples with no real solution yield NaN and are
    skipped by the caller.
    """
    a = s * s * np.sqrt(g1)
    b = np.sqrt(np.clip(1.0 - g1, 0.0, 1.0))
    rad = np.hypot(a, b)
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.where(rad > 0.0, s / np.where(rad > 0.0, rad, 1.0), np.inf)
        delta = np.arccos(np.clip(ratio, -1.0, 1.0))
        psi = np.arctan2(b, a)
        out = []
        for sign in (1.0, -1.0):
            th2 = psi + sign * delta
            valid = (ratio <= 1.0) & (th2 >= -1e-12) & (th2 <= 0.5 * math.pi + 1e-12)
            g2 = np.where(valid, np.cos(np.clip(th2, 0.0, 0.5 * math.pi)) ** 2, np.nan)
            out.append(g2)
    return out[0], out[1]


def _cloning_residual(g1: float, g2: float, s: float) -> float:
    return abs(s - math.sqrt(g1 * g2) * s * s - math.sqrt((1.0 - g1) * (1.0 - g2)))


def grid_maximize_cloning(
    scenario: Scenario, spec: GridSpec | None = None
) -> tuple[float, float, float]:
    """Brute-force maximum of p1*gamma1 + p2*gamma2 on the cloning constraint
    manifold, parametrized by gamma1 with both constraint branches."""
    spec = spec or GridSpec()
    s, p1, p2 = scenario.s, scenario.p1, scenario.p2
    if s == 0.0:
        return 1.0, 1.0, 1.0
    if s == 1.0:
        return 1.0, 1.0, 1.0

    def branch_best(g1: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        g2a, g2b = _cloning_candidates(g1, s)
        va = np.where(np.isnan(g2a), -np.inf, p1 * g1 + p2 * g2a)
        vb = np.where(np.isnan(g2b), -np.inf, p1 * g1 + p2 * g2b)
        pick_a = va >= vb
        return np.where(pick_a, va, vb), np.where(pick_a, g2a, g2b)

    def f_vec(g1: np.ndarray) -> np.ndarray:
        return branch_best(g1)[0]

    value, g1 = _max_1d(f_vec, 0.0, 1.0, spec)
    g2 = float(branch_best(np.array([g1]))[1][0])
    if not math.isfinite(value):
        raise NumericError(f"cloning constraint unsolvable everywhere for s={s}")
    if _cloning_residual(g1, g2, s) > 1e-10:
        raise NumericError(f"cloning oracle argmax violates the constraint at gamma1={g1}")
    return value, g1, g2


@dataclass(frozen=True)
class CertificationRow:
    """Worst closed-form-vs-oracle gap for one quantity over the grid."""

    quantity: str
    worst_gap: float
    worst_scenario: tuple[float, float]
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.worst_gap <= self.tolerance


def _cert_bob(sc: Scenario, spec: GridSpec) -> float:
    gap = 0.0
    for t in (math.sqrt(sc.s), 0.5 * (1.0 + sc.s)):
        closed = bob_optimal(sc, t).value
        oracle = grid_maximize_bob(sc, t, spec)[0]
        gap = max(gap, abs(closed - oracle))
    return gap


def _cert_charlie(sc: Scenario, spec: GridSpec) -> float:
    gap = 0.0
    for t in (math.sqrt(sc.s), 0.5 * (1.0 + sc.s)):
        closed = charlie_optimal(sc, t).value
        oracle = grid_maximize_charlie(sc, t, spec)[0]
        gap = max(gap, abs(closed - oracle))
    return gap


def _cert_joint(sc: Scenario, spec: GridSpec) -> float:
    closed = joint_optimal(sc, compute_boundary=False).value
    return abs(closed - grid_maximize_joint(sc, spec)[0])


def _cert_protocol1(sc: Scenario, spec: GridSpec) -> float:
    closed = protocol1_optimal(sc).value
    return abs(closed - _grid_max_stage(sc.p1, sc.p2, sc.s, spec)[0])


def _cert_protocol2(sc: Scenario, spec: GridSpec) -> float:
    closed = protocol2_optimal(sc).value
    return abs(closed - grid_maximize_protocol2(sc, spec)[0])


def _cert_protocol3(sc: Scenario, spec: GridSpec) -> float:
    closed = protocol3_optimal(sc).value
    p_cl, g1, g2 = grid_maximize_cloning(sc, spec)
    w1 = sc.p1 * g1
    p1cl = w1 / (w1 + sc.p2 * g2)
    disc = _grid_max_stage(p1cl, 1.0 - p1cl, sc.s, spec)[0]
    return abs(closed - p_cl * disc * disc)


def _cert_at_least_one_p3(sc: Scenario, spec: GridSpec) -> float:
    closed = at_least_one_protocol3(sc).value
    p_cl, g1, g2 = grid_maximize_cloning(sc, spec)
    w1 = sc.p1 * g1
    p1cl = w1 / (w1 + sc.p2 * g2)
    p2cl = 1.0 - p1cl
    s2 = sc.s * sc.s

    def neg_failure(q: np.ndarray) -> np.ndarray:
        return -(p1cl * q + p2cl * s2 / q)

    fail, _ = _max_1d(neg_failure, max(s2, 1e-300), 1.0, spec)
    oracle = p_cl * (1.0 - fail * fail)
    return abs(closed - oracle)


def _cert_at_least_one_ssd(sc: Scenario, spec: GridSpec) -> float:
    closed = at_least_one_ssd(sc).value
    return abs(closed - grid_maximize_union_ssd(sc, spec)[0])


_CERTIFIERS: dict[str, Callable[[Scenario, GridSpec], float]] = {
    "bob": _cert_bob,
    "charlie": _cert_charlie,
    "joint": _cert_joint,
    "protocol1": _cert_protocol1,
    "protocol2": _cert_protocol2,
    "protocol3": _cert_protocol3,
    "at_least_one_p3": _cert_at_least_one_p3,
    "at_least_one_ssd": _cert_at_least_one_ssd,
}


def certify(
    quantities: Sequence[str] | None = None,
    s_values: Sequence[float] = CERT_S_VALUES,
    p1_values: Sequence[float] = CERT_P1_VALUES,
    spec: GridSpec | None = None,
) -> list[CertificationRow]:
    """Compare every closed form against its oracle over the standard grid."""
    spec = spec or GridSpec()
    names = list(quantities) if quantities else list(_CERTIFIERS)
    unknown = [q for q in names if q not in _CERTIFIERS]
    if unknown:
        raise DomainError(f"unknown certification quantities {unknown}; valid: {sorted(_CERTIFIERS)}")
    rows = []
    for name in names:
        fn = _CERTIFIERS[name]
        worst, worst_at = -1.0, (math.nan, math.nan)
        for s in s_values:
            for p1 in p1_values:
                gap = fn(Scenario(s, p1), spec)
                if gap > worst:
                    worst, worst_at = gap, (s, p1)
        rows.append(CertificationRow(name, worst, worst_at, spec.tolerance))
    return rows
