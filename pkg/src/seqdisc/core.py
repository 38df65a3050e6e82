"""Problem instances and shared primitives for two-state unambiguous
discrimination.

Alice prepares one of two pure states with real overlap s = <psi1|psi2> and
prior probabilities (p1, 1 - p1).  By convention p1 <= 1/2; to treat p1 > 1/2
relabel the states.  All entropies are in bits (base-2 logarithms), so the
entropy bound of a single qubit is 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Absolute tolerance used to absorb floating-point drift at feasibility
# boundaries (probabilities, overlaps, entropy arguments).
BOUNDARY_TOL = 1e-12


class DomainError(ValueError):
    """An argument lies outside its mathematical domain."""


class ConstraintError(ValueError):
    """Strategy parameters violate a feasibility constraint."""


class DegenerateStrategyError(ConstraintError):
    """A strategy conditions on an event of probability zero."""


class NumericError(RuntimeError):
    """A numerical procedure failed to meet its accuracy contract."""


class InfeasibleIsometryError(ValueError):
    """No inner-product-preserving map exists between the given state pairs."""


@dataclass(frozen=True)
class Scenario:
    """A discrimination instance: overlap ``s`` and prior ``p1`` of state 1."""

    s: float
    p1: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.s <= 1.0:
            raise DomainError(f"overlap s={self.s} outside [0, 1]")
        if not 0.0 < self.p1 <= 0.5:
            raise DomainError(f"prior p1={self.p1} outside (0, 1/2]")

    @property
    def p2(self) -> float:
        return 1.0 - self.p1


@dataclass(frozen=True, eq=False)
class PureState:
    """Real-amplitude pure state (dimension 2 for the qubit, 3 for ancillas)."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amp = np.atleast_1d(np.asarray(self.amplitudes, dtype=float))
        object.__setattr__(self, "amplitudes", amp)
        norm = float(np.linalg.norm(amp))
        if abs(norm - 1.0) > BOUNDARY_TOL:
            raise DomainError(f"state norm {norm!r} deviates from 1 beyond {BOUNDARY_TOL}")

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def overlap(self, other: "PureState") -> float:
        return float(np.dot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class StrategyParams:
    """Failure parameters (q1, q2) of one unambiguous-discrimination stage.

    qi is the probability of the inconclusive outcome given preparation i.
    Unitarity of the stage forces q1 * q2 = r**2, where r is the overlap of
    the flag states, and each qi must lie in [r**2, 1].
    """

    q1: float
    q2: float
    r: float

    def __post_init__(self) -> None:
        r2 = self.r * self.r
        for name, q in (("q1", self.q1), ("q2", self.q2)):
            if q < r2 - BOUNDARY_TOL:
                raise ConstraintError(f"{name}={q} below lower bound r^2={r2}")
            if q > 1.0 + BOUNDARY_TOL:
                raise ConstraintError(f"{name}={q} above upper bound 1")
        if abs(self.q1 * self.q2 - r2) > BOUNDARY_TOL:
            raise ConstraintError(
                f"q1*q2={self.q1 * self.q2} violates the product constraint r^2={r2}"
            )

    @classmethod
    def from_q1(cls, q1: float, r: float) -> "StrategyParams":
        """Build from q1 alone, deriving q2 = r**2 / q1."""
        if r == 0.0:
            if not -BOUNDARY_TOL <= q1 <= 1.0 + BOUNDARY_TOL:
                raise ConstraintError(f"q1={q1} outside [0, 1]")
            return cls(max(q1, 0.0), 0.0, 0.0)
        if q1 <= 0.0:
            raise ConstraintError(f"q1={q1} below lower bound r^2={r * r}")
        return cls(q1, r * r / q1, r)


def make_state_pair(s: float, dim: int) -> tuple[PureState, PureState]:
    """Two real unit vectors with inner product s, symmetric about the first axis.

    The half-angle is fixed by cos(2*theta) = s, giving the pair
    (cos(theta), +-sin(theta), 0, ...) embedded in the requested dimension.
    """
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"overlap s={s} outside [0, 1]")
    if dim < 2:
        raise DomainError(f"dim={dim} must be at least 2")
    theta = 0.5 * math.acos(s)
    v1 = np.zeros(dim)
    v2 = np.zeros(dim)
    v1[0] = v2[0] = math.cos(theta)
    v1[1] = math.sin(theta)
    v2[1] = -math.sin(theta)
    return PureState(v1), PureState(v2)


def binary_entropy(p: float) -> float:
    """Shannon entropy of a bit, -p*log2(p) - (1-p)*log2(1-p)."""
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -(p * math.log2(p) + (1.0 - p) * math.log2(1.0 - p))


def entropy_H(x: float) -> float:
    """Entropy of the spectrum {(1 + sqrt(1-x))/2, (1 - sqrt(1-x))/2} in bits.

    This is the entanglement of formation of a two-qubit state with tangle x
    (Wootters' formula); it increases monotonically from H(0) = 0 to H(1) = 1.
    Arguments within 1e-12 of [0, 1] are clamped, anything farther is rejected.
    """
    if x < -BOUNDARY_TOL or x > 1.0 + BOUNDARY_TOL:
        raise DomainError(f"entropy argument x={x} outside [0, 1]")
    x = min(1.0, max(0.0, x))
    return binary_entropy(0.5 * (1.0 + math.sqrt(1.0 - x)))
