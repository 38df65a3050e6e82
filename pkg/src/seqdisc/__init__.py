"""Sequential unambiguous discrimination of two nonorthogonal qubit states.

Closed-form optima for the no-communication chain (Bob then Charlie), three
classical-communication protocols including probabilistic cloning, the
quantum-correlation analysis of the measurement stage, brute-force oracles
certifying every closed form, and a seeded Monte Carlo simulator.
"""

from .core import (
    BOUNDARY_TOL,
    ConstraintError,
    DegenerateStrategyError,
    DomainError,
    InfeasibleIsometryError,
    NumericError,
    PureState,
    Scenario,
    StrategyParams,
    binary_entropy,
    entropy_H,
    make_state_pair,
)
from .correlations import (
    CorrelationInput,
    CorrelationReport,
    Tangles,
    correlation_report,
    discord_left,
    discord_right,
    left_discord_measurement_oracle,
    tangles,
)
from .oracle import (
    CERT_P1_VALUES,
    CERT_S_VALUES,
    CertificationRow,
    GridSpec,
    certify,
    grid_maximize_bob,
    grid_maximize_charlie,
    grid_maximize_cloning,
    grid_maximize_joint,
    grid_maximize_protocol2,
    grid_maximize_union_ssd,
)
from .protocols import (
    CloneParams,
    ConditionalPriors,
    at_least_one_protocol3,
    at_least_one_ssd,
    clone_optimal_for_prior,
    clone_params_of_omega,
    conditional_priors_after_bob,
    omega_range,
    protocol1_optimal,
    protocol2_critical_priors,
    protocol2_optimal,
    protocol3_optimal,
)
from .simulate import (
    JointUnitary,
    TrialSummary,
    build_discrimination_unitary,
    run_ssd_trials,
    trial_uniforms,
)
from .ssd import (
    SYMMETRY_BREAK_OVERLAP,
    CaseLabel,
    CriticalPrior,
    PiecewiseResult,
    bob_optimal,
    bob_success,
    charlie_optimal,
    critical_prior_PC,
    joint_optimal,
    joint_success,
    solve_q_star,
)
from .sweeps import FIGURE_PRESETS, SweepSpec, run_figure, run_sweep, write_csv

__version__ = "0.1.0"

__all__ = [
    "BOUNDARY_TOL",
    "CERT_P1_VALUES",
    "CERT_S_VALUES",
    "CaseLabel",
    "CertificationRow",
    "CloneParams",
    "ConditionalPriors",
    "ConstraintError",
    "CorrelationInput",
    "CorrelationReport",
    "CriticalPrior",
    "DegenerateStrategyError",
    "DomainError",
    "FIGURE_PRESETS",
    "GridSpec",
    "InfeasibleIsometryError",
    "JointUnitary",
    "NumericError",
    "PiecewiseResult",
    "PureState",
    "SYMMETRY_BREAK_OVERLAP",
    "Scenario",
    "StrategyParams",
    "SweepSpec",
    "Tangles",
    "TrialSummary",
    "at_least_one_protocol3",
    "at_least_one_ssd",
    "binary_entropy",
    "bob_optimal",
    "bob_success",
    "build_discrimination_unitary",
    "certify",
    "charlie_optimal",
    "clone_optimal_for_prior",
    "clone_params_of_omega",
    "conditional_priors_after_bob",
    "correlation_report",
    "critical_prior_PC",
    "discord_left",
    "discord_right",
    "entropy_H",
    "grid_maximize_bob",
    "grid_maximize_charlie",
    "grid_maximize_cloning",
    "grid_maximize_joint",
    "grid_maximize_protocol2",
    "grid_maximize_union_ssd",
    "joint_optimal",
    "joint_success",
    "left_discord_measurement_oracle",
    "make_state_pair",
    "omega_range",
    "protocol1_optimal",
    "protocol2_critical_priors",
    "protocol2_optimal",
    "protocol3_optimal",
    "run_figure",
    "run_ssd_trials",
    "run_sweep",
    "solve_q_star",
    "tangles",
    "trial_uniforms",
    "write_csv",
]
