"""Model-free Nash equilibrium seeking with bounded update rates.

Quadratic N-player games, the oscillatory seeking law, its Lie-bracket
averaged system, a Lyapunov stability certificate, and simulation tools
that compare the two.
"""

from .averaging import (ErrorMatrix, averaged_rhs, error_matrix, lie_bracket, nu_numeric,
                        nu_table)
from .errors import (AssumptionViolation, DivergenceError, FrequencyOverflowError,
                     NumericalError, SingularMatrixError, StabilityPreconditionError,
                     ValidationError)
from .frequency import FrequencyPlan, RationalRatio, build_frequency_plan, validate_distinct
from .game import (DominanceReport, InteractionMatrix, NashPoint, QuadraticGame,
                   check_diagonal_dominance, interaction_matrix, nash_equilibrium, payoff,
                   payoffs, pseudo_gradient)
from .oligopoly import OligopolyParams, REFERENCE_PARAMS, build_oligopoly, reference_scenario
from .scenario import Scenario, load_scenario, parse_scenario, serialize_scenario
from .seeker import SeekerParams, full_rhs, make_rhs, update_rate, vector_fields
from .sim import (SweepResult, Trajectory, closed_form_averaged, convergence_sweep, integrate,
                  residual_estimate, run_seeker, trailing_mean_error)
from .stability import (StabilityReport, bound_constants, gershgorin_check, solve_lyapunov,
                        stability_report, verify_exponential_bound)

__version__ = "0.1.0"
