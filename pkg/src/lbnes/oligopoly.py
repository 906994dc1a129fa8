"""Four-firm oligopoly pricing game and its reference seeking scenario.

Firm ``i`` sets a price; consumers' resistances ``R`` toward each product,
the firms' marginal costs ``m`` and the total demand ``S_d`` define
quadratic profits. Every block below shares the denominator

    D = R2 R3 R4 + R1 R3 R4 + R1 R2 R4 + R1 R2 R3.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .frequency import RationalRatio
from .game import QuadraticGame
from .seeker import SeekerParams


@dataclass(frozen=True)
class OligopolyParams:
    resistances: tuple
    marginal_costs: tuple
    total_demand: float

    def __post_init__(self):
        for name in ("resistances", "marginal_costs"):
            vals = tuple(float(v) for v in getattr(self, name))
            if len(vals) != 4:
                raise ValidationError(f"must have 4 entries, got {len(vals)}", path=name)
            for i, v in enumerate(vals):
                if not (np.isfinite(v) and v > 0):
                    raise ValidationError(f"must be positive, got {v}", path=f"{name}[{i}]")
            object.__setattr__(self, name, vals)
        sd = float(self.total_demand)
        if not (np.isfinite(sd) and sd > 0):
            raise ValidationError(f"must be positive, got {sd}", path="total_demand")
        object.__setattr__(self, "total_demand", sd)


REFERENCE_PARAMS = OligopolyParams(
    resistances=(0.15, 0.30, 0.60, 1.0),
    marginal_costs=(30.0, 30.0, 25.0, 20.0),
    total_demand=100.0,
)
REFERENCE_THETA0 = (52.0, 40.93, 33.5, 35.09)
REFERENCE_ALPHAS = (0.05, 0.05, 0.05, 0.05)
REFERENCE_GAINS = (6.0, 18.0, 10.0, 24.0)
REFERENCE_OMEGAS = (30, 24, 44, 36)
REFERENCE_T_END = 100.0


def build_oligopoly(p):
    """Quadratic game of the four firms, one payoff block per firm."""
    r = np.array(p.resistances)
    m = np.array(p.marginal_costs)
    sd = p.total_demand
    n = 4
    denom = r[1] * r[2] * r[3] + r[0] * r[2] * r[3] + r[0] * r[1] * r[3] + r[0] * r[1] * r[2]

    hessians = np.zeros((n, n, n))
    linear = np.zeros((n, n))
    constants = np.zeros(n)
    for i in range(n):
        others = [j for j in range(n) if j != i]
        # coupling of firm i's price with firm j's: product of the two R's outside {i, j}
        pair = {j: np.prod([r[k] for k in others if k != j]) for j in others}
        own = sum(pair.values())
        prod_others = np.prod(r[others])

        hessians[i, i, i] = -2.0 * own
        for j in others:
            hessians[i, i, j] = hessians[i, j, i] = pair[j]
            linear[i, j] = -m[i] * pair[j]
        linear[i, i] = m[i] * own + sd * prod_others
        constants[i] = -m[i] * sd * prod_others / denom

    return QuadraticGame(hessians=hessians / denom, linear_terms=linear / denom, constants=constants)


def reference_scenario(t_end=REFERENCE_T_END):
    """Reference configuration: oligopoly game, gains, and integer frequency ratios with base 1."""
    from .scenario import Scenario

    return Scenario(
        game=build_oligopoly(REFERENCE_PARAMS),
        seeker=SeekerParams(alphas=REFERENCE_ALPHAS, gains=REFERENCE_GAINS),
        ratios=tuple(RationalRatio(w) for w in REFERENCE_OMEGAS),
        base_omega=1.0,
        theta0=REFERENCE_THETA0,
        t_end=t_end,
    )
