"""Bounded-update-rate seeking law.

Each player moves its action as

    d theta_i / dt = sqrt(alpha_i * omega_i) * cos(omega_i * t - k_i * y_i)

where ``y_i`` is the player's own scalar payoff measurement. The rate can
never exceed ``sqrt(alpha_i * omega_i)`` in magnitude, whatever the payoff.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .game import _actions, _frozen, _player, payoff, payoffs


@dataclass(frozen=True, eq=False)
class SeekerParams:
    """Per-player amplitude gains ``alphas`` and phase gains ``gains`` (k_i), all > 0."""

    alphas: np.ndarray
    gains: np.ndarray

    def __post_init__(self):
        for name in ("alphas", "gains"):
            arr = np.array(getattr(self, name), dtype=float)
            if arr.ndim != 1 or arr.size == 0:
                raise ValidationError(f"must be a non-empty 1-D list, got shape {arr.shape}", path=name)
            for i, v in enumerate(arr):
                if not (np.isfinite(v) and v > 0):
                    raise ValidationError(f"must be positive, got {v}", path=f"{name}[{i}]")
            object.__setattr__(self, name, _frozen(arr))
        if self.alphas.shape != self.gains.shape:
            raise ValidationError(
                f"length {self.gains.size} does not match alphas length {self.alphas.size}", path="gains"
            )

    @property
    def n_players(self):
        return self.alphas.size

    def __eq__(self, other):
        if not isinstance(other, SeekerParams):
            return NotImplemented
        return np.array_equal(self.alphas, other.alphas) and np.array_equal(self.gains, other.gains)

    __hash__ = None


def _check_sizes(game, params, plan=None):
    n = game.n_players
    if params.n_players != n:
        raise ValidationError(f"seeker params cover {params.n_players} players, game has {n}")
    if plan is not None and plan.n_players != n:
        raise ValidationError(f"frequency plan covers {plan.n_players} players, game has {n}")


def update_rate(i, t, y_i, params, plan):
    """Rate of player ``i`` given only its own payoff measurement ``y_i``."""
    alpha = params.alphas[i]
    omega = plan.omegas[i]
    return float(np.sqrt(alpha * omega) * np.cos(omega * t - params.gains[i] * y_i))


def vector_fields(game, params, j, actions):
    """Input-affine fields ``(b1, b2)`` of player ``j``, multiplying sin and cos dithers."""
    _check_sizes(game, params)
    j = _player(game, j)
    phase = params.gains[j] * payoff(game, j, actions)
    b1 = np.zeros(game.n_players)
    b2 = np.zeros(game.n_players)
    b1[j] = np.sqrt(params.alphas[j]) * np.sin(phase)
    b2[j] = np.sqrt(params.alphas[j]) * np.cos(phase)
    return b1, b2


def full_rhs(game, params, plan, t, actions):
    """Stacked right-hand side of all players' seeking laws at time ``t``."""
    _check_sizes(game, params, plan)
    x = _actions(game, actions)
    omegas = np.asarray(plan.omegas)
    amp = np.sqrt(params.alphas * omegas)
    return amp * np.cos(omegas * t - params.gains * payoffs(game, x))


def make_rhs(game, params, plan):
    """Fast closure ``f(t, theta)`` equivalent to :func:`full_rhs`, for integrators."""
    _check_sizes(game, params, plan)
    hess = np.array(game.hessians)
    lin = np.array(game.linear_terms)
    const = np.array(game.constants)
    omegas = np.array(plan.omegas, dtype=float)
    amp = np.sqrt(params.alphas * omegas)
    gains = np.array(params.gains)

    def rhs(t, x):
        y = 0.5 * (hess @ x) @ x + lin @ x + const
        return amp * np.cos(omegas * t - gains * y)

    return rhs
