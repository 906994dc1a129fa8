"""N-player quadratic games: payoffs, pseudo-gradient and Nash equilibrium.

Player ``i`` receives

    J_i(theta) = 1/2 theta^T H^i theta + (h^i)^T theta + c^i

and controls only ``theta[i]``. Players are indexed from 0.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .linalg import solve

SYMMETRY_ATOL = 1e-12


def _frozen(x):
    x = np.array(x, dtype=float)
    x.setflags(write=False)
    return x


@dataclass(frozen=True, eq=False)
class QuadraticGame:
    """Per-player quadratic payoff data.

    ``hessians`` has shape ``(N, N, N)`` (``hessians[i]`` is ``H^i``),
    ``linear_terms`` has shape ``(N, N)`` and ``constants`` shape ``(N,)``.
    Each ``H^i`` must be symmetric to ``1e-12`` and is symmetrized on
    construction; ``H^i_ii`` must be negative.
    """

    hessians: np.ndarray
    linear_terms: np.ndarray
    constants: np.ndarray

    def __post_init__(self):
        hess = np.array(self.hessians, dtype=float)
        lin = np.array(self.linear_terms, dtype=float)
        const = np.array(self.constants, dtype=float)
        if hess.ndim != 3 or hess.shape[0] == 0 or len(set(hess.shape)) != 1:
            raise ValidationError(f"must have shape (N, N, N), got {hess.shape}", path="hessians")
        n = hess.shape[0]
        if lin.shape != (n, n):
            raise ValidationError(f"must have shape ({n}, {n}), got {lin.shape}", path="linear_terms")
        if const.shape != (n,):
            raise ValidationError(f"must have shape ({n},), got {const.shape}", path="constants")
        for name, arr in (("hessians", hess), ("linear_terms", lin), ("constants", const)):
            if not np.all(np.isfinite(arr)):
                raise ValidationError("must be finite", path=name)
        for i in range(n):
            asym = np.abs(hess[i] - hess[i].T)
            if np.max(asym) > SYMMETRY_ATOL:
                j, k = np.unravel_index(np.argmax(asym), asym.shape)
                raise ValidationError(
                    f"must be symmetric (|H[{j}][{k}] - H[{k}][{j}]| = {asym[j, k]:.3e})",
                    path=f"hessians[{i}]",
                )
            if not hess[i, i, i] < 0:
                raise ValidationError("must be negative", path=f"hessians[{i}][{i}][{i}]")
        hess = 0.5 * (hess + np.transpose(hess, (0, 2, 1)))
        object.__setattr__(self, "hessians", _frozen(hess))
        object.__setattr__(self, "linear_terms", _frozen(lin))
        object.__setattr__(self, "constants", _frozen(const))

    @property
    def n_players(self):
        return self.hessians.shape[0]

    def __eq__(self, other):
        if not isinstance(other, QuadraticGame):
            return NotImplemented
        return (
            np.array_equal(self.hessians, other.hessians)
            and np.array_equal(self.linear_terms, other.linear_terms)
            and np.array_equal(self.constants, other.constants)
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class InteractionMatrix:
    """Stacked own-action gradient coefficients: pseudo-gradient = H theta + h."""

    h_matrix: np.ndarray
    h_vector: np.ndarray


@dataclass(frozen=True, eq=False)
class NashPoint:
    actions: np.ndarray
    payoffs: np.ndarray


@dataclass(frozen=True, eq=False)
class DominanceReport:
    margins: np.ndarray
    passed: bool


def _actions(game, actions):
    x = np.asarray(actions, dtype=float)
    if x.shape != (game.n_players,):
        raise ValidationError(
            f"actions must have shape ({game.n_players},), got {x.shape}", path="actions"
        )
    return x


def _player(game, i):
    if not isinstance(i, (int, np.integer)) or not 0 <= i < game.n_players:
        raise ValidationError(f"player index must be in [0, {game.n_players}), got {i!r}")
    return int(i)


def payoff(game, player, actions):
    """Payoff of one player at the joint action profile."""
    i = _player(game, player)
    x = _actions(game, actions)
    return float(0.5 * x @ game.hessians[i] @ x + game.linear_terms[i] @ x + game.constants[i])


def payoffs(game, actions):
    """All players' payoffs at once, shape ``(N,)``."""
    x = _actions(game, actions)
    return 0.5 * (game.hessians @ x) @ x + game.linear_terms @ x + game.constants


def pseudo_gradient(game, actions):
    """Stack of own-action partial derivatives dJ_i/dtheta_i."""
    x = _actions(game, actions)
    idx = np.arange(game.n_players)
    return game.hessians[idx, idx, :] @ x + game.linear_terms[idx, idx]


def interaction_matrix(game):
    idx = np.arange(game.n_players)
    return InteractionMatrix(
        h_matrix=_frozen(game.hessians[idx, idx, :]),
        h_vector=_frozen(game.linear_terms[idx, idx]),
    )


def nash_equilibrium(game):
    """Solve ``H theta* + h = 0`` directly.

    Raises :class:`~lbnes.errors.SingularMatrixError` when the interaction
    matrix is (numerically) singular.
    """
    im = interaction_matrix(game)
    theta = solve(im.h_matrix, -im.h_vector)
    return NashPoint(actions=_frozen(theta), payoffs=_frozen(payoffs(game, theta)))


def check_diagonal_dominance(game):
    """Row margins ``|H_ii| - sum_{j != i} |H_ij|`` of the interaction matrix.

    Passes only if every margin is strictly positive; no slack is applied.
    """
    h = np.abs(interaction_matrix(game).h_matrix)
    diag = np.diag(h)
    margins = diag - (h.sum(axis=1) - diag)
    return DominanceReport(margins=_frozen(margins), passed=bool(np.all(margins > 0)))
