"""Lie-bracket averaging of the seeking dynamics.

For large probing frequencies the oscillatory system is approximated by

    d theta_bar / dt = -1/2 * sum_j [b1^j, b2^j](theta_bar)
                     = 1/2 * A K (H theta_bar + h),

with ``A = diag(alpha)`` and ``K = diag(k)``. The ``nu`` coefficients weigh
each bracket; they are computed here by quadrature as a diagnostic only, to
confirm that brackets between different harmonics average out.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .game import _actions, _frozen, _player, interaction_matrix, pseudo_gradient
from .seeker import _check_sizes

DEFAULT_SUBINTERVALS = 1024

_DITHERS = {1: np.sin, 2: np.cos}


def _inner_integral(l, n, beta):
    # closed form of int_0^beta u_l(n a) da
    if l == 1:
        return (1.0 - np.cos(n * beta)) / n
    return np.sin(n * beta) / n


def simpson(values, width):
    """Composite Simpson rule on equally spaced samples (odd sample count)."""
    values = np.asarray(values, dtype=float)
    m = values.size - 1
    if m < 2 or m % 2:
        raise ValidationError(f"Simpson's rule needs an even number of subintervals, got {m}")
    return width / 3.0 * (values[0] + values[-1] + 4.0 * values[1:-1:2].sum() + 2.0 * values[2:-1:2].sum())


def nu_numeric(k, l, n_i, n_j, subintervals=DEFAULT_SUBINTERVALS):
    """Averaging weight ``(1/T) int_0^T u_k(n_i b) int_0^b u_l(n_j a) da db`` with ``T = 2 pi``.

    ``u_1 = sin`` and ``u_2 = cos``. The inner integral is exact; the outer
    one uses composite Simpson with ``subintervals`` panels (even, >= 64).
    """
    if k not in _DITHERS or l not in _DITHERS:
        raise ValidationError(f"dither indices must be 1 (sin) or 2 (cos), got k={k}, l={l}")
    for name, n in (("n_i", n_i), ("n_j", n_j)):
        if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
            raise ValidationError(f"must be a positive integer, got {n!r}", path=name)
    if isinstance(subintervals, bool) or not isinstance(subintervals, (int, np.integer)):
        raise ValidationError(f"must be an integer, got {subintervals!r}", path="subintervals")
    if subintervals < 64 or subintervals % 2:
        raise ValidationError(f"must be even and >= 64, got {subintervals}", path="subintervals")
    period = 2.0 * math.pi
    beta = np.linspace(0.0, period, subintervals + 1)
    integrand = _DITHERS[k](n_i * beta) * _inner_integral(l, n_j, beta)
    return float(simpson(integrand, period / subintervals) / period)


def nu_table(multipliers, subintervals=DEFAULT_SUBINTERVALS):
    """All ``nu`` weights for a set of harmonics, as a list of dicts."""
    rows = []
    for n_i in multipliers:
        for n_j in multipliers:
            for k in (1, 2):
                for l in (1, 2):
                    rows.append({
                        "k": k, "l": l, "n_i": int(n_i), "n_j": int(n_j),
                        "value": nu_numeric(k, l, int(n_i), int(n_j), subintervals),
                    })
    return rows


def lie_bracket(game, params, j, actions):
    """Analytic bracket ``[b1^j, b2^j]``: ``-alpha_j k_j dJ_j/dtheta_j`` at position ``j``."""
    _check_sizes(game, params)
    j = _player(game, j)
    out = np.zeros(game.n_players)
    out[j] = -params.alphas[j] * params.gains[j] * pseudo_gradient(game, actions)[j]
    return out


def averaged_rhs(game, params, avg_actions):
    _check_sizes(game, params)
    x = _actions(game, avg_actions)
    return 0.5 * params.alphas * params.gains * pseudo_gradient(game, x)


@dataclass(frozen=True, eq=False)
class ErrorMatrix:
    """Linear averaged error dynamics ``d/dt (theta_bar - theta*) = a_matrix @ (theta_bar - theta*)``."""

    a_matrix: np.ndarray
    kappas: np.ndarray


def error_matrix(game, params):
    _check_sizes(game, params)
    kappas = 0.5 * params.alphas * params.gains
    h = interaction_matrix(game).h_matrix
    return ErrorMatrix(a_matrix=_frozen(kappas[:, None] * h), kappas=_frozen(kappas))
