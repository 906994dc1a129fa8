"""Exponential-stability certificate for the averaged error dynamics.

The pipeline is: Gershgorin discs of the error matrix, a Lyapunov pair
``(P, Q)`` with ``P A + A^T P = -Q``, and the constants

    M = sqrt(lambda_max(P) / lambda_min(P)),   m = lambda_min(Q) / lambda_max(P).
"""

from dataclasses import asdict, dataclass

import numpy as np

from .averaging import ErrorMatrix, error_matrix
from .errors import SingularMatrixError, StabilityPreconditionError, ValidationError
from .game import _frozen
from .linalg import jacobi_eigenvalues, solve


def _square(a, name):
    a = np.array(getattr(a, "a_matrix", a), dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"must be square, got shape {a.shape}", path=name)
    return a


@dataclass(frozen=True)
class GershgorinResult:
    discs: tuple  # (center, radius) per row
    passed: bool


def gershgorin_check(em):
    """Row discs of ``em`` (an :class:`ErrorMatrix` or square array).

    Passes iff every disc lies strictly inside the open left half-plane.
    """
    a = _square(em, "a_matrix")
    centers = np.diag(a)
    radii = np.abs(a).sum(axis=1) - np.abs(centers)
    discs = tuple((float(c), float(r)) for c, r in zip(centers, radii))
    return GershgorinResult(discs=discs, passed=bool(np.all(centers + radii < 0)))


def eigenvalues(a):
    """Spectrum of a general square matrix (LAPACK via numpy)."""
    return np.linalg.eigvals(_square(a, "a_matrix"))


def is_hurwitz(a):
    return bool(np.all(eigenvalues(a).real < 0))


def solve_lyapunov(a_matrix, q_matrix):
    """Solve ``P A + A^T P = -Q`` for symmetric ``P``.

    The equation is rewritten as an ``N^2 x N^2`` system over the row-major
    entries of ``P`` and solved directly.

    Raises
    ------
    StabilityPreconditionError
        If ``A`` is not Hurwitz (then ``P`` would not be positive definite,
        or the stacked system is singular).
    """
    a = _square(a_matrix, "a_matrix")
    q = _square(q_matrix, "q_matrix")
    n = a.shape[0]
    if q.shape != (n, n):
        raise ValidationError(f"must have shape ({n}, {n}), got {q.shape}", path="q_matrix")
    if not is_hurwitz(a):
        raise StabilityPreconditionError(
            "error matrix has an eigenvalue with nonnegative real part; no Lyapunov pair exists"
        )
    eye = np.eye(n)
    # row-major vec(X B) = (I kron B^T) vec(X), vec(B X) = (B kron I) vec(X)
    stacked = np.kron(eye, a.T) + np.kron(a.T, eye)
    try:
        p = solve(stacked, -q.reshape(-1)).reshape(n, n)
    except SingularMatrixError as exc:
        raise StabilityPreconditionError(f"stacked Lyapunov system is singular: {exc}") from exc
    return 0.5 * (p + p.T)


def _spd_extremes(s, name):
    s = _square(s, name)
    if np.max(np.abs(s - s.T)) > 1e-10 * max(1.0, np.max(np.abs(s))):
        raise ValidationError("must be symmetric", path=name)
    ev = jacobi_eigenvalues(s)
    if ev[0] <= 0:
        raise ValidationError(f"must be positive definite (lambda_min = {ev[0]:.3e})", path=name)
    return ev[0], ev[-1]


def bound_constants(p_matrix, q_matrix):
    """Return ``(M, m)`` from a Lyapunov pair."""
    p_min, p_max = _spd_extremes(p_matrix, "p_matrix")
    q_min, _ = _spd_extremes(q_matrix, "q_matrix")
    return float(np.sqrt(p_max / p_min)), float(q_min / p_max)


@dataclass(frozen=True)
class BoundCheck:
    max_violation: float
    passed: bool


def verify_exponential_bound(traj, theta_star, M, m, slack=1e-6, rate=None):
    """Check ``|x(t) - x*| <= (1 + slack) M exp(-rate t) |x(0) - x*|`` on every grid time.

    ``rate`` defaults to ``m``. ``max_violation`` is the largest relative
    excess of the left side over the bound (negative when the bound holds
    with room to spare, 0 for a trajectory sitting at ``theta_star``).
    """
    if traj is None or len(traj.times) == 0:
        raise ValidationError("trajectory is empty", path="traj")
    if slack < 0:
        raise ValidationError(f"must be nonnegative, got {slack}", path="slack")
    rate = m if rate is None else rate
    times = np.asarray(traj.times, dtype=float)
    err = np.linalg.norm(np.asarray(traj.states) - np.asarray(theta_star, dtype=float), axis=1)
    bound = (1.0 + slack) * M * np.exp(-rate * (times - times[0])) * err[0]
    if err[0] == 0.0:
        worst = float(np.max(err))
        return BoundCheck(max_violation=worst, passed=worst == 0.0)
    excess = err / bound - 1.0
    worst = float(np.max(excess))
    return BoundCheck(max_violation=worst, passed=worst <= 0.0)


@dataclass(frozen=True, eq=False)
class StabilityReport:
    a_matrix: np.ndarray
    discs: tuple
    all_left_half_plane: bool
    p_matrix: np.ndarray
    q_matrix: np.ndarray
    m_big: float
    m_small: float

    def to_dict(self):
        d = asdict(self)
        d["a_matrix"] = self.a_matrix.tolist()
        d["p_matrix"] = self.p_matrix.tolist()
        d["q_matrix"] = self.q_matrix.tolist()
        d["discs"] = [{"center": c, "radius": r} for c, r in self.discs]
        return d


def stability_report(game, params, q_matrix=None):
    """Full certificate for a game and gain set; ``Q`` defaults to the identity."""
    em = error_matrix(game, params)
    q = np.eye(game.n_players) if q_matrix is None else np.array(q_matrix, dtype=float)
    gersh = gershgorin_check(em)
    p = solve_lyapunov(em.a_matrix, q)
    m_big, m_small = bound_constants(p, q)
    return StabilityReport(
        a_matrix=em.a_matrix,
        discs=gersh.discs,
        all_left_half_plane=gersh.passed,
        p_matrix=_frozen(p),
        q_matrix=_frozen(q),
        m_big=m_big,
        m_small=m_small,
    )


__all__ = [
    "BoundCheck", "ErrorMatrix", "GershgorinResult", "StabilityReport", "bound_constants",
    "eigenvalues", "gershgorin_check", "is_hurwitz", "solve_lyapunov", "stability_report",
    "verify_exponential_bound",
]
