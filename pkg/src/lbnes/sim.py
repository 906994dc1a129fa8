"""Integration of the oscillatory and averaged systems, and the frequency sweep."""

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .averaging import error_matrix
from .errors import DivergenceError, ValidationError
from .game import _frozen, nash_equilibrium, payoffs
from .linalg import expm
from .seeker import _check_sizes, make_rhs

DEFAULT_STEPS_PER_FAST_PERIOD = 100
DEFAULT_RECORD_EVERY = 10


def _fmt(x):
    return format(float(x), ".17g")


@dataclass(frozen=True, eq=False)
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    payoffs: np.ndarray = None

    def __post_init__(self):
        times = np.array(self.times, dtype=float)
        states = np.array(self.states, dtype=float)
        if times.ndim != 1 or times.size < 2:
            raise ValidationError("trajectory needs at least two time points", path="times")
        if np.any(np.diff(times) <= 0):
            raise ValidationError("must be strictly increasing", path="times")
        if states.ndim != 2 or states.shape[0] != times.size:
            raise ValidationError(f"must have shape ({times.size}, N), got {states.shape}", path="states")
        object.__setattr__(self, "times", _frozen(times))
        object.__setattr__(self, "states", _frozen(states))
        if self.payoffs is not None:
            pay = np.array(self.payoffs, dtype=float)
            if pay.shape != states.shape:
                raise ValidationError(f"must have shape {states.shape}, got {pay.shape}", path="payoffs")
            object.__setattr__(self, "payoffs", _frozen(pay))

    @property
    def n_players(self):
        return self.states.shape[1]

    def header(self):
        n = self.n_players
        cols = ["t"] + [f"theta_{i + 1}" for i in range(n)]
        if self.payoffs is not None:
            cols += [f"J_{i + 1}" for i in range(n)]
        return cols

    def write_csv(self, fh):
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(self.header())
        for k, t in enumerate(self.times):
            row = [t, *self.states[k]]
            if self.payoffs is not None:
                row += list(self.payoffs[k])
            writer.writerow([_fmt(v) for v in row])

    def to_csv(self):
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


@dataclass(frozen=True, eq=False)
class SweepResult:
    omega_tildes: np.ndarray
    sup_errors: np.ndarray
    loglog_slope: float

    def __post_init__(self):
        w = np.array(self.omega_tildes, dtype=float)
        e = np.array(self.sup_errors, dtype=float)
        if w.size < 3 or w.shape != e.shape:
            raise ValidationError("sweep needs >= 3 entries of equal length", path="omega_tildes")
        if np.any(np.diff(w) <= 0):
            raise ValidationError("must be strictly increasing", path="omega_tildes")
        object.__setattr__(self, "omega_tildes", _frozen(w))
        object.__setattr__(self, "sup_errors", _frozen(e))

    @property
    def monotone(self):
        """Informational: whether the sup error strictly decreases with omega_tilde."""
        return bool(np.all(np.diff(self.sup_errors) < 0))

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["omega_tilde", "sup_error"])
        for w, e in zip(self.omega_tildes, self.sup_errors):
            writer.writerow([_fmt(w), _fmt(e)])
        return buf.getvalue()

    def summary(self):
        return {
            "omega_tildes": self.omega_tildes.tolist(),
            "sup_errors": self.sup_errors.tolist(),
            "loglog_slope": float(self.loglog_slope),
            "monotone": self.monotone,
        }


def integrate(rhs, initial, t_end, step, record_every=1):
    """Classical fixed-step RK4.

    The step is shrunk uniformly, if needed, so that an integer number of
    steps lands exactly on ``t_end``. The initial state, every
    ``record_every``-th step and the final state are recorded.

    Raises
    ------
    DivergenceError
        When the state stops being finite.
    """
    if not (step > 0 and math.isfinite(step)):
        raise ValidationError(f"must be positive, got {step}", path="step")
    if not (t_end > 0 and math.isfinite(t_end)):
        raise ValidationError(f"must be positive, got {t_end}", path="t_end")
    if isinstance(record_every, bool) or not isinstance(record_every, (int, np.integer)) or record_every < 1:
        raise ValidationError(f"must be a positive integer, got {record_every!r}", path="record_every")
    x = np.array(initial, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValidationError("must be finite", path="initial")

    n_steps = max(1, math.ceil(t_end / step - 1e-9))
    dt = t_end / n_steps
    half = 0.5 * dt
    times = [0.0]
    states = [x.copy()]
    with np.errstate(over="ignore", invalid="ignore"):
        for s in range(n_steps):
            t = s * dt
            k1 = rhs(t, x)
            k2 = rhs(t + half, x + half * k1)
            k3 = rhs(t + half, x + half * k2)
            k4 = rhs(t + dt, x + dt * k3)
            x = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            if not np.all(np.isfinite(x)):
                raise DivergenceError(f"state became non-finite at t = {(s + 1) * dt:.6g}", time=(s + 1) * dt)
            if (s + 1) % record_every == 0 or s + 1 == n_steps:
                times.append((s + 1) * dt if s + 1 < n_steps else float(t_end))
                states.append(x.copy())
    return Trajectory(times=np.array(times), states=np.array(states))


def closed_form_averaged(em, theta0, theta_star, times):
    """Exact averaged trajectory ``theta* + expm(A t) (theta0 - theta*)``."""
    a = np.asarray(em.a_matrix, dtype=float)
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0 or times[0] != 0.0 or np.any(np.diff(times) < 0):
        raise ValidationError("must be sorted ascending and start at 0", path="times")
    theta_star = np.asarray(theta_star, dtype=float)
    offset = np.asarray(theta0, dtype=float) - theta_star
    states = np.array([theta_star + expm(a * t) @ offset for t in times])
    return Trajectory(times=times, states=states)


def seeker_step(plan, steps_per_fast_period=DEFAULT_STEPS_PER_FAST_PERIOD):
    return 2.0 * math.pi / (max(plan.omegas) * steps_per_fast_period)


def run_seeker(game, params, plan, theta0, t_end,
               steps_per_fast_period=DEFAULT_STEPS_PER_FAST_PERIOD,
               record_every=DEFAULT_RECORD_EVERY):
    """Integrate the oscillatory seeking dynamics and record payoffs alongside."""
    _check_sizes(game, params, plan)
    if steps_per_fast_period < 20:
        raise ValidationError(f"must be >= 20, got {steps_per_fast_period}", path="steps_per_fast_period")
    theta0 = np.asarray(theta0, dtype=float)
    if theta0.shape != (game.n_players,):
        raise ValidationError(f"must have length {game.n_players}", path="theta0")
    traj = integrate(make_rhs(game, params, plan), theta0, t_end,
                     seeker_step(plan, steps_per_fast_period), record_every)
    pay = np.array([payoffs(game, x) for x in traj.states])
    return Trajectory(times=traj.times, states=traj.states, payoffs=pay)


def _sweep_point(game, params, plan, theta0, theta_star, t_end, steps_per_fast_period, record_every):
    traj = run_seeker(game, params, plan, theta0, t_end, steps_per_fast_period, record_every)
    avg = closed_form_averaged(error_matrix(game, params), theta0, theta_star, traj.times)
    return float(np.max(np.linalg.norm(traj.states - avg.states, axis=1)))


def loglog_slope(xs, ys):
    """Least-squares slope of ``log y`` against ``log x``."""
    lx = np.log(np.asarray(xs, dtype=float))
    ly = np.log(np.asarray(ys, dtype=float))
    lx_c = lx - lx.mean()
    return float(lx_c @ (ly - ly.mean()) / (lx_c @ lx_c))


def convergence_sweep(game, params, base_plan, multipliers, theta0, t_end,
                      steps_per_fast_period=DEFAULT_STEPS_PER_FAST_PERIOD,
                      record_every=DEFAULT_RECORD_EVERY, max_workers=None):
    """Measure ``sup_t |theta(t) - theta_bar(t)|`` as all frequencies are scaled up.

    Each multiplier ``c`` scales the base frequency by ``c`` (ratios fixed),
    so ``omega_tilde`` scales by ``c`` as well. The oscillatory run is
    compared to the exact averaged trajectory on the same time grid.
    Runs are independent; ``max_workers > 1`` spreads them over processes.
    """
    multipliers = list(multipliers)
    if len(multipliers) < 3:
        raise ValidationError("at least three multipliers are required", path="multipliers")
    if any(not c > 0 for c in multipliers) or any(b <= a for a, b in zip(multipliers, multipliers[1:])):
        raise ValidationError("must be positive and strictly increasing", path="multipliers")
    theta_star = nash_equilibrium(game).actions
    plans = [base_plan.scaled(c) for c in multipliers]
    args = [(game, params, p, theta0, theta_star, t_end, steps_per_fast_period, record_every) for p in plans]

    errors = [None] * len(plans)
    if max_workers and max_workers > 1:
        with ProcessPoolExecutor(max_workers=max_workers) as pool:
            futures = [pool.submit(_sweep_point, *a) for a in args]
            for idx, fut in enumerate(futures):
                errors[idx] = _tagged(fut.result, multipliers[idx])
    else:
        for idx, a in enumerate(args):
            errors[idx] = _tagged(lambda a=a: _sweep_point(*a), multipliers[idx])

    omega_tildes = [p.omega_tilde for p in plans]
    return SweepResult(omega_tildes=omega_tildes, sup_errors=errors,
                       loglog_slope=loglog_slope(omega_tildes, errors))


def _tagged(fn, multiplier):
    try:
        return fn()
    except DivergenceError as exc:
        raise DivergenceError(f"multiplier {multiplier}: {exc}", time=exc.time, multiplier=multiplier) from exc


def _window(traj, window_fraction):
    if not 0 < window_fraction <= 1:
        raise ValidationError(f"must be in (0, 1], got {window_fraction}", path="window_fraction")
    t = traj.times
    start = t[-1] - window_fraction * (t[-1] - t[0])
    mask = t >= start - 1e-12 * max(1.0, abs(t[-1]))
    if not np.any(mask):
        raise ValidationError("window contains no samples", path="window_fraction")
    return mask


def residual_estimate(traj, theta_star, window_fraction=0.1):
    """Largest distance to ``theta_star`` over the trailing window of the trajectory."""
    mask = _window(traj, window_fraction)
    return float(np.max(np.linalg.norm(traj.states[mask] - np.asarray(theta_star), axis=1)))


def trailing_mean_error(traj, theta_star, window_fraction=0.1):
    """Mean distance to ``theta_star`` over the trailing window."""
    mask = _window(traj, window_fraction)
    return float(np.mean(np.linalg.norm(traj.states[mask] - np.asarray(theta_star), axis=1)))


def max_rates(traj):
    """Largest first-difference rate ``|d theta_i| / dt`` per player."""
    return np.max(np.abs(np.diff(traj.states, axis=0)) / np.diff(traj.times)[:, None], axis=0)
