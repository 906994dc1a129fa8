import math

import numpy as np
import pytest

from lbnes import (SeekerParams, averaged_rhs, build_frequency_plan, closed_form_averaged,
                   convergence_sweep, error_matrix, integrate, nash_equilibrium, residual_estimate,
                   run_seeker)
from lbnes.averaging import ErrorMatrix
from lbnes.errors import DivergenceError, ValidationError
from lbnes.sim import SweepResult, Trajectory, loglog_slope, max_rates, trailing_mean_error

from conftest import one_player_game


class TestIntegrate:
    def test_exponential_decay(self):
        traj = integrate(lambda t, x: -x, [1.0], 1.0, 1e-3)
        assert traj.times[-1] == 1.0
        assert traj.states[-1, 0] == pytest.approx(math.exp(-1), abs=1e-10)

    def test_averaged_one_player(self):
        game, params = one_player_game(), SeekerParams(alphas=[0.05], gains=[6.0])
        # error system x - 1 decays at 0.3
        traj = integrate(lambda t, x: averaged_rhs(game, params, x), [2.0], 10.0, 1e-3)
        assert traj.states[-1, 0] - 1.0 == pytest.approx(math.exp(-3), abs=1e-9)

    def test_fourth_order(self):
        a = np.array([[-1.0, 2.0], [-2.0, -1.0]])
        exact = np.exp(-2.0) * np.array([math.cos(4.0) + math.sin(4.0), math.cos(4.0) - math.sin(4.0)])
        errs = []
        for step in (0.2, 0.1, 0.05, 0.025):
            traj = integrate(lambda t, x: a @ x, [1.0, 1.0], 2.0, step)
            errs.append(np.max(np.abs(traj.states[-1] - exact)))
        ratios = [e0 / e1 for e0, e1 in zip(errs, errs[1:])]
        assert all(12 <= r <= 20 for r in ratios), ratios
        orders = [math.log2(r) for r in ratios]
        assert all(3.7 <= o <= 4.3 for o in orders), orders

    def test_recording(self):
        traj = integrate(lambda t, x: np.zeros_like(x), [0.0], 1.0, 0.1, record_every=3)
        np.testing.assert_allclose(traj.times, [0.0, 0.3, 0.6, 0.9, 1.0])

    def test_divergence(self):
        with pytest.raises(DivergenceError) as info:
            integrate(lambda t, x: x ** 2, [1.0], 5.0, 1e-2)
        assert 0.9 < info.value.time < 1.2

    @pytest.mark.parametrize("kw", [{"step": 0.0}, {"t_end": -1.0}, {"record_every": 0}])
    def test_bad_arguments(self, kw):
        args = {"rhs": lambda t, x: x, "initial": [1.0], "t_end": 1.0, "step": 0.1, "record_every": 1}
        args.update(kw)
        with pytest.raises(ValidationError):
            integrate(**args)


class TestClosedForm:
    def test_zero_matrix(self):
        em = ErrorMatrix(a_matrix=np.zeros((2, 2)), kappas=np.zeros(2))
        traj = closed_form_averaged(em, [3.0, 4.0], [0.0, 0.0], [0.0, 1.0, 5.0])
        np.testing.assert_array_equal(traj.states, [[3.0, 4.0]] * 3)

    def test_diagonal(self):
        em = ErrorMatrix(a_matrix=np.diag([-1.0, -2.0]), kappas=np.ones(2))
        traj = closed_form_averaged(em, [1.0, 1.0], [0.0, 0.0], [0.0, 1.0])
        np.testing.assert_allclose(traj.states[1], [math.exp(-1), math.exp(-2)], atol=1e-12)

    def test_matches_integration(self, oligopoly, scenario):
        star = nash_equilibrium(oligopoly).actions
        num = integrate(lambda t, x: averaged_rhs(oligopoly, scenario.seeker, x), scenario.theta0,
                        50.0, 1e-3, record_every=100)
        exact = closed_form_averaged(error_matrix(oligopoly, scenario.seeker), scenario.theta0, star, num.times)
        assert np.max(np.abs(num.states - exact.states)) < 1e-8

    def test_rejects_unsorted(self):
        em = ErrorMatrix(a_matrix=np.zeros((1, 1)), kappas=np.zeros(1))
        with pytest.raises(ValidationError):
            closed_form_averaged(em, [1.0], [0.0], [1.0, 2.0])


class TestRunSeeker:
    def test_pure_dither_without_gain(self):
        game = one_player_game()
        params = SeekerParams(alphas=[0.05], gains=[1.0])
        object.__setattr__(params, "gains", np.zeros(1))  # k = 0 lies outside the validated domain
        plan = build_frequency_plan([30], 1.0)
        traj = run_seeker(game, params, plan, [0.5], 2.0)
        expected = 0.5 + math.sqrt(0.05 * 30) * np.sin(30 * traj.times) / 30
        np.testing.assert_allclose(traj.states[:, 0], expected, atol=1e-9)

    def test_records_payoffs_and_bounded_rate(self, oligopoly, scenario):
        traj = run_seeker(oligopoly, scenario.seeker, scenario.plan, scenario.theta0, 10.0)
        assert traj.payoffs.shape == traj.states.shape
        bound = np.sqrt(scenario.seeker.alphas * np.asarray(scenario.plan.omegas))
        assert np.all(max_rates(traj) <= bound + 1e-6)
        assert traj.header() == ["t", "theta_1", "theta_2", "theta_3", "theta_4", "J_1", "J_2", "J_3", "J_4"]

    def test_step_resolution_guard(self, oligopoly, scenario):
        with pytest.raises(ValidationError, match="steps_per_fast_period"):
            run_seeker(oligopoly, scenario.seeker, scenario.plan, scenario.theta0, 1.0, steps_per_fast_period=10)


class TestSweep:
    @pytest.mark.slow
    def test_one_player_sweep(self, single):
        game, params, plan = single
        res = convergence_sweep(game, params, plan, [1, 2, 4], [0.0], 50.0)
        np.testing.assert_allclose(res.omega_tildes, [30.0, 60.0, 120.0])
        assert res.monotone
        # the dither amplitude sqrt(alpha / omega) sets the gap, so the slope sits near -1/2
        assert -0.7 < res.loglog_slope < -0.45

    @pytest.mark.slow
    def test_one_player_sweep_first_order(self, single):
        # required first-order rate; red, the measured slope is about -0.60
        game, params, plan = single
        res = convergence_sweep(game, params, plan, [1, 2, 4], [0.0], 50.0)
        assert res.loglog_slope <= -0.8

    def test_needs_three_increasing(self, single):
        game, params, plan = single
        with pytest.raises(ValidationError):
            convergence_sweep(game, params, plan, [1, 2], [0.0], 1.0)
        with pytest.raises(ValidationError):
            convergence_sweep(game, params, plan, [1, 4, 2], [0.0], 1.0)

    def test_parallel_matches_serial(self, single):
        game, params, plan = single
        serial = convergence_sweep(game, params, plan, [1, 2, 3], [0.0], 2.0)
        parallel = convergence_sweep(game, params, plan, [1, 2, 3], [0.0], 2.0, max_workers=3)
        np.testing.assert_array_equal(serial.sup_errors, parallel.sup_errors)

    def test_loglog_slope(self):
        assert loglog_slope([1, 2, 4, 8], [8, 4, 2, 1]) == pytest.approx(-1.0)

    def test_csv(self):
        res = SweepResult(omega_tildes=[1.0, 2.0, 4.0], sup_errors=[0.4, 0.2, 0.1], loglog_slope=-1.0)
        assert res.to_csv().splitlines() == ["omega_tilde,sup_error", "1,0.40000000000000002",
                                             "2,0.20000000000000001", "4,0.10000000000000001"]


class TestResidual:
    def test_constant_at_target(self):
        traj = Trajectory(times=[0.0, 1.0, 2.0], states=[[1.0, 1.0]] * 3)
        assert residual_estimate(traj, [1.0, 1.0], 0.5) == 0.0

    def test_unit_offset(self):
        traj = Trajectory(times=[0.0, 1.0, 2.0], states=[[1.6, 1.8]] * 3)
        assert residual_estimate(traj, [1.0, 1.0], 1.0) == pytest.approx(1.0)
        assert trailing_mean_error(traj, [1.0, 1.0], 1.0) == pytest.approx(1.0)

    def test_window_selects_tail(self):
        traj = Trajectory(times=np.arange(11.0), states=np.arange(11.0)[:, None])
        assert residual_estimate(traj, [0.0], 0.1) == 10.0
        assert trailing_mean_error(traj, [0.0], 0.2) == pytest.approx(9.0)

    @pytest.mark.parametrize("frac", [0.0, 1.5])
    def test_bad_window(self, frac):
        traj = Trajectory(times=[0.0, 1.0], states=[[0.0], [0.0]])
        with pytest.raises(ValidationError):
            residual_estimate(traj, [0.0], frac)

    def test_shrinks_with_frequency(self, single):
        game, params, plan = single
        low = run_seeker(game, params, plan, [0.0], 50.0)
        high = run_seeker(game, params, plan.scaled(4), [0.0], 50.0)
        assert residual_estimate(high, [1.0], 0.1) < residual_estimate(low, [1.0], 0.1)


class TestTrajectory:
    def test_validation(self):
        with pytest.raises(ValidationError):
            Trajectory(times=[0.0], states=[[1.0]])
        with pytest.raises(ValidationError):
            Trajectory(times=[0.0, 0.0], states=[[1.0], [1.0]])
        with pytest.raises(ValidationError):
            Trajectory(times=[0.0, 1.0], states=[[1.0], [1.0]], payoffs=[[1.0, 2.0]])

    def test_csv_full_precision(self):
        traj = Trajectory(times=[0.0, 0.1], states=[[1 / 3], [2 / 3]])
        lines = traj.to_csv().splitlines()
        assert lines[0] == "t,theta_1"
        assert float(lines[2].split(",")[1]) == 2 / 3
        assert lines[1] == "0,0.33333333333333331"
