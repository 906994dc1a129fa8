import math

import numpy as np
import pytest

from lbnes import (SeekerParams, averaged_rhs, error_matrix, interaction_matrix, lie_bracket,
                   nash_equilibrium, nu_numeric, nu_table, vector_fields)
from lbnes.averaging import simpson
from lbnes.errors import ValidationError
from lbnes.linalg import solve

from conftest import dominant_game, one_player_game


def fd_lie_bracket(game, params, j, x, step=1e-6):
    """[b1, b2] = (db2/dx) b1 - (db1/dx) b2 with central-difference Jacobians."""
    n = len(x)
    jac1 = np.empty((n, n))
    jac2 = np.empty((n, n))
    for c in range(n):
        e = np.zeros(n)
        e[c] = step
        p1, p2 = vector_fields(game, params, j, x + e)
        m1, m2 = vector_fields(game, params, j, x - e)
        jac1[:, c] = (p1 - m1) / (2 * step)
        jac2[:, c] = (p2 - m2) / (2 * step)
    b1, b2 = vector_fields(game, params, j, x)
    return jac2 @ b1 - jac1 @ b2


class TestNu:
    @pytest.mark.parametrize("k,l", [(1, 1), (1, 2), (2, 1), (2, 2)])
    def test_distinct_harmonics_vanish(self, k, l):
        for n_i in range(1, 11):
            for n_j in range(1, 11):
                if n_i != n_j:
                    assert abs(nu_numeric(k, l, n_i, n_j, 1024)) < 1e-10

    def test_sin_cos_unit_harmonic(self):
        # (1/2pi) int_0^2pi sin^2 = 1/2
        assert nu_numeric(1, 2, 1, 1) == pytest.approx(0.5, abs=1e-10)

    @pytest.mark.parametrize("n", range(1, 11))
    def test_same_harmonic_values(self, n):
        assert nu_numeric(1, 2, n, n) == pytest.approx(1 / (2 * n), abs=1e-8)
        assert nu_numeric(2, 1, n, n) == pytest.approx(-1 / (2 * n), abs=1e-8)
        # the diagonal (k == l) weights integrate to zero
        assert abs(nu_numeric(1, 1, n, n)) < 1e-10
        assert abs(nu_numeric(2, 2, n, n)) < 1e-10

    def test_large_harmonics(self):
        assert nu_numeric(1, 2, 50, 50) == pytest.approx(0.01, abs=1e-10)
        assert abs(nu_numeric(2, 1, 49, 50)) < 1e-10

    @pytest.mark.parametrize("m", [63, 32, 101])
    def test_bad_subintervals(self, m):
        with pytest.raises(ValidationError):
            nu_numeric(1, 2, 1, 1, m)

    def test_bad_indices(self):
        with pytest.raises(ValidationError):
            nu_numeric(3, 1, 1, 1)
        with pytest.raises(ValidationError):
            nu_numeric(1, 1, 0, 1)

    def test_table(self):
        rows = nu_table([1, 2])
        assert len(rows) == 16
        lookup = {(r["k"], r["l"], r["n_i"], r["n_j"]): r["value"] for r in rows}
        assert lookup[(1, 2, 2, 2)] == pytest.approx(0.25, abs=1e-10)

    def test_simpson_exact_for_cubics(self):
        x = np.linspace(0, 2, 65)
        assert simpson(x ** 3, 2 / 64) == pytest.approx(4.0, rel=1e-14)


class TestLieBracket:
    def test_zero_at_nash(self, oligopoly, scenario):
        star = nash_equilibrium(oligopoly).actions
        for j in range(4):
            np.testing.assert_allclose(lie_bracket(oligopoly, scenario.seeker, j, star), 0.0, atol=1e-10)

    def test_one_player(self):
        out = lie_bracket(one_player_game(), SeekerParams(alphas=[1.0], gains=[1.0]), 0, [0.0])
        np.testing.assert_array_equal(out, [-2.0])

    def test_finite_difference_oracle(self, oligopoly, scenario, rng):
        star = nash_equilibrium(oligopoly).actions
        for _ in range(10):
            x = star + rng.uniform(-5, 5, size=4)
            for j in range(4):
                np.testing.assert_allclose(lie_bracket(oligopoly, scenario.seeker, j, x),
                                           fd_lie_bracket(oligopoly, scenario.seeker, j, x), atol=1e-5)


class TestAveragedRhs:
    def test_zero_at_nash(self, oligopoly, scenario):
        star = nash_equilibrium(oligopoly).actions
        np.testing.assert_allclose(averaged_rhs(oligopoly, scenario.seeker, star), 0.0, atol=1e-12)

    def test_equals_bracket_sum(self, oligopoly, scenario, rng):
        for _ in range(10):
            x = rng.uniform(20, 60, size=4)
            via_brackets = -0.5 * sum(lie_bracket(oligopoly, scenario.seeker, j, x) for j in range(4))
            np.testing.assert_allclose(averaged_rhs(oligopoly, scenario.seeker, x), via_brackets,
                                       rtol=1e-12, atol=1e-12)

    def test_initial_point_matches_interaction_route(self, oligopoly, scenario):
        x0 = np.array([52.0, 40.93, 33.5, 35.09])
        im = interaction_matrix(oligopoly)
        ak = np.diag(scenario.seeker.alphas * scenario.seeker.gains)
        expected = 0.5 * ak @ (im.h_matrix @ x0 + im.h_vector)
        got = averaged_rhs(oligopoly, scenario.seeker, x0)
        assert np.all(np.isfinite(got))
        np.testing.assert_allclose(got, expected, rtol=1e-12, atol=1e-12)

    def test_linear_in_offset(self, oligopoly, scenario, rng):
        em = error_matrix(oligopoly, scenario.seeker)
        star = nash_equilibrium(oligopoly).actions
        for _ in range(10):
            x = rng.uniform(0, 100, size=4)
            lhs = averaged_rhs(oligopoly, scenario.seeker, x) - averaged_rhs(oligopoly, scenario.seeker, star)
            rhs = em.a_matrix @ (x - star)
            np.testing.assert_allclose(lhs, rhs, rtol=1e-12, atol=1e-12 * np.max(np.abs(rhs)))

    def test_fixed_point_is_nash(self, rng):
        for _ in range(10):
            n = int(rng.integers(1, 6))
            game = dominant_game(rng, n)
            params = SeekerParams(alphas=rng.uniform(0.01, 1, n), gains=rng.uniform(0.5, 10, n))
            em = error_matrix(game, params)
            # fixed point: a_matrix x = -diag(kappa) h
            b = -em.kappas * interaction_matrix(game).h_vector
            fixed = solve(em.a_matrix, b)
            np.testing.assert_allclose(fixed, nash_equilibrium(game).actions, rtol=1e-9, atol=1e-9)


class TestErrorMatrix:
    def test_one_player(self):
        em = error_matrix(one_player_game(), SeekerParams(alphas=[0.05], gains=[6.0]))
        np.testing.assert_allclose(em.a_matrix, [[-0.3]], rtol=1e-15)
        np.testing.assert_allclose(em.kappas, [0.15], rtol=1e-15)

    def test_uniform_gains_scale(self, oligopoly):
        # alpha k = 2c for everyone -> A = c H
        c = 0.75
        params = SeekerParams(alphas=[0.5] * 4, gains=[2 * c / 0.5] * 4)
        em = error_matrix(oligopoly, params)
        np.testing.assert_array_equal(em.a_matrix, c * interaction_matrix(oligopoly).h_matrix)

    def test_rows_scaled_by_kappa(self, oligopoly, scenario):
        em = error_matrix(oligopoly, scenario.seeker)
        h = interaction_matrix(oligopoly).h_matrix
        for i in range(4):
            kappa = scenario.seeker.alphas[i] * scenario.seeker.gains[i] / 2
            assert em.kappas[i] == pytest.approx(kappa, rel=1e-15)
            np.testing.assert_allclose(em.a_matrix[i], kappa * h[i], rtol=1e-15)
