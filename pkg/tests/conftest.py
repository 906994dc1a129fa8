import numpy as np
import pytest

from lbnes import (REFERENCE_PARAMS, QuadraticGame, SeekerParams, build_frequency_plan,
                   build_oligopoly, reference_scenario)

REFERENCE_THETA_STAR = np.array([42.8818, 40.9300, 37.8363, 35.0874])
REFERENCE_PAYOFFS = np.array([524.0208, 293.4217, 238.4846, 209.6584])


def one_player_game():
    return QuadraticGame(hessians=[[[-2.0]]], linear_terms=[[2.0]], constants=[0.0])


def random_game(rng, n, low=-3, high=3):
    """Integer-coefficient game with negative own-curvature."""
    hess = rng.integers(low, high + 1, size=(n, n, n)).astype(float)
    hess = np.triu(hess) + np.transpose(np.triu(hess, 1), (0, 2, 1))
    for i in range(n):
        hess[i, i, i] = -rng.integers(1, high + 1)
    lin = rng.integers(low, high + 1, size=(n, n)).astype(float)
    const = rng.integers(low, high + 1, size=n).astype(float)
    return QuadraticGame(hessians=hess, linear_terms=lin, constants=const)


def dominant_game(rng, n):
    """Random game whose interaction matrix is strictly diagonally dominant."""
    hess = rng.uniform(-1, 1, size=(n, n, n))
    hess = 0.5 * (hess + np.transpose(hess, (0, 2, 1)))
    for i in range(n):
        off = np.abs(hess[i, i]).sum() - abs(hess[i, i, i])
        hess[i, i, i] = -(off + rng.uniform(0.1, 2.0))
    return QuadraticGame(hessians=hess, linear_terms=rng.uniform(-5, 5, size=(n, n)),
                         constants=rng.uniform(-5, 5, size=n))


@pytest.fixture
def oligopoly():
    return build_oligopoly(REFERENCE_PARAMS)


@pytest.fixture
def scenario():
    return reference_scenario()


@pytest.fixture
def rng():
    return np.random.default_rng(20240311)


@pytest.fixture
def single():
    game = one_player_game()
    params = SeekerParams(alphas=[0.05], gains=[6.0])
    plan = build_frequency_plan([1], 30.0)
    return game, params, plan


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[key])
