"""Rational probing-frequency plans.

Each player probes at ``omega_i = a_i * omega`` with ``a_i = p_i / q_i``.
With ``q = prod(q_i)`` and ``omega_tilde = omega / q`` every frequency is an
integer multiple ``n_i * omega_tilde`` of a common base, ``n_i = p_i *
prod_{j != i} q_j``. Distinct ratios make the cross-player averaging terms
vanish, so they are enforced.
"""

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import AssumptionViolation, FrequencyOverflowError, ValidationError

INT64_MAX = 2 ** 63 - 1


def _positive_int(value, name):
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise ValidationError(f"must be an integer, got {value!r}", path=name)
    if value < 1:
        raise ValidationError(f"must be >= 1, got {value}", path=name)
    return int(value)


@dataclass(frozen=True)
class RationalRatio:
    """Exact positive rational ``p/q``, kept in lowest terms."""

    p: int
    q: int = 1

    def __post_init__(self):
        p = _positive_int(self.p, "p")
        q = _positive_int(self.q, "q")
        g = math.gcd(p, q)
        object.__setattr__(self, "p", p // g)
        object.__setattr__(self, "q", q // g)

    def __float__(self):
        return self.p / self.q

    def __str__(self):
        return f"{self.p}/{self.q}" if self.q != 1 else str(self.p)


def _as_ratio(r):
    if isinstance(r, RationalRatio):
        return r
    if isinstance(r, (tuple, list)) and len(r) == 2:
        return RationalRatio(*r)
    return RationalRatio(r)


@dataclass(frozen=True)
class FrequencyPlan:
    base_omega: float
    ratios: tuple
    q_product: int
    omega_tilde: float
    multipliers: tuple
    omegas: tuple

    @property
    def n_players(self):
        return len(self.ratios)

    def scaled(self, factor):
        """Same ratios with ``base_omega`` multiplied by ``factor``."""
        return build_frequency_plan(self.ratios, self.base_omega * factor)


def validate_distinct(ratios):
    """Return the 0-based index pairs of colliding ratios (empty if all distinct)."""
    rs = [_as_ratio(r) for r in ratios]
    return [(i, j) for i, j in combinations(range(len(rs)), 2) if rs[i] == rs[j]]


def build_frequency_plan(ratios, base_omega):
    rs = tuple(_as_ratio(r) for r in ratios)
    if not rs:
        raise ValidationError("at least one ratio is required", path="ratios")
    base_omega = float(base_omega)
    if not (math.isfinite(base_omega) and base_omega > 0):
        raise ValidationError(f"must be a positive finite number, got {base_omega}", path="base_omega")
    collisions = validate_distinct(rs)
    if collisions:
        i, j = collisions[0]
        raise AssumptionViolation(
            f"probing frequency ratios must be pairwise distinct: ratios[{i}] = ratios[{j}] = {rs[i]}",
            path="ratios",
        )

    q = math.prod(r.q for r in rs)
    if q > INT64_MAX:
        raise FrequencyOverflowError(f"q = prod(q_i) = {q} exceeds the 64-bit range", path="ratios")
    multipliers = []
    for r in rs:
        n = r.p * (q // r.q)
        if n > INT64_MAX:
            raise FrequencyOverflowError(f"multiplier {n} for ratio {r} exceeds the 64-bit range", path="ratios")
        multipliers.append(n)

    return FrequencyPlan(
        base_omega=base_omega,
        ratios=rs,
        q_product=q,
        omega_tilde=base_omega / q,
        multipliers=tuple(multipliers),
        omegas=tuple(r.p * base_omega / r.q for r in rs),
    )
