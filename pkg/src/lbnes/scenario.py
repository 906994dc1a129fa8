"""Scenario JSON format.

A scenario is a single JSON object::

    {
      "game": {"n_players": N, "hessians": [...], "linear_terms": [...], "constants": [...]},
      "seeker": {"alphas": [...], "gains": [...]},
      "ratios": [[p, q], ...],
      "base_omega": 1.0,
      "theta0": [...],
      "t_end": 100.0,
      "steps_per_fast_period": 100,
      "record_every": 10
    }

Matrices are row-major nested arrays. The last two keys are optional.
Unknown keys are rejected and every diagnostic names the JSON path.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .frequency import RationalRatio, build_frequency_plan
from .game import QuadraticGame, _frozen
from .seeker import SeekerParams
from .sim import DEFAULT_RECORD_EVERY, DEFAULT_STEPS_PER_FAST_PERIOD


@dataclass(frozen=True, eq=False)
class Scenario:
    game: QuadraticGame
    seeker: SeekerParams
    ratios: tuple
    base_omega: float
    theta0: np.ndarray
    t_end: float
    steps_per_fast_period: int = DEFAULT_STEPS_PER_FAST_PERIOD
    record_every: int = DEFAULT_RECORD_EVERY

    def __post_init__(self):
        n = self.game.n_players
        theta0 = np.array(self.theta0, dtype=float)
        if theta0.shape != (n,):
            raise ValidationError(f"must have length {n} (number of players), got {theta0.size}", path="theta0")
        if not np.all(np.isfinite(theta0)):
            raise ValidationError("must be finite", path="theta0")
        object.__setattr__(self, "theta0", _frozen(theta0))
        object.__setattr__(self, "ratios", tuple(self.ratios))
        if self.seeker.n_players != n:
            raise ValidationError(f"must have length {n}, got {self.seeker.n_players}", path="seeker.alphas")
        if len(self.ratios) != n:
            raise ValidationError(f"must have length {n}, got {len(self.ratios)}", path="ratios")
        if not (math.isfinite(self.t_end) and self.t_end > 0):
            raise ValidationError(f"must be positive, got {self.t_end}", path="t_end")
        if self.steps_per_fast_period < 20:
            raise ValidationError(f"must be >= 20, got {self.steps_per_fast_period}", path="steps_per_fast_period")
        if self.record_every < 1:
            raise ValidationError(f"must be >= 1, got {self.record_every}", path="record_every")
        object.__setattr__(self, "t_end", float(self.t_end))
        object.__setattr__(self, "base_omega", float(self.base_omega))
        self.plan  # validates ratios and base_omega

    @property
    def plan(self):
        return build_frequency_plan(self.ratios, self.base_omega)

    def __eq__(self, other):
        if not isinstance(other, Scenario):
            return NotImplemented
        return (
            self.game == other.game
            and self.seeker == other.seeker
            and self.ratios == other.ratios
            and self.base_omega == other.base_omega
            and np.array_equal(self.theta0, other.theta0)
            and self.t_end == other.t_end
            and self.steps_per_fast_period == other.steps_per_fast_period
            and self.record_every == other.record_every
        )

    __hash__ = None


_TOP_KEYS = {"game", "seeker", "ratios", "base_omega", "theta0", "t_end",
             "steps_per_fast_period", "record_every"}
_REQUIRED = _TOP_KEYS - {"steps_per_fast_period", "record_every"}


def _obj(value, path, allowed, required):
    if not isinstance(value, dict):
        raise ValidationError("must be a JSON object", path=path)
    unknown = sorted(set(value) - allowed)
    if unknown:
        raise ValidationError(f"has unknown key {unknown[0]!r}", path=path or "$")
    missing = sorted(required - set(value))
    if missing:
        raise ValidationError(f"is missing required key {missing[0]!r}", path=path or "$")
    return value


def _number(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"must be a number, got {json.dumps(value)}", path=path)
    if not math.isfinite(value):
        raise ValidationError("must be finite", path=path)
    return float(value)


def _integer(value, path, minimum):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"must be an integer, got {json.dumps(value)}", path=path)
    if value < minimum:
        raise ValidationError(f"must be >= {minimum}, got {value}", path=path)
    return value


def _array(value, path, shape):
    """Nested list of numbers with the given shape, with element-level paths."""
    if len(shape) == 0:
        return _number(value, path)
    if not isinstance(value, list):
        raise ValidationError("must be an array", path=path)
    if len(value) != shape[0]:
        raise ValidationError(f"must have length {shape[0]}, got {len(value)}", path=path)
    return [_array(v, f"{path}[{i}]", shape[1:]) for i, v in enumerate(value)]


def _positive_array(value, path, n):
    vals = _array(value, path, (n,))
    for i, v in enumerate(vals):
        if not v > 0:
            raise ValidationError(f"must be positive, got {v}", path=f"{path}[{i}]")
    return vals


def _game(doc, path):
    g = _obj(doc, path, {"n_players", "hessians", "linear_terms", "constants"},
             {"n_players", "hessians", "linear_terms", "constants"})
    n = _integer(g["n_players"], f"{path}.n_players", 1)
    hess = _array(g["hessians"], f"{path}.hessians", (n, n, n))
    lin = _array(g["linear_terms"], f"{path}.linear_terms", (n, n))
    const = _array(g["constants"], f"{path}.constants", (n,))
    try:
        return QuadraticGame(hessians=hess, linear_terms=lin, constants=const)
    except ValidationError as exc:
        raise ValidationError(exc.rule, path=f"{path}.{exc.path}" if exc.path else path) from exc


def _ratios(value, n):
    if not isinstance(value, list):
        raise ValidationError("must be an array of [p, q] pairs", path="ratios")
    if len(value) != n:
        raise ValidationError(f"must have length {n}, got {len(value)}", path="ratios")
    out = []
    for i, r in enumerate(value):
        if not isinstance(r, list) or len(r) != 2:
            raise ValidationError("must be a two-integer array [p, q]", path=f"ratios[{i}]")
        p = _integer(r[0], f"ratios[{i}][0]", 1)
        q = _integer(r[1], f"ratios[{i}][1]", 1)
        out.append(RationalRatio(p, q))
    return tuple(out)


def scenario_from_dict(doc):
    d = _obj(doc, "", _TOP_KEYS, _REQUIRED)
    game = _game(d["game"], "game")
    n = game.n_players
    s = _obj(d["seeker"], "seeker", {"alphas", "gains"}, {"alphas", "gains"})
    seeker = SeekerParams(alphas=_positive_array(s["alphas"], "seeker.alphas", n),
                          gains=_positive_array(s["gains"], "seeker.gains", n))
    ratios = _ratios(d["ratios"], n)
    base_omega = _number(d["base_omega"], "base_omega")
    if not base_omega > 0:
        raise ValidationError(f"must be positive, got {base_omega}", path="base_omega")
    theta0 = _array(d["theta0"], "theta0", (n,)) if isinstance(d["theta0"], list) else None
    if theta0 is None:
        raise ValidationError("must be an array", path="theta0")
    t_end = _number(d["t_end"], "t_end")
    if not t_end > 0:
        raise ValidationError(f"must be positive, got {t_end}", path="t_end")
    spp = _integer(d.get("steps_per_fast_period", DEFAULT_STEPS_PER_FAST_PERIOD), "steps_per_fast_period", 20)
    rec = _integer(d.get("record_every", DEFAULT_RECORD_EVERY), "record_every", 1)
    return Scenario(game=game, seeker=seeker, ratios=ratios, base_omega=base_omega,
                    theta0=theta0, t_end=t_end, steps_per_fast_period=spp, record_every=rec)


def parse_scenario(text):
    """Parse and validate a scenario JSON document.

    Raises :class:`~lbnes.errors.ValidationError`; for malformed JSON the
    message carries line and column.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return scenario_from_dict(doc)


def scenario_to_dict(sc):
    return {
        "game": {
            "n_players": sc.game.n_players,
            "hessians": sc.game.hessians.tolist(),
            "linear_terms": sc.game.linear_terms.tolist(),
            "constants": sc.game.constants.tolist(),
        },
        "seeker": {"alphas": sc.seeker.alphas.tolist(), "gains": sc.seeker.gains.tolist()},
        "ratios": [[r.p, r.q] for r in sc.ratios],
        "base_omega": sc.base_omega,
        "theta0": sc.theta0.tolist(),
        "t_end": sc.t_end,
        "steps_per_fast_period": sc.steps_per_fast_period,
        "record_every": sc.record_every,
    }


def serialize_scenario(sc):
    # json uses repr for floats: shortest string that round-trips exactly
    return json.dumps(scenario_to_dict(sc), indent=2) + "\n"


def load_scenario(path):
    with open(path, encoding="utf-8") as fh:
        return parse_scenario(fh.read())
