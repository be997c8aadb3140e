"""Flat `key = value` run configuration.

The format is deliberately minimal: UTF-8 text, one assignment per line,
`#` starts a comment, unknown keys are rejected with the offending line
number. A dumped config reparses to an identical RunConfig.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from .actions import LONG, NEUTRAL, SHORT, Action, Move
from .beliefs import Belief, BetaBernoulli, Mirror, Static
from .errors import ConfigurationError, ValidationError
from .market import MarketModel
from .mdp import DecisionProblem
from .sim import SimConfig

_ACTION_NAMES = {"long": LONG, "neutral": NEUTRAL, "short": SHORT}
BELIEF_KINDS = ("static", "mirror", "beta")


@dataclass
class RunConfig:
    market_u: float = 10.0
    market_d: float = -10.0
    market_p: float = 0.5
    market_initial_wealth: float = 1000.0
    problem_horizon: int = 5
    problem_actions: str = "neutral,long,short"
    problem_discount: float = 1.0
    belief_kind: str = "static"
    belief_q0: float = 0.6
    belief_confidence: float = 0.6
    belief_alpha: float = 1.0
    belief_beta: float = 1.0
    sim_paths: int = 1000
    sim_seed: int = 0

    def belief(self) -> Belief:
        if self.belief_kind == "static":
            return Static(self.belief_q0)
        if self.belief_kind == "mirror":
            return Mirror(self.belief_confidence, Move.UP)
        if self.belief_kind == "beta":
            return BetaBernoulli(self.belief_alpha, self.belief_beta)
        raise ConfigurationError(f"belief.kind must be one of {BELIEF_KINDS}")

    def actions(self) -> tuple[Action, ...]:
        out = []
        for name in self.problem_actions.split(","):
            name = name.strip().lower()
            if name not in _ACTION_NAMES:
                raise ConfigurationError(
                    f"unknown action {name!r}; expected long, neutral, or short"
                )
            out.append(_ACTION_NAMES[name])
        return tuple(out)

    def market(self) -> MarketModel:
        return MarketModel(
            u=self.market_u,
            d=self.market_d,
            p_up=self.market_p,
            initial_wealth=self.market_initial_wealth,
        )

    def problem(self) -> DecisionProblem:
        return DecisionProblem(
            horizon=self.problem_horizon,
            ticks=(self.market_u, self.market_d),
            initial_belief=self.belief(),
            action_set=self.actions(),
            initial_wealth=self.market_initial_wealth,
            per_step_discount=self.problem_discount,
        )

    def sim_config(self) -> SimConfig:
        return SimConfig(
            n_paths=self.sim_paths,
            horizon=self.problem_horizon,
            master_seed=self.sim_seed,
            initial_belief=self.belief(),
        )


# config key -> (RunConfig attribute, parser)
_KEYS = {
    "market.u": ("market_u", float),
    "market.d": ("market_d", float),
    "market.p": ("market_p", float),
    "market.initial_wealth": ("market_initial_wealth", float),
    "problem.horizon": ("problem_horizon", int),
    "problem.actions": ("problem_actions", str),
    "problem.discount": ("problem_discount", float),
    "belief.kind": ("belief_kind", str),
    "belief.q0": ("belief_q0", float),
    "belief.confidence": ("belief_confidence", float),
    "belief.alpha": ("belief_alpha", float),
    "belief.beta": ("belief_beta", float),
    "sim.paths": ("sim_paths", int),
    "sim.seed": ("sim_seed", int),
}


def parse_config(text: str) -> RunConfig:
    """Parse config text; errors carry the 1-based line number."""
    cfg = RunConfig()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"line {lineno}: expected `key = value`, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _KEYS:
            raise ConfigurationError(f"line {lineno}: unknown key {key!r}")
        attr, conv = _KEYS[key]
        try:
            setattr(cfg, attr, conv(value))
        except ValueError:
            raise ConfigurationError(
                f"line {lineno}: cannot parse {value!r} as {conv.__name__} for {key}"
            )
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig) -> None:
    if cfg.belief_kind not in BELIEF_KINDS:
        raise ConfigurationError(
            f"belief.kind must be one of {BELIEF_KINDS}, got {cfg.belief_kind!r}"
        )
    try:
        cfg.market()
        cfg.problem()
    except ValidationError as exc:
        raise ConfigurationError(str(exc)) from exc


def load_config(path: str) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text)


def _render(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def dump_config(cfg: RunConfig) -> str:
    """Emit a config that reparses to an identical RunConfig."""
    attr_to_key = {attr: key for key, (attr, _) in _KEYS.items()}
    lines = []
    for f in fields(cfg):
        lines.append(f"{attr_to_key[f.name]} = {_render(getattr(cfg, f.name))}")
    return "\n".join(lines) + "\n"
