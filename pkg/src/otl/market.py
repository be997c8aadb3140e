"""Exogenous binomial market: path sampling, exhaustive enumeration, and
risk-neutral valuation of a dividend stream by backward induction.

Ticks are absolute money amounts per step (e.g. +-$10 on a fixed $1000
stake); a down move adds d to the level, so with d = -10 a $1000 stake
becomes $990.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .actions import Move
from .errors import ResourceLimitError, ValidationError

DEFAULT_ENUM_HORIZON = 20
ENUM_HORIZON_ENV = "OTL_MAX_ENUM_HORIZON"


def max_enum_horizon() -> int:
    """Enumeration bound, overridable through OTL_MAX_ENUM_HORIZON."""
    raw = os.environ.get(ENUM_HORIZON_ENV)
    if raw is None:
        return DEFAULT_ENUM_HORIZON
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"{ENUM_HORIZON_ENV} must be an integer, got {raw!r}")


@dataclass(frozen=True)
class MarketModel:
    """Binomial dynamics under the true up-probability p_up.

    The stake is fixed per trade, independent of accumulated wealth.
    """

    u: float
    d: float
    p_up: float
    initial_wealth: float = 1000.0

    def __post_init__(self) -> None:
        if not self.u > 0 > self.d:
            raise ValidationError(f"ticks must satisfy u > 0 > d, got ({self.u}, {self.d})")
        if not 0.0 <= self.p_up <= 1.0:
            raise ValidationError(f"p_up must be in [0,1], got {self.p_up}")

    @property
    def ticks(self) -> tuple[float, float]:
        return (self.u, self.d)


@dataclass(frozen=True)
class PricePath:
    """A sequence of moves; probability is set only for enumerated paths."""

    moves: tuple[Move, ...]
    probability: float | None = None

    def __post_init__(self) -> None:
        if self.probability is not None and not 0.0 <= self.probability <= 1.0:
            raise ValidationError(f"path probability out of [0,1]: {self.probability}")


@dataclass(frozen=True)
class DividendSpec:
    """Reward stream for the valuation recursion.

    per_step_dividend(t, action, level) is paid on arriving at `level` at
    time t; terminal_payoff(level) is paid once at the horizon.
    """

    per_step_dividend: Callable[[int, object, float], float]
    terminal_payoff: Callable[[float], float]
    initial_level: float = 100.0


def zero_dividends() -> DividendSpec:
    return DividendSpec(
        per_step_dividend=lambda t, a, level: 0.0,
        terminal_payoff=lambda level: 0.0,
    )


# SplitMix64: a well-mixed 64-bit permutation, used so that path i's seed is a
# pure function of (master_seed, i) and any subset of paths can be regenerated
# independently of scheduling.
_MASK = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


def derive_path_seed(master_seed: int, path_index: int) -> int:
    """64-bit seed for path `path_index` of a run keyed by `master_seed`."""
    return _splitmix64(_splitmix64(master_seed & _MASK) ^ (path_index & _MASK))


def sample_moves(p_up: float, horizon: int, path_seed: int) -> tuple[Move, ...]:
    """`horizon` iid moves, Up with probability p_up, fixed by path_seed."""
    rng = random.Random(path_seed)
    return tuple(Move.UP if rng.random() < p_up else Move.DOWN for _ in range(horizon))


def sample_path(model: MarketModel, horizon: int, path_seed: int) -> PricePath:
    if horizon < 0:
        raise ValidationError(f"horizon must be >= 0, got {horizon}")
    return PricePath(moves=sample_moves(model.p_up, horizon, path_seed))


def enumerate_paths(model: MarketModel, horizon: int) -> list[PricePath]:
    """All 2^T move paths with their true-probability weights."""
    bound = max_enum_horizon()
    if horizon > bound:
        raise ResourceLimitError(
            f"enumeration horizon {horizon} exceeds bound {bound}"
        )
    if horizon < 0:
        raise ValidationError(f"horizon must be >= 0, got {horizon}")
    p = model.p_up
    out = []
    for combo in itertools.product((Move.UP, Move.DOWN), repeat=horizon):
        prob = 1.0
        for m in combo:
            prob *= p if m is Move.UP else (1.0 - p)
        out.append(PricePath(moves=combo, probability=prob))
    return out


def price_process(
    model: MarketModel,
    div: DividendSpec,
    horizon: int,
    actions: Sequence[object] = (None,),
) -> float:
    """Initial value of the dividend stream by backward induction.

    Levels move by the model's ticks. The max over actions only bites when
    the dividend depends on the action; with action-independent dividends
    the recursion degenerates to a plain expectation.
    """
    if horizon < 0:
        raise ValidationError(f"horizon must be >= 0, got {horizon}")
    bound = max_enum_horizon()
    if horizon > bound:
        raise ResourceLimitError(f"horizon {horizon} exceeds bound {bound}")
    if not actions:
        raise ValidationError("actions must be non-empty")
    p = model.p_up

    # Level after k up moves out of t total is determined by (t, k).
    def level(t: int, k: int) -> float:
        return div.initial_level + k * model.u + (t - k) * model.d

    vals = [div.terminal_payoff(level(horizon, k)) for k in range(horizon + 1)]
    for t in range(horizon - 1, -1, -1):
        nxt = []
        for k in range(t + 1):
            lvl_up = level(t + 1, k + 1)
            lvl_dn = level(t + 1, k)
            best = None
            for a in actions:
                ev = p * (div.per_step_dividend(t + 1, a, lvl_up) + vals[k + 1]) + (
                    1.0 - p
                ) * (div.per_step_dividend(t + 1, a, lvl_dn) + vals[k])
                if best is None or ev > best:
                    best = ev
            nxt.append(best)
        vals = nxt
    return vals[0]


def expected_dividend_by_enumeration(
    model: MarketModel, div: DividendSpec, horizon: int, action: object = None
) -> float:
    """Oracle for price_process with action-independent dividends: sum the
    dividend stream over every enumerated path, probability-weighted."""
    total = 0.0
    for path in enumerate_paths(model, horizon):
        level = div.initial_level
        acc = 0.0
        for t, m in enumerate(path.moves, start=1):
            level += model.u if m is Move.UP else model.d
            acc += div.per_step_dividend(t, action, level)
        acc += div.terminal_payoff(level)
        total += path.probability * acc
    return total
