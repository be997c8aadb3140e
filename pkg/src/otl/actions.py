"""Market moves and trading actions."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import ValidationError


class Move(enum.Enum):
    """Direction of a single price tick."""

    UP = "up"
    DOWN = "down"

    def __repr__(self) -> str:
        return f"Move.{self.name}"


class Direction(enum.Enum):
    """Side of the position taken for one step."""

    LONG = "long"
    NEUTRAL = "neutral"
    SHORT = "short"

    @property
    def sign(self) -> int:
        if self is Direction.LONG:
            return 1
        if self is Direction.SHORT:
            return -1
        return 0


@dataclass(frozen=True)
class Action:
    """A position direction with an integer stake multiplier.

    Neutral is always size 1: size carries no meaning while flat, so it is
    normalized away to keep Action values canonical (and hashable as keys).
    """

    direction: Direction
    size: int = 1

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValidationError(f"action size must be >= 1, got {self.size}")
        if self.direction is Direction.NEUTRAL and self.size != 1:
            object.__setattr__(self, "size", 1)

    def __str__(self) -> str:
        if self.size == 1:
            return self.direction.value
        return f"{self.direction.value}x{self.size}"


LONG = Action(Direction.LONG)
NEUTRAL = Action(Direction.NEUTRAL)
SHORT = Action(Direction.SHORT)
