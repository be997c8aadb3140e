"""Finite-horizon backward-induction solver over an augmented (time, belief) state.

Wealth is deliberately absent from the stage state: the in-or-out decision is
assumed independent of the current wealth level, so the only state that
matters at decision time t is the trader's belief about the next move.
Wealth is tracked by the simulator purely for reporting.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .actions import LONG, NEUTRAL, SHORT, Action, Move
from .beliefs import Belief
from .errors import ResourceLimitError, UnreachableStateError, ValidationError

DEFAULT_ACTIONS: tuple[Action, ...] = (NEUTRAL, LONG, SHORT)

# Upper bound on distinct (t, belief) stage states solve_q will enumerate.
MAX_STAGE_STATES = 1_000_000


@dataclass(frozen=True)
class DecisionProblem:
    """Everything needed to solve for a Q-table.

    ticks are absolute money amounts per step, (u, d) with u > 0 > d.
    action_set order is the argmax tie-break order; the shipped default
    (neutral, long, short) stays out when indifferent.
    per_step_discount multiplies the step reward by discount**t.
    """

    horizon: int
    ticks: tuple[float, float]
    initial_belief: Belief
    action_set: tuple[Action, ...] = DEFAULT_ACTIONS
    initial_wealth: float = 1000.0
    per_step_discount: float = 1.0

    def __post_init__(self) -> None:
        if self.horizon < 0:
            raise ValidationError(f"horizon must be >= 0, got {self.horizon}")
        u, d = self.ticks
        if not u > 0 > d:
            raise ValidationError(f"ticks must satisfy u > 0 > d, got ({u}, {d})")
        actions = tuple(self.action_set)
        if not actions:
            raise ValidationError("action_set must be non-empty")
        if len(set(actions)) != len(actions):
            raise ValidationError("action_set contains duplicates")
        object.__setattr__(self, "action_set", actions)
        if not 0.0 < self.per_step_discount <= 1.0:
            raise ValidationError(
                f"per_step_discount must be in (0,1], got {self.per_step_discount}"
            )


@dataclass(frozen=True)
class StageState:
    """A decision time paired with the belief held at that time."""

    t: int
    belief: Belief


def step_reward(action: Action, move: Move, ticks: tuple[float, float]) -> float:
    """Realized profit of holding `action` through one `move`."""
    tick = ticks[0] if move is Move.UP else ticks[1]
    return action.direction.sign * action.size * tick


@dataclass
class QTable:
    """Solved subjective Q-values over every reachable stage state.

    Immutable once built; safe to query concurrently.
    """

    problem: DecisionProblem
    entries: dict[tuple[int, Belief, Action], float] = field(repr=False)
    values: dict[tuple[int, Belief], float] = field(repr=False)

    def reachable_beliefs(self, t: int) -> list[Belief]:
        return [b for (tt, b) in self.values if tt == t]

    def q(self, t: int, belief: Belief, action: Action) -> float:
        try:
            return self.entries[(t, belief, action)]
        except KeyError:
            raise UnreachableStateError(
                f"no Q entry for t={t}, belief={belief}, action={action}"
            ) from None

    def value(self, t: int, belief: Belief) -> float:
        try:
            return self.values[(t, belief)]
        except KeyError:
            raise UnreachableStateError(
                f"stage state (t={t}, belief={belief}) was never reached"
            ) from None

    def optimal_action(self, t: int, belief: Belief) -> Action:
        """Argmax of Q at the stage state; ties go to the earliest action
        in the problem's action_set order."""
        if t >= self.problem.horizon:
            raise UnreachableStateError(f"t={t} is at or past the horizon")
        best = None
        best_q = None
        for a in self.problem.action_set:
            q = self.q(t, belief, a)
            if best_q is None or q > best_q:
                best, best_q = a, q
        assert best is not None
        return best


def solve_q(problem: DecisionProblem, max_states: int = MAX_STAGE_STATES) -> QTable:
    """Solve the subjective Bellman recursion by backward induction.

    Reachable beliefs at each t are the forward closure of the initial belief
    under per-move updating; the belief transition is independent of the
    action (the market is exogenous), so the continuation value after a move
    is shared by every action.
    """
    T = problem.horizon
    layers: list[list[Belief]] = [[problem.initial_belief]]
    n_states = 1
    for _ in range(T):
        nxt: dict[Belief, None] = {}
        for b in layers[-1]:
            for m in Move:
                nxt.setdefault(b.update(m))
        layers.append(list(nxt))
        n_states += len(nxt)
        if n_states > max_states:
            raise ResourceLimitError(
                f"belief lattice exceeds {max_states} stage states at horizon {T}"
            )

    u, d = problem.ticks
    entries: dict[tuple[int, Belief, Action], float] = {}
    values: dict[tuple[int, Belief], float] = {(T, b): 0.0 for b in layers[T]}

    for t in range(T - 1, -1, -1):
        disc = problem.per_step_discount**t
        for b in layers[t]:
            q_up = b.predictive()
            b_up = b.update(Move.UP)
            b_dn = b.update(Move.DOWN)
            v_up = values[(t + 1, b_up)]
            v_dn = values[(t + 1, b_dn)]
            best = None
            for a in problem.action_set:
                sign = a.direction.sign
                r_up = disc * sign * a.size * u
                r_dn = disc * sign * a.size * d
                q = q_up * (r_up + v_up) + (1.0 - q_up) * (r_dn + v_dn)
                entries[(t, b, a)] = q
                if best is None or q > best:
                    best = q
            values[(t, b)] = best
    return QTable(problem=problem, entries=entries, values=values)
