"""Finite-horizon subjective-belief trading toolkit: a backward-induction
Q-value solver over (time, belief) states, a seeded binomial market
simulator, a suite of trading policies, and mechanical verification of the
inequalities the framework rests on."""

from .actions import LONG, NEUTRAL, SHORT, Action, Direction, Move
from .beliefs import (
    Belief,
    BetaBernoulli,
    Mirror,
    Static,
    belief_id,
    expected_step_reward,
)
from .errors import (
    ConfigurationError,
    OtlError,
    ResourceLimitError,
    UnreachableStateError,
    ValidationError,
)
from .market import (
    DividendSpec,
    MarketModel,
    PricePath,
    derive_path_seed,
    enumerate_paths,
    price_process,
    sample_path,
)
from .mdp import DecisionProblem, QTable, StageState, solve_q
from .policies import (
    AverageDown,
    BellmanOptimal,
    BuyHold,
    CutLoss,
    DecisionContext,
    Policy,
    PolicySpec,
    make_policy,
)
from .sim import ComparisonTable, SimConfig, SimResult, Stats, WealthPath, compare, run, summarize
from .verify import Report, check_bellman, check_example21, check_no_averaging, check_price

__version__ = "0.1.0"

__all__ = [
    "Action",
    "AverageDown",
    "Belief",
    "BellmanOptimal",
    "BetaBernoulli",
    "BuyHold",
    "ComparisonTable",
    "ConfigurationError",
    "CutLoss",
    "DecisionContext",
    "DecisionProblem",
    "Direction",
    "DividendSpec",
    "LONG",
    "MarketModel",
    "Mirror",
    "Move",
    "NEUTRAL",
    "OtlError",
    "Policy",
    "PolicySpec",
    "PricePath",
    "QTable",
    "Report",
    "ResourceLimitError",
    "SHORT",
    "SimConfig",
    "SimResult",
    "StageState",
    "Static",
    "Stats",
    "UnreachableStateError",
    "ValidationError",
    "WealthPath",
    "belief_id",
    "check_bellman",
    "check_example21",
    "check_no_averaging",
    "check_price",
    "compare",
    "derive_path_seed",
    "enumerate_paths",
    "expected_step_reward",
    "make_policy",
    "price_process",
    "run",
    "sample_path",
    "solve_q",
    "summarize",
]
