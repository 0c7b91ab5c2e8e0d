"""Exact solving of finite zero-sum perfect-information stochastic games by arena splitting."""

from .arena import (
    Arena, Control, Player, Transition, TransitionKey, available_actions, is_deterministic,
    is_one_player, restrict_actions, size, subarena, validate,
)
from .errors import *  # noqa: F401,F403
from .outcome import (
    ChainAnalysis, ProfileChain, analyze, build_chain, discounted_value, lasso_of,
    mean_payoff_value, parity_value, simple_parity_value,
)
from .preference import (
    Comparison, Evaluated, Preference, compare, overtaking_compare, parse_payoff,
    prefix_independent, sub_mixing,
)
from .solver import (
    Solution, SolveReport, Solver, brute_force_saddle, one_player_solve, solve_report,
    two_player_solve, verify_saddle,
)
from .split import (
    SplitResult, check_separation, copy_arena, extend_from_copy, lift_history, lift_strategy,
    project_history, project_strategy, split,
)
from .strategy import (
    DSStrategy, FMStrategy, Profile, ds_enumerate, equivalent, minimize, restrict_to_subarena,
)
from .words import GrowingWord, Lasso

__version__ = "0.1.0"
