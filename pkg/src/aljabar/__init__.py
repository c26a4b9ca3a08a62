"""Al-Jabar: the color-arithmetic game over (Z_m)^n.

Library layout:

* :mod:`aljabar.groups` - color arithmetic, palettes, reduction traces
* :mod:`aljabar.engine` - rules state machine (setup, moves, cancellation,
  endgame)
* :mod:`aljabar.policies` / :mod:`aljabar.simulate` - bots and seeded
  tournaments
* :mod:`aljabar.replay` - event-log replay and verification
* :mod:`aljabar.service` - websocket session service for live play
* :mod:`aljabar.cli` - the ``aljabar`` command
"""

from .engine import (ConfigurationError, Exchange, GameConfig, GameError,
                     GameState, IllegalMove, Move, Pass, Spectrum,
                     TurnOutcome, announce_final, apply_move, deal_size,
                     enumerate_moves, new_game, pool_spec,
                     process_cancellations, resolve_stuck, validate_move,
                     voluntary_draw, winner)
from .groups import (ColorVector, DimensionMismatch, GroupParams, Palette,
                     ReductionTrace, UnsupportedParams, add, addition_table,
                     addition_table_csv, fano_lines, identity, inverse,
                     primaries, reduce_trace, spectrum_pieces,
                     standard_palette, sum_multiset)
from .policies import GreedyPolicy, Policy, RandomPolicy, drive_turn, make_policy
from .replay import replay_events, replay_file
from .simulate import MatchRecord, TournamentResult, run_match, tournament

__version__ = "0.1.0"

__all__ = [
    "add", "addition_table", "addition_table_csv", "announce_final",
    "apply_move", "ColorVector", "ConfigurationError", "deal_size",
    "DimensionMismatch", "drive_turn", "enumerate_moves", "Exchange",
    "fano_lines", "GameConfig", "GameError", "GameState", "GreedyPolicy",
    "GroupParams", "identity", "IllegalMove", "inverse", "make_policy",
    "MatchRecord", "Move", "new_game", "Palette", "Pass", "Policy",
    "pool_spec", "primaries", "process_cancellations", "RandomPolicy",
    "reduce_trace", "ReductionTrace", "replay_events", "replay_file",
    "resolve_stuck", "run_match", "Spectrum", "spectrum_pieces",
    "standard_palette", "sum_multiset", "tournament", "TournamentResult",
    "TurnOutcome", "UnsupportedParams", "validate_move", "voluntary_draw",
    "winner",
]
