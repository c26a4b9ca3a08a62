"""Bot policies and the shared turn driver.

Policies are deterministic given (state, policy seed): each policy owns a
private generator, separate from the game's, so changing a bot never
perturbs the deal. The turn driver implements the obligations the rules
put on the player to act: announce or draw when stuck, forced draws with
more than n pieces in hand, and exactly one move per turn.
"""

from __future__ import annotations

from collections import Counter

from . import multiset as ms
from .engine import (Exchange, GameError, GameState, Move, Pass, Spectrum,
                     TurnOutcome, announce_final, apply_move, enumerate_moves,
                     process_cancellations, resolve_stuck, spectrum_pieces,
                     validate_move, voluntary_draw)
from .rng import GameRng


class Policy:
    """Base bot interface.

    ``decide`` mirrors the (pre_draws, move) contract used by the service;
    the built-in bots never pre-draw, so it always returns 0 draws. The
    richer hooks (``choose``/``wants_announce``) are what the turn driver
    uses, since stuck handling needs to interleave draws with re-checks.
    """

    name = "policy"

    def __init__(self, seed: int = 0):
        self.rng = GameRng(seed)

    def wants_announce(self, state: GameState, player: int) -> bool:
        return False

    def choose(self, state: GameState, player: int, moves: list[Move],
               may_draw: bool = True) -> Move | None:
        raise NotImplementedError

    def decide(self, state: GameState, player: int) -> tuple[int, Move]:
        moves = enumerate_moves(state, player)
        if not moves:
            raise GameError("decide() requires at least one legal move")
        move = self.choose(state, player, moves, may_draw=False)
        return 0, move if move is not None else moves[0]


def _non_null(moves: list[Move]) -> list[Move]:
    return [mv for mv in moves
            if not (isinstance(mv, Exchange) and mv.is_null)]


class RandomPolicy(Policy):
    """Uniform choice over the legal moves (null exchanges excluded);
    announces, when eligible, with probability one half."""

    name = "random"

    def wants_announce(self, state, player):
        return self.rng.chance(0.5)

    def choose(self, state, player, moves, may_draw=True):
        candidates = _non_null(moves)
        if not candidates:
            return None if may_draw else moves[0]
        return self.rng.choice(candidates)


def _move_metrics(state: GameState, player: int, move: Move) -> tuple[int, int, int]:
    """(net hand reduction, cancellations caused, pieces taken) for scoring."""
    n = state.config.n
    if isinstance(move, Pass):
        return 0, 0, 0
    if isinstance(move, Spectrum):
        give = ms.canonical(spectrum_pieces(state.config.params))
        take: tuple = ()
        reduction = n
        taken = 1
    else:
        give, take = move.give, move.take
        reduction = move.net_reduction
        taken = len(move.take)
    center = Counter(state.center)
    ms.remove(center, take)
    ms.insert(center, give)
    _, outcome = process_cancellations(center, give)
    return reduction, outcome.total_cancellations, taken


class GreedyPolicy(Policy):
    """Gives as many pieces as possible for as few as possible, and makes
    the Center cancel.

    Lexicographic objective: net hand reduction, then cancellations caused,
    then fewest pieces taken; ties go to the canonically first move. When
    nothing reduces the hand it prefers to draw (position is stuck-ish), and
    announces the final round when it can reach one piece this turn or
    cannot improve at all.
    """

    name = "greedy"

    def _best(self, state, player, moves) -> tuple[Move | None, int]:
        best = None
        best_key = None
        for mv in _non_null(moves):
            if isinstance(mv, Pass):
                continue
            reduction, cancels, taken = _move_metrics(state, player, mv)
            key = (reduction, cancels, -taken)
            if best_key is None or key > best_key:
                best, best_key = mv, key
        return best, (best_key[0] if best_key else 0)

    def wants_announce(self, state, player):
        moves = enumerate_moves(state, player)
        best, reduction = self._best(state, player, moves)
        if best is None:
            return True
        hand = state.hand_size(player)
        return reduction >= hand - 1 or reduction <= 0

    def choose(self, state, player, moves, may_draw=True):
        best, reduction = self._best(state, player, moves)
        if best is None:
            return None if may_draw else moves[0]
        if (may_draw and reduction <= 0 and state.final_round is None
                and state.hand_size(player) > state.config.n
                and state.bag_size() > 0):
            return None
        return best


POLICIES = {cls.name: cls for cls in (RandomPolicy, GreedyPolicy)}


def make_policy(name: str, seed: int) -> Policy:
    try:
        return POLICIES[name](seed)
    except KeyError:
        raise ValueError(f"unknown policy {name!r}; "
                         f"available: {', '.join(sorted(POLICIES))}") from None


def drive_turn(state: GameState, policy: Policy) -> TurnOutcome:
    """Run one complete turn for the player to act, honoring the rules'
    stuck obligations.

    Voluntary draws initiated by the policy are capped at max(3, n) per
    turn, which is always enough to push a small stuck hand over n pieces
    and into forced-draw territory.
    """
    player = state.turn
    n = state.config.n
    if (state.final_round is None and state.hand_size(player) <= n
            and policy.wants_announce(state, player)):
        announce_final(state, player)

    draw_cap = max(3, n)
    drawn = 0
    while True:
        moves = enumerate_moves(state, player)
        if not moves:
            # No legal move; the final round would have offered Pass.
            if state.hand_size(player) > n:
                resolve_stuck(state, player)
                continue
            if state.bag_size() == 0 or (state.final_round is None
                                         and policy.wants_announce(state, player)):
                if state.final_round is None:
                    announce_final(state, player)
                    continue
                # Final round, bag empty, no move: engine offers Pass above.
                raise GameError("no legal move and no way to make one")
            voluntary_draw(state, player, 1)
            continue
        may_draw = drawn < draw_cap
        choice = policy.choose(state, player, moves, may_draw=may_draw)
        if choice is None and may_draw and state.bag_size() > 0:
            voluntary_draw(state, player, 1)
            drawn += 1
            continue
        if choice is None:
            choice = moves[0]
        break
    reason = validate_move(state, player, choice)
    if reason:
        raise GameError(f"policy {policy.name!r} chose an illegal move: {reason}")
    return apply_move(state, player, choice)
