"""Seeded match and tournament runner.

Every match is reproducible from (config, matchup, seed): the game RNG
comes from the per-game seed and each seat's policy RNG is derived from
the tournament base seed, the game index, and the seat. The harness
asserts the table invariants after every single turn, so a thousand-game
run doubles as a soak test of the rules engine.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import events as ev
from .engine import (GameConfig, GameState, check_invariants, new_game,
                     winner)
from .policies import Policy, drive_turn, make_policy
from .rng import derive_seed

MAX_TURNS = 100_000

_GAME_SALT = 0x47414D45    # distinguishes game-seed derivation ("GAME")
_POLICY_SALT = 0x424F5453  # from policy-seed derivation ("BOTS")


def seat_policy_seed(game_seed: int, seat: int) -> int:
    """Deterministic policy seed for a seat; shared with the live service
    so a bot plays the same game whether simulated or hosted."""
    return derive_seed(game_seed, _POLICY_SALT, seat)


@dataclass
class MatchRecord:
    """Everything needed to audit one finished game."""

    m: int
    n: int
    players: int
    copies: int
    seed: int
    policy_names: list[str]
    winners: list[int]
    turns: int
    hand_sizes_per_turn: list[list[int]]
    total_cancellations: int
    forced_draws: list[int]
    final_cause: str
    final_hand_sizes: list[int]

    @property
    def winner_policies(self) -> list[str]:
        return [self.policy_names[w] for w in self.winners]


def run_match(config: GameConfig, policies: Sequence[Policy | str],
              seed: int | None = None, log_path: str | Path | None = None,
              check: bool = True) -> MatchRecord:
    """Play one full game; returns its record and optionally writes the log.

    Raises RuntimeError if the game somehow exceeds the turn guard, which
    no supported policy matchup should ever reach.
    """
    if seed is not None:
        config = config.with_seed(seed)
    if len(policies) != config.players:
        raise ValueError(f"need {config.players} policies, got {len(policies)}")
    seats: list[Policy] = []
    for i, policy in enumerate(policies):
        if isinstance(policy, str):
            policy = make_policy(policy, seat_policy_seed(config.seed, i))
        seats.append(policy)

    state = new_game(config)
    sizes_per_turn: list[list[int]] = []
    cancellations = 0
    forced = [0] * config.players
    n = config.n
    while not state.finished:
        if state.turns_played >= MAX_TURNS:
            raise RuntimeError(
                f"turn guard tripped after {MAX_TURNS} turns "
                f"(seed {config.seed}, matchup {[p.name for p in seats]})")
        player = state.turn
        size_before = state.hand_size(player)
        outcome = drive_turn(state, seats[player])
        if state.hand_size(player) < size_before - n:
            raise RuntimeError(
                f"player {player} shed more than {n} pieces in one turn")
        if check:
            check_invariants(state)
        cancellations += outcome.total_cancellations
        if outcome.forced_draws_per_player:
            for other in range(config.players):
                if other != player:
                    forced[other] += outcome.forced_draws_per_player
        sizes_per_turn.append([state.hand_size(p)
                               for p in range(config.players)])
    if log_path is not None:
        ev.write_log(log_path, state.log)
    trigger = state.final_trigger or {}
    return MatchRecord(
        m=config.m, n=config.n, players=config.players,
        copies=config.copies_per_color, seed=config.seed,
        policy_names=[p.name for p in seats],
        winners=sorted(winner(state)),
        turns=state.turns_played,
        hand_sizes_per_turn=sizes_per_turn,
        total_cancellations=cancellations,
        forced_draws=forced,
        final_cause=trigger.get("cause", ""),
        final_hand_sizes=[state.hand_size(p) for p in range(config.players)],
    )


@dataclass
class TournamentResult:
    config: GameConfig
    matchup: list[str]
    games: int
    base_seed: int
    records: list[MatchRecord] = field(default_factory=list)

    @property
    def win_shares_by_seat(self) -> list[float]:
        shares = [0.0] * self.config.players
        for rec in self.records:
            for w in rec.winners:
                shares[w] += 1.0 / len(rec.winners)
        return shares

    @property
    def win_rates_by_policy(self) -> dict[str, float]:
        """Fractional win shares per policy name, normalized by game count."""
        shares: dict[str, float] = {name: 0.0 for name in self.matchup}
        for rec in self.records:
            for w in rec.winners:
                shares[rec.policy_names[w]] += 1.0 / len(rec.winners)
        return {name: share / self.games for name, share in shares.items()}

    @property
    def length_histogram(self) -> Counter:
        return Counter(rec.turns for rec in self.records)

    @property
    def total_cancellations(self) -> int:
        return sum(rec.total_cancellations for rec in self.records)


def tournament(config: GameConfig, matchup: Sequence[str], games: int,
               base_seed: int, log_dir: str | Path | None = None,
               check: bool = True) -> TournamentResult:
    """Run ``games`` independent matches of the given policy matchup."""
    if games < 1:
        raise ValueError("games must be at least 1")
    matchup = list(matchup)
    if len(matchup) != config.players:
        raise ValueError(f"matchup names {matchup} do not fill "
                         f"{config.players} seats")
    result = TournamentResult(config=config, matchup=matchup,
                              games=games, base_seed=base_seed)
    log_dir_path = Path(log_dir) if log_dir is not None else None
    if log_dir_path is not None:
        log_dir_path.mkdir(parents=True, exist_ok=True)
    for i in range(games):
        game_seed = derive_seed(base_seed, _GAME_SALT, i)
        policies = [make_policy(name, derive_seed(base_seed, _POLICY_SALT, i, s))
                    for s, name in enumerate(matchup)]
        log_path = (log_dir_path / f"game_{i:05d}.jsonl"
                    if log_dir_path is not None else None)
        result.records.append(
            run_match(config.with_seed(game_seed), policies,
                      log_path=log_path, check=check))
    return result
